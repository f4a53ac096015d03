"""Sparse multivariate polynomials over exact rationals.

A polynomial carries an ordered tuple of variable names and a dict mapping
dense exponent tuples to nonzero rational coefficients.  Operations between
polynomials with different variable sets extend both to the union, so callers
can mix e.g. Q[x, t1] with Q[x, t2] freely.  No floating point appears
anywhere in this module.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

from .scalars import ONE, Q, ZERO, as_q, q_str

# Preferred display/ordering of the variables used throughout the package;
# anything else sorts alphabetically after these.
_CANONICAL_ORDER = ("x", "y", "z", "z1", "z2", "T", "G", "t1", "t2", "t3", "t4", "t5")
_CANONICAL_RANK = {name: i for i, name in enumerate(_CANONICAL_ORDER)}


def _var_sort_key(name: str):
    rank = _CANONICAL_RANK.get(name)
    if rank is None:
        return (1, name)
    return (0, rank)


def merge_vars(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=_var_sort_key))


class MultiPoly:
    """Immutable sparse polynomial with Q coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object]):
        vars = tuple(vars)
        clean = {}
        for exps, coeff in terms.items():
            if coeff:
                clean[exps] = coeff
        self.vars = vars
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars=()) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, value, vars=()) -> "MultiPoly":
        vars = tuple(vars)
        c = as_q(value)
        if not c:
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): ONE})

    @classmethod
    def monomial(cls, vars, exps, coeff=ONE) -> "MultiPoly":
        return cls(tuple(vars), {tuple(exps): as_q(coeff)})

    # -- bookkeeping -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def in_vars(self, vars: tuple) -> "MultiPoly":
        """Re-embed into the given variable tuple (a superset of self.vars)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for name in self.vars:
            pos.append(vars.index(name))
        n = len(vars)
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * n
            for p, e in zip(pos, exps):
                new[p] = e
            terms[tuple(new)] = coeff
        return MultiPoly(vars, terms)

    def compact(self) -> "MultiPoly":
        """Drop variables that occur with exponent zero everywhere."""
        if not self.terms:
            return MultiPoly.zero(())
        used = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        if all(used):
            return self
        keep = [i for i, u in enumerate(used) if u]
        vars = tuple(self.vars[i] for i in keep)
        terms = {tuple(exps[i] for i in keep): c for exps, c in self.terms.items()}
        return MultiPoly(vars, terms)

    def _aligned(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self, other
        vars = merge_vars(self.vars, other.vars)
        return self.in_vars(vars), other.in_vars(vars)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        a, b = self._aligned(other)
        if not a.terms:
            return b
        if not b.terms:
            return a
        terms = dict(a.terms)
        for exps, coeff in b.terms.items():
            acc = terms.get(exps)
            if acc is None:
                terms[exps] = coeff
            else:
                acc = acc + coeff
                if acc:
                    terms[exps] = acc
                else:
                    del terms[exps]
        out = MultiPoly.__new__(MultiPoly)
        out.vars = a.vars
        out.terms = terms
        return out

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = as_q(other)
            if not c:
                return MultiPoly.zero(self.vars)
            out = MultiPoly.__new__(MultiPoly)
            out.vars = self.vars
            out.terms = {e: coeff * c for e, coeff in self.terms.items()}
            return out
        a, b = self._aligned(other)
        if not a.terms or not b.terms:
            return MultiPoly.zero(a.vars)
        if len(a.terms) > len(b.terms):
            a, b = b, a
        terms = {}
        get = terms.get
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                exps = tuple(i + j for i, j in zip(ea, eb))
                prev = get(exps)
                if prev is None:
                    terms[exps] = ca * cb
                else:
                    acc = prev + ca * cb
                    if acc:
                        terms[exps] = acc
                    else:
                        del terms[exps]
        out = MultiPoly.__new__(MultiPoly)
        out.vars = a.vars
        out.terms = terms
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return self.is_zero
            other = MultiPoly.const(other)
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        c = self.compact()
        return hash((c.vars, frozenset(c.terms.items())))

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        if var not in self.vars:
            return MultiPoly.zero(self.vars)
        i = self.vars.index(var)
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = exps[:i] + (e - 1,) + exps[i + 1:]
            c = coeff * e
            prev = terms.get(new)
            terms[new] = c if prev is None else prev + c
        return MultiPoly(self.vars, terms)

    def subs(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Substitute exact values or polynomials for a subset of variables."""
        relevant = {k: v for k, v in assignment.items() if k in self.vars}
        if not relevant:
            return self
        keep_idx = [i for i, v in enumerate(self.vars) if v not in relevant]
        keep_vars = tuple(self.vars[i] for i in keep_idx)
        sub_idx = [(i, v) for i, v in enumerate(self.vars) if v in relevant]
        result = MultiPoly.zero(keep_vars)
        poly_cache = {}
        for exps, coeff in self.terms.items():
            base = MultiPoly.monomial(
                keep_vars, tuple(exps[i] for i in keep_idx), coeff
            )
            for i, name in sub_idx:
                e = exps[i]
                if e == 0:
                    continue
                val = relevant[name]
                if isinstance(val, MultiPoly):
                    key = (name, e)
                    powed = poly_cache.get(key)
                    if powed is None:
                        powed = val ** e
                        poly_cache[key] = powed
                    base = base * powed
                else:
                    base = base * (as_q(val) ** e)
            result = result + base
        return result

    def evalf(self, env: Mapping[str, float]) -> float:
        total = 0.0
        for exps, coeff in self.terms.items():
            term = float(coeff)
            for name, e in zip(self.vars, exps):
                if e:
                    term *= env[name] ** e
            total += term
        return total

    def eval_q(self, env: Mapping[str, object]):
        """Exact evaluation; env must cover every variable that occurs."""
        total = ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for name, e in zip(self.vars, exps):
                if e:
                    term = term * (as_q(env[name]) ** e)
            total = total + term
        return total

    # -- structure queries ---------------------------------------------------

    def degree(self, var: str) -> int:
        """Maximum exponent of var; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        if not self.terms:
            return 0
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def coeff_of(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, a polynomial in the remaining variables."""
        if var not in self.vars:
            if power == 0:
                return self
            return MultiPoly.zero(self.vars)
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        terms = {}
        for exps, coeff in self.terms.items():
            if exps[i] == power:
                terms[exps[:i] + exps[i + 1:]] = coeff
        return MultiPoly(rest, terms)

    def integer_content(self):
        """Positive rational c with self/c integer-coefficient and primitive;
        1 for the zero polynomial."""
        if not self.terms:
            return ONE
        num_gcd = 0
        den_lcm = 1
        for coeff in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(int(coeff.numerator)))
            d = int(coeff.denominator)
            den_lcm = den_lcm // math.gcd(den_lcm, d) * d
        return Q(num_gcd, den_lcm)

    def monomial_content(self) -> tuple:
        """Componentwise minimum exponent vector over all terms."""
        if not self.terms:
            return (0,) * len(self.vars)
        mins = None
        for exps in self.terms:
            if mins is None:
                mins = list(exps)
            else:
                for i, e in enumerate(exps):
                    if e < mins[i]:
                        mins[i] = e
        return tuple(mins)

    def shift_down(self, shift: tuple) -> "MultiPoly":
        """Divide by the monomial with the given exponent vector."""
        if not any(shift):
            return self
        terms = {
            tuple(e - s for e, s in zip(exps, shift)): c
            for exps, c in self.terms.items()
        }
        return MultiPoly(self.vars, terms)

    def scale(self, factor) -> "MultiPoly":
        return self * factor

    def leading_term(self):
        """Lex-leading (exponent tuple, coefficient); None for zero."""
        if not self.terms:
            return None
        exps = max(self.terms)
        return exps, self.terms[exps]

    def exact_div(self, divisor: "MultiPoly"):
        """Exact multivariate division; None if the remainder is nonzero."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        a, d = self._aligned(divisor)
        if not a.terms:
            return MultiPoly.zero(a.vars)
        d_lead_exps, d_lead_coeff = d.leading_term()
        quotient = {}
        rem = dict(a.terms)
        while rem:
            r_exps = max(rem)
            r_coeff = rem[r_exps]
            q_exps = tuple(r - s for r, s in zip(r_exps, d_lead_exps))
            if any(e < 0 for e in q_exps):
                return None
            q_coeff = r_coeff / d_lead_coeff
            quotient[q_exps] = q_coeff
            for exps, coeff in d.terms.items():
                tgt = tuple(q + e for q, e in zip(q_exps, exps))
                prev = rem.get(tgt)
                val = (prev if prev is not None else ZERO) - q_coeff * coeff
                if val:
                    rem[tgt] = val
                elif prev is not None:
                    del rem[tgt]
        return MultiPoly(a.vars, quotient)

    # -- display -------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def canonical_str(self) -> str:
        """Deterministic text form: sorted monomials, explicit rationals."""
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append("%s^%d" % (name, e))
            body = "*".join(factors)
            cs = q_str(coeff)
            if body:
                if cs == "1":
                    text = body
                elif cs == "-1":
                    text = "-" + body
                else:
                    text = cs + "*" + body
            else:
                text = cs
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return "MultiPoly(%s)" % self.canonical_str()


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Dispatch add/sub/mul by name (mirrors the CLI-facing contract)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % (op,))
