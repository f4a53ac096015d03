"""Unnormalized rational functions.

A RatFun is a pair num/den of MultiPoly values.  No multivariate gcd is ever
computed: equality is decided by cross-multiplication, which is exact and
cheap.  Construction applies only lightweight cleanup (common monomial
factors, integer content, den sign); heavier cancellation against known
factors like z1^2 - z2^2 is available through cancel_atom and is applied by
the pipelines that generate such denominators.
"""

from __future__ import annotations

from typing import Mapping

from ..errors import DivisionByZero, PoleError
from .multipoly import MultiPoly, merge_vars
from .scalars import ONE, Q, as_q


def _light_cleanup(num: MultiPoly, den: MultiPoly):
    num, den = num._aligned(den)
    # cancel shared monomial factors
    mn = num.monomial_content()
    md = den.monomial_content()
    common = tuple(min(a, b) for a, b in zip(mn, md))
    if any(common):
        num = num.shift_down(common)
        den = den.shift_down(common)
    # rescale so den is integer, primitive, with positive lex-leading coeff
    cd = den.integer_content()
    lead = den.leading_term()
    if lead is not None and lead[1] < 0:
        cd = -cd
    if cd != 1:
        inv = 1 / Q(cd)
        den = den * inv
        num = num * inv
    return num, den


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(as_q(num))
        if den is None:
            den = MultiPoly.const(1, num.vars)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(as_q(den))
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        self.num, self.den = _light_cleanup(num, den)

    # -- constructors --------------------------------------------------------

    @classmethod
    def const(cls, value) -> "RatFun":
        return cls(MultiPoly.const(as_q(value)))

    @classmethod
    def var(cls, name: str) -> "RatFun":
        return cls(MultiPoly.var(name))

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "RatFun":
        return cls(poly)

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return not self.num.is_zero

    def eq(self, other) -> bool:
        """Equality by cross-multiplication."""
        if not isinstance(other, RatFun):
            other = RatFun.const(other) if not isinstance(other, MultiPoly) else RatFun(other)
        return (self.num * other.den - other.num * self.den).is_zero

    __eq__ = eq

    def __hash__(self):  # pragma: no cover
        raise TypeError("RatFun is unhashable (equality is semantic)")

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        if isinstance(value, MultiPoly):
            return RatFun(value)
        return RatFun.const(value)

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = RatFun.__new__(RatFun)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            vars = merge_vars(self.num.vars, other.num.vars)
            return RatFun(MultiPoly.zero(vars))
        return RatFun(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise DivisionByZero("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __pow__(self, n: int):
        if n < 0:
            return RatFun(self.den, self.num) ** (-n)
        return RatFun(self.num ** n, self.den ** n)

    # -- calculus -------------------------------------------------------------

    def derivative(self, var: str) -> "RatFun":
        dn = self.num.derivative(var)
        if self.den.degree(var) <= 0:
            return RatFun(dn, self.den)
        dd = self.den.derivative(var)
        return RatFun(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, assignment: Mapping[str, object]) -> "RatFun":
        num = self.num.subs(assignment)
        den = self.den.subs(assignment)
        if den.is_zero:
            raise DivisionByZero("substitution made the denominator vanish")
        return RatFun(num, den)

    def evalf(self, env: Mapping[str, float], pole_tol: float = 0.0) -> float:
        d = self.den.evalf(env)
        if d == 0.0 or (pole_tol and abs(d) < pole_tol):
            raise PoleError("denominator vanished at %r" % (env,))
        return self.num.evalf(env) / d

    def eval_q(self, env: Mapping[str, object]):
        d = self.den.eval_q(env)
        if not d:
            raise PoleError("denominator vanished at %r" % (env,))
        return self.num.eval_q(env) / d

    # -- cleanup --------------------------------------------------------------

    def cancel_atom(self, atom: MultiPoly) -> "RatFun":
        """Cancel every common factor `atom` from num and den (exact)."""
        num, den = self.num, self.den
        while True:
            qd = den.exact_div(atom)
            if qd is None:
                break
            qn = num.exact_div(atom)
            if qn is None:
                break
            num, den = qn, qd
        if num is self.num:
            return self
        return RatFun(num, den)

    def cancel_atoms(self, atoms) -> "RatFun":
        out = self
        for atom in atoms:
            out = out.cancel_atom(atom)
        return out

    # -- display ---------------------------------------------------------------

    def canonical_str(self) -> str:
        if self.den == MultiPoly.const(1, self.den.vars):
            return self.num.canonical_str()
        return "(%s) / (%s)" % (self.num.canonical_str(), self.den.canonical_str())

    def __repr__(self):
        return "RatFun(%s)" % self.canonical_str()


def ratfun_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % (op,))


def derivative(f: RatFun, var: str) -> RatFun:
    return f.derivative(var)
