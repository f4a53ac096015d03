"""Ordinary differential operators in one variable with rational-function
coefficients.

An operator is sum_k c_k(v) * D^k acting in the designated variable v.
Composition expands exactly through the Leibniz rule D o a = a D + a'.
"""

from __future__ import annotations

from math import comb

from .multipoly import MultiPoly
from .ratfun import RatFun


class DiffOp:
    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs):
        coeffs = [c if isinstance(c, RatFun) else RatFun._coerce(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.var = var
        self.coeffs = coeffs

    @classmethod
    def zero(cls, var: str) -> "DiffOp":
        return cls(var, [])

    @classmethod
    def identity(cls, var: str) -> "DiffOp":
        return cls(var, [RatFun.const(1)])

    @classmethod
    def D(cls, var: str, order: int = 1) -> "DiffOp":
        return cls(var, [RatFun.const(0)] * order + [RatFun.const(1)])

    @classmethod
    def mult(cls, var: str, f) -> "DiffOp":
        """Multiplication operator by a rational function."""
        return cls(var, [RatFun._coerce(f)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> RatFun:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RatFun.const(0)

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.mult(self.var, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp(self.var, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.mult(self.var, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp(self.var, [self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self):
        return DiffOp(self.var, [-c for c in self.coeffs])

    def scale(self, f) -> "DiffOp":
        f = RatFun._coerce(f)
        return DiffOp(self.var, [c * f for c in self.coeffs])

    def compose(self, other: "DiffOp") -> "DiffOp":
        """self o other, exact Leibniz expansion."""
        if self.var != other.var:
            raise ValueError("operators act in different variables")
        var = self.var
        if self.is_zero or other.is_zero:
            return DiffOp.zero(var)
        # D^i applied past b_j D^j: D^i (b D^j) = sum_l C(i,l) b^(i-l) D^(j+l)
        max_i = self.order
        derivs = {}  # (j, d) -> d-th derivative of other.coeffs[j]
        for j, b in enumerate(other.coeffs):
            derivs[(j, 0)] = b
            cur = b
            for d in range(1, max_i + 1):
                cur = cur.derivative(var)
                derivs[(j, d)] = cur
        out = {}
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j in range(len(other.coeffs)):
                for l in range(i + 1):
                    b_d = derivs[(j, i - l)]
                    if b_d.is_zero:
                        continue
                    term = a * b_d * comb(i, l)
                    k = j + l
                    out[k] = out.get(k, RatFun.const(0)) + term
        n = max(out) + 1 if out else 0
        return DiffOp(var, [out.get(k, RatFun.const(0)) for k in range(n)])

    def __matmul__(self, other):
        return self.compose(other)

    def __pow__(self, n: int) -> "DiffOp":
        if n < 0:
            raise ValueError("negative operator power")
        result = DiffOp.identity(self.var)
        for _ in range(n):
            result = result.compose(self)
        return result

    def apply(self, f: RatFun) -> RatFun:
        """Apply to a rational function of the operator variable."""
        out = RatFun.const(0)
        cur = RatFun._coerce(f)
        for k, c in enumerate(self.coeffs):
            if k:
                cur = cur.derivative(self.var)
            if not c.is_zero:
                out = out + c * cur
        return out

    def eq(self, other: "DiffOp") -> bool:
        if self.var != other.var:
            return False
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(k).eq(other.coeff(k)) for k in range(n))

    __eq__ = eq

    def __hash__(self):  # pragma: no cover
        raise TypeError("DiffOp is unhashable")

    def canonical_str(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if k == 0:
                parts.append(c.canonical_str())
            else:
                parts.append("(%s)*D%s^%d" % (c.canonical_str(), self.var, k))
        return " + ".join(parts)

    def __repr__(self):
        return "DiffOp(%s)" % self.canonical_str()


def diffop_compose(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b)
