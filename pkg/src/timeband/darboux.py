"""Theta families, deformed potentials, and the Darboux factorization step.

The theta functions are polynomial-like: theta_k = x^(1/2)*body for odd k and
theta_k = body for even k, with body a polynomial in x and the deformation
parameters.  Half powers are carried as a flag; they cancel in every
log-derivative this module exposes, so the polynomial core stays integral.

The family satisfies a Wronskian recursion

    theta_{k+1}' theta_{k-1} - theta_{k+1} theta_{k-1}' = (2k-1) theta_k^2

along the chain normalized by 2^(1-k) (the tabulated bodies absorb that
scalar) and with parameters specialized so each step only carries the
deformation constants the newest member admits; verify_theta_recursion
reproduces that residual exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotZeroEigenfunction
from .exactalg import MultiPoly, Q, RatFun

_X = MultiPoly.var("x")

# slots: which deformation parameters each theta_k legitimately depends on
THETA_SLOTS = {
    0: (),
    1: (),
    2: ("t1",),
    3: ("t2",),
    4: ("t2", "t3"),
    5: ("t3", "t4"),
    6: ("t3", "t4", "t5"),
}

# chain normalization: theta_k(chain) = 2^(1-k) * theta_k(table) for k >= 1
_CHAIN_SCALE = {k: (Q(1) if k == 0 else Q(1, 2 ** (k - 1))) for k in range(7)}


def _bodies():
    x = _X
    t2, t3, t4, t5 = (MultiPoly.var(n) for n in ("t2", "t3", "t4", "t5"))
    t1 = MultiPoly.var("t1")
    return {
        0: MultiPoly.const(1),
        1: MultiPoly.const(1),
        2: x ** 2 + t1,
        3: Q(3, 4) * x ** 4 + t2,
        4: Q(15, 32) * x ** 8 + Q(15, 4) * (t2 * x ** 4) + t3 * x ** 2
           - Q(5, 2) * t2 ** 2,
        5: Q(525, 2048) * x ** 12 + Q(35, 8) * (t3 * x ** 6)
           + Q(3, 4) * (t4 * x ** 4) - Q(7, 3) * t3 ** 2,
        6: Q(33075, 262144) * x ** 18 + Q(19845, 2048) * (t3 * x ** 12)
           + Q(945, 256) * (t4 * x ** 10) + Q(15, 32) * (t5 * x ** 8)
           - Q(2205, 32) * (t3 ** 2 * x ** 6) - Q(63, 4) * (t3 * t4 * x ** 4)
           + (t3 * t5 - Q(9, 5) * t4 ** 2) * x ** 2 - Q(49, 2) * t3 ** 3,
    }


_BODIES = _bodies()


@dataclass(frozen=True)
class Theta:
    """theta_k = x^(1/2 if half else 0) * body."""

    k: int
    half: bool
    body: MultiPoly

    @property
    def params(self):
        return THETA_SLOTS[self.k]

    def log_derivative(self) -> RatFun:
        """d/dx log(theta), rational because the half power differentiates to
        1/(2x)."""
        out = RatFun(self.body.derivative("x"), self.body)
        if self.half:
            out = out + RatFun(MultiPoly.const(1), 2 * _X)
        return out


def theta(k: int) -> Theta:
    """The tabulated theta_k with symbolic deformation parameters."""
    if not 0 <= k <= 6:
        raise ValueError("theta index must be in 0..6")
    return Theta(k=k, half=bool(k % 2 and k >= 1), body=_BODIES[k])


def _specialized_body(k: int, allowed) -> MultiPoly:
    body = _BODIES[k]
    kill = {p: 0 for p in THETA_SLOTS[k] if p not in allowed}
    return body.subs(kill) if kill else body


def verify_theta_recursion(k: int) -> MultiPoly:
    """Exact residual of the Wronskian recursion at step k (1..5); the zero
    polynomial certifies the step.

    Older thetas are specialized to the parameters theta_{k+1} admits, and
    every member carries its chain normalization 2^(1-k).
    """
    if not 1 <= k <= 5:
        raise ValueError("recursion steps are k = 1..5")
    allowed = set(THETA_SLOTS[k + 1])
    a = _specialized_body(k + 1, allowed) * _CHAIN_SCALE[k + 1]
    b = _specialized_body(k - 1, allowed) * _CHAIN_SCALE[k - 1]
    mid = _specialized_body(k, allowed) * _CHAIN_SCALE[k]
    wronskian = a.derivative("x") * b - a * b.derivative("x")
    factor = 2 * k - 1
    if k % 2 == 1:
        # neighbors are even, middle carries x^(1/2): theta_k^2 = x*body^2
        return wronskian - factor * (_X * mid * mid)
    # neighbors carry x^(1/2): their Wronskian picks up one factor of x
    return _X * wronskian - factor * (mid * mid)


@dataclass(frozen=True)
class Potential:
    k: int
    V: RatFun


def potential(k: int) -> Potential:
    """Deformed rational potential V_k = -1/(4x^2) - 2 (log theta_k)''."""
    th = theta(k)
    b = th.body
    bp = b.derivative("x")
    bpp = bp.derivative("x")
    v = RatFun(MultiPoly.const(-1), 4 * _X ** 2)
    if th.half:
        # -2 d^2/dx^2 log x^(1/2) = +1/x^2
        v = v + RatFun(MultiPoly.const(1), _X ** 2)
    v = v - 2 * RatFun(bpp * b - bp * bp, b * b)
    return Potential(k=k, V=v)


def darboux_step(V: RatFun, phi_logderiv: RatFun) -> RatFun:
    """One Darboux move V -> V - 2 w' for w = phi'/phi.

    Requires phi to be a zero-mode of -d^2/dx^2 + V, i.e. w' + w^2 = V
    exactly; raises NotZeroEigenfunction otherwise.
    """
    w = phi_logderiv
    wp = w.derivative("x")
    if not (wp + w * w).eq(V):
        raise NotZeroEigenfunction(
            "phi'/phi does not satisfy the Riccati equation for this potential"
        )
    return V - 2 * wp


def eigenfunction_logfactor(k: int) -> RatFun:
    """d/dx log(theta_k / theta_{k-1}), the first-order Darboux coefficient
    mapping eigenfunctions at level k-1 to level k."""
    if not 1 <= k <= 6:
        raise ValueError("k must be in 1..6")
    return theta(k).log_derivative() - theta(k - 1).log_derivative()


# -- explicit forms used as ground truth by tests and the CLI report ---------

def explicit_potential(k: int) -> RatFun:
    """Closed forms of the first deformed potentials."""
    x = _X
    t1 = MultiPoly.var("t1")
    t2 = MultiPoly.var("t2")
    if k == 1:
        return RatFun(MultiPoly.const(3), 4 * x ** 2)
    if k == 2:
        num = 15 * x ** 4 - 18 * (t1 * x ** 2) - t1 ** 2
        den = 4 * x ** 6 + 8 * (t1 * x ** 4) + 4 * (t1 ** 2 * x ** 2)
        return RatFun(num, den)
    if k == 3:
        # table normalization: body (3/4)x^4 + t2.  The monic convention
        # x^4 + s2 corresponds to s2 = (4/3) t2.
        num = Q(315, 16) * x ** 8 - Q(135, 2) * (t2 * x ** 4) + 3 * t2 ** 2
        den = 4 * (x * (Q(3, 4) * x ** 4 + t2)) ** 2
        return RatFun(num, den)
    raise ValueError("no explicit potential recorded for k=%d" % k)


def explicit_potential_monic(k: int) -> RatFun:
    """The k=3 potential in the monic parameterization x^4 + t2."""
    x = _X
    t2 = MultiPoly.var("t2")
    if k != 3:
        raise ValueError("only k=3 has a distinct monic form")
    num = 35 * x ** 8 - 90 * (t2 * x ** 4) + 3 * t2 ** 2
    den = 4 * x ** 10 + 8 * (t2 * x ** 6) + 4 * (t2 ** 2 * x ** 2)
    return RatFun(num, den)


def verification_report() -> dict:
    """Recursion residuals and potential/chain checks, exact booleans."""
    recursion = {}
    for k in range(1, 6):
        res = verify_theta_recursion(k)
        recursion[str(k)] = {
            "zero": res.is_zero,
            "residual_terms": len(res),
        }
    pot_checks = {
        "V1": potential(1).V.eq(explicit_potential(1)),
        "V2": potential(2).V.eq(explicit_potential(2)),
        "V3": potential(3).V.eq(explicit_potential(3)),
        "V3_monic": potential(3).V.subs({"t2": MultiPoly.var("t2") * Q(3, 4)}).eq(
            explicit_potential_monic(3)
        ),
    }
    chain = {
        "V1_to_V2": darboux_step(potential(1).V, eigenfunction_logfactor(2)).eq(
            potential(2).V
        ),
        "V2_to_V3_at_t1_0": darboux_step(
            potential(2).V.subs({"t1": 0}),
            eigenfunction_logfactor(3).subs({"t1": 0}),
        ).eq(potential(3).V),
    }
    return {"recursion": recursion, "potentials": pot_checks, "chain": chain}
