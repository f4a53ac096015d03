"""Rational antiderivatives normalized to vanish at +infinity.

antiderivative_x integrates a rational function of one variable (coefficients
may involve other variables, treated as an exact coefficient field) and
returns a rational result, or raises LogTermRequired when the integral has a
logarithmic part.  The reduction is Horowitz-Ostrogradsky: with B the
multiple part of the denominator and D its squarefree part, solve

    p  =  A'*D - A*(B'*D/B) + C*B,     deg A < deg B,  deg C < deg D,

and demand C = 0.  Callers that know the denominator's factorization pass it
in (the flow computations do), which turns the expensive gcd into bookkeeping;
otherwise a Euclidean gcd over the coefficient fraction field finds the
squarefree split.
"""

from __future__ import annotations

from ..errors import LogTermRequired, NonDecaying
from .linsolve import AffineSystem
from .multipoly import MultiPoly
from .ratfun import RatFun


def _upoly(p: MultiPoly, var: str):
    """Dense coefficient list in var (low to high), entries without var."""
    d = p.degree(var)
    if d < 0:
        return []
    return [p.coeff_of(var, k) for k in range(d + 1)]


def factor_over_atoms(poly: MultiPoly, atoms):
    """Write poly = cofactor * prod(atom^mult) by repeated exact division.
    Returns (cofactor, [(atom, mult), ...])."""
    rem = poly
    found = []
    for atom in atoms:
        mult = 0
        while True:
            q = rem.exact_div(atom)
            if q is None:
                break
            rem = q
            mult += 1
        if mult:
            found.append((atom, mult))
    return rem, found


def antiderivative_x(f: RatFun, var: str = "x", den_factors=None) -> RatFun:
    """Antiderivative of f in var, chosen to vanish as var -> +infinity.

    den_factors, when given, is an iterable of squarefree pairwise-coprime
    MultiPoly atoms believed to generate f's denominator.
    """
    num, den = f.num, f.den
    if num.is_zero:
        return RatFun.const(0)
    if num.degree(var) >= den.degree(var):
        raise NonDecaying(
            "integrand does not decay: deg_num=%d deg_den=%d in %s"
            % (num.degree(var), den.degree(var), var)
        )

    B = D = None
    if den_factors is not None:
        cofactor, factors = factor_over_atoms(den, list(den_factors))
        if cofactor.degree(var) == 0 and factors:
            B = cofactor
            D = MultiPoly.const(1, den.vars)
            for atom, mult in factors:
                D = D * atom
                if mult > 1:
                    B = B * atom ** (mult - 1)
    if B is None:
        num, B, D = _squarefree_split(num, den, var)

    result = _solve_horowitz(num, B, D, var)
    if not result.derivative(var).eq(f):
        raise AssertionError("antiderivative failed its derivative check")
    return result


def _solve_horowitz(num: MultiPoly, B: MultiPoly, D: MultiPoly, var: str) -> RatFun:
    b = _upoly(B, var)
    d = _upoly(D, var)
    nb = len(b) - 1  # deg B; A has unknowns a_0 .. a_{nb-1}
    nd = len(d) - 1  # deg D; C has unknowns c_0 .. c_{nd-1}
    if nd <= 0:
        raise AssertionError("squarefree part is constant; nothing to integrate")
    Bp = B.derivative(var)
    S = (Bp * D).exact_div(B)
    if S is None:
        raise AssertionError("B'D/B is not polynomial; bad denominator split")
    s = _upoly(S, var)
    p = _upoly(num, var)
    zero = MultiPoly.zero(num.vars)

    top = nb + nd - 1
    rows = [dict() for _ in range(top + 1)]

    def bump(j, key, poly):
        if poly.is_zero:
            return
        cur = rows[j].get(key)
        rows[j][key] = poly if cur is None else cur + poly

    for i in range(nb):  # unknown a_i
        if i >= 1:
            for k, dk in enumerate(d):  # A'*D
                bump(i - 1 + k, ("A", i), dk * i)
        for k, sk in enumerate(s):  # -A*S
            bump(i + k, ("A", i), -sk)
    for l in range(nd):  # unknown c_l, C*B
        for k, bk in enumerate(b):
            bump(l + k, ("C", l), bk)

    system = AffineSystem()
    for j in range(top + 1):
        pj = p[j] if j < len(p) else zero
        system.add(rows[j], -pj)

    values, free = system.solve()
    for key in free:
        values[key] = RatFun.const(0)
    for l in range(nd):
        c = values.get(("C", l))
        if c is not None and not c.is_zero:
            raise LogTermRequired(
                "nonzero residue part: the antiderivative is not rational"
            )
    xv = MultiPoly.var(var)
    A = RatFun.const(0)
    for i in range(nb):
        a = values.get(("A", i))
        if a is not None and not a.is_zero:
            A = A + a * RatFun(xv ** i)
    return A / RatFun(B)


def _squarefree_split(num, den, var):
    """B, D with kappa*den = B*D for a parameter-only kappa, D the squarefree
    part.  kappa is folded into num so that num/den = (num*kappa)/(B*D)."""
    a = [RatFun(c) for c in _upoly(den, var)]
    ap = [RatFun(c) for c in _upoly(den.derivative(var), var)]
    g = _field_gcd(a, ap)
    if len(g) - 1 <= 0:
        return num, MultiPoly.const(1, den.vars), den
    d_field = _field_div(a, g)
    D = _clear_denominators(d_field, var)
    B = _clear_denominators(g, var)
    kappa = (B * D).exact_div(den)
    if kappa is None or kappa.degree(var) != 0:
        raise AssertionError("inconsistent squarefree split")
    return num * kappa, B, D


def _field_trim(p):
    p = list(p)
    while p and p[-1].is_zero:
        p.pop()
    return p


def _field_divmod(a, b):
    a = list(a)
    b = _field_trim(b)
    q = [RatFun.const(0)] * max(len(a) - len(b) + 1, 0)
    inv = RatFun.const(1) / b[-1]
    while len(a) >= len(b):
        if a[-1].is_zero:
            a.pop()
            continue
        shift = len(a) - len(b)
        factor = a[-1] * inv
        q[shift] = q[shift] + factor
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - factor * bc
        a.pop()
    return q, _field_trim(a)


def _field_gcd(a, b):
    a = _field_trim(a)
    b = _field_trim(b)
    while b:
        _, r = _field_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def _field_div(a, b):
    q, r = _field_divmod(a, b)
    if r:
        raise AssertionError("field division left a remainder")
    return _field_trim(q)


def _clear_denominators(field_poly, var):
    common = MultiPoly.const(1)
    for c in field_poly:
        common = common * c.den
    out = MultiPoly.zero((var,))
    xv = MultiPoly.var(var)
    for k, c in enumerate(field_poly):
        cofactor = common.exact_div(c.den)
        out = out + c.num * cofactor * xv ** k
    return out
