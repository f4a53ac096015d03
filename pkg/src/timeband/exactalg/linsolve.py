"""Fraction-free solver for exact affine systems.

Equations are  sum_j c_j(params) * u_j + r(params) = 0  with MultiPoly
entries.  The solver works over the fraction field without ever normalizing
by gcds: it prefers equations that pin a single unknown (these systems are
nearly triangular in practice), falls back to fraction-free cross-elimination
for the coupled remainder, and compresses rows by integer content and common
monomial factors after every operation.  Solutions come back as RatFun values
in the parameters.
"""

from __future__ import annotations

import math
from typing import Hashable, Mapping

from ..errors import NoSolution
from .multipoly import MultiPoly, merge_vars
from .ratfun import RatFun
from .scalars import ONE, Q


class _Row:
    __slots__ = ("coeffs", "rhs")

    def __init__(self, coeffs: dict, rhs: MultiPoly):
        self.coeffs = coeffs
        self.rhs = rhs

    def size(self):
        return sum(len(c) for c in self.coeffs.values()) + len(self.rhs)


def _row_content(row: _Row):
    num_gcd = 0
    den_lcm = 1
    for poly in list(row.coeffs.values()) + [row.rhs]:
        for coeff in poly.terms.values():
            num_gcd = math.gcd(num_gcd, abs(int(coeff.numerator)))
            d = int(coeff.denominator)
            den_lcm = den_lcm // math.gcd(den_lcm, d) * d
    if num_gcd == 0:
        return ONE
    return Q(num_gcd, den_lcm)


def _compress(row: _Row) -> _Row:
    c = _row_content(row)
    if c != 1 and c != 0:
        inv = 1 / c
        row.coeffs = {k: p * inv for k, p in row.coeffs.items()}
        row.rhs = row.rhs * inv
    return row


class AffineSystem:
    def __init__(self):
        self._rows = []

    def add(self, coeffs: Mapping[Hashable, MultiPoly], rhs: MultiPoly):
        clean = {k: p for k, p in coeffs.items() if not p.is_zero}
        if not clean and rhs.is_zero:
            return
        self._rows.append(_Row(clean, rhs))

    def __len__(self):
        return len(self._rows)

    def solve(self):
        """Return (values, free_unknowns).

        values maps unknown keys to RatFun in the parameters; free_unknowns
        lists keys the system never constrains.  Raises NoSolution on an
        inconsistent system.
        """
        rows = [_compress(_Row(dict(r.coeffs), r.rhs)) for r in self._rows]
        all_unknowns = set()
        for r in rows:
            all_unknowns.update(r.coeffs)

        solved: dict = {}
        deferred = []  # (key, row) in deferral order

        def substitute(key, value: RatFun, targets):
            vn, vd = value.num, value.den
            den_is_one = vd == MultiPoly.const(1, vd.vars)
            for row in targets:
                c = row.coeffs.pop(key, None)
                if c is None:
                    continue
                if den_is_one:
                    row.rhs = row.rhs + c * vn
                else:
                    row.coeffs = {k: p * vd for k, p in row.coeffs.items()}
                    row.rhs = row.rhs * vd + c * vn
                _compress(row)

        def check_or_keep(row, keep):
            if row.coeffs:
                keep.append(row)
            elif not row.rhs.is_zero:
                raise NoSolution(
                    "inconsistent equation: residual %s" % row.rhs.canonical_str()
                )

        while True:
            # pass 1: harvest every single-unknown equation
            progressed = False
            pending = rows
            rows = []
            for row in pending:
                if len(row.coeffs) == 1:
                    (key, c), = row.coeffs.items()
                    value = RatFun(-row.rhs, c)
                    prev = solved.get(key)
                    if prev is None:
                        solved[key] = value
                        substitute(key, value, pending)
                        substitute(key, value, rows)
                        substitute(key, value, (r for _, r in deferred))
                        progressed = True
                    else:
                        if not prev.eq(value):
                            raise NoSolution("conflicting values for %r" % (key,))
                    continue
                check_or_keep(row, rows)
            if progressed:
                continue
            rows = [r for r in rows if r.coeffs or not r.rhs.is_zero]
            for r in rows:
                if not r.coeffs and not r.rhs.is_zero:
                    raise NoSolution("inconsistent equation")
            if not any(r.coeffs for r in rows):
                break
            # pass 2: eliminate one unknown by fraction-free cross-multiplication.
            # Markowitz-style pivot choice keeps fill-in down, and every tie
            # break is explicit so runs are reproducible regardless of hash
            # randomization.
            occurrences = {}
            for r in rows:
                for k in r.coeffs:
                    occurrences[k] = occurrences.get(k, 0) + 1
            best = None
            for idx, r in enumerate(rows):
                if not r.coeffs:
                    continue
                row_cost = len(r.coeffs) - 1
                for k in sorted(r.coeffs, key=repr):
                    score = (
                        row_cost * (occurrences[k] - 1),
                        len(r.coeffs[k]),
                        r.size(),
                        idx,
                        repr(k),
                    )
                    if best is None or score < best[0]:
                        best = (score, idx, k)
            _, pivot_idx, pivot_key = best
            pivot_row = rows[pivot_idx]
            p = pivot_row.coeffs[pivot_key]
            rows.remove(pivot_row)
            next_rows = []
            for row in rows:
                q = row.coeffs.get(pivot_key)
                if q is not None:
                    del row.coeffs[pivot_key]
                    keys = sorted(
                        (set(row.coeffs) | set(pivot_row.coeffs)) - {pivot_key},
                        key=repr,
                    )
                    new_coeffs = {}
                    for k in keys:
                        a = row.coeffs.get(k)
                        b = pivot_row.coeffs.get(k)
                        if a is None:
                            poly = -(q * b)
                        elif b is None:
                            poly = p * a
                        else:
                            poly = p * a - q * b
                        if not poly.is_zero:
                            new_coeffs[k] = poly
                    row.coeffs = new_coeffs
                    row.rhs = p * row.rhs - q * pivot_row.rhs
                    _compress(row)
                check_or_keep(row, next_rows)
            rows = next_rows
            deferred.append((pivot_key, pivot_row))

        # back-substitution through the deferred pivots, newest first
        for key, row in reversed(deferred):
            c = row.coeffs.pop(key)
            acc = RatFun(row.rhs)
            for k, poly in row.coeffs.items():
                if k not in solved:
                    raise NoSolution(
                        "unexpected free unknown %r inside a pivot row" % (k,)
                    )
                acc = acc + RatFun(poly) * solved[k]
            value = -acc / RatFun(c)
            solved[key] = value
            substitute_targets = (r for _, r in deferred)
            # earlier deferred rows may reference this pivot; handled by the
            # explicit lookup above, so no eager substitution is needed here
            del substitute_targets

        free = sorted(all_unknowns - set(solved), key=repr)
        return solved, free


def specialized_rank(system: AffineSystem, sample: Mapping[str, object]):
    """Exact rank of the coefficient matrix with parameters fixed at a sample
    point.  A full-rank specialization certifies symbolic full rank."""
    from fractions import Fraction

    keys = sorted({k for r in system._rows for k in r.coeffs}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    matrix = []
    for r in system._rows:
        rowvec = [Fraction(0)] * len(keys)
        for k, poly in r.coeffs.items():
            v = poly.eval_q(sample)
            rowvec[index[k]] = Fraction(int(v.numerator), int(v.denominator))
        if any(rowvec):
            matrix.append(rowvec)
    rank = 0
    ncols = len(keys)
    col = 0
    while matrix and col < ncols:
        pivot = None
        for i, row in enumerate(matrix):
            if row[col]:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        prow = matrix[rank]
        inv = 1 / prow[col]
        for i in range(rank + 1, len(matrix)):
            row = matrix[i]
            if row[col]:
                f = row[col] * inv
                for j in range(col, ncols):
                    row[j] -= f * prow[j]
        rank += 1
        col += 1
        if rank == len(matrix):
            break
    return rank, len(keys)
