"""Vanishing polynomials by exact linear algebra over F_q.

The linear system has one row per (point, derivative order beta with
|beta| < M) and one column per monomial of degree <= D, in degree-then-lex
order.  Entry: C(alpha, beta) * a^(alpha - beta), reduced into the field,
which is the coefficient of c_alpha in the beta-th Hasse derivative at a.
Row reduction uses plain Gaussian elimination with first-nonzero pivoting;
prime fields route through the compiled kernel when available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import kernels
from .errors import ArityMismatch, MixedFields, SizeGuard
from .ffield import FieldElement, FieldSpec
from .mpoly import SparsePoly, binom_multi, compositions, monomials_upto
from .multiplicity import vanishes_with_mult

_SYSTEM_GUARD = 10**8


def _canon_points(spec: FieldSpec, arity: int, points):
    out = set()
    for pt in points:
        codes = tuple(c.code if isinstance(c, FieldElement) else c for c in pt)
        if len(codes) != arity:
            raise ArityMismatch(f"point arity {len(codes)} vs {arity}")
        for c in pt:
            if isinstance(c, FieldElement) and c.spec != spec:
                raise MixedFields("point coordinate from a different field")
        for c in codes:
            if not 0 <= c < spec.q:
                raise ValueError(f"element code {c} out of range for q={spec.q}")
        out.add(codes)
    return sorted(out)


@dataclass
class VanishProblem:
    spec: FieldSpec
    arity: int
    points: list  # canonical: lex-sorted, deduplicated code tuples
    max_degree: int
    mult: int

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max degree D must be >= 0")
        if self.mult < 1:
            raise ValueError("multiplicity M must be >= 1")
        self.points = _canon_points(self.spec, self.arity, self.points)

    @property
    def unknown_count(self) -> int:
        return math.comb(self.max_degree + self.arity, self.arity)

    @property
    def constraint_count(self) -> int:
        return len(self.points) * math.comb(self.mult + self.arity - 1, self.arity)


@dataclass
class LinearSystem:
    spec: FieldSpec
    cols: list  # monomial exponent tuples, degree-then-lex
    row_index: list  # (point codes, beta) per row
    rows: list  # list of list of element codes

    def to_json(self) -> dict:
        ser = self.spec.element_to_json
        return {
            "field": self.spec.to_json(),
            "cols": [list(c) for c in self.cols],
            "rows": [
                {
                    "point": [ser(c) for c in pt],
                    "beta": list(beta),
                    "entries": [ser(v) for v in row],
                }
                for (pt, beta), row in zip(self.row_index, self.rows)
            ],
        }


def build_system(prob: VanishProblem) -> LinearSystem:
    if prob.unknown_count * prob.constraint_count > _SYSTEM_GUARD:
        raise SizeGuard(
            f"{prob.constraint_count} x {prob.unknown_count} system exceeds guard"
        )
    spec = prob.spec
    cols = monomials_upto(prob.arity, prob.max_degree)
    betas = [b for order in range(prob.mult) for b in compositions(prob.arity, order)]
    rows = []
    row_index = []
    for pt in prob.points:
        for beta in betas:
            row = []
            for alpha in cols:
                bc = binom_multi(alpha, beta)
                if bc == 0:
                    row.append(0)
                    continue
                v = spec.from_int(bc)
                for ai, bi, a in zip(alpha, beta, pt):
                    if v == 0:
                        break
                    v = spec.mul(v, spec.pow_(a, ai - bi))
                row.append(v)
            rows.append(row)
            row_index.append((pt, beta))
    return LinearSystem(spec, cols, row_index, rows)


def _rref_generic(rows, spec: FieldSpec):
    """Field-generic RREF on element codes; mirrors the mod-p kernel."""
    mat = [list(r) for r in rows]
    nrows, ncols = len(mat), len(mat[0]) if mat else 0
    pivot_cols = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = spec.inv(mat[r][col])
        mat[r] = [spec.mul(x, inv) for x in mat[r]]
        row_r = mat[r]
        for i in range(nrows):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [spec.sub(x, spec.mul(f, y)) for x, y in zip(mat[i], row_r)]
        pivot_cols.append(col)
        r += 1
    return r, pivot_cols, mat


def _rref(rows, spec: FieldSpec):
    if not rows:
        return 0, [], []
    if spec.m == 1:
        return kernels.rref_mod_p(rows, spec.p)
    return _rref_generic(rows, spec)


def nullspace_trivial(prob: VanishProblem) -> bool:
    """True iff only the zero polynomial solves the system (full column rank)."""
    system = build_system(prob)
    rank, _, _ = _rref(system.rows, prob.spec)
    return rank == len(system.cols)


def find_vanishing_poly(prob: VanishProblem) -> Optional[SparsePoly]:
    """Canonical nonzero solution, or None when the nullspace is trivial.

    The free variable with the lex-least monomial (in column order) is set
    to one and all other free variables to zero; pivot variables follow
    from the reduced rows.  Every returned polynomial is re-verified
    against the multiplicity module.
    """
    system = build_system(prob)
    spec = prob.spec
    rank, pivot_cols, reduced = _rref(system.rows, spec)
    ncols = len(system.cols)
    if rank == ncols:
        return None
    pivot_set = set(pivot_cols)
    free = next(j for j in range(ncols) if j not in pivot_set)
    solution = [0] * ncols
    solution[free] = spec.one
    for r, pc in enumerate(pivot_cols):
        solution[pc] = spec.neg(reduced[r][free])
    poly = SparsePoly(
        spec, prob.arity,
        {exp: c for exp, c in zip(system.cols, solution) if c},
    )
    assert not poly.is_zero()
    assert poly.degree <= prob.max_degree
    assert vanishes_with_mult(poly, prob.points, prob.mult).ok, "solver/verifier mismatch"
    return poly
