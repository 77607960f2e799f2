"""Exact linear algebra over F_p(x_1, ..., x_m).

Rows are cleared of denominators, eliminated fraction-free (Bareiss) over the
polynomial ring, and only then normalised into reduced row echelon form.  All
entries are :class:`~pforms.field_core.RationalFunction` values.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .field_core import FieldContext, RationalFunction, canonicalize

Row = List[RationalFunction]


def _clear_denominators(ctx: FieldContext, row: Sequence[RationalFunction]):
    lcm = ctx.ring.from_dict({(0,) * ctx.m: 1})
    for x in row:
        if not x.den.is_one():
            g = lcm.gcd(x.den)
            lcm = lcm * (x.den / g)
    return [x.num * (lcm / x.den) if not x.is_zero() else x.num for x in row]


def echelon_polynomial(ctx: FieldContext, rows: Sequence[Sequence[RationalFunction]]):
    """Fraction-free row echelon form of ``rows`` over F_p[x].

    Returns ``(poly_rows, pivots)``; entries are flint polynomials and every
    division performed is exact (Bareiss).
    """
    mat = [_clear_denominators(ctx, r) for r in rows]
    mat = [r for r in mat if any(not e.is_zero() for e in r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    prev = ctx.ring.from_dict({(0,) * ctx.m: 1})
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        pivot_row = None
        best = None
        for i in range(r, len(mat)):
            e = mat[i][c]
            if not e.is_zero():
                size = len(e.monoms())
                if best is None or size < best:
                    pivot_row, best = i, size
                    if size == 1:
                        break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        piv = mat[r][c]
        prow = mat[r]
        for i in range(r + 1, len(mat)):
            row = mat[i]
            lead = row[c]
            if lead.is_zero():
                if not prev.is_one():
                    for j in range(c + 1, ncols):
                        if not row[j].is_zero():
                            row[j] = (piv * row[j]) / prev
                else:
                    for j in range(c + 1, ncols):
                        if not row[j].is_zero():
                            row[j] = piv * row[j]
                continue
            for j in range(c + 1, ncols):
                a, b = row[j], prow[j]
                if a.is_zero() and b.is_zero():
                    continue
                val = piv * a - lead * b
                row[j] = val / prev if not prev.is_one() else val
            row[c] = lead - lead
        prev = piv
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def rref(ctx: FieldContext, rows: Sequence[Sequence[RationalFunction]]) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form; the result is unique for a given row space."""
    prows, pivots = echelon_polynomial(ctx, rows)
    out: List[Row] = []
    for prow, c in zip(prows, pivots):
        piv = prow[c]
        out.append([canonicalize(ctx, e, piv) if not e.is_zero() else ctx.zero() for e in prow])
    # back substitution over the field
    for i in range(len(out) - 1, -1, -1):
        c = pivots[i]
        pivot_row = out[i]
        for k in range(i):
            factor = out[k][c]
            if factor.is_zero():
                continue
            row = out[k]
            for j in range(c, len(row)):
                if not pivot_row[j].is_zero():
                    row[j] = row[j] - factor * pivot_row[j]
    return out, pivots


def rank(ctx: FieldContext, rows: Sequence[Sequence[RationalFunction]]) -> int:
    return len(echelon_polynomial(ctx, rows)[1])


def nullspace(ctx: FieldContext, rows: Sequence[Sequence[RationalFunction]], ncols: int) -> List[Row]:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    reduced, pivots = rref(ctx, rows) if rows else ([], [])
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        vec = [ctx.zero() for _ in range(ncols)]
        vec[f] = ctx.one()
        for row, c in zip(reduced, pivots):
            if not row[f].is_zero():
                vec[c] = -row[f]
        basis.append(vec)
    return basis


def left_kernel(ctx: FieldContext, rows: Sequence[Sequence[RationalFunction]]) -> List[Row]:
    """Basis of ``{c : sum_i c_i rows[i] = 0}``."""
    if not rows:
        return []
    ncols = len(rows[0])
    columns = []
    for j in range(ncols):
        col = [r[j] for r in rows]
        if any(not e.is_zero() for e in col):
            columns.append(col)
    return nullspace(ctx, columns, len(rows))


def solve(ctx: FieldContext, rows: Sequence[Sequence[RationalFunction]], rhs: Sequence[RationalFunction]) -> Optional[Row]:
    """One solution of ``A x = rhs`` or ``None`` when the system is inconsistent."""
    ncols = len(rows[0]) if rows else 0
    augmented = [[ctx(e) for e in r] + [ctx(b)] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(ctx, augmented)
    if ncols in pivots:
        return None
    x = [ctx.zero() for _ in range(ncols)]
    for row, c in zip(reduced, pivots):
        x[c] = row[ncols]
    return x
