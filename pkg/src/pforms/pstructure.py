"""p-independence, p-degree and F^(p^t)-subfield membership.

Everything reduces to Jacobian ranks: elements a_1, ..., a_k are p-independent
exactly when their differentials are F-linearly independent, and
``a in F^p(b_1, ..., b_r)`` exactly when ``da`` lies in the span of the ``db_i``.
Subfields ``F^(p^t)(b_1, ..., b_r)`` are handled for coordinate generators,
where membership is a statement about numerator exponents modulo p^t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import HypothesisError
from .field_core import FieldContext, Monomial, RationalFunction, partial_derivative


def jacobian(elements: Sequence[RationalFunction]) -> List[List[RationalFunction]]:
    if not elements:
        return []
    ctx = elements[0].ctx
    return [[partial_derivative(a, j) for j in range(ctx.m)] for a in elements]


def _context(elements, ctx=None) -> Optional[FieldContext]:
    if elements:
        return elements[0].ctx
    return ctx


def p_degree(elements: Sequence[RationalFunction]) -> int:
    """log_p [F^p(S) : F^p], the rank of the Jacobian of S."""
    elements = list(elements)
    if not elements:
        return 0
    return linalg.rank(elements[0].ctx, jacobian(elements))


def is_p_independent(elements: Sequence[RationalFunction]) -> bool:
    elements = list(elements)
    return p_degree(elements) == len(elements)


def extract_p_basis(elements: Sequence[RationalFunction]) -> List[RationalFunction]:
    """Greedy p-basis of F^p(S) drawn from S in the given order."""
    chosen: List[RationalFunction] = []
    for s in elements:
        if is_p_independent(chosen + [s]):
            chosen.append(s)
    return chosen


def complete_to_p_basis(independent: Sequence[RationalFunction], ctx: FieldContext = None) -> List[RationalFunction]:
    """Coordinates whose adjunction turns ``independent`` into a p-basis of F."""
    independent = list(independent)
    ctx = _context(independent, ctx)
    if ctx is None:
        raise ValueError("context required for an empty input")
    if not is_p_independent(independent):
        raise HypothesisError("p-independent", "input elements are p-dependent")
    added = []
    for x in ctx.gens():
        if len(independent) + len(added) == ctx.m:
            break
        if is_p_independent(independent + added + [x]):
            added.append(x)
    return added


def in_p_span(a: RationalFunction, generators: Sequence[RationalFunction]) -> bool:
    """Whether ``a`` lies in F^p(generators)."""
    generators = list(generators)
    if not generators:
        return all(partial_derivative(a, j).is_zero() for j in range(a.ctx.m))
    return p_degree(generators + [a]) == p_degree(generators)


def span_coordinates(a: RationalFunction, generators: Sequence[RationalFunction]) -> Optional[List[RationalFunction]]:
    """Coefficients lambda_j with ``da = sum lambda_j db_j``, or None.

    For p-independent generators the coefficients are unique.
    """
    generators = list(generators)
    ctx = a.ctx
    if not generators:
        return [] if in_p_span(a, []) else None
    jac = jacobian(generators)
    rows = [[jac[i][j] for i in range(len(generators))] for j in range(ctx.m)]
    return linalg.solve(ctx, rows, [partial_derivative(a, j) for j in range(ctx.m)])


def coordinate_indices(generators: Sequence[RationalFunction]) -> Tuple[int, ...]:
    """Variable indices of generators that must be distinct coordinates."""
    out = []
    for g in generators:
        if isinstance(g, int):
            out.append(g)
            continue
        idx = None
        if g.is_polynomial():
            monoms = g.num.monoms()
            coeffs = g.num.coeffs()
            if len(monoms) == 1 and int(coeffs[0]) == 1 and sum(monoms[0]) == 1:
                idx = monoms[0].index(1)
        if idx is None:
            raise HypothesisError("coordinate-generators", f"{g} is not a coordinate variable")
        out.append(idx)
    if len(set(out)) != len(out):
        raise HypothesisError("coordinate-generators", "generators must be distinct coordinates")
    return tuple(out)


def _numerator_over_power(b: RationalFunction, q: int):
    # b = M / D^q with M a polynomial
    if b.den.is_one():
        return b.num
    return b.num * b.den ** (q - 1)


def in_fpt_subfield(b: RationalFunction, generators: Sequence, t: int) -> bool:
    """Whether ``b`` lies in F^(p^t)(generators) for coordinate generators."""
    if t < 0:
        raise ValueError("t must be non-negative")
    gens = set(coordinate_indices(generators))
    q = b.ctx.p ** t
    num = _numerator_over_power(b, q)
    others = [j for j in range(b.ctx.m) if j not in gens]
    return all(exps[j] % q == 0 for exps in num.monoms() for j in others)


@dataclass(frozen=True)
class PDecomposition:
    """``b = sum_i x_i^(p^t) * b_1^(i_1) ... b_r^(i_r)`` over classes i in [0, p^t)^r.

    ``modular`` is set when the search reached its cap, i.e. ``b`` lies in
    ``F^(p^cap)(b_1, ..., b_r)``.
    """

    element: RationalFunction
    generators: Tuple[RationalFunction, ...]
    t: int
    coefficients: Dict[Tuple[int, ...], RationalFunction] = field(hash=False)
    modular: bool = False

    @property
    def index_set(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(sorted(self.coefficients))

    @property
    def coefficient_set(self) -> Tuple[RationalFunction, ...]:
        """The distinct coefficients x_i in class order."""
        seen = []
        for cls in self.index_set:
            x = self.coefficients[cls]
            if x not in seen:
                seen.append(x)
        return tuple(seen)

    def recombine(self) -> RationalFunction:
        ctx = self.element.ctx
        q = ctx.p ** self.t
        acc = ctx.zero()
        for cls, x in self.coefficients.items():
            term = x ** q
            for g, e in zip(self.generators, cls):
                if e:
                    term = term * g ** e
            acc = acc + term
        return acc

    def verify(self) -> bool:
        return self.recombine() == self.element


def decompose_at(b: RationalFunction, generators: Sequence, t: int) -> PDecomposition:
    """Coefficients of ``b`` in F^(p^t)(generators); requires membership."""
    idx = coordinate_indices(generators)
    if not in_fpt_subfield(b, idx, t):
        raise HypothesisError("subfield-membership", f"{b} is not in F^(p^{t}) of the generators")
    ctx = b.ctx
    q = ctx.p ** t
    num = _numerator_over_power(b, q)
    groups: Dict[Tuple[int, ...], Dict[Monomial, int]] = {}
    for exps, c in zip(num.monoms(), num.coeffs()):
        cls = tuple(int(exps[j]) % q for j in idx)
        root = list(int(e) // q for e in exps)
        groups.setdefault(cls, {})[tuple(root)] = int(c)
    coeffs = {cls: ctx.from_poly(ctx.poly(terms), b.den) for cls, terms in sorted(groups.items())}
    gens = tuple(ctx.gen(j) for j in idx)
    return PDecomposition(b, gens, t, coeffs)


def max_t_decomposition(b: RationalFunction, generators: Sequence, cap: int) -> PDecomposition:
    """Decomposition at the largest t <= cap with b in F^(p^t)(generators).

    Requires ``b in F^p(generators)``.  When t reaches ``cap`` the result is
    flagged ``modular``; below the cap ``b`` must not be a p-th power.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    idx = coordinate_indices(generators)
    if not in_fpt_subfield(b, idx, 1):
        raise HypothesisError("subfield-membership", f"{b} is not in F^p of the generators")
    t = 1
    while t < cap and in_fpt_subfield(b, idx, t + 1):
        t += 1
    if t < cap and in_p_span(b, []):
        raise HypothesisError("not-a-p-th-power", f"{b} is a p-th power")
    dec = decompose_at(b, idx, t)
    return PDecomposition(dec.element, dec.generators, t, dec.coefficients, modular=(t >= cap))
