"""Annihilators of wedge families inside Omega^n(F).

``ann_bruteforce`` is the reference: it solves the linear conditions
``omega ^ u = 0`` directly.  The remaining constructors build the same
subspaces from p-bases of the slot subfields and are checked against it.
The nu-side is symbolic: a :class:`NuGeneratedSet` lists generating families
of logarithmic forms and can only be sampled, not decided.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import HypothesisError
from .field_core import FieldContext, RationalFunction, random_polynomial
from .forms import (
    DifferentialForm,
    FormSubspace,
    differential,
    index_tuples,
    log_product,
    sample_log_form,
    wedge,
)
from .pstructure import extract_p_basis, is_p_independent, p_degree


@dataclass(frozen=True)
class GeneratorFamily:
    """Slots S_1, ..., S_r standing for the products dS_1 ^ ... ^ dS_r.

    ``vanishing`` marks a family in which some slot consists of p-th powers
    only, so every product is zero.
    """

    slots: Tuple[Tuple[RationalFunction, ...], ...]
    vanishing: bool = False

    def __post_init__(self):
        slots = tuple(tuple(s) for s in self.slots)
        if not slots:
            raise ValueError("a family needs at least one slot")
        if any(not s for s in slots):
            raise ValueError("slots must be nonempty")
        object.__setattr__(self, "slots", slots)

    @classmethod
    def of(cls, *slots: Iterable[RationalFunction]) -> "GeneratorFamily":
        return cls(tuple(tuple(s) for s in slots))

    @property
    def ctx(self) -> FieldContext:
        return self.slots[0][0].ctx

    @property
    def r(self) -> int:
        return len(self.slots)

    @property
    def degree(self) -> int:
        return len(self.slots)

    def products(self) -> List[DifferentialForm]:
        """All elementary products ds_1 ^ ... ^ ds_r (zeros dropped)."""
        diffs = [[differential(s) for s in slot] for slot in self.slots]
        out = []
        for combo in itertools.product(*diffs):
            w = wedge(*combo)
            if not w.is_zero():
                out.append(w)
        return out

    def __str__(self):
        return " ^ ".join("{" + ", ".join(str(s) for s in slot) + "}" for slot in self.slots)


FormsLike = Union[GeneratorFamily, Sequence[DifferentialForm]]


def _forms_of(U: FormsLike, ctx: FieldContext = None):
    if isinstance(U, GeneratorFamily):
        return U.ctx, U.degree, U.products()
    forms = list(U)
    if not forms:
        if ctx is None:
            raise ValueError("context required for an empty family")
        return ctx, 0, []
    ctx = forms[0].ctx
    degrees = {f.degree for f in forms}
    if len(degrees) != 1:
        raise ValueError("all forms of a family must share one degree")
    return ctx, degrees.pop(), forms


def ann_bruteforce(U: FormsLike, n: int, ctx: FieldContext = None) -> FormSubspace:
    """Kernel of ``omega -> (omega ^ u)_u`` on Omega^n(F), by direct elimination."""
    ctx, k, forms = _forms_of(U, ctx)
    if n < 0 or n > ctx.m:
        return FormSubspace.zero(ctx, n)
    forms = [f for f in forms if not f.is_zero()]
    if not forms or n + k > ctx.m:
        return FormSubspace.full(ctx, n)
    # only the span of U matters, so replace it by an echelon basis first
    span = FormSubspace.span(ctx, k, forms)
    basis_n = index_tuples(ctx.m, n)
    rows = []
    for sigma in basis_n:
        e = DifferentialForm.basis(ctx, sigma)
        row = []
        for u in span.basis:
            row.extend(wedge(e, u).vector())
        rows.append(row)
    kernel = linalg.left_kernel(ctx, rows)
    return FormSubspace(ctx, n, kernel)


def _product_subspace(elements: Sequence[RationalFunction], n: int, ctx: FieldContext) -> FormSubspace:
    """``d e_1 ^ ... ^ d e_k ^ Omega^(n-k)(F)``; the empty product gives Omega^n."""
    if not elements:
        return FormSubspace.full(ctx, n)
    return FormSubspace.wedge_extended(wedge(*[differential(e) for e in elements]), n)


def _sum(spaces: Iterable[FormSubspace], ctx: FieldContext, n: int) -> FormSubspace:
    acc = FormSubspace.zero(ctx, n)
    for s in spaces:
        acc = acc + s
    return acc


def _ctx_of_slots(slots) -> FieldContext:
    for s in slots:
        for x in s:
            return x.ctx
    raise ValueError("no elements given")


def ann_disjoint(slots: Sequence[Sequence[RationalFunction]], n: int) -> FormSubspace:
    """Annihilator of dS_1 ^ ... ^ dS_r when the slot subfields are p-independent of each other."""
    slots = [list(s) for s in slots]
    ctx = _ctx_of_slots(slots)
    bases = [extract_p_basis(s) for s in slots]
    total = p_degree([x for s in slots for x in s])
    if total != sum(len(b) for b in bases):
        raise HypothesisError(
            "independent-slot-subfields",
            f"p-degree of the union is {total}, not the sum {sum(len(b) for b in bases)} of slot p-degrees",
        )
    return _sum((_product_subspace(b, n, ctx) for b in bases), ctx, n)


def ann_power(S: Sequence[RationalFunction], r: int, n: int) -> FormSubspace:
    """Annihilator of the r-fold wedge of dS."""
    S = list(S)
    if not S:
        raise ValueError("S must be nonempty")
    if r < 1:
        raise ValueError("r must be positive")
    ctx = S[0].ctx
    basis = extract_p_basis(S)
    k = len(basis)
    if r > k:
        return FormSubspace.full(ctx, n)
    t = k - r + 1
    return _sum((_product_subspace(sub, n, ctx) for sub in itertools.combinations(basis, t)), ctx, n)


@dataclass(frozen=True)
class MixedData:
    """Elements a_i (one per p-degree-1 slot) and the extension e_1, ..., e_l."""

    a: Tuple[RationalFunction, ...]
    e: Tuple[RationalFunction, ...]

    @property
    def ell(self) -> int:
        return len(self.e)


def mixed_data(slots: Sequence[Sequence[RationalFunction]], last: Sequence[RationalFunction]) -> MixedData:
    """Check the hypotheses of the mixed constructor and pick a_i and e_j."""
    slots = [list(s) for s in slots]
    last = list(last)
    if not last:
        raise ValueError("the last slot must be nonempty")
    a = []
    for i, s in enumerate(slots):
        b = extract_p_basis(s)
        if len(b) != 1:
            raise HypothesisError("slot-p-degree-one", f"slot {i + 1} has p-degree {len(b)}, expected 1")
        a.append(b[0])
    if not is_p_independent(a):
        raise HypothesisError("nonvanishing-slot-wedge", "the p-degree-one slots are p-dependent, so every product vanishes")
    e: List[RationalFunction] = []
    for s in last:
        if is_p_independent(a + e + [s]):
            e.append(s)
    if not e:
        raise HypothesisError("nonvanishing-slot-wedge", "the last slot lies in the subfield of the others, so every product vanishes")
    return MixedData(tuple(a), tuple(e))


def ann_mixed(slots: Sequence[Sequence[RationalFunction]], last: Sequence[RationalFunction], n: int) -> FormSubspace:
    """Annihilator of dS_1 ^ ... ^ dS_r ^ dS_(r+1) with p-degree-one S_1, ..., S_r."""
    data = mixed_data(slots, last)
    ctx = data.e[0].ctx
    parts = [_product_subspace([x], n, ctx) for x in data.a]
    parts.append(_product_subspace(list(data.e), n, ctx))
    return _sum(parts, ctx, n)


@dataclass(frozen=True)
class BoundsData:
    """Per-slot elements c_i1..c_il_i (new at step i) and their p-basis extension c_i1..c_ik_i."""

    new: Tuple[Tuple[RationalFunction, ...], ...]
    full: Tuple[Tuple[RationalFunction, ...], ...]


def bounds_data(slots: Sequence[Sequence[RationalFunction]]) -> BoundsData:
    acc: List[RationalFunction] = []
    new_all, full_all = [], []
    for s in slots:
        new = []
        for x in s:
            if is_p_independent(acc + new + [x]):
                new.append(x)
        basis = list(new)
        for x in s:
            if is_p_independent(basis + [x]):
                basis.append(x)
        acc.extend(new)
        new_all.append(tuple(new))
        full_all.append(tuple(basis))
    return BoundsData(tuple(new_all), tuple(full_all))


def ann_bounds(slots: Sequence[Sequence[RationalFunction]], n: int) -> Tuple[FormSubspace, FormSubspace]:
    """Lower and upper bounds for the annihilator of an arbitrary slot family."""
    slots = [list(s) for s in slots]
    ctx = _ctx_of_slots(slots)
    data = bounds_data(slots)
    lower = _sum((_product_subspace(c, n, ctx) for c in data.full), ctx, n)
    upper = _sum((_product_subspace(c, n, ctx) for c in data.new), ctx, n)
    return lower, upper


def reduce_family(slots: Union[GeneratorFamily, Sequence[Sequence[RationalFunction]]]) -> GeneratorFamily:
    """Replace every slot by a p-basis of its subfield.

    A slot made of p-th powers has no p-basis; it becomes ``{1}`` and the
    family is flagged ``vanishing``.
    """
    if isinstance(slots, GeneratorFamily):
        slots = slots.slots
    out = []
    vanishing = False
    for s in slots:
        s = list(s)
        b = extract_p_basis(s)
        if not b:
            vanishing = True
            b = [s[0].ctx.one()]
        out.append(tuple(b))
    return GeneratorFamily(tuple(out), vanishing)


# -- nu-annihilators ------------------------------------------------------------

@dataclass(frozen=True)
class NuSummand:
    """[dy_1/y_1 ^ ... ^ dy_t/y_t | y_i in F^p(generators)^*] ^ nu_(n-t)(F)."""

    t: int
    generators: Tuple[RationalFunction, ...]
    residual: int

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"[dlog^{self.t} over F^p({gens})] ^ nu_{self.residual}"


@dataclass(frozen=True)
class NuGeneratedSet:
    """A sum of generated subgroups of nu_n(F); a summand with t = 0 is all of nu_n."""

    ctx: FieldContext
    degree: int
    summands: Tuple[NuSummand, ...] = field(default=())

    @property
    def is_full(self) -> bool:
        return any(s.t == 0 for s in self.summands)

    @classmethod
    def full(cls, ctx: FieldContext, n: int) -> "NuGeneratedSet":
        return cls(ctx, n, (NuSummand(0, (), n),))

    def describe(self) -> List[str]:
        if self.is_full:
            return [f"nu_{self.degree}"]
        return [str(s) for s in self.summands]


def _require_nu_hypothesis(ctx: FieldContext, assume: bool):
    if ctx.p != 2 and not assume:
        raise HypothesisError(
            "F^(p-1)=F",
            f"nu-descriptions need F^(p-1) = F, which fails for rational function fields at p={ctx.p}; "
            "pass the explicit assumption flag to proceed",
        )


def nu_ann_mixed(slots, last, n: int, assume_p_minus_one: bool = False) -> NuGeneratedSet:
    """Generators of the nu-annihilator of dS_1 ^ ... ^ dS_r ^ dS_(r+1), p-degree-one S_i."""
    data = mixed_data(slots, last)
    ctx = data.e[0].ctx
    _require_nu_hypothesis(ctx, assume_p_minus_one)
    summands = []
    # for l = 1 the first summand lies inside the second
    if data.a and n >= 1 and data.ell > 1:
        summands.append(NuSummand(1, data.a, n - 1))
    if n >= data.ell:
        summands.append(NuSummand(data.ell, data.a + data.e, n - data.ell))
    return NuGeneratedSet(ctx, n, tuple(summands))


def nu_ann_power(S: Sequence[RationalFunction], r: int, n: int, assume_p_minus_one: bool = False) -> NuGeneratedSet:
    """Generators of the nu-annihilator of the r-fold wedge of dS."""
    S = list(S)
    ctx = S[0].ctx
    _require_nu_hypothesis(ctx, assume_p_minus_one)
    basis = extract_p_basis(S)
    k = len(basis)
    if r > k:
        return NuGeneratedSet.full(ctx, n)
    t = k - r + 1
    if n < t:
        return NuGeneratedSet(ctx, n, ())
    return NuGeneratedSet(ctx, n, (NuSummand(t, tuple(basis), n - t),))


def nu_ann_generators(case: str, *args, **kwargs) -> NuGeneratedSet:
    """Dispatch on ``case``: ``"mixed"`` (slots, last, n) or ``"power"`` (S, r, n)."""
    if case == "mixed":
        return nu_ann_mixed(*args, **kwargs)
    if case == "power":
        return nu_ann_power(*args, **kwargs)
    raise ValueError(f"unknown case {case!r}")


def sample_subfield_element(generators: Sequence[RationalFunction], rng: random.Random,
                            max_degree: int = 1, terms: int = 2) -> RationalFunction:
    """Random ``sum_mu c_mu^p G^mu`` with exponents mu in [0, p) and c_mu in F."""
    ctx = generators[0].ctx
    p = ctx.p
    acc = ctx.zero()
    for mu in itertools.product(range(p), repeat=len(generators)):
        if rng.random() < 0.5 and any(mu):
            continue
        c = random_polynomial(ctx, rng, max_degree, terms)
        if c.is_zero():
            continue
        term = c ** p
        for g, e in zip(generators, mu):
            if e:
                term = term * g ** e
        acc = acc + term
    return acc


def sample_nu_generator(gset: NuGeneratedSet, rng: random.Random, pool: Sequence[RationalFunction] = None,
                        max_tries: int = 50) -> DifferentialForm:
    """A random generator from one summand: slot logarithmic forms times a residual one."""
    ctx = gset.ctx
    n = gset.degree
    if pool is None:
        pool = list(ctx.gens()) + [g + ctx.one() for g in ctx.gens()]
    if not gset.summands:
        return DifferentialForm.zero(ctx, n)
    summand = rng.choice(gset.summands)
    ys = []
    for _ in range(summand.t):
        for _ in range(max_tries):
            y = sample_subfield_element(summand.generators, rng)
            # constants and other p-th powers give a zero slot; draw again
            if not y.is_zero() and not differential(y).is_zero():
                break
        else:
            raise RuntimeError("could not draw a non-p-th-power slot element")
        ys.append(y)
    slot = log_product(ys, ctx)
    residual = sample_log_form(rng, summand.residual, pool)
    return wedge(slot, residual)
