"""Random instance generators shared by the property suites and the CLI.

Coordinate-aligned instances are pushed through a random triangular
automorphism ``x_i -> x_i + g_i(x_1, ..., x_(i-1))`` so that the closed forms
are not only exercised on coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .annihilators import sample_subfield_element
from .field_core import FieldContext, RationalFunction, random_polynomial, substitute
from .forms import differential
from .pstructure import max_t_decomposition

NAMES = ("a", "b", "c", "e", "f", "g", "h", "k")


def context(p: int, m: int) -> FieldContext:
    return FieldContext(p, NAMES[:m])


def triangular_substitution(ctx: FieldContext, rng: random.Random, density: float = 0.5,
                            max_degree: int = 2) -> List[RationalFunction]:
    """Images of a random triangular automorphism of F."""
    images = []
    for i, x in enumerate(ctx.gens()):
        img = x
        if i and rng.random() < density:
            img = x + random_polynomial(ctx, rng, max_degree, 1, variables=range(i))
        images.append(img)
    return images


def apply(images: Sequence[RationalFunction], elements: Sequence[RationalFunction]) -> List[RationalFunction]:
    return [substitute(f, images) for f in elements]


def _non_power(ctx, rng, variables, max_degree=2, terms=2) -> RationalFunction:
    while True:
        f = random_polynomial(ctx, rng, max_degree, terms, variables=variables)
        if not differential(f).is_zero():
            return f


@dataclass
class SlotInstance:
    ctx: FieldContext
    slots: List[List[RationalFunction]]
    last: Optional[List[RationalFunction]] = None


def disjoint_instance(rng: random.Random, p: int = 2, max_m: int = 5, max_r: int = 3) -> SlotInstance:
    """Slots drawn from disjoint coordinate blocks, then moved by a triangular map."""
    m = rng.randint(2, max_m)
    ctx = context(p, m)
    r = rng.randint(1, min(max_r, m))
    order = list(range(m))
    rng.shuffle(order)
    used = rng.randint(r, m)
    cuts = sorted(rng.sample(range(1, used), r - 1)) if r > 1 else []
    blocks = [order[i:j] for i, j in zip([0] + cuts, cuts + [used])]
    slots = []
    for block in blocks:
        size = rng.randint(1, 3)
        slots.append([_non_power(ctx, rng, block) if rng.random() < 0.85 else
                      random_polynomial(ctx, rng, 2, 2, variables=block) ** p for _ in range(size)])
    images = triangular_substitution(ctx, rng)
    return SlotInstance(ctx, [apply(images, s) for s in slots])


def power_instance(rng: random.Random, p: int = 2, max_m: int = 5, max_pdeg: int = 4) -> SlotInstance:
    """One set S whose p-degree is at most ``max_pdeg``."""
    m = rng.randint(1, max_m)
    ctx = context(p, m)
    k = rng.randint(1, min(max_pdeg, m))
    block = rng.sample(range(m), k)
    size = rng.randint(1, 4)
    S = [_non_power(ctx, rng, block) for _ in range(size)]
    images = triangular_substitution(ctx, rng)
    return SlotInstance(ctx, [apply(images, S)])


def mixed_instance(rng: random.Random, p: int = 2, max_m: int = 5, max_r: int = 2, max_last: int = 3) -> SlotInstance:
    """p-degree-one slots around elements a_i plus a last slot of p-degree at most ``max_last``."""
    m = rng.randint(2, max_m)
    ctx = context(p, m)
    r = rng.randint(0, min(max_r, m - 1))
    slots = []
    for _ in range(r):
        a = _non_power(ctx, rng, range(m), 1, 2)
        slot = [a]
        for _ in range(rng.randint(0, 2)):
            y = sample_subfield_element([a], rng, max_degree=1, terms=1)
            if not differential(y).is_zero():
                slot.append(y)
        rng.shuffle(slot)
        slots.append(slot)
    k = rng.randint(1, min(max_last, m))
    block = rng.sample(range(m), k)
    last = [_non_power(ctx, rng, block) for _ in range(rng.randint(1, 3))]
    images = triangular_substitution(ctx, rng)
    return SlotInstance(ctx, [apply(images, s) for s in slots], apply(images, last))


@dataclass
class TowerInstance:
    ctx: FieldContext
    elements: List[RationalFunction]
    exponents: List[int]
    b: Optional[RationalFunction] = None
    m: Optional[int] = None
    t: Optional[int] = None

    def roots(self) -> List[Tuple[int, RationalFunction]]:
        out = list(zip(self.exponents, self.elements))
        if self.b is not None:
            out.append((self.m, self.b))
        return out


def modular_instance(rng: random.Random, p: int = 2, max_m: int = 5, max_r: int = 3, max_exp: int = 2,
                     max_log_degree: int = 6) -> TowerInstance:
    """p-independent radicands b_i = x_j * u^p + w^p with root exponents m_i."""
    m = rng.randint(1, max_m)
    ctx = context(p, m)
    r = rng.randint(1, min(max_r, m))
    coords = rng.sample(range(m), r)
    elements, exponents = [], []
    budget = max_log_degree
    for j in coords:
        u = random_polynomial(ctx, rng, 1, 1)
        if u.is_zero():
            u = ctx.one()
        w = random_polynomial(ctx, rng, 1, 1)
        elements.append(ctx.gen(j) * u ** p + w ** p)
        e = rng.randint(1, max(1, min(max_exp, budget - (r - len(exponents) - 1))))
        budget -= e
        exponents.append(e)
    return TowerInstance(ctx, elements, exponents)


def extra_root_instance(rng: random.Random, p: int = 2, max_m: int = 4, max_r: int = 2, max_exp: int = 2,
                       modular: bool = False, max_log_degree: int = 6) -> TowerInstance:
    """Coordinates b_i, exponents m_i >= m, and b in F^(p^t)(b_i) with maximal t.

    With ``modular`` the maximal t is at least m (the extra root is redundant),
    otherwise 1 <= t < m.
    """
    # smallest admissible log-degree: one radicand plus, without ``modular``, an extra root, both of exponent 2
    if max_log_degree < (1 if modular else 4) or (not modular and max_exp < 2):
        raise ValueError("no admissible instance fits the requested bounds")
    while True:
        m_vars = rng.randint(2, max_m)
        ctx = context(p, m_vars)
        r = rng.randint(1, min(max_r, m_vars - 1))
        coords = sorted(rng.sample(range(m_vars), r))
        elements = [ctx.gen(j) for j in coords]
        lo = 1 if modular else 2
        mm = rng.randint(lo, max_exp)
        exponents = [rng.randint(mm, max_exp) for _ in coords]
        if sum(exponents) + mm > max_log_degree + (mm if modular else 0):
            continue
        t = rng.randint(mm, mm + 1) if modular else rng.randint(1, mm - 1)
        q = p ** t
        others = [j for j in range(m_vars) if j not in coords]
        b = ctx.zero()
        for _ in range(rng.randint(1, 3)):
            cls = [rng.randrange(q) for _ in coords]
            x = random_polynomial(ctx, rng, 1, 2, variables=others if rng.random() < 0.7 else None)
            term = x ** q
            for g, e in zip(elements, cls):
                term = term * g ** e
            b = b + term
        if differential(b).is_zero():
            continue
        try:
            dec = max_t_decomposition(b, elements, mm)
        except Exception:
            continue
        if modular and not dec.modular:
            continue
        if not modular and (dec.modular or dec.t != t):
            continue
        return TowerInstance(ctx, elements, exponents, b, mm, dec.t)
