"""Purely inseparable towers over F and the restriction kernels Omega^n(E/F).

A tower adjoins generators z_1, ..., z_k with ``z_i^(p^s_i) = h_i`` where h_i
only involves earlier generators.  Elements are F-linear combinations of the
monomials z^mu with ``mu_i < p^s_i``.  Omega^1(E) is presented as the E-span of
dx_1..dx_m, dz_1..dz_k modulo the rows ``d h_i``; the non-pivot generators of
the reduced relation matrix form an E-basis.

``kernel_bruteforce`` computes the kernel of Omega^n(F) -> Omega^n(E) by
plain linear algebra over F.  The closed forms ``kernel_modular``,
``kernel_simple`` and ``kernel_extra_root`` are compared against it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg
from .annihilators import (
    NuGeneratedSet,
    NuSummand,
    ann_bruteforce,
    ann_mixed,
    ann_power,
    mixed_data,
    nu_ann_mixed,
    nu_ann_power,
)
from .errors import ContextMismatchError, DegenerateStepError, HypothesisError, PFormsError
from .field_core import FieldContext, RationalFunction, frobenius_decompose, partial_derivative
from .forms import DifferentialForm, FormSubspace, differential, index_tuples, merge_sign, wedge
from .pstructure import PDecomposition, in_p_span, is_p_independent, max_t_decomposition

Exponent = Tuple[int, ...]


# -- tower elements --------------------------------------------------------------

class TowerElement:
    """Element of a tower: a sparse map from root exponents mu to F-coefficients."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: "ExtensionTower", coeffs: Mapping[Exponent, RationalFunction]):
        self.tower = tower
        self.coeffs = {mu: c for mu, c in coeffs.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return not self.is_zero()

    def in_base(self) -> bool:
        return all(not any(mu) for mu in self.coeffs)

    def base_value(self) -> RationalFunction:
        if not self.in_base():
            raise ValueError("element does not lie in the base field")
        return self.coeffs.get(self.tower.unit, self.tower.base.zero())

    def _coerce(self, other) -> "TowerElement":
        if isinstance(other, TowerElement):
            if other.tower is not self.tower:
                return self.tower.lift(other)
            return other
        return self.tower.element(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for mu, c in other.coeffs.items():
            out[mu] = out[mu] + c if mu in out else c
        return TowerElement(self.tower, out)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, {mu: -c for mu, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, f: RationalFunction) -> "TowerElement":
        if f.is_zero():
            return TowerElement(self.tower, {})
        return TowerElement(self.tower, {mu: c * f for mu, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, RationalFunction)):
            return self.scale(self.tower.base(other))
        return self.tower.multiply(self, self._coerce(other))

    __rmul__ = __mul__

    def frobenius(self) -> "TowerElement":
        return self.tower.frobenius(self)

    def inverse(self) -> "TowerElement":
        return self.tower.inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, RationalFunction)):
            return self.scale(self.tower.base(other).inverse())
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.tower.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, RationalFunction)):
            other = self.tower.element(other)
        if not isinstance(other, TowerElement):
            return NotImplemented
        if other.tower is not self.tower:
            if other.tower.k > self.tower.k:
                return other == self
            other = self.tower.lift(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        return f"TowerElement({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for mu in sorted(self.coeffs):
            c = self.coeffs[mu]
            mono = "*".join(
                (name if e == 1 else f"{name}^{e}") for name, e in zip(self.tower.names, mu) if e
            )
            if not mono:
                parts.append(str(c))
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # formal partial derivatives of the representative
    def d_base(self, j: int) -> "TowerElement":
        return TowerElement(self.tower, {mu: partial_derivative(c, j) for mu, c in self.coeffs.items()})

    def d_root(self, l: int) -> "TowerElement":
        p = self.tower.p
        out: Dict[Exponent, RationalFunction] = {}
        for mu, c in self.coeffs.items():
            e = mu[l] % p
            if not e:
                continue
            nu = mu[:l] + (mu[l] - 1,) + mu[l + 1:]
            out[nu] = c * e
        return TowerElement(self.tower, out)


# -- towers ------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionStep:
    """Adjoin ``name`` with ``name^(p^s) = g``; ``g`` lives in the tower built so far."""

    name: str
    s: int
    g: object


class ExtensionTower:
    """F(z_1, ..., z_k) with ``z_i^(q_i) = h_i``; build with :func:`build_tower`."""

    def __init__(self, base: FieldContext, names: Sequence[str] = (), exponents: Sequence[int] = (),
                 relations: Sequence[Mapping[Exponent, RationalFunction]] = ()):
        self.base = base
        self.names = tuple(names)
        self.exponents = tuple(exponents)
        self.k = len(self.names)
        self.p = base.p
        self.q = tuple(self.p ** s for s in self.exponents)
        self.unit: Exponent = (0,) * self.k
        self.relations = tuple(dict(r) for r in relations)
        self._monomial_cache: Dict[Exponent, Dict[Exponent, RationalFunction]] = {}
        self._module: Optional["PresentedFormModule"] = None
        self.roots: Tuple[TowerElement, ...] = ()

    @property
    def degree(self) -> int:
        return math.prod(self.q)

    @property
    def log_degree(self) -> int:
        return sum(self.exponents)

    def monomials(self) -> List[Exponent]:
        return [tuple(mu) for mu in itertools.product(*[range(q) for q in self.q])]

    def __repr__(self):
        steps = ", ".join(
            f"{n}^{q} = {TowerElement(self, h)}" for n, q, h in zip(self.names, self.q, self.relations)
        )
        return f"ExtensionTower({self.base}; {steps})"

    # construction helpers
    def element(self, value) -> TowerElement:
        if isinstance(value, TowerElement):
            return value if value.tower is self else self.lift(value)
        if isinstance(value, Mapping):
            return TowerElement(self, value)
        f = self.base(value)
        return TowerElement(self, {self.unit: f})

    def one(self) -> TowerElement:
        return self.element(1)

    def zero(self) -> TowerElement:
        return TowerElement(self, {})

    def gen(self, i) -> TowerElement:
        if isinstance(i, str):
            i = self.names.index(i)
        mu = tuple(1 if j == i else 0 for j in range(self.k))
        if self.q[i] == 1:
            raise ValueError("trivial step")
        return TowerElement(self, {mu: self.base.one()})

    def lift(self, u: TowerElement) -> TowerElement:
        """Embed an element of a prefix tower."""
        src = u.tower
        if src is self:
            return u
        if src.base != self.base or src.k > self.k or src.names != self.names[: src.k]:
            raise ContextMismatchError("element does not come from a prefix of this tower")
        pad = (0,) * (self.k - src.k)
        return TowerElement(self, {mu + pad: c for mu, c in u.coeffs.items()})

    def extended(self, name: str, s: int, g) -> "ExtensionTower":
        if s < 1:
            raise ValueError("step exponent must be at least 1")
        if name in self.names or name in self.base.variables:
            raise ValueError(f"generator name {name!r} already in use")
        g = self.element(g)
        rel = {mu + (0,): c for mu, c in g.coeffs.items()}
        relations = [{mu + (0,): c for mu, c in r.items()} for r in self.relations]
        return ExtensionTower(self.base, self.names + (name,), self.exponents + (s,), relations + [rel])

    # arithmetic
    def _reduce_monomial(self, e: Exponent) -> Dict[Exponent, RationalFunction]:
        cached = self._monomial_cache.get(e)
        if cached is not None:
            return cached
        top = None
        for i in range(self.k - 1, -1, -1):
            if e[i] >= self.q[i]:
                top = i
                break
        if top is None:
            out = {e: self.base.one()}
        else:
            rest = e[:top] + (e[top] - self.q[top],) + e[top + 1:]
            out = {}
            # z^rest * h_top, where h_top only involves earlier generators
            for nu, c in self.relations[top].items():
                summed = tuple(a + b for a, b in zip(rest, nu))
                for mu, f in self._reduce_monomial(summed).items():
                    v = f * c
                    out[mu] = out[mu] + v if mu in out else v
            out = {mu: f for mu, f in out.items() if not f.is_zero()}
        self._monomial_cache[e] = out
        return out

    def multiply(self, u: TowerElement, v: TowerElement) -> TowerElement:
        out: Dict[Exponent, RationalFunction] = {}
        for mu, a in u.coeffs.items():
            for nu, b in v.coeffs.items():
                ab = a * b
                e = tuple(x + y for x, y in zip(mu, nu))
                for lam, f in self._reduce_monomial(e).items():
                    term = ab if f.is_one() else ab * f
                    out[lam] = out[lam] + term if lam in out else term
        return TowerElement(self, out)

    def frobenius(self, u: TowerElement) -> TowerElement:
        p = self.p
        out: Dict[Exponent, RationalFunction] = {}
        for mu, a in u.coeffs.items():
            ap = a ** p
            for lam, f in self._reduce_monomial(tuple(p * x for x in mu)).items():
                term = ap * f
                out[lam] = out[lam] + term if lam in out else term
        return TowerElement(self, out)

    def inverse(self, u: TowerElement) -> TowerElement:
        """u^(-1) = u^(p^N - 1) / u^(p^N), using u^(p^N) in F for N = sum s_i."""
        if u.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if u.in_base():
            return self.element(u.base_value().inverse())
        acc = self.one()
        w = u
        for _ in range(self.log_degree):
            acc = acc * (w ** (self.p - 1)) if self.p > 2 else acc * w
            w = w.frobenius()
        norm = w.base_value()
        return acc.scale(norm.inverse())

    # differentials
    @property
    def module(self) -> "PresentedFormModule":
        if self._module is None:
            self._module = PresentedFormModule(self)
        return self._module

    def d(self, u) -> "TowerForm":
        return tower_d(self.element(u))


def build_tower(base: FieldContext, steps: Sequence[Union[ExtensionStep, Tuple]]) -> ExtensionTower:
    """Tower from explicit steps; rejects a step whose element is a p-th power."""
    tower = ExtensionTower(base)
    for st in steps:
        if not isinstance(st, ExtensionStep):
            st = ExtensionStep(*st)
        tower = tower.extended(st.name, st.s, st.g)
    tower.module  # validates every step
    return tower


# -- presentation of Omega^1(E) ----------------------------------------------------

class PresentedFormModule:
    """Omega^1(E) = E<dx_1..dx_m, dz_1..dz_k> / (d h_i), reduced to an E-basis."""

    def __init__(self, tower: ExtensionTower):
        self.tower = tower
        base = tower.base
        self.generators: Tuple[str, ...] = base.variables + tower.names
        self.width = base.m + tower.k
        self.pivot_rows: Dict[int, List[TowerElement]] = {}
        for i, rel in enumerate(tower.relations):
            h = TowerElement(tower, rel)
            row = self._reduce(self._gradient(h))
            nonzero = [j for j, e in enumerate(row) if not e.is_zero()]
            if not nonzero:
                raise DegenerateStepError(
                    f"step {tower.names[i]}^{tower.q[i]} = {h}: the element is a p-th power at this stage"
                )
            c = nonzero[0]
            inv = row[c].inverse()
            row = [e * inv if not e.is_zero() else e for e in row]
            for other in self.pivot_rows.values():
                f = other[c]
                if not f.is_zero():
                    for j in range(self.width):
                        if not row[j].is_zero():
                            other[j] = other[j] - f * row[j]
            self.pivot_rows[c] = row
        self.free: Tuple[int, ...] = tuple(j for j in range(self.width) if j not in self.pivot_rows)
        self._free_pos = {j: i for i, j in enumerate(self.free)}
        self._dx_images: Dict[int, "TowerForm"] = {}

    @property
    def rank(self) -> int:
        return len(self.free)

    @property
    def relation_rank(self) -> int:
        return len(self.pivot_rows)

    def free_names(self) -> Tuple[str, ...]:
        return tuple(self.generators[j] for j in self.free)

    def _gradient(self, u: TowerElement) -> List[TowerElement]:
        m = self.tower.base.m
        return [u.d_base(j) for j in range(m)] + [u.d_root(l) for l in range(self.tower.k)]

    def _reduce(self, vec: List[TowerElement]) -> List[TowerElement]:
        vec = list(vec)
        for c, row in self.pivot_rows.items():
            f = vec[c]
            if f.is_zero():
                continue
            for j in range(self.width):
                if not row[j].is_zero():
                    vec[j] = vec[j] - f * row[j]
        return vec

    def coordinates(self, vec: List[TowerElement]) -> "TowerForm":
        red = self._reduce(vec)
        coeffs = {(self._free_pos[j],): red[j] for j in self.free if not red[j].is_zero()}
        return TowerForm(self, 1, coeffs)

    def d(self, u: TowerElement) -> "TowerForm":
        return self.coordinates(self._gradient(self.tower.element(u)))

    def dx_image(self, j: int) -> "TowerForm":
        if j not in self._dx_images:
            vec = [self.tower.zero() for _ in range(self.width)]
            vec[j] = self.tower.one()
            self._dx_images[j] = self.coordinates(vec)
        return self._dx_images[j]


class TowerForm:
    """Element of Omega^n(E) in the wedge basis of the free generators."""

    __slots__ = ("module", "degree", "coeffs")

    def __init__(self, module: PresentedFormModule, degree: int, coeffs: Mapping[Tuple[int, ...], TowerElement]):
        self.module = module
        self.degree = degree
        self.coeffs = {s: c for s, c in coeffs.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TowerForm") -> "TowerForm":
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out[s] + c if s in out else c
        return TowerForm(self.module, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(self.module.tower.element(-1))

    def scale(self, u: TowerElement) -> "TowerForm":
        return TowerForm(self.module, self.degree, {s: c * u for s, c in self.coeffs.items()})

    def wedge(self, other: "TowerForm") -> "TowerForm":
        out: Dict[Tuple[int, ...], TowerElement] = {}
        for s, a in self.coeffs.items():
            for t, b in other.coeffs.items():
                sign, merged = merge_sign(s, t)
                if not sign:
                    continue
                term = a * b if sign > 0 else -(a * b)
                out[merged] = out[merged] + term if merged in out else term
        return TowerForm(self.module, self.degree + other.degree, out)

    __xor__ = wedge

    def __eq__(self, other):
        if not isinstance(other, TowerForm):
            return NotImplemented
        return self.module is other.module and self.degree == other.degree and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = self.module.free_names()
        return " + ".join(
            f"({c})*" + "^".join("d" + names[i] for i in s) if s else f"({c})" for s, c in sorted(self.coeffs.items())
        )

    def flat_coordinates(self) -> Dict[Tuple[Tuple[int, ...], Exponent], RationalFunction]:
        """F-coordinates against the basis z^mu * (wedge of free generators)."""
        return {(s, mu): f for s, c in self.coeffs.items() for mu, f in c.coeffs.items()}


def tower_d(u: TowerElement) -> TowerForm:
    """The differential of a tower element in Omega^1(E)."""
    return u.tower.module.d(u)


def restrict_form(omega: DifferentialForm, tower: ExtensionTower) -> TowerForm:
    """The image of a form over F in Omega^n(E)."""
    if omega.ctx != tower.base:
        raise ContextMismatchError("form and tower have different base fields")
    module = tower.module
    acc = TowerForm(module, omega.degree, {})
    for sigma, f in omega.coeffs.items():
        img = TowerForm(module, 0, {(): tower.one()})
        for j in sigma:
            img = img.wedge(module.dx_image(j))
        acc = acc + img.scale(tower.element(f))
    return acc


def kernel_bruteforce(tower: ExtensionTower, n: int) -> FormSubspace:
    """Kernel of Omega^n(F) -> Omega^n(E) by linear algebra over F."""
    base = tower.base
    if n < 0 or n > base.m:
        return FormSubspace.zero(base, n)
    sigmas = index_tuples(base.m, n)
    images = [restrict_form(DifferentialForm.basis(base, s), tower).flat_coordinates() for s in sigmas]
    columns = sorted({key for img in images for key in img})
    if not columns:
        return FormSubspace.full(base, n)
    rows = [[img.get(key, base.zero()) for key in columns] for img in images]
    return FormSubspace(base, n, linalg.left_kernel(base, rows))


# -- towers generated by roots of base elements ---------------------------------------

def _ambient(base: FieldContext) -> FieldContext:
    return FieldContext(base.p, tuple(f"{v}_L" for v in base.variables))


def tower_from_roots(base: FieldContext, roots: Sequence[Tuple], names: Sequence[str] = None) -> ExtensionTower:
    """The field F(g_1^(1/p^s_1), ...) for base elements g_i, as a non-degenerate tower.

    Each root is adjoined with the smallest exponent that keeps the step
    non-degenerate: inside L = F_p(u) with x_i = u_i^(p^N), the root is
    ``g(u^(p^(N - s)))``, and membership of its powers in the current tower
    is decided by F-linear algebra on the u-exponent classes.  Roots already
    in the tower are dropped; ``tower.roots`` records every root as an element.
    """
    roots = [tuple(r) for r in roots]
    if names is None:
        names = [f"root{i + 1}" for i in range(len(roots))]
    N = max([s for s, _ in roots] + [1])
    p = base.p
    L = _ambient(base)
    us = L.gens()

    def embed(g: RationalFunction, power: int) -> RationalFunction:
        # g with x_i -> u_i^(p^power)
        return g.subs([u ** (p ** power) for u in us], L)

    def coordinates(y: RationalFunction) -> Dict[Exponent, RationalFunction]:
        # y = sum_c f_c(x) u^c over classes c in [0, p^N)^m
        parts = frobenius_decompose(y, N)
        return {c: g.subs(list(base.gens()), base) for c, g in parts.items()}

    tower = ExtensionTower(base)
    images: Dict[Exponent, RationalFunction] = {(): L.one()}

    def solve_in(y: RationalFunction):
        monos = sorted(images)
        cols = [coordinates(images[mu]) for mu in monos]
        target = coordinates(y)
        keys = sorted(set(target).union(*[set(c) for c in cols]))
        rows = [[col.get(key, base.zero()) for col in cols] for key in keys]
        rhs = [target.get(key, base.zero()) for key in keys]
        sol = linalg.solve(base, rows, rhs)
        if sol is None:
            return None
        return tower.element({mu: f for mu, f in zip(monos, sol) if not f.is_zero()})

    root_values = []
    for (s, g), name in zip(roots, names):
        g = base(g)
        if g.is_zero():
            raise ValueError("cannot adjoin a root of zero")
        gamma = embed(g, N - s)
        found = None
        for e in range(0, s + 1):
            h = solve_in(gamma ** (p ** e))
            if h is not None:
                found = (e, h)
                break
        if found is None:
            raise PFormsError("root power not found in the tower")  # unreachable: gamma^(p^s) = g
        e, h = found
        if e == 0:
            root_values.append(h)
            continue
        tower = tower.extended(name, e, h)
        images = {mu + (j,): img * gamma ** j for mu, img in images.items() for j in range(p ** e)}
        root_values.append(tower.gen(tower.k - 1))
    tower.module  # validates
    tower.roots = tuple(tower.element(v) for v in root_values)
    return tower


def root_exponent_tower(base: FieldContext, elements: Sequence[RationalFunction], exponents: Sequence[int]) -> ExtensionTower:
    """F(b_1^(1/p^m_1), ...) via :func:`tower_from_roots`."""
    return tower_from_roots(base, list(zip(exponents, elements)))


# -- closed forms ------------------------------------------------------------------

def _sum_extended(elements: Sequence[RationalFunction], n: int, ctx: FieldContext) -> FormSubspace:
    acc = FormSubspace.zero(ctx, n)
    for b in elements:
        acc = acc + FormSubspace.wedge_extended(differential(b), n)
    return acc


def kernel_modular(elements: Sequence[RationalFunction], exponents: Sequence[int], n: int) -> FormSubspace:
    """Kernel for F(b_1^(1/p^m_1), ..., b_r^(1/p^m_r)) with p-independent b_i."""
    elements = list(elements)
    if len(elements) != len(exponents):
        raise ValueError("need one exponent per element")
    if any(m < 1 for m in exponents):
        raise ValueError("exponents must be positive")
    if not elements:
        raise ValueError("need at least one element")
    if not is_p_independent(elements):
        raise HypothesisError("p-independent", "the radicands are p-dependent")
    return _sum_extended(elements, n, elements[0].ctx)


def kernel_modular_as_annihilator(elements: Sequence[RationalFunction], n: int) -> FormSubspace:
    """The same kernel written as the annihilator of db_1 ^ ... ^ db_r."""
    return ann_bruteforce([wedge(*[differential(b) for b in elements])], n)


def kernel_simple(coeffs: Sequence[RationalFunction], separable: bool, n: int, ctx: FieldContext = None) -> FormSubspace:
    """Kernel of a simple extension F(alpha) from the coefficients of its minimal polynomial."""
    coeffs = [c for c in coeffs if not c.is_zero()]
    if not coeffs:
        raise ValueError("the coefficient set is empty")
    ctx = coeffs[0].ctx
    if separable:
        return FormSubspace.zero(ctx, n)
    return ann_power(coeffs, 1, n)


@dataclass(frozen=True)
class ExtraRootResult:
    """Outcome of the closed-form kernel for a tower with one extra, dependent root."""

    case: str  # "modular" or "mixed"
    kernel: FormSubspace
    decomposition: PDecomposition
    nu: Optional[NuGeneratedSet] = None
    warnings: Tuple[str, ...] = ()


def relaxation_applies(elements: Sequence[RationalFunction], b: RationalFunction) -> bool:
    """Whether db = sum lambda_j db_j with every lambda_j nonzero (diagnostic only)."""
    from .pstructure import span_coordinates

    lam = span_coordinates(b, elements)
    return lam is not None and all(not x.is_zero() for x in lam)


def kernel_extra_root(elements: Sequence[RationalFunction], exponents: Sequence[int], b: RationalFunction, m: int,
                     n: int, enforce: bool = True, decomposition: PDecomposition = None,
                     assume_p_minus_one: bool = False) -> ExtraRootResult:
    """Kernel of F(b_1^(1/p^m_1), ..., b_r^(1/p^m_r), b^(1/p^m)) / F for b in F^p(b_1..b_r).

    ``decomposition`` supplies b = sum x_i^(p^t) b^i for non-coordinate b_i;
    otherwise the b_i must be coordinates and the maximal t is computed with
    cap m.  With ``enforce`` the root exponent of b may not exceed any m_i.
    """
    elements = list(elements)
    exponents = list(exponents)
    if len(elements) != len(exponents) or not elements:
        raise ValueError("need one exponent per element")
    ctx = elements[0].ctx
    if m < 1 or any(e < 1 for e in exponents):
        raise ValueError("exponents must be positive")
    if not is_p_independent(elements):
        raise HypothesisError("p-independent", "b_1, ..., b_r are p-dependent")
    if in_p_span(b, []):
        raise HypothesisError("not-a-p-th-power", f"{b} is a p-th power")
    if not in_p_span(b, elements):
        raise HypothesisError("subfield-membership", f"{b} is not in F^p(b_1, ..., b_r)")
    warnings = []
    if m > min(exponents):
        msg = (f"root exponent {m} of the extra radicand exceeds min(m_i) = {min(exponents)}; "
               "the closed form is not valid without this bound")
        if enforce:
            raise HypothesisError("root-exponent-bound", msg)
        warnings.append(msg)
    if decomposition is None:
        decomposition = max_t_decomposition(b, elements, m)
    else:
        if decomposition.element != b or not decomposition.verify():
            raise HypothesisError("decomposition", "the supplied decomposition does not recombine to b")
        if tuple(decomposition.generators) != tuple(elements):
            raise HypothesisError("decomposition", "the supplied decomposition uses other generators")
    nu = None
    use_nu = ctx.p == 2 or assume_p_minus_one
    if decomposition.t >= m:
        kernel = kernel_modular(elements, exponents, n)
        if use_nu:
            nu = NuGeneratedSet(ctx, n, (NuSummand(1, tuple(elements), n - 1),) if n >= 1 else ())
        return ExtraRootResult("modular", kernel, decomposition, nu, tuple(warnings))
    S = list(decomposition.coefficient_set)
    slots = [[x] for x in elements]
    kernel = ann_mixed(slots, S, n)
    if use_nu:
        nu = nu_ann_mixed(slots, S, n, assume_p_minus_one=True)
    return ExtraRootResult("mixed", kernel, decomposition, nu, tuple(warnings))


def nu_kernel_generators(elements: Sequence[RationalFunction], exponents: Sequence[int], n: int,
                         b: RationalFunction = None, m: int = None, assume_p_minus_one: bool = False,
                         decomposition: PDecomposition = None) -> NuGeneratedSet:
    """Generators of nu_n(E/F) for modular towers, or with one extra dependent root."""
    elements = list(elements)
    ctx = elements[0].ctx
    if ctx.p != 2 and not assume_p_minus_one:
        raise HypothesisError("F^(p-1)=F", f"nu-descriptions need F^(p-1) = F, which fails at p={ctx.p}")
    if b is None:
        if not is_p_independent(elements):
            raise HypothesisError("p-independent", "the radicands are p-dependent")
        return NuGeneratedSet(ctx, n, (NuSummand(1, tuple(elements), n - 1),) if n >= 1 else ())
    res = kernel_extra_root(elements, exponents, b, m, n, decomposition=decomposition,
                           assume_p_minus_one=True)
    return res.nu


def dimension_check(tower: ExtensionTower, n: int, radicands: Sequence[RationalFunction] = None) -> Tuple[Optional[int], int]:
    """(expected, computed) F-dimension of Omega^n(E).

    The expected value is ``[E:F] * sum_s C(r, s) C(m - r, n - s)`` for a
    modular tower whose steps adjoin roots of p-independent base elements; for
    other towers it is ``None`` (check skipped).
    """
    base = tower.base
    module = tower.module
    computed = tower.degree * math.comb(module.rank, n) if 0 <= n <= module.rank else 0
    if radicands is None:
        radicands = []
        for rel in tower.relations:
            if any(any(mu) for mu in rel):
                return None, computed
            radicands.append(rel[tower.unit])
    r = len(radicands)
    if not radicands or not is_p_independent(list(radicands)):
        if radicands:
            return None, computed
    mm = base.m
    if not 0 <= n <= mm:
        return 0, computed
    expected = tower.degree * sum(math.comb(r, s) * math.comb(mm - r, n - s) for s in range(0, min(r, n) + 1))
    return expected, computed
