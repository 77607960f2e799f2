"""Exact arithmetic in F_p(x_1, ..., x_m).

Polynomials are python-flint ``nmod_mpoly`` objects in a graded-lex context;
a :class:`RationalFunction` keeps a reduced numerator/denominator pair whose
denominator has leading coefficient 1, so equal field elements have equal
representations.  Exponent tuples double as monomials.

Coefficients live in F_p, where Frobenius is the identity, so taking p^t-th
roots of coefficients never changes them.
"""

from __future__ import annotations

import functools
import operator
import random
from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

import flint

from .errors import ContextMismatchError, NotAPowerError

Monomial = Tuple[int, ...]

SUPPORTED_PRIMES = (2, 3, 5)
MAX_VARIABLES = 8
RESERVED_NAMES = frozenset({"d", "root"})


@dataclass(frozen=True)
class FieldContext:
    """The field F_p(x_1, ..., x_m) with its coordinates as p-basis.

    Coordinates are ordered as given; that order drives the graded-lex
    monomial order and the lexicographic order of index tuples.
    """

    p: int
    variables: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"p must be one of {SUPPORTED_PRIMES}, got {self.p}")
        if not 1 <= len(self.variables) <= MAX_VARIABLES:
            raise ValueError(f"need between 1 and {MAX_VARIABLES} variables")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        for name in self.variables:
            if not name.isidentifier() or name.startswith("_"):
                raise ValueError(f"invalid variable name {name!r}")
            if name in RESERVED_NAMES:
                raise ValueError(f"variable name {name!r} is reserved")
            if name.startswith("d") and name[1:] in self.variables:
                raise ValueError(f"variable {name!r} clashes with the differential of {name[1:]!r}")

    @property
    def m(self) -> int:
        return len(self.variables)

    @functools.cached_property
    def ring(self):
        return flint.nmod_mpoly_ctx.get(self.variables, modulus=self.p, ordering="deglex")

    def poly(self, terms: Mapping[Monomial, int]):
        return self.ring.from_dict({e: c % self.p for e, c in terms.items() if c % self.p})

    def from_poly(self, num, den=None) -> "RationalFunction":
        if den is None:
            return RationalFunction._raw(self, num, self.ring.from_dict({(0,) * self.m: 1}))
        return canonicalize(self, num, den)

    def constant(self, c: int) -> "RationalFunction":
        return self.from_poly(self.ring.from_dict({(0,) * self.m: c % self.p}))

    def zero(self) -> "RationalFunction":
        return self.constant(0)

    def one(self) -> "RationalFunction":
        return self.constant(1)

    def gen(self, i) -> "RationalFunction":
        """Coordinate ``x_i``; ``i`` may be an index or a variable name."""
        return self.from_poly(self.ring.gens()[self.index(i)])

    def gens(self) -> Tuple["RationalFunction", ...]:
        return tuple(self.gen(i) for i in range(self.m))

    def index(self, i) -> int:
        if isinstance(i, str):
            try:
                return self.variables.index(i)
            except ValueError:
                raise KeyError(f"unknown variable {i!r}") from None
        if not 0 <= i < self.m:
            raise IndexError(f"variable index {i} out of range")
        return i

    def __call__(self, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            if value.ctx != self:
                raise ContextMismatchError("element belongs to another context")
            return value
        if isinstance(value, int):
            return self.constant(value)
        if isinstance(value, str):
            return self.gen(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def __str__(self):
        return f"F_{self.p}({', '.join(self.variables)})"


def _leading_coefficient(poly) -> int:
    return int(poly.coeffs()[0])


def canonicalize(ctx: FieldContext, num, den) -> "RationalFunction":
    """Reduced form of num/den with monic (graded-lex) denominator."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return ctx.zero()
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    lc = _leading_coefficient(den)
    if lc != 1:
        inv = pow(lc, -1, ctx.p)
        num = num * inv
        den = den * inv
    return RationalFunction._raw(ctx, num, den)


class RationalFunction:
    """Element of F_p(x_1, ..., x_m) in canonical reduced form."""

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx: FieldContext, num, den=None):
        other = ctx.from_poly(num, den)
        self.ctx, self.num, self.den, self._hash = ctx, other.num, other.den, None

    @classmethod
    def _raw(cls, ctx, num, den):
        obj = object.__new__(cls)
        obj.ctx, obj.num, obj.den, obj._hash = ctx, num, den, None
        return obj

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den.is_one():
                return RationalFunction._raw(self.ctx, self.num + other.num, self.den)
            return canonicalize(self.ctx, self.num + other.num, self.den)
        return canonicalize(self.ctx, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(self.ctx, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.ctx, self.num * other.num, self.den)
        return canonicalize(self.ctx, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return canonicalize(self.ctx, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        try:
            k = operator.index(k)
        except TypeError:
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.ctx.one()
        return RationalFunction._raw(self.ctx, self.num ** k, self.den ** k)

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.constant(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.ctx == other.ctx and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __str__(self):
        return format_rational(self)

    # -- calculus ---------------------------------------------------------
    def derivative(self, i) -> "RationalFunction":
        return partial_derivative(self, i)

    def subs(self, images, target=None) -> "RationalFunction":
        return substitute(self, images, target)


# -- rendering --------------------------------------------------------------

def format_monomial(ctx: FieldContext, exps: Monomial) -> str:
    parts = []
    for name, e in zip(ctx.variables, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(ctx: FieldContext, poly) -> str:
    """Deterministic text of a polynomial, terms in descending graded-lex order."""
    if poly.is_zero():
        return "0"
    terms = []
    for exps, c in zip(poly.monoms(), poly.coeffs()):
        c = int(c)
        mono = format_monomial(ctx, exps)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms)


def format_rational(f: RationalFunction) -> str:
    num = format_polynomial(f.ctx, f.num)
    if f.den.is_one():
        return num
    den = format_polynomial(f.ctx, f.den)
    if len(f.num.monoms()) > 1:
        num = f"({num})"
    if len(f.den.monoms()) > 1 or not f.den.coeffs() or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


def is_atomic(f: RationalFunction) -> bool:
    """True when the rendering needs no parentheses as a multiplicative factor."""
    return f.den.is_one() and len(f.num.monoms()) <= 1


# -- operations ----------------------------------------------------------------

def partial_derivative(f: RationalFunction, i) -> RationalFunction:
    i = f.ctx.index(i)
    if f.den.is_constant():
        return f.ctx.from_poly(f.num.derivative(i))
    num = f.num.derivative(i) * f.den - f.num * f.den.derivative(i)
    return canonicalize(f.ctx, num, f.den * f.den)


def _poly_dict(poly) -> Dict[Monomial, int]:
    return {e: int(c) for e, c in zip(poly.monoms(), poly.coeffs())}


def frobenius_decompose(f: RationalFunction, t: int = 1) -> Dict[Monomial, RationalFunction]:
    """Split ``f = sum_c g_c^(p^t) * x^c`` over classes ``c`` in ``[0, p^t)^m``.

    Only classes with nonzero ``g_c`` appear in the result.
    """
    if t < 1:
        raise ValueError("t must be positive")
    ctx = f.ctx
    q = ctx.p ** t
    num = f.num if f.den.is_constant() else f.num * f.den ** (q - 1)
    groups: Dict[Monomial, Dict[Monomial, int]] = {}
    for exps, c in zip(num.monoms(), num.coeffs()):
        cls = tuple(int(e) % q for e in exps)
        root = tuple(int(e) // q for e in exps)
        groups.setdefault(cls, {})[root] = int(c)
    den = f.den
    out = {}
    for cls in sorted(groups):
        out[cls] = ctx.from_poly(ctx.poly(groups[cls]), den)
    return out


def pth_power_root(f: RationalFunction, t: int = 1) -> RationalFunction:
    """The unique ``g`` with ``g^(p^t) = f``; raises :class:`NotAPowerError`."""
    parts = frobenius_decompose(f, t)
    zero_class = (0,) * f.ctx.m
    if any(cls != zero_class for cls in parts):
        raise NotAPowerError(f"{f} is not a {f.ctx.p}^{t}-th power")
    return parts.get(zero_class, f.ctx.zero())


def is_pth_power(f: RationalFunction, t: int = 1) -> bool:
    zero_class = (0,) * f.ctx.m
    return all(cls == zero_class for cls in frobenius_decompose(f, t))


def substitute(f: RationalFunction, images: Sequence[RationalFunction], target: FieldContext = None) -> RationalFunction:
    """Ring-homomorphic image of ``f`` under ``x_i -> images[i]``."""
    ctx = f.ctx
    if len(images) != ctx.m:
        raise ValueError(f"need {ctx.m} images, got {len(images)}")
    if target is None:
        target = images[0].ctx if images else ctx
    images = [target(g) for g in images]
    if all(g.den.is_one() for g in images):
        nums = [g.num for g in images]
        num = f.num.compose(*nums, ctx=target.ring)
        den = f.den.compose(*nums, ctx=target.ring)
        if den.is_zero():
            raise ZeroDivisionError("substituted denominator vanishes")
        return canonicalize(target, num, den)
    return _eval_poly(f.num, images, target) / _nonzero(_eval_poly(f.den, images, target))


def _nonzero(g: RationalFunction) -> RationalFunction:
    if g.is_zero():
        raise ZeroDivisionError("substituted denominator vanishes")
    return g


def _eval_poly(poly, images, target: FieldContext) -> RationalFunction:
    # Homogenise per variable so only one canonicalisation is needed.
    degs = poly.degrees()
    nums = [g.num for g in images]
    dens = [g.den for g in images]
    ring = target.ring
    acc = ring.from_dict({})
    for exps, c in zip(poly.monoms(), poly.coeffs()):
        term = ring.from_dict({(0,) * target.m: int(c)})
        for e, top, a, b in zip(exps, degs, nums, dens):
            if e:
                term = term * a ** e
            if top - e:
                term = term * b ** (top - e)
        acc = acc + term
    den = ring.from_dict({(0,) * target.m: 1})
    for top, b in zip(degs, dens):
        if top:
            den = den * b ** top
    return canonicalize(target, acc, den)


# -- random elements ---------------------------------------------------------

def random_polynomial(ctx: FieldContext, rng: random.Random, max_degree: int = 2, terms: int = 3,
                      variables: Sequence[int] = None) -> RationalFunction:
    """Random polynomial with at most ``terms`` terms in the given coordinates."""
    variables = range(ctx.m) if variables is None else list(variables)
    data: Dict[Monomial, int] = {}
    for _ in range(terms):
        exps = [0] * ctx.m
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exps[rng.choice(variables)] += 1
        data[tuple(exps)] = rng.randrange(1, ctx.p)
    return ctx.from_poly(ctx.poly(data))


def random_rational(ctx: FieldContext, rng: random.Random, max_degree: int = 2, terms: int = 3,
                    denominator_chance: float = 0.3) -> RationalFunction:
    num = random_polynomial(ctx, rng, max_degree, terms)
    if rng.random() < denominator_chance:
        den = random_polynomial(ctx, rng, max(1, max_degree - 1), 2)
        if not den.is_zero():
            return num / den
    return num


def random_nonzero(ctx: FieldContext, rng: random.Random, **kwargs) -> RationalFunction:
    while True:
        f = random_rational(ctx, rng, **kwargs)
        if not f.is_zero():
            return f
