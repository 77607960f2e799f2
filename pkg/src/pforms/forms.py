"""Differential forms over F = F_p(x_1, ..., x_m).

A degree-n form is stored in the coordinate differential basis
``dx_sigma = dx_{sigma[0]} ^ ... ^ dx_{sigma[n-1]}`` indexed by strictly
increasing tuples ``sigma``; tuples are compared lexicographically.  Besides the
exterior algebra itself this module carries the Cartier operator (used to
decide exactness), the Artin-Schreier representative and membership in the
group nu_n(F) of sums of logarithmic forms, and :class:`FormSubspace`, the
value type of every annihilator and kernel computation.
"""

from __future__ import annotations

import itertools
import random
from math import comb
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .errors import ContextMismatchError, NotClosedError
from .field_core import (
    FieldContext,
    RationalFunction,
    format_rational,
    frobenius_decompose,
    is_atomic,
    partial_derivative,
)

IndexTuple = Tuple[int, ...]


def index_tuples(m: int, n: int) -> List[IndexTuple]:
    """All strictly increasing n-tuples from range(m), in lexicographic order."""
    if n < 0 or n > m:
        return []
    return list(itertools.combinations(range(m), n))


def merge_sign(sigma: IndexTuple, tau: IndexTuple) -> Tuple[int, Optional[IndexTuple]]:
    """Sign and merged tuple of ``dx_sigma ^ dx_tau`` (``(0, None)`` on collision)."""
    if set(sigma) & set(tau):
        return 0, None
    inversions = sum(1 for i in sigma for j in tau if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(sigma + tau))


class DifferentialForm:
    """Immutable element of Omega^n(F)."""

    __slots__ = ("ctx", "degree", "_coeffs", "_hash")

    def __init__(self, ctx: FieldContext, degree: int, coeffs: Mapping[IndexTuple, RationalFunction] = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean: Dict[IndexTuple, RationalFunction] = {}
        for sigma, c in (coeffs or {}).items():
            sigma = tuple(sigma)
            if len(sigma) != degree or any(a >= b for a, b in zip(sigma, sigma[1:])):
                raise ValueError(f"index tuple {sigma} is not strictly increasing of length {degree}")
            if sigma and not 0 <= sigma[-1] < ctx.m or sigma and sigma[0] < 0:
                raise ValueError(f"index tuple {sigma} out of range")
            c = ctx(c)
            if not c.is_zero():
                clean[sigma] = c
        self.ctx = ctx
        self.degree = degree
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, ctx, degree, coeffs):
        obj = object.__new__(cls)
        obj.ctx, obj.degree, obj._hash = ctx, degree, None
        obj._coeffs = dict(sorted((k, v) for k, v in coeffs.items() if not v.is_zero()))
        return obj

    @classmethod
    def scalar(cls, f: RationalFunction) -> "DifferentialForm":
        return cls._raw(f.ctx, 0, {(): f})

    @classmethod
    def zero(cls, ctx: FieldContext, degree: int) -> "DifferentialForm":
        return cls._raw(ctx, degree, {})

    @classmethod
    def basis(cls, ctx: FieldContext, sigma: IndexTuple) -> "DifferentialForm":
        sigma = tuple(ctx.index(i) for i in sigma)
        if sorted(set(sigma)) != list(sigma):
            raise ValueError("basis tuple must be strictly increasing")
        return cls._raw(ctx, len(sigma), {sigma: ctx.one()})

    @property
    def coeffs(self) -> Mapping[IndexTuple, RationalFunction]:
        return MappingProxyType(self._coeffs)

    def coefficient(self, sigma: IndexTuple) -> RationalFunction:
        return self._coeffs.get(tuple(sigma), self.ctx.zero())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def vector(self) -> List[RationalFunction]:
        """Dense coordinates in the lexicographically ordered differential basis."""
        return [self.coefficient(s) for s in index_tuples(self.ctx.m, self.degree)]

    @classmethod
    def from_vector(cls, ctx: FieldContext, degree: int, vec: Sequence[RationalFunction]) -> "DifferentialForm":
        return cls._raw(ctx, degree, dict(zip(index_tuples(ctx.m, degree), vec)))

    def _check(self, other: "DifferentialForm"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, (int, RationalFunction)) and self.degree == 0:
            other = DifferentialForm.scalar(self.ctx(other))
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self._coeffs)
        for s, c in other._coeffs.items():
            out[s] = out[s] + c if s in out else c
        return DifferentialForm._raw(self.ctx, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialForm._raw(self.ctx, self.degree, {s: -c for s, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, RationalFunction)):
            other = DifferentialForm.scalar(self.ctx(other))
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DifferentialForm):
            return wedge(self, other)
        if isinstance(other, (int, RationalFunction)):
            f = self.ctx(other)
            return DifferentialForm._raw(self.ctx, self.degree, {s: c * f for s, c in self._coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, RationalFunction)):
            return self * self.ctx(other).inverse()
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, (int, RationalFunction)):
            return self * other
        return wedge(self, other)

    def __rxor__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, DifferentialForm):
            if self.ctx != other.ctx:
                return False
            if self.is_zero() and other.is_zero():
                return True
            return self.degree == other.degree and self._coeffs == other._coeffs
        if isinstance(other, (int, RationalFunction)) and self.degree == 0:
            return self == DifferentialForm.scalar(self.ctx(other))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.degree, tuple(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"DifferentialForm({str(self)!r}, degree={self.degree})"

    def __str__(self):
        return format_form(self)


def format_basis_element(ctx: FieldContext, sigma: IndexTuple) -> str:
    return "^".join("d" + ctx.variables[i] for i in sigma)


def format_form(form: DifferentialForm) -> str:
    if form.is_zero():
        return "0"
    parts = []
    for sigma, c in form.coeffs.items():
        basis = format_basis_element(form.ctx, sigma)
        coeff = format_rational(c)
        if not sigma:
            parts.append(coeff if is_atomic(c) or len(form.coeffs) == 1 else f"({coeff})")
        elif c.is_one():
            parts.append(basis)
        elif is_atomic(c):
            parts.append(f"{coeff}*{basis}")
        else:
            parts.append(f"({coeff})*{basis}")
    return " + ".join(parts)


def dx(ctx: FieldContext, i) -> DifferentialForm:
    return DifferentialForm.basis(ctx, (ctx.index(i),))


def as_form(x) -> DifferentialForm:
    if isinstance(x, DifferentialForm):
        return x
    if isinstance(x, RationalFunction):
        return DifferentialForm.scalar(x)
    raise TypeError(f"expected a form or field element, got {type(x).__name__}")


def wedge(*forms) -> DifferentialForm:
    """Exterior product of forms (field elements count as 0-forms)."""
    forms = [as_form(f) for f in forms]
    if not forms:
        raise ValueError("wedge of nothing")
    acc = forms[0]
    for nxt in forms[1:]:
        acc._check(nxt)
        degree = acc.degree + nxt.degree
        out: Dict[IndexTuple, RationalFunction] = {}
        if degree <= acc.ctx.m:
            for s, a in acc._coeffs.items():
                for t, b in nxt._coeffs.items():
                    sign, merged = merge_sign(s, t)
                    if not sign:
                        continue
                    term = a * b if sign > 0 else -(a * b)
                    out[merged] = out[merged] + term if merged in out else term
        acc = DifferentialForm._raw(acc.ctx, degree, out)
    return acc


def differential(x) -> DifferentialForm:
    """d on F (giving 1-forms) and on Omega^n(F), coefficientwise."""
    form = as_form(x)
    ctx = form.ctx
    out: Dict[IndexTuple, RationalFunction] = {}
    for sigma, f in form.coeffs.items():
        for i in range(ctx.m):
            if i in sigma:
                continue
            df = partial_derivative(f, i)
            if df.is_zero():
                continue
            sign, merged = merge_sign((i,), sigma)
            term = df if sign > 0 else -df
            out[merged] = out[merged] + term if merged in out else term
    return DifferentialForm._raw(ctx, form.degree + 1, out)


d = differential


def dlog(f: RationalFunction) -> DifferentialForm:
    """The logarithmic differential df/f."""
    return differential(f) * f.inverse()


def log_product(elements: Sequence[RationalFunction], ctx: FieldContext = None) -> DifferentialForm:
    """df_1/f_1 ^ ... ^ df_n/f_n (the scalar 1 when the list is empty)."""
    if not elements:
        if ctx is None:
            raise ValueError("context required for the empty product")
        return DifferentialForm.scalar(ctx.one())
    return wedge(*[dlog(f) for f in elements])


# -- logarithmic coordinates ------------------------------------------------

def _coordinate_product(ctx: FieldContext, sigma: IndexTuple) -> RationalFunction:
    acc = ctx.one()
    for i in sigma:
        acc = acc * ctx.gen(i)
    return acc


def to_log_basis(form: DifferentialForm) -> Dict[IndexTuple, RationalFunction]:
    """Coefficients of ``form`` against ``dx_sigma / x_sigma``."""
    return {s: c * _coordinate_product(form.ctx, s) for s, c in form.coeffs.items()}


def from_log_basis(ctx: FieldContext, degree: int, coeffs: Mapping[IndexTuple, RationalFunction]) -> DifferentialForm:
    return DifferentialForm(ctx, degree, {s: ctx(c) / _coordinate_product(ctx, s) for s, c in coeffs.items()})


def max_multiindex(form: DifferentialForm) -> IndexTuple:
    """Largest index tuple carrying a nonzero coefficient."""
    if form.is_zero():
        raise ValueError("the zero form has no maximal multi-index")
    return max(form.coeffs)


# -- divisibility -------------------------------------------------------------

def divides(omega: DifferentialForm, u: DifferentialForm) -> Tuple[bool, Optional[DifferentialForm]]:
    """Decide whether ``u = omega ^ v`` for some v; return ``(True, v)`` or ``(False, None)``."""
    omega._check(u)
    ctx = omega.ctx
    k = u.degree - omega.degree
    if k < 0:
        raise ValueError("divisor degree exceeds the degree of the form")
    if u.is_zero():
        return True, DifferentialForm.zero(ctx, k)
    unknowns = index_tuples(ctx.m, k)
    targets = index_tuples(ctx.m, u.degree)
    columns = [wedge(omega, DifferentialForm.basis(ctx, t)).vector() for t in unknowns]
    if not columns:
        return False, None
    rows = [[col[i] for col in columns] for i in range(len(targets))]
    sol = linalg.solve(ctx, rows, u.vector())
    if sol is None:
        return False, None
    return True, DifferentialForm.from_vector(ctx, k, sol)


# -- Cartier operator, exactness, nu-membership -----------------------------

def is_closed(form: DifferentialForm) -> bool:
    return differential(form).is_zero()


def cartier(form: DifferentialForm) -> DifferentialForm:
    """Cartier operator on closed forms.

    In the coordinate logarithmic basis, each coefficient is split into
    Frobenius classes; the image keeps the p-th root of the class-0 part.
    """
    if not is_closed(form):
        raise NotClosedError("the Cartier operator is only defined on closed forms")
    return _cartier_closed(form)


def _cartier_closed(form: DifferentialForm) -> DifferentialForm:
    ctx = form.ctx
    zero_class = (0,) * ctx.m
    image = {}
    for sigma, g in to_log_basis(form).items():
        root = frobenius_decompose(g, 1).get(zero_class)
        if root is not None:
            image[sigma] = root
    return from_log_basis(ctx, form.degree, image)


def is_exact(form: DifferentialForm) -> bool:
    """Exact iff closed and annihilated by the Cartier operator."""
    return is_closed(form) and cartier(form).is_zero()


def artin_schreier_rep(form: DifferentialForm) -> DifferentialForm:
    """Representative ``sum (x^p - x) dx_sigma/x_sigma`` of the Artin-Schreier image.

    The image is only defined modulo exact forms; the representative is the
    one attached to the coordinate p-basis.
    """
    p = form.ctx.p
    return from_log_basis(form.ctx, form.degree, {s: x ** p - x for s, x in to_log_basis(form).items()})


def is_nu_member(form: DifferentialForm) -> bool:
    """Membership in nu_n(F), the kernel of the Artin-Schreier map.

    x^p dlog x_sigma is closed with Cartier image x dlog x_sigma, so the
    representative above is exact iff ``form`` is closed and fixed by C.  This
    avoids raising large coefficients to the p-th power.
    """
    return is_closed(form) and _cartier_closed(form) == form


def sample_log_form(rng: random.Random, n: int, pool: Sequence[RationalFunction]) -> DifferentialForm:
    """Random product of n logarithmic differentials with arguments from ``pool``."""
    pool = [f for f in pool if not f.is_zero()]
    if not pool:
        raise ValueError("pool must contain a nonzero element")
    ctx = pool[0].ctx
    if n == 0:
        return DifferentialForm.scalar(ctx.one())
    picks = rng.sample(pool, n) if len(pool) >= n else [rng.choice(pool) for _ in range(n)]
    return log_product(picks)


# -- subspaces ----------------------------------------------------------------

class FormSubspace:
    """F-subspace of Omega^n(F) held as a reduced row echelon basis.

    The echelon basis is unique, so equality of subspaces is equality of the
    stored rows.
    """

    __slots__ = ("ctx", "degree", "_rows", "_pivots")

    def __init__(self, ctx: FieldContext, degree: int, rows=(), _reduced=False):
        self.ctx = ctx
        self.degree = degree
        width = comb(ctx.m, degree) if 0 <= degree <= ctx.m else 0
        rows = [list(r) for r in rows]
        if any(len(r) != width for r in rows):
            raise ValueError("row length does not match the dimension of Omega^n")
        if not _reduced:
            rows, pivots = linalg.rref(ctx, rows) if rows else ([], [])
        else:
            pivots = [next(j for j, e in enumerate(r) if not e.is_zero()) for r in rows]
        self._rows = tuple(tuple(r) for r in rows)
        self._pivots = tuple(pivots)

    @classmethod
    def span(cls, ctx: FieldContext, degree: int, forms: Iterable[DifferentialForm]) -> "FormSubspace":
        rows = []
        for f in forms:
            f = as_form(f)
            if f.ctx != ctx:
                raise ContextMismatchError(f"{f.ctx} vs {ctx}")
            if f.is_zero():
                continue
            if f.degree != degree:
                raise ValueError(f"form of degree {f.degree} in a degree-{degree} span")
            rows.append(f.vector())
        return cls(ctx, degree, rows)

    @classmethod
    def zero(cls, ctx: FieldContext, degree: int) -> "FormSubspace":
        return cls(ctx, degree, (), _reduced=True)

    @classmethod
    def full(cls, ctx: FieldContext, degree: int) -> "FormSubspace":
        width = comb(ctx.m, degree) if 0 <= degree <= ctx.m else 0
        rows = [[ctx.one() if i == j else ctx.zero() for j in range(width)] for i in range(width)]
        return cls(ctx, degree, rows, _reduced=True)

    @classmethod
    def wedge_extended(cls, form: DifferentialForm, n: int) -> "FormSubspace":
        """The subspace ``form ^ Omega^(n - deg form)(F)``."""
        ctx = form.ctx
        k = n - form.degree
        if k < 0 or n > ctx.m:
            return cls.zero(ctx, n)
        return cls.span(ctx, n, [wedge(form, DifferentialForm.basis(ctx, t)) for t in index_tuples(ctx.m, k)])

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> Tuple[DifferentialForm, ...]:
        return tuple(DifferentialForm.from_vector(self.ctx, self.degree, r) for r in self._rows)

    @property
    def ambient_dim(self) -> int:
        return comb(self.ctx.m, self.degree) if 0 <= self.degree <= self.ctx.m else 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, other: "FormSubspace"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")
        if self.degree != other.degree:
            raise ValueError(f"subspaces of degree {self.degree} and {other.degree}")

    def __add__(self, other: "FormSubspace") -> "FormSubspace":
        self._check(other)
        if not other._rows:
            return self
        if not self._rows:
            return other
        return FormSubspace(self.ctx, self.degree, list(self._rows) + list(other._rows))

    def contains(self, form) -> bool:
        form = as_form(form)
        if form.is_zero():
            return True
        if form.degree != self.degree or form.ctx != self.ctx:
            raise ValueError("form does not live in the ambient space of this subspace")
        vec = form.vector()
        # reduce against the echelon rows
        for row, c in zip(self._rows, self._pivots):
            f = vec[c]
            if f.is_zero():
                continue
            vec = [v - f * r if not r.is_zero() else v for v, r in zip(vec, row)]
        return all(v.is_zero() for v in vec)

    __contains__ = contains

    def issubset(self, other: "FormSubspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    __le__ = issubset

    def __lt__(self, other):
        return self <= other and self.dim < other.dim

    def intersection(self, other: "FormSubspace") -> "FormSubspace":
        self._check(other)
        if not self._rows or not other._rows:
            return FormSubspace.zero(self.ctx, self.degree)
        # coefficients (alpha, beta) with sum alpha_i u_i - sum beta_j v_j = 0
        vectors = [list(r) for r in self._rows] + [[-e for e in r] for r in other._rows]
        kernel = linalg.left_kernel(self.ctx, vectors)
        out = []
        for coeffs in kernel:
            vec = [self.ctx.zero()] * self.ambient_dim
            for a, row in zip(coeffs[: self.dim], self._rows):
                if not a.is_zero():
                    vec = [v + a * r for v, r in zip(vec, row)]
            out.append(vec)
        return FormSubspace(self.ctx, self.degree, out)

    __and__ = intersection

    def __eq__(self, other):
        if not isinstance(other, FormSubspace):
            return NotImplemented
        return self.ctx == other.ctx and self.degree == other.degree and self._rows == other._rows

    def __hash__(self):
        return hash((self.ctx, self.degree, self._rows))

    def __repr__(self):
        return f"FormSubspace(degree={self.degree}, basis=[{', '.join(map(str, self.basis))}])"

    def render(self) -> List[str]:
        return [str(b) for b in self.basis]
