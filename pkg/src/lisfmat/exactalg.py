"""Exact linear algebra over the rationals and prime fields.

Every independence decision in the package reduces to a rank computation
in this module.  Rational entries are :class:`fractions.Fraction` values
and GF(p) entries are ints in ``[0, p)``; both are kept in canonical form
so structural equality is value equality.  Nothing here uses floating
point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    ParseError,
    ZeroSubspace,
)

MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for f in range(3, isqrt(p) + 1, 2):
        if p % f == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``characteristic == 0``) or GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0:
            if p >= MAX_PRIME:
                raise ValueError(f"prime field modulus {p} must be < 2^31")
            if not _is_prime(p):
                raise ValueError(f"GF({p}): modulus is not prime")

    @property
    def kind(self) -> str:
        return "Q" if self.characteristic == 0 else "GF"

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip()
        if t == "Q":
            return cls(0)
        if t.startswith("GF(") and t.endswith(")"):
            try:
                p = int(t[3:-1])
            except ValueError:
                raise ParseError(f"bad field spec {text!r}") from None
            try:
                return cls(p)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"bad field spec {text!r}; expected 'Q' or 'GF(p)'")

    # raw element arithmetic -------------------------------------------------

    def element(self, x):
        """Canonical raw value of ``x`` in this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"scalar over {x.field} used in {self}")
            return x.value
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else a * b % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        p = self.characteristic
        return 1 / Fraction(a) if p == 0 else pow(a, -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse_scalar(self, text) -> object:
        """Parse ``"a"``, ``"a/b"`` or an int into a raw field value."""
        if isinstance(text, bool) or isinstance(text, float):
            raise ParseError(f"bad scalar {text!r}")
        if isinstance(text, int):
            return self.element(text)
        if not isinstance(text, str):
            raise ParseError(f"bad scalar {text!r}")
        s = text.strip()
        num, sep, den = s.partition("/")
        try:
            a = int(num)
            b = int(den) if sep else 1
        except ValueError:
            raise ParseError(f"bad scalar {text!r}") from None
        if sep and (b <= 0 or den.strip().startswith(("+", "-"))):
            if b == 0:
                raise ParseError(f"zero denominator in {text!r}")
            raise ParseError(f"denominator must be a positive integer in {text!r}")
        try:
            return self.element(Fraction(a, b))
        except DivisionByZero as exc:
            raise ParseError(str(exc)) from None

    def format_scalar(self, value):
        """Serialize: ``"a/b"``/``"a"`` strings over Q, plain ints over GF(p)."""
        if self.characteristic == 0:
            return str(Fraction(value))
        return int(value)

    def elements(self) -> list:
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return list(range(self.characteristic))


Q = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def _check_field(a: FieldSpec, b: FieldSpec) -> None:
    if a != b:
        raise FieldMismatch(f"{a} vs {b}")


@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.element(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            _check_field(self.field, other.field)
            return other.value
        return self.field.element(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return str(self.value)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None):
    """Dispatch ``add``/``mul``/``neg``/``inv``/``eq`` on scalars."""
    if b is not None:
        _check_field(a.field, b.field)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown scalar op {op!r}")


@dataclass(frozen=True)
class Vector:
    field: FieldSpec
    coords: tuple

    def __post_init__(self):
        el = self.field.element
        object.__setattr__(self, "coords", tuple(el(c) for c in self.coords))

    @classmethod
    def _raw(cls, field: FieldSpec, coords) -> "Vector":
        # coords must already be canonical
        v = object.__new__(cls)
        object.__setattr__(v, "field", field)
        object.__setattr__(v, "coords", tuple(coords))
        return v

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def scalar(self, i: int) -> Scalar:
        return Scalar(self.field, self.coords[i])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "Vector"):
        _check_field(self.field, other.field)
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch(f"{len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        f = self.field
        return Vector._raw(f, (f.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        f = self.field
        return Vector._raw(f, (f.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vector":
        f = self.field
        return Vector._raw(f, (f.neg(a) for a in self.coords))

    def scale(self, c) -> "Vector":
        f = self.field
        c = f.element(c)
        return Vector._raw(f, (f.mul(c, a) for a in self.coords))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def vec(field: FieldSpec, *coords) -> Vector:
    return Vector(field, coords)


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix; ``ncols`` is explicit so empty matrices keep a shape."""

    field: FieldSpec
    rows: tuple
    ncols: int | None = None

    def __post_init__(self):
        el = self.field.element
        rows = tuple(tuple(el(x) for x in r) for r in self.rows)
        ncols = self.ncols
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence, nrows: int) -> "Matrix":
        cols = [tuple(c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise DimensionMismatch("column length differs from nrows")
        return cls(field, tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    def row(self, i: int) -> Vector:
        return Vector._raw(self.field, self.rows[i])

    def column(self, j: int) -> Vector:
        return Vector._raw(self.field, (r[j] for r in self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else (), len(self.rows))

    def apply(self, v: Vector) -> Vector:
        """Matrix-vector product ``self @ v``."""
        _check_field(self.field, v.field)
        if self.ncols != len(v):
            raise DimensionMismatch(f"matrix has {self.ncols} columns, vector has {len(v)} coords")
        f = self.field
        out = []
        for r in self.rows:
            s = f.zero
            for a, b in zip(r, v.coords):
                if a and b:
                    s = f.add(s, f.mul(a, b))
            out.append(s)
        return Vector._raw(f, out)

    __matmul__ = apply


# -- elimination kernels on raw rows ----------------------------------------


def _rref_rows(field: FieldSpec, rows: Sequence[Sequence], ncols: int):
    """Return (nonzero RREF rows, pivot columns).

    Pivot choice is the first nonzero entry in column order.
    """
    p = field.characteristic
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        if p:
            inv = pow(lead, -1, p)
            work[r] = [x * inv % p for x in work[r]]
        else:
            work[r] = [x / lead for x in work[r]]
        prow = work[r]
        for i in range(nrows):
            if i != r:
                f = work[i][c]
                if f:
                    if p:
                        work[i] = [(x - f * y) % p for x, y in zip(work[i], prow)]
                    else:
                        work[i] = [x - f * y for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in work[:r]], pivots


class Echelon:
    """Incremental row-echelon basis used for fast independence tests.

    Rows are stored with a unit pivot; :meth:`add` reduces a candidate
    against the stored rows and keeps it only if a nonzero residual is left.
    """

    __slots__ = ("p", "rows")

    def __init__(self, field: FieldSpec, rows=()):
        self.p = field.characteristic
        self.rows = []
        for r in rows:
            self.add(r)

    def copy(self) -> "Echelon":
        e = object.__new__(Echelon)
        e.p = self.p
        e.rows = list(self.rows)
        return e

    def reduce(self, v):
        p = self.p
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c:
                if p:
                    v = [(a - c * b) % p for a, b in zip(v, row)]
                else:
                    v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert ``v``; return False (and leave the basis alone) if dependent."""
        v = self.reduce(v)
        for i, c in enumerate(v):
            if c:
                p = self.p
                if p:
                    inv = pow(c, -1, p)
                    v = [a * inv % p for a in v]
                else:
                    v = [a / c for a in v]
                self.rows.append((i, v))
                return True
        return False

    def pop(self):
        self.rows.pop()

    @property
    def rank(self) -> int:
        return len(self.rows)


def _rank(field: FieldSpec, rows: Iterable[Sequence]) -> int:
    return Echelon(field, rows).rank


def left_kernel(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{y : sum_i y_i * rows[i] == 0}``, one vector per free row.

    Each basis vector has a 1 in its free position, so the list is in
    canonical (RREF-derived) form.
    """
    m = len(rows)
    if m == 0:
        return []
    cols = [tuple(r[j] for r in rows) for j in range(ncols)]
    reduced, pivots = _rref_rows(field, cols, m)
    pivot_set = set(pivots)
    free = [j for j in range(m) if j not in pivot_set]
    basis = []
    for fcol in free:
        y = [field.zero] * m
        y[fcol] = field.one
        for prow, pc in zip(reduced, pivots):
            y[pc] = field.neg(prow[fcol])
        basis.append(tuple(y))
    return basis


class RrefResult(NamedTuple):
    reduced: Matrix
    rank: int
    pivot_cols: tuple


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form; zero rows are kept at the bottom."""
    nz, pivots = _rref_rows(m.field, m.rows, m.ncols)
    zero_row = tuple([m.field.zero] * m.ncols)
    full = tuple(nz) + (zero_row,) * (m.nrows - len(nz))
    return RrefResult(Matrix(m.field, full, m.ncols), len(nz), tuple(pivots))


def rank(m: Matrix) -> int:
    return _rank(m.field, m.rows)


def _common_space(vs: Sequence[Vector], field=None, ambient_dim=None):
    for v in vs:
        if field is None:
            field = v.field
        else:
            _check_field(field, v.field)
        if ambient_dim is None:
            ambient_dim = len(v)
        elif len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    return field, ambient_dim


def is_linearly_independent(vs: Sequence[Vector]) -> bool:
    vs = list(vs)
    if not vs:
        return True
    field, _ = _common_space(vs)
    e = Echelon(field)
    return all(e.add(v.coords) for v in vs)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by its canonical RREF basis.

    Whatever rows are passed in are re-reduced, so two values are equal
    exactly when they describe the same subspace.
    """

    field: FieldSpec
    ambient_dim: int
    basis: tuple = ()

    def __post_init__(self):
        el = self.field.element
        rows = [tuple(el(x) for x in r) for r in self.basis]
        if any(len(r) != self.ambient_dim for r in rows):
            raise DimensionMismatch("basis row length differs from ambient dimension")
        reduced, _ = _rref_rows(self.field, rows, self.ambient_dim)
        object.__setattr__(self, "basis", tuple(reduced))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_vectors(self) -> list[Vector]:
        return [Vector._raw(self.field, r) for r in self.basis]

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def __contains__(self, v: Vector) -> bool:
        return subspace_contains(self, v)

    def __str__(self):
        return "span{" + ", ".join(str(v) for v in self.basis_vectors()) + "}"


def span(vs: Sequence[Vector], *, field: FieldSpec | None = None, ambient_dim: int | None = None) -> Subspace:
    vs = list(vs)
    field, ambient_dim = _common_space(vs, field, ambient_dim)
    if field is None or ambient_dim is None:
        raise ValueError("span of an empty list needs field and ambient_dim")
    return Subspace(field, ambient_dim, tuple(v.coords for v in vs))


def _common_subspaces(subs: Sequence[Subspace]):
    field, dim = subs[0].field, subs[0].ambient_dim
    for s in subs[1:]:
        _check_field(field, s.field)
        if s.ambient_dim != dim:
            raise DimensionMismatch(f"ambient dimensions {dim} vs {s.ambient_dim}")
    return field, dim


def subspace_sum(subs: Sequence[Subspace]) -> Subspace:
    subs = list(subs)
    if not subs:
        raise ValueError("subspace_sum needs at least one subspace")
    field, dim = _common_subspaces(subs)
    return Subspace(field, dim, tuple(r for s in subs for r in s.basis))


def is_direct_sum(subs: Sequence[Subspace]) -> bool:
    subs = list(subs)
    if not subs:
        return True
    field, _ = _common_subspaces(subs)
    e = Echelon(field)
    return all(e.add(r) for s in subs for r in s.basis)


def subspace_contains(u: Subspace, v: Vector) -> bool:
    _check_field(u.field, v.field)
    if len(v) != u.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} vs ambient dimension {u.ambient_dim}")
    e = Echelon(u.field, u.basis)
    return not any(e.reduce(v.coords))


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection by the kernel method.

    Solutions of ``x.A == y.B`` are the left kernel of the stacked matrix
    ``[A; -B]``; the intersection is spanned by the corresponding ``x.A``.
    """
    field, dim = _common_subspaces([a, b])
    stacked = list(a.basis) + [tuple(field.neg(x) for x in r) for r in b.basis]
    vecs = [tuple(_combine(field, y[: a.dim], a.basis, dim)) for y in left_kernel(field, stacked, dim)]
    return Subspace(field, dim, tuple(vecs))


def _combine(field: FieldSpec, coeffs, rows, dim):
    acc = [field.zero] * dim
    for c, row in zip(coeffs, rows):
        if c:
            acc = [field.add(s, field.mul(c, x)) for s, x in zip(acc, row)]
    return acc


def _draw_nonzero(u: Subspace, rng: random.Random, coeff_bound: int) -> Vector:
    if u.dim == 0:
        raise ZeroSubspace("cannot sample a nonzero vector from the zero subspace")
    field = u.field
    p = field.characteristic
    while True:
        if p:
            coeffs = [rng.randrange(p) for _ in u.basis]
        else:
            coeffs = [Fraction(rng.randint(-coeff_bound, coeff_bound)) for _ in u.basis]
        if any(coeffs):
            # rows are independent, so a nonzero coefficient vector gives a nonzero vector
            return Vector._raw(field, _combine(field, coeffs, u.basis, u.ambient_dim))


def random_nonzero_in(u: Subspace, rng_seed: int, coeff_bound: int = 3) -> Vector:
    """Random nonzero member of ``u``, deterministic in ``rng_seed``.

    Coefficients on the basis rows come from ``[-coeff_bound, coeff_bound]``
    over Q and from ``[0, p)`` over GF(p).
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be positive")
    return _draw_nonzero(u, random.Random(rng_seed), coeff_bound)


def projective_rep(v: Vector) -> Vector:
    """Scale ``v`` so its first nonzero coordinate is 1 (zero maps to zero)."""
    f = v.field
    for c in v.coords:
        if c:
            inv = f.inv(c)
            return Vector._raw(f, (f.mul(inv, x) for x in v.coords))
    return v


def random_invertible(field: FieldSpec, n: int, rng: random.Random, bound: int = 3) -> Matrix:
    """Random invertible ``n x n`` matrix with small entries (retry on singular)."""
    p = field.characteristic
    while True:
        if p:
            rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        m = Matrix(field, rows, n)
        if rank(m) == n:
            return m
