"""Vector-set families and the exact LISF decision.

A family ``E_1, ..., E_n`` is a LISF when every choice of one vector per set
is linearly independent.  Sets come in two machine shapes: finite samples
(:class:`FiniteSet`) and a subspace with the origin removed
(:class:`PuncturedSubspace`).

Decision procedure
------------------
Linear dependence is unchanged by rescaling a vector, so a finite set only
matters through its projective directions.  Fix one direction ``d_i`` per
finite set and let ``L_i`` be its line.  A selection is dependent for some
choice of members iff the lines ``L_i`` together with the punctured
subspaces ``U_j`` fail to form a direct sum:

* a dependent selection ``sum c_i v_i = 0`` gives members ``c_i v_i`` of the
  summands, not all zero, adding to zero;
* conversely a nontrivial zero sum ``sum u_i = 0`` of summand members gives a
  dependent selection: a nonzero ``u_i`` in a subspace is itself a selectable
  vector with coefficient 1, a nonzero ``u_i = c d_i`` in a line is
  ``(c / mu) v_i`` for the member ``v_i = mu d_i``, and summands with
  ``u_i = 0`` take any member with coefficient 0.

So the family is a LISF iff no finite set contains zero and the direct-sum
test passes for every tuple of directions.  Tuples are visited in
lexicographic order of direction indices; the first failure is reported.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DimensionMismatch, FieldMismatch, NotInvertible, ZeroScale
from .exactalg import (
    Echelon,
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    _draw_nonzero,
    left_kernel,
    projective_rep,
    rank,
    span,
    subspace_contains,
)

# Maximum number of direction tuples one LISF decision may visit.
DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class FiniteSet:
    """A nonempty finite set of vectors; duplicates are dropped, order kept."""

    vectors: tuple

    def __post_init__(self):
        vs = tuple(dict.fromkeys(self.vectors))
        if not vs:
            raise ValueError("a FiniteSet must be nonempty")
        f, d = vs[0].field, len(vs[0])
        for v in vs:
            if v.field != f:
                raise FieldMismatch(f"{v.field} vs {f}")
            if len(v) != d:
                raise DimensionMismatch(f"vector lengths {len(v)} vs {d}")
        object.__setattr__(self, "vectors", vs)

    @property
    def field(self) -> FieldSpec:
        return self.vectors[0].field

    @property
    def ambient_dim(self) -> int:
        return len(self.vectors[0])

    def __contains__(self, v) -> bool:
        return v in self.vectors

    def __len__(self):
        return len(self.vectors)


@dataclass(frozen=True)
class PuncturedSubspace:
    """``space`` minus the origin."""

    space: Subspace

    def __post_init__(self):
        if self.space.dim < 1:
            raise ValueError("a punctured subspace needs dimension >= 1")

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    @property
    def ambient_dim(self) -> int:
        return self.space.ambient_dim

    @property
    def dim(self) -> int:
        return self.space.dim

    def __contains__(self, v) -> bool:
        return not v.is_zero() and subspace_contains(self.space, v)


VectorSet = FiniteSet | PuncturedSubspace


def member_of(s: VectorSet, v: Vector) -> bool:
    return v in s


@dataclass(frozen=True)
class SetFamily:
    """An ordered family; the set at position ``i`` carries label ``i + 1``."""

    field: FieldSpec
    ambient_dim: int
    sets: tuple = ()

    def __post_init__(self):
        sets = tuple(self.sets)
        for s in sets:
            if s.field != self.field:
                raise FieldMismatch(f"set over {s.field} in family over {self.field}")
            if s.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(f"set in dimension {s.ambient_dim}, family in {self.ambient_dim}")
        object.__setattr__(self, "sets", sets)

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @property
    def labels(self) -> range:
        return range(1, len(self.sets) + 1)

    def by_label(self, label: int) -> VectorSet:
        if not 1 <= label <= len(self.sets):
            raise KeyError(label)
        return self.sets[label - 1]

    def subfamily(self, labels: Iterable[int]) -> list:
        return [self.by_label(i) for i in sorted(labels)]


def directions(s: FiniteSet):
    """Projectively distinct normalized directions of the nonzero members.

    Returns ``(dirs, contains_zero)``; ``dirs`` follow first-occurrence order.
    """
    dirs = {}
    contains_zero = False
    for v in s.vectors:
        if v.is_zero():
            contains_zero = True
        else:
            dirs.setdefault(projective_rep(v), None)
    return list(dirs), contains_zero


@dataclass(frozen=True)
class LisfWitness:
    """One vector per set and coefficients, not all zero, summing to zero."""

    selection: tuple
    coefficients: tuple

    def combination(self) -> Vector:
        acc = self.selection[0].scale(0)
        for c, v in zip(self.coefficients, self.selection):
            acc = acc + v.scale(c)
        return acc


@dataclass(frozen=True)
class LisfVerdict:
    is_lisf: bool
    witness: LisfWitness | None = None

    def __bool__(self):
        return self.is_lisf


def verify_witness(sets: Sequence[VectorSet], w: LisfWitness) -> bool:
    """Check a dependence witness against ``sets`` from scratch."""
    sets = list(sets)
    if len(w.selection) != len(sets) or len(w.coefficients) != len(sets):
        return False
    if not any(c for c in w.coefficients):
        return False
    if not all(member_of(s, v) for s, v in zip(sets, w.selection)):
        return False
    return w.combination().is_zero()


def _family_space(sets: Sequence[VectorSet]):
    field = dim = None
    for s in sets:
        if field is None:
            field, dim = s.field, s.ambient_dim
        elif s.field != field:
            raise FieldMismatch(f"{s.field} vs {field}")
        elif s.ambient_dim != dim:
            raise DimensionMismatch(f"{s.ambient_dim} vs {dim}")
    return field, dim


def _normalize(field: FieldSpec, coeffs: list) -> tuple:
    lead = next(c for c in coeffs if c)
    inv = field.inv(lead)
    return tuple(field.mul(inv, c) for c in coeffs)


def _any_member(s: VectorSet) -> Vector:
    if isinstance(s, FiniteSet):
        return s.vectors[0]
    return s.space.basis_vectors()[0]


class _Prepared:
    """Per-set data reused across many LISF decisions on subfamilies."""

    def __init__(self, sets: Sequence[VectorSet]):
        self.sets = list(sets)
        self.field, self.dim = _family_space(self.sets)
        self.dirs = []
        self.zero = []
        for s in self.sets:
            if isinstance(s, FiniteSet):
                d, z = directions(s)
                self.dirs.append(d)
                self.zero.append(z)
            else:
                self.dirs.append(None)
                self.zero.append(False)


def _first_dependent_choice(prep: _Prepared, idx: Sequence[int], budget: int):
    """Lexicographically least dependent direction tuple, or None.

    ``idx`` selects the subfamily (indices into ``prep.sets``).  The returned
    tuple holds one direction index per finite set in ``idx`` order.
    """
    finite = [i for i in idx if prep.dirs[i] is not None]
    punct = [i for i in idx if prep.dirs[i] is None]
    ech = Echelon(prep.field)
    base_ok = True
    for i in punct:
        for r in prep.sets[i].space.basis:
            if not ech.add(r):
                base_ok = False
                break
        if not base_ok:
            break
    if not base_ok:
        return tuple(0 for _ in finite)
    total = prod(len(prep.dirs[i]) for i in finite)
    if total > budget:
        raise BudgetExceeded(
            f"{total} direction tuples exceed budget {budget}",
            labels=[i + 1 for i in idx],
        )
    # depth-first in lexicographic order; a dependent prefix is completed with zeros
    lists = [prep.dirs[i] for i in finite]
    depth = len(lists)
    choice = []

    def dfs(k, e):
        if k == depth:
            return None
        for j, d in enumerate(lists[k]):
            e2 = e.copy()
            if not e2.add(d.coords):
                return tuple(choice) + (j,) + (0,) * (depth - k - 1)
            choice.append(j)
            found = dfs(k + 1, e2)
            choice.pop()
            if found is not None:
                return found
        return None

    return dfs(0, ech)


def _witness_from_rows(field, dim, sets, parts):
    """Build a witness from per-set row blocks.

    ``parts[i]`` is ``("line", member, direction)`` or ``("space", basis)``.
    """
    rows, owners = [], []
    for i, part in enumerate(parts):
        if part[0] == "line":
            rows.append(part[2].coords)
            owners.append(i)
        else:
            for r in part[1]:
                rows.append(r)
                owners.append(i)
    y = left_kernel(field, rows, dim)[0]
    selection, coeffs = [], []
    for i, part in enumerate(parts):
        ys = [y[k] for k, o in enumerate(owners) if o == i]
        if part[0] == "line":
            member, d = part[1], part[2]
            # member = mu * d with mu = first nonzero coordinate of member
            mu = next(c for c in member.coords if c)
            selection.append(member)
            coeffs.append(field.div(ys[0], mu))
        else:
            basis = part[1]
            if any(ys):
                u = [field.zero] * dim
                for c, r in zip(ys, basis):
                    u = [field.add(a, field.mul(c, b)) for a, b in zip(u, r)]
                selection.append(Vector._raw(field, u))
                coeffs.append(field.one)
            else:
                selection.append(Vector._raw(field, basis[0]))
                coeffs.append(field.zero)
    return LisfWitness(tuple(selection), _normalize(field, coeffs))


def _rep_member(s: FiniteSet, d: Vector) -> Vector:
    return next(v for v in s.vectors if not v.is_zero() and projective_rep(v) == d)


def _decide(prep: _Prepared, idx: Sequence[int], budget: int, want_witness: bool) -> LisfVerdict:
    field = prep.field
    for i in idx:
        if prep.zero[i]:
            if not want_witness:
                return LisfVerdict(False)
            selection, coeffs = [], []
            for j in idx:
                s = prep.sets[j]
                if j == i:
                    selection.append(Vector._raw(field, [field.zero] * prep.dim))
                    coeffs.append(field.one)
                else:
                    selection.append(_any_member(s))
                    coeffs.append(field.zero)
            return LisfVerdict(False, LisfWitness(tuple(selection), tuple(coeffs)))
    choice = _first_dependent_choice(prep, idx, budget)
    if choice is None:
        return LisfVerdict(True)
    if not want_witness:
        return LisfVerdict(False)
    it = iter(choice)
    parts = []
    for i in idx:
        s = prep.sets[i]
        if prep.dirs[i] is not None:
            d = prep.dirs[i][next(it)]
            parts.append(("line", _rep_member(s, d), d))
        else:
            parts.append(("space", s.space.basis))
    return LisfVerdict(False, _witness_from_rows(field, prep.dim, [prep.sets[i] for i in idx], parts))


def is_lisf(sets: Iterable[VectorSet], budget: int = DEFAULT_BUDGET) -> LisfVerdict:
    """Exact LISF decision with a dependence witness on negative verdicts.

    The empty family is a LISF.  Families larger than the ambient dimension
    are not rejected up front; they simply come out dependent.
    """
    sets = list(sets)
    if not sets:
        return LisfVerdict(True)
    prep = _Prepared(sets)
    return _decide(prep, range(len(sets)), budget, want_witness=True)


@dataclass(frozen=True)
class SampledVerdict:
    """Outcome of :func:`is_lisf_sampled`.

    Only a dependence is certified.  ``exhaustive`` is True when every
    selection was tested, in which case "no dependence" is also conclusive.
    """

    witness: LisfWitness | None
    trials: int
    exhaustive: bool

    @property
    def dependence_found(self) -> bool:
        return self.witness is not None

    @property
    def is_lisf(self) -> bool | None:
        if self.witness is not None:
            return False
        return True if self.exhaustive else None


def _selection_witness(field, dim, selection) -> LisfWitness | None:
    ech = Echelon(field)
    if all(ech.add(v.coords) for v in selection):
        return None
    y = left_kernel(field, [v.coords for v in selection], dim)[0]
    return LisfWitness(tuple(selection), _normalize(field, list(y)))


def is_lisf_sampled(sets: Iterable[VectorSet], trials: int, rng_seed: int, coeff_bound: int = 2) -> SampledVerdict:
    """Monte Carlo cross-check of :func:`is_lisf` by plain rank tests.

    Families of finite sets whose full selection product is at most
    ``trials`` are enumerated exhaustively (no projective pruning).
    Otherwise ``trials`` random selections are drawn: a uniform member of
    each finite set and a random nonzero vector of each punctured subspace.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    sets = list(sets)
    if not sets:
        return SampledVerdict(None, 0, True)
    field, dim = _family_space(sets)
    finite_only = all(isinstance(s, FiniteSet) for s in sets)
    if finite_only and prod(len(s) for s in sets) <= trials:
        n = 0
        for selection in itertools.product(*(s.vectors for s in sets)):
            n += 1
            w = _selection_witness(field, dim, selection)
            if w is not None:
                return SampledVerdict(w, n, True)
        return SampledVerdict(None, n, True)
    rng = random.Random(rng_seed)
    for n in range(1, trials + 1):
        selection = [
            rng.choice(s.vectors) if isinstance(s, FiniteSet) else _draw_nonzero(s.space, rng, coeff_bound)
            for s in sets
        ]
        w = _selection_witness(field, dim, selection)
        if w is not None:
            return SampledVerdict(w, n, False)
    return SampledVerdict(None, trials, False)


# -- invariance transforms ---------------------------------------------------


def scale_family(f: SetFamily, lambdas: Sequence) -> SetFamily:
    """Replace each ``E_i`` by ``lambda_i * E_i``; every lambda must be nonzero."""
    if len(lambdas) != len(f.sets):
        raise ValueError(f"expected {len(f.sets)} scale factors, got {len(lambdas)}")
    lams = [f.field.element(x) for x in lambdas]
    if not all(lams):
        raise ZeroScale("scale factors must be nonzero")
    out = []
    for s, lam in zip(f.sets, lams):
        if isinstance(s, FiniteSet):
            out.append(FiniteSet(tuple(v.scale(lam) for v in s.vectors)))
        else:
            out.append(s)
    return SetFamily(f.field, f.ambient_dim, tuple(out))


def apply_isomorphism(f: SetFamily, t: Matrix) -> SetFamily:
    """Map every set through the invertible linear map ``t``."""
    if t.field != f.field:
        raise FieldMismatch(f"{t.field} vs {f.field}")
    if t.shape != (f.ambient_dim, f.ambient_dim):
        raise DimensionMismatch(f"map of shape {t.shape} on dimension {f.ambient_dim}")
    if rank(t) < f.ambient_dim:
        raise NotInvertible("linear map is singular")
    out = []
    for s in f.sets:
        if isinstance(s, FiniteSet):
            out.append(FiniteSet(tuple(t.apply(v) for v in s.vectors)))
        else:
            out.append(PuncturedSubspace(span([t.apply(v) for v in s.space.basis_vectors()])))
    return SetFamily(f.field, f.ambient_dim, tuple(out))


def symmetrize(f: SetFamily) -> SetFamily:
    """Replace each finite ``E`` by ``E | -E``; punctured subspaces are already symmetric."""
    out = []
    for s in f.sets:
        if isinstance(s, FiniteSet):
            out.append(FiniteSet(s.vectors + tuple(-v for v in s.vectors)))
        else:
            out.append(s)
    return SetFamily(f.field, f.ambient_dim, tuple(out))


def finite(field: FieldSpec, *vectors) -> FiniteSet:
    """Shorthand: ``finite(Q, (1, 0), (2, 0))``."""
    return FiniteSet(tuple(Vector(field, v) for v in vectors))


def punctured(field: FieldSpec, *basis) -> PuncturedSubspace:
    """Shorthand: ``punctured(Q, (1, 0, 0), (0, 1, 0))``."""
    return PuncturedSubspace(span([Vector(field, v) for v in basis]))

