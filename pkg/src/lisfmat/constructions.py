"""Matroids built from set families, hypothesis checks and instance generators."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesesNotMet, ParamError
from .exactalg import (
    FieldSpec,
    Matrix,
    Q,
    Vector,
    is_direct_sum,
    random_invertible,
    span,
    subspace_contains,
)
from .matroid import IndependenceFamily, grow_downward_closed, to_labels
from .setfamily import (
    DEFAULT_BUDGET,
    FiniteSet,
    PuncturedSubspace,
    SetFamily,
    _decide,
    _Prepared,
    directions,
)


def lisf_matroid(f: SetFamily, budget: int = DEFAULT_BUDGET) -> IndependenceFamily:
    """Independence system of label sets whose subfamily is a LISF.

    A subfamily of a LISF is a LISF, so supersets of a rejected label set
    are never examined.
    """
    if not f.sets:
        raise ValueError("family has no sets")
    prep = _Prepared(f.sets)

    def accept(mask):
        return _decide(prep, [i - 1 for i in to_labels(mask)], budget, want_witness=False).is_lisf

    return grow_downward_closed(len(f.sets), accept)


class Reason(str, enum.Enum):
    NOT_IN_ONE_DIM_SUBSPACE = "NotInOneDimSubspace"
    NOT_PUNCTURED_SUBSPACE = "NotPuncturedSubspace"
    DIM_BOUND_VIOLATED = "DimBoundViolated"
    NOT_INSIDE_SUMMAND = "NotInsideSummand"
    CHARACTERISTIC_NOT_ZERO = "CharacteristicNotZero"
    DECOMPOSITION_NOT_DIRECT = "DecompositionNotDirect"


@dataclass(frozen=True)
class HypothesisFailure:
    label: int | None  # None for family-wide failures
    reason: Reason
    detail: str = ""


@dataclass(frozen=True)
class HypothesisReport:
    failures: tuple = ()

    @property
    def satisfied(self) -> bool:
        return not self.failures

    def reasons(self) -> list:
        return [(x.label, x.reason.value) for x in self.failures]


def theorem3_hypotheses(f: SetFamily) -> HypothesisReport:
    """Every set must sit inside a single line through the origin."""
    failures = []
    for label, s in zip(f.labels, f.sets):
        if isinstance(s, FiniteSet):
            dirs, _ = directions(s)
            if len(dirs) > 1:
                failures.append(
                    HypothesisFailure(label, Reason.NOT_IN_ONE_DIM_SUBSPACE, f"{len(dirs)} distinct directions")
                )
        elif s.dim != 1:
            failures.append(HypothesisFailure(label, Reason.NOT_IN_ONE_DIM_SUBSPACE, f"subspace of dim {s.dim}"))
    return HypothesisReport(tuple(failures))


def direction_matrix(f: SetFamily) -> Matrix:
    """``ambient_dim x n`` matrix whose column ``i`` represents ``E_i``.

    Column ``i`` is zero when ``E_i`` contains the zero vector (``i`` is then
    a loop on both sides), otherwise the normalized direction of ``E_i``.
    """
    rep = theorem3_hypotheses(f)
    if not rep.satisfied:
        raise HypothesesNotMet(f"not every set lies on a line: {rep.reasons()}")
    zero = tuple([f.field.zero] * f.ambient_dim)
    cols = []
    for s in f.sets:
        if isinstance(s, FiniteSet):
            dirs, has_zero = directions(s)
            cols.append(zero if has_zero or not dirs else dirs[0].coords)
        else:
            cols.append(s.space.basis[0])
    return Matrix.from_columns(f.field, cols, f.ambient_dim)


@dataclass(frozen=True)
class DirectSumDecomposition:
    """Summands ``W_1, ..., W_k``, each meant to have dimension ``n``."""

    field: FieldSpec
    ambient_dim: int
    summands: tuple
    n: int

    @property
    def k(self) -> int:
        return len(self.summands)

    def problems(self) -> list[str]:
        out = []
        if not self.summands:
            return ["no summands"]
        for j, w in enumerate(self.summands, 1):
            if w.field != self.field or w.ambient_dim != self.ambient_dim:
                return [f"summand {j} lives in a different space"]
            if w.dim != self.n:
                out.append(f"summand {j} has dim {w.dim}, expected {self.n}")
        if self.k * self.n > self.ambient_dim:
            out.append(f"k*n = {self.k * self.n} exceeds ambient dimension {self.ambient_dim}")
        if not is_direct_sum(list(self.summands)):
            out.append("summands are not independent")
        return out


def dim_lower_bound(n: int) -> int:
    """Smallest admissible subspace dimension, ``ceil(n/2) + 1``."""
    return (n + 1) // 2 + 1


def theorem4_hypotheses(f: SetFamily, d: DirectSumDecomposition) -> HypothesisReport:
    """Characteristic zero, a genuine direct-sum decomposition, and every set
    a punctured subspace of admissible dimension inside one summand.

    Several sets may share a summand; the dimension bound is what keeps such
    pairs out of the independent sets.
    """
    failures = []
    if f.field.characteristic != 0:
        failures.append(HypothesisFailure(None, Reason.CHARACTERISTIC_NOT_ZERO, str(f.field)))
    probs = d.problems()
    if probs:
        failures.append(HypothesisFailure(None, Reason.DECOMPOSITION_NOT_DIRECT, "; ".join(probs)))
    lo, hi = dim_lower_bound(d.n), d.n
    same_space = not probs or not probs[0].endswith("different space")
    for label, s in zip(f.labels, f.sets):
        if not isinstance(s, PuncturedSubspace):
            failures.append(HypothesisFailure(label, Reason.NOT_PUNCTURED_SUBSPACE))
            continue
        if not lo <= s.dim <= hi:
            failures.append(
                HypothesisFailure(label, Reason.DIM_BOUND_VIOLATED, f"dim {s.dim} outside [{lo}, {hi}]")
            )
        inside = same_space and any(
            all(subspace_contains(w, v) for v in s.space.basis_vectors()) for w in d.summands
        )
        if not inside:
            failures.append(HypothesisFailure(label, Reason.NOT_INSIDE_SUMMAND))
    return HypothesisReport(tuple(failures))


# -- the two families that fail the exchange axiom ---------------------------

_F = Fraction

# (center, squared radius, origin removed)
EXAMPLE2_DISKS = (
    ((_F(1), _F(1)), _F(1), False),
    ((_F(1), _F(0)), _F(1), True),
    ((_F(1), _F(-1)), _F(1, 9), False),
)

EXAMPLE2_POINTS = (
    ((1, 1), (1, 2), (_F(1, 2), _F(1, 2))),
    ((_F(1, 2), _F(1, 2)), (_F(1, 2), _F(-1, 2)), (1, 0)),
    ((1, -1), (1, _F(-7, 8))),
)


def example2_family() -> SetFamily:
    """Rational samples of three closed disks in Q^2 (the second without the origin)."""
    sets = tuple(FiniteSet(tuple(Vector(Q, p) for p in pts)) for pts in EXAMPLE2_POINTS)
    return SetFamily(Q, 2, sets)


@dataclass(frozen=True)
class RegionCheck:
    label: int
    point: Vector
    description: str
    holds: bool


def _shift(var: str, c: Fraction) -> str:
    if c == 0:
        return var
    return f"({var}-{c})" if c > 0 else f"({var}+{-c})"


def example2_disk_checks(f: SetFamily | None = None) -> list[RegionCheck]:
    """Exact disk-membership check for every sample point."""
    f = example2_family() if f is None else f
    out = []
    for label, (s, (center, r2, punctured)) in enumerate(zip(f.sets, EXAMPLE2_DISKS), 1):
        for v in s.vectors:
            lhs = (v[0] - center[0]) ** 2 + (v[1] - center[1]) ** 2
            ok = lhs <= r2 and not (punctured and v.is_zero())
            desc = f"{_shift('x', center[0])}^2+{_shift('y', center[1])}^2 = {lhs} <= {r2}"
            if punctured:
                desc += ", point != 0"
            out.append(RegionCheck(label, v, desc, ok))
    return out


EXAMPLE3_POINTS = (
    ((1, 0, 0), (1, 1, 0), (1, -1, 0), (2, 1, 0)),
    ((1, 1, 0), (0, 0, 1), (1, 1, 1), (1, 1, -1)),
    ((0, 0, 1), (0, 1, 1), (0, -1, 1), (0, 1, 2)),
)


def example3_family() -> SetFamily:
    """Rational samples of three planes in Q^3 with a line or the origin removed."""
    sets = tuple(FiniteSet(tuple(Vector(Q, p) for p in pts)) for pts in EXAMPLE3_POINTS)
    return SetFamily(Q, 3, sets)


def example3_region_checks(f: SetFamily | None = None) -> list[RegionCheck]:
    f = example3_family() if f is None else f
    planes = (
        (span([Vector(Q, (1, 0, 0)), Vector(Q, (0, 1, 0))]), lambda v: v[0] != 0, "in xy-plane, x != 0"),
        (span([Vector(Q, (0, 0, 1)), Vector(Q, (1, 1, 0))]), lambda v: not v.is_zero(), "in span{(0,0,1),(1,1,0)}, nonzero"),
        (span([Vector(Q, (0, 1, 0)), Vector(Q, (0, 0, 1))]), lambda v: v[2] != 0, "in yz-plane, z != 0"),
    )
    out = []
    for label, (s, (plane, off_removed, desc)) in enumerate(zip(f.sets, planes), 1):
        for v in s.vectors:
            out.append(RegionCheck(label, v, desc, subspace_contains(plane, v) and off_removed(v)))
    return out


# -- random instance generators ----------------------------------------------


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _random_scalar(field: FieldSpec, rng: random.Random, bound: int = 3, nonzero: bool = False):
    p = field.characteristic
    while True:
        if p:
            x = rng.randrange(p)
        else:
            x = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
        if x or not nonzero:
            return x


def _random_vector(field: FieldSpec, dim: int, rng: random.Random, bound: int = 3, nonzero: bool = True) -> Vector:
    while True:
        coords = [_random_scalar(field, rng, bound) for _ in range(dim)]
        if any(coords) or not nonzero:
            return Vector(field, coords)


def random_theorem3_instance(
    seed, n: int, l: int, field: FieldSpec = Q, samples_per_set: int = 3, loop_probability: float = 0.1
) -> SetFamily:
    """``n`` finite sets, each a few nonzero multiples of one random direction.

    With probability ``loop_probability`` the zero vector joins a set.
    """
    if n < 1 or l < 1 or samples_per_set < 1:
        raise ParamError("n, l and samples_per_set must be positive")
    rng = _rng(seed)
    sets = []
    for _ in range(n):
        d = _random_vector(field, l, rng)
        vs = [d.scale(_random_scalar(field, rng, 4, nonzero=True)) for _ in range(samples_per_set)]
        if rng.random() < loop_probability:
            vs.insert(rng.randrange(len(vs) + 1), Vector(field, [0] * l))
        sets.append(FiniteSet(tuple(vs)))
    return SetFamily(field, l, tuple(sets))


def random_theorem4_instance(seed, k: int, n: int, m: int, l: int):
    """Random Q^l decomposition into ``k`` summands of dimension ``n`` and
    ``m`` punctured subspaces of admissible dimension inside random summands.

    Returns ``(family, decomposition)``.
    """
    if n < 2:
        raise ParamError(f"n = {n}: the range [ceil(n/2)+1, n] is empty")
    if k < 1 or m < 1:
        raise ParamError("k and m must be positive")
    if k * n > l:
        raise ParamError(f"k*n = {k * n} exceeds l = {l}")
    rng = _rng(seed)
    t = random_invertible(Q, l, rng)
    cols = t.columns()
    summands = tuple(span(cols[j * n:(j + 1) * n]) for j in range(k))
    lo = dim_lower_bound(n)
    sets = []
    for _ in range(m):
        w = summands[rng.randrange(k)]
        dim = rng.randint(lo, n)
        wb = w.basis_vectors()
        while True:
            rows = []
            for _ in range(dim):
                acc = Vector(Q, [0] * l)
                for b in wb:
                    acc = acc + b.scale(rng.randint(-2, 2))
                rows.append(acc)
            u = span(rows)
            if u.dim == dim:
                break
        sets.append(PuncturedSubspace(u))
    return SetFamily(Q, l, tuple(sets)), DirectSumDecomposition(Q, l, summands, n)


def random_mixed_family(
    seed, n: int, l: int, field: FieldSpec = Q, max_set_size: int = 3, punctured_probability: float = 1 / 3
) -> SetFamily:
    """Unconstrained family for invariance and oracle suites.

    Finite sets draw from a small pool of directions so coincidences and
    shared lines are common; each set is a punctured subspace of dimension
    1 or 2 with probability ``punctured_probability``.
    """
    rng = _rng(seed)
    pool = [_random_vector(field, l, rng, bound=2) for _ in range(max(2, l + 1))]
    sets = []
    for _ in range(n):
        if rng.random() < punctured_probability:
            dim = rng.randint(1, min(2, l))
            while True:
                u = span([rng.choice(pool) if rng.random() < 0.5 else _random_vector(field, l, rng, 2) for _ in range(dim)])
                if u.dim >= 1:
                    break
            sets.append(PuncturedSubspace(u))
        else:
            size = rng.randint(1, max_set_size)
            vs = []
            for _ in range(size):
                r = rng.random()
                if r < 0.05:
                    vs.append(Vector(field, [0] * l))
                elif r < 0.8:
                    vs.append(rng.choice(pool).scale(_random_scalar(field, rng, 3, nonzero=True)))
                else:
                    vs.append(_random_vector(field, l, rng, 2))
            sets.append(FiniteSet(tuple(vs)))
    return SetFamily(field, l, tuple(sets))


def random_nonzero_scales(f: SetFamily, rng: random.Random) -> list:
    return [_random_scalar(f.field, rng, 4, nonzero=True) for _ in f.sets]


__all__ = [
    "DirectSumDecomposition",
    "HypothesisFailure",
    "HypothesisReport",
    "Reason",
    "RegionCheck",
    "direction_matrix",
    "example2_disk_checks",
    "example2_family",
    "example3_family",
    "example3_region_checks",
    "lisf_matroid",
    "random_mixed_family",
    "random_theorem3_instance",
    "random_theorem4_instance",
    "theorem3_hypotheses",
    "theorem4_hypotheses",
]
