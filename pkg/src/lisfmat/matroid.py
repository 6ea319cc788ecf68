"""Explicit independence systems on the ground set ``{1, ..., n}``.

Subsets are bitmasks internally (bit ``i - 1`` for label ``i``) and label
tuples at the API surface.  Listings use graded lexicographic order: by
size, then by the sorted label tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GroundTooLarge, NotDownwardClosed
from .exactalg import Echelon, Matrix

MAX_GROUND = 24


def to_mask(labels: Iterable[int]) -> int:
    m = 0
    for i in labels:
        m |= 1 << (i - 1)
    return m


def to_labels(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def set_key(labels: Sequence[int]):
    return (len(labels), tuple(labels))


def _check_ground(n: int) -> None:
    if n > MAX_GROUND:
        raise GroundTooLarge(f"ground set of size {n} exceeds the cap of {MAX_GROUND}")


@dataclass(frozen=True)
class IndependenceFamily:
    n: int
    masks: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must be nonempty")
        masks = frozenset(self.masks)
        full = (1 << self.n) - 1
        if any(m & ~full for m in masks):
            raise ValueError("member uses a label outside 1..n")
        object.__setattr__(self, "masks", masks)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "IndependenceFamily":
        return cls(n, frozenset(to_mask(s) for s in sets))

    def __contains__(self, labels) -> bool:
        if isinstance(labels, int):
            return labels in self.masks
        return to_mask(labels) in self.masks

    def __len__(self):
        return len(self.masks)

    def sets(self) -> list[tuple]:
        return sorted((to_labels(m) for m in self.masks), key=set_key)

    def relabel(self, perm: Sequence[int]) -> "IndependenceFamily":
        """Apply ``label i -> perm[i - 1]``."""
        return IndependenceFamily.from_sets(self.n, ([perm[i - 1] for i in s] for s in self.sets()))

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, s)) + "}" if s else "∅" for s in self.sets()) + "}"


@dataclass(frozen=True)
class AxiomReport:
    i1_holds: bool
    i2_holds: bool
    i3_holds: bool
    i2_witness: tuple | None = None  # (I, I') with I' ⊂ I, I a member, I' not
    i3_witness: tuple | None = None  # (I1, I2) with no e in I2 - I1 extending I1

    @property
    def is_matroid(self) -> bool:
        return self.i1_holds and self.i2_holds and self.i3_holds


def _i2_violation(fam: IndependenceFamily):
    masks = fam.masks
    best = None
    for m in masks:
        bits = m
        while bits:
            b = bits & -bits
            bits ^= b
            sub = m ^ b
            if sub not in masks:
                cand = (to_labels(m), to_labels(sub))
                if best is None or cand < best:
                    best = cand
    return best


def _by_size(masks) -> dict:
    levels = {}
    for m in masks:
        levels.setdefault(m.bit_count(), []).append(m)
    for k in levels:
        levels[k].sort(key=to_labels)
    return levels


def _i3_violation_downward(fam: IndependenceFamily):
    # With I.2 in force, a violating pair (I1, I2) can be shrunk to
    # (I1, first |I1|+1 labels of I2), which is lexicographically no larger.
    masks = fam.masks
    levels = _by_size(masks)
    n = fam.n
    for i1 in sorted(masks, key=to_labels):
        upper = levels.get(i1.bit_count() + 1)
        if not upper:
            continue
        ext = 0
        for e in range(n):
            b = 1 << e
            if not i1 & b and (i1 | b) in masks:
                ext |= b
        for i2 in upper:
            if not (i2 & ~i1 & ext):
                return to_labels(i1), to_labels(i2)
    return None


def _i3_violation_full(fam: IndependenceFamily):
    masks = fam.masks
    ordered = sorted(masks, key=to_labels)
    for i1 in ordered:
        size = i1.bit_count()
        for i2 in ordered:
            if i2.bit_count() <= size:
                continue
            diff = i2 & ~i1
            ok = False
            while diff:
                b = diff & -diff
                diff ^= b
                if (i1 | b) in masks:
                    ok = True
                    break
            if not ok:
                return to_labels(i1), to_labels(i2)
    return None


def check_axioms(fam: IndependenceFamily) -> AxiomReport:
    """Check I.1-I.3 by brute force; witnesses are lexicographically least.

    Pairs are compared as ``(I, I')`` / ``(I1, I2)`` tuples of sorted label
    tuples.
    """
    _check_ground(fam.n)
    i1 = 0 in fam.masks
    w2 = _i2_violation(fam)
    if i1 and w2 is None:
        w3 = _i3_violation_downward(fam)
    else:
        w3 = _i3_violation_full(fam)
    return AxiomReport(i1, w2 is None, w3 is None, w2, w3)


@dataclass(frozen=True)
class MatroidSummary:
    rank: int
    bases: list
    circuits: list


def summarize(fam: IndependenceFamily) -> MatroidSummary:
    """Rank, bases (maximal members) and circuits (minimal non-members).

    Circuits only make sense for a downward-closed family containing the
    empty set, so anything else raises :class:`NotDownwardClosed`.
    """
    _check_ground(fam.n)
    rep = check_axioms(fam)
    if not (rep.i1_holds and rep.i2_holds):
        raise NotDownwardClosed("circuits need a family satisfying I.1 and I.2")
    masks = fam.masks
    full = (1 << fam.n) - 1
    bases, circuits = [], set()
    for m in masks:
        free = full & ~m
        maximal = True
        while free:
            b = free & -free
            free ^= b
            x = m | b
            if x in masks:
                maximal = False
            elif x not in circuits:
                # x is minimal dependent iff each one-smaller subset is a member
                bits, minimal = x, True
                while bits:
                    c = bits & -bits
                    bits ^= c
                    if (x ^ c) not in masks:
                        minimal = False
                        break
                if minimal:
                    circuits.add(x)
        if maximal:
            bases.append(to_labels(m))
    rank = max(m.bit_count() for m in masks)
    return MatroidSummary(
        rank,
        sorted(bases, key=set_key),
        sorted((to_labels(c) for c in circuits), key=set_key),
    )


def grow_downward_closed(n: int, accept) -> IndependenceFamily:
    """Enumerate a downward-closed family level by level.

    ``accept(mask)`` is only consulted for masks all of whose one-smaller
    subsets were accepted, so supersets of rejected sets are never tested.
    """
    _check_ground(n)
    members = {0} if accept(0) else set()
    level = [0] if members else []
    while level:
        nxt = []
        for m in level:
            # x is generated only from x minus its highest label
            for e in range(m.bit_length(), n):
                x = m | (1 << e)
                bits, ok = m, True
                while bits:
                    c = bits & -bits
                    bits ^= c
                    if (x ^ c) not in members:
                        ok = False
                        break
                if ok and accept(x):
                    nxt.append(x)
        members.update(nxt)
        level = nxt
    return IndependenceFamily(n, frozenset(members))


def vector_matroid(a: Matrix) -> IndependenceFamily:
    """Column matroid of ``a``: label ``j`` is column ``j``."""
    if a.ncols < 1:
        raise ValueError("matrix needs at least one column")
    _check_ground(a.ncols)
    cols = [a.column(j).coords for j in range(a.ncols)]

    def accept(mask):
        e = Echelon(a.field)
        return all(e.add(cols[j - 1]) for j in to_labels(mask))

    return grow_downward_closed(a.ncols, accept)


def _weights(fam: IndependenceFamily, weights) -> list[Fraction]:
    if len(weights) != fam.n:
        raise ValueError(f"expected {fam.n} weights, got {len(weights)}")
    ws = [Fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        raise ValueError("weights must be non-negative")
    return ws


def greedy_max_weight(fam: IndependenceFamily, weights) -> tuple[tuple, Fraction]:
    """Greedy by decreasing weight, ties broken by ascending label."""
    ws = _weights(fam, weights)
    order = sorted(range(fam.n), key=lambda i: (-ws[i], i))
    cur = 0
    if cur not in fam.masks:
        return (), Fraction(0)
    for i in order:
        x = cur | (1 << i)
        if x in fam.masks:
            cur = x
    labels = to_labels(cur)
    return labels, sum((ws[i - 1] for i in labels), Fraction(0))


def exhaustive_max_weight(fam: IndependenceFamily, weights) -> tuple[tuple, Fraction] | None:
    """Best member by total weight; ties go to the lexicographically least set."""
    _check_ground(fam.n)
    ws = _weights(fam, weights)
    best = None
    for m in fam.masks:
        labels = to_labels(m)
        total = sum((ws[i - 1] for i in labels), Fraction(0))
        if best is None or total > best[1] or (total == best[1] and labels < best[0]):
            best = (labels, total)
    return best


def verify_axiom_witnesses(fam: IndependenceFamily, rep: AxiomReport) -> bool:
    """Re-check the violation witnesses carried by ``rep`` against ``fam``."""
    if rep.i2_witness is not None:
        big, small = (to_mask(s) for s in rep.i2_witness)
        if not (small & ~big == 0 and small != big and big in fam.masks and small not in fam.masks):
            return False
    if rep.i3_witness is not None:
        a, b = (to_mask(s) for s in rep.i3_witness)
        if not (a in fam.masks and b in fam.masks and a.bit_count() < b.bit_count()):
            return False
        diff = b & ~a
        while diff:
            e = diff & -diff
            diff ^= e
            if (a | e) in fam.masks:
                return False
    return (rep.i2_witness is None) == rep.i2_holds and (rep.i3_witness is None) == rep.i3_holds
