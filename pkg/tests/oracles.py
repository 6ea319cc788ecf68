from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from lisfmat.exactalg import GF, Q, Matrix, Vector

FIELDS = [Q, GF(2), GF(3), GF(5), GF(7)]


def naive_rank(rows, p=0):
    """Textbook Gaussian elimination, kept separate from the library kernel."""
    m = [[Fraction(x) if p == 0 else int(x) % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                if p:
                    f = m[i][c] * pow(m[rank][c], p - 2, p) % p
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
                else:
                    f = m[i][c] / m[rank][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def brute_force_axioms(n, members):
    """I.1-I.3 straight from the definition, over explicit frozensets."""
    members = {frozenset(s) for s in members}
    i1 = frozenset() in members
    i2 = all(frozenset(sub) in members for m in members for k in range(len(m)) for sub in combinations(m, k))
    i3 = all(
        any(a | {e} in members for e in b - a)
        for a in members
        for b in members
        if len(a) < len(b)
    )
    return i1, i2, i3


def scalars(field, bound=4):
    if field.characteristic:
        return st.integers(0, field.characteristic - 1)
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, 3))


@st.composite
def fields(draw):
    return draw(st.sampled_from(FIELDS))


@st.composite
def matrices(draw, field=None, max_rows=5, max_cols=5):
    field = field or draw(fields())
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(scalars(field), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(field, rows, c)


@st.composite
def vector_lists(draw, field=None, dim=None, max_len=5):
    field = field or draw(fields())
    dim = dim or draw(st.integers(1, 4))
    k = draw(st.integers(0, max_len))
    rows = draw(st.lists(st.lists(scalars(field), min_size=dim, max_size=dim), min_size=k, max_size=k))
    return field, dim, [Vector(field, r) for r in rows]

