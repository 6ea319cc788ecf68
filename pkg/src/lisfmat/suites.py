"""Randomized property suites shared by the CLI and the acceptance tests.

Each instance ``i`` of a run draws from its own generator seeded with
``f"{seed}:{kind}:{i}"``, so any single failure replays in isolation.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import (
    direction_matrix,
    lisf_matroid,
    random_mixed_family,
    random_nonzero_scales,
    random_theorem3_instance,
    random_theorem4_instance,
    theorem3_hypotheses,
    theorem4_hypotheses,
)
from .errors import ParamError
from .exactalg import GF, Q, FieldSpec, random_invertible
from .instance import dumps
from .matroid import check_axioms, exhaustive_max_weight, greedy_max_weight, vector_matroid
from .setfamily import (
    apply_isomorphism,
    is_lisf,
    is_lisf_sampled,
    scale_family,
    symmetrize,
    verify_witness,
)

KINDS = ("t3", "t4", "corollaries", "oracle")
T3_FIELDS = (Q, GF(5), GF(7))


@dataclass
class SuiteResult:
    kind: str
    count: int
    passed: dict = field(default_factory=dict)  # check name -> passes
    applicable: dict = field(default_factory=dict)  # check name -> instances checked
    failures: list = field(default_factory=list)  # (index, check, instance text)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, ok: bool, index: int, instance_text: str) -> None:
        self.applicable[name] = self.applicable.get(name, 0) + 1
        if ok:
            self.passed[name] = self.passed.get(name, 0) + 1
        else:
            self.passed.setdefault(name, 0)
            self.failures.append((index, name, instance_text))

    def summary(self) -> str:
        return ", ".join(f"{self.passed[k]}/{self.applicable[k]} {k}" for k in self.applicable)


def instance_rng(seed, kind: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{kind}:{index}")


def random_weights(n: int, rng: random.Random) -> list[Fraction]:
    return [Fraction(rng.randint(0, 12), rng.randint(1, 3)) for _ in range(n)]


def greedy_agrees(fam, rng: random.Random, rounds: int = 10) -> bool:
    for _ in range(rounds):
        w = random_weights(fam.n, rng)
        if greedy_max_weight(fam, w)[1] != exhaustive_max_weight(fam, w)[1]:
            return False
    return True


def _pick(value, rng, lo, hi):
    return value if value is not None else rng.randint(lo, hi)


def run_t3(seed=0, count=1000, n=None, l=None, field: FieldSpec | None = None, greedy_rounds=10) -> SuiteResult:
    res = SuiteResult("t3", count)
    t0 = time.perf_counter()
    for i in range(count):
        rng = instance_rng(seed, "t3", i)
        fld = field or rng.choice(T3_FIELDS)
        fam = random_theorem3_instance(
            rng, _pick(n, rng, 1, 8), _pick(l, rng, 1, 6), fld, rng.randint(1, 3), loop_probability=0.1
        )
        text = dumps(fam)
        res.record("hypotheses", theorem3_hypotheses(fam).satisfied, i, text)
        ind = lisf_matroid(fam)
        rep = check_axioms(ind)
        res.record("I1-I2", rep.i1_holds and rep.i2_holds, i, text)
        res.record("matroid", rep.is_matroid, i, text)
        res.record("oracle-equal", ind == vector_matroid(direction_matrix(fam)), i, text)
        if rep.is_matroid:
            res.record("greedy", greedy_agrees(ind, rng, greedy_rounds), i, text)
    res.seconds = time.perf_counter() - t0
    return res


def run_t4(seed=0, count=300, k=None, n=None, m=None, l=None, greedy_rounds=10) -> SuiteResult:
    if n is not None and n < 2:
        raise ParamError(f"n = {n}: the range [ceil(n/2)+1, n] is empty")
    res = SuiteResult("t4", count)
    t0 = time.perf_counter()
    for i in range(count):
        rng = instance_rng(seed, "t4", i)
        dn = _pick(n, rng, 2, 4)
        kk = k if k is not None else rng.randint(1, max(1, min(4, 12 // dn)))
        ll = l if l is not None else rng.randint(kk * dn, max(kk * dn, 12))
        mm = _pick(m, rng, 1, 8)
        fam, dec = random_theorem4_instance(rng, kk, dn, mm, ll)
        text = dumps(fam, dec)
        res.record("hypotheses", theorem4_hypotheses(fam, dec).satisfied, i, text)
        ind = lisf_matroid(fam)
        rep = check_axioms(ind)
        res.record("I1-I2", rep.i1_holds and rep.i2_holds, i, text)
        res.record("matroid", rep.is_matroid, i, text)
        if rep.is_matroid:
            res.record("greedy", greedy_agrees(ind, rng, greedy_rounds), i, text)
    res.seconds = time.perf_counter() - t0
    return res


def corollary_family(rng: random.Random, n=None, l=None, field=None):
    """Alternate between hypothesis-satisfying and unconstrained families."""
    fld = field or rng.choice((Q, GF(2), GF(5), GF(7)))
    nn, ll = _pick(n, rng, 1, 6), _pick(l, rng, 1, 4)
    if rng.random() < 0.5:
        return random_theorem3_instance(rng, nn, ll, fld, rng.randint(1, 3), 0.1)
    return random_mixed_family(rng, nn, ll, fld)


def run_corollaries(seed=0, count=500, n=None, l=None, field: FieldSpec | None = None) -> SuiteResult:
    res = SuiteResult("corollaries", count)
    t0 = time.perf_counter()
    for i in range(count):
        rng = instance_rng(seed, "corollaries", i)
        fam = corollary_family(rng, n, l, field)
        text = dumps(fam)
        base = lisf_matroid(fam)
        rep = check_axioms(base)
        res.record("I1-I2", rep.i1_holds and rep.i2_holds, i, text)
        scaled = scale_family(fam, random_nonzero_scales(fam, rng))
        res.record("scale", lisf_matroid(scaled) == base, i, text)
        t = random_invertible(fam.field, fam.ambient_dim, rng)
        res.record("isomorphism", lisf_matroid(apply_isomorphism(fam, t)) == base, i, text)
        res.record("symmetrize", lisf_matroid(symmetrize(fam)) == base, i, text)
    res.seconds = time.perf_counter() - t0
    return res


def oracle_family(rng: random.Random):
    """Small families: finite-only half the time, otherwise with punctured sets
    over small fields (where random sampling hits dependences quickly)."""
    if rng.random() < 0.5:
        fld = rng.choice((Q, GF(2), GF(3), GF(5)))
        fam = random_mixed_family(rng, rng.randint(1, 4), rng.randint(1, 4), fld, 4, punctured_probability=0)
        return fam, True
    fld = rng.choice((GF(2), GF(3), Q))
    return random_mixed_family(rng, rng.randint(1, 4), rng.randint(1, 3), fld, max_set_size=3), False


def run_oracle(seed=0, count=1000, trials=200) -> SuiteResult:
    """Compare ``is_lisf`` with unpruned exhaustive rank testing and sampling.

    A contradiction is a LISF verdict against a verified dependence, or any
    disagreement with an exhaustive enumeration.  Negative verdicts must
    carry a witness that re-verifies.
    """
    res = SuiteResult("oracle", count)
    t0 = time.perf_counter()
    for i in range(count):
        rng = instance_rng(seed, "oracle", i)
        fam, finite_only = oracle_family(rng)
        text = dumps(fam)
        verdict = is_lisf(fam.sets)
        if not verdict.is_lisf:
            res.record("witness", verify_witness(fam.sets, verdict.witness), i, text)
        budget = 10**5 if finite_only else trials
        sampled = is_lisf_sampled(fam.sets, budget, rng.getrandbits(32))
        if sampled.witness is not None:
            res.record("sampled-witness", verify_witness(fam.sets, sampled.witness), i, text)
        if sampled.exhaustive:
            res.record("exhaustive-agree", sampled.is_lisf == verdict.is_lisf, i, text)
        else:
            res.record("sampled-consistent", not (verdict.is_lisf and sampled.dependence_found), i, text)
        rep = check_axioms(lisf_matroid(fam))
        res.record("I1-I2", rep.i1_holds and rep.i2_holds, i, text)
    res.seconds = time.perf_counter() - t0
    return res


def dump_failures(res: SuiteResult, seed, directory) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for index, check, text in res.failures:
        path = os.path.join(directory, f"{res.kind}-seed{seed}-{index}-{check}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        paths.append(path)
    return paths
