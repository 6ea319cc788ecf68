import json
import subprocess
import sys

import pytest

from lisfmat.cli import run
from lisfmat.constructions import example3_family, random_theorem3_instance
from lisfmat.exactalg import Q
from lisfmat.instance import dump
from lisfmat.setfamily import SetFamily, finite


@pytest.fixture
def ex3_file(tmp_path):
    path = tmp_path / "ex3.json"
    dump(path, example3_family())
    return str(path)


def write_family(tmp_path, name, fam):
    path = tmp_path / name
    dump(path, fam)
    return str(path)


def without_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


class TestCheckLisf:
    def test_shared_vector(self, tmp_path):
        f = example3_family()
        path = write_family(tmp_path, "e12.json", SetFamily(Q, 3, f.sets[:2]))
        code, text, report = run(["check-lisf", path, "--sampled", "100", "1"])
        assert code == 0
        assert "verdict: NOT LISF" in text
        assert "  set 1: (1, 1, 0) * 1\n  set 2: (1, 1, 0) * -1" in text
        assert report["witnesses"][0] == {"selection": [["1", "1", "0"], ["1", "1", "0"]], "coefficients": ["1", "-1"]}
        assert "-- AGREE" in text

    def test_single_set(self, tmp_path):
        path = write_family(tmp_path, "one.json", SetFamily(Q, 2, (finite(Q, (1, 0)),)))
        code, text, report = run(["check-lisf", path])
        assert code == 0 and "verdict: LISF" in text and report["witnesses"] == []

    def test_zero_denominator(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"field": "Q", "ambient_dim": 2, "sets": [{"finite": [["1/0", "1"]]}]}')
        code, text, report = run(["check-lisf", str(path)])
        assert code == 2
        assert "sets[0].finite[0][0]" in text
        assert report["error"]["kind"] == "ParseError"

    def test_missing_file(self, tmp_path):
        code, _, _ = run(["check-lisf", str(tmp_path / "nope.json")])
        assert code == 2

    def test_budget(self, tmp_path):
        big = finite(Q, *[(1, k, k * k, k**3) for k in range(1, 6)])
        path = write_family(tmp_path, "big.json", SetFamily(Q, 4, (big, big, big)))
        code, text, report = run(["check-lisf", path, "--budget", "10"])
        assert code == 3
        assert "offending subset {1,2,3}" in text
        assert report["error"]["labels"] == [1, 2, 3]


class TestBuildMatroid:
    def test_example3(self, ex3_file):
        code, text, report = run(["build-matroid", ex3_file, "--verify-axioms", "--summary"])
        assert code == 0
        assert "family: {∅, {1}, {2}, {3}, {1,3}}" in text
        assert "axioms: I.1 OK, I.2 OK, I.3 VIOLATED witness ({2},{1,3})" in text
        assert "MATROID: no" in text
        assert report["families"]["independent_sets"] == [[], [1], [2], [3], [1, 3]]
        assert report["verdicts"]["axioms"]["I3_witness"] == [[2], [1, 3]]

    def test_oracle_equal(self, tmp_path):
        path = write_family(tmp_path, "t3.json", random_theorem3_instance(3, 5, 3))
        code, text, _ = run(["build-matroid", path, "--oracle", "--verify-axioms"])
        assert code == 0 and "ORACLE: EQUAL" in text and "MATROID: yes" in text

    def test_identity_family(self, tmp_path):
        fam = SetFamily(Q, 3, tuple(finite(Q, c) for c in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        code, text, _ = run(["build-matroid", write_family(tmp_path, "id.json", fam), "--verify-axioms"])
        assert code == 0 and "MATROID: yes" in text

    def test_oracle_hypotheses(self, ex3_file):
        code, text, report = run(["build-matroid", ex3_file, "--oracle"])
        assert code == 4
        assert report["error"]["kind"] == "HypothesesNotMet"


class TestExample:
    @pytest.mark.parametrize("name", ["ex2", "ex3"])
    def test_golden(self, name, tmp_path):
        out = tmp_path / f"{name}.json"
        code, text, report = run(["example", name, "--emit-instance", str(out)])
        assert code == 0
        assert "family: {∅, {1}, {2}, {3}, {1,3}}" in text
        assert "I.3 VIOLATED witness ({2},{1,3})" in text
        assert "-- FAIL" not in text
        assert report["verdicts"]["sample_checks_pass"]
        assert out.read_text() in text.replace("instance:\n", "", 1)

    def test_ex2_disk_lines(self):
        _, text, _ = run(["example", "ex2"])
        assert "E2 (1/2, 1/2): (x-1)^2+y^2 = 1/2 <= 1, point != 0 -- OK" in text

    def test_byte_stable(self):
        assert run(["example", "ex3"])[1] == run(["example", "ex3"])[1]

    def test_unknown_name(self):
        with pytest.raises(SystemExit) as exc:
            run(["example", "ex9"])
        assert exc.value.code == 2


class TestRandomSuite:
    def test_t3(self, tmp_path):
        rep_path = tmp_path / "r.json"
        code, text, _ = run(["random-suite", "t3", "--count", "50", "--seed", "42", "--emit-report", str(rep_path)])
        assert code == 0
        assert "50/50 matroid, 50/50 oracle-equal" in text
        assert json.loads(rep_path.read_text())["verdicts"]["suite"]["all_passed"]

    def test_t4_n1(self):
        code, _, report = run(["random-suite", "t4", "--n", "1"])
        assert code == 2 and report["error"]["kind"] == "ParamError"

    def test_t4_params(self):
        assert run(["random-suite", "t4", "--k", "3", "--dim-n", "2", "--l", "5"])[0] == 2
        assert run(["random-suite", "t4", "--field", "GF(3)"])[0] == 2
        code, text, _ = run(["random-suite", "t4", "--count", "10", "--k", "2", "--dim-n", "2", "--m", "3", "--l", "4"])
        assert code == 0 and "10/10 matroid" in text

    def test_corollaries_and_oracle(self):
        code, text, _ = run(["random-suite", "corollaries", "--count", "30"])
        assert code == 0 and "30/30 scale, 30/30 isomorphism, 30/30 symmetrize" in text
        assert run(["random-suite", "oracle", "--count", "30"])[0] == 0

    def test_bad_field(self):
        assert run(["random-suite", "t3", "--field", "GF(6)"])[0] == 2

    def test_report_deterministic(self):
        argv = ["random-suite", "corollaries", "--count", "20", "--seed", "7"]
        assert without_timing(run(argv)[2]) == without_timing(run(argv)[2])


class TestGreedy:
    def test_disagree(self, ex3_file):
        code, text, report = run(["greedy", ex3_file, "--weights", "3,5,3"])
        assert code == 0
        assert "greedy: {2} total 5" in text and "exhaustive: {1,3} total 6" in text
        assert text.rstrip().endswith("DISAGREE") and report["verdicts"]["agree"] is False

    def test_zero_weights(self, ex3_file):
        code, text, _ = run(["greedy", ex3_file, "--weights", "0,0,0"])
        assert code == 0 and "total 0" in text and text.rstrip().endswith("AGREE")

    def test_free_family(self, tmp_path):
        fam = SetFamily(Q, 2, (finite(Q, (1, 0)), finite(Q, (0, 1))))
        code, text, _ = run(["greedy", write_family(tmp_path, "free.json", fam), "--weights", "1/2,2"])
        assert code == 0 and "\nAGREE" in text

    def test_weight_count(self, ex3_file):
        assert run(["greedy", ex3_file, "--weights", "1,2"])[0] == 2
        assert run(["greedy", ex3_file, "--weights", "1,-2,3"])[0] == 2


def test_module_entry_point(ex3_file):
    proc = subprocess.run(
        [sys.executable, "-m", "lisfmat", "build-matroid", ex3_file, "--oracle"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 4
    assert "hypotheses not met" in proc.stderr
