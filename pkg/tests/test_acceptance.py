"""The twelve acceptance criteria, each at its stated tolerance and time limit.

Every test prints one ``AC<n> PASS|FAIL`` line (visible under ``pytest -v``).
"""

import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from latvoa import verify as V
from latvoa.fusion import count_irreducibles
from latvoa.lattice import make_lattice
from latvoa.fock import LatticeVOA
from latvoa.structures import dmk_virasoro
from latvoa.vertex import central_charge, lattice_mode, schur_words


@pytest.fixture
def report(capsys):
    """Run ``body`` under a time limit, print one verdict line, then assert."""

    def _run(label, limit, body):
        start = time.perf_counter()
        ok, note = False, ""
        try:
            ok, note = body()
        except Exception as e:  # the verdict line is printed before re-raising
            note = f"{type(e).__name__}: {e}"
            raise
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < limit
            verdict = "PASS" if ok and in_time else "FAIL"
            with capsys.disabled():
                print(f"\n{label} {verdict} ({elapsed:.1f}s, limit {limit}s) {note}")
        assert ok, note
        assert in_time, f"{label} took {elapsed:.1f}s, limit {limit}s"

    return _run


def test_ac01_central_charge_table(report):
    cases = [(1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]

    def body():
        worst = 0.0
        bad = []
        for m, k in cases:
            t = time.perf_counter()
            c = central_charge(dmk_virasoro(m, k))
            worst = max(worst, time.perf_counter() - t)
            if c != Fraction(3 * m, m + 2):
                bad.append((m, k, str(c)))
        return not bad and worst < 10, f"cases={len(cases)} slowest={worst:.2f}s bad={bad}"

    report("AC1", 6 * 10, body)


def test_ac02_virasoro_bracket(report):
    def body():
        a = V.verify_standard_virasoro(2, cutoff=4)
        b = V.verify_virasoro(2, 2, cutoff=4)
        ok = a.passed and b.passed and a.details["central_charge"] == "2" and b.details["central_charge"] == "3/2"
        return ok, f"A12 checks={a.details['bracket_checks']} omega22 checks={b.details['bracket_checks']}"

    report("AC2", 120, body)


def test_ac03_oracle_equivalence(report):
    def body():
        rep = V.verify_oracle(seed=0, count=200)
        return rep.passed and rep.details["nonzero_results"] > 100, f"nonzero={rep.details['nonzero_results']}"

    report("AC3", 300, body)


def test_ac04_truncation_law(report):
    def body():
        rep = V.verify_truncation(coord_range=2)
        sp = LatticeVOA(make_lattice([[2]]))
        half = Fraction(1, 2)
        p2 = schur_words(sp, (1,), 2) == {((0, 1), (0, 1)): half, ((0, 2),): half}
        # p_0 and p_1 read off directly on e_a, e_-a
        p0 = lattice_mode((1,), 1, sp.exp((-1,))) == sp.cocycle((1,), (-1,)) * sp.vacuum()
        p1 = lattice_mode((1,), 0, sp.exp((-1,))) == sp.cocycle((1,), (-1,)) * sp.h((1,))
        return rep.passed and p0 and p1 and p2, f"checked={rep.details['checked']}"

    report("AC4", 300, body)


def test_ac05_sl2(report):
    def body():
        reps = [V.verify_sl2(m) for m in (1, 2, 3)]
        return all(r.passed for r in reps), f"identities={len(reps[0].details['identities'])} per m"

    report("AC5", 60, body)


def test_ac06_relations(report):
    def body():
        reps = [V.verify_relations_lemma(m, 1) for m in (1, 2)]
        signs = [r.details["signs"] for r in reps]
        ok = all(r.passed for r in reps) and all(len(s) == 8 for s in signs)
        return ok, f"signs={signs}"

    report("AC6", 300, body)


def test_ac07_reg_sub(report):
    def body():
        reps = [V.verify_regsub(*t) for t in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)]]
        cs = [r.details["C"] for r in reps]
        return all(r.passed for r in reps) and "0" not in cs, f"C={cs}"

    report("AC7", 300, body)


def test_ac08_character_isomorphisms(report):
    def body():
        reps = [V.verify_character_isos("D1k", cutoff=3, k=1), V.verify_character_isos("D1k", cutoff=3, k=2),
                V.verify_character_isos("Dm0", cutoff=3, m=2)]
        return all(r.passed for r in reps), "D11~F3, D12~F4, D20~L(2,0) to weight 3"

    report("AC8", 600, body)


def test_ac09_isom1(report):
    def body():
        rep = V.verify_isom1(1, 1, cutoff=3, charge_bound=3)
        w = rep.details["window"]
        ok = rep.passed and w == {"weight_min": "-3", "weight_max": "3", "charge_bound": 3}
        return ok, f"method={rep.details.get('character_method')}"

    report("AC9", 900, body)


def test_ac10_counting(report):
    def body():
        ok = count_irreducibles(2, 2) == 9 and count_irreducibles(1, 1) == 3
        ok = ok and all(count_irreducibles(m, 0) == m + 1 for m in range(1, 20))
        rep = V.verify_counts(2, 2)
        return ok and rep.passed, "fusion rings commutative and associative for m<=3, |n|<=6"

    report("AC10", 10, body)


def test_ac11_grading(report):
    def body():
        reps = [V.verify_grading(m, k) for m, k in [(1, 1), (2, 1), (2, 2)]]
        return all(r.passed for r in reps), f"weights={[r.details['weight'] for r in reps]}"

    report("AC11", 60, body)


def _cli(args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "latvoa", *args], capture_output=True, env=env, check=False).stdout


def test_ac12_determinism(report):
    runs = [
        ["verify", "oracle", "--seed", "7", "--count", "50"],
        ["verify", "cocycle", "--seed", "7"],
        ["verify", "relations", "--m", "2", "--n", "1"],
        ["verify", "characters", "--case", "Dm0", "--m", "2"],
        ["verify", "isom1", "--m", "1", "--n", "1"],
        ["character", "dmk", "--m", "2", "--k", "1", "--cutoff", "3"],
    ]

    def body():
        diffs = [r[1] for r in runs if _cli(r, 1) != _cli(r, 12345) or not _cli(r, 1)]
        same = V.emit_report(V.verify_oracle(seed=3, count=40)) == V.emit_report(V.verify_oracle(seed=3, count=40))
        return not diffs and same, f"argvs={len(runs)} differing={diffs}"

    report("AC12", 600, body)
