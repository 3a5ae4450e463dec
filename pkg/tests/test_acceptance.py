"""End-to-end acceptance checks, one test per criterion.

The default corpus is run twice through the command line in a subprocess;
most criteria are read off the first report, the byte comparison of the
two reports gives the determinism check.
"""

import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from wsmgroups.characters import character_table, nonvanishing_elements
from wsmgroups.corpus import agl1, alt, sym
from wsmgroups.lattice import ChainPosition, SubgroupLattice
from wsmgroups.perm import Permutation
from wsmgroups.verify import build_nonsolvable_counterexample, is_wsm, verify_theorem_C

GOLDEN = Path(__file__).parent / "golden"
SWEEP_LIMIT = 600.0  # seconds, single process


def record(n: int, ok: bool, what: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def runs(tmp_path_factory):
    d = tmp_path_factory.mktemp("acceptance")
    out = []
    for k in (1, 2):
        path = d / f"report{k}.json"
        t = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "wsmgroups", "run", "--jobs", "1", "--out", str(path)],
            capture_output=True, text=True,
        )
        out.append({"code": proc.returncode, "stderr": proc.stderr, "seconds": time.perf_counter() - t,
                    "bytes": path.read_bytes() if path.exists() else b""})
    return out


@pytest.fixture(scope="module")
def report(runs):
    return json.loads(runs[0]["bytes"])


def verdicts(report, theorem):
    for g in report["groups"]:
        for v in g["verdicts"]:
            if v["theorem"] == theorem:
                yield g, v


def count(report, theorem, verdict):
    return sum(1 for _, v in verdicts(report, theorem) if v["verdict"] == verdict)


def test_criterion_1_s4_paradigm():
    t = time.perf_counter()
    G = sym(4)
    L = SubgroupLattice(G)
    h = L.find(G.subgroup([Permutation.parse("(1,2)", 4)]))
    pos = L.classify_chain_position(h)
    members = L.max_over(h)
    bad = [m for m in members if not L.is_maximal_in(h, m)]
    secs = time.perf_counter() - t
    ok = pos == ChainPosition.WEAK_SECOND_MAXIMAL_ONLY and len(members) == 3 and len(bad) == 1 and secs < 1
    record(1, ok, f"<(1,2)> in S4 is {pos.value}, |Max| = {len(members)}, bad = {len(bad)}, {secs:.3f}s")


def test_criterion_2_theorem_B_sweep(runs, report):
    fails = count(report, "B", "fail")
    passes = count(report, "B", "pass")
    solvable_skips = [g["name"] for g, v in verdicts(report, "B")
                      if v["verdict"] == "skipped" and "solvable" not in v.get("reason", "")]
    secs = runs[0]["seconds"]
    ok = runs[0]["code"] == 0 and fails == 0 and not solvable_skips and secs < SWEEP_LIMIT
    record(2, ok, f"{passes} solvable groups, {fails} failures, full run {secs:.0f}s (limit {SWEEP_LIMIT:.0f}s)")


def test_criterion_3_key_lemma(report):
    fails = count(report, "key_lemma", "fail")
    skipped = count(report, "key_lemma", "skipped")
    checked = {g["name"] for g, v in verdicts(report, "key_lemma") if v["verdict"] == "pass"}
    triples = sum(v["details"]["triples"] for _, v in verdicts(report, "key_lemma") if v["verdict"] == "pass")
    ok = fails == 0 and skipped == 0 and {"A5", "S5"} <= checked
    record(3, ok, f"{len(checked)} groups incl. A5 and S5, {triples} triples, {fails} failures")


def test_criterion_4_theorem_C(report):
    fails = count(report, "C", "fail")
    sides = {g["name"]: (v["details"]["wsm"], v["details"]["chief_factors_strongly_irreducible"])
             for g, v in verdicts(report, "C") if v["verdict"] == "pass"}
    s4 = verify_theorem_C(sym(4)).details
    agl = verify_theorem_C(agl1(9)).details
    direct = ((s4["wsm"], s4["chief_factors_strongly_irreducible"]),
              (agl["wsm"], agl["chief_factors_strongly_irreducible"]))
    ok = (fails == 0 and sides.get("S4") == (False, False) and sides.get("AGL(1,9)") == (True, True)
          and direct == ((False, False), (True, True)))
    record(4, ok, f"{len(sides)} solvable groups agree, S4 {sides.get('S4')}, AGL(1,9) {sides.get('AGL(1,9)')}")


def test_criterion_5_theorem_A(report):
    fails = count(report, "A", "fail")
    passes = count(report, "A", "pass")
    T = character_table(sym(3))
    nv = {str(g) for g in nonvanishing_elements(T)}
    a3 = {str(g) for g in alt(3).elements()}
    ok = fails == 0 and passes > 0 and nv == a3
    record(5, ok, f"{passes} solvable WSM groups, {fails} failures, S3 non-vanishing = A3: {nv == a3}")


def test_criterion_6_supersolvable_remark(report):
    L = SubgroupLattice(agl1(9))
    ss, wsm = L.is_supersolvable(), is_wsm(L)
    corpus = next(r for r in report["corpus"] if r["theorem"] == "remark_supersolvable")
    per_group_fails = count(report, "remark_supersolvable", "fail")
    ok = not ss and wsm and corpus["verdict"] == "pass" and per_group_fails == 0
    record(6, ok, f"AGL(1,9) supersolvable={ss} wsm={wsm}; "
                  f"{corpus['details']['supersolvable']} supersolvable groups all WSM")


def test_criterion_7_nonsolvable_counterexample():
    t = time.perf_counter()
    r = build_nonsolvable_counterexample(7)
    secs = time.perf_counter() - t
    c = r.details
    five = [
        c["M_maximal_in_G"],
        c["X1_maximal_in_G"] and c["X2_maximal_in_G"],
        c["H_maximal_in_M"] and c["index_M_H"] == 7,
        c["H_lt_BxB_lt_X1"] and c["H_lt_BxB_lt_X2"],
        c["X1_ne_X2"] and c["bad_members"] == 2,
    ]
    ok = r.verdict == "pass" and all(five) and secs < 600
    record(7, ok, f"A7xA7: {sum(five)}/5 structural checks, {secs:.1f}s")


def test_criterion_8_character_tables(report):
    fails = count(report, "character_table", "fail")
    checked = count(report, "character_table", "pass")
    golden_ok = True
    for name, G in (("S3", sym(3)), ("S4", sym(4))):
        gold = json.loads((GOLDEN / f"{name}.json").read_text())
        golden_ok &= sorted(character_table(G).degrees) == sorted(gold["degrees"])
    ok = fails == 0 and checked == len(report["groups"]) and golden_ok
    record(8, ok, f"{checked} tables orthogonal, golden S3/S4 degrees match: {golden_ok}")


def test_criterion_9_module_lemmas(report):
    fails = {th: count(report, th, "fail") for th in ("lemma_3_1", "lemma_4_1", "lemma_4_3")}
    modules = sum(v["details"]["modules"] for _, v in verdicts(report, "lemma_4_3") if v["verdict"] == "pass")
    exhibit = next(r for r in report["corpus"] if r["theorem"] == "lemma_4_1")
    produced = exhibit["details"]["quasi_primitive_not_strongly_irreducible"] == ["S3 on GF(2)^2"]
    ok = not any(fails.values()) and exhibit["verdict"] == "pass" and produced and modules > 0
    record(9, ok, f"{modules} chief-factor modules, failures {fails}, S3 on GF(2)^2 exhibit: {produced}")


def test_criterion_10_determinism(runs):
    a, b = runs[0]["bytes"], runs[1]["bytes"]
    ok = bool(a) and a == b and runs[1]["code"] == 0
    record(10, ok, f"two runs, {len(a)} bytes each, identical: {a == b}")
