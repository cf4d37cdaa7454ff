"""End-to-end acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are printed
even when output capture is on.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter

import pytest
from click.testing import CliRunner

from conftest import ORBIT_KEYS
from liecert.cli import main, render_json, report_body
from liecert.liealg import _build_cached, is_nilpotent_element, random_element, simple_lie_algebra
from liecert.mvpoly import MultiPoly, maximal_minors, origin_only, two_var_gcd_oracle
from liecert.propp import P_HOLDS, SURJECTIVE_ALL, build_param_matrix, check_matrix, lambda_tensor
from liecert.ratmat import rank
from liecert.sl2 import verify_triple

# (dim g^e, dim z, centre weights, m_r), transcribed from the published tables
GOLDEN = {
    "E6-1": (8, 5, [2, 8, 10, 14, 16], 16),
    "E6-2": (12, 4, [2, 8, 10, 10], 10),
    "E7-1": (9, 6, [2, 10, 14, 18, 22, 26], 26),
    "E7-2": (11, 5, [2, 10, 14, 18, 22], 22),
    "E7-3": (13, 5, [2, 10, 14, 16, 18], 18),
    "E7-4": (17, 3, [2, 10, 14], 14),
    "E7-5": (21, 4, [2, 10, 10, 10], 10),
    "E8-1": (10, 7, [2, 14, 22, 26, 34, 38, 46], 46),
    "E8-2": (12, 6, [2, 14, 22, 26, 34, 38], 38),
    "E8-3": (14, 6, [2, 14, 22, 26, 28, 34], 34),
    "E8-4": (16, 5, [2, 14, 22, 26, 28], 28),
    "E8-5": (18, 4, [2, 14, 22, 26], 26),
    "E8-6": (20, 4, [2, 14, 22, 22], 22),
    "E8-7": (22, 5, [2, 14, 18, 18, 22], 22),
    "E8-8": (24, 4, [2, 14, 18, 18], 18),
    "E8-9": (28, 3, [2, 14, 16], 16),
    "E8-10": (40, 5, [2, 10, 10, 10, 10], 10),
    "F4-1": (6, 3, [2, 10, 14], 14),
    "F4-2": (8, 3, [2, 10, 10], 10),
    "F4-3": (12, 3, [2, 6, 6], 6),
}

CHECK_COUNTS = {
    "E6": [3, 2],
    "E7": [4, 3, 3, 1, 1],
    "E8": [5, 4, 4, 3, 2, 2, 2, 2, 1, 1],
    "F4": [1, 1, 1],
}

# (rows, cols, parameters) of every multi-parameter check
PARAMETRIC = {
    "E6-2": [(2, 3, 2)],
    "E7-5": [(3, 6, 3)],
    "E8-6": [(2, 3, 2)],
    "E8-7": [(1, 2, 2)],
    "E8-8": [(2, 3, 2)],
    "E8-10": [(4, 10, 4)],
    "F4-2": [(2, 3, 2)],
    "F4-3": [(2, 6, 2)],
}

ALGEBRAS = {"E6": (78, 36), "E7": (133, 63), "E8": (248, 120), "F4": (52, 24)}


def announce(capsys, number, title, problems):
    status = "PASS" if not problems else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] criterion {number}: {title}")
        for p in problems[:10]:
            print(f"    {p}")
    assert not problems, problems


@pytest.fixture(scope="module")
def full_report(tmp_path_factory):
    out = tmp_path_factory.mktemp("report") / "report.json"
    start = time.perf_counter()
    res = CliRunner().invoke(main, ["verify", "--out", str(out)])
    elapsed = time.perf_counter() - start
    return res.exit_code, json.loads(out.read_text()), elapsed


def all_matrices(runs, key, which=0):
    L = runs.algebra(key)
    d = runs.data(key, which)
    lam = lambda_tensor(L, d.triple.f, d.basis)
    return [build_param_matrix(d.basis, lam, l)[0] for l in range(2, len(d.basis.centre_profile) + 1)]


def test_criterion_1_algebra_construction(capsys):
    problems = []
    for name, (dim, n_pos) in ALGEBRAS.items():
        start = time.perf_counter()
        L = _build_cached.__wrapped__(name[0], int(name[1]))
        took = time.perf_counter() - start
        if (L.dim, L.n_pos) != (dim, n_pos):
            problems.append(f"{name}: dim {L.dim}, positive roots {L.n_pos}")
        if took >= 60:
            problems.append(f"{name}: build took {took:.1f} s")
    announce(capsys, 1, "dimensions 78/133/248/52, positive roots 36/63/120/24, build < 60 s",
             problems)


def test_criterion_2_golden_invariants(capsys, runs):
    problems = []
    for key in ORBIT_KEYS:
        r = runs.report(key)
        got = (r.dim_centralizer, r.dim_centre, sorted(r.centre_weights), r.m_r)
        if got != GOLDEN[key]:
            problems.append(f"{key}: computed {got}, expected {GOLDEN[key]}")
    announce(capsys, 2, "dim g^e, dim z, centre weights and m_r for all 20 orbits", problems)


def test_criterion_3_matrix_census(capsys, runs):
    problems = []
    for algebra, counts in CHECK_COUNTS.items():
        for ordinal, want in enumerate(counts, 1):
            key = f"{algebra}-{ordinal}"
            checks = runs.report(key).checks
            if len(checks) != want:
                problems.append(f"{key}: {len(checks)} checks, expected {want}")
            shapes = [(m.rows, m.cols, m.num_params) for m in checks if m.num_params >= 2]
            if shapes != PARAMETRIC.get(key, []):
                problems.append(f"{key}: parametric checks {shapes}")
    # the extra E8-8 matrix has constant rows, i.e. a single parameter
    e88 = [(m.rows, m.cols, m.num_params) for m in runs.report("E8-8").checks]
    if (2, 5, 1) not in e88:
        problems.append(f"E8-8: no 2x5 single-parameter check in {e88}")
    announce(capsys, 3, "check counts per orbit and parametric shapes", problems)


def test_criterion_4_full_verification(capsys, full_report):
    code, doc, elapsed = full_report
    problems = []
    if code != 0:
        problems.append(f"exit code {code}")
    verdicts = Counter(o["verdict"] for o in doc["orbits"])
    if verdicts != Counter({P_HOLDS: 20}):
        problems.append(f"verdicts {dict(verdicts)}")
    for o in doc["orbits"]:
        if o.get("expected_diff"):
            problems.append(f"{o['algebra']}-{o['ordinal']}: {o['expected_diff']}")
    if elapsed >= 600:
        problems.append(f"wall time {elapsed:.0f} s")
    announce(capsys, 4, f"full verify exits 0, 20 x P_holds ({elapsed:.1f} s)", problems)


def test_criterion_5_property_suites(capsys, runs):
    problems = []
    rng = random.Random(2024)
    for name in ALGEBRAS:
        L = simple_lie_algebra(name)
        br = L.bracket
        for _ in range(1000):
            a, b, c = (random_element(L, rng) for _ in range(3))
            if br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b)):
                problems.append(f"{name}: Jacobi fails")
                break
    for key in ORBIT_KEYS:
        L = runs.algebra(key)
        d = runs.data(key)
        t = d.triple
        if not verify_triple(L, t):
            problems.append(f"{key}: sl2 relations")
        if not (is_nilpotent_element(L, t.e) and is_nilpotent_element(L, t.f)):
            problems.append(f"{key}: e or f not nilpotent")
        if any(m < 2 or m % 2 for m in d.ge.pieces):
            problems.append(f"{key}: spectrum {sorted(d.ge.pieces)}")
        try:
            lam = lambda_tensor(L, t.f, d.basis, full=True)
        except ArithmeticError as exc:
            problems.append(f"{key}: closure fails ({exc})")
        else:
            if not lam.selection_rule_holds():
                problems.append(f"{key}: selection rule")
        top = max(d.ge.pieces)
        if d.z.pieces.get(top) != d.ge.pieces[top]:
            problems.append(f"{key}: z_max differs from g^e_(m_r)")
    announce(capsys, 5, "Jacobi, sl2 triples, spectrum, selection rule, closure, z_max",
             problems)


def test_criterion_6_groebner_soundness(capsys, runs):
    problems = []
    rng = random.Random(6)
    two_param = 0
    for key in ORBIT_KEYS:
        for m in all_matrices(runs, key):
            if m.zero_case or m.num_params < 2:
                continue
            verdict = check_matrix(m).verdict
            minors = maximal_minors(m)
            if m.num_params == 2:
                two_param += 1
                if origin_only(minors) != two_var_gcd_oracle(minors):
                    problems.append(f"{key}: Groebner and gcd disagree on {m.rows}x{m.cols}")
            if verdict == SURJECTIVE_ALL:
                for _ in range(100):
                    alpha = [rng.randint(-30, 30) for _ in range(m.num_params)]
                    if not any(alpha):
                        alpha[0] = 1
                    if rank(m.specialize(alpha)) != m.rows:
                        problems.append(f"{key}: rank drops at {alpha}")
                        break
    a, b = MultiPoly.var(0, 2), MultiPoly.var(1, 2)
    if origin_only([a * a - b * b]):
        problems.append("a^2 - b^2 reported origin-only")
    if two_param == 0:
        problems.append("no two-parameter instances found")
    announce(capsys, 6, f"origin_only vs gcd on {two_param} two-parameter instances, "
                        "random specializations, a^2 - b^2", problems)


def test_criterion_7_second_candidate(capsys, runs):
    problems = []
    for key in ORBIT_KEYS:
        first, second = runs.report(key, 0), runs.report(key, 1)

        def summary(r):
            return (r.dim_centralizer, r.dim_centre, sorted(r.centre_weights), r.m_r,
                    [(m.l, m.m_i, m.m_k, m.rows, m.cols, m.num_params, m.verdict)
                     for m in r.matrices], r.verdict)

        if summary(first) != summary(second):
            problems.append(f"{key}: {summary(first)} vs {summary(second)}")
    announce(capsys, 7, "second e-candidate gives identical invariants and verdicts", problems)


def test_criterion_8_determinism(capsys, full_report, tmp_path):
    _, first, _ = full_report
    out = tmp_path / "again.json"
    CliRunner().invoke(main, ["verify", "--out", str(out)])
    second = json.loads(out.read_text())
    a, b = render_json(report_body(first)), render_json(report_body(second))
    problems = [] if a == b else ["report bodies differ"]
    announce(capsys, 8, "two full runs give byte-identical report bodies", problems)
