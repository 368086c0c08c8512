"""Acceptance battery: each test is one exit criterion, printing a single
pass/fail line with its measured runtime against the stated budget.

The instance set is the three shipped problem files plus fifty seeded
random instances (p in {2, 3, 5}, |P| <= 128, |L| <= 64).  Everything is
exact: equalities of integers, vectors over the finite field, and roots of
unity; there are no tolerances anywhere.
"""

import io
import json
import pathlib
import sys
import time

from instances import golden_instances, sample_instances

from twistalg.cli import main as cli_main
from twistalg.errors import MultiplicativityFails
from twistalg.frobenius import build_twist_isomorphism, solve_tau
from twistalg.linalg import mat_is_invertible_mod
from twistalg.oracle import independent_dimension_count
from twistalg.pipeline import (
    build_from_problem,
    class2_checks,
    frobenius_checks,
    inject_fault,
    presentation_checks,
)
from twistalg.quiver import presentation_dimension

ROOT = pathlib.Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"

_STATE: dict = {}


def _battery():
    if "builds" not in _STATE:
        t0 = time.perf_counter()
        shipped = {
            name: build_from_problem(pf)
            for name, pf in golden_instances().items()
            if name in ("s3", "quantum_plane", "c2_4_by_c3_2")
        }
        sampled = [build_from_problem(pf) for pf in sample_instances(50)]
        _STATE["build_time"] = time.perf_counter() - t0
        _STATE["builds"] = list(shipped.values()) + sampled
        _STATE["shipped"] = shipped
    return _STATE["builds"], _STATE["shipped"], _STATE["build_time"]


def _report(name, passed, elapsed, budget, detail=""):
    mark = "PASS" if passed else "FAIL"
    extra = f" {detail}" if detail else ""
    print(f"[{mark}] {name}: {elapsed:.2f}s (budget {budget}s){extra}")
    assert passed, f"{name} failed{extra}"
    assert elapsed < budget, f"{name} exceeded its {budget}s budget: {elapsed:.2f}s"


def test_criterion_1_dimension_formulas():
    builds, _, build_time = _battery()
    t0 = time.perf_counter()
    ok = True
    for b in builds:
        vertices = len(b.fam)
        if len(b.basic_basis) != vertices * b.P.order:
            ok = False
        if len(b.basic_basis) * b.mat.dimension != b.algebra.dim:
            ok = False
        if b.algebra.dim != b.P.order * b.L.order:
            ok = False
    elapsed = build_time + time.perf_counter() - t0
    _report(
        "criterion 1 (dimension formulas on 53 instances)", ok, elapsed, 10.0,
        f"builds {build_time:.2f}s",
    )


def test_criterion_2_relations_and_three_way_dimensions():
    builds, _, _ = _battery()
    t0 = time.perf_counter()
    ok = True
    detail = ""
    for b in builds:
        checks = presentation_checks(b)
        if not all(c.passed for c in checks):
            ok, detail = False, str([c.name for c in checks if not c.passed])
            break
        count = independent_dimension_count(b.Q, b.spec)
        if not (count == presentation_dimension(b.Q) == len(b.basic_basis)):
            ok, detail = False, f"three-way disagreement: {count}"
            break
    elapsed = time.perf_counter() - t0
    _report("criterion 2 (relations + three-way dimensions)", ok, elapsed, 30.0, detail)


def test_criterion_3_class2_character_theory():
    builds, _, _ = _battery()
    t0 = time.perf_counter()
    ok = True
    detail = ""
    for b in builds:
        checks = class2_checks(b, full=True)
        if not all(c.passed for c in checks):
            ok, detail = False, str([c.name for c in checks if not c.passed])
            break
    elapsed = time.perf_counter() - t0
    _report("criterion 3 (induced character theory)", ok, elapsed, 5.0, detail)


def test_criterion_4_frobenius_twist_isomorphism():
    builds, _, _ = _battery()
    t0 = time.perf_counter()
    ok = True
    detail = ""
    for b in builds:
        taus = solve_tau(b.P, b.act)
        if not all(
            mat_is_invertible_mod(t, b.P.p, n)
            for t, (n, _) in zip(taus, b.P.components)
        ):
            ok, detail = False, "non-invertible intertwiner"
            break
        checks, witness = frobenius_checks(b)
        if witness is None or not all(c.passed for c in checks):
            ok, detail = False, str([c.name for c in checks if not c.passed])
            break
    elapsed = time.perf_counter() - t0
    _report("criterion 4 (second Frobenius twist isomorphism)", ok, elapsed, 60.0, detail)


def _run_cli(args):
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        code = cli_main(args)
    finally:
        sys.stdout = old
    return code, buf.getvalue()


def test_criterion_5_golden_instances(tmp_path):
    _, shipped, _ = _battery()
    t0 = time.perf_counter()
    ok = True
    details = []

    s3 = shipped["s3"].Q
    if not (s3.num_vertices == 2 and len(s3.arrows) == 2 and len(shipped["s3"].basic_basis) == 6):
        ok = False
        details.append("s3 shape")
    qp = shipped["quantum_plane"]
    q_vals = [q for _, _, _, q in qp.Q.commutations]
    if not (
        qp.Q.num_vertices == 1
        and qp.Q.num_arrow_types == 2
        and len(q_vals) == 1
        and q_vals[0].order == 4
        and all(n == 5 for _, _, n in qp.Q.powers)
        and len(qp.basic_basis) == 25
        and qp.mat.dimension == 16
        and qp.algebra.dim == 400
    ):
        ok = False
        details.append("quantum plane shape")
    c2 = shipped["c2_4_by_c3_2"]
    if not (
        c2.Q.num_vertices == 1
        and c2.Q.num_arrow_types == 4
        and len(c2.Q.commutations) == 6
        and all(n == 2 for _, _, n in c2.Q.powers)
        and len(c2.basic_basis) == 16
    ):
        ok = False
        details.append("c2_4 shape")

    for name in ("s3", "quantum_plane", "c2_4_by_c3_2"):
        outs = []
        for run in range(2):
            jpath = tmp_path / f"{name}_{run}.json"
            code, out = _run_cli(
                ["present", str(PROBLEMS / f"{name}.toml"), "--json", str(jpath)]
            )
            if code != 0:
                ok = False
                details.append(f"{name} exit {code}")
            outs.append((out, jpath.read_bytes()))
        if outs[0] != outs[1]:
            ok = False
            details.append(f"{name} nondeterministic")
        if outs[0][0] != (GOLDEN / f"{name}.txt").read_text():
            ok = False
            details.append(f"{name} text drift")
        if outs[0][1] != (GOLDEN / f"{name}.json").read_bytes():
            ok = False
            details.append(f"{name} json drift")
    elapsed = time.perf_counter() - t0
    _report("criterion 5 (golden instances, byte-identical reports)", ok, elapsed, 30.0, "; ".join(details))


def test_criterion_6_negative_controls():
    t0 = time.perf_counter()
    ok = True
    details = []
    pf = golden_instances()["quantum_plane"]

    b = inject_fault(build_from_problem(pf), "perturb-q")
    names = {c.name: c.passed for c in presentation_checks(b)}
    if names["relations"]:
        ok = False
        details.append("perturb-q survived")

    b = inject_fault(build_from_problem(pf), "drop-power")
    names = {c.name: c.passed for c in presentation_checks(b)}
    if names["span-dimension"]:
        ok = False
        details.append("drop-power survived")

    pf2 = golden_instances()["c2_4_by_c3_2"]
    b = inject_fault(build_from_problem(pf2), "corrupt-beta")
    try:
        build_twist_isomorphism(b.algebra, b.P, b.act, b.ext, b.taus, b.beta, b.beta_raw)
        ok = False
        details.append("corrupt-beta survived")
    except MultiplicativityFails:
        pass

    # the s3 instance has no quadratic relations, but its scalars can still
    # be perturbed through the power side: drop-power must flip there too
    b = inject_fault(build_from_problem(golden_instances()["s3"]), "drop-power")
    names = {c.name: c.passed for c in presentation_checks(b)}
    if names["span-dimension"]:
        ok = False
        details.append("s3 drop-power survived")
    elapsed = time.perf_counter() - t0
    _report("criterion 6 (fault injection flips verdicts)", ok, elapsed, 30.0, "; ".join(details))


def test_criterion_7_verification_field_stated(tmp_path):
    t0 = time.perf_counter()
    jpath = tmp_path / "qp.json"
    code, out = _run_cli(
        ["present", str(PROBLEMS / "quantum_plane.toml"), "--json", str(jpath)]
    )
    data = json.loads(jpath.read_text())
    note = data["field"]["note"]
    ok = (
        code == 0
        and "F_5^1" in note
        and "characteristic-zero" in note
        and "not verified" in note
        and "F_5^1" in out
    )
    elapsed = time.perf_counter() - t0
    _report("criterion 7 (verification field stated; no lifted-ring claims)", ok, elapsed, 30.0)
