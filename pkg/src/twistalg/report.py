"""Deterministic report emission: human text, machine JSON, and DOT graphs.

Re-running on the same problem file and seed reproduces the bytes exactly;
scalars are printed as (order, exponent) pairs next to their field
embedding so exactness survives serialisation.
"""

from __future__ import annotations

import json

from .pipeline import Build
from .quiver import CheckResult, QuiverPresentation
from .scalars import RootScalar, zeta_embed


def _root_json(build: Build, z: RootScalar) -> dict:
    return {
        "order": z.order,
        "exponent": z.exponent,
        "field_value": zeta_embed(build.spec, z).val,
    }


def build_report_dict(
    build: Build,
    checks: list[CheckResult],
    frob_summary: dict | None = None,
) -> dict:
    spec = build.spec
    ext = build.ext
    fam = build.fam
    vertices = []
    for v in range(len(fam)):
        vertices.append(
            {
                "index": v,
                "label": f"phi{v}",
                "xi_exponents": list(fam.xis[v].exps),
                "is_phi0": v == fam.phi0_index,
            }
        )
    arrows = [
        {
            "i": i,
            "source": s,
            "target": t,
            "psi_exponents": list(build.W.psis[i].exps),
            "nilpotency_exponent": build.W.exponents[i],
        }
        for i, s, t in build.Q.arrows
    ]
    q_matrix = [
        {"i": i, "j": j, "vertex": v, "q": _root_json(build, q)}
        for i, j, v, q in build.Q.commutations
    ]
    g_choices = [
        {"i": i, "vertex": v, "z": g[0], "x": list(g[1])}
        for (i, v), g in sorted(build.g_table.items())
    ]
    w_vectors = []
    for i, w in enumerate(build.W.vectors):
        terms = sorted(
            (list(build.kp.labels[k]), c) for k, c in w.items()
        )
        w_vectors.append({"i": i, "terms": terms})
    report = {
        "instance": {
            "p": build.P.p,
            "p_group_components": [list(c) for c in build.P.components],
            "l_orders": list(build.L.orders),
            "form": [
                {"i": i, "j": j, "order": t.order, "exponent": t.exponent}
                for i, j, t in build.form.entries
            ],
            "seed": build.seed,
        },
        "field": {
            "p": spec.p,
            "degree": spec.e,
            "modulus": list(spec.modulus),
            "generator": spec.generator,
            "note": (
                f"all checks performed over F_{spec.p}^{spec.e}; "
                "characteristic-zero coefficient rings are not verified"
            ),
        },
        "extension": {
            "order": ext.order,
            "m": ext.m,
            "center_order": len(ext.center()),
            "num_vertices": len(fam),
        },
        "dimensions": {
            "basic_algebra": len(build.basic_basis),
            "matrix_part": build.mat.dimension,
            "cut_algebra": build.algebra.dim,
        },
        "vertices": vertices,
        "arrows": arrows,
        "q_matrix": q_matrix,
        "power_lengths": [
            {"i": i, "vertex": v, "length": n} for i, v, n in build.Q.powers
        ],
        "g_choices": g_choices,
        "w_vectors": w_vectors,
        "presentation": build.Q.to_json_dict(),
        "verdicts": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
        ],
    }
    if frob_summary is not None:
        report["frobenius"] = frob_summary
    return report


def frobenius_summary(build: Build, checks: list[CheckResult]) -> dict:
    beta_table = [
        {
            "l": list(l),
            "order": build.beta[l].order,
            "exponent": build.beta[l].exponent,
        }
        for l in sorted(build.beta)
    ]
    return {
        "tau_matrices": [t.tolist() for t in build.taus],
        "beta": beta_table,
        "beta_nontrivial": sum(1 for b in build.beta.values() if not b.is_one()),
        "coefficient_twist_exponent": build.P.p**2,
        "verdicts": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
        ],
    }


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report: dict) -> str:
    lines = []
    inst = report["instance"]
    lines.append(
        f"instance: p={inst['p']} components={inst['p_group_components']} "
        f"L={inst['l_orders']} seed={inst['seed']}"
    )
    for f in inst["form"]:
        lines.append(
            f"  form t[{f['i'] + 1},{f['j'] + 1}] = zeta({f['order']})^{f['exponent']}"
        )
    fld = report["field"]
    lines.append(
        f"field: F_{fld['p']}^{fld['degree']} modulus={fld['modulus']} "
        f"generator={fld['generator']}"
    )
    lines.append(f"  note: {fld['note']}")
    ex = report["extension"]
    lines.append(
        f"extension: |H|={ex['order']} m={ex['m']} |Z(H)|={ex['center_order']} "
        f"vertices={ex['num_vertices']}"
    )
    dims = report["dimensions"]
    lines.append(
        f"dimensions: basic={dims['basic_algebra']} matrix={dims['matrix_part']} "
        f"cut={dims['cut_algebra']}"
    )
    lines.append("vertices:")
    for v in report["vertices"]:
        star = " (phi0)" if v["is_phi0"] else ""
        lines.append(f"  [{v['label']}] xi_exponents={v['xi_exponents']}{star}")
    lines.append("arrows:")
    for a in report["arrows"]:
        lines.append(
            f"  w{a['i']}: phi{a['source']} -> phi{a['target']} "
            f"psi={a['psi_exponents']} power_length={inst['p']}^{a['nilpotency_exponent']}"
        )
    if report["q_matrix"]:
        lines.append("commutation scalars:")
        for q in report["q_matrix"]:
            qq = q["q"]
            lines.append(
                f"  q[{q['i']},{q['j']};phi{q['vertex']}] = "
                f"zeta({qq['order']})^{qq['exponent']} = {qq['field_value']} in the field"
            )
    lines.append("power relations:")
    for pw in report["power_lengths"]:
        lines.append(f"  (w{pw['i']})^{pw['length']} from phi{pw['vertex']} = 0")
    lines.append("group element choices:")
    for g in report["g_choices"]:
        lines.append(f"  g[{g['i']},phi{g['vertex']}] = (z={g['z']}, x={g['x']})")
    lines.append("eigenbasis vectors (group-basis coordinates):")
    for w in report["w_vectors"]:
        terms = " + ".join(f"{c}*b{tuple(lab)}" for lab, c in w["terms"])
        lines.append(f"  w{w['i']} = {terms}")
    if "frobenius" in report:
        fr = report["frobenius"]
        lines.append("frobenius twist witness:")
        lines.append(f"  tau = {fr['tau_matrices']}")
        lines.append(
            f"  beta nontrivial on {fr['beta_nontrivial']} elements; "
            f"coefficient twist = power {fr['coefficient_twist_exponent']}"
        )
        for c in fr["verdicts"]:
            lines.append(_verdict_line(c))
    lines.append("verdicts:")
    for c in report["verdicts"]:
        lines.append(_verdict_line(c))
    return "\n".join(lines) + "\n"


def _verdict_line(c: dict) -> str:
    mark = "pass" if c["passed"] else "FAIL"
    detail = f" ({c['detail']})" if c["detail"] else ""
    return f"  [{mark}] {c['name']}{detail}"


def render_dot(Q: QuiverPresentation) -> str:
    lines = ["digraph quiver {"]
    for v in range(Q.num_vertices):
        lines.append(f'  phi{v} [label="[phi{v}]"];')
    for i, s, t in Q.arrows:
        lines.append(f'  phi{s} -> phi{t} [label="w_{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
