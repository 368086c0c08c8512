"""The quiver presentation of the basic algebra: vertices indexed by the
characters over chi, one arrow per eigenvector per vertex, quadratic
commutation relations with exact root-of-unity scalars, and nilpotency
relations of length p^n_i.  Verification multiplies everything out in the
cut algebra and counts dimensions three independent ways.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbCharacter
from .algebras import EigenBasisW, MatSubalgebra, StructAlgebra
from .errors import (
    CommutationFails,
    DimensionMismatch,
    NoSolution,
    RelationFails,
    SpanDeficient,
    ZNotCentral,
)
from .extension import ExtGroup, PhiFamily, rho
from .linalg import VectorSpan, digits_to_dict
from .scalars import RootScalar, zeta_embed


@dataclass(frozen=True)
class QuiverPresentation:
    """Vertices [phi], arrows (i, phi) from [phi] to [phi psi_i], q-scaled
    commutation relations for i < j, and power relations of length p^(n_i).
    """

    p: int
    num_vertices: int
    num_arrow_types: int
    exponents: tuple[int, ...]  # n_i per arrow type
    arrows: tuple[tuple[int, int, int], ...]  # (i, source vertex, target vertex)
    commutations: tuple[tuple[int, int, int, RootScalar], ...]  # (i, j, vertex, q)
    powers: tuple[tuple[int, int, int], ...]  # (i, vertex, length)

    def arrow_target(self, i: int, vertex: int) -> int:
        for ai, src, tgt in self.arrows:
            if ai == i and src == vertex:
                return tgt
        raise KeyError((i, vertex))

    def q_value(self, i: int, j: int, vertex: int) -> RootScalar:
        for ai, aj, v, q in self.commutations:
            if (ai, aj, v) == (i, j, vertex):
                return q
        raise KeyError((i, j, vertex))

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "num_vertices": self.num_vertices,
            "num_arrow_types": self.num_arrow_types,
            "exponents": list(self.exponents),
            "arrows": [
                {"i": i, "source": s, "target": t} for i, s, t in self.arrows
            ],
            "commutations": [
                {
                    "i": i,
                    "j": j,
                    "vertex": v,
                    "q": {"order": q.order, "exponent": q.exponent},
                }
                for i, j, v, q in self.commutations
            ],
            "powers": [
                {"i": i, "vertex": v, "length": n} for i, v, n in self.powers
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> QuiverPresentation:
        return QuiverPresentation(
            p=d["p"],
            num_vertices=d["num_vertices"],
            num_arrow_types=d["num_arrow_types"],
            exponents=tuple(d["exponents"]),
            arrows=tuple((a["i"], a["source"], a["target"]) for a in d["arrows"]),
            commutations=tuple(
                (
                    c["i"],
                    c["j"],
                    c["vertex"],
                    RootScalar(c["q"]["order"], c["q"]["exponent"]),
                )
                for c in d["commutations"]
            ),
            powers=tuple((x["i"], x["vertex"], x["length"]) for x in d["powers"]),
        )


@dataclass
class ArrowElement:
    """The algebra element g_{i,phi} w_i e_phi together with its group choice."""

    arrow_type: int
    source: int
    target: int
    g: tuple
    vector: dict


def choose_g(ext: ExtGroup, fam: PhiFamily, psi: AbCharacter, phi_idx: int) -> tuple:
    """Least H-element whose commutator character matches
    xi_{phi psi} xi_phi^(-1) psi^(-1); existence is part of the theory.
    """
    target_idx = fam.translate(phi_idx, psi)
    theta = fam.xis[target_idx] * fam.xis[phi_idx].inverse() * psi.inverse()
    for x in ext.radical():
        assert theta(x).is_one(), "target character must kill Z(H)"
    for h in ext.elements():
        if rho(ext, h) == theta:
            return h
    raise NoSolution("no group element realises the commutator character")


def compute_q(
    ext: ExtGroup,
    fam: PhiFamily,
    g_table: dict,
    i: int,
    j: int,
    phi_idx: int,
    psis: list[AbCharacter],
) -> RootScalar:
    """The exact scalar of the quadratic relation at [phi].

    Stacking the chosen group elements the two ways differs by a central
    mismatch z; pushing z and the w-factors into place contributes the
    target-vertex character at z together with eigencharacter corrections:

        q = (phi psi_i psi_j)(z) * psi_i(g_{j,phi}) * psi_j(g_{i,phi})^(-1).

    The in-algebra relation check is the authority on this value.
    """
    via_i = fam.translate(phi_idx, psis[i])
    via_j = fam.translate(phi_idx, psis[j])
    lhs = ext.mul(g_table[(j, via_i)], g_table[(i, phi_idx)])
    rhs = ext.mul(g_table[(i, via_j)], g_table[(j, phi_idx)])
    z = ext.mul(ext.inv(rhs), lhs)
    if z not in set(fam.center_elements):
        raise ZNotCentral(f"mismatch element {z} is not central")
    target = fam.translate(fam.translate(phi_idx, psis[i]), psis[j])
    q = fam.phis[target][z]
    q = q * psis[i](g_table[(j, phi_idx)][1])
    q = q * psis[j](g_table[(i, phi_idx)][1]).inverse()
    return q


def emit_presentation(
    ext: ExtGroup, fam: PhiFamily, W: EigenBasisW, g_table: dict, p: int
) -> QuiverPresentation:
    r = len(W)
    arrows = []
    for i in range(r):
        for v in range(len(fam)):
            arrows.append((i, v, fam.translate(v, W.psis[i])))
    commutations = []
    for i in range(r):
        for j in range(i + 1, r):
            for v in range(len(fam)):
                commutations.append(
                    (i, j, v, compute_q(ext, fam, g_table, i, j, v, W.psis))
                )
    powers = [
        (i, v, p ** W.exponents[i])
        for i in range(r)
        for v in range(len(fam))
    ]
    return QuiverPresentation(
        p=p,
        num_vertices=len(fam),
        num_arrow_types=r,
        exponents=tuple(W.exponents),
        arrows=tuple(arrows),
        commutations=tuple(commutations),
        powers=tuple(powers),
    )


def build_g_table(ext: ExtGroup, fam: PhiFamily, W: EigenBasisW) -> dict:
    return {
        (i, v): choose_g(ext, fam, W.psis[i], v)
        for i in range(len(W))
        for v in range(len(fam))
    }


def build_arrow_elements(
    algebra: StructAlgebra,
    ext: ExtGroup,
    fam: PhiFamily,
    W: EigenBasisW,
    g_table: dict,
    e_vectors: list[dict],
    kp_labels: list,
    g_vector,
) -> list[ArrowElement]:
    """Materialise a_{i,phi} = g_{i,phi} w_i e_phi in the cut algebra and
    check the source/target idempotent law on each.
    """
    arrows = []
    for i in range(len(W)):
        w_vec = {}
        for k, c in W.vectors[i].items():
            lab = kp_labels[k]
            w_vec[algebra.index[(lab, ext.L.identity())]] = c
        for v in range(len(fam)):
            tgt = fam.translate(v, W.psis[i])
            g = g_table[(i, v)]
            vec = algebra.mul_vec(g_vector(g), algebra.mul_vec(w_vec, e_vectors[v]))
            a = ArrowElement(i, v, tgt, g, vec)
            left = algebra.mul_vec(e_vectors[tgt], vec)
            right = algebra.mul_vec(vec, e_vectors[v])
            if not (algebra.vec_eq(left, vec) and algebra.vec_eq(right, vec)):
                raise RelationFails(f"arrow ({i},{v}) fails the idempotent law")
            arrows.append(a)
    return arrows


def presentation_dimension(Q: QuiverPresentation) -> int:
    """Normal-form monomial count: per vertex, one monomial per exponent
    pattern below the power caps.  Requires a complete set of power
    relations; a missing cap makes the count undefined.
    """
    caps: dict[tuple[int, int], int] = {}
    for i, v, n in Q.powers:
        caps[(i, v)] = n
    total = 0
    for v in range(Q.num_vertices):
        count = 1
        for i in range(Q.num_arrow_types):
            if (i, v) not in caps:
                raise DimensionMismatch(
                    f"no power relation for arrow type {i} at vertex {v}"
                )
            count *= caps[(i, v)]
        total += count
    return total


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _arrow_lookup(arrows: list[ArrowElement]) -> dict:
    return {(a.arrow_type, a.source): a for a in arrows}


def span_of_generated_algebra(
    algebra: StructAlgebra,
    e_vectors: list[dict],
    arrows: list[ArrowElement] | None = None,
) -> list[dict]:
    """Basis of the subalgebra spanned by all words in the idempotents and
    arrows.  With arrows given, only vertex-composable left products are
    formed; the skipped ones vanish against the orthogonal idempotents, so
    the span is unchanged.
    """
    span = VectorSpan(algebra.spec, algebra.dim)
    basis: list[dict] = []
    if arrows is None:
        seeds = list(e_vectors)
        queue = list(seeds)
        while queue:
            v = queue.pop(0)
            if span.add(v):
                basis.append(v)
                for s in seeds:
                    queue.append(algebra.mul_vec(s, v))
        return basis
    by_source: dict[int, list[ArrowElement]] = {}
    for a in arrows:
        by_source.setdefault(a.source, []).append(a)
    queue = [(vec, v) for v, vec in enumerate(e_vectors)]
    while queue:
        vec, left = queue.pop(0)
        if span.add(vec):
            basis.append(vec)
            for a in by_source.get(left, []):
                queue.append((algebra.mul_vec(a.vector, vec), a.target))
    return basis


def verify_in_algebra(
    Q: QuiverPresentation,
    arrows: list[ArrowElement],
    algebra: StructAlgebra,
    e_vectors: list[dict],
    mat: MatSubalgebra | None = None,
    basis: list[dict] | None = None,
) -> list[CheckResult]:
    """The three falsifiable checks: both relation families hold verbatim,
    the generated span has exactly the predicted dimension, and every arrow
    commutes with the matrix subalgebra.
    """
    spec = algebra.spec
    lookup = _arrow_lookup(arrows)
    results = []

    ok, detail = True, ""
    for i, j, v, q in Q.commutations:
        a_i = lookup[(i, v)]
        a_j = lookup[(j, v)]
        lhs = algebra.mul_vec(lookup[(j, a_i.target)].vector, a_i.vector)
        rhs = algebra.vec_scale(
            zeta_embed(spec, q).val,
            algebra.mul_vec(lookup[(i, a_j.target)].vector, a_j.vector),
        )
        if not algebra.vec_eq(lhs, rhs):
            ok, detail = False, f"commutation ({i},{j}) at vertex {v}"
            break
    if ok:
        for i, v, length in Q.powers:
            acc = e_vectors[v]
            vertex = v
            for _ in range(length):
                arrow = lookup[(i, vertex)]
                acc = algebra.mul_vec(arrow.vector, acc)
                vertex = arrow.target
            if acc:
                ok, detail = False, f"power relation ({i}) at vertex {v}"
                break
    results.append(CheckResult("relations", ok, detail))

    try:
        predicted = presentation_dimension(Q)
        if basis is None:
            basis = span_of_generated_algebra(algebra, e_vectors, arrows)
        ok = len(basis) == predicted
        detail = f"span rank {len(basis)} vs normal-form count {predicted}"
    except DimensionMismatch as exc:
        ok, detail = False, str(exc)
    results.append(CheckResult("span-dimension", ok, detail))

    ok, detail = True, ""
    if mat is not None:
        for a in arrows:
            for l, mv in mat.vectors.items():
                if not algebra.vec_eq(
                    algebra.mul_vec(a.vector, mv), algebra.mul_vec(mv, a.vector)
                ):
                    ok, detail = False, f"arrow ({a.arrow_type},{a.source}) vs {l}"
                    break
            if not ok:
                break
    results.append(CheckResult("arrows-commute-with-matrix-part", ok, detail))
    return results


def verify_tensor_decomposition(
    algebra: StructAlgebra, basic_basis: list[dict], mat: MatSubalgebra
) -> list[CheckResult]:
    """Dimension product and spanning check for the product map from the
    basic algebra tensored with the matrix subalgebra onto the cut algebra.
    """
    results = []
    dims_ok = len(basic_basis) * mat.dimension == algebra.dim
    results.append(
        CheckResult(
            "dimension-product",
            dims_ok,
            f"{len(basic_basis)} * {mat.dimension} vs {algebra.dim}",
        )
    )
    if mat.dimension == 1:
        # the matrix part is spanned by the identity: the products are the
        # basic basis itself, whose independence the span construction gave
        spanning_rank = len(basic_basis)
    else:
        span = VectorSpan(algebra.spec, algebra.dim)
        mat_basis = [digits_to_dict(algebra.spec, row) for row in mat.span.rows]
        for a in basic_basis:
            for mvec in mat_basis:
                span.add(algebra.mul_vec(a, mvec))
        spanning_rank = span.rank
    spanning_ok = spanning_rank == algebra.dim
    results.append(
        CheckResult(
            "product-spans",
            spanning_ok,
            f"rank {spanning_rank} of {algebra.dim}",
        )
    )
    return results


def raise_on_failure(checks: list[CheckResult]):
    for c in checks:
        if not c.passed:
            exc = {
                "relations": RelationFails,
                "span-dimension": DimensionMismatch,
                "arrows-commute-with-matrix-part": CommutationFails,
                "dimension-product": DimensionMismatch,
                "product-spans": SpanDeficient,
            }.get(c.name, RelationFails)
            raise exc(f"{c.name}: {c.detail}")
