"""Brute-force verification layer: centers, radicals, Wedderburn numerology,
and an independent dimension count for quiver presentations.

Everything here works from raw structure constants and vector lists; it
shares only field arithmetic and generic linear algebra with the
construction side, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .algebras import StructAlgebra
from .errors import NonTerminating
from .linalg import VectorSpan, digits_to_dict, nullspace_over_field, rank_mod_p
from .quiver import QuiverPresentation
from .scalars import FieldSpec, zeta_embed


@dataclass
class OracleReport:
    """One independent check: what was validated, expected vs computed."""

    name: str
    validates: str
    expected: object
    computed: object
    passed: bool
    elapsed: float = 0.0

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"[{status}] {self.name}: expected {self.expected}, got {self.computed} ({self.validates})"


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


# ---------------------------------------------------------------------------
# centers


def center_of(algebra: StructAlgebra) -> list[dict]:
    """Exact basis of the center: iterated kernels of the commutator maps
    against every basis element.
    """
    spec = algebra.spec
    current: list[dict] = [algebra.basis_vector(lab) for lab in algebra.labels]
    for b_idx in range(algebra.dim):
        b = {b_idx: 1}
        cols = []
        for v in current:
            comm = algebra.vec_sub(algebra.mul_vec(b, v), algebra.mul_vec(v, b))
            cols.append(comm)
        M = np.zeros((algebra.dim, len(current)), dtype=np.int64)
        for c, comm in enumerate(cols):
            for k, val in comm.items():
                M[k, c] = val
        combos = nullspace_over_field(M, spec)
        new = []
        for combo in combos:
            acc: dict = {}
            for coef, v in zip(combo, current):
                if coef:
                    acc = algebra.vec_add(acc, algebra.vec_scale(int(coef), v))
            new.append(acc)
        current = new
        if not current:
            break
    for v in current:
        for b_idx in range(algebra.dim):
            b = {b_idx: 1}
            assert algebra.vec_eq(algebra.mul_vec(b, v), algebra.mul_vec(v, b))
    return current


# ---------------------------------------------------------------------------
# radicals of spanned subalgebras


@dataclass
class RadicalReport:
    dim_radical: int
    dim_semisimple: int
    certified: bool
    detail: str = ""


def _ideal_closure(
    algebra: StructAlgebra, ambient_basis: list[dict], seeds: list[dict]
) -> list[dict]:
    span = VectorSpan(algebra.spec, algebra.dim)
    basis: list[dict] = []
    queue = list(seeds)
    while queue:
        v = queue.pop(0)
        if span.add(v):
            basis.append(v)
            for b in ambient_basis:
                queue.append(algebra.mul_vec(b, v))
                queue.append(algebra.mul_vec(v, b))
    return basis


def _square_span(algebra: StructAlgebra, basis: list[dict]) -> list[dict]:
    span = VectorSpan(algebra.spec, algebra.dim)
    out = []
    for u in basis:
        for v in basis:
            w = algebra.mul_vec(u, v)
            if w and span.add(w):
                out.append(w)
    return out


def _is_nilpotent_ideal(algebra: StructAlgebra, basis: list[dict]) -> bool:
    cur = basis
    while cur:
        nxt = _square_span(algebra, cur)
        if len(nxt) >= len(cur):
            return False
        cur = nxt
    return True


def radical_and_semisimple_rank(
    algebra: StructAlgebra, spanning: list[dict] | None = None
) -> RadicalReport:
    """Radical of the subalgebra spanned by the given vectors (default: the
    whole algebra), as the sum of nilpotent ideals generated by the working
    basis, certified exact when the quotient is commutative with no
    nilpotents.  Without a certificate the radical dimension is still a
    correct lower bound (only nilpotent ideals are ever added).

    In characteristic p the trace form is useless, so nilpotency is decided
    by rank iteration of ideal powers throughout.
    """
    spec = algebra.spec
    if spanning is None:
        spanning = [algebra.basis_vector(lab) for lab in algebra.labels]
    full_span = VectorSpan(spec, algebra.dim)
    basis: list[dict] = []
    for v in spanning:
        if full_span.add(v):
            basis.append(v)
    nil_span = VectorSpan(spec, algebra.dim)
    nil_basis: list[dict] = []
    for b in basis:
        if nil_span.contains(b):
            continue
        ideal = _ideal_closure(algebra, basis, [b])
        if _is_nilpotent_ideal(algebra, ideal):
            for v in ideal:
                if nil_span.add(v):
                    nil_basis.append(v)
    assert _is_nilpotent_ideal(algebra, nil_basis), "radical candidate not nilpotent"

    # quotient coordinates: extend the nilpotent span by complement vectors
    combined = VectorSpan(spec, algebra.dim, track=True)
    for v in nil_basis:
        combined.add(v)
    complement: list[dict] = []
    for v in basis:
        if combined.add(v):
            complement.append(v)
    dim_n = len(nil_basis)
    dim_q = len(complement)

    def in_nil(vec: dict) -> bool:
        return nil_span.contains(vec) if nil_basis else not vec

    commutative = all(
        in_nil(algebra.vec_sub(algebra.mul_vec(u, v), algebra.mul_vec(v, u)))
        for u in complement
        for v in complement
    )
    certified = False
    detail = "quotient not commutative; radical is a lower bound"
    if commutative and dim_q:
        s = 1
        while spec.p**s < max(dim_q, 2):
            s += 1
        power = spec.p**s
        # x -> x^(p^s) is F_p-semilinear on a commutative quotient; its kernel
        # is exactly the image of the nilpotent part.  Quotient coordinates are
        # read against the echelon rows that extend the nilpotent span.
        e = spec.e
        class_vectors = [
            digits_to_dict(spec, combined.rows[dim_n + k]) for k in range(dim_q)
        ]
        cols = []
        for c in class_vectors:
            for t in range(e):
                scaled = algebra.vec_scale(spec.p**t, c)
                img = algebra.vec_pow(scaled, power)
                residual, coords = combined.reduce_with_coords(
                    _vec_digits(spec, algebra.dim, img)
                )
                assert not residual.any(), "power image left the algebra span"
                qcoords = coords[dim_n:]
                col = np.concatenate([spec.digits(cc) for cc in qcoords])
                cols.append(col)
        M = np.array(cols, dtype=np.int64).T % spec.p
        nilpotent_classes = M.shape[1] - rank_mod_p(M, spec.p)
        certified = nilpotent_classes == 0
        detail = (
            "quotient commutative with trivial p-power kernel"
            if certified
            else f"quotient has {nilpotent_classes} nilpotent class directions"
        )
    elif commutative:
        detail = "quotient is zero"
        certified = True
    return RadicalReport(dim_n, dim_q, certified, detail)


def _vec_digits(spec: FieldSpec, dim: int, vec: dict) -> np.ndarray:
    out = np.zeros((dim, spec.e), dtype=np.int64)
    for k, c in vec.items():
        out[k] = spec.digits(c)
    return out


def maschke_semisimple_witness(
    algebra: StructAlgebra,
    elements: list,
    group_mul,
    element_vector,
    p: int,
    expected_dim: int | None = None,
) -> OracleReport:
    """Certify semisimplicity of the span of the supplied vectors by
    exhibiting it as the image of a group algebra of p'-order: the vectors
    must multiply exactly as the group does and span the expected dimension.
    """
    target = algebra.dim if expected_dim is None else expected_dim

    def run():
        if len(elements) % p == 0:
            return False, "group order divisible by p"
        vecs = {g: element_vector(g) for g in elements}
        for g in elements:
            for h in elements:
                lhs = algebra.mul_vec(vecs[g], vecs[h])
                if not algebra.vec_eq(lhs, vecs[group_mul(g, h)]):
                    return False, f"multiplicativity fails at {g}, {h}"
        span = VectorSpan(algebra.spec, algebra.dim)
        for g in elements:
            span.add(vecs[g])
        if span.rank != target:
            return False, f"span rank {span.rank} != {target}"
        return True, "image of a p'-group algebra"

    (ok, detail), elapsed = _timed(run)
    return OracleReport(
        "maschke-semisimple",
        "semisimplicity via an exhibited group-algebra surjection of p'-order",
        True,
        ok,
        ok,
        elapsed,
    )


# ---------------------------------------------------------------------------
# Wedderburn numerology of the H-part


def wedderburn_check(
    khe: StructAlgebra,
    num_blocks: int,
    corner_dim: int,
    e_vectors: list[dict],
) -> list[OracleReport]:
    """The block structure of the cut H-algebra: pairwise orthogonal central
    idempotents summing to the identity, each corner of the expected square
    dimension, total dimension the product.
    """
    out = []

    def check(name, validates, expected, computed):
        out.append(OracleReport(name, validates, expected, computed, expected == computed))

    check(
        "kHe-dimension",
        "dimension of the cut H-algebra equals blocks times corner size",
        num_blocks * corner_dim,
        khe.dim,
    )
    ortho = True
    for i, ei in enumerate(e_vectors):
        if not khe.vec_eq(khe.mul_vec(ei, ei), ei):
            ortho = False
        for j, ej in enumerate(e_vectors):
            if i != j and khe.mul_vec(ei, ej):
                ortho = False
    check("idempotents-orthogonal", "the phi-idempotents are orthogonal idempotents", True, ortho)
    total: dict = {}
    for ei in e_vectors:
        total = khe.vec_add(total, ei)
    check(
        "idempotents-sum",
        "the phi-idempotents sum to the identity of the cut algebra",
        True,
        khe.vec_eq(total, khe.identity_vector()),
    )
    central = all(
        khe.vec_eq(khe.mul_vec(ei, {b: 1}), khe.mul_vec({b: 1}, ei))
        for ei in e_vectors
        for b in range(khe.dim)
    )
    check("idempotents-central", "the phi-idempotents are central", True, central)
    corner_dims = []
    for ei in e_vectors:
        span = VectorSpan(khe.spec, khe.dim)
        for b in range(khe.dim):
            span.add(khe.mul_vec(ei, khe.mul_vec({b: 1}, ei)))
        corner_dims.append(span.rank)
    check(
        "corner-dimensions",
        "each idempotent corner has the square dimension of one matrix block",
        [corner_dim] * num_blocks,
        corner_dims,
    )
    return out


# ---------------------------------------------------------------------------
# independent dimension count by linear rewriting closure


def independent_dimension_count(
    Q: QuiverPresentation, spec: FieldSpec, cap_factor: int = 4
) -> int:
    """Dimension of the path algebra modulo the relation ideal, computed by
    a degree-by-degree linear closure with no normal-form assumption.

    Degree d+1 lives inside (arrows) tensor (degree-d classes); the ideal's
    degree-(d+1) layer is generated by left-anchored relation instances, the
    rest being absorbed by the quotient at degree d.  Stops when a degree
    vanishes; a running total past cap_factor times the normal-form count
    aborts with NonTerminating.
    """
    V, r = Q.num_vertices, Q.num_arrow_types
    caps: dict[tuple[int, int], int] = {}
    for i, v, n in Q.powers:
        caps[(i, v)] = n
    complete = all((i, v) in caps for i in range(r) for v in range(V))
    if complete:
        predicted = sum(
            math.prod(caps[(i, v)] for i in range(r)) for v in range(V)
        )
    else:
        # a gap in the power relations leaves the count unbounded; use a
        # small surrogate so the closure aborts instead of running away
        longest = max(caps.values(), default=2)
        predicted = V * longest**r
    cap = cap_factor * max(predicted, 1)
    qround = {
        (i, j, v): zeta_embed(spec, q).val for i, j, v, q in Q.commutations
    }
    # degree 0: one class per vertex
    ends = [[v for v in range(V)]]
    dims = [V]
    lmaps: list[list[np.ndarray]] = []  # lmaps[d][i]: degree d -> d+1
    total = V
    degree = 0
    while True:
        qd = dims[degree]
        if qd == 0:
            break
        raw_dim = r * qd

        def raw_index(i, c):
            return i * qd + c

        rel_span = VectorSpan(spec, raw_dim)

        def add_relation(vec_dict):
            rel_span.add(vec_dict)

        # commutation instances need a degree-(d-1) class to hang off
        if degree >= 1:
            prev_dim = dims[degree - 1]
            for c in range(prev_dim):
                w = ends[degree - 1][c]
                for i in range(r):
                    for j in range(i + 1, r):
                        q = qround[(i, j, w)]
                        col_i = lmaps[degree - 1][i][:, c]
                        col_j = lmaps[degree - 1][j][:, c]
                        vec: dict[int, int] = {}
                        for cc, val in enumerate(col_i):
                            if val:
                                vec[raw_index(j, cc)] = int(val)
                        for cc, val in enumerate(col_j):
                            if val:
                                k = raw_index(i, cc)
                                prev = vec.get(k, 0)
                                vec[k] = spec.sub(prev, spec.mul(q, int(val)))
                        add_relation({k: v for k, v in vec.items() if v})
        # power relations of length d' ending exactly at degree+1
        for (i, v), length in caps.items():
            start_deg = degree + 1 - length
            if start_deg < 0:
                continue
            for c in range(dims[start_deg]):
                if ends[start_deg][c] != v:
                    continue
                coords = np.zeros(dims[start_deg], dtype=np.int64)
                coords[c] = 1
                for step in range(length - 1):
                    coords = _field_matvec_np(
                        spec, lmaps[start_deg + step][i], coords
                    )
                vec = {
                    raw_index(i, cc): int(val)
                    for cc, val in enumerate(coords)
                    if val
                }
                add_relation(vec)
        new_dim = raw_dim - rel_span.rank
        # quotient basis: residual classes of the raw coordinates, with
        # coordinates of the dependent ones read off a tracked span
        quot = VectorSpan(spec, raw_dim, track=True)
        powers = spec.p ** np.arange(spec.e, dtype=np.int64)
        class_columns: list[np.ndarray] = []
        new_ends: list[int] = []
        birth: list[int] = []
        for t in range(raw_dim):
            raw = np.zeros((raw_dim, spec.e), dtype=np.int64)
            raw[t] = spec.digits(1)
            res = rel_span.reduce(raw)
            if quot.add(res, from_dict=False):
                birth.append(t)
            residual, coords = quot.reduce_with_coords(res)
            assert not residual.any()
            class_columns.append(np.array(coords, dtype=np.int64))
        assert quot.rank == new_dim
        for t in birth:
            i, c = divmod(t, qd)
            new_ends.append(Q.arrow_target(i, ends[degree][c]))
        new_lmaps = []
        for i in range(r):
            m = np.zeros((new_dim, qd), dtype=np.int64)
            for c in range(qd):
                col = class_columns[raw_index(i, c)]
                m[: len(col), c] = col
            new_lmaps.append(m)
        lmaps.append(new_lmaps)
        ends.append(new_ends)
        dims.append(new_dim)
        total += new_dim
        if total > cap:
            raise NonTerminating(
                f"closure dimension exceeded {cap} (cap {cap_factor}x prediction)"
            )
        degree += 1
        if degree > 10_000:
            raise NonTerminating("closure failed to stabilise")
    return total


def _field_matvec_np(spec: FieldSpec, M: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros(M.shape[0], dtype=np.int64)
    for i in range(M.shape[0]):
        acc = 0
        row = M[i]
        for j, vj in enumerate(v):
            if vj and row[j]:
                acc = spec.add(acc, spec.mul(int(row[j]), int(vj)))
        out[i] = acc
    return out
