"""Structure-constant algebras over the finite field: the commutative group
algebra kP with an exact eigenbasis of its degree-one layer, the cut twisted
group algebra of P x| H, the subalgebra spanned by H inside it, and the
weighted-diagonal matrix subalgebra.

All three algebras are monomial: a product of basis elements is a scalar
times a basis element.  The scalar tables are the trust anchor for every
downstream verification, so each constructed algebra self-checks identity
and associativity laws.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian import AbCharacter, LAction, PGroupData, action_on_frattini
from .errors import DimensionMismatch, EigenvaluesNotInField
from .extension import ExtGroup, PhiFamily
from .linalg import VectorSpan, nullspace_over_field
from .scalars import FieldSpec, RootScalar, zeta_embed


class StructAlgebra:
    """Finite-dimensional associative algebra by basis labels and sparse
    structure constants; here every product of basis elements is monomial.
    """

    def __init__(self, spec: FieldSpec, labels, prod_index, prod_scalar, identity_index, seed=0):
        self.spec = spec
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        self.prod_index = np.asarray(prod_index, dtype=np.int64)
        self.prod_scalar = np.asarray(prod_scalar, dtype=np.int64)
        self.identity_index = identity_index
        self.seed = seed
        self.self_check(seed)

    # -- the defining laws ----------------------------------------------------

    def _mul_scalar_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        spec = self.spec
        if spec.q == 2:
            return a * b
        log = np.asarray(spec._log, dtype=np.int64)
        exp = np.asarray(spec._exp, dtype=np.int64)
        out = exp[(log[a] + log[b]) % (spec.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def self_check(self, seed: int):
        ident = self.identity_index
        if not (
            np.array_equal(self.prod_index[:, ident], np.arange(self.dim))
            and np.array_equal(self.prod_index[ident, :], np.arange(self.dim))
            and np.all(self.prod_scalar[:, ident] == 1)
            and np.all(self.prod_scalar[ident, :] == 1)
        ):
            raise AssertionError("identity law fails")
        if self.dim <= 40:
            rng_i, rng_j, rng_k = np.meshgrid(
                np.arange(self.dim), np.arange(self.dim), np.arange(self.dim), indexing="ij"
            )
            i, j, k = rng_i.ravel(), rng_j.ravel(), rng_k.ravel()
        else:
            rng = np.random.default_rng(seed)
            i = rng.integers(0, self.dim, 100_000)
            j = rng.integers(0, self.dim, 100_000)
            k = rng.integers(0, self.dim, 100_000)
        ij = self.prod_index[i, j]
        jk = self.prod_index[j, k]
        left_idx = self.prod_index[ij, k]
        right_idx = self.prod_index[i, jk]
        left_sc = self._mul_scalar_arrays(self.prod_scalar[i, j], self.prod_scalar[ij, k])
        right_sc = self._mul_scalar_arrays(self.prod_scalar[j, k], self.prod_scalar[i, jk])
        if not (np.array_equal(left_idx, right_idx) and np.array_equal(left_sc, right_sc)):
            raise AssertionError("associativity fails on structure constants")

    # -- vector arithmetic ------------------------------------------------------

    def identity_vector(self) -> dict[int, int]:
        return {self.identity_index: 1}

    def basis_vector(self, label) -> dict[int, int]:
        return {self.index[label]: 1}

    def vec_add(self, u: dict, v: dict) -> dict:
        spec = self.spec
        out = dict(u)
        for k, c in v.items():
            s = spec.add(out.get(k, 0), c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def vec_scale(self, c: int, u: dict) -> dict:
        if c == 0:
            return {}
        spec = self.spec
        return {k: spec.mul(c, v) for k, v in u.items()}

    def vec_sub(self, u: dict, v: dict) -> dict:
        return self.vec_add(u, self.vec_scale(self.spec.neg(1), v))

    def mul_vec(self, u: dict, v: dict) -> dict:
        if len(u) * len(v) > 96:
            return self._mul_vec_bulk(u, v)
        spec = self.spec
        ti, ts = self.prod_index, self.prod_scalar
        acc: dict[int, int] = {}
        for i, ci in u.items():
            row_i, row_s = ti[i], ts[i]
            for j, cj in v.items():
                c = spec.mul(spec.mul(ci, cj), int(row_s[j]))
                if c:
                    k = int(row_i[j])
                    s = spec.add(acc.get(k, 0), c)
                    if s:
                        acc[k] = s
                    else:
                        acc.pop(k, None)
        return acc

    def _mul_vec_bulk(self, u: dict, v: dict) -> dict:
        """Vectorised product: all term pairs at once, accumulated digitwise."""
        spec = self.spec
        iu = np.fromiter(u.keys(), dtype=np.int64, count=len(u))
        cu = np.fromiter(u.values(), dtype=np.int64, count=len(u))
        iv = np.fromiter(v.keys(), dtype=np.int64, count=len(v))
        cv = np.fromiter(v.values(), dtype=np.int64, count=len(v))
        targets = self.prod_index[np.ix_(iu, iv)].ravel()
        tscal = self.prod_scalar[np.ix_(iu, iv)].ravel()
        q1 = max(spec.q - 1, 1)
        log = np.asarray(spec._log, dtype=np.int64)
        exp = np.asarray(spec._exp, dtype=np.int64)
        logs = (log[cu][:, None] + log[cv][None, :]).ravel() + log[tscal]
        scal = exp[logs % q1]
        scal = np.where(tscal == 0, 0, scal)
        digs = spec._digit_table[scal]
        out = np.zeros((self.dim, spec.e), dtype=np.int64)
        for t in range(spec.e):
            out[:, t] = np.bincount(
                targets, weights=digs[:, t], minlength=self.dim
            ).astype(np.int64)
        out %= spec.p
        vals = out @ (spec.p ** np.arange(spec.e, dtype=np.int64))
        return {int(k): int(val) for k, val in enumerate(vals) if val}

    def vec_pow(self, u: dict, k: int) -> dict:
        out = self.identity_vector()
        base = u
        while k:
            if k & 1:
                out = self.mul_vec(out, base)
            base = self.mul_vec(base, base)
            k >>= 1
        return out

    def vec_eq(self, u: dict, v: dict) -> bool:
        return {k: c for k, c in u.items() if c} == {k: c for k, c in v.items() if c}


# ---------------------------------------------------------------------------
# kP and the eigenbasis of its degree-one layer


@dataclass
class EigenBasisW:
    """Basis w_1..w_r of an L-stable complement of the square of the
    augmentation ideal, with exact eigencharacters and nilpotency degrees.

    Each w_i is supported on a single homocyclic component, which is what
    makes w_i^(p^n_i) vanish on the nose in characteristic p.
    """

    vectors: list[dict]
    psis: list[AbCharacter]
    exponents: list[int]

    def __len__(self):
        return len(self.vectors)


def _field_matvec(spec: FieldSpec, M: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros(M.shape[0], dtype=np.int64)
    for i in range(M.shape[0]):
        acc = 0
        for j in range(M.shape[1]):
            acc = spec.add(acc, spec.mul(int(M[i, j]), int(v[j])))
        out[i] = acc
    return out


def _joint_eigenvectors(
    spec: FieldSpec, mats: list[np.ndarray], gen_orders: list[int], dim: int
) -> list[tuple[tuple[int, ...], np.ndarray]]:
    """Simultaneous eigenvectors of commuting semisimple field matrices whose
    eigenvalues are roots of unity of the given orders.  Returns (exponent
    tuple, vector) pairs in deterministic order.
    """
    spaces: list[tuple[tuple[int, ...], list[np.ndarray]]] = [
        ((), [np.eye(dim, dtype=np.int64)[i] for i in range(dim)])
    ]
    for M, d in zip(mats, gen_orders):
        refined = []
        for exps, basis in spaces:
            found = 0
            for c in range(d):
                lam = zeta_embed(spec, RootScalar(d, c)).val
                cols = []
                for b in basis:
                    img = _field_matvec(spec, M, b)
                    shifted = np.array(
                        [spec.sub(int(x), spec.mul(lam, int(v))) for x, v in zip(img, b)],
                        dtype=np.int64,
                    )
                    cols.append(shifted)
                mat = np.stack(cols, axis=1)
                combos = nullspace_over_field(mat, spec)
                if combos:
                    newbasis = []
                    for combo in combos:
                        vec = np.zeros(dim, dtype=np.int64)
                        for coef, b in zip(combo, basis):
                            if coef:
                                vec = np.array(
                                    [
                                        spec.add(int(x), spec.mul(int(coef), int(v)))
                                        for x, v in zip(vec, b)
                                    ],
                                    dtype=np.int64,
                                )
                        newbasis.append(vec)
                    refined.append((exps + (c,), newbasis))
                    found += len(combos)
            if found != len(basis):
                raise EigenvaluesNotInField(
                    "action matrix is not diagonalisable over the chosen field"
                )
        spaces = refined
    out = []
    for exps, basis in spaces:
        # echelonise each joint eigenspace deterministically
        span = VectorSpan(spec, dim)
        for b in basis:
            digits = np.zeros((dim, spec.e), dtype=np.int64)
            for i, val in enumerate(b):
                digits[i] = spec.digits(int(val))
            span.add(digits, from_dict=False)
        powers = spec.p ** np.arange(spec.e, dtype=np.int64)
        for row in span.rows:
            out.append((exps, row @ powers))
    return out


def build_kP(
    P: PGroupData, act: LAction, spec: FieldSpec, seed: int = 0
) -> tuple[StructAlgebra, EigenBasisW]:
    """The commutative algebra kP on the group basis, together with the
    eigenbasis of an L-invariant complement of J^2 inside J.

    The complement is produced by averaging the Frattini-coordinate
    projection over L; conjugation then acts on it by the reduction mod p of
    the action, whose simultaneous eigenvectors give the w_i.  Every claimed
    identity (eigenrelation, nilpotency, Frattini classes) is checked here.
    """
    Pg = P.group()
    L = act.L
    elems = Pg.elements()
    index = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    # monomial table b_x b_y = b_{x+y}
    addtab = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            addtab[i, j] = index[Pg.mul(x, y)]
    kp = StructAlgebra(
        spec, elems, addtab, np.ones((n, n), dtype=np.int64), index[Pg.identity()], seed
    )

    p = P.p
    r = P.frattini_rank
    gens = Pg.generators()
    ident_idx = index[Pg.identity()]
    inv_L = spec.inv(spec.int_embed(L.order))
    slices = P.component_slices()

    def coordinate_component(j: int) -> int:
        for t, (s0, s1, _) in enumerate(slices):
            if s0 <= j < s1:
                return t
        raise IndexError

    # averaged projections of the generator differences b_g - 1
    w_base: list[dict] = []
    for j in range(r):
        t = coordinate_component(j)
        s0, s1, _ = slices[t]
        acc: dict[int, int] = {}
        for g in L.elements():
            y = act.act(L.inv(g), gens[j])
            for j2 in range(s0, s1):
                c = y[j2] % p
                if c:
                    target = index[act.act(g, gens[j2])]
                    acc[target] = (acc.get(target, 0) + c) % p
                    acc[ident_idx] = (acc.get(ident_idx, 0) - c) % p
        vec = {
            k: spec.mul(inv_L, spec.int_embed(v)) for k, v in acc.items() if v % p
        }
        w_base.append(vec)

    # Frattini classes of the averaged vectors must be the coordinate vectors
    for j, vec in enumerate(w_base):
        cls = np.zeros(r, dtype=np.int64)
        for k, c in vec.items():
            x = elems[k]
            for jj in range(r):
                cls[jj] = spec.add(int(cls[jj]), spec.mul(c, spec.int_embed(x[jj])))
        expect = np.zeros(r, dtype=np.int64)
        expect[j] = 1
        assert np.array_equal(cls, expect), "averaged projection lost its class"

    frattini = action_on_frattini(P, act)
    vectors: list[dict] = []
    psis: list[AbCharacter] = []
    exponents: list[int] = []
    for t, (s0, s1, nexp) in enumerate(slices):
        rt = s1 - s0
        mats = [
            np.array(
                [[spec.int_embed(int(Fm[s0 + a, s0 + b])) for b in range(rt)] for a in range(rt)],
                dtype=np.int64,
            )
            for Fm in frattini
        ]
        eig = _joint_eigenvectors(spec, mats, list(L.orders), rt)
        if len(eig) != rt:
            raise EigenvaluesNotInField("eigenbasis incomplete")
        for exps, coords in eig:
            w: dict[int, int] = {}
            for jloc, coef in enumerate(coords):
                if coef:
                    w = kp.vec_add(w, kp.vec_scale(int(coef), w_base[s0 + jloc]))
            vectors.append(w)
            psis.append(AbCharacter(L, exps))
            exponents.append(nexp)

    W = EigenBasisW(vectors, psis, exponents)

    # the three defining properties, verified against the structure constants
    for w, psi, nexp in zip(W.vectors, W.psis, W.exponents):
        for gl, gen in zip(L.generators(), range(L.rank)):
            conj = {index[act.act(gl, elems[k])]: c for k, c in w.items()}
            expect = kp.vec_scale(zeta_embed(spec, psi(gl)).val, w)
            assert kp.vec_eq(conj, expect), "eigenrelation fails"
        assert kp.vec_eq(kp.vec_pow(w, p**nexp), {}), "nilpotency degree fails"
    span = VectorSpan(spec, r)
    for w in W.vectors:
        cls = {}
        for k, c in w.items():
            x = elems[k]
            for jj in range(r):
                v = spec.mul(c, spec.int_embed(x[jj]))
                if v:
                    cls[jj] = spec.add(cls.get(jj, 0), v)
        span.add({k: v for k, v in cls.items() if v})
    assert span.rank == r, "w classes do not span the Frattini quotient"
    return kp, W


# ---------------------------------------------------------------------------
# the cut twisted algebra and the H-span inside it


def build_twisted_algebra(
    P: PGroupData, act: LAction, ext: ExtGroup, spec: FieldSpec, seed: int = 0
) -> StructAlgebra:
    """The algebra with basis {x h e}, x in P and h the least lift of each
    L-element: multiplication twists by the action and by chi of the cocycle.
    """
    Pg = P.group()
    L = act.L
    p_elems = Pg.elements()
    l_elems = L.elements()
    pi = {x: i for i, x in enumerate(p_elems)}
    li = {l: i for i, l in enumerate(l_elems)}
    np_, nl = len(p_elems), len(l_elems)

    padd = np.zeros((np_, np_), dtype=np.int64)
    for i, x in enumerate(p_elems):
        for j, y in enumerate(p_elems):
            padd[i, j] = pi[Pg.mul(x, y)]
    act_tab = np.zeros((nl, np_), dtype=np.int64)
    for a, l in enumerate(l_elems):
        for j, x in enumerate(p_elems):
            act_tab[a, j] = pi[act.act(l, x)]
    lmul = np.zeros((nl, nl), dtype=np.int64)
    scal = np.zeros((nl, nl), dtype=np.int64)
    for a, l1 in enumerate(l_elems):
        for b, l2 in enumerate(l_elems):
            lmul[a, b] = li[L.mul(l1, l2)]
            scal[a, b] = zeta_embed(spec, ext.cocycle.value(l1, l2)).val

    labels = [(x, l) for x in p_elems for l in l_elems]
    # index arithmetic: label (x, l) sits at x * nl + l
    xi = np.arange(np_).repeat(nl)
    la = np.tile(np.arange(nl), np_)
    ti = np.zeros((np_ * nl, np_ * nl), dtype=np.int64)
    ts = np.zeros((np_ * nl, np_ * nl), dtype=np.int64)
    for a in range(np_ * nl):
        x1, l1 = xi[a], la[a]
        moved = act_tab[l1]  # x2 -> l1(x2)
        ti[a] = padd[x1, moved[xi]] * nl + lmul[l1, la]
        ts[a] = scal[l1, la]
    ident = pi[Pg.identity()] * nl + li[L.identity()]
    return StructAlgebra(spec, labels, ti, ts, ident, seed)


def build_h_algebra(ext: ExtGroup, spec: FieldSpec, seed: int = 0) -> StructAlgebra:
    """kHe on the least lifts of L: the x = 1 corner of the twisted algebra."""
    L = ext.L
    l_elems = L.elements()
    li = {l: i for i, l in enumerate(l_elems)}
    nl = len(l_elems)
    lmul = np.zeros((nl, nl), dtype=np.int64)
    scal = np.zeros((nl, nl), dtype=np.int64)
    for a, l1 in enumerate(l_elems):
        for b, l2 in enumerate(l_elems):
            lmul[a, b] = li[L.mul(l1, l2)]
            scal[a, b] = zeta_embed(spec, ext.cocycle.value(l1, l2)).val
    return StructAlgebra(spec, l_elems, lmul, scal, li[L.identity()], seed)


def h_element_vector(algebra: StructAlgebra, ext: ExtGroup, h, l_label=None) -> dict:
    """The image of an H-element in a cut algebra: h = (z, x) becomes
    chi(z) times the basis vector of the least lift of x.
    """
    z, x = h
    lab = x if l_label is None else l_label(x)
    return {algebra.index[lab]: zeta_embed(algebra.spec, RootScalar(ext.m, z)).val}


def idempotent_e_phi(
    algebra: StructAlgebra, ext: ExtGroup, fam: PhiFamily, phi_idx: int, l_label=None
) -> dict:
    """e_phi = |Z(H)|^(-1) sum over Z(H) of phi(h^(-1)) h, embedded."""
    spec = algebra.spec
    phi = fam.phis[phi_idx]
    inv_zh = spec.inv(spec.int_embed(len(fam.center_elements)))
    acc: dict[int, int] = {}
    for h in fam.center_elements:
        coeff = spec.mul(inv_zh, zeta_embed(spec, phi[ext.inv(h)]).val)
        vec = h_element_vector(algebra, ext, h, l_label)
        acc = algebra.vec_add(acc, algebra.vec_scale(coeff, vec))
    return acc


@dataclass
class MatSubalgebra:
    """The span of the xi-weighted diagonal images of H: a copy of the full
    m x m matrix algebra commuting with the arrows.
    """

    vectors: dict  # least-lift L element -> vector
    span: VectorSpan
    dimension: int


def build_mat_subalgebra(
    algebra: StructAlgebra, ext: ExtGroup, fam: PhiFamily, l_label=None
) -> MatSubalgebra:
    spec = algebra.spec
    e_phis = [
        idempotent_e_phi(algebra, ext, fam, i, l_label) for i in range(len(fam))
    ]
    vectors = {}
    for l in ext.L.elements():
        h_vec = h_element_vector(algebra, ext, (0, l), l_label)
        acc: dict[int, int] = {}
        for i, e_vec in enumerate(e_phis):
            coeff = spec.inv(zeta_embed(spec, fam.xis[i](l)).val)
            acc = algebra.vec_add(
                acc, algebra.vec_scale(coeff, algebra.mul_vec(e_vec, h_vec))
            )
        vectors[l] = acc
    span = VectorSpan(spec, algebra.dim)
    for l in ext.L.elements():
        span.add(vectors[l])
    expected = ext.order // len(fam.center_elements)
    if span.rank != expected:
        raise DimensionMismatch(
            f"matrix subalgebra has rank {span.rank}, expected |H : Z(H)| = {expected}"
        )
    # multiplicative on the nose: v_{l1} v_{l2} = chi(cocycle) v_{l1 l2}
    for l1 in ext.L.elements():
        for l2 in ext.L.elements():
            prod = algebra.mul_vec(vectors[l1], vectors[l2])
            scal = zeta_embed(spec, ext.cocycle.value(l1, l2)).val
            expect = algebra.vec_scale(scal, vectors[ext.L.mul(l1, l2)])
            assert algebra.vec_eq(prod, expect), "H-span is not multiplicatively closed"
    ident = algebra.identity_vector()
    assert algebra.vec_eq(vectors[ext.L.identity()], ident), "identity of the span is not e"
    return MatSubalgebra(vectors, span, span.rank)
