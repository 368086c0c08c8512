"""Exact linear algebra: prime fields via numpy, prime-power and composite
moduli for exponent systems, integer Smith normal form, and echelon spans
over the library's F_{p^e} model.
"""

from __future__ import annotations

import numpy as np

from .scalars import FieldSpec, prime_factors

# ---------------------------------------------------------------------------
# prime field, dense numpy


def rref_mod_p(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (R, pivot column list)."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        other = np.nonzero(R[:, c])[0]
        for j in other:
            if j != r:
                R[j] = (R[j] - R[j, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(rref_mod_p(M, p)[1])


def nullspace_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right nullspace mod p, one vector per row."""
    rows, cols = M.shape if M.size else (0, M.shape[1])
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref_mod_p(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(pivots):
            basis[k, c] = (-R[r, f]) % p
    return basis


def solve_mod_p(M: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of M x = b mod p (free variables zero), or None."""
    rows, cols = M.shape
    aug = np.concatenate([M % p, (b % p).reshape(rows, 1)], axis=1)
    R, pivots = rref_mod_p(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


# ---------------------------------------------------------------------------
# prime powers and composite moduli (exponent arithmetic)


def _val(x: int, ell: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


def solve_mod_prime_power(
    A: np.ndarray, b: np.ndarray, ell: int, a: int
) -> np.ndarray | None:
    """One solution of A x = b mod ell^a (free variables zero), or None.

    Pivots are chosen with globally minimal ell-valuation (with row and
    column swaps), so every remaining entry is divisible by the pivot and
    whether the back-substitution divisions succeed does not depend on the
    free-variable choices.  Entries fit int64: every modulus in this library
    is far below 2^31.
    """
    mod = ell**a
    assert mod < 1 << 20, "modulus too large for int64 elimination"
    A0 = np.array(A, dtype=np.int64) % mod
    b0 = np.array(b, dtype=np.int64) % mod
    rows, cols = A0.shape
    M = A0.copy()
    rhs = b0.copy()
    colperm = list(range(cols))
    piv_vals: list[int] = []
    t = 0
    while t < min(rows, cols):
        block = M[t:, t:]
        if block.size == 0:
            break
        vals = np.vectorize(lambda x: _val(int(x), ell, a))(block)
        vbest = int(vals.min())
        if vbest >= a:
            break
        i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
        i, j = t + int(i), t + int(j)
        if i != t:
            M[[t, i]] = M[[i, t]]
            rhs[t], rhs[i] = rhs[i], rhs[t]
        if j != t:
            M[:, [t, j]] = M[:, [j, t]]
            colperm[t], colperm[j] = colperm[j], colperm[t]
        unit = int(M[t, t]) // ell**vbest
        M[t] = M[t] * pow(unit, -1, mod) % mod
        rhs[t] = rhs[t] * pow(unit, -1, mod) % mod
        if t + 1 < rows:
            factors = M[t + 1 :, t] // ell**vbest
            M[t + 1 :] = (M[t + 1 :] - factors[:, None] * M[t]) % mod
            rhs[t + 1 :] = (rhs[t + 1 :] - factors * rhs[t]) % mod
        piv_vals.append(vbest)
        t += 1
    if np.any(rhs[t:] % mod):
        return None
    y = np.zeros(cols, dtype=np.int64)
    for i in range(t - 1, -1, -1):
        v = piv_vals[i]
        s = (int(rhs[i]) - int(M[i] @ y)) % mod
        if s % ell**v:
            return None
        y[i] = (s // ell**v) % ell ** (a - v)
    x = np.zeros(cols, dtype=np.int64)
    for pos, orig in enumerate(colperm):
        x[orig] = y[pos]
    if np.any((A0 @ x - b0) % mod):
        return None
    return x


def nullspace_mod_prime_power(A: np.ndarray, ell: int, a: int) -> list[np.ndarray]:
    """Generators of {x : A x = 0 mod ell^a} as a Z/ell^a-module."""
    mod = ell**a
    M = np.array(A, dtype=object) % mod
    rows, cols = M.shape
    V = np.eye(cols, dtype=object)
    t = 0
    diag: list[int] = []
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = _val(int(M[i, j]), ell, a)
                if v < a and (best is None or v < best[2]):
                    best = (i, j, v)
        if best is None:
            break
        i, j, v = best
        if i != t:
            M[[t, i]] = M[[i, t]]
        if j != t:
            M[:, [t, j]] = M[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
        unit = int(M[t, t]) // ell**v
        M[t] = M[t] * pow(unit, -1, mod) % mod
        for i2 in range(t + 1, rows):
            e = int(M[i2, t])
            if e:
                f = e // ell**v
                M[i2] = (M[i2] - f * M[t]) % mod
        for j2 in range(t + 1, cols):
            e = int(M[t, j2])
            if e:
                f = e // ell**v
                M[:, j2] = (M[:, j2] - f * M[:, t]) % mod
                V[:, j2] = (V[:, j2] - f * V[:, t]) % mod
        diag.append(v)
        t += 1
    gens: list[np.ndarray] = []
    for idx, v in enumerate(diag):
        if v > 0:
            gens.append(V[:, idx] * ell ** (a - v) % mod)
    for idx in range(t, cols):
        gens.append(V[:, idx] % mod)
    return gens


def solve_mod(A: np.ndarray, b: np.ndarray, n: int) -> np.ndarray | None:
    """One solution of A x = b mod n for composite n, by CRT over prime powers."""
    if n == 1:
        return np.zeros(A.shape[1], dtype=object)
    parts = []
    for ell in prime_factors(n):
        a = _val(n, ell, 64)
        x = solve_mod_prime_power(A, b, ell, a)
        if x is None:
            return None
        parts.append((ell**a, x))
    x = np.zeros(A.shape[1], dtype=object)
    for m, xm in parts:
        rest = n // m
        coef = rest * pow(rest, -1, m)
        x = (x + coef * xm) % n
    return x


# ---------------------------------------------------------------------------
# integer Smith normal form


def smith_normal_form(
    A: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (D, U, V) with U A V = D,
    U and V unimodular and the diagonal entries in divisibility order.
    """
    M = [list(map(int, row)) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, f):  # row_i -= f * row_j
        for c in range(cols):
            M[i][c] -= f * M[j][c]
        for c in range(rows):
            U[i][c] -= f * U[j][c]

    def col_op(i, j, f):  # col_i -= f * col_j
        for r in range(rows):
            M[r][i] -= f * M[r][j]
        for r in range(cols):
            V[r][i] -= f * V[r][j]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(rows):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def negate_row(i):
        for c in range(cols):
            M[i][c] = -M[i][c]
        for c in range(rows):
            U[i][c] = -U[i][c]

    t = 0
    while t < min(rows, cols):
        # locate minimal nonzero |entry| in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if M[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, rows):
            if M[i][t]:
                row_op(i, t, M[i][t] // M[t][t])
                if M[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if M[t][j]:
                col_op(j, t, M[t][j] // M[t][t])
                if M[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the rest of the block by M[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if M[i][j] % M[t][t]:
                    offender = i
                    break
            if offender:
                break
        if offender is not None:
            row_op(t, offender, -1)  # adds the offending row
            continue
        t += 1
    return M, U, V


# ---------------------------------------------------------------------------
# vectors over F_{p^e}


def _mult_matrix(spec: FieldSpec, c: int) -> np.ndarray:
    """e x e matrix over F_p of multiplication by c in the polynomial basis."""
    cache = getattr(spec, "_mult_mats", None)
    if cache is None:
        cache = {}
        spec._mult_mats = cache
    m = cache.get(c)
    if m is None:
        e = spec.e
        m = np.zeros((e, e), dtype=np.int64)
        for j in range(e):
            # the basis element x^j has integer encoding p^j
            m[:, j] = spec.digits(spec.mul(c, spec.p**j))
        cache[c] = m
    return m


def dict_to_digits(spec: FieldSpec, dim: int, vec: dict[int, int]) -> np.ndarray:
    out = np.zeros((dim, spec.e), dtype=np.int64)
    for i, c in vec.items():
        out[i] = spec.digits(c)
    return out


def digits_to_dict(spec: FieldSpec, digits: np.ndarray) -> dict[int, int]:
    powers = spec.p ** np.arange(spec.e, dtype=np.int64)
    vals = digits @ powers
    return {int(i): int(v) for i, v in enumerate(vals) if v}


class VectorSpan:
    """Incrementally maintained span of a subspace of F_{p^e}^dim.

    Internally the space sits in its flattened prime-field form (one digit
    column per field coordinate), kept in reduced echelon shape inside a
    float64 buffer so that a reduction is a single BLAS product; entries are
    bounded integers, so float arithmetic is exact.  With track=True every
    stored row also carries its expression over the originally inserted
    vectors, which makes quotient coordinates one reduction away.
    """

    def __init__(self, spec: FieldSpec, dim: int, track: bool = False):
        self.spec = spec
        self.dim = dim
        self.e = spec.e
        self.flat = dim * spec.e
        self.track = track
        self._twidth = self.flat if track else 0
        self._powers = spec.p ** np.arange(spec.e, dtype=np.int64)
        cap = 16
        self._M = np.zeros((cap, self.flat + self._twidth), dtype=np.float64)
        self._n = 0  # stored prime-field rows
        self._piv: list[int] = []
        self._inserted: list[np.ndarray] = []  # field rows as (dim, e) digits
        self._q_pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._inserted)

    @property
    def rows(self) -> list[np.ndarray]:
        return list(self._inserted)

    @property
    def pivots(self) -> list[int]:
        return list(self._q_pivots)

    def _grow(self):
        if self._n == self._M.shape[0]:
            bigger = np.zeros(
                (2 * self._M.shape[0], self._M.shape[1]), dtype=np.float64
            )
            bigger[: self._n] = self._M[: self._n]
            self._M = bigger

    def _reduce_flat(self, u: np.ndarray) -> np.ndarray:
        """Reduce an augmented float row against the stored echelon rows."""
        if self._n:
            coeffs = u[self._piv]
            if coeffs.any():
                u = (u - coeffs @ self._M[: self._n]) % self.spec.p
        return u

    def _augmented(self, vd: np.ndarray) -> np.ndarray:
        u = np.zeros(self.flat + self._twidth, dtype=np.float64)
        u[: self.flat] = (vd % self.spec.p).reshape(-1)
        return u

    def reduce(self, vd: np.ndarray) -> np.ndarray:
        u = self._reduce_flat(self._augmented(vd))
        return u[: self.flat].astype(np.int64).reshape(self.dim, self.e)

    def reduce_with_coords(self, vd: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Residual plus the field coefficients over the inserted vectors."""
        assert self.track, "span was not built with coordinate tracking"
        u = self._reduce_flat(self._augmented(vd))
        residual = u[: self.flat].astype(np.int64).reshape(self.dim, self.e)
        tr = u[self.flat :].astype(np.int64).reshape(self.dim, self.e)
        coords = []
        for k in range(self.rank):
            coords.append(self.spec.neg(int(tr[k] @ self._powers)))
        return residual, coords

    def _insert_fp_row(self, u: np.ndarray):
        p = self.spec.p
        main = u[: self.flat]
        nz = np.nonzero(main)[0]
        assert nz.size, "expansion rows of a new vector must be independent"
        piv = int(nz[0])
        u = u * pow(int(main[piv]), -1, p) % p
        if self._n:
            col = self._M[: self._n, piv].copy()
            if col.any():
                self._M[: self._n] = (
                    self._M[: self._n] - np.outer(col, u)
                ) % p
        self._grow()
        self._M[self._n] = u
        self._piv.append(piv)
        self._n += 1

    def add(self, vec, from_dict: bool = True) -> bool:
        """Insert a vector (sparse dict or digit array); True if rank grew."""
        vd = dict_to_digits(self.spec, self.dim, vec) if from_dict else vec
        res = self.reduce(vd)
        nzd = np.nonzero(res.any(axis=1))[0]
        if nzd.size == 0:
            return False
        # normalise the leading field entry to one and remember the field row
        d0 = int(nzd[0])
        lead = int(res[d0] @ self._powers)
        w = res @ _mult_matrix(self.spec, self.spec.inv(lead)).T % self.spec.p
        slot = self.rank
        self._inserted.append(w)
        self._q_pivots.append(d0)
        # store the e prime-field expansions x^t * w, tracked as x^t e_slot
        for t in range(self.e):
            xt = self.spec.p**t
            row = w @ _mult_matrix(self.spec, xt).T % self.spec.p
            u = np.zeros(self.flat + self._twidth, dtype=np.float64)
            u[: self.flat] = row.reshape(-1)
            if self.track:
                u[self.flat + slot * self.e : self.flat + slot * self.e + self.e] = (
                    self.spec.digits(xt)
                )
            self._insert_fp_row(self._reduce_flat(u))
        return True

    def contains(self, vec, from_dict: bool = True) -> bool:
        vd = dict_to_digits(self.spec, self.dim, vec) if from_dict else vec
        return not self.reduce(vd).any()

    def basis_dicts(self) -> list[dict[int, int]]:
        return [digits_to_dict(self.spec, r) for r in self.rows]


def rank_over_field(vectors: list[dict[int, int]], spec: FieldSpec, dim: int) -> int:
    span = VectorSpan(spec, dim)
    for v in vectors:
        span.add(v)
    return span.rank


def nullspace_over_field(
    M: np.ndarray, spec: FieldSpec
) -> list[np.ndarray]:
    """F_{p^e}-basis of the right nullspace of a matrix of field encodings.

    The field system is expanded to F_p blocks; the prime-field nullspace is
    then folded back and echelonised over the field.
    """
    m, n = M.shape
    e = spec.e
    big = np.zeros((m * e, n * e), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            c = int(M[i, j])
            if c:
                big[i * e : (i + 1) * e, j * e : (j + 1) * e] = _mult_matrix(spec, c)
    basis_p = nullspace_mod_p(big, spec.p)
    span = VectorSpan(spec, n)
    out: list[np.ndarray] = []
    powers = spec.p ** np.arange(e, dtype=np.int64)
    for row in basis_p:
        digits = row.reshape(n, e)
        if span.add(digits, from_dict=False):
            out.append(digits @ powers)
    assert len(basis_p) == e * len(out)
    return out


# ---------------------------------------------------------------------------
# integer matrices mod m (action arithmetic)


def mat_mul_mod(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % m


def mat_pow_mod(A: np.ndarray, k: int, m: int) -> np.ndarray:
    n = A.shape[0]
    R = np.eye(n, dtype=np.int64)
    B = np.asarray(A, dtype=np.int64) % m
    while k:
        if k & 1:
            R = mat_mul_mod(R, B, m)
        B = mat_mul_mod(B, B, m)
        k >>= 1
    return R


def mat_order_mod(A: np.ndarray, m: int, cap: int = 1 << 20) -> int:
    n = A.shape[0]
    eye = np.eye(n, dtype=np.int64)
    B = np.asarray(A, dtype=np.int64) % m
    k = 1
    C = B
    while not np.array_equal(C, eye):
        C = mat_mul_mod(C, B, m)
        k += 1
        if k > cap:
            raise ValueError("matrix order exceeds cap")
    return k


def mat_is_invertible_mod(A: np.ndarray, p: int, n_power: int) -> bool:
    """Invertibility over Z/p^n, i.e. full rank of the reduction mod p."""
    A = np.asarray(A, dtype=np.int64)
    return rank_mod_p(A % p, p) == A.shape[0]
