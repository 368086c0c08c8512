"""Exact scalar arithmetic: roots of unity, cyclotomic integers, and an
explicitly constructed finite field F_{p^e} that the roots embed into.

All character-level computation in the library happens on `RootScalar`
(exponent form, no discrete logs needed); `FieldSpec` embeddings are used
only when structure constants are materialised.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CompositeCharacteristic,
    NotInvertible,
    OrderDivisibleByP,
    OrderNotSupported,
)


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of a modulo n; requires gcd(a, n) = 1."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise NotInvertible(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


# ---------------------------------------------------------------------------
# roots of unity


@dataclass(frozen=True)
class RootScalar:
    """A root of unity zeta_order^exponent, stored in lowest terms.

    Normalisation divides out gcd(order, exponent), so equal roots compare
    equal structurally and `order` is the exact multiplicative order.
    """

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        e = self.exponent % self.order
        g = math.gcd(self.order, e)
        if g != 1 or e != self.exponent:
            object.__setattr__(self, "order", self.order // g if e else 1)
            object.__setattr__(self, "exponent", (e // g) if e else 0)

    @staticmethod
    def one() -> RootScalar:
        return RootScalar(1, 0)

    def is_one(self) -> bool:
        return self.order == 1

    def __mul__(self, other: RootScalar) -> RootScalar:
        n = lcm(self.order, other.order)
        return RootScalar(
            n, self.exponent * (n // self.order) + other.exponent * (n // other.order)
        )

    def __pow__(self, k: int) -> RootScalar:
        return RootScalar(self.order, self.exponent * k)

    def inverse(self) -> RootScalar:
        return RootScalar(self.order, -self.exponent)

    def scaled_exponent(self, n: int) -> int:
        """Exponent of this root written to base zeta_n; order must divide n."""
        if n % self.order:
            raise ValueError(f"order {self.order} does not divide {n}")
        return self.exponent * (n // self.order) % n

    def __repr__(self):
        return f"zeta({self.order})^{self.exponent}"


def frobenius_inverse_power(z: RootScalar, q: int) -> RootScalar:
    """The root w with w^q = z, i.e. exponent multiplied by q^(-1) mod order."""
    if math.gcd(q, z.order) != 1:
        raise NotInvertible(f"gcd({q}, {z.order}) != 1")
    return RootScalar(z.order, z.exponent * pow(q, -1, z.order))


# ---------------------------------------------------------------------------
# cyclotomic integers (used for exact character sums; never embedded)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials, lowest degree first."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    assert all(c == 0 for c in num)
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def _cyc_context(n: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Degree of Phi_n and reduced coefficient rows for x^k, 0 <= k < n."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows: list[tuple[int, ...]] = []
    cur = [1] + [0] * (d - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            for j in range(d):
                nxt[j] -= top * phi[j]
        cur = nxt
    return d, tuple(rows)


class CycInt:
    """Element of Z[zeta_n], reduced mod the n-th cyclotomic polynomial."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        d, _ = _cyc_context(n)
        c = list(coeffs)
        assert len(c) == d
        self.coeffs = tuple(c)

    @staticmethod
    def zero(n: int) -> CycInt:
        d, _ = _cyc_context(n)
        return CycInt(n, [0] * d)

    @staticmethod
    def from_int(n: int, k: int) -> CycInt:
        d, _ = _cyc_context(n)
        return CycInt(n, [k] + [0] * (d - 1))

    @staticmethod
    def from_root(n: int, z: RootScalar) -> CycInt:
        d, rows = _cyc_context(n)
        return CycInt(n, rows[z.scaled_exponent(n)])

    def __add__(self, other: CycInt) -> CycInt:
        return CycInt(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: CycInt) -> CycInt:
        return CycInt(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: CycInt) -> CycInt:
        d, rows = _cyc_context(self.n)
        a, b = self.coeffs, other.coeffs
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:d])
        phi = cyclotomic_polynomial(self.n)
        for k in range(2 * d - 2, d - 1, -1):
            c = conv[k]
            if c:
                for j in range(d):
                    conv[k - d + j] -= c * phi[j]
                conv[k] = 0
        return CycInt(self.n, conv[:d])

    def scale(self, k: int) -> CycInt:
        return CycInt(self.n, [k * a for a in self.coeffs])

    def galois_invert(self) -> CycInt:
        """Image under zeta -> zeta^(-1) (complex conjugation on root values)."""
        _, rows = _cyc_context(self.n)
        acc = [0] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                # x^j reduced row index for zeta^(-j): exponent n - j
                row = rows[(self.n - j) % self.n]
                for t, r in enumerate(row):
                    acc[t] += c * r
        return CycInt(self.n, acc)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_int(self) -> int | None:
        """The rational integer this element equals, or None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycInt)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CycInt(n={self.n}, {self.coeffs})"


# ---------------------------------------------------------------------------
# the finite field


def _poly_mul_mod(a: tuple, b: tuple, modulus: tuple, p: int) -> tuple:
    """Product of coefficient tuples mod (modulus, p); x^e = -modulus."""
    e = len(a)
    conv = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
    for k in range(2 * e - 2, e - 1, -1):
        c = conv[k] % p
        if c:
            for j in range(e):
                conv[k - e + j] -= c * modulus[j]
        conv[k] = 0
    return tuple(c % p for c in conv[:e])


def _poly_is_irreducible(coeffs: tuple, p: int) -> bool:
    """Trial division of the monic polynomial x^e + coeffs by all lower monics."""
    e = len(coeffs)
    if e == 1:
        return True
    full = list(coeffs) + [1]

    def poly_mod(num: list[int], den: list[int]) -> list[int]:
        num = [c % p for c in num]
        dl = len(den) - 1
        inv_lead = pow(den[-1], -1, p)
        for i in range(len(num) - 1, dl - 1, -1):
            c = num[i] * inv_lead % p
            if c:
                for j in range(len(den)):
                    num[i - dl + j] = (num[i - dl + j] - c * den[j]) % p
        return num[:dl]

    for deg in range(1, e // 2 + 1):
        for enc in range(p**deg):
            den = []
            v = enc
            for _ in range(deg):
                den.append(v % p)
                v //= p
            den.append(1)
            if all(c == 0 for c in poly_mod(full, den)):
                return False
    return True


class FieldSpec:
    """An explicit F_{p^e} with fixed irreducible modulus and generator.

    Elements are encoded as integers sum(c_i * p^i) over the coordinate
    vector (c_0 .. c_{e-1}) in the polynomial basis.  The modulus is the
    first irreducible found in increasing encoding order, and the generator
    the least element of full multiplicative order, so a (p, e) pair always
    yields the same field model.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = self._find_modulus()
        self._digit_table = self._build_digits()
        self.generator, self._exp, self._log = self._build_tables()
        self.zero = 0
        self.one = 1

    # -- construction ------------------------------------------------------

    def _find_modulus(self) -> tuple:
        for enc in range(self.q):
            coeffs = tuple(self._decode_int(enc))
            if _poly_is_irreducible(coeffs, self.p):
                return coeffs
        raise AssertionError("no irreducible polynomial found")

    def _decode_int(self, v: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(v % self.p)
            v //= self.p
        return out

    def _build_digits(self) -> np.ndarray:
        vals = np.arange(self.q, dtype=np.int64)
        digs = np.empty((self.q, self.e), dtype=np.int64)
        for i in range(self.e):
            digs[:, i] = vals % self.p
            vals //= self.p
        return digs

    def _encode(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + int(c) % self.p
        return v

    def _raw_mul(self, a: int, b: int) -> int:
        return self._encode(
            _poly_mul_mod(
                tuple(self._digit_table[a]),
                tuple(self._digit_table[b]),
                self.modulus,
                self.p,
            )
        )

    def _raw_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            k >>= 1
        return r

    def _build_tables(self):
        n = self.q - 1
        gen = None
        for cand in range(1, self.q):
            if all(self._raw_pow(cand, n // f) != 1 for f in prime_factors(n)):
                gen = cand
                break
        assert gen is not None
        exp = [1] * max(n, 1)
        for i in range(1, n):
            exp[i] = self._raw_mul(exp[i - 1], gen)
        log = [-1] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        return gen, exp, log

    # -- arithmetic on int encodings ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da = self._digit_table[a]
        db = self._digit_table[b]
        return self._encode((da + db) % self.p)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._encode((-self._digit_table[a]) % self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        n = self.q - 1
        if n == 1:
            return 1
        return self._exp[(self._log[a] + self._log[b]) % n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting 0")
        n = self.q - 1
        if n == 1:
            return 1
        return self._exp[(-self._log[a]) % n]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        n = self.q - 1
        if n == 1:
            return 1
        return self._exp[(self._log[a] * k) % n]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def int_embed(self, k: int) -> int:
        """Image of the rational integer k (lives in the prime subfield)."""
        return k % self.p

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.q - 1
        if n == 1:
            return 1
        return n // math.gcd(self._log[a], n)

    def elements(self) -> range:
        return range(self.q)

    def digits(self, a: int) -> np.ndarray:
        return self._digit_table[a]

    def __repr__(self):
        return f"F_{self.p}^{self.e}(mod={list(self.modulus)}, gen={self.generator})"


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its FieldSpec; thin wrapper over the int encoding."""

    spec: FieldSpec
    val: int

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.spec, self.spec.add(self.val, other.val))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self.val, other.val))

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.spec, self.spec.mul(self.val, other.val))

    def __pow__(self, k: int) -> FieldElement:
        return FieldElement(self.spec, self.spec.pow(self.val, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.val))

    def frobenius(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.frobenius(self.val))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.spec is other.spec
            and self.val == other.val
        )

    def __hash__(self):
        return hash((id(self.spec), self.val))


def field_make(p: int, orders) -> FieldSpec:
    """Smallest F_{p^e} whose multiplicative group contains all given root orders."""
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    n = 1
    for o in orders:
        if o < 1:
            raise ValueError("orders must be positive")
        if math.gcd(o, p) != 1:
            raise OrderDivisibleByP(f"order {o} shares a factor with p={p}")
        n = lcm(n, o)
    e = multiplicative_order(p, n)
    spec = FieldSpec(p, e)
    assert (spec.q - 1) % n == 0
    return spec


def zeta_embed(spec: FieldSpec, z: RootScalar) -> FieldElement:
    """Embed a root of unity via the field generator; multiplicative by design."""
    if (spec.q - 1) % z.order:
        raise OrderNotSupported(f"order {z.order} does not divide {spec.q - 1}")
    step = (spec.q - 1) // z.order
    return FieldElement(spec, spec.pow(spec.generator, step * z.exponent))


def root_unembed(spec: FieldSpec, val: int, order: int) -> RootScalar:
    """Inverse of zeta_embed on mu_order; raises if val is not such a root."""
    if (spec.q - 1) % order:
        raise OrderNotSupported(f"order {order} does not divide {spec.q - 1}")
    if val == 0:
        raise ValueError("0 is not a root of unity")
    if spec.q == 2:
        return RootScalar.one()
    lg = spec._log[val]
    step = (spec.q - 1) // order
    if lg % step:
        raise ValueError(f"{val} is not in mu_{order}")
    return RootScalar(order, lg // step)
