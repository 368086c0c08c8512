"""Finite abelian groups with exponent-vector elements and characters,
homomorphism solving via Smith normal form, exterior squares, and the
action data of a p'-group of automorphisms on an abelian p-group.

Group elements are plain tuples reduced componentwise; the group object
carries the arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import NoExtension, ValidationError
from .linalg import (
    mat_is_invertible_mod,
    mat_mul_mod,
    mat_pow_mod,
    smith_normal_form,
)
from .scalars import RootScalar, lcm


@dataclass(frozen=True)
class FinAbGroup:
    """Direct product of cyclic groups of the given orders."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.orders):
            raise ValueError("cyclic factor orders must be positive")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.orders, 1)

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.orders, 1)

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def mul(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def inv(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def pow(self, x, k: int) -> tuple[int, ...]:
        return tuple((a * k) % d for a, d in zip(x, self.orders))

    def element_order(self, x) -> int:
        return reduce(lcm, (d // math.gcd(d, a) for a, d in zip(x, self.orders)), 1)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(d) for d in self.orders)))

    def generators(self) -> list[tuple[int, ...]]:
        out = []
        for j in range(self.rank):
            g = [0] * self.rank
            g[j] = 1 % self.orders[j]
            out.append(tuple(g))
        return out

    def __contains__(self, x) -> bool:
        return len(x) == self.rank and all(
            0 <= a < d for a, d in zip(x, self.orders)
        )


@dataclass(frozen=True)
class AbCharacter:
    """Linear character as an exponent vector: x -> zeta_lcm^(sum c_j x_j lcm/d_j)."""

    group: FinAbGroup
    exps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "exps",
            tuple(c % d for c, d in zip(self.exps, self.group.orders)),
        )

    def __call__(self, x) -> RootScalar:
        n = self.group.exponent
        acc = sum(
            c * a * (n // d) for c, a, d in zip(self.exps, x, self.group.orders)
        )
        return RootScalar(n, acc)

    def __mul__(self, other: AbCharacter) -> AbCharacter:
        assert self.group == other.group
        return AbCharacter(
            self.group, tuple(a + b for a, b in zip(self.exps, other.exps))
        )

    def inverse(self) -> AbCharacter:
        return AbCharacter(self.group, tuple(-a for a in self.exps))

    def __pow__(self, k: int) -> AbCharacter:
        return AbCharacter(self.group, tuple(a * k for a in self.exps))

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.exps)


def dual_group(G: FinAbGroup) -> list[AbCharacter]:
    """All |G| linear characters in lexicographic exponent order."""
    return [
        AbCharacter(G, exps)
        for exps in itertools.product(*(range(d) for d in G.orders))
    ]


def exterior_square(L: FinAbGroup) -> tuple[FinAbGroup, list[tuple[int, int]]]:
    """Lambda^2 of a direct product: one cyclic factor of order gcd(d_j, d_l)
    per pair j < l, with pair labels returned alongside.
    """
    orders = []
    labels = []
    for j in range(L.rank):
        for l in range(j + 1, L.rank):
            orders.append(math.gcd(L.orders[j], L.orders[l]))
            labels.append((j, l))
    return FinAbGroup(tuple(orders)), labels


@dataclass(frozen=True)
class SubgroupEmbedding:
    """A subgroup S <= G presented by the images in G of S's standard generators."""

    sub: FinAbGroup
    ambient: FinAbGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.sub.rank:
            raise ValueError("one image per subgroup generator required")
        for g in self.images:
            if g not in self.ambient:
                raise ValueError(f"{g} is not an ambient element")


def subgroup_closure(G: FinAbGroup, gens) -> list[tuple[int, ...]]:
    """All elements generated by gens, sorted lexicographically."""
    seen = {G.identity()}
    frontier = [G.identity()]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def restricted_characters(
    G: FinAbGroup, subgroup_elements: list[tuple[int, ...]]
) -> list[dict[tuple[int, ...], RootScalar]]:
    """The full dual of a subgroup, as value tables, by restricting dual(G).

    Enumeration order is inherited from dual_group, first occurrence kept,
    so the output is deterministic and starts with the trivial character.
    """
    elems = sorted(subgroup_elements)
    seen: dict[tuple, dict] = {}
    for chi in dual_group(G):
        table = {x: chi(x) for x in elems}
        key = tuple(table[x] for x in elems)
        if key not in seen:
            seen[key] = table
    out = list(seen.values())
    assert len(out) == len(elems), "restriction did not produce the full dual"
    return out


def solve_character_extension(
    emb: SubgroupEmbedding, phi: AbCharacter
) -> AbCharacter:
    """Extend a character of S <= G to G; returns the lexicographically least
    exponent vector among all extensions.

    The congruence system for the exponents is solved over the integers via
    Smith normal form; the homogeneous solutions (characters trivial on S)
    are then enumerated to pick the least coset representative.
    """
    G = emb.ambient
    if phi.group != emb.sub:
        raise ValueError("character does not live on the embedded subgroup")
    n = G.exponent
    sgen = emb.sub.generators()
    t = len(sgen)
    s = G.rank
    # target exponents scaled to order n
    rhs = []
    for gen in sgen:
        val = phi(gen)
        if n % val.order:
            raise NoExtension(
                f"value of order {val.order} cannot extend to exponent-{n} group"
            )
        rhs.append(val.scaled_exponent(n))
    # A c = rhs (mod n): A[i][j] = image_i[j] * (n // d_j), then slack columns n*I
    A = [
        [emb.images[i][j] * (n // G.orders[j]) for j in range(s)]
        + [n if k == i else 0 for k in range(t)]
        for i in range(t)
    ]
    if t == 0:
        return AbCharacter(G, (0,) * s)
    D, U, V = smith_normal_form(A)
    ucols = len(A)
    f = [sum(U[i][k] * rhs[k] for k in range(ucols)) for i in range(ucols)]
    cols = s + t
    y = [0] * cols
    for i in range(min(ucols, cols)):
        d = D[i][i]
        if d:
            if f[i] % d:
                raise NoExtension("inconsistent embedding data")
            y[i] = f[i] // d
        elif f[i]:
            raise NoExtension("inconsistent embedding data")
    for i in range(cols, ucols):
        if f[i]:
            raise NoExtension("inconsistent embedding data")
    part = tuple(
        sum(V[j][i] * y[i] for i in range(cols)) % G.orders[j] for j in range(s)
    )
    # kernel lattice: V columns past the diagonal rank
    rank = sum(1 for i in range(min(ucols, cols)) if D[i][i])
    kgens = [
        tuple(V[j][i] % G.orders[j] for j in range(s)) for i in range(rank, cols)
    ]
    kernel = subgroup_closure(G, [k for k in kgens if any(k)])
    best = min(tuple((p + k) % d for p, k, d in zip(part, ke, G.orders)) for ke in kernel)
    out = AbCharacter(G, best)
    for gen, img in zip(sgen, emb.images):
        assert out(img) == phi(gen)
    return out


# ---------------------------------------------------------------------------
# the p-group and the action of L


@dataclass(frozen=True)
class PGroupData:
    """Finite abelian p-group given by L-invariant homocyclic components.

    components are (exponent n, rank r) pairs: a factor (Z/p^n)^r each.
    The flattened exponents must be non-increasing.
    """

    p: int
    components: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ns = [n for n, _ in self.components]
        if any(n < 1 for n in ns) or any(r < 1 for _, r in self.components):
            raise ValidationError("component exponents and ranks must be >= 1")
        if any(ns[i] < ns[i + 1] for i in range(len(ns) - 1)):
            raise ValidationError("components must come in non-increasing exponent order")

    @property
    def frattini_rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, (self.p ** (n * r) for n, r in self.components), 1)

    def group(self) -> FinAbGroup:
        orders: list[int] = []
        for n, r in self.components:
            orders.extend([self.p**n] * r)
        return FinAbGroup(tuple(orders))

    def coordinate_exponents(self) -> list[int]:
        """The exponent n of the component each flat coordinate belongs to."""
        out: list[int] = []
        for n, r in self.components:
            out.extend([n] * r)
        return out

    def component_slices(self) -> list[tuple[int, int, int]]:
        """(start, stop, exponent n) per component in flat coordinates."""
        out = []
        pos = 0
        for n, r in self.components:
            out.append((pos, pos + r, n))
            pos += r
        return out


class LAction:
    """Action of L on P: one invertible matrix per (L-generator, component).

    Validation enforces a well-defined faithful commutative action of
    p'-order; these are exactly the hypotheses everything downstream uses.
    """

    def __init__(self, P: PGroupData, L: FinAbGroup, matrices):
        self.P = P
        self.L = L
        self.matrices = tuple(
            tuple(np.array(m, dtype=np.int64) % P.p**n for m, (n, _) in zip(gen_mats, P.components))
            for gen_mats in matrices
        )
        self._matrix_cache: dict[tuple[int, ...], tuple[np.ndarray, ...]] = {}
        self._validate()

    def _validate(self):
        P, L = self.P, self.L
        if math.gcd(L.order, P.p) != 1:
            raise ValidationError("L must have order coprime to p")
        if len(self.matrices) != L.rank:
            raise ValidationError("one matrix tuple per L generator required")
        for u, gen_mats in enumerate(self.matrices):
            if len(gen_mats) != len(P.components):
                raise ValidationError("one matrix per homocyclic component required")
            for m, (n, r) in zip(gen_mats, P.components):
                if m.shape != (r, r):
                    raise ValidationError(f"component matrix must be {r}x{r}")
                if not mat_is_invertible_mod(m, P.p, n):
                    raise ValidationError("action matrix is not invertible")
            # the generator relation g^d = 1 must be respected
            d = L.orders[u]
            for m, (n, _) in zip(gen_mats, P.components):
                if not np.array_equal(
                    mat_pow_mod(m, d, P.p**n), np.eye(m.shape[0], dtype=np.int64)
                ):
                    raise ValidationError(
                        "generator matrix order does not divide the generator order"
                    )
        for u in range(L.rank):
            for v in range(u + 1, L.rank):
                for t, (n, _) in enumerate(P.components):
                    mod = P.p**n
                    a, b = self.matrices[u][t], self.matrices[v][t]
                    if not np.array_equal(mat_mul_mod(a, b, mod), mat_mul_mod(b, a, mod)):
                        raise ValidationError("action matrices of distinct generators must commute")
        # faithfulness of the whole tuple
        for x in L.elements():
            if any(x) and all(
                np.array_equal(m, np.eye(m.shape[0], dtype=np.int64))
                for m in self.matrix_tuple(x)
            ):
                raise ValidationError("action is not faithful")

    def matrix_tuple(self, x) -> tuple[np.ndarray, ...]:
        """Matrices of the L-element x on each component."""
        x = tuple(x)
        cached = self._matrix_cache.get(x)
        if cached is not None:
            return cached
        mats = []
        for t, (n, r) in enumerate(self.P.components):
            mod = self.P.p**n
            m = np.eye(r, dtype=np.int64)
            for u, k in enumerate(x):
                m = mat_mul_mod(m, mat_pow_mod(self.matrices[u][t], k, mod), mod)
            mats.append(m)
        out = tuple(mats)
        self._matrix_cache[x] = out
        return out

    def act(self, x, v) -> tuple[int, ...]:
        """Apply the L-element x to the P-element v (flat coordinates)."""
        mats = self.matrix_tuple(x)
        out: list[int] = []
        for (start, stop, n), m in zip(self.P.component_slices(), mats):
            mod = self.P.p**n
            seg = np.array(v[start:stop], dtype=np.int64)
            out.extend(int(a) for a in (m @ seg) % mod)
        return tuple(out)


def action_on_frattini(P: PGroupData, act: LAction) -> list[np.ndarray]:
    """Per L-generator, the block-diagonal reduction mod p of its action."""
    out = []
    r = P.frattini_rank
    for gen_mats in act.matrices:
        big = np.zeros((r, r), dtype=np.int64)
        pos = 0
        for m, (_, rk) in zip(gen_mats, P.components):
            big[pos : pos + rk, pos : pos + rk] = m % P.p
            pos += rk
        out.append(big)
    return out


def semidirect_mul(act: LAction, a, b):
    """Product in P x| L on pairs (p-part, l-part)."""
    (x1, l1), (x2, l2) = a, b
    return (act.P.group().mul(x1, act.act(l1, x2)), act.L.mul(l1, l2))


def semidirect_inv(act: LAction, a):
    (x, l) = a
    linv = act.L.inv(l)
    return (act.P.group().inv(act.act(linv, x)), linv)
