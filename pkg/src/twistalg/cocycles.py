"""Two-cocycles on a finite abelian group and their alternating forms.

A cohomology class is always carried by a bimultiplicative representative
alpha(x, y) = prod s_{jl}^(x_j y_l) over generator index pairs, optionally
times an explicit coboundary d(beta).  Bimultiplicativity makes the cocycle
identity hold for free, and the class is recovered from the alternating
form x ^ y -> alpha(x, y) alpha(y, x)^(-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .abelian import FinAbGroup
from .errors import BadFormOrder, NotAnAutomorphism, NotCohomologous
from .linalg import solve_mod
from .scalars import RootScalar, frobenius_inverse_power, lcm


@dataclass(frozen=True)
class AlternatingForm:
    """Values t_{jl} on generator pairs j < l; t_{lj} = t_{jl}^(-1), t_{jj} = 1."""

    group: FinAbGroup
    entries: tuple[tuple[int, int, RootScalar], ...]  # (j, l, value), j < l

    def __post_init__(self):
        seen = set()
        for j, l, t in self.entries:
            if not 0 <= j < l < self.group.rank:
                raise BadFormOrder(f"bad generator pair ({j}, {l})")
            if (j, l) in seen:
                raise BadFormOrder(f"duplicate entry for pair ({j}, {l})")
            seen.add((j, l))
            g = math.gcd(self.group.orders[j], self.group.orders[l])
            if g % t.order:
                raise BadFormOrder(
                    f"t_{j}{l} has order {t.order}, not dividing gcd {g}"
                )

    def entry(self, j: int, l: int) -> RootScalar:
        """The pairing on generators a_j ^ a_l for any j != l."""
        for jj, ll, t in self.entries:
            if (jj, ll) == (j, l):
                return t
            if (jj, ll) == (l, j):
                return t.inverse()
        return RootScalar.one()

    def value(self, x, y) -> RootScalar:
        """tau(x ^ y), extended bimultiplicatively."""
        acc = RootScalar.one()
        for j, l, t in self.entries:
            acc = acc * t ** (x[j] * y[l] - x[l] * y[j])
        return acc

    def value_exponent(self) -> int:
        """m: exponent of the group generated by the form's values."""
        out = 1
        for _, _, t in self.entries:
            out = lcm(out, t.order)
        return out

    def radical(self) -> list[tuple[int, ...]]:
        """Elements pairing trivially with everything, by enumeration."""
        gens = self.group.generators()
        return [
            x
            for x in self.group.elements()
            if all(self.value(x, g).is_one() for g in gens)
        ]

    def is_trivial(self) -> bool:
        return all(t.is_one() for _, _, t in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlternatingForm) or self.group != other.group:
            return False
        r = self.group.rank
        return all(
            self.entry(j, l) == other.entry(j, l)
            for j in range(r)
            for l in range(j + 1, r)
        )


def trivial_form(L: FinAbGroup) -> AlternatingForm:
    return AlternatingForm(L, ())


@dataclass(frozen=True)
class Cocycle2:
    """Normalised 2-cocycle: bimultiplicative matrix part plus optional
    coboundary modifier beta (a function on L with beta(1) = 1).
    """

    group: FinAbGroup
    matrix: tuple[tuple[RootScalar, ...], ...]  # s_{jl}, full rank x rank
    modifier: tuple[tuple[tuple[int, ...], RootScalar], ...] = field(default=())

    def __post_init__(self):
        r = self.group.rank
        if len(self.matrix) != r or any(len(row) != r for row in self.matrix):
            raise ValueError("matrix part must be rank x rank")
        for j in range(r):
            for l in range(r):
                g = math.gcd(self.group.orders[j], self.group.orders[l])
                if g % self.matrix[j][l].order:
                    raise BadFormOrder(
                        f"s_{j}{l} order {self.matrix[j][l].order} does not divide gcd {g}"
                    )
        if self.modifier:
            table = dict(self.modifier)
            if not table.get(self.group.identity(), RootScalar.one()).is_one():
                raise ValueError("modifier must be 1 at the identity")

    def _beta(self, x) -> RootScalar:
        if not self.modifier:
            return RootScalar.one()
        return dict(self.modifier).get(tuple(x), RootScalar.one())

    def value(self, x, y) -> RootScalar:
        acc = RootScalar.one()
        for j, row in enumerate(self.matrix):
            if x[j]:
                for l, s in enumerate(row):
                    if y[l] and not s.is_one():
                        acc = acc * s ** (x[j] * y[l])
        if self.modifier:
            b = self._beta
            g = self.group
            acc = acc * b(x) * b(y) * b(g.mul(x, y)).inverse()
        return acc

    def with_modifier(self, beta: dict) -> Cocycle2:
        return Cocycle2(self.group, self.matrix, tuple(sorted(beta.items())))


def cocycle_from_form(tau: AlternatingForm) -> Cocycle2:
    """The standard representative: s_{jl} = t_{jl} for j < l, 1 elsewhere."""
    r = tau.group.rank
    rows = []
    for j in range(r):
        row = []
        for l in range(r):
            row.append(tau.entry(j, l) if j < l else RootScalar.one())
        rows.append(tuple(row))
    return Cocycle2(tau.group, tuple(rows))


def form_from_cocycle(alpha: Cocycle2) -> AlternatingForm:
    """Antisymmetrisation x ^ y -> alpha(x, y) alpha(y, x)^(-1) on generator pairs."""
    L = alpha.group
    gens = L.generators()
    entries = []
    for j in range(L.rank):
        for l in range(j + 1, L.rank):
            t = alpha.value(gens[j], gens[l]) * alpha.value(gens[l], gens[j]).inverse()
            if not t.is_one():
                entries.append((j, l, t))
    return AlternatingForm(L, tuple(entries))


def automorphism_from_matrix(L: FinAbGroup, M) -> np.ndarray:
    """Validate an integer matrix as an automorphism x -> M x of L."""
    M = np.array(M, dtype=np.int64)
    r = L.rank
    if M.shape != (r, r):
        raise NotAnAutomorphism("matrix shape does not match the rank")
    for j in range(r):
        for l in range(r):
            if (M[j, l] * L.orders[l]) % L.orders[j]:
                raise NotAnAutomorphism("matrix does not define a homomorphism")
    imgs = {tuple(int(a) for a in (M @ np.array(x)) % L.orders) for x in L.elements()}
    if len(imgs) != L.order:
        raise NotAnAutomorphism("matrix is not bijective on elements")
    return M


def _apply_matrix(L: FinAbGroup, M: np.ndarray, x) -> tuple[int, ...]:
    return tuple(int(a) for a in (M @ np.array(x, dtype=np.int64)) % np.array(L.orders))


def _matrix_inverse_map(L: FinAbGroup, M: np.ndarray) -> np.ndarray:
    """Matrix of the inverse automorphism, read off the inverse element map."""
    back = {}
    for x in L.elements():
        back[_apply_matrix(L, M, x)] = x
    cols = [back[g] for g in L.generators()]
    return np.array(cols, dtype=np.int64).T


def twist_by_automorphism(alpha: Cocycle2, M) -> Cocycle2:
    """^phi alpha (x, y) = alpha(phi^(-1) x, phi^(-1) y) for phi given by M."""
    L = alpha.group
    M = automorphism_from_matrix(L, M)
    N = _matrix_inverse_map(L, M)
    r = L.rank
    rows = []
    for j in range(r):
        row = []
        for l in range(r):
            acc = RootScalar.one()
            for jj in range(r):
                for ll in range(r):
                    s = alpha.matrix[jj][ll]
                    if not s.is_one():
                        acc = acc * s ** (int(N[jj, j]) * int(N[ll, l]))
            row.append(acc)
        rows.append(tuple(row))
    modifier = tuple(
        sorted((tuple(_apply_matrix(L, M, x)), v) for x, v in alpha.modifier)
    ) if alpha.modifier else ()
    # beta'(x) = beta(phi^(-1) x): the table is re-keyed through phi
    return Cocycle2(L, tuple(rows), modifier)


def frobenius_twist_class(alpha: Cocycle2, q: int) -> Cocycle2:
    """alpha^(q): every value taken to its q-th root (exponent times q^(-1))."""
    rows = tuple(
        tuple(frobenius_inverse_power(s, q) for s in row) for row in alpha.matrix
    )
    modifier = tuple(
        (x, frobenius_inverse_power(v, q)) for x, v in alpha.modifier
    )
    return Cocycle2(alpha.group, rows, modifier)


def verify_autfrob(
    L: FinAbGroup, alpha: Cocycle2, p: int
) -> tuple[bool, AlternatingForm, AlternatingForm]:
    """Check that twisting by x -> x^p agrees with the p^2 Frobenius twist
    at the level of alternating forms.  False signals an implementation bug.
    """
    if math.gcd(p, L.order) != 1:
        raise NotAnAutomorphism("x -> x^p is not an automorphism here")
    M = (p * np.eye(L.rank, dtype=np.int64)) % np.array(L.orders) if L.rank else np.zeros((0, 0), dtype=np.int64)
    lhs = form_from_cocycle(twist_by_automorphism(alpha, M))
    rhs = form_from_cocycle(frobenius_twist_class(alpha, p * p))
    return lhs == rhs, lhs, rhs


def solve_function_equation(
    elements: list,
    mul,
    delta,
    value_exponent_bound: int,
) -> dict:
    """Solve d(beta)(x, y) := beta(x) beta(y) beta(xy)^(-1) = delta(x, y) for a
    function beta on the given elements, by linear algebra on exponents
    modulo value_exponent_bound.  Returns the value table, or raises
    NotCohomologous when the system is inconsistent.
    """
    elems = sorted(elements)
    if value_exponent_bound == 1:
        table = {x: RootScalar.one() for x in elems}
        return table
    index = {x: i for i, x in enumerate(elems)}
    n = value_exponent_bound
    rows = []
    rhs = []
    for x in elems:
        for y in elems:
            d = delta(x, y)
            if n % d.order:
                raise NotCohomologous(
                    f"value order {d.order} does not divide the solve modulus {n}"
                )
            row = np.zeros(len(elems), dtype=np.int64)
            row[index[x]] += 1
            row[index[y]] += 1
            row[index[mul(x, y)]] -= 1
            rows.append(row)
            rhs.append(d.scaled_exponent(n))
    A = np.array(rows, dtype=np.int64)
    b = np.array(rhs, dtype=np.int64)
    x = solve_mod(A, b, n)
    if x is None:
        raise NotCohomologous("no coboundary witness exists at this modulus")
    table = {e: RootScalar(n, int(x[index[e]])) for e in elems}
    for u in elems:
        for v in elems:
            got = table[u] * table[v] * table[mul(u, v)].inverse()
            assert got == delta(u, v)
    return table


def solve_coboundary(alpha1: Cocycle2, alpha2: Cocycle2) -> dict:
    """An explicit beta with d(beta) = alpha1 / alpha2.

    The necessary condition (equal alternating forms) is checked first; the
    witness may take values of order up to m * exp(L), which is always enough
    for cocycles with values in roots of unity.
    """
    L = alpha1.group
    if L != alpha2.group:
        raise ValueError("cocycles live on different groups")
    if form_from_cocycle(alpha1) != form_from_cocycle(alpha2):
        raise NotCohomologous("alternating forms differ; not in the same class")
    elems = L.elements()

    def delta(x, y):
        return alpha1.value(x, y) * alpha2.value(x, y).inverse()

    value_exp = 1
    for x in elems:
        for y in elems:
            value_exp = lcm(value_exp, delta(x, y).order)
    bound = value_exp * L.exponent if value_exp > 1 else 1
    return solve_function_equation(elems, L.mul, delta, bound)
