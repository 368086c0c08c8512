"""The central extension H of L by Z = mu_m attached to an alternating form,
and the complete character theory of such class-2 groups: the characters of
Z(H) over the distinguished faithful character of Z, their deterministic
extensions, induced irreducible characters, and the action compatibility.

Character values here stay exact: roots of unity for linear characters,
cyclotomic integers for induced ones.  No field embedding happens in this
module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .abelian import (
    AbCharacter,
    FinAbGroup,
    SubgroupEmbedding,
    restricted_characters,
    solve_character_extension,
    subgroup_closure,
)
from .cocycles import AlternatingForm, cocycle_from_form, solve_function_equation
from .errors import BadForm, NotIntegralM
from .scalars import CycInt, RootScalar, lcm


@dataclass(frozen=True)
class ChiData:
    """The faithful character of Z = mu_m: (z, 1) -> zeta_m^z."""

    m: int

    def value(self, h) -> RootScalar:
        z, x = h
        assert not any(x), "chi is only defined on Z"
        return RootScalar(self.m, z)


class ExtGroup:
    """Central extension of L by Z/m with multiplication twisted by the
    standard cocycle of an alternating form.

    Elements are pairs (z, x) with z mod m and x an L-tuple; the fixed
    enumeration is lexicographic in (z, x).
    """

    def __init__(self, L: FinAbGroup, form: AlternatingForm):
        if form.group != L:
            raise BadForm("form does not live on the given group")
        self.L = L
        self.form = form
        self.m = form.value_exponent()
        self.cocycle = cocycle_from_form(form)
        self.chi = ChiData(self.m)
        self.order = self.m * L.order
        self._radical = form.radical()
        self._center = sorted((z, x) for z in range(self.m) for x in self._radical)
        self._verify()

    # -- group arithmetic ----------------------------------------------------

    def identity(self):
        return (0, self.L.identity())

    def _log_alpha(self, x, y) -> int:
        return self.cocycle.value(x, y).scaled_exponent(self.m)

    def mul(self, a, b):
        (z1, x1), (z2, x2) = a, b
        return ((z1 + z2 + self._log_alpha(x1, x2)) % self.m, self.L.mul(x1, x2))

    def inv(self, a):
        z, x = a
        xi = self.L.inv(x)
        return ((-z - self._log_alpha(x, xi)) % self.m, xi)

    def commutator(self, a, b):
        return self.mul(self.mul(a, b), self.inv(self.mul(b, a)))

    def element_order(self, a) -> int:
        k, cur = 1, a
        while cur != self.identity():
            cur = self.mul(cur, a)
            k += 1
        return k

    def elements(self) -> list:
        return [(z, x) for z in range(self.m) for x in self.L.elements()]

    def z_elements(self) -> list:
        return [(z, self.L.identity()) for z in range(self.m)]

    def center(self) -> list:
        return list(self._center)

    def radical(self) -> list:
        return list(self._radical)

    def generators(self) -> list:
        gens = [(1 % self.m, self.L.identity())] if self.m > 1 else []
        gens += [(0, g) for g in self.L.generators()]
        return gens

    # -- construction checks ---------------------------------------------------

    def _verify(self):
        # commutators of generators generate [H, H]; commutators are bilinear
        # in a class-2 group, so generator pairs suffice
        gens = self.generators()
        comm_z = {0}
        for i, g in enumerate(gens):
            for h in gens[i + 1 :]:
                c = self.commutator(g, h)
                assert not any(c[1]), "commutator left the central subgroup"
                comm_z.add(c[0])
        derived = subgroup_closure(FinAbGroup((self.m,)), [(z,) for z in comm_z])
        self.derived_is_z = len(derived) == self.m
        # the standard representative makes [H, H] = Z whenever m > 1
        assert self.derived_is_z or self.m == 1
        # center = Z x radical(form): each candidate must commute with generators
        for h in self._center:
            for g in gens:
                assert self.commutator(h, g) == self.identity(), "center description failed"
        # and nothing outside the radical is central
        for x in self.L.generators():
            if x not in self._radical and all(
                self.form.value(x, y).is_one() for y in self.L.generators()
            ):
                raise AssertionError("radical computation inconsistent")

    def chi_value(self, z: int) -> RootScalar:
        return RootScalar(self.m, z)


def build_extension(L: FinAbGroup, form: AlternatingForm) -> ExtGroup:
    """Spec constructor; |H| = m |L| with Z <= [H, H] whenever m > 1."""
    return ExtGroup(L, form)


def rho(ext: ExtGroup, g) -> AbCharacter:
    """The commutator character of g, written on L (it kills Z(H)).

    The convention is fixed by the cut-algebra identity g h = rho(g)(h)^(-1) h g,
    i.e. rho(g)(h) = chi(h g h^(-1) g^(-1)); it depends only on the L-parts
    and equals the form pairing, so the exponents read off directly.
    """
    _, x = g
    exps = []
    for j, a in enumerate(ext.L.generators()):
        val = ext.form.value(a, x)
        exps.append(val.scaled_exponent(ext.L.orders[j]))
    return AbCharacter(ext.L, tuple(exps))


def _subgroup_exponent(L: FinAbGroup, elements) -> int:
    return reduce(lcm, (L.element_order(x) for x in elements), 1)


def _minimal_generators(L: FinAbGroup, elements: list) -> list:
    gens: list = []
    closure = {L.identity()}
    for x in sorted(elements):
        if x not in closure:
            gens.append(x)
            closure = set(subgroup_closure(L, gens))
    return gens


@dataclass
class PhiFamily:
    """All linear characters of Z(H) over chi, with distinguished phi_0 and
    deterministic linear extensions xi_phi of phi phi_0^(-1) to H.

    phis are value tables on the sorted center; xi are characters of L
    (equivalently of H, trivial on Z).
    """

    ext: ExtGroup
    center_elements: list
    phis: list[dict]
    xis: list[AbCharacter]
    phi0_index: int

    def __len__(self) -> int:
        return len(self.phis)

    def phi_key(self, table: dict) -> tuple:
        return tuple(table[h] for h in self.center_elements)

    def index_of(self, table: dict) -> int:
        key = self.phi_key(table)
        for i, p in enumerate(self.phis):
            if self.phi_key(p) == key:
                return i
        raise KeyError("character does not lie over chi")

    def translate(self, idx: int, character: AbCharacter) -> int:
        """Index of phi_idx * (character restricted to Z(H))."""
        phi = self.phis[idx]
        table = {h: phi[h] * character(h[1]) for h in self.center_elements}
        return self.index_of(table)

    def value_modulus(self) -> int:
        """A common root order for every character value in the family."""
        n = self.ext.m * self.ext.L.exponent
        return max(n, 1)


def chars_over_chi(ext: ExtGroup) -> PhiFamily:
    """Enumerate Irr(Z(H) | chi) with deterministic extensions xi.

    A particular solution on the radical twists the enumeration of the dual
    of the radical; each xi is the lexicographically least character of L
    restricting to the matching quotient character.
    """
    L = ext.L
    rad = ext.radical()
    center = ext.center()
    # particular character of Z(H): (z, x) -> zeta_m^z * phi0_tilde(x)
    bound = ext.m * _subgroup_exponent(L, rad)
    phi0_tilde = solve_function_equation(
        rad,
        L.mul,
        lambda x, y: ext.cocycle.value(x, y),
        bound if ext.m > 1 else 1,
    )
    thetas = restricted_characters(L, rad)
    rad_gens = _minimal_generators(L, rad)
    sub = FinAbGroup(tuple(L.element_order(g) for g in rad_gens))
    emb = SubgroupEmbedding(sub, L, tuple(rad_gens))
    phis = []
    xis = []
    for theta in thetas:
        table = {}
        for z, x in center:
            table[(z, x)] = RootScalar(ext.m, z) * phi0_tilde[x] * theta[x]
        phis.append(table)
        exps = tuple(
            theta[g].scaled_exponent(d) for g, d in zip(rad_gens, sub.orders)
        )
        xis.append(solve_character_extension(emb, AbCharacter(sub, exps)))
    fam = PhiFamily(ext, center, phis, xis, 0)
    # family invariants are cheap; enforce them here so downstream can trust them
    assert len(phis) == len(rad)
    assert xis[0].is_trivial()
    for table in phis:
        for h1 in center:
            for h2 in center:
                assert table[ext.mul(h1, h2)] == table[h1] * table[h2]
        for z in range(ext.m):
            assert table[(z, L.identity())] == RootScalar(ext.m, z)
    for theta, xi in zip(thetas, xis):
        for x in rad:
            assert xi(x) == theta[x]
    return fam


def max_abelian_subgroup(ext: ExtGroup) -> list:
    """A maximal abelian subgroup containing Z(H): the preimage of a greedily
    grown maximal isotropic subgroup of L.  Maximality is certified by
    C_H(A) = A over the whole enumeration.
    """
    L = ext.L
    gens: list = []
    closure = [L.identity()]
    for x in L.elements():
        if all(ext.form.value(x, y).is_one() for y in closure):
            if x not in set(closure):
                gens.append(x)
                closure = subgroup_closure(L, gens)
    iso = set(closure)
    A = sorted((z, x) for z in range(ext.m) for x in sorted(iso))
    a_set = set(A)
    ident = ext.identity()
    for a in A:
        for b in A:
            assert ext.commutator(a, b) == ident, "A is not abelian"
    for h in ext.elements():
        if all(ext.commutator(h, a) == ident for a in A):
            assert h in a_set, "C_H(A) exceeds A"
    return A


@dataclass
class CharRow:
    """An irreducible character of H as an exact value table."""

    phi_index: int
    degree: int
    modulus: int
    table: dict

    def inner_with(self, other: CharRow, ext: ExtGroup) -> CycInt:
        acc = CycInt.zero(self.modulus)
        for h, v in self.table.items():
            acc = acc + v * other.table[ext.inv(h)]
        return acc


def _extend_phi_to_abelian(ext: ExtGroup, fam: PhiFamily, phi_idx: int, A: list):
    """A linear character psi of A with psi|Z(H) = phi."""
    L = ext.L
    iso = sorted({x for _, x in A})
    bound = ext.m * _subgroup_exponent(L, iso)
    psi_tilde = solve_function_equation(
        iso,
        L.mul,
        lambda x, y: ext.cocycle.value(x, y),
        bound if ext.m > 1 else 1,
    )
    rad = ext.radical()
    phi = fam.phis[phi_idx]
    gamma = {x: phi[(0, x)] * psi_tilde[x].inverse() for x in rad}
    gamma_bar = None
    for cand in restricted_characters(L, iso):
        if all(cand[x] == gamma[x] for x in rad):
            gamma_bar = cand
            break
    assert gamma_bar is not None, "character extension within A must exist"
    psi = {}
    for z, x in A:
        psi[(z, x)] = RootScalar(ext.m, z) * psi_tilde[x] * gamma_bar[x]
    for h1 in A:
        for h2 in A:
            assert psi[ext.mul(h1, h2)] == psi[h1] * psi[h2]
    for h in fam.center_elements:
        assert psi[h] == phi[h]
    return psi


def induced_irreducible(ext: ExtGroup, fam: PhiFamily, phi_idx: int) -> CharRow:
    """tau_phi: extend phi to a maximal abelian subgroup and induce to H.

    Conjugation shifts only the central coordinate, so the sum over H
    collapses to m times a sum over L; the resulting table is exact.
    """
    A = max_abelian_subgroup(ext)
    psi = _extend_phi_to_abelian(ext, fam, phi_idx, A)
    modulus = fam.value_modulus()
    table: dict = {}
    for h in ext.elements():
        z, x = h
        acc = CycInt.zero(modulus)
        for xg in ext.L.elements():
            shift = ext.form.value(xg, x).scaled_exponent(ext.m)
            conj = ((z + shift) % ext.m, x)
            val = psi.get(conj)
            if val is not None:
                acc = acc + CycInt.from_root(modulus, val)
        acc = acc.scale(ext.m)  # the z_g coordinate never moves the conjugate
        coeffs = []
        for c in acc.coeffs:
            if c % len(A):
                raise NotIntegralM("induced values are not integral")
            coeffs.append(c // len(A))
        table[h] = CycInt(modulus, coeffs)
    degree = table[ext.identity()].as_int()
    sq = ext.order // len(fam.center_elements)
    if degree is None or degree * degree != sq:
        raise NotIntegralM(f"degree {degree} does not square to |H : Z(H)| = {sq}")
    return CharRow(phi_idx, degree, modulus, table)


def induce_from_center(ext: ExtGroup, fam: PhiFamily, phi_idx: int) -> dict:
    """phi induced from Z(H) to H, for the comparison with m tau_phi."""
    modulus = fam.value_modulus()
    phi = fam.phis[phi_idx]
    table = {}
    for h in ext.elements():
        z, x = h
        acc = CycInt.zero(modulus)
        for xg in ext.L.elements():
            shift = ext.form.value(xg, x).scaled_exponent(ext.m)
            conj = ((z + shift) % ext.m, x)
            val = phi.get(conj)
            if val is not None:
                acc = acc + CycInt.from_root(modulus, val)
        acc = acc.scale(ext.m)
        coeffs = []
        for c in acc.coeffs:
            assert c % len(fam.center_elements) == 0
            coeffs.append(c // len(fam.center_elements))
        table[h] = CycInt(modulus, coeffs)
    return table


def verify_class2_action(
    ext: ExtGroup, fam: PhiFamily, eta: AbCharacter, phi_idx: int
) -> bool:
    """The compatibility law: tau_{(eta|Z(H)) phi} = eta tau_phi, plus the
    fixed-point criterion (equality iff eta restricts trivially to Z(H)).
    """
    target = fam.translate(phi_idx, eta)
    lhs = induced_irreducible(ext, fam, target)
    base = induced_irreducible(ext, fam, phi_idx)
    modulus = base.modulus
    ok = True
    for h, v in base.table.items():
        scaled = CycInt.from_root(modulus, eta(h[1])) * v
        if scaled != lhs.table[h]:
            ok = False
            break
    trivial_on_center = all(eta(x).is_one() for x in ext.radical())
    fixes = target == phi_idx
    return ok and (fixes == trivial_on_center)
