import random

from twistalg.abelian import FinAbGroup, dual_group
from twistalg.cocycles import AlternatingForm, trivial_form
from twistalg.extension import (
    build_extension,
    chars_over_chi,
    induce_from_center,
    induced_irreducible,
    max_abelian_subgroup,
    rho,
    verify_class2_action,
)
from twistalg.scalars import CycInt, RootScalar


def ext_c4c4():
    L = FinAbGroup((4, 4))
    return build_extension(L, AlternatingForm(L, ((0, 1, RootScalar(4, 1)),)))


def ext_c3c3():
    L = FinAbGroup((3, 3))
    return build_extension(L, AlternatingForm(L, ((0, 1, RootScalar(3, 1)),)))


def ext_degenerate():
    L = FinAbGroup((4, 2))
    return build_extension(L, AlternatingForm(L, ((0, 1, RootScalar(2, 1)),)))


def test_build_extension_trivial_form():
    L = FinAbGroup((2,))
    H = build_extension(L, trivial_form(L))
    assert H.m == 1 and H.order == 2
    assert len(chars_over_chi(H)) == 2


def test_build_extension_c4c4_by_enumeration():
    H = ext_c4c4()
    assert H.order == 64 and H.m == 4
    els = H.elements()
    ident = H.identity()
    # center by full enumeration
    true_center = [h for h in els if all(H.commutator(h, g) == ident for g in els)]
    assert true_center == H.center()
    assert len(true_center) == 4
    # commutator subgroup = Z by enumerating all commutators
    comms = {H.commutator(g, h) for g in els for h in els}
    assert comms == {(z, H.L.identity()) for z in range(4)}
    assert H.derived_is_z


def test_build_extension_c3c3_by_enumeration():
    H = ext_c3c3()
    assert H.order == 27
    els = H.elements()
    ident = H.identity()
    assert [h for h in els if all(H.commutator(h, g) == ident for g in els)] == H.center()
    assert len(H.center()) == 3
    # exponent 3 (extraspecial of exponent p for the standard representative)
    orders = {H.element_order(h) for h in els if h != ident}
    assert orders == {3}


def test_group_associativity_sampled():
    H = ext_c4c4()
    els = H.elements()
    rng = random.Random(0)
    for _ in range(3000):
        a, b, c = rng.choice(els), rng.choice(els), rng.choice(els)
        assert H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c))
        assert H.mul(a, H.inv(a)) == H.identity()


def test_rho_kernel_image_and_multiplicativity():
    for H in (ext_c4c4(), ext_degenerate()):
        els = H.elements()
        kernel = [h for h in els if rho(H, h).is_trivial()]
        assert sorted(kernel) == H.center()
        image = {rho(H, h).exps for h in els}
        assert len(image) == H.order // len(H.center())
        rng = random.Random(1)
        for _ in range(200):
            g1, g2 = rng.choice(els), rng.choice(els)
            assert rho(H, H.mul(g1, g2)) == rho(H, g1) * rho(H, g2)
        for h in H.center():
            assert rho(H, h).is_trivial()


def test_chars_over_chi_counts():
    assert len(chars_over_chi(ext_c4c4())) == 1
    assert len(chars_over_chi(ext_c3c3())) == 1
    fam = chars_over_chi(ext_degenerate())
    # radical of the order-2 form on C4 x C2 is {(0,0), (2,0)}
    assert len(fam) == 2
    H = fam.ext
    for table in fam.phis:
        for z in range(H.m):
            assert table[(z, H.L.identity())] == RootScalar(H.m, z)


def test_xi_extensions_restrict_correctly():
    fam = chars_over_chi(ext_degenerate())
    H = fam.ext
    assert fam.xis[0].is_trivial()
    for i, xi in enumerate(fam.xis):
        for x in H.radical():
            assert xi(x) == fam.phis[i][(0, x)] * fam.phis[0][(0, x)].inverse()


def test_max_abelian_subgroup():
    H = ext_c4c4()
    A = max_abelian_subgroup(H)
    assert len(A) == 16
    H3 = ext_c3c3()
    assert len(max_abelian_subgroup(H3)) == 9
    # for abelian H the subgroup is everything
    L = FinAbGroup((2, 2))
    Ht = build_extension(L, trivial_form(L))
    assert len(max_abelian_subgroup(Ht)) == Ht.order


def test_induced_irreducible_c4c4():
    H = ext_c4c4()
    fam = chars_over_chi(H)
    row = induced_irreducible(H, fam, 0)
    assert row.degree == 4
    center = set(fam.center_elements)
    for h, v in row.table.items():
        if h in center:
            assert v == CycInt.from_root(row.modulus, fam.phis[0][h]).scale(4)
        else:
            assert v.is_zero()
    assert row.inner_with(row, H).as_int() == H.order
    ind = induce_from_center(H, fam, 0)
    for h in H.elements():
        assert ind[h] == row.table[h].scale(row.degree)


def test_induced_rows_orthonormal_and_injective():
    H = ext_degenerate()
    fam = chars_over_chi(H)
    rows = [induced_irreducible(H, fam, i) for i in range(len(fam))]
    assert all(r.degree == 2 for r in rows)
    for i, ri in enumerate(rows):
        for j, rj in enumerate(rows):
            expected = H.order if i == j else 0
            assert ri.inner_with(rj, H).as_int() == expected


def test_degree_squares_to_index():
    for H in (ext_c4c4(), ext_c3c3(), ext_degenerate()):
        fam = chars_over_chi(H)
        m_sq = H.order // len(fam.center_elements)
        for i in range(len(fam)):
            assert induced_irreducible(H, fam, i).degree ** 2 == m_sq


def test_class2_action_all_eta():
    H = ext_degenerate()
    fam = chars_over_chi(H)
    for eta in dual_group(H.L):
        for i in range(len(fam)):
            assert verify_class2_action(H, fam, eta, i)


def test_class2_action_nondegenerate():
    H = ext_c4c4()
    fam = chars_over_chi(H)
    for eta in dual_group(H.L):
        assert verify_class2_action(H, fam, eta, 0)
