import numpy as np
import pytest

from twistalg.abelian import FinAbGroup, LAction, PGroupData, semidirect_mul
from twistalg.errors import MultiplicativityFails
from twistalg.frobenius import (
    apply_tau,
    build_phi,
    build_twist_isomorphism,
    sigma_apply,
    solve_tau,
)
from twistalg.linalg import mat_pow_mod
from twistalg.pipeline import frobenius_checks, inject_fault


def test_solve_tau_identity_when_p_fixes_l(golden_builds):
    b = golden_builds["quantum_plane"]  # 5 = 1 mod 4
    assert [t.tolist() for t in b.taus] == [[[1, 0], [0, 1]]]
    s3 = golden_builds["s3"]  # 3 = 1 mod 2
    assert [t.tolist() for t in s3.taus] == [[[1]]]


def test_solve_tau_block_case():
    # tau conjugates the order-3 matrix to its square over F2
    P = PGroupData(2, ((1, 4),))
    L = FinAbGroup((3, 3))
    M = [[0, 1], [1, 1]]
    I2 = [[1, 0], [0, 1]]
    blk = lambda A, B: [
        [A[0][0], A[0][1], 0, 0],
        [A[1][0], A[1][1], 0, 0],
        [0, 0, B[0][0], B[0][1]],
        [0, 0, B[1][0], B[1][1]],
    ]
    act = LAction(P, L, [[blk(M, I2)], [blk(I2, M)]])
    (tau,) = solve_tau(P, act)
    for gen_mats in act.matrices:
        m = gen_mats[0]
        assert np.array_equal((tau @ m) % 2, (mat_pow_mod(m, 2, 2) @ tau) % 2)


def test_solve_tau_singer_case():
    # over F3 the Singer element of order 8: tau conjugates M to M^3
    P = PGroupData(3, ((1, 2),))
    L = FinAbGroup((8,))
    M = np.array([[0, 1], [1, 1]])
    act = LAction(P, L, [[M]])
    (tau,) = solve_tau(P, act)
    assert np.array_equal((tau @ M) % 3, (mat_pow_mod(M, 3, 3) @ tau) % 3)


def test_build_phi_is_automorphism(golden_builds, assorted_builds):
    for b in list(golden_builds.values()) + assorted_builds:
        phi = build_phi(b.P, b.act, b.taus)
        Pg = b.P.group()
        # spot-check multiplicativity beyond the generating set
        import random

        rng = random.Random(0)
        els = [(x, l) for x in Pg.elements()[:8] for l in b.L.elements()[:4]]
        for _ in range(24):
            a, c = rng.choice(els), rng.choice(els)
            assert phi(semidirect_mul(b.act, a, c)) == semidirect_mul(
                b.act, phi(a), phi(c)
            )


def test_frobenius_coboundary_witness(golden_builds, assorted_builds):
    for b in list(golden_builds.values()) + assorted_builds:
        p = b.P.p
        # the raw witness certifies ^phi(alpha) ~ alpha^(p^2) pointwise
        L = b.L
        from twistalg.cocycles import frobenius_twist_class, twist_by_automorphism

        M = (p * np.eye(L.rank, dtype=np.int64)) % np.array(L.orders) if L.rank else np.zeros((0, 0), dtype=np.int64)
        twisted = twist_by_automorphism(b.ext.cocycle, M)
        target = frobenius_twist_class(b.ext.cocycle, p * p)
        for x in L.elements():
            for y in L.elements():
                lhs = b.beta_raw[x] * b.beta_raw[y] * b.beta_raw[L.mul(x, y)].inverse()
                rhs = twisted.value(x, y) * target.value(x, y).inverse()
                assert lhs == rhs


def test_sigma_full_battery(golden_builds, assorted_builds):
    for b in list(golden_builds.values()) + assorted_builds:
        checks, witness = frobenius_checks(b)
        assert all(c.passed for c in checks), [c for c in checks if not c.passed]
        assert witness is not None
        # sigma on a vector: semilinearity on a two-term combination
        spec = b.spec
        u = {0: 1, b.algebra.dim - 1: spec.generator}
        lhs = sigma_apply(witness, b.algebra, u)
        rhs = b.algebra.vec_add(
            sigma_apply(witness, b.algebra, {0: 1}),
            b.algebra.vec_scale(
                spec.pow(spec.generator, spec.p**2),
                sigma_apply(witness, b.algebra, {b.algebra.dim - 1: 1}),
            ),
        )
        assert b.algebra.vec_eq(lhs, rhs)


def test_corrupt_beta_fails(golden_builds):
    from instances import golden_instances
    from twistalg.pipeline import build_from_problem

    pf = golden_instances()["c2_4_by_c3_2"]
    b = inject_fault(build_from_problem(pf), "corrupt-beta")
    with pytest.raises(MultiplicativityFails):
        build_twist_isomorphism(
            b.algebra, b.P, b.act, b.ext, b.taus, b.beta, b.beta_raw
        )
    checks, witness = frobenius_checks(b)
    assert witness is None
    assert any(c.name == "sigma-multiplicative" and not c.passed for c in checks)


def test_apply_tau_respects_components():
    P = PGroupData(2, ((2, 1), (1, 2)))
    taus = (np.array([[3]]), np.array([[0, 1], [1, 0]]))
    assert apply_tau(P, taus, (1, 1, 0)) == (3, 0, 1)
