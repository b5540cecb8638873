"""Membership decisions and radius computations."""

import numpy as np
import pytest

from rho_radii.errors import InputError
from rho_radii.linalg import op_norm, spectral_radius
from rho_radii.pencil import OperatorTuple
from rho_radii.radii import (
    IN,
    OUT,
    kernel_margin,
    membership_single,
    membership_single_all_conditions,
    membership_tuple,
    numerical_radius,
    sample_commuting_tuple,
    sample_commuting_tuples,
    torus_pencil_sup,
    tuple_numerical_radius,
    tuple_spectral_radius,
    w_rho,
    w_rho_tuple,
)

NILP = np.array([[0.0, 1.0], [0.0, 0.0]])


def test_membership_contraction_at_rho_1():
    v = membership_single(NILP, 1.0)
    assert v.decision == IN
    assert v.margin >= -1e-9


def test_membership_strict_contraction_has_positive_margin():
    v = membership_single(0.5 * NILP, 1.0)
    assert v.decision == IN and v.margin > 0.1


def test_membership_out_above_norm():
    v = membership_single(1.5 * NILP, 1.0)
    assert v.decision == OUT and v.margin < -0.1


def test_scalar_boundary_cases():
    # a = rho/(2-rho) is the scalar class boundary below rho = 1
    for rho in (0.3, 0.5, 0.8):
        a = np.array([[rho / (2 - rho)]])
        assert membership_single(a, rho).decision == IN
        assert membership_single(a * 1.01, rho).decision == OUT


def test_membership_rejects_bad_rho():
    with pytest.raises(InputError):
        membership_single(NILP, 0.0)


def test_kernel_margin_matches_verdict_margin():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((3, 3))
    a = a / op_norm(a)
    v = membership_single(a, 1.4)
    assert kernel_margin(a, 1.4) == pytest.approx(v.margin, abs=1e-12)


def test_numerical_radius_oracles():
    # w([[0,1],[0,0]]) = 1/2; w(normal) = spectral radius
    assert numerical_radius(NILP) == pytest.approx(0.5, abs=1e-9)
    d = np.diag([0.3, -0.9, 0.5j])
    assert numerical_radius(d) == pytest.approx(0.9, abs=1e-9)
    rng = np.random.default_rng(1)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    # direct grid oracle at a modest resolution
    oracle = max(
        np.linalg.eigvalsh((np.exp(1j * t) * a + np.exp(-1j * t) * a.conj().T) / 2).max()
        for t in np.linspace(0, 2 * np.pi, 7201)
    )
    assert numerical_radius(a) == pytest.approx(oracle, abs=1e-5)


def test_w_rho_identity_matrix():
    for rho in (0.25, 0.5, 1.0, 2.0, 4.0):
        rep = w_rho(np.eye(2), rho)
        exact = 1.0 if rho >= 1 else 2.0 / rho - 1.0
        assert rep.hi - rep.lo <= 1e-6
        assert rep.mid == pytest.approx(exact, abs=2e-6)


def test_w_rho_nilpotent_law():
    for rho in (0.5, 1.0, 2.0, 3.0):
        assert w_rho(NILP, rho).mid == pytest.approx(1.0 / rho, abs=1e-5)


def test_w_rho_interpolates_norm_and_numrad():
    rng = np.random.default_rng(2)
    for seed in range(5):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert w_rho(a, 1.0).mid == pytest.approx(op_norm(a), abs=1e-5)
        assert w_rho(a, 2.0).mid == pytest.approx(numerical_radius(a), abs=1e-5)


def test_w_rho_zero_matrix():
    rep = w_rho(np.zeros((2, 2)), 1.5)
    assert rep.lo == rep.hi == 0.0


def test_w_rho_monotone_decreasing_in_rho():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((4, 4))
    vals = [w_rho(a, r).mid for r in (0.5, 1.0, 2.0, 4.0)]
    for lo, hi in zip(vals[1:], vals[:-1]):
        assert lo <= hi + 2e-6


def test_w_rho_above_spectral_radius():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((4, 4))
    for rho in (1.0, 3.0, 8.0):
        assert w_rho(a, rho).hi >= spectral_radius(a) - 1e-6


def test_all_conditions_agree():
    rng = np.random.default_rng(5)
    for seed in range(8):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        a = a / op_norm(a) * rng.uniform(0.5, 1.5)
        for rho in (0.5, 1.0, 2.0):
            res = membership_single_all_conditions(a, rho)
            decisions = {res[k] for k in ("kernel", "psi", "phi")}
            decisions.discard("Borderline")
            assert len(decisions) <= 1, (seed, rho, res)


def test_sampled_tuples_commute_and_contract():
    for seed in range(6):
        ct = sample_commuting_tuple(3, 2, seed)
        assert ct.commutator_residual < 1e-10
        assert ct.max_norm < 1.0


def test_sample_batch_deterministic():
    b1 = sample_commuting_tuples(2, 5, seed=9)
    b2 = sample_commuting_tuples(2, 5, seed=9)
    for x, y in zip(b1, b2):
        for mx, my in zip(x.base.mats, y.base.mats):
            np.testing.assert_array_equal(mx, my)


def test_membership_tuple_single_var_matches_single():
    a = OperatorTuple((0.8 * NILP,))
    v = membership_tuple(a, 1.0)
    assert v.decision == membership_single(0.8 * NILP, 1.0).decision


def test_membership_tuple_pair_certified():
    small = OperatorTuple((0.2 * NILP, 0.2 * np.eye(2)))
    v = membership_tuple(small, 2.0)
    assert v.decision == IN and v.exactness == "Certified"


def test_membership_tuple_pair_out():
    big = OperatorTuple((3.0 * np.eye(2), 3.0 * NILP))
    v = membership_tuple(big, 1.0)
    assert v.decision == OUT


def test_membership_tuple_three_vars_necessary_only():
    t = OperatorTuple(tuple(0.1 * np.eye(2) for _ in range(3)))
    v = membership_tuple(t, 2.0)
    assert v.decision == IN and v.exactness == "NecessaryOnly"


def test_w_rho_tuple_single_var_matches_w_rho():
    rng = np.random.default_rng(6)
    a = rng.standard_normal((3, 3))
    rep_t = w_rho_tuple(OperatorTuple((a,)), 2.0)
    rep_s = w_rho(a, 2.0)
    assert rep_t.mid == pytest.approx(rep_s.mid, abs=1e-4)


def test_w_rho_tuple_scaling():
    t = OperatorTuple((0.5 * NILP, 0.3 * np.eye(2)))
    r1 = w_rho_tuple(t, 1.5).mid
    r2 = w_rho_tuple(t.scale(2.0), 1.5).mid
    assert r2 == pytest.approx(2 * r1, rel=1e-3)


def test_tuple_numerical_radius_single_var():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    got = tuple_numerical_radius(OperatorTuple((a,)))
    assert got == pytest.approx(numerical_radius(a), rel=1e-3)


def test_membership_at_2_bounds_tuple_numrad():
    t = OperatorTuple((0.3 * NILP, 0.3 * np.eye(2)))
    assert membership_tuple(t, 2.0).decision == IN
    assert tuple_numerical_radius(t) <= 1 + 1e-6


def test_tuple_spectral_radius_single_var():
    rng = np.random.default_rng(8)
    a = rng.standard_normal((3, 3))
    got = tuple_spectral_radius(OperatorTuple((a,)))
    assert got == pytest.approx(spectral_radius(a), abs=0.05 * max(1, spectral_radius(a)))
    with pytest.raises(InputError):
        tuple_spectral_radius(OperatorTuple((a,)), n_max=4)


def test_torus_pencil_sup_unitary_pair():
    from rho_radii.dilation import unitary_pencil_pair

    assert torus_pencil_sup(unitary_pencil_pair(4)) == pytest.approx(1.0, abs=1e-9)
