"""Dilation verification, constructors, and divergence certificates."""

import math

import numpy as np
import pytest

from rho_radii.dilation import (
    build_nonsimilar_pair,
    build_shift_unitary_rho_dilation,
    build_staircase_isometric_dilation,
    build_staircase_pair,
    cyclic_shift,
    divergence_probe,
    nilpotent_jump,
    popescu_conditions,
    torus_unitarity,
    unitary_pencil_pair,
    verify_rho_dilation,
    verify_similarity,
    verify_uniform_rho_dilation,
)
from rho_radii.errors import CapacityError, InputError
from rho_radii.linalg import op_norm
from rho_radii.pencil import OperatorTuple, eval_pencil


def test_cyclic_shift_is_unitary():
    u = cyclic_shift(5)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(5), atol=0)
    np.testing.assert_allclose(np.linalg.matrix_power(u, 5), np.eye(5), atol=0)


def test_shift_dilation_valid_window():
    # B^n = rho * P U^n |X must hold exactly for n <= M - 2
    for rho in (0.5, 1.0, 2.0):
        big, e = build_shift_unitary_rho_dilation(rho, 8)
        small = OperatorTuple((nilpotent_jump(rho),))
        wit = verify_rho_dilation(small, big, e, rho, t_max=6)
        assert wit.max_residual == 0.0
        assert wit.passed


def test_shift_dilation_wraparound_fails():
    # at n = M - 1 the cyclic return spoils the identity (documented window)
    rho = 2.0
    big, e = build_shift_unitary_rho_dilation(rho, 8)
    small = OperatorTuple((nilpotent_jump(rho),))
    wit = verify_rho_dilation(small, big, e, rho, t_max=7)
    assert wit.max_residual > 0.1
    assert not wit.passed


def test_shift_dilation_small_m_rejected():
    with pytest.raises(CapacityError):
        build_shift_unitary_rho_dilation(1.0, 4)


def test_uniform_verifier_word_cap():
    big, e = build_shift_unitary_rho_dilation(1.0, 8)
    small = OperatorTuple((nilpotent_jump(1.0),))
    with pytest.raises(CapacityError):
        verify_uniform_rho_dilation(small, big, e, 1.0, n_max=7)


def test_torus_unitarity_positive_case():
    cert = torus_unitarity(unitary_pencil_pair(4))
    assert cert.passed


def test_torus_unitarity_negative_case():
    cert = torus_unitarity(build_staircase_pair(1.0))
    assert not cert.passed


def test_staircase_pair_torus_norm():
    # || zeta A || = sqrt(2) * rho at every torus point
    for rho in (1.0, 2.5):
        pair = build_staircase_pair(rho)
        rng = np.random.default_rng(0)
        for _ in range(10):
            zeta = np.exp(1j * rng.uniform(0, 2 * np.pi, 2))
            assert op_norm(eval_pencil(pair, zeta)) == pytest.approx(math.sqrt(2) * rho, abs=1e-12)


def test_staircase_isometric_dilation_popescu():
    rho = 2.0
    v, e, interior = build_staircase_isometric_dilation(rho, 8, depth=4)
    cert = popescu_conditions(v, interior)
    assert cert.residual_isometry < 1e-12
    assert cert.residual_orthogonality < 1e-12
    assert cert.range_sum_min_eig >= -1e-12
    assert cert.consistency_flag


def test_staircase_uniform_dilation_identity():
    for rho in (1.0, 2.0):
        pair = build_staircase_pair(rho)
        v, e, _ = build_staircase_isometric_dilation(rho, 8, depth=4)
        wit = verify_uniform_rho_dilation(pair, v, e, rho, n_max=3)
        assert wit.max_residual < 1e-12


def test_verify_similarity_conjugation():
    rng = np.random.default_rng(1)
    s = rng.standard_normal((3, 3)) + np.eye(3) * 2
    a = OperatorTuple(tuple(rng.standard_normal((3, 3)) for _ in range(2)))
    b = OperatorTuple(tuple(s @ m @ np.linalg.inv(s) for m in a.mats))
    rep = verify_similarity(a, b, s)
    assert rep.residual < 1e-10
    assert rep.conditioning >= 1.0


def test_verify_similarity_singular_s_rejected():
    a = OperatorTuple((np.eye(2),))
    with pytest.raises(InputError):
        verify_similarity(a, a, np.zeros((2, 2)))


def test_divergence_probe_classifications():
    grow = np.diag([1.2, 0.3])
    assert divergence_probe(grow).classification == "Diverges"
    shrink = np.diag([0.5, 0.1])
    assert divergence_probe(shrink).classification == "Bounded"
    nil = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert divergence_probe(nil).classification == "Bounded"


def test_divergence_probe_exponent():
    lam = 1.3
    probe = divergence_probe(np.diag([lam, 0.2]))
    assert probe.exponent == pytest.approx(math.log(lam), rel=0.05)


def test_nonsimilar_pair_product_structure():
    eps = 0.1
    pair = build_nonsimilar_pair(eps)
    prod = (pair.mats[0] + pair.mats[1]) @ (pair.mats[0] - pair.mats[1])
    c2 = (1 + eps) ** 2
    expected = np.array([
        [-c2, 0, 0],
        [0, c2 / 2, -c2 / 2],
        [0, -c2 / 2, c2 / 2],
    ])
    np.testing.assert_allclose(prod, expected, atol=1e-14)
    eigs = sorted(np.linalg.eigvals(prod).real)
    np.testing.assert_allclose(eigs, [-c2, 0.0, c2], atol=1e-12)


def test_nonsimilar_pair_rejects_negative_eps():
    with pytest.raises(InputError):
        build_nonsimilar_pair(-0.1)


def test_embedding_compression_of_staircase():
    # the dilation embedding recovers the staircase pair at word length 1
    rho = 1.5
    pair = build_staircase_pair(rho)
    v, e, _ = build_staircase_isometric_dilation(rho, 8, depth=3)
    wit = verify_uniform_rho_dilation(pair, v, e, rho, n_max=1)
    assert wit.max_residual < 1e-12
