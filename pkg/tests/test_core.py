import numpy as np
import pytest

from twolevel import core
from twolevel.errors import DimMismatch, InvalidInput, NotUnitary

from util import haar_unitary


def test_operator_norm_zero():
    assert core.operator_norm(np.zeros((3, 2))) == 0.0
    assert core.operator_norm(np.zeros((1, 1))) == 0.0


def test_operator_norm_diagonal_exact():
    assert core.operator_norm(np.diag([2.0, 1.0])) == 2.0
    assert core.operator_norm(np.diag([-3.0, 1.0j])) == 3.0


def test_operator_norm_sigma_x_minus_sigma_z():
    a = np.array([[-1.0, 1.0], [1.0, 1.0]])
    # Oracle: A^dag A = 2 I, so the only singular value is sqrt(2).
    assert np.allclose(a.conj().T @ a, 2.0 * np.eye(2))
    assert abs(core.operator_norm(a) - np.sqrt(2.0)) < 1e-14


def test_operator_norm_rejects_non_finite():
    with pytest.raises(InvalidInput):
        core.operator_norm(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(InvalidInput):
        core.operator_norm(np.array([[np.inf, 0.0], [0.0, 1.0]]))


def test_operator_norm_unitary_invariance():
    rng = np.random.default_rng(10)
    for _ in range(25):
        n = int(rng.integers(2, 9))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        u = haar_unitary(n, rng)
        v = haar_unitary(n, rng)
        assert abs(core.operator_norm(u @ a @ v) - core.operator_norm(a)) <= 1e-10


def test_operator_norm_submultiplicative():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(2, 9))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        assert core.operator_norm(a @ b) <= core.operator_norm(a) * core.operator_norm(b) + 1e-10


def test_hs_inner_zero():
    z = np.zeros((3, 3))
    assert core.hs_inner(z, z) == 0.0


def test_hs_inner_hand_values():
    x = 1j * np.diag([1.0, -1.0])
    # (1/2) Tr(X^dag X) = (1/2) Tr(diag(1, 1)) = 1.
    assert abs(core.hs_inner(x, x) - 1.0) < 1e-14
    t = core.pauli_generator("x")
    # (1/2) Tr(P^2)/4 with Tr(sigma_x^2) = 2 gives 1/4.
    assert abs(core.hs_inner(t, t) - 0.25) < 1e-14


def test_hs_inner_dim_mismatch():
    with pytest.raises(DimMismatch):
        core.hs_inner(np.zeros((2, 2)), np.zeros((3, 3)))


def test_hs_inner_positive_definite():
    rng = np.random.default_rng(16)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        x = a - a.conj().T
        assert core.hs_inner(x, x) > 0.0


def test_hs_inner_ad_invariance():
    rng = np.random.default_rng(12)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        x = a - a.conj().T
        y = b - b.conj().T
        w = haar_unitary(n, rng)
        lhs = core.hs_inner(w @ x @ w.conj().T, w @ y @ w.conj().T)
        assert abs(lhs - core.hs_inner(x, y)) <= 1e-10


def test_mat_exp_zero():
    assert np.array_equal(core.mat_exp(np.zeros((3, 3))), np.eye(3))


def test_mat_exp_diagonal_pi():
    x = 1j * np.pi * np.diag([1.0, -1.0])
    assert np.allclose(core.mat_exp(x), -np.eye(2), atol=1e-15)


def test_mat_exp_pauli_rotation_eigenvalues():
    theta = 0.7
    x = theta * core.pauli_generator("x")
    ev = np.linalg.eigvals(core.mat_exp(x))
    expected = np.array([np.exp(-1j * theta / 2), np.exp(1j * theta / 2)])
    assert np.allclose(sorted(ev, key=np.angle), sorted(expected, key=np.angle), atol=1e-12)


def test_mat_exp_output_unitary():
    rng = np.random.default_rng(13)
    for _ in range(10):
        n = int(rng.integers(2, 9))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        x = a - a.conj().T
        assert core.is_unitary(core.mat_exp(x))


def test_mat_exp_rejects_non_antihermitian():
    with pytest.raises(InvalidInput):
        core.mat_exp(np.eye(2))


def test_mat_log_identity():
    assert np.allclose(core.mat_log_principal(np.eye(3)), 0.0)


def test_mat_log_quarter_phases():
    x = core.mat_log_principal(np.diag([1.0j, -1.0j]))
    assert np.allclose(x, np.diag([1j * np.pi / 2, -1j * np.pi / 2]), atol=1e-14)


def test_mat_log_minus_identity_branch():
    # Angle exactly pi lands on the +pi side of the branch.
    x = core.mat_log_principal(-np.eye(2))
    assert np.allclose(x, 1j * np.pi * np.eye(2), atol=1e-14)


def test_exp_log_round_trip():
    rng = np.random.default_rng(14)
    for n in (2, 4, 8, 16):
        for _ in range(10):
            u = haar_unitary(n, rng)
            x = core.mat_log_principal(u)
            assert core.anti_hermitian_defect(x) <= 1e-12
            assert core.operator_norm(core.mat_exp(x) - u) <= 1e-9


def test_mat_log_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        core.mat_log_principal(2.0 * np.eye(2))


def test_pauli_generator_single():
    assert np.array_equal(core.pauli_generator("x"), -0.5j * core.PAULI["x"])


def test_pauli_generator_z_identity():
    # Definition unrolled: -(i/2) (sigma_z x I) = -(i/2) diag(1, 1, -1, -1).
    expected = -0.5j * np.diag([1.0, 1.0, -1.0, -1.0])
    assert np.array_equal(core.pauli_generator(["z", "0"]), expected)


def test_pauli_generator_xx_norm():
    t = core.pauli_generator("xx")
    # Tr((sigma_x x sigma_x)^2) = 4, so the squared HS norm is 4/8 = 1/2.
    assert abs(core.hs_inner(t, t) - 0.5) < 1e-14


def test_pauli_generator_rejects_identity_string():
    with pytest.raises(InvalidInput):
        core.pauli_generator("00")
    with pytest.raises(InvalidInput):
        core.pauli_generator([])
    with pytest.raises(InvalidInput):
        core.pauli_generator("q")


def test_matrix_json_round_trip():
    rng = np.random.default_rng(15)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    obj = core.matrix_to_json(m)
    back = core.matrix_from_json(obj)
    assert np.array_equal(back, m)


@pytest.mark.parametrize(
    "obj",
    [
        {},
        {"dim": 2},
        {"dim": 2, "entries": [[1.0, 0.0]]},
        {"dim": 0, "entries": []},
        {"dim": 2, "entries": [[1.0, 0.0]] * 3 + [["x", 0.0]]},
    ],
)
def test_matrix_json_malformed(obj):
    with pytest.raises(InvalidInput):
        core.matrix_from_json(obj)
