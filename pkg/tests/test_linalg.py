import math

import numpy as np
import pytest

from helpers import multisets_close, random_orthogonal
from ginprod.linalg import (
    EigenSolveError,
    count_real,
    eigenvalues,
    frobenius_norm,
    product_chain,
    svd,
)
from ginprod.sampling import StreamPool


def test_product_chain_single_and_identities():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(product_chain([a]), a)
    eye = np.eye(2)
    assert np.allclose(product_chain([eye, a, eye]), a)


def test_product_chain_hand_example():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.array_equal(product_chain([a, b]), np.array([[2.0, 1.0], [4.0, 3.0]]))


def test_product_chain_errors():
    with pytest.raises(ValueError):
        product_chain([])
    with pytest.raises(ValueError):
        product_chain([np.eye(2), np.eye(3)])
    with pytest.raises(ValueError):
        product_chain([np.array([[np.nan, 0.0], [0.0, 1.0]])])


def test_eigenvalues_triangular():
    spec = eigenvalues(np.diag([1.0, 2.0, 3.0]))
    assert spec.real_count == 3
    assert multisets_close(spec.eigenvalues, [1.0, 2.0, 3.0], 1e-12)


def test_eigenvalues_rotation():
    spec = eigenvalues(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert spec.real_count == 0
    assert multisets_close(spec.eigenvalues, [1j, -1j], 1e-12)
    assert spec.method == "closed_form_2x2"


def test_eigenvalues_2x2_quadratic_oracle():
    # [[1,2],[3,4]]: roots of x^2 - 5x - 2 are (5 +- sqrt(33))/2
    spec = eigenvalues(np.array([[1.0, 2.0], [3.0, 4.0]]))
    root = math.sqrt(33.0)
    assert spec.real_count == 2
    assert multisets_close(spec.eigenvalues, [(5 + root) / 2, (5 - root) / 2], 1e-12)


def test_count_real_2x2_discriminant_cases():
    assert count_real(np.array([[1.0, 2.0], [3.0, 4.0]])) == 2
    assert count_real(np.array([[0.0, -1.0], [1.0, 0.0]])) == 0
    assert count_real(np.eye(2)) == 2  # disc == 0 counts as real


def test_2x2_schur_matches_closed_form():
    pool = StreamPool()
    for t in range(10_000):
        a = pool.get(21, t).standard_normal((2, 2))
        assert count_real(a, method="schur") == count_real(a, method="closed_form_2x2")


def test_imag_threshold_fallback_agrees():
    pool = StreamPool()
    for t in range(2_000):
        a = pool.get(22, t).standard_normal((5, 5))
        s = eigenvalues(a, method="schur")
        if s.reality_margin < 1e-8:
            continue
        assert count_real(a, method="imag_threshold") == s.real_count


def test_method_validation():
    with pytest.raises(ValueError):
        eigenvalues(np.eye(3), method="closed_form_2x2")
    with pytest.raises(ValueError):
        eigenvalues(np.eye(2), method="not-a-method")


def test_conjugate_pairing_is_exact():
    pool = StreamPool()
    for t in range(500):
        n = 3 + t % 5
        spec = eigenvalues(pool.get(23, t).standard_normal((n, n)))
        w = spec.eigenvalues
        complex_part = np.sort_complex(w[w.imag != 0.0])
        assert np.array_equal(np.sort_complex(complex_part.conj()), complex_part)
        assert (n - spec.real_count) % 2 == 0


def test_trace_det_consistency():
    pool = StreamPool()
    for t in range(500):
        n = 2 + t % 7
        a = pool.get(24, t).standard_normal((n, n))
        w = eigenvalues(a).eigenvalues
        tr = np.trace(a)
        det = np.linalg.det(a)
        assert abs(w.sum().real - tr) <= 1e-8 * max(1.0, abs(tr))
        assert abs(w.sum().imag) <= 1e-8 * max(1.0, abs(tr))
        prod = np.prod(w)
        assert abs(prod.real - det) <= 1e-8 * max(1.0, abs(det))


def test_similarity_invariance(rng):
    flips = 0
    pool = StreamPool()
    for t in range(10_000):
        n = 2 + t % 7
        a = pool.get(25, t).standard_normal((n, n))
        s = eigenvalues(a)
        if s.reality_margin < 1e-10:
            continue
        q = random_orthogonal(n, rng)
        if count_real(q @ a @ q.T) != s.real_count:
            flips += 1
    assert flips == 0


def test_scaling_invariance():
    pool = StreamPool()
    for t in range(2_000):
        n = 2 + t % 7
        a = pool.get(26, t).standard_normal((n, n))
        s = eigenvalues(a)
        if s.reality_margin < 1e-10:
            continue
        for c in (1e-3, 2.7, 1e3):
            assert count_real(c * a) == s.real_count


def test_frobenius_values():
    assert frobenius_norm(np.eye(2)) == pytest.approx(math.sqrt(2.0), abs=1e-15)
    assert frobenius_norm(np.array([[3.0, 4.0], [0.0, 0.0]])) == pytest.approx(5.0, abs=1e-15)


def test_frobenius_orthogonal_invariance(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        a = rng.standard_normal((n, n))
        q = random_orthogonal(n, rng)
        assert abs(frobenius_norm(q @ a) - frobenius_norm(a)) < 1e-12 * frobenius_norm(a) + 1e-12


def test_svd_diagonal_case():
    o1, s, o2 = svd(np.diag([2.0, 1.0]))
    assert np.allclose(s, [2.0, 1.0])
    assert np.allclose(np.abs(o1), np.eye(2), atol=1e-14)
    assert np.allclose(np.abs(o2), np.eye(2), atol=1e-14)


def test_svd_reconstruction_and_orthogonality(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        a = rng.standard_normal((n, n))
        o1, s, o2 = svd(a)
        resid = np.linalg.norm(a - o1 @ np.diag(s) @ o2.T) / np.linalg.norm(a)
        assert resid < 1e-10
        assert np.linalg.norm(o1 @ o1.T - np.eye(n)) < 1e-10
        assert np.linalg.norm(o2 @ o2.T - np.eye(n)) < 1e-10
        assert np.all(np.diff(s) <= 0) and np.all(s >= 0)


def test_svd_spectrum_reduction(rng):
    # eig(A1 A2) must match eig(Sigma O2^T A2 O1) as multisets: the product's
    # spectrum only depends on A1 through its singular values
    for _ in range(200):
        n = int(rng.integers(2, 7))
        a1 = rng.standard_normal((n, n))
        a2 = rng.standard_normal((n, n))
        o1, s, o2 = svd(a1)
        w_full = eigenvalues(a1 @ a2).eigenvalues
        w_red = eigenvalues(np.diag(s) @ (o2.T @ a2 @ o1)).eigenvalues
        scale = max(1.0, float(np.max(np.abs(w_full))))
        assert multisets_close(w_full, w_red, 1e-8 * scale)


def test_eigen_errors():
    with pytest.raises(ValueError):
        eigenvalues(np.array([[np.inf, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((2, 3)))
    assert issubclass(EigenSolveError, RuntimeError)
