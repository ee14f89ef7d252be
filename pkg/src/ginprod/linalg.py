"""Dense real linear algebra: products, norms, Schur/SVD, real-eigenvalue counting.

The real-eigenvalue count of a matrix is decided structurally from its real
Schur (quasi-triangular) form: each 2x2 diagonal block contributes a complex
conjugate pair exactly when its discriminant is negative, so the reality
decision is a sign test and no imaginary-part tolerance enters the counts.
2x2 inputs skip the factorization entirely and use the trace/determinant
discriminant, which doubles as the oracle for the general path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

__all__ = [
    "EigenSolveError",
    "Spectrum",
    "product_chain",
    "eigenvalues",
    "count_real",
    "frobenius_norm",
    "svd",
]


class EigenSolveError(RuntimeError):
    """The iterative Schur reduction failed to converge.

    Callers running Monte Carlo trials may resample the trial from a reserved
    stream, but must tally the failure.
    """


@dataclass
class Spectrum:
    """Eigenvalue multiset of a real matrix with a certified real count.

    eigenvalues: length-n complex array; non-real values occur in exactly
        conjugate pairs by construction.
    real_count: number of real eigenvalues; n - real_count is always even.
    method: "schur" or "closed_form_2x2", whichever produced the count.
    reality_margin: smallest scaled margin |disc| / ||A||_F^2 over the
        real-vs-complex decisions (conjugate-pair blocks and gaps between
        real eigenvalues).  Near-zero values mark draws where roundoff could
        legitimately flip the count; statistical tests exclude them.
    """

    eigenvalues: np.ndarray
    real_count: int
    method: str
    reality_margin: float


def _as_square(a) -> np.ndarray:
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def product_chain(matrices) -> np.ndarray:
    """Ordered product A_1 A_2 ... A_K of equal-dimension square matrices.

    Plain left-to-right fold in double precision; callers multiplying long
    chains are responsible for rescaling factors to avoid overflow.
    """
    mats = [_as_square(m) for m in matrices]
    if not mats:
        raise ValueError("product of an empty matrix list is undefined")
    n = mats[0].shape[0]
    for i, m in enumerate(mats[1:], start=1):
        if m.shape[0] != n:
            raise ValueError(f"dimension mismatch: factor 0 is {n}x{n}, factor {i} is {m.shape[0]}x{m.shape[0]}")
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return out


def frobenius_norm(a) -> float:
    """sqrt of the sum of squared entries."""
    m = _as_square(a)
    return float(np.linalg.norm(m))


def svd(a):
    """Factor A = O1 @ diag(s) @ O2.T with orthogonal O1, O2 and s nonincreasing."""
    m = _as_square(a)
    try:
        u, s, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"SVD did not converge: {exc}") from None
    return u, s, vh.T


def _spectrum_2x2(m: np.ndarray) -> Spectrum:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    tr = a + d
    det = a * d - b * c
    disc = tr * tr - 4.0 * det
    scale = max(float(np.sum(m * m)), np.finfo(float).tiny)
    margin = abs(disc) / scale
    if disc >= 0.0:
        s = math.sqrt(disc)
        # stable quadratic roots: avoid cancellation in the smaller root
        if tr >= 0.0:
            r1 = 0.5 * (tr + s)
        else:
            r1 = 0.5 * (tr - s)
        r2 = det / r1 if r1 != 0.0 else 0.5 * (tr - math.copysign(s, tr))
        eig = np.array([r1, r2], dtype=complex)
        k = 2
    else:
        re = 0.5 * tr
        im = 0.5 * math.sqrt(-disc)
        eig = np.array([complex(re, im), complex(re, -im)])
        k = 0
    return Spectrum(eig, k, "closed_form_2x2", margin)


def _schur_form(m: np.ndarray) -> np.ndarray:
    # dgees with compute_v=0; the select callback is unused when sort_t=0
    t, _sdim, _wr, _wi, _vs, _work, info = lapack.dgees(lambda re, im: 0, m, compute_v=0, sort_t=0)
    if info < 0:
        raise ValueError(f"illegal argument {-info} passed to the Schur solver")
    if info > 0:
        raise EigenSolveError(f"Schur reduction failed to converge (info={info})")
    return t

def _spectrum_schur(m: np.ndarray) -> Spectrum:
    n = m.shape[0]
    t = _schur_form(m)
    scale = max(float(np.sum(m * m)), np.finfo(float).tiny)
    eig = np.empty(n, dtype=complex)
    reals: list[float] = []
    margin = math.inf
    k = n
    i = 0
    while i < n:
        if i < n - 1 and t[i + 1, i] != 0.0:
            a, b = t[i, i], t[i, i + 1]
            c, d = t[i + 1, i], t[i + 1, i + 1]
            tr = a + d
            disc = (a - d) ** 2 + 4.0 * b * c
            margin = min(margin, abs(disc) / scale)
            if disc < 0.0:
                re = 0.5 * tr
                im = 0.5 * math.sqrt(-disc)
                eig[i] = complex(re, im)
                eig[i + 1] = complex(re, -im)
                k -= 2
            else:
                s = math.sqrt(disc)
                r1 = 0.5 * (tr + s) if tr >= 0.0 else 0.5 * (tr - s)
                det = a * d - b * c
                r2 = det / r1 if r1 != 0.0 else 0.5 * (tr - math.copysign(s, tr))
                eig[i], eig[i + 1] = r1, r2
                reals += [r1, r2]
            i += 2
        else:
            eig[i] = t[i, i]
            reals.append(t[i, i])
            i += 1
    # close real pairs are the other configuration roundoff could flip
    if len(reals) > 1:
        rs = sorted(reals)
        for x, y in zip(rs, rs[1:]):
            margin = min(margin, (y - x) ** 2 / scale)
    return Spectrum(eig, k, "schur", margin)


def _spectrum_imag_threshold(m: np.ndarray) -> Spectrum:
    # Fallback for complex general eigensolvers; not the canonical path.
    n = m.shape[0]
    try:
        w = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"eigenvalue iteration failed: {exc}") from None
    tol = 1e-10 * max(float(np.linalg.norm(m)), np.finfo(float).tiny)
    is_real = np.abs(w.imag) <= tol
    k = int(np.count_nonzero(is_real))
    if (n - k) % 2 == 1:
        # parity repair: the smallest-|Im| nominally-complex value is real
        idx = np.argsort(np.where(is_real, np.inf, np.abs(w.imag)))[0]
        is_real[idx] = True
        k += 1
    scale = max(float(np.sum(m * m)), np.finfo(float).tiny)
    margins = [tol * tol / scale]
    for im in np.abs(w.imag[~is_real]):
        margins.append((2.0 * im) ** 2 / scale)
    return Spectrum(w, k, "imag_threshold", min(margins))


def eigenvalues(a, method: str = "auto") -> Spectrum:
    """Eigenvalue multiset plus a structurally certified real count.

    method:
        "auto"           closed form for n=2, real Schur form otherwise
        "schur"          force the Schur path (used to cross-check n=2)
        "closed_form_2x2" force the 2x2 closed form (n=2 only)
        "imag_threshold" classify by |Im| <= 1e-10 ||A||_F with parity
                         repair; provided for environments without a real
                         Schur solver and for diagnostics only
    """
    m = _as_square(a)
    n = m.shape[0]
    if method == "auto":
        method = "closed_form_2x2" if n == 2 else "schur"
    if method == "closed_form_2x2":
        if n != 2:
            raise ValueError("closed_form_2x2 applies only to 2x2 matrices")
        return _spectrum_2x2(m)
    if method == "schur":
        return _spectrum_schur(m)
    if method == "imag_threshold":
        return _spectrum_imag_threshold(m)
    raise ValueError(f"unknown method {method!r}")


def count_real(a, method: str = "auto") -> int:
    """Number of real eigenvalues of a real square matrix.

    n - count_real(a) is always even: complex eigenvalues of real matrices
    come in conjugate pairs.
    """
    return eigenvalues(a, method=method).real_count
