import numpy as np


def random_orthogonal(n, rng):
    """Haar-ish orthogonal matrix from the QR of a Gaussian draw."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def multisets_close(w1, w2, tol):
    """Greedy nearest matching of two complex multisets within tol."""
    a = list(np.asarray(w1, dtype=complex))
    b = list(np.asarray(w2, dtype=complex))
    if len(a) != len(b):
        return False
    for x in a:
        dists = [abs(x - y) for y in b]
        j = int(np.argmin(dists))
        if dists[j] > tol:
            return False
        b.pop(j)
    return True
