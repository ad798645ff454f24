"""Shared helpers: reproducible random states and symplectic maps."""

import numpy as np
import pytest

from rsfield.rsf import ConjugateField, ReducedField
from rsfield.symplectic import BogoliubovMap, from_blocks


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_passive(n: int, rng: np.random.Generator) -> BogoliubovMap:
    return from_blocks(haar_unitary(n, rng), np.zeros((n, n), dtype=complex), n, 0)


def random_symplectic(
    n: int, rng: np.random.Generator, squeeze_scale: float = 0.5,
    n_sys: int | None = None,
) -> BogoliubovMap:
    """Euler (Bloch-Messiah) form U1 * diag-squeeze * U2: always symplectic."""
    u1, u2 = haar_unitary(n, rng), haar_unitary(n, rng)
    d = rng.uniform(0.0, squeeze_scale, size=n)
    x_up = u1 @ np.diag(np.cosh(d)) @ u2
    x_down = u1 @ np.diag(np.sinh(d)) @ u2.conj()
    ns = n if n_sys is None else n_sys
    return from_blocks(x_up, x_down, ns, n - ns, tol=1e-10)


def random_physical_fields(
    n: int, rng: np.random.Generator, displaced: bool = True
) -> tuple[ReducedField, ConjugateField]:
    """Moments of a random displaced pure Gaussian state."""
    m = random_symplectic(n, rng)
    g = np.zeros((2 * n, 2 * n), dtype=complex)
    g[n:, n:] = np.eye(n)
    g = m.x @ g @ m.x.conj().T
    r = 0.5 * (g[:n, :n] + g[:n, :n].conj().T)
    c = 0.5 * (g[:n, n:] + g[n:, :n].conj().T)
    c = 0.5 * (c + c.T)
    alpha = np.zeros(n, dtype=complex)
    if displaced:
        alpha = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        r = r + np.outer(alpha, alpha.conj())
        r = 0.5 * (r + r.conj().T)
        c = c + np.outer(alpha, alpha)
        c = 0.5 * (c + c.T)
    return ReducedField(r, alpha), ConjugateField(c, alpha.conj())


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
