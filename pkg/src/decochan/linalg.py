"""Dense Hermitian linear algebra: eigendecomposition, entropy, majorization.

All entropies are in bits (base-2 logarithms) with the convention
0 * log2(0) = 0.  Eigenvalues are returned in ascending order everywhere.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BadParameter,
    DimensionMismatch,
    LengthMismatch,
    NegativeEigenvalue,
    NonHermitian,
)

HERMITICITY_TOL = 1e-10
# Eigenvalues in [EIGENVALUE_FLOOR, 0) are treated as numerical zeros;
# anything more negative signals a genuine positivity violation upstream.
EIGENVALUE_FLOOR = -1e-10


def hermitian_eigs(h: np.ndarray, tol: float = HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(values, vectors)`` with eigenvalues sorted ascending and
    eigenvectors as columns, so that ``h @ vectors == vectors @ diag(values)``.

    Raises
    ------
    DimensionMismatch
        If ``h`` is not square.
    NonHermitian
        If ``max|h - h^dag|`` exceeds ``tol``.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {h.shape}")
    asym = float(np.max(np.abs(h - h.conj().T)))
    if asym > tol:
        raise NonHermitian(
            f"hermiticity tolerance violated: max|H - H^dag| = {asym:.3e} > {tol:.1e}"
        )
    values, vectors = np.linalg.eigh(h)
    return values, vectors


def xlog2x(p: np.ndarray) -> np.ndarray:
    """Elementwise p * log2(p) with 0*log2(0) = 0."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > 0.0
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def shannon_entropy(p: np.ndarray) -> float:
    """Entropy in bits of a probability vector (no validation)."""
    return float(-np.sum(xlog2x(p)))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy S(rho) = -Tr rho log2 rho, in bits.

    Eigenvalues in ``[EIGENVALUE_FLOOR, 0)`` are clipped to zero before the
    entropy sum.

    Raises
    ------
    NegativeEigenvalue
        If any eigenvalue is below ``EIGENVALUE_FLOOR``.
    """
    values, _ = hermitian_eigs(rho)
    if values[0] < EIGENVALUE_FLOOR:
        raise NegativeEigenvalue(
            f"eigenvalue {values[0]:.3e} below floor {EIGENVALUE_FLOOR:.1e}"
        )
    return shannon_entropy(np.clip(values, 0.0, None))


def majorizes(a: np.ndarray, b: np.ndarray, atol: float = 1e-12) -> bool:
    """True iff ``a`` majorizes ``b``.

    Checks that every partial sum of the largest entries of ``a`` dominates
    the corresponding partial sum of ``b`` (with ``atol`` slack against
    floating-point dust) and that the full sums agree.

    Raises
    ------
    LengthMismatch
        If the vectors have different lengths.
    BadParameter
        If the full sums differ by more than 1e-9.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"shapes {a.shape} and {b.shape} are not comparable")
    if abs(a.sum() - b.sum()) > 1e-9:
        raise BadParameter(
            f"totals differ: sum(a)={a.sum():.12g}, sum(b)={b.sum():.12g}"
        )
    pa = np.cumsum(np.sort(a)[::-1])
    pb = np.cumsum(np.sort(b)[::-1])
    return bool(np.all(pa >= pb - atol))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary (QR of a complex Ginibre matrix)."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_density(d: int, rng: np.random.Generator) -> np.ndarray:
    """Random density matrix: flat-Dirichlet spectrum conjugated by a Haar unitary."""
    spectrum = rng.dirichlet(np.ones(d))
    u = random_unitary(d, rng)
    rho = (u * spectrum) @ u.conj().T
    return 0.5 * (rho + rho.conj().T)


def assert_density(rho: np.ndarray, atol: float = 1e-10) -> None:
    """Validate the density-matrix invariants (Hermitian, unit trace, PSD)."""
    rho = np.asarray(rho)
    asym = float(np.max(np.abs(rho - rho.conj().T)))
    if asym > 1e-12:
        raise NonHermitian(f"density matrix not Hermitian: residual {asym:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > 1e-12:
        raise BadParameter(f"density matrix trace {tr:.12g} != 1")
    values = np.linalg.eigvalsh(rho)
    if values[0] < -atol:
        raise NegativeEigenvalue(f"density matrix eigenvalue {values[0]:.3e} < -{atol:.1e}")
