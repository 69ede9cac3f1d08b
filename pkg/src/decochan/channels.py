"""Kraus-operator channels: the three decohering families and their calculus.

Indexing is 0-based throughout; basis state ``|i>`` means the i-th standard
basis vector.  Block partitions are contiguous (block i covers indices
[i*k, (i+1)*k)) and weak-decoherence windows wrap modulo d.

Zero Kraus operators (at x=0 or x=1) are kept, not pruned, so the
complementary channel's output dimension does not depend on x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameter, BadPartition, DimensionMismatch
from .linalg import assert_density

FAMILIES = ("fully", "block", "weak")


@dataclass(frozen=True)
class KrausChannel:
    """A CP map represented by an ordered tuple of Kraus operators.

    Each operator has shape (d_out, d_in).  Trace preservation
    (sum A_i^dag A_i = I) is a constructor obligation, checked by
    :func:`validate_cptp`, not enforced here.
    """

    d_in: int
    d_out: int
    kraus: tuple

    def __post_init__(self):
        for a in self.kraus:
            if a.shape != (self.d_out, self.d_in):
                raise DimensionMismatch(
                    f"Kraus operator shape {a.shape} != ({self.d_out}, {self.d_in})"
                )

    @property
    def n_kraus(self) -> int:
        return len(self.kraus)

    def completeness_residual(self) -> float:
        """max|sum_i A_i^dag A_i - I|."""
        s = sum(a.conj().T @ a for a in self.kraus)
        return float(np.max(np.abs(s - np.eye(self.d_in))))


@dataclass(frozen=True)
class ChannelSpec:
    """Parameter point of one decohering family.

    family : 'fully' | 'block' | 'weak'
    d      : Hilbert-space dimension
    k      : block size (block) or window size (weak); 1 for fully
    x      : noise parameter in [0, 1]
    """

    family: str
    d: int
    x: float
    k: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParameter(f"unknown family {self.family!r}")
        if self.d < 2:
            raise BadParameter(f"dimension d={self.d} must be >= 2")
        if not 0.0 <= self.x <= 1.0:
            raise BadParameter(f"noise x={self.x} outside [0, 1]")
        if not 1 <= self.k <= self.d:
            raise BadParameter(f"k={self.k} outside [1, d={self.d}]")
        if self.family == "block" and self.d % self.k != 0:
            raise BadParameter(f"block size k={self.k} does not divide d={self.d}")
        if self.family == "fully" and self.k != 1:
            raise BadParameter("fully decohering family requires k=1")


def _basis_projector(d: int, indices) -> np.ndarray:
    p = np.zeros((d, d), dtype=complex)
    for i in indices:
        p[i, i] = 1.0
    return p


def make_fully_decohering(d: int, x: float) -> KrausChannel:
    """Kraus set {sqrt(1-x) I} U {sqrt(x) |i><i| : i = 0..d-1}."""
    ChannelSpec("fully", d, x)
    ops = [np.sqrt(1.0 - x) * np.eye(d, dtype=complex)]
    ops += [np.sqrt(x) * _basis_projector(d, [i]) for i in range(d)]
    return KrausChannel(d, d, tuple(ops))


def make_block_decohering(d: int, k: int, x: float) -> KrausChannel:
    """Kraus set {sqrt(1-x) I} U {sqrt(x) pi_i} over r = d/k contiguous blocks."""
    ChannelSpec("block", d, x, k)
    r = d // k
    ops = [np.sqrt(1.0 - x) * np.eye(d, dtype=complex)]
    ops += [
        np.sqrt(x) * _basis_projector(d, range(i * k, (i + 1) * k)) for i in range(r)
    ]
    return KrausChannel(d, d, tuple(ops))


def make_weakly_decohering(d: int, k: int, x: float) -> KrausChannel:
    """Kraus set {sqrt(1-x) I} U {sqrt(x/k) P_i} over d cyclic length-k windows.

    Window i projects onto span{|i>, |i+1 mod d>, ..., |i+k-1 mod d>}; every
    basis index lies in exactly k windows, which gives trace preservation.
    """
    ChannelSpec("weak", d, x, k)
    ops = [np.sqrt(1.0 - x) * np.eye(d, dtype=complex)]
    ops += [
        np.sqrt(x / k) * _basis_projector(d, [(i + l) % d for l in range(k)])
        for i in range(d)
    ]
    return KrausChannel(d, d, tuple(ops))


def build_channel(spec: ChannelSpec) -> KrausChannel:
    """Construct the channel described by a ChannelSpec."""
    if spec.family == "fully":
        return make_fully_decohering(spec.d, spec.x)
    if spec.family == "block":
        return make_block_decohering(spec.d, spec.k, spec.x)
    return make_weakly_decohering(spec.d, spec.k, spec.x)


def kraus_apply(kraus, rho: np.ndarray) -> np.ndarray:
    """Raw Kraus action sum_i A_i rho A_i^dag (no validation)."""
    out = sum(a @ rho @ a.conj().T for a in kraus)
    return 0.5 * (out + out.conj().T)


def apply(ch: KrausChannel, rho: np.ndarray, validate: bool = True) -> np.ndarray:
    """Apply the channel to a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.d_in, ch.d_in):
        raise DimensionMismatch(
            f"state shape {rho.shape} incompatible with d_in={ch.d_in}"
        )
    if validate:
        assert_density(rho)
    return kraus_apply(ch.kraus, rho)


def complementary(ch: KrausChannel) -> KrausChannel:
    """The complementary (environment) channel.

    Its action is rho -> sum_{i,j} Tr(A_i rho A_j^dag) |i><j|, realized by
    Kraus operators C_m with entries (C_m)_{i,a} = (A_i)_{m,a} for
    m = 0..d_out-1.
    """
    n = ch.n_kraus
    stacked = np.stack(ch.kraus)  # (n, d_out, d_in)
    ops = tuple(np.ascontiguousarray(stacked[:, m, :]) for m in range(ch.d_out))
    return KrausChannel(ch.d_in, n, ops)


def singleton_partition(d: int) -> list:
    """The full-decoherence partition {{0}, {1}, ..., {d-1}}."""
    return [[i] for i in range(d)]


def block_partition(d: int, k: int) -> list:
    """Contiguous blocks of size k covering 0..d-1."""
    if d % k != 0:
        raise BadPartition(f"block size k={k} does not divide d={d}")
    return [list(range(i * k, (i + 1) * k)) for i in range(d // k)]


def pinch(rho: np.ndarray, partition) -> np.ndarray:
    """Zero all entries whose row and column lie in different partition cells."""
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    flat = sorted(i for cell in partition for i in cell)
    if flat != list(range(d)):
        raise BadPartition(f"partition does not cover 0..{d - 1} exactly once")
    mask = np.zeros((d, d), dtype=bool)
    for cell in partition:
        idx = np.asarray(cell)
        mask[np.ix_(idx, idx)] = True
    return np.where(mask, rho, 0.0)


def choi(ch: KrausChannel) -> np.ndarray:
    """Unnormalized Choi matrix sum_{ij} |i><j| (x) ch(|i><j|).

    Trace equals d_in; the partial trace over the output factor equals
    I_{d_in} for a trace-preserving channel.
    """
    dim = ch.d_in * ch.d_out
    c = np.zeros((dim, dim), dtype=complex)
    for a in ch.kraus:
        v = a.T.reshape(-1)  # v[i*d_out + m] = (A)_{m,i}
        c += np.outer(v, v.conj())
    return c


def choi_output_partial_trace(c: np.ndarray, d_in: int, d_out: int) -> np.ndarray:
    """Partial trace of a Choi matrix over the output factor."""
    return np.trace(c.reshape(d_in, d_out, d_in, d_out), axis1=1, axis2=3)


def compose(second: KrausChannel, first: KrausChannel) -> KrausChannel:
    """The composite map second o first, with Kraus set {B_j A_i}."""
    if first.d_out != second.d_in:
        raise DimensionMismatch(
            f"cannot compose: first.d_out={first.d_out} != second.d_in={second.d_in}"
        )
    ops = tuple(b @ a for b in second.kraus for a in first.kraus)
    return KrausChannel(first.d_in, second.d_out, ops)


def shift_operator(d: int) -> np.ndarray:
    """Cyclic shift X = sum_i |i+1 mod d><i|."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def symmetry_operators(spec: ChannelSpec) -> list:
    """Covariance unitaries of the family.

    fully / weak : the cyclic-shift powers {X^m : m = 0..d-1}.
    block        : {X_blk^i Omega^j} where X_blk shifts inside every block and
                   Omega cyclically permutes the blocks.
    """
    if spec.family in ("fully", "weak"):
        x = shift_operator(spec.d)
        return [np.linalg.matrix_power(x, m) for m in range(spec.d)]
    k, r = spec.k, spec.d // spec.k
    x_blk = np.kron(np.eye(r), shift_operator(k))
    omega = np.kron(shift_operator(r), np.eye(k))
    return [
        np.linalg.matrix_power(x_blk, i) @ np.linalg.matrix_power(omega, j)
        for i in range(k)
        for j in range(r)
    ]


def complementary_covariance_unitary(d: int) -> np.ndarray:
    """U = |0><0| (+) X on the (d+1)-dim environment of the fully/weak families."""
    u = np.zeros((d + 1, d + 1), dtype=complex)
    u[0, 0] = 1.0
    u[1:, 1:] = shift_operator(d)
    return u


@dataclass(frozen=True)
class CPTPReport:
    """Outcome of a CPTP check: residuals, not exceptions."""

    completeness_residual: float
    choi_min_eigenvalue: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        ok = self.completeness_residual <= self.tol and self.choi_min_eigenvalue >= -self.tol
        object.__setattr__(self, "passed", bool(ok))


def validate_cptp(ch: KrausChannel, tol: float = 1e-10) -> CPTPReport:
    """Check trace preservation and Choi positivity; failures are report content."""
    residual = ch.completeness_residual()
    min_eig = float(np.linalg.eigvalsh(choi(ch))[0])
    return CPTPReport(residual, min_eig, tol)
