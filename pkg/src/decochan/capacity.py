"""Quantum capacities of the decohering families.

Closed-form capacity formulas, the Fejer spectrum of the weak family's
circulant overlap matrix, coherent-information evaluation, an independent
concave maximization over the diagonal simplex, a brute-force full-state
oracle, and the degradability report.  All capacities are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import (
    ChannelSpec,
    KrausChannel,
    build_channel,
    choi,
    complementary,
    compose,
)
from .errors import BadParameter, DimensionMismatch, NotConverged
from .linalg import random_density, von_neumann_entropy, xlog2x


def _xlog2x_scalar(p: float) -> float:
    return 0.0 if p <= 0.0 else p * np.log2(p)


def coherent_information(ch: KrausChannel, rho: np.ndarray) -> float:
    """I_c(ch, rho) = S(ch(rho)) - S(ch^c(rho)), in bits."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.d_in, ch.d_in):
        raise DimensionMismatch(
            f"state shape {rho.shape} incompatible with d_in={ch.d_in}"
        )
    from .channels import kraus_apply

    out = kraus_apply(ch.kraus, rho)
    env = kraus_apply(complementary(ch).kraus, rho)
    return von_neumann_entropy(out) - von_neumann_entropy(env)


def closed_form_capacity_fully(d: int, x: float) -> float:
    """Q of the fully decohering channel on dimension d at noise x."""
    ChannelSpec("fully", d, x)
    t = 1.0 - x + x / d
    return float(
        np.log2(d)
        + ((d - 1) / d) * (0.0 if x == 0.0 else x * np.log2(x / d))
        + _xlog2x_scalar(t)
    )


def closed_form_capacity_block(d: int, k: int, x: float) -> float:
    """Q of the block-decohering channel: d = k*r with r blocks of size k."""
    ChannelSpec("block", d, x, k)
    r = d // k
    t = 1.0 - x + x / r
    return float(
        np.log2(k)
        + np.log2(r)
        + ((r - 1) / r) * (0.0 if x == 0.0 else x * np.log2(x / r))
        + _xlog2x_scalar(t)
    )


def window_overlap_sequence(d: int, k: int) -> np.ndarray:
    """Overlap counts b(s) of cyclic length-k windows at index offset s.

    b(s) = max(0, k-s) + max(0, s+k-d): a triangular ramp k-s near s=0 plus
    its wrap-around mirror near s=d (both contribute when k > d/2).  This
    sequence generates the circulant block of the weak family's
    complementary output on the maximally mixed state.
    """
    if not 1 <= k <= d:
        raise BadParameter(f"window size k={k} outside [1, d={d}]")
    s = np.arange(d)
    return np.maximum(0, k - s) + np.maximum(0, s + k - d)


@dataclass(frozen=True)
class FejerSpectrum:
    """Eigenvalues of the normalized circulant overlap matrix."""

    d: int
    k: int
    lambdas: np.ndarray  # length d, lambdas[0] == k/d


def fejer_eigenvalues(d: int, k: int) -> FejerSpectrum:
    """Fejer-kernel eigenvalues lam_m = sin^2(k pi m / d) / (d k sin^2(pi m / d)).

    lam_0 is the 0/0 limit and is set to k/d directly.  The values sum to 1.
    """
    if not 1 <= k <= d:
        raise BadParameter(f"window size k={k} outside [1, d={d}]")
    m = np.arange(1, d)
    ratio = np.sin(k * np.pi * m / d) / np.sin(np.pi * m / d)
    lambdas = np.empty(d)
    lambdas[0] = k / d
    lambdas[1:] = ratio**2 / (d * k)
    return FejerSpectrum(d, k, lambdas)


def closed_form_capacity_weak(d: int, k: int, x: float) -> float:
    """Q of the weakly decohering channel with cyclic window size k."""
    ChannelSpec("weak", d, x, k)
    lambdas = fejer_eigenvalues(d, k).lambdas
    t = k * x / d + (1.0 - x)
    return float(
        np.log2(d) + np.sum(xlog2x(x * lambdas[1:])) + _xlog2x_scalar(t)
    )


def closed_form_capacity(spec: ChannelSpec) -> float:
    """Dispatch to the family's closed-form capacity."""
    if spec.family == "fully":
        return closed_form_capacity_fully(spec.d, spec.x)
    if spec.family == "block":
        return closed_form_capacity_block(spec.d, spec.k, spec.x)
    return closed_form_capacity_weak(spec.d, spec.k, spec.x)


def spectrum_comp_mixed_fully(d: int, x: float) -> np.ndarray:
    """Eigenvalues (ascending) of the fully decohering family's complementary
    channel applied to I/d.

    The complementary output space is (d+1)-dimensional; the spectrum is
    {0} U {(d + x - d*x)/d} U {x/d with multiplicity d-1}.  (Numerically the
    zero eigenvalue has multiplicity one and x/d multiplicity d-1; the sum is
    the unit trace.)
    """
    ChannelSpec("fully", d, x)
    values = np.concatenate(([0.0, (d + x - d * x) / d], np.full(d - 1, x / d)))
    return np.sort(values)


def comp_mixed_spectrum_weak(d: int, k: int, x: float) -> np.ndarray:
    """Eigenvalues (ascending) of Phi_k^c(I/d): {x lam_1..x lam_{d-1}} U
    {0, k x / d + (1 - x)}."""
    ChannelSpec("weak", d, x, k)
    lambdas = fejer_eigenvalues(d, k).lambdas
    values = np.concatenate((x * lambdas[1:], [0.0, k * x / d + (1.0 - x)]))
    return np.sort(values)


class _DiagonalObjective:
    """Batch-evaluable coherent information restricted to diagonal inputs."""

    def __init__(self, ch: KrausChannel):
        self.d = ch.d_in
        self._k_out = np.stack(ch.kraus)                 # (n, d_out, d_in)
        self._k_env = np.stack(complementary(ch).kraus)  # (d_out, n, d_in)

    @staticmethod
    def _entropies(mats: np.ndarray) -> np.ndarray:
        vals = np.clip(np.linalg.eigvalsh(mats), 0.0, None)
        return -np.sum(xlog2x(vals), axis=-1)

    def values(self, probs: np.ndarray) -> np.ndarray:
        """I_c for each row of ``probs`` (shape (batch, d))."""
        probs = np.atleast_2d(probs)
        out = np.einsum(
            "mki,bi,mli->bkl", self._k_out, probs, self._k_out.conj(), optimize=True
        )
        env = np.einsum(
            "mki,bi,mli->bkl", self._k_env, probs, self._k_env.conj(), optimize=True
        )
        return self._entropies(out) - self._entropies(env)

    def value(self, p: np.ndarray) -> float:
        return float(self.values(p[None])[0])

    def states(self, rhos: np.ndarray):
        """Channel and environment outputs for a batch of full states."""
        out = np.einsum(
            "mki,bij,mlj->bkl", self._k_out, rhos, self._k_out.conj(), optimize=True
        )
        env = np.einsum(
            "mki,bij,mlj->bkl", self._k_env, rhos, self._k_env.conj(), optimize=True
        )
        return self._entropies(out) - self._entropies(env)


@dataclass
class DiagonalAscentResult:
    """Outcome of the simplex maximization of coherent information."""

    probs: np.ndarray
    value: float
    iterations: int
    converged: bool


def _fd_gradient(obj: _DiagonalObjective, p: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central finite-difference gradient along the simplex directions e_i - p.

    Exponentiated-gradient updates are invariant under adding a constant to
    every component, so the tangent-projected derivative is interchangeable
    with the raw gradient.
    """
    d = p.size
    plus = np.tile(p, (d, 1))
    minus = plus.copy()
    plus[np.arange(d), np.arange(d)] += h
    minus[np.arange(d), np.arange(d)] = np.maximum(p - h, 1e-15)
    plus /= plus.sum(axis=1, keepdims=True)
    minus /= minus.sum(axis=1, keepdims=True)
    vals = obj.values(np.vstack([plus, minus]))
    return (vals[:d] - vals[d:]) / (2.0 * h)


def maximize_diagonal(
    ch: KrausChannel,
    tol: float = 1e-9,
    max_iters: int = 100_000,
    start: np.ndarray | None = None,
) -> DiagonalAscentResult:
    """Maximize I_c(ch, diag(p)) over the probability simplex.

    Multiplicative-weights (exponentiated-gradient) ascent with a
    finite-difference gradient and backtracking step control; concavity of
    the coherent information for degradable channels makes any ascent
    globally convergent.  Terminates once successive objective improvements
    stay below ``tol``.

    Raises
    ------
    NotConverged
        If ``max_iters`` is exhausted; the best-so-far result rides on the
        exception's ``result`` attribute.
    """
    obj = _DiagonalObjective(ch)
    d = obj.d
    if start is None:
        # Deliberately away from the uniform point so agreement with the
        # closed forms is a genuine optimization result.
        p = np.arange(1.0, d + 1.0)
        p /= p.sum()
    else:
        p = np.asarray(start, dtype=float)
        if p.shape != (d,) or np.any(p < 0):
            raise BadParameter("start must be a nonnegative length-d vector")
        p = p / p.sum()
    f = obj.value(p)
    lr = 0.5
    stall = 0
    for it in range(1, max_iters + 1):
        g = _fd_gradient(obj, p)
        g = g - g.max()  # numerical guard for exp
        while True:
            q = p * np.exp(lr * g)
            q /= q.sum()
            fq = obj.value(q)
            if fq >= f or lr <= 1e-12:
                break
            lr *= 0.5
        if lr <= 1e-12 and fq < f:
            return DiagonalAscentResult(p, f, it, True)
        improvement = fq - f
        p, f = q, fq
        lr = min(lr * 1.3, 10.0)
        if improvement < tol:
            stall += 1
            if stall >= 3:
                return DiagonalAscentResult(p, f, it, True)
        else:
            stall = 0
    raise NotConverged(
        f"no convergence within {max_iters} iterations",
        result=DiagonalAscentResult(p, f, max_iters, False),
    )


def brute_force_capacity_oracle(
    ch: KrausChannel,
    samples: int,
    refine_steps: int,
    seed: int,
    chunk: int = 2048,
) -> float:
    """Best coherent information over sampled full (non-diagonal) states.

    Samples random density matrices (Dirichlet spectra conjugated by Haar
    unitaries), then hill-climbs around the best sample with shrinking random
    mixtures.  Ties keep the incumbent, so the result is deterministic for a
    given seed.  Intended as an independent check that the diagonal
    restriction loses nothing; d_in <= 4 keeps the cost bounded.
    """
    if ch.d_in > 4:
        raise BadParameter(f"oracle restricted to d_in <= 4, got {ch.d_in}")
    rng = np.random.default_rng(seed)
    obj = _DiagonalObjective(ch)
    d = ch.d_in

    def batch_states(n):
        z = (rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d)))
        q, r = np.linalg.qr(z)
        diag = np.diagonal(r, axis1=1, axis2=2)
        q = q * (diag / np.abs(diag))[:, None, :]
        spectra = rng.dirichlet(np.ones(d), size=n)
        rhos = np.einsum("bik,bk,bjk->bij", q, spectra, q.conj())
        return 0.5 * (rhos + rhos.conj().transpose(0, 2, 1))

    best_val = -np.inf
    best_rho = None
    remaining = samples
    while remaining > 0:
        n = min(chunk, remaining)
        rhos = batch_states(n)
        vals = obj.states(rhos)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_rho = rhos[i]
        remaining -= n

    # Local refinement: mix the incumbent with random states at a shrinking rate.
    for step in range(refine_steps):
        eps = 0.2 * 0.97**step
        cand = (1.0 - eps) * best_rho + eps * batch_states(16)
        vals = obj.states(cand)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_rho = cand[i]
    return best_val


@dataclass(frozen=True)
class DegradabilityReport:
    """Choi residual of the identity ch^c o ch = ch^c."""

    spec: ChannelSpec
    residual: float
    tol: float
    passed: bool


def degradability_report(spec: ChannelSpec, tol: float = 1e-10) -> DegradabilityReport:
    """Build the channel, compose with its complementary, compare Choi matrices."""
    ch = build_channel(spec)
    comp = complementary(ch)
    residual = float(np.max(np.abs(choi(compose(comp, ch)) - choi(comp))))
    return DegradabilityReport(spec, residual, tol, residual <= tol)


@dataclass
class CapacityResult:
    """Closed-form capacity with optional independent numerical confirmation."""

    spec: ChannelSpec
    q_closed: float
    q_numeric: float | None = None
    optimizer_state: np.ndarray | None = None
    gap: float | None = None
    iterations: int | None = None
    converged: bool | None = None


def compute_capacity(
    spec: ChannelSpec,
    numeric: bool = False,
    tol: float = 1e-9,
    max_iters: int = 100_000,
) -> CapacityResult:
    """Evaluate the closed form and, if requested, the simplex maximizer."""
    q_closed = closed_form_capacity(spec)
    result = CapacityResult(spec, q_closed)
    if numeric:
        opt = maximize_diagonal(build_channel(spec), tol=tol, max_iters=max_iters)
        result.q_numeric = opt.value
        result.optimizer_state = opt.probs
        result.gap = abs(q_closed - opt.value)
        result.iterations = opt.iterations
        result.converged = opt.converged
    return result
