"""Structural verification suite driven by the CLI `verify` subcommand.

Each check aggregates a worst-case residual over a parameter grid into one
report row; the run is deterministic for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .capacity import (
    closed_form_capacity,
    comp_mixed_spectrum_weak,
    degradability_report,
    fejer_eigenvalues,
    maximize_diagonal,
    spectrum_comp_mixed_fully,
    window_overlap_sequence,
)
from .channels import (
    ChannelSpec,
    apply,
    block_partition,
    build_channel,
    complementary,
    complementary_covariance_unitary,
    kraus_apply,
    pinch,
    singleton_partition,
    symmetry_operators,
    validate_cptp,
)
from .linalg import majorizes, random_density


@dataclass(frozen=True)
class CheckRow:
    name: str
    params: str
    residual: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def iter_specs(max_d: int, xs):
    """All valid (family, d, k) points up to max_d, at each noise value."""
    for d in range(2, max_d + 1):
        for x in xs:
            yield ChannelSpec("fully", d, x)
            for k in range(1, d + 1):
                if d % k == 0:
                    yield ChannelSpec("block", d, x, k)
            for k in range(1, d + 1):
                yield ChannelSpec("weak", d, x, k)


def natural_partition(spec: ChannelSpec):
    if spec.family == "block":
        return block_partition(spec.d, spec.k)
    return singleton_partition(spec.d)


def run_verification(
    max_d: int = 4,
    tol: float = 1e-9,
    seed: int = 0,
    n_states: int = 50,
    inject_failure: bool = False,
) -> VerifyReport:
    rng = np.random.default_rng(seed)
    xs = (0.0, 0.3, 0.7, 1.0)
    rows = []

    def add(name, params, residual, check_tol):
        rows.append(CheckRow(name, params, float(residual), check_tol, residual <= check_tol))

    grid_desc = f"d<=({max_d}), x in {xs}"

    # CPTP: completeness and Choi positivity of every constructor output.
    worst = {f: 0.0 for f in ("fully", "block", "weak")}
    for spec in iter_specs(max_d, xs):
        report = validate_cptp(build_channel(spec), tol)
        worst[spec.family] = max(
            worst[spec.family],
            report.completeness_residual,
            max(0.0, -report.choi_min_eigenvalue),
        )
    for fam, res in worst.items():
        add(f"cptp/{fam}", grid_desc, res, tol)

    # Pinching identities, unitality, covariance on random states.
    states = {
        d: [random_density(d, rng) for _ in range(n_states)]
        for d in range(2, max_d + 1)
    }
    pinch_res = {f: 0.0 for f in worst}
    comp_pinch_res = {f: 0.0 for f in worst}
    unital_res = {f: 0.0 for f in worst}
    cov_res = {f: 0.0 for f in worst}
    comp_cov_res = 0.0
    for spec in iter_specs(max_d, xs):
        ch = build_channel(spec)
        comp = complementary(ch)
        part = natural_partition(spec)
        eye = np.eye(spec.d) / spec.d
        unital_res[spec.family] = max(
            unital_res[spec.family], float(np.max(np.abs(apply(ch, eye) - eye)))
        )
        unis = symmetry_operators(spec)
        u_env = complementary_covariance_unitary(spec.d)
        for rho in states[spec.d]:
            out = apply(ch, rho)
            pinch_res[spec.family] = max(
                pinch_res[spec.family],
                float(np.max(np.abs(pinch(out, part) - pinch(rho, part)))),
            )
            comp_pinch_res[spec.family] = max(
                comp_pinch_res[spec.family],
                float(
                    np.max(
                        np.abs(
                            kraus_apply(comp.kraus, rho)
                            - kraus_apply(comp.kraus, pinch(rho, part))
                        )
                    )
                ),
            )
        # Covariance needs only a couple of states per spec to stay fast.
        for rho in states[spec.d][:5]:
            for u in unis:
                lhs = apply(ch, u @ rho @ u.conj().T)
                rhs = u @ apply(ch, rho) @ u.conj().T
                cov_res[spec.family] = max(
                    cov_res[spec.family], float(np.max(np.abs(lhs - rhs)))
                )
            if spec.family == "fully":
                x_shift = unis[1]
                lhs = kraus_apply(comp.kraus, x_shift @ rho @ x_shift.conj().T)
                rhs = u_env @ kraus_apply(comp.kraus, rho) @ u_env.conj().T
                comp_cov_res = max(comp_cov_res, float(np.max(np.abs(lhs - rhs))))
    for fam in worst:
        add(f"pinch-absorb/{fam}", grid_desc, pinch_res[fam], tol)
        add(f"comp-pinch/{fam}", grid_desc, comp_pinch_res[fam], tol)
        add(f"unitality/{fam}", grid_desc, unital_res[fam], tol)
        add(f"covariance/{fam}", grid_desc, cov_res[fam], tol)
    add("comp-covariance/fully", grid_desc, comp_cov_res, tol)

    # Block-family twirl: averaging the symmetry group over a diagonal state
    # yields the maximally mixed state.
    twirl_res = 0.0
    for d in range(2, max_d + 1):
        for k in range(1, d + 1):
            if d % k != 0:
                continue
            spec = ChannelSpec("block", d, 0.5, k)
            unis = symmetry_operators(spec)
            p = rng.dirichlet(np.ones(d))
            rho_d = np.diag(p.astype(complex))
            avg = sum(u @ rho_d @ u.conj().T for u in unis) / len(unis)
            twirl_res = max(twirl_res, float(np.max(np.abs(avg - np.eye(d) / d))))
    add("twirl/block", f"d<=({max_d})", twirl_res, tol)

    # Degradability identity at the Choi level.
    deg_res = {f: 0.0 for f in worst}
    for spec in iter_specs(max_d, xs):
        deg_res[spec.family] = max(
            deg_res[spec.family], degradability_report(spec).residual
        )
    for fam, res in deg_res.items():
        add(f"degradability/{fam}", grid_desc, res, 1e-10)

    # Schur-Horn majorization on sampled density matrices.
    ok = True
    for d in range(2, max_d + 1):
        for _ in range(100):
            rho = random_density(d, rng)
            vals = np.linalg.eigvalsh(rho)
            if not majorizes(vals, np.real(np.diag(rho))):
                ok = False
    add("schur-horn", f"d<=({max_d}), 100 samples each", 0.0 if ok else 1.0, 0.5)

    # Fejer spectrum against direct eigendecomposition of the circulant block.
    fejer_res = 0.0
    for d in (max_d, 12):
        for k in range(1, d + 1):
            lam = fejer_eigenvalues(d, k).lambdas
            dft = np.real(np.fft.fft(window_overlap_sequence(d, k) / (d * k)))
            fejer_res = max(fejer_res, float(np.max(np.abs(np.sort(lam) - np.sort(dft)))))
            fejer_res = max(fejer_res, abs(np.sum(lam) - 1.0))
    add("fejer-dft", f"d in ({max_d}, 12), all k", fejer_res, tol)

    # Closed-form spectra of the complementary channel on I/d.
    spec_res = 0.0
    for d in range(2, max_d + 1):
        for x in xs:
            ch = build_channel(ChannelSpec("fully", d, x))
            m = kraus_apply(complementary(ch).kraus, np.eye(d) / d)
            spec_res = max(
                spec_res,
                float(
                    np.max(np.abs(np.linalg.eigvalsh(m) - spectrum_comp_mixed_fully(d, x)))
                ),
            )
            for k in range(1, d + 1):
                ch = build_channel(ChannelSpec("weak", d, x, k))
                m = kraus_apply(complementary(ch).kraus, np.eye(d) / d)
                spec_res = max(
                    spec_res,
                    float(
                        np.max(
                            np.abs(
                                np.linalg.eigvalsh(m) - comp_mixed_spectrum_weak(d, k, x)
                            )
                        )
                    ),
                )
    add("comp-mixed-spectrum", grid_desc, spec_res, tol)

    # Closed form vs independent simplex maximization.
    gap_res = {f: 0.0 for f in worst}
    for spec in iter_specs(max_d, xs):
        opt = maximize_diagonal(build_channel(spec), tol=1e-10)
        gap_res[spec.family] = max(
            gap_res[spec.family], abs(opt.value - closed_form_capacity(spec))
        )
    for fam, res in gap_res.items():
        add(f"optimizer-gap/{fam}", grid_desc, res, 1e-6)

    if inject_failure:
        # Deliberately broken Kraus set {0.5 I}: completeness residual 0.75.
        from .channels import KrausChannel

        broken = KrausChannel(2, 2, (0.5 * np.eye(2, dtype=complex),))
        report = validate_cptp(broken, tol)
        add("cptp/injected", "broken channel", report.completeness_residual, tol)

    return VerifyReport(tuple(rows))


def format_report(report: VerifyReport) -> str:
    lines = []
    name_w = max(len(r.name) for r in report.rows)
    for row in report.rows:
        status = "PASS" if row.passed else "FAIL"
        lines.append(
            f"{status}  {row.name:<{name_w}}  residual={row.residual:.3e}  "
            f"tol={row.tol:.1e}  [{row.params}]"
        )
    overall = "PASS" if report.passed else "FAIL"
    lines.append(f"overall: {overall} ({sum(r.passed for r in report.rows)}/{len(report.rows)})")
    return "\n".join(lines)
