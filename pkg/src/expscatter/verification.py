"""Named self-checks: the executable form of the package's accuracy claims.

Each check measures a residual against a pinned tolerance and reports one
machine-readable line.  The names are stable identifiers used by the CLI
``verify`` subcommand and by downstream tooling; do not rename casually.

Checks with a single tolerance report the raw residual.  Checks that
bundle sub-assertions with different tolerances report the worst
residual/tolerance ratio against a tolerance of 1, with the raw parts in
the detail text.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import exp_barrier, numeric_scatter, potentials, specfun
from .exp_barrier import PhysicalParams
from .numeric_scatter import SolverConfig
from .waves import angle_distance

_Q_GRID = np.logspace(np.log10(0.01), np.log10(5.0), 200)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str


def run_all() -> list[CheckResult]:
    """Run every check in a stable order."""
    return [
        check_eq14_unitarity(),
        check_eq14_endpoints(),
        check_eq14_numeric_agreement(),
        check_reciprocity(),
        check_eq18_phase_relation(),
        check_eq23_right_amplitude(),
        check_v0_independence(),
        check_flux_wronskian_rk4(),
        check_gamma_identity(),
        check_eq12_identities(),
        check_rect_barrier_oracle(),
        check_eq13_flux_ratios(),
        check_cli_determinism(),
    ]


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(
            f"{status} {res.name} residual={res.residual:.3e} "
            f"tol={res.tolerance:.3e} ({res.detail})"
        )
    failed = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)


def check_eq14_unitarity() -> CheckResult:
    """T + R = 1 over 200 q values in [0.01, 5]."""
    worst = 0.0
    for q in _Q_GRID:
        t, r = exp_barrier.transmission_reflection(float(q))
        worst = max(worst, abs(t + r - 1.0))
    return _single("eq14-unitarity", worst, 1e-12, f"{_Q_GRID.size} q-points in [0.01, 5]")


def check_eq14_endpoints() -> CheckResult:
    """Limits: T(q -> 0+) -> 0, T(10) -> 1, R strictly decreasing."""
    t_small, _ = exp_barrier.transmission_reflection(1e-12)
    t_large, _ = exp_barrier.transmission_reflection(10.0)
    r_values = [exp_barrier.transmission_reflection(float(q))[1] for q in _Q_GRID]
    monotone_violation = max(0.0, max(np.diff(r_values)))
    parts = [
        (t_small, 1e-10),
        (1.0 - t_large, 1e-12),
        (monotone_violation, 1e-15),
    ]
    detail = (
        f"T(1e-12)={t_small:.3e}, 1-T(10)={1.0 - t_large:.3e}, "
        f"R-monotone-violation={monotone_violation:.3e}"
    )
    return _ratio("eq14-endpoints", parts, detail)


def check_eq14_numeric_agreement() -> CheckResult:
    """Independent ODE solve reproduces T(q) at p = 2, q in {0.25, 0.5, 1, 2}."""
    start = time.perf_counter()
    model = potentials.exponential(1.0, 1.0)  # p = 2 under default units
    worst = 0.0
    for q in (0.25, 0.5, 1.0, 2.0):
        energy = q * q / 4.0  # delta = 1/4
        result = numeric_scatter.solve(model, energy)
        t_exact, _ = exp_barrier.transmission_reflection(q)
        worst = max(worst, abs(result.t_coeff - t_exact))
    elapsed = time.perf_counter() - start
    return _single(
        "eq14-numeric-agreement", worst, 1e-6,
        f"4 energies, default config, {elapsed:.2f}s",
    )


def check_reciprocity() -> CheckResult:
    """theta and T agree between incidence sides, analytically and numerically."""
    worst_analytic = 0.0
    for p in (1.0, 2.0, 4.0):
        for q in np.linspace(0.1, 4.0, 30):
            left = exp_barrier.amplitudes(p, float(q), "left")
            right = exp_barrier.amplitudes(p, float(q), "right")
            worst_analytic = max(worst_analytic, angle_distance(left.theta, right.theta))
    model = potentials.exponential(1.0, 1.0)
    energy = 0.75**2 / 4.0
    res_l = numeric_scatter.solve(model, energy, side="left")
    res_r = numeric_scatter.solve(model, energy, side="right")
    theta_gap = angle_distance(res_l.theta, res_r.theta)
    t_gap = abs(res_l.t_coeff - res_r.t_coeff)
    parts = [(worst_analytic, 1e-10), (theta_gap, 1e-6), (t_gap, 1e-8)]
    detail = (
        f"analytic max|dtheta|={worst_analytic:.3e}, numeric |dtheta|={theta_gap:.3e}, "
        f"numeric |dT|={t_gap:.3e} at (p,q)=(2,0.75)"
    )
    return _ratio("reciprocity", parts, detail)


def check_eq18_phase_relation() -> CheckResult:
    """(phi_l - theta_l) + (phi_r - theta_r) is pi modulo 2 pi."""
    worst = 0.0
    for p in (1.0, 2.0, 4.0):
        for q in (0.3, 0.7, 1.5):
            phi_l, theta_l, _, _ = exp_barrier.phase_shifts(p, q, "left")
            phi_r, theta_r, _, _ = exp_barrier.phase_shifts(p, q, "right")
            total = (phi_l - theta_l) + (phi_r - theta_r)
            worst = max(worst, angle_distance(total, math.pi))
    return _single("eq18-phase-relation", worst, 1e-10, "(p,q) grid {1,2,4}x{0.3,0.7,1.5}")


def check_eq23_right_amplitude() -> CheckResult:
    """Right-incidence r has modulus e^{-pi q} and phase -pi/2 identically."""
    worst = 0.0
    for q in _Q_GRID:
        if q <= specfun.Q_MIN:
            continue
        data = exp_barrier.amplitudes(2.0, float(q), "right")
        worst = max(worst, abs(abs(data.r_amp) - math.exp(-math.pi * float(q))))
        worst = max(worst, angle_distance(data.phi, -0.5 * math.pi))
        phi, _, _, _ = exp_barrier.phase_shifts(2.0, float(q), "right")
        worst = max(worst, angle_distance(phi, 1.5 * math.pi))
    return _single("eq23-right-amplitude", worst, 1e-12, "modulus, phase, 3pi/2 reduction")


def check_v0_independence() -> CheckResult:
    """T depends on q only; scaling v0 translates the wavefunction."""
    q = 0.8
    energy = q * q / 4.0
    t_values = []
    for v0 in (0.5, 1.0, math.e):
        model = potentials.exponential(v0, 1.0)
        t_values.append(numeric_scatter.solve(model, energy).t_coeff)
    t_spread = max(t_values) - min(t_values)

    p, shift = 1.2, 1.0
    grid = np.linspace(-6.0, 2.0, 41)
    scaled = exp_barrier.exact_wavefunction(p * math.exp(shift / 2.0), 0.9, "left", grid)
    translated = exp_barrier.exact_wavefunction(p, 0.9, "left", grid + shift)
    psi_gap = float(np.max(np.abs(scaled.psi - translated.psi)))
    worst = max(t_spread, psi_gap)
    detail = f"numeric T spread={t_spread:.3e} over v0 in {{0.5,1,e}}, translation gap={psi_gap:.3e}"
    return _single("v0-independence", worst, 1e-8, detail)


def check_flux_wronskian_rk4() -> CheckResult:
    """Flux profile constancy, Wronskian drift, and measured RK4 order."""
    model = potentials.exponential(1.0, 1.0)
    energy = 0.25  # q = 1
    config = numeric_scatter.default_config(model)
    basis = numeric_scatter.integrate_basis(model, energy, config)
    d = exp_barrier.reduce_params(PhysicalParams(1.0, 1.0, 0.5, 1.0), energy)
    result = numeric_scatter.match_hankel_basis(basis, d.p, d.q, config)
    wave = numeric_scatter.scattering_wavefunction(basis, result)
    profile = wave.flux_profile
    flux_spread = float((np.max(profile) - np.min(profile)) / abs(np.mean(profile)))
    drift = basis.u.wronskian_drift

    # order study: error of the marched u at x = 4 against the closed-form
    # solution with the same seed values; drift itself superconverges near
    # h^5 here (its per-step errors concentrate at the stiff right edge),
    # so the solution value is the honest h^4 observable
    x_probe = 3.0
    reference = _seeded_closed_form(d.p, d.q, x_probe)
    steps = [1.0 / 100.0, 1.0 / 200.0, 1.0 / 400.0]
    errors = []
    for h in steps:
        coarse = SolverConfig(
            x_left=-4.0, x_right=x_probe, step=h, match_tolerance=1e-2
        )
        marched = numeric_scatter.integrate_basis(model, energy, coarse)
        errors.append(abs(float(marched.u.psi[-1].real) - reference))
    slope = float(np.polyfit(np.log(steps), np.log(errors), 1)[0])
    parts = [(flux_spread, 1e-8), (drift, 1e-8), (abs(slope - 4.0), 0.3)]
    detail = (
        f"flux spread={flux_spread:.3e}, drift={drift:.3e}, "
        f"order={slope:.3f} from steps a/100..a/400"
    )
    return _ratio("flux-wronskian-rk4", parts, detail)


def _seeded_closed_form(p: float, q: float, x: float) -> float:
    """u(x) for u(0)=1, u'(0)=0 built from the exact oscillatory pair."""
    b1_0 = specfun.bessel_j_imag_order(q, p, sign=1)
    b2_0 = specfun.bessel_j_imag_order(q, p, sign=-1)
    det = b1_0.value * b2_0.dvalue - b1_0.dvalue * b2_0.value
    c1 = b2_0.dvalue / det  # [value, d/dx] rows; d/dx = (z/2) d/dz cancels in c1, c2
    c2 = -b1_0.dvalue / det
    z = p * math.exp(0.5 * x)
    b1 = specfun.bessel_j_imag_order(q, z, sign=1)
    b2 = specfun.bessel_j_imag_order(q, z, sign=-1)
    return float((c1 * b1.value + c2 * b2.value).real)


def check_gamma_identity() -> CheckResult:
    """|Gamma(1+iq)|^2 sinh(pi q) = pi q on q in [0.1, 5]."""
    worst = 0.0
    for q in np.linspace(0.1, 5.0, 99):
        g = specfun.complex_gamma(1.0 + 1j * float(q))
        lhs = abs(g) ** 2 * math.sinh(math.pi * float(q))
        worst = max(worst, abs(lhs / (math.pi * float(q)) - 1.0))
    return _single("gamma-identity", worst, 1e-12, "99 q-points, relative")


def check_eq12_identities() -> CheckResult:
    """Bessel-pair Wronskian and Hankel conjugation on a (q, z) grid."""
    worst = 0.0
    for q in np.linspace(0.1, 5.0, 8):
        q = float(q)
        scale = math.exp(q * math.pi)
        for z in np.linspace(0.1, 10.0, 9):
            z = float(z)
            jp = specfun.bessel_j_imag_order(q, z, sign=1)
            jm = specfun.bessel_j_imag_order(q, z, sign=-1)
            wronskian = jp.value * jm.dvalue - jp.dvalue * jm.value
            expected = -2j * math.sinh(q * math.pi) / (math.pi * z)
            worst = max(worst, abs(wronskian - expected) / abs(expected))
            h1 = specfun.hankel_imag_order(q, z, kind=1)
            h2 = specfun.hankel_imag_order(q, z, kind=2)
            worst = max(
                worst,
                abs(h1.value.conjugate() - scale * h2.value) / (scale * abs(h2.value)),
            )
    return _single("eq12-identities", worst, 1e-9, "8x9 (q,z) grid in [0.1,5]x[0.1,10]")


def check_rect_barrier_oracle() -> CheckResult:
    """Rectangular barrier against the hand-derived closed form, plus quadrature.

    For any symmetric potential r and t are in quadrature, so
    2 (phi - theta) is pi modulo 2 pi; the signed difference at these
    barrier parameters is -pi/2.
    """
    energy, v0, half_width = 0.5, 1.0, 1.0
    model = potentials.rectangular(v0, half_width)
    result = numeric_scatter.solve(model, energy)
    kappa = math.sqrt(v0 - energy)  # sqrt(2m(V0-E))/hbar under default units
    sinh_term = math.sinh(kappa * 2.0 * half_width)
    t_closed = 1.0 / (1.0 + v0**2 * sinh_term**2 / (4.0 * energy * (v0 - energy)))
    t_gap = abs(result.t_coeff - t_closed)
    quadrature = angle_distance(2.0 * (result.phi - result.theta), math.pi)
    parts = [(t_gap, 1e-8), (quadrature, 2e-6)]
    detail = (
        f"|T-closed|={t_gap:.3e}, quadrature residual={quadrature:.3e}, "
        f"phi-theta={result.phi - result.theta:+.6f}"
    )
    return _ratio("rect-barrier-oracle", parts, detail)


def check_eq13_flux_ratios() -> CheckResult:
    """Closed-form flux ratios reproduce T and R; fluxes conserve exactly."""
    params = PhysicalParams(v0=1.0, a=1.0, mass=0.5, hbar=1.0)
    worst = 0.0
    for q in (0.25, 0.5, 1.0, 2.0, 4.0):
        t, r = exp_barrier.transmission_reflection(q)
        triple = exp_barrier.fluxes(2.0, q, params)
        worst = max(worst, abs(triple.j_transmitted / triple.j_incident - t))
        worst = max(worst, abs(triple.j_reflected / triple.j_incident - r))
        conservation = abs(
            triple.j_incident - triple.j_reflected - triple.j_transmitted
        ) / triple.j_incident
        worst = max(worst, conservation)
    return _single("eq13-flux-ratios", worst, 1e-12, "ratios and conservation, 5 q-values")


def check_cli_determinism() -> CheckResult:
    """Identical sweep and plot invocations produce byte-identical output."""
    from . import cli  # local import: cli depends on this module for verify

    spec = cli.SweepSpec(
        model=potentials.exponential(1.0, 1.0),
        e_min=0.05,
        e_max=1.0,
        n_points=5,
        spacing="log",
        sides="both",
        methods="both",
        units=numeric_scatter.DEFAULT_UNITS,
    )
    csv_a = cli.format_sweep_csv(spec, cli.run_sweep(spec))
    csv_b = cli.format_sweep_csv(spec, cli.run_sweep(spec))
    table = cli.parse_sweep_table(csv_a.splitlines())
    svg_a = cli.render_sweep_chart(table, log_x=True)
    svg_b = cli.render_sweep_chart(table, log_x=True)
    same = csv_a == csv_b and svg_a == svg_b
    detail = f"sweep bytes {'match' if csv_a == csv_b else 'differ'}, plot bytes {'match' if svg_a == svg_b else 'differ'}"
    return CheckResult(
        name="cli-determinism",
        passed=same,
        residual=0.0 if same else 1.0,
        tolerance=0.5,
        detail=detail,
    )


def _single(name: str, residual: float, tolerance: float, detail: str) -> CheckResult:
    return CheckResult(
        name=name,
        passed=residual < tolerance,
        residual=float(residual),
        tolerance=tolerance,
        detail=detail,
    )


def _ratio(name: str, parts: list[tuple[float, float]], detail: str) -> CheckResult:
    worst = max(residual / tolerance for residual, tolerance in parts)
    return CheckResult(
        name=name,
        passed=worst < 1.0,
        residual=float(worst),
        tolerance=1.0,
        detail=detail,
    )
