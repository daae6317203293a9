"""Fisher information, Fubini-Study geometry, and geodesic verification.

All path functionals are estimated from sampled data with second-order
finite differences.  Derivatives are taken on amplitude coordinates
x_i = sqrt(p_i) rather than on the probabilities themselves: the Fisher
summand pdot_i^2 / p_i equals 4 xdot_i^2, which stays finite where p_i
vanishes.  When a path carries recorded real amplitudes the signed values
are used directly, so the estimate also stays clean across amplitude sign
changes (where sqrt(p) would have a kink).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .paths import ProbabilityPath
from .states import StateVector

FISHER_GUARD = 1e-12


@dataclass(frozen=True)
class FisherSample:
    """Path functionals at one parameter value.

    ``induced_speed_sq`` is the squared speed of the path in the
    Fubini-Study metric per unit parameter, (fisher + 4 phase_variance) / 4.
    """

    phi: float
    fisher: float
    phase_variance: float
    induced_speed_sq: float


@dataclass(frozen=True)
class GeodesicState:
    """Amplitude coordinates x_i = sqrt(p_i) and their parameter velocity."""

    x: np.ndarray
    xdot: np.ndarray
    phi: float


@dataclass(frozen=True)
class UnitarityReport:
    """Per-sample comparison of the state speed against the Fisher rate.

    ``speed_sq`` is the global-phase-invariant squared speed
    <psidot|psidot> - |<psi|psidot>|^2; for a constant-phase path it must
    equal fisher / 4, and for a norm-preserving parametrization both equal 1.
    ``residual`` is |speed_sq - fisher/4|; for paths with varying amplitude
    phases it equals the phase-variance term instead of vanishing.
    """

    phis: np.ndarray
    speed_sq: np.ndarray
    fisher: np.ndarray
    residual: np.ndarray
    unit_residual: np.ndarray
    phase_variance: np.ndarray


def _amplitude_coords(path: ProbabilityPath) -> tuple[np.ndarray, bool]:
    """Real derivative coordinates for the path, and whether phases vary."""
    if path.amps is not None:
        amps = np.asarray(path.amps)
        if np.iscomplexobj(amps):
            if np.max(np.abs(amps.imag)) <= 1e-12:
                return np.ascontiguousarray(amps.real, dtype=np.float64), False
            return np.abs(amps), True
        return np.ascontiguousarray(amps, dtype=np.float64), False
    return np.sqrt(path.probs), False


def _fisher_and_phase(path: ProbabilityPath) -> tuple[np.ndarray, np.ndarray]:
    coords, phases_vary = _amplitude_coords(path)
    xdot = np.gradient(coords, path.phis, axis=0, edge_order=2)
    fisher = 4.0 * np.sum(xdot**2, axis=1)
    if phases_vary:
        angles = np.unwrap(np.angle(np.asarray(path.amps)), axis=0)
        angdot = np.gradient(angles, path.phis, axis=0, edge_order=2)
        mean = np.sum(path.probs * angdot, axis=1)
        phase_var = np.sum(path.probs * angdot**2, axis=1) - mean**2
        phase_var = np.maximum(phase_var, 0.0)
    else:
        phase_var = np.zeros_like(fisher)
    return fisher, phase_var


def _require_samples(path: ProbabilityPath, minimum: int):
    path.require_increasing()
    if path.n_samples < minimum:
        raise ValueError(
            f"need at least {minimum} samples, got {path.n_samples}")


def fisher_discrete(path: ProbabilityPath) -> list[FisherSample]:
    """Estimate the Fisher information function along a sampled path.

    Interior samples use central differences, the two endpoints one-sided
    second-order stencils.  The phase-variance term is extracted from
    recorded complex amplitudes (zero for constant-phase paths).
    """
    _require_samples(path, 3)
    fisher, phase_var = _fisher_and_phase(path)
    return [
        FisherSample(float(p), float(f), float(v), float((f + 4.0 * v) / 4.0))
        for p, f, v in zip(path.phis, fisher, phase_var)
    ]


def unitarity_identity_check(path: ProbabilityPath) -> UnitarityReport:
    """Check that the state speed matches the Fisher rate along the path.

    Requires recorded amplitudes.  ``unit_residual`` additionally reports
    |fisher/4 - 1|, the distance from a unit-speed (norm-preserving unitary)
    parametrization.
    """
    _require_samples(path, 3)
    if path.amps is None:
        raise ValueError("path must carry recorded amplitudes")
    amps = np.asarray(path.amps, dtype=np.complex128)
    cdot = np.gradient(amps, path.phis, axis=0, edge_order=2)
    raw_rate = np.sum(np.abs(cdot) ** 2, axis=1)
    overlap = np.sum(np.conjugate(amps) * cdot, axis=1)
    speed_sq = raw_rate - np.abs(overlap) ** 2
    fisher, phase_var = _fisher_and_phase(path)
    return UnitarityReport(
        phis=path.phis.copy(),
        speed_sq=speed_sq,
        fisher=fisher,
        residual=np.abs(speed_sq - fisher / 4.0),
        unit_residual=np.abs(fisher / 4.0 - 1.0),
        phase_variance=phase_var,
    )


def fubini_study_distance(a: StateVector, b: StateVector) -> float:
    """Angle arccos|<a|b>| between two states, in [0, pi/2]."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes))
    return float(np.arccos(np.clip(overlap, 0.0, 1.0)))


def action(path: ProbabilityPath, phi_from: float, phi_to: float) -> float:
    """Path-length action, the trapezoidal integral of sqrt(fisher)/2.

    The integration bounds may fall between samples; the integrand is
    linearly interpolated there.
    """
    _require_samples(path, 3)
    phis = path.phis
    if phi_to < phi_from:
        raise ValueError("phi_to must be >= phi_from")
    if phi_from < phis[0] - 1e-12 or phi_to > phis[-1] + 1e-12:
        raise ValueError("integration interval must lie within the path range")
    if phi_to == phi_from:
        return 0.0
    fisher, _ = _fisher_and_phase(path)
    integrand = 0.5 * np.sqrt(np.maximum(fisher, 0.0))
    inside = (phis > phi_from) & (phis < phi_to)
    grid = np.concatenate(([phi_from], phis[inside], [phi_to]))
    values = np.concatenate((
        [np.interp(phi_from, phis, integrand)],
        integrand[inside],
        [np.interp(phi_to, phis, integrand)],
    ))
    return float(np.trapezoid(values, grid))


def _second_derivative(coords: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Three-point second derivative at samples 1..n-2 (rows of the result)."""
    h1 = (phis[1:-1] - phis[:-2])[:, np.newaxis]
    h2 = (phis[2:] - phis[1:-1])[:, np.newaxis]
    return 2.0 * (
        h2 * coords[:-2] - (h1 + h2) * coords[1:-1] + h1 * coords[2:]
    ) / (h1 * h2 * (h1 + h2))


def geodesic_residual(path: ProbabilityPath, index: int) -> np.ndarray:
    """Residual of the geodesic equation of motion at one interior sample.

    Evaluates xddot_i - (fisherdot/fisher) xdot_i + (fisher/4) x_i per
    coordinate with finite-difference derivatives.  Valid indices are
    2..n-3 so that every stencil, including the one for fisherdot, uses
    central differences only.
    """
    _require_samples(path, 5)
    n = path.n_samples
    if not 2 <= index <= n - 3:
        raise ValueError(f"index must lie in [2, {n - 3}] for central stencils")
    coords, _ = _amplitude_coords(path)
    xdot = np.gradient(coords, path.phis, axis=0, edge_order=2)
    fisher = 4.0 * np.sum(xdot**2, axis=1)
    if fisher[index] < FISHER_GUARD:
        raise ValueError(
            f"fisher value {fisher[index]:g} at sample {index} below guard; "
            "the equation of motion is singular for stationary paths")
    fdot = np.gradient(fisher, path.phis, edge_order=2)
    xddot = _second_derivative(coords, path.phis)[index - 1]
    return xddot - (fdot[index] / fisher[index]) * xdot[index] \
        + (fisher[index] / 4.0) * coords[index]


def geodesic_residual_profile(path: ProbabilityPath) -> tuple[np.ndarray, np.ndarray]:
    """Max-abs geodesic residual at every valid interior sample.

    Returns (phis[2:n-2], residuals); raises if fisher falls below the
    division guard anywhere in that range.
    """
    _require_samples(path, 5)
    coords, _ = _amplitude_coords(path)
    phis = path.phis
    xdot = np.gradient(coords, phis, axis=0, edge_order=2)
    fisher = 4.0 * np.sum(xdot**2, axis=1)
    lo, hi = 2, path.n_samples - 2  # slice end, valid indices 2..n-3
    if np.any(fisher[lo:hi] < FISHER_GUARD):
        raise ValueError("fisher below guard inside the path; residual undefined")
    fdot = np.gradient(fisher, phis, edge_order=2)
    xddot = _second_derivative(coords, phis)[lo - 1:hi - 1]
    res = xddot - (fdot[lo:hi] / fisher[lo:hi])[:, np.newaxis] * xdot[lo:hi] \
        + (fisher[lo:hi] / 4.0)[:, np.newaxis] * coords[lo:hi]
    return phis[lo:hi].copy(), np.max(np.abs(res), axis=1)


def integrate_geodesic(
    init: GeodesicState, fisher_const: float, phi_end: float, dt: float
) -> list[GeodesicState]:
    """Integrate the constant-Fisher oscillator xddot = -(fisher/4) x.

    Classic fixed-step fourth-order Runge-Kutta; the final partial step is
    shortened to land on phi_end.  Exact solution for comparison:
    x(phi) = x0 cos(w dphi) + (xdot0 / w) sin(w dphi) with w = sqrt(F)/2.
    """
    if not np.isfinite(dt) or dt <= 0:
        raise ValueError(f"dt must be positive and finite, got {dt}")
    if not np.isfinite(fisher_const) or fisher_const <= 0:
        raise ValueError(f"fisher_const must be positive, got {fisher_const}")
    x = np.asarray(init.x, dtype=np.float64).copy()
    v = np.asarray(init.xdot, dtype=np.float64).copy()
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))
            and np.isfinite(init.phi) and np.isfinite(phi_end)):
        raise ValueError("non-finite input to geodesic integrator")
    if abs(float(np.sum(x * x)) - 1.0) > 1e-8:
        raise ValueError("initial amplitudes must satisfy sum x^2 = 1")
    if abs(float(np.sum(x * v))) > 1e-8:
        raise ValueError("initial velocity must be tangent: sum x*xdot = 0")
    if phi_end < init.phi:
        raise ValueError("phi_end must be >= the initial phi")

    omega_sq = fisher_const / 4.0

    def rk4(x, v, h):
        k1x, k1v = v, -omega_sq * x
        k2x, k2v = v + 0.5 * h * k1v, -omega_sq * (x + 0.5 * h * k1x)
        k3x, k3v = v + 0.5 * h * k2v, -omega_sq * (x + 0.5 * h * k2x)
        k4x, k4v = v + h * k3v, -omega_sq * (x + h * k3x)
        return (x + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x),
                v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v))

    span = phi_end - float(init.phi)
    n_full = int(np.floor(span / dt + 1e-9))
    remainder = span - n_full * dt
    states = [GeodesicState(x.copy(), v.copy(), float(init.phi))]
    for k in range(1, n_full + 1):
        x, v = rk4(x, v, dt)
        states.append(GeodesicState(x, v, float(init.phi) + k * dt))
    if remainder > 1e-12 * max(1.0, span):
        x, v = rk4(x, v, remainder)
        states.append(GeodesicState(x, v, float(phi_end)))
    return states


def input_information(path: ProbabilityPath, phi0: float) -> float:
    """Fisher value at the start of computation, interpolated from samples."""
    _require_samples(path, 3)
    if phi0 < path.phis[0] - 1e-12 or phi0 > path.phis[-1] + 1e-12:
        raise ValueError("phi0 must lie within the path range")
    fisher, _ = _fisher_and_phase(path)
    return float(np.interp(phi0, path.phis, fisher))
