"""Reduced kinetic equations and generator extraction from smooth maps.

The reduced field (r, alpha) evolves under

    dr/dt     = -i [h, r] + |zeta><alpha| + |alpha><zeta|
                + (1/2) {gamma_up - gamma_down, r} + gamma_up
                + sum_j eta_j (u_j r u_j^dag - r),
    dalpha/dt = -i h alpha + (1/2)(gamma_up - gamma_down) alpha + zeta
                + sum_j eta_j (u_j - 1) alpha,

in natural units (hbar = 1), with h Hermitian, gamma_up/gamma_down
Hermitian PSD rates, coherent sources zeta and scattering unitaries u_j
whose rates eta_j >= 0 sum to one.  Note the bookkeeping this fixes: the
inhomogeneous (state-independent) term is gamma_up alone, and the
anticommutator carries gamma_up - gamma_down.

Generator extraction inverts this correspondence for smooth families of
Bogoliubov maps.

Closed system (passive family, X_up unitary):

    h = (i/2) (Y - Y^dag),      Y = dX_up/dt X_up^{-1},

all other generators vanish.

Open system with vacuum environment (X_down_S = 0):

    Y   = dX_up_S/dt X_up_S^{-1},  Y_r = Y + Y^dag,  Y_i = -i (Y - Y^dag),
    D   = X_down_C X_down_C^dag,
    W   = dD/dt - Y D - D Y^dag,

    h = -Y_i / 2,    gamma_up = W,    gamma_down = W - Y_r.

The rate assignment follows from matching the evolution identity
dr/dt = Y r + r Y^dag + W (exact for r(t) = X_up_S r0 X_up_S^dag + D)
against the kinetic equations term by term: the inhomogeneous term is
gamma_up, and the anticommutator coefficient gives
gamma_up - gamma_down = Y_r.  A scalar amplifier family
(X_up_S, X_down_C) = (cosh kt, sinh kt) then yields gamma_up = 2k tanh(kt)
and gamma_down = 0, i.e. a vacuum-pumped amplifier creates but never
destroys particles; the swapped assignment would predict the opposite.

Existence of valid kinetics additionally requires W >= 0 and
W - Y_r >= 0.  Extraction reports these as witnesses instead of
enforcing them: a failed witness is physics (no valid reduced kinetics
there), not a numerical error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DerivativeUnavailableError,
    DimensionMismatchError,
    InvalidMomentsError,
    NonHermitianError,
    NotClassicalClosedError,
    PhysicalityLostError,
    SingularMatrixError,
)
from .numerics import (
    OdeProblem,
    central_difference,
    hermiticity_residual,
    is_psd,
    max_abs,
    solve_ode,
)
from .rsf import ReducedField

HBAR = 1.0
UNITARY_TOL = 1e-10
ETA_SUM_TOL = 1e-10
CONDITION_LIMIT = 1e12
DEFAULT_FD_STEP = 1e-6
DRIFT_PSD_TOL = 1e-6


def _as_matrix(a, what: str) -> np.ndarray:
    m = np.atleast_2d(np.asarray(a, dtype=complex))
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"{what} must be square, got {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class KineticGenerators:
    """Generator set (h, zeta, gamma_up, gamma_down, scatterers).

    Hermiticity of h and the rates, unitarity of the scatterers and the
    eta-sum rule are enforced at construction.  Positivity of the rates
    is *not*: extracted generators may legitimately fail it, and
    ``psd_witnesses`` / ``validity_report`` expose the verdict.
    """

    h: np.ndarray
    zeta: np.ndarray
    gamma_up: np.ndarray
    gamma_down: np.ndarray
    scatterers: tuple = ()

    def __post_init__(self):
        h = _as_matrix(self.h, "h")
        n = h.shape[0]
        zeta = np.asarray(self.zeta, dtype=complex).ravel()
        gu = _as_matrix(self.gamma_up, "gamma_up")
        gd = _as_matrix(self.gamma_down, "gamma_down")
        if zeta.size != n or gu.shape != (n, n) or gd.shape != (n, n):
            raise DimensionMismatchError("generator dimensions differ")
        for name, m in (("h", h), ("gamma_up", gu), ("gamma_down", gd)):
            if hermiticity_residual(m) > 1e-9 * (1.0 + max_abs(m)):
                raise NonHermitianError(f"{name} is not Hermitian")
        scat = []
        for eta_j, u_j in self.scatterers:
            u_j = _as_matrix(u_j, "scatterer")
            if u_j.shape != (n, n):
                raise DimensionMismatchError("scatterer dimension differs")
            if eta_j < 0:
                raise InvalidMomentsError(f"scattering rate eta={eta_j} < 0")
            if max_abs(u_j @ u_j.conj().T - np.eye(n)) > UNITARY_TOL:
                raise InvalidMomentsError("scatterer is not unitary")
            scat.append((float(eta_j), u_j))
        if scat:
            total = sum(eta for eta, _ in scat)
            if abs(total - 1.0) > ETA_SUM_TOL:
                raise InvalidMomentsError(f"scattering rates sum to {total}, not 1")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "gamma_up", gu)
        object.__setattr__(self, "gamma_down", gd)
        object.__setattr__(self, "scatterers", tuple(scat))

    @classmethod
    def zeros(cls, n_modes: int) -> "KineticGenerators":
        z = np.zeros((n_modes, n_modes), dtype=complex)
        return cls(z, np.zeros(n_modes, dtype=complex), z, z)

    @property
    def n_modes(self) -> int:
        return self.h.shape[0]

    def psd_witnesses(self) -> tuple[float, float]:
        """Smallest eigenvalues of (gamma_up, gamma_down)."""
        _, w_up = is_psd(self.gamma_up, 0.0)
        _, w_dn = is_psd(self.gamma_down, 0.0)
        return w_up, w_dn


def kinetic_rhs(
    rf: ReducedField, gen: KineticGenerators
) -> tuple[np.ndarray, np.ndarray]:
    """Right-hand side (dr/dt, dalpha/dt) of the kinetic equations."""
    if gen.n_modes != rf.n_modes:
        raise DimensionMismatchError(
            f"generators act on {gen.n_modes} modes, field has {rf.n_modes}"
        )
    return _raw_rhs(rf.r, rf.alpha, gen)


def _raw_rhs(r, alpha, gen):
    h, zeta = gen.h, gen.zeta
    diff = gen.gamma_up - gen.gamma_down
    dr = (
        -1j * (h @ r - r @ h)
        + np.outer(zeta, alpha.conj())
        + np.outer(alpha, zeta.conj())
        + 0.5 * (diff @ r + r @ diff)
        + gen.gamma_up
    )
    dalpha = -1j * (h @ alpha) + 0.5 * (diff @ alpha) + zeta
    for eta_j, u_j in gen.scatterers:
        dr = dr + eta_j * (u_j @ r @ u_j.conj().T - r)
        dalpha = dalpha + eta_j * (u_j @ alpha - alpha)
    return dr, dalpha


def integrate_kinetics(
    rf0: ReducedField,
    gen,
    t_span: tuple[float, float],
    sample_times: Sequence[float],
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> list[ReducedField]:
    """Integrate the kinetic equations; returns snapshots at sample times.

    ``gen`` is either a constant ``KineticGenerators`` or a callable
    ``t -> KineticGenerators`` evaluated inside the integrator, so
    adaptive steps see the exact time dependence.  Each snapshot is
    re-validated; positivity loss beyond the drift tolerance raises
    ``PhysicalityLostError`` with the offending time.
    """
    n = rf0.n_modes
    gen_at = gen if callable(gen) else (lambda _t: gen)
    if gen_at(t_span[0]).n_modes != n:
        raise DimensionMismatchError("generator/field mode counts differ")

    def rhs(t, y):
        r = y[: n * n].reshape(n, n)
        alpha = y[n * n:]
        dr, dalpha = _raw_rhs(r, alpha, gen_at(t))
        return np.concatenate([dr.ravel(), dalpha])

    y0 = np.concatenate([rf0.r.ravel(), rf0.alpha])
    problem = OdeProblem(y0, rhs, t_span, rtol=rtol, atol=atol)
    snapshots = solve_ode(problem, sample_times)
    out = []
    for t, y in zip(sample_times, snapshots):
        r = y[: n * n].reshape(n, n)
        alpha = y[n * n:]
        herm = hermiticity_residual(r)
        if herm > 1e-9 * (1.0 + max_abs(r)):
            raise PhysicalityLostError("Hermiticity lost", herm, t)
        r = 0.5 * (r + r.conj().T)
        try:
            out.append(ReducedField(r, alpha, psd_tol=DRIFT_PSD_TOL))
        except Exception as exc:
            _, witness = is_psd(r, 0.0)
            raise PhysicalityLostError(f"positivity lost: {exc}", witness, t)
    return out


def _derivative(family, t, analytic, fd_step):
    if analytic is not None:
        return np.atleast_2d(np.asarray(analytic(t), dtype=complex))
    return np.atleast_2d(central_difference(lambda s: family(s), t, fd_step))


def _checked_inverse(x, what):
    cond = np.linalg.cond(x)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularMatrixError(f"{what} is numerically singular (cond={cond:.3e})")
    return np.linalg.inv(x)


def extract_closed_generator(
    x_up: Callable[[float], np.ndarray],
    t: float,
    dx_up: Callable[[float], np.ndarray] | None = None,
    fd_step: float = DEFAULT_FD_STEP,
    unitary_tol: float = 1e-8,
) -> np.ndarray:
    """Hamiltonian of a smooth passive family: h = (i/2)(Y - Y^dag).

    ``x_up`` must evaluate to a unitary matrix near ``t`` (checked); the
    derivative is taken from ``dx_up`` when supplied, otherwise by
    central differences with step ``fd_step``.
    """
    x = _as_matrix(x_up(t), "X_up")
    n = x.shape[0]
    if max_abs(x @ x.conj().T - np.eye(n)) > unitary_tol:
        raise NotClassicalClosedError(
            "family is not passive: X_up is not unitary at the requested time"
        )
    y = _derivative(x_up, t, dx_up, fd_step) @ _checked_inverse(x, "X_up")
    h = 0.5j * (y - y.conj().T) * HBAR
    return h


def extract_open_generators(
    x_up_s: Callable[[float], np.ndarray],
    x_down_c: Callable[[float], np.ndarray],
    t: float,
    dx_up_s: Callable[[float], np.ndarray] | None = None,
    dx_down_c: Callable[[float], np.ndarray] | None = None,
    fd_step: float = DEFAULT_FD_STEP,
) -> KineticGenerators:
    """Generators (h, gamma_up, gamma_down) of a vacuum-environment family.

    Implements the correspondence documented in the module docstring.
    Positivity of the extracted rates is reported by the caller via
    ``psd_witnesses`` or ``validity_report``, never silently enforced.
    """
    xs = _as_matrix(x_up_s(t), "X_up_S")
    xc = _as_matrix(x_down_c(t), "X_down_C")
    if xs.shape[0] != xc.shape[0]:
        raise DimensionMismatchError("X_up_S / X_down_C row counts differ")
    dxs = _derivative(x_up_s, t, dx_up_s, fd_step)
    dxc = _derivative(x_down_c, t, dx_down_c, fd_step)
    if dxs.shape != xs.shape or dxc.shape != xc.shape:
        raise DerivativeUnavailableError("derivative shape mismatch")
    y = dxs @ _checked_inverse(xs, "X_up_S")
    y_r = y + y.conj().T
    y_i = -1j * (y - y.conj().T)
    d = xc @ xc.conj().T
    dd = dxc @ xc.conj().T + xc @ dxc.conj().T
    w = dd - y @ d - d @ y.conj().T
    w = 0.5 * (w + w.conj().T)
    h = -0.5 * HBAR * y_i
    n = xs.shape[0]
    return KineticGenerators(
        h=h,
        zeta=np.zeros(n, dtype=complex),
        gamma_up=w,
        gamma_down=w - y_r,
    )


@dataclass(frozen=True, eq=False)
class GeneratorTrajectory:
    """Generators sampled along a strictly ascending time grid."""

    times: np.ndarray
    generators: tuple
    gamma_up_witness: np.ndarray = field(init=False)
    gamma_down_witness: np.ndarray = field(init=False)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or times.size != len(self.generators):
            raise DimensionMismatchError("times/generators lengths differ")
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise DimensionMismatchError("times must be strictly ascending")
        wit = np.array([g.psd_witnesses() for g in self.generators], dtype=float)
        wit = wit.reshape(-1, 2)
        times.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "gamma_up_witness", wit[:, 0])
        object.__setattr__(self, "gamma_down_witness", wit[:, 1])


@dataclass(frozen=True, eq=False)
class ValidityReport:
    """Per-time positivity and Hermiticity scan of a generator trajectory."""

    times: np.ndarray
    gamma_up_min_eig: np.ndarray
    gamma_down_min_eig: np.ndarray
    hermiticity_residuals: np.ndarray
    valid: np.ndarray
    all_valid: bool
    worst_time: float
    worst_witness: float


def validity_report(
    traj: GeneratorTrajectory, tol: float = 1e-10
) -> ValidityReport:
    """Scan a trajectory against the rate-positivity conditions."""
    herm = np.array(
        [
            max(
                hermiticity_residual(g.h),
                hermiticity_residual(g.gamma_up),
                hermiticity_residual(g.gamma_down),
            )
            for g in traj.generators
        ]
    )
    scale = np.array(
        [1.0 + max_abs(g.gamma_up) + max_abs(g.gamma_down) for g in traj.generators]
    )
    up, dn = traj.gamma_up_witness, traj.gamma_down_witness
    valid = (up >= -tol * scale) & (dn >= -tol * scale)
    witness = np.minimum(up, dn)
    worst = int(np.argmin(witness)) if witness.size else 0
    return ValidityReport(
        times=traj.times,
        gamma_up_min_eig=up,
        gamma_down_min_eig=dn,
        hermiticity_residuals=herm,
        valid=valid,
        all_valid=bool(np.all(valid)),
        worst_time=float(traj.times[worst]) if witness.size else float("nan"),
        worst_witness=float(witness[worst]) if witness.size else 0.0,
    )
