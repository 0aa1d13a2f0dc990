"""Relaxation dynamics on the supra-Laplacian.

The diffusion x' = -L x decouples in the eigenbasis, so a state is kept
as per-mode amplitudes that decay as exp(-lambda_i * tau). The
synchronization level S(tau) averages how far those modes have decayed;
zero modes carry amplitude 0 by construction so S rises to exactly 1.
An explicit Euler stepper provides an independent check in node space.
"""

import math
from dataclasses import dataclass

import numpy as np

from suprasync.errors import DomainError, StructuralError
from suprasync.spectral import eig_sym, zero_tolerance


@dataclass(frozen=True)
class ModeState:
    """Eigenmode amplitudes paired with their decay rates."""

    amplitudes: np.ndarray
    eigenvalues: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.float64)
        eigs = np.asarray(self.eigenvalues, dtype=np.float64)
        if amps.shape != eigs.shape or amps.ndim != 1:
            raise StructuralError("amplitudes and eigenvalues must align")
        if np.any(amps < 0.0) or np.any(amps > 1.0):
            raise StructuralError("amplitudes must lie in [0, 1]")
        tol = zero_tolerance(float(eigs[-1]))
        if np.any(amps[eigs <= tol] != 0.0):
            raise StructuralError("zero modes must carry amplitude 0")
        for arr in (amps, eigs):
            arr.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "eigenvalues", eigs)


def init_modes(summary, seed):
    """Seeded uniform amplitudes on [0, 1), zeroed on the kernel modes.

    The full vector is drawn before zeroing, so the surviving mode
    amplitudes do not depend on how many zero modes the spectrum has.
    """
    eigs = summary.eigenvalues
    amps = np.random.default_rng(seed).random(eigs.shape[0])
    amps[eigs <= zero_tolerance(float(eigs[-1]))] = 0.0
    return ModeState(amplitudes=amps, eigenvalues=eigs.copy(), seed=seed)


def sync_level(state, tau):
    """S(tau) = 1 - mean residual amplitude; nondecreasing, S(inf) = 1."""
    tau = float(tau)
    if tau < 0.0:
        raise DomainError("tau must be nonnegative")
    residual = state.amplitudes * np.exp(-state.eigenvalues * tau)
    return 1.0 - float(residual.mean())


def sync_time(state, epsilon=0.01):
    """Smallest tau with S(tau) >= 1 - epsilon, to 1e-6 relative.

    Returns 0 when the state already satisfies the threshold (all
    amplitudes zero included).
    """
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise DomainError("epsilon must lie in (0, 1)")

    def deficit(tau):
        return float((state.amplitudes * np.exp(-state.eigenvalues * tau)).mean())

    if deficit(0.0) <= epsilon:
        return 0.0
    hi = 1.0
    while deficit(hi) > epsilon:
        hi *= 2.0
        if hi > 1e300:
            raise DomainError("synchronization threshold unreachable; "
                              "a nondecaying mode carries amplitude")
    lo = 0.0
    while hi - lo > 1e-6 * hi:
        mid = 0.5 * (lo + hi)
        if deficit(mid) <= epsilon:
            hi = mid
        else:
            lo = mid
    return hi


def evolve_oracle(supra, x0, t, dt):
    """Forward-Euler integration of x' = -combined x in node space.

    Independent of the eigensolver path: only matrix-vector products.
    dt must respect the explicit stability bound 1 / (2 lambda_max);
    the actual step is t/n with n = ceil(t/dt), so it never exceeds dt.
    """
    x = np.array(x0, dtype=np.float64)
    if x.shape != (supra.dimension,):
        raise StructuralError(
            f"state has shape {x.shape}, supra dimension is {supra.dimension}")
    t = float(t)
    dt = float(dt)
    if t < 0.0:
        raise DomainError("t must be nonnegative")
    if dt <= 0.0:
        raise DomainError("dt must be positive")
    lam_max = eig_sym(supra.combined, vectors=False).lambdaN
    if lam_max > 0.0 and dt > 1.0 / (2.0 * lam_max):
        raise DomainError(
            f"dt = {dt} exceeds the stability bound {1.0 / (2.0 * lam_max):.3e}")
    if t == 0.0:
        return x
    steps = math.ceil(t / dt)
    h = t / steps
    lap = supra.combined
    for _ in range(steps):
        x = x - h * (lap @ x)
    return x
