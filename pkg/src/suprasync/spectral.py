"""Spectral observables of supra-Laplacians.

Everything here reduces to the symmetric eigendecomposition in
`_kernels`: algebraic connectivity (the second-smallest eigenvalue,
counting multiplicity), the eigenratio R = lambda_max / lambda_2, two
closed-form approximations of R valid in the weak and strong coupling
regimes, their crossing point, and (p, d_x) sweep grids.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from suprasync import _kernels
from suprasync.core import build_supra, layer_laplacian
from suprasync.errors import (BracketError, ConfigError, ConvergenceError,
                              DisconnectedError, DomainError, StructuralError)

SYMMETRY_RTOL = 1e-12


def zero_tolerance(lam_max):
    return 1e-9 * max(1.0, abs(lam_max))


@dataclass(frozen=True)
class SpectralSummary:
    """Sorted eigendecomposition plus the derived connectivity readouts.

    `lambda2` counts multiplicity: for a Laplacian of a disconnected
    graph it is 0, not the smallest positive eigenvalue. `residual` is
    the largest column norm of L v - lambda v, None when eigenvectors
    were not retained.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    lambda2: float | None
    lambdaN: float
    fiedler_vector: np.ndarray | None
    residual: float | None

    def __post_init__(self):
        self.eigenvalues.flags.writeable = False
        if self.eigenvectors is not None:
            self.eigenvectors.flags.writeable = False


@dataclass(frozen=True)
class EigenratioCurve:
    """Simulated and approximated R over a d_x grid, plus the crossing."""

    dx_values: tuple
    simulated: tuple
    weak: tuple
    strong: tuple
    optimal: tuple | None    # (d_x*, R*) or None if no crossing in range


@dataclass(frozen=True)
class SweepResult:
    """lambda2 over a (p, d_x) grid; rows follow p, columns follow d_x."""

    p_values: tuple
    dx_values: tuple
    lambda2: np.ndarray

    def __post_init__(self):
        self.lambda2.flags.writeable = False


def eig_sym(matrix, vectors=True):
    """Full decomposition of a symmetric matrix, eigenvalues ascending.

    The input must be symmetric within 1e-12 relative; it is then
    symmetrized exactly before decomposition so both backends see the
    same bytes. Ties keep the backend's encounter order (stable sort).
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.T))) > SYMMETRY_RTOL * scale:
        raise DomainError("matrix is not symmetric")
    work = np.ascontiguousarray((a + a.T) / 2.0)
    sym = work.copy()
    try:
        d, v = _kernels.decompose(work, vectors)
    except ConvergenceError:
        raise ConvergenceError("eigensolver did not converge",
                               matrix_norm=float(np.max(np.abs(a)))) from None
    order = np.argsort(d, kind="stable")
    eigenvalues = np.ascontiguousarray(d[order])
    n = a.shape[0]
    if vectors:
        eigenvectors = np.ascontiguousarray(v[:, order])
        resid = sym @ eigenvectors - eigenvectors * eigenvalues
        residual = float(np.sqrt((resid * resid).sum(axis=0)).max())
        fiedler = eigenvectors[:, 1].copy() if n >= 2 else None
    else:
        eigenvectors = None
        residual = None
        fiedler = None
    return SpectralSummary(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        lambda2=float(eigenvalues[1]) if n >= 2 else None,
        lambdaN=float(eigenvalues[-1]),
        fiedler_vector=fiedler,
        residual=residual,
    )


def algebraic_connectivity(supra):
    """Second-smallest eigenvalue of the combined supra-Laplacian."""
    if supra.dimension < 2:
        raise DomainError("need at least two supra-nodes")
    return float(eig_sym(supra.combined, vectors=False).eigenvalues[1])


def eigenratio(supra):
    """lambda_max / lambda_2 of the combined matrix; demands connectivity."""
    if supra.dimension < 2:
        raise DomainError("need at least two supra-nodes")
    eigs = eig_sym(supra.combined, vectors=False).eigenvalues
    lam2 = float(eigs[1])
    if lam2 <= zero_tolerance(eigs[-1]):
        raise DisconnectedError(
            f"supra-graph is disconnected (lambda2 = {lam2:.3e})")
    return float(eigs[-1]) / lam2


@dataclass(frozen=True)
class _ApproxTerms:
    """Constants that make both R approximations closed-form in d_x."""

    peak_intra: tuple        # per layer: p_a * lambda_max(L_a)
    peak_strength: tuple     # per layer: max replica strength in the block
    lambda2_inter: float     # smallest nonzero eigenvalue of unit inter
    lambdaM_inter: float     # largest eigenvalue of unit inter
    lambda2_avg: float       # lambda2 of the p-weighted layer average
    lambdaN_wa: float        # lambda_max of the eigenvector-weighted average


def _approx_terms(network, p_per_layer, signed_weights=False):
    m = network.layer_count
    n = network.node_count
    supra = build_supra(network, p_per_layer, 1.0)
    p = supra.p_per_layer

    inter = eig_sym(supra.inter)
    tol = zero_tolerance(inter.lambdaN)
    positive = inter.eigenvalues[inter.eigenvalues > tol]
    if positive.size == 0:
        raise StructuralError("no inter-layer links, approximations undefined")
    strengths = np.diagonal(supra.inter)

    laps = [layer_laplacian(layer) for layer in network.layers]
    peak_intra = tuple(
        p[a] * eig_sym(laps[a], vectors=False).lambdaN for a in range(m))
    peak_strength = tuple(
        float(strengths[a * n:(a + 1) * n].max()) for a in range(m))

    top = inter.eigenvectors[:, -1]
    avg = sum(p[a] * laps[a] for a in range(m)) / m
    if signed_weights:
        coeffs = [float(top[a * n:(a + 1) * n].sum()) for a in range(m)]
    else:
        coeffs = [float((top[a * n:(a + 1) * n] ** 2).sum()) for a in range(m)]
    weighted = sum(c * p[a] * laps[a] for a, c in enumerate(coeffs))

    return _ApproxTerms(
        peak_intra=peak_intra,
        peak_strength=peak_strength,
        lambda2_inter=float(positive[0]),
        lambdaM_inter=inter.lambdaN,
        lambda2_avg=float(eig_sym(avg, vectors=False).eigenvalues[1]),
        lambdaN_wa=eig_sym(weighted, vectors=False).lambdaN,
    )


def _weak_value(terms, d_x, scale_strength):
    factor = d_x if scale_strength else 1.0
    numerator = max(
        intra + factor * strength
        for intra, strength in zip(terms.peak_intra, terms.peak_strength))
    return numerator / (d_x * terms.lambda2_inter)


def _strong_value(terms, d_x):
    if terms.lambda2_avg <= zero_tolerance(terms.lambdaM_inter):
        raise DisconnectedError(
            "averaged layer Laplacian is disconnected, strong regime undefined")
    return (d_x * terms.lambdaM_inter + terms.lambdaN_wa) / terms.lambda2_avg


def weak_approx(network, p_per_layer, d_x, scale_strength=True):
    """Closed-form R estimate for weak coupling: the slowest direction is
    inter-layer, so R ~ peak intra rate over d_x * lambda2(inter).

    `scale_strength=False` drops the d_x factor on the replica-strength
    term, the literal low-coupling reading.
    """
    d_x = float(d_x)
    if d_x <= 0.0:
        raise DomainError("weak approximation needs d_x > 0")
    return _weak_value(_approx_terms(network, p_per_layer), d_x, scale_strength)


def strong_approx(network, p_per_layer, d_x, signed_weights=False):
    """Closed-form R estimate for strong coupling, affine in d_x.

    The numerator mixes layer Laplacians with the squared block mass of
    the top inter-layer eigenvector (a convex combination; two uniform
    layers give exactly the plain average). `signed_weights` switches to
    bare block sums, which can leave the convex cone.
    """
    terms = _approx_terms(network, p_per_layer, signed_weights=signed_weights)
    return _strong_value(terms, float(d_x))


def optimal_dx(network, p_per_layer, d_range, scale_strength=True,
               signed_weights=False):
    """Crossing of the weak and strong R curves by bisection.

    Returns (d_x*, R*) with R* read from the strong curve; the bracket
    must satisfy weak > strong at d_min and weak < strong at d_max.
    """
    d_lo, d_hi = (float(v) for v in d_range)
    if not 0.0 < d_lo < d_hi:
        raise ConfigError(f"need 0 < d_min < d_max, got ({d_lo}, {d_hi})")
    terms = _approx_terms(network, p_per_layer, signed_weights=signed_weights)

    def gap(d):
        return _weak_value(terms, d, scale_strength) - _strong_value(terms, d)

    if not (gap(d_lo) > 0.0 > gap(d_hi)):
        raise BracketError(
            f"curves do not cross on [{d_lo}, {d_hi}]: "
            f"gap({d_lo}) = {gap(d_lo):.3e}, gap({d_hi}) = {gap(d_hi):.3e}")
    lo, hi = d_lo, d_hi
    while hi - lo > 1e-6 * 0.5 * (hi + lo):
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    d_star = 0.5 * (lo + hi)
    return d_star, _strong_value(terms, d_star)


def rayleigh_quotient(matrix, x):
    """Variational probe: x^T L x over the mean-removed norm of x.

    For any nonconstant x on a Laplacian this bounds lambda2 from above,
    with equality on the second eigenvector.
    """
    x = np.asarray(x, dtype=np.float64)
    if np.all(x == x[0]):
        raise DomainError("constant vector spans the trivial kernel")
    centered = x - x.mean()
    return float(x @ (np.asarray(matrix) @ x)) / float(centered @ centered)


def _lambda2_of(matrix):
    return float(eig_sym(matrix, vectors=False).eigenvalues[1])


def _sweep_rows(intra, inter, p_values, dx_values):
    return [[_lambda2_of(p * intra + d * inter) for d in dx_values]
            for p in p_values]


def lambda2_sweep(network, p_values, dx_values, jobs=None):
    """lambda2 of p * intra + d_x * inter over the grid product.

    Uniform p per cell. Rows are computed independently (optionally in
    a process pool) and assembled in grid order either way.
    """
    p_values = tuple(float(v) for v in p_values)
    dx_values = tuple(float(v) for v in dx_values)
    if not p_values or not dx_values:
        raise ConfigError("sweep grids must be nonempty")
    if any(v < 0.0 for v in p_values + dx_values):
        raise ConfigError("sweep grids must be nonnegative")
    base = build_supra(network, np.ones(network.layer_count), 0.0)
    intra, inter = base.intra, base.inter
    if jobs is not None and jobs > 1 and len(p_values) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_sweep_rows, intra, inter, (p,), dx_values)
                       for p in p_values]
            rows = [f.result()[0] for f in futures]
    else:
        rows = _sweep_rows(intra, inter, p_values, dx_values)
    return SweepResult(p_values, dx_values, np.array(rows))


def eigenratio_curve(network, p_per_layer, dx_values, scale_strength=True,
                     signed_weights=False):
    """Simulated R plus both approximations over a d_x grid.

    The optimal point is the weak/strong crossing inside the grid span,
    or None when the curves do not cross there.
    """
    dx_values = tuple(float(v) for v in dx_values)
    if not dx_values or any(d <= 0.0 for d in dx_values):
        raise ConfigError("d_x grid must be positive")
    if any(b <= a for a, b in zip(dx_values, dx_values[1:])):
        raise ConfigError("d_x grid must be strictly increasing")
    terms = _approx_terms(network, p_per_layer, signed_weights=signed_weights)
    simulated = []
    for d in dx_values:
        try:
            simulated.append(eigenratio(build_supra(network, p_per_layer, d)))
        except DisconnectedError as exc:
            raise DisconnectedError(f"at d_x = {d}: {exc}") from None
    simulated = tuple(simulated)
    weak = tuple(_weak_value(terms, d, scale_strength) for d in dx_values)
    strong = tuple(_strong_value(terms, d) for d in dx_values)
    try:
        optimal = optimal_dx(network, p_per_layer,
                             (dx_values[0], dx_values[-1]),
                             scale_strength=scale_strength,
                             signed_weights=signed_weights)
    except BracketError:
        optimal = None
    return EigenratioCurve(dx_values, simulated, weak, strong, optimal)
