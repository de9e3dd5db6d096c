"""Independent numerical oracles for the closed forms: polar quadrature
of K-invariant integrals over the domain, and rejection-sampling Monte
Carlo on concrete matrix balls.

Neither route evaluates a Gamma-function ratio, so agreement with the
series and closed-form values is a genuine cross-check.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from symspec.domains import DomainParams
from symspec.spectral import OperatorSpec

Rational = Fraction | int

_MC_BLOCK = 200_000
_MIN_ACCEPT_RATE = 1e-4


class NonIntegrableError(ArithmeticError):
    """The requested radial exponent is below the integrability bound."""


class AcceptanceRateError(RuntimeError):
    """Rejection sampling accepted too small a fraction to be practical."""


@dataclass(frozen=True)
class PolarSpec:
    """A K-invariant integral over the domain: integrand h(z,z)^t, or a
    radial profile G(t_1, ..., t_r) (symmetric in its arguments).

    Endpoint weights are absorbed by Gauss-Jacobi rules: for the h^t
    integrand the absorbed exponent is t itself; a profile may declare a
    ``jacobi_exponent`` q > -1, meaning the full integrand is
    G(t) * prod_j (1 - t_j^2)^q with only the bounded G evaluated at the
    nodes."""

    domain: DomainParams
    t: Fraction | None = None
    profile: Callable[..., np.ndarray] | None = None
    nodes_per_axis: int | None = None
    jacobi_exponent: Fraction | None = None

    def __post_init__(self) -> None:
        if (self.t is None) == (self.profile is None):
            raise ValueError("give exactly one of t or profile")
        if self.t is not None:
            object.__setattr__(self, "t", Fraction(self.t))
            if self.jacobi_exponent is not None:
                raise ValueError("jacobi_exponent applies to profile integrands; h^t absorbs t itself")
        if self.jacobi_exponent is not None:
            q = Fraction(self.jacobi_exponent)
            if q <= -1:
                raise ValueError(f"jacobi_exponent must exceed -1, got {q}")
            object.__setattr__(self, "jacobi_exponent", q)


@dataclass(frozen=True)
class MCEstimate:
    value: float
    stderr: float
    n_samples: int
    n_accepted: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "n_samples": self.n_samples,
            "n_accepted": self.n_accepted,
            "seed": self.seed,
        }


def _gj01(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights integrating f against (1-u)^alpha u^beta on [0,1]."""
    x, w = roots_jacobi(n, alpha, beta)
    return 0.5 * (x + 1.0), w * 0.5 ** (alpha + beta + 1.0)


def _tensor_even(domain: DomainParams, t: float, n: int, profile=None) -> float:
    """Plain tensor quadrature in u = t_j^2 coordinates; the Vandermonde
    power is a polynomial here (a even or rank one), so the rule is
    exact once n exceeds the degree bound. ``t`` is the absorbed
    endpoint exponent (the radial exponent itself, or a profile's
    declared jacobi_exponent)."""
    a, b, r = domain.a, domain.b, domain.r
    axes = [_gj01(n, t, float(b)) for _ in range(r)]
    total = None
    grids = []
    for k in range(r):
        shape = [1] * r
        shape[k] = n
        grids.append(axes[k][0].reshape(shape))
        wk = axes[k][1].reshape(shape)
        total = wk if total is None else total * wk
    fv = np.ones_like(total)
    for i in range(r):
        for j in range(i + 1, r):
            fv = fv * (grids[i] - grids[j]) ** a
    if profile is not None:
        fv = fv * profile(*[np.sqrt(np.broadcast_to(g, total.shape)) for g in grids])
    return float(np.sum(total * fv))


def _tensor_odd(domain: DomainParams, t: float, n: int, profile=None) -> float:
    """Ordered-sector quadrature for odd Vandermonde powers.

    On the sorted sector u_1 <= ... <= u_r the substitution
    u_j = y_j y_{j+1} ... y_r turns |u_l - u_k| into smooth factors and
    moves every per-axis endpoint power into a Gauss-Jacobi weight; only
    corner factors (1 - prod y)^t remain in the integrand. The suppressed
    r! and the sector count cancel in the ratios formed by callers.
    """
    a, b, r = domain.a, domain.b, domain.r
    axes = []
    for k in range(1, r + 1):
        beta = k * b + a * k * (k - 1) // 2 + (k - 1)
        if k < r:
            axes.append(_gj01(n, float(a), float(beta)))
        else:
            axes.append(_gj01(n, t, float(beta)))
    total = None
    ygrids = []
    for k in range(r):
        shape = [1] * r
        shape[k] = n
        ygrids.append(axes[k][0].reshape(shape))
        wk = axes[k][1].reshape(shape)
        total = wk if total is None else total * wk
    # u_j = prod_{k >= j} y_k, built from the top down
    ugrids: list[np.ndarray] = [None] * r  # type: ignore[list-item]
    ugrids[r - 1] = ygrids[r - 1]
    for j in range(r - 2, -1, -1):
        ugrids[j] = ygrids[j] * ugrids[j + 1]
    fv = np.ones_like(total)
    if t != 0.0:
        # (1 - u_j)^t for j < r; the j = r factor lives in the weight
        for j in range(r - 1):
            fv = fv * (1.0 - ugrids[j]) ** t
    # non-adjacent pair factors: pair (i, j) contributes (1 - y_i ... y_{j-1})^a;
    # adjacent pairs (j = i+1) already live in the axis weights
    for i in range(r):
        prod = ygrids[i]
        for jm1 in range(i + 1, r - 1):
            prod = prod * ygrids[jm1]
            fv = fv * (1.0 - prod) ** a
    if profile is not None:
        fv = fv * profile(*[np.sqrt(np.broadcast_to(u, total.shape)) for u in ugrids])
    return float(np.sum(total * fv))


def _polar_raw(domain: DomainParams, t: float, n: int, profile=None) -> float:
    if domain.r == 1 or domain.a % 2 == 0:
        return _tensor_even(domain, t, n, profile)
    return _tensor_odd(domain, t, n, profile)


def _default_nodes(domain: DomainParams) -> int:
    if domain.r == 1:
        return 48
    if domain.a % 2 == 0:
        # polynomial integrand: exact beyond degree a(r-1) per axis
        return max(24, domain.a * (domain.r - 1) + 4)
    return 120


def polar_integral_report(
    domain_or_spec: DomainParams | PolarSpec,
    t: Rational | None = None,
    nodes_per_axis: int | None = None,
    profile: Callable[..., np.ndarray] | None = None,
    jacobi_exponent: Rational | None = None,
) -> tuple[float, float, bool]:
    """Normalized integral of h(z,z)^t (or a radial profile) over the
    domain, with a refinement check.

    Returns (value, refinement_delta, converged): the value at the
    finest rule, the relative change from a coarser rule, and whether
    that change is below 1e-7.
    """
    if isinstance(domain_or_spec, PolarSpec):
        spec = domain_or_spec
        domain, t, profile = spec.domain, spec.t, spec.profile
        nodes_per_axis = nodes_per_axis or spec.nodes_per_axis
        jacobi_exponent = spec.jacobi_exponent
    else:
        domain = domain_or_spec
    if profile is None:
        tq = Fraction(t)  # type: ignore[arg-type]
        if tq <= -1:
            raise NonIntegrableError(f"h^t is not integrable for t={tq} <= -1")
        tf = float(tq)
    else:
        tf = 0.0 if jacobi_exponent is None else float(Fraction(jacobi_exponent))
        if tf <= -1:
            raise NonIntegrableError(f"jacobi_exponent must exceed -1, got {tf}")
    n = nodes_per_axis or _default_nodes(domain)
    n_coarse = max(8, (2 * n) // 3)

    def ratio(nn: int) -> float:
        num = _polar_raw(domain, tf, nn, profile)
        den = _polar_raw(domain, 0.0, nn, None)
        return num / den

    fine = ratio(n)
    coarse = ratio(n_coarse)
    delta = abs(fine - coarse) / max(abs(fine), 1e-300)
    return fine, delta, delta < 1e-7


def polar_integral(
    domain_or_spec: DomainParams | PolarSpec,
    t: Rational | None = None,
    nodes_per_axis: int | None = None,
    profile: Callable[..., np.ndarray] | None = None,
    jacobi_exponent: Rational | None = None,
) -> float:
    """Normalized integral over the domain of h(z,z)^t, t > -1, or of a
    radial profile times an absorbed endpoint weight prod (1-t_j^2)^q;
    the normalizing constant cancels in the quadrature ratio, so none is
    ever needed."""
    value, _, _ = polar_integral_report(domain_or_spec, t, nodes_per_axis, profile, jacobi_exponent)
    return value


def trace_quadrature(op: OperatorSpec, nodes_per_axis: int | None = None) -> float:
    """Trace of a Bergman-type operator by polar quadrature:
    int h^(gamma-alpha) dv / int h^gamma dv."""
    if op.kind != "bergman":
        raise NonIntegrableError("trace quadrature applies to Bergman-type operators")
    g = op.gamma
    assert g is not None
    if not (op.alpha < 1 + g):
        raise NonIntegrableError(f"not trace class: alpha={op.alpha} >= 1 + gamma = {1 + g}")
    num = polar_integral(op.domain, g - op.alpha, nodes_per_axis)
    den = polar_integral(op.domain, g, nodes_per_axis)
    return num / den


# ---------------------------------------------------------------------------
# Monte Carlo on type I matrix balls


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    # counter-based: block streams are independent and order-free
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, block_index]))


def _sample_block(rng: np.random.Generator, nb: int, r: int, s: int) -> np.ndarray:
    """Singular values of nb proposals with entries uniform on the unit
    disk; rows with spectral norm >= 1 are dropped."""
    radius = np.sqrt(rng.random((nb, r, s)))
    angle = rng.random((nb, r, s)) * (2.0 * np.pi)
    z = radius * np.exp(1j * angle)
    sv = np.linalg.svd(z, compute_uv=False)
    return sv[sv[:, 0] < 1.0]


@dataclass
class _Moments:
    """Streaming first/second moments of the pair (x, y) = (h^(g-a), h^g),
    combined blockwise with the parallel update formulas."""

    n: int = 0
    mean_x: float = 0.0
    mean_y: float = 0.0
    m2x: float = 0.0
    m2y: float = 0.0
    cxy: float = 0.0

    def absorb(self, n_b: int, mx: float, my: float, m2x: float, m2y: float, cxy: float) -> None:
        if n_b == 0:
            return
        n = self.n + n_b
        dx = mx - self.mean_x
        dy = my - self.mean_y
        w = self.n * n_b / n
        self.m2x += m2x + dx * dx * w
        self.m2y += m2y + dy * dy * w
        self.cxy += cxy + dx * dy * w
        self.mean_x += dx * n_b / n
        self.mean_y += dy * n_b / n
        self.n = n


def _block_moments(sv: np.ndarray, ga: float, g: float) -> tuple[int, float, float, float, float, float]:
    h = np.prod(1.0 - sv**2, axis=1)
    x = h**ga
    y = h**g
    nb = x.size
    if nb == 0:
        return 0, 0.0, 0.0, 0.0, 0.0, 0.0
    mx, my = float(np.mean(x)), float(np.mean(y))
    return (
        nb,
        mx,
        my,
        float(np.sum((x - mx) ** 2)),
        float(np.sum((y - my) ** 2)),
        float(np.sum((x - mx) * (y - my))),
    )


def mc_trace(
    r: int,
    s: int,
    alpha: Rational,
    gamma: Rational,
    n_samples: int,
    seed: int,
    threads: int = 1,
) -> MCEstimate:
    """Monte Carlo trace on the type I ball of r x s complex matrices.

    Proposals draw every entry uniformly from the unit disk (a superset
    of the spectral ball, since each entry of a contraction has modulus
    below its largest singular value); accepted points keep sigma_max < 1
    and evaluate h(z,z) = prod(1 - sigma_j^2) = det(I - z z*). The
    estimator is the ratio sum h^(gamma-alpha) / sum h^gamma with a
    delta-method standard error.

    ``n_samples`` is the accepted-sample budget; proposal blocks are
    drawn from counter-based per-block streams until the budget is met,
    and the result records both the proposals drawn and the accepted
    count. The consumed block prefix depends only on (seed, n_samples),
    so values are bit-identical across thread counts.
    """
    alpha, gamma = Fraction(alpha), Fraction(gamma)
    if not 1 <= r <= s:
        raise ValueError(f"type I needs 1 <= r <= s, got ({r},{s})")
    if gamma <= -1:
        raise ValueError(f"gamma must exceed -1, got {gamma}")
    if gamma - alpha <= -1:
        raise NonIntegrableError(f"h^(gamma-alpha) is not integrable: gamma-alpha = {gamma - alpha} <= -1")
    if n_samples < 1000:
        raise ValueError(f"need n_samples >= 1000, got {n_samples}")

    ga, g = float(gamma - alpha), float(gamma)
    # enough blocks to cover the budget even at the minimum viable rate
    max_blocks = math.ceil(n_samples / (_MC_BLOCK * _MIN_ACCEPT_RATE)) + 1

    def run_block(k: int) -> tuple[int, float, float, float, float, float]:
        sv = _sample_block(_block_rng(seed, k), _MC_BLOCK, r, s)
        return _block_moments(sv, ga, g)

    mom = _Moments()
    blocks_used = 0
    done = False
    wave = max(1, threads)
    with ThreadPoolExecutor(max_workers=wave) as pool:
        k0 = 0
        while not done and k0 < max_blocks:
            ks = range(k0, min(k0 + wave, max_blocks))
            results = list(pool.map(run_block, ks)) if threads > 1 else [run_block(k) for k in ks]
            # absorb strictly in block order and cut at the first block
            # that fills the budget, so the prefix is thread-invariant
            for res in results:
                mom.absorb(*res)
                blocks_used += 1
                if mom.n >= n_samples:
                    done = True
                    break
            k0 += wave
            if not done and blocks_used >= 10 and mom.n < _MIN_ACCEPT_RATE * blocks_used * _MC_BLOCK:
                raise AcceptanceRateError(
                    f"acceptance rate {mom.n}/{blocks_used * _MC_BLOCK} below {_MIN_ACCEPT_RATE}; "
                    "rejection sampling is impractical for these sizes"
                )

    if mom.n < n_samples:
        raise AcceptanceRateError(
            f"accepted only {mom.n} of the requested {n_samples} samples within "
            f"{blocks_used * _MC_BLOCK} proposals (acceptance rate too low)"
        )

    ratio = mom.mean_x / mom.mean_y
    var_x = mom.m2x / mom.n
    var_y = mom.m2y / mom.n
    cov = mom.cxy / mom.n
    var_g = (var_x - 2.0 * ratio * cov + ratio**2 * var_y) / mom.mean_y**2
    stderr = math.sqrt(max(var_g, 0.0) / mom.n)
    return MCEstimate(
        value=ratio, stderr=stderr, n_samples=blocks_used * _MC_BLOCK, n_accepted=mom.n, seed=seed
    )


def sample_point(r: int, s: int, rng_state: int | np.random.Generator) -> np.ndarray:
    """Singular values of one accepted sample from the r x s matrix ball;
    deterministic given the generator state (an int seeds a fresh
    counter-based stream)."""
    if not 1 <= r <= s:
        raise ValueError(f"type I needs 1 <= r <= s, got ({r},{s})")
    rng = _block_rng(rng_state, 0) if isinstance(rng_state, int) else rng_state
    while True:
        sv = _sample_block(rng, 64, r, s)
        if sv.size:
            return sv[0]
