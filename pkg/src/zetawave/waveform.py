"""Wave-function chain on the half-line.

Generalized dilation eigenfunctions, the squeeze action, squeezed-basis
overlaps, the Mehler kernel in closed and series form, the full
position-space wave function, the boundary integral with its large-squeeze
limit, and the confined one-dimensional profile.

The boundary integral is an honest iterated quadrature: the outer integral
carries an oscillatory algebraic endpoint and goes through the log
substitution of the quad module; the inner one is an exact Gaussian bump in
sqrt-coordinates and gets panelwise Gauss-Legendre laid out around the
bump.  Because the inner integral does not involve the spectral parameter,
batches of spectral points share a single inner pass.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Protocol, Sequence

import numpy as np

from .errors import DomainError, NonConvergenceError, OverflowRangeError
from .quad import (
    ENDPOINT_SINGULAR,
    QuadratureSpec,
    _gauss_rule,
    integrate_singular_log,
    tail_cutoff_for,
)
from .specfun import TruncationPolicy, bessel_i0_scaled, chi, eta, gamma_complex

__all__ = [
    "SqueezeParameter",
    "QuantumNumber",
    "WaveSample",
    "EigenvalueRecord",
    "TildeExpansion",
    "MehlerSeriesResult",
    "RotatedProfile",
    "StandInProfile",
    "AbelLaguerreProfile",
    "ORIGINAL",
    "TILDE",
    "LIMIT",
    "phi_s",
    "squeeze_apply",
    "overlap_s1",
    "mehler_closed",
    "mehler_series",
    "varphi_zero",
    "psi_full",
    "psi_boundary",
    "psi_boundary_batch",
    "psi_boundary_limit",
    "boundary_levels",
    "phi_confined",
    "tilde_expansion_check",
    "eigenvalue_of",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)

ORIGINAL = "original"
TILDE = "tilde"
LIMIT = "limit"
_VARIANTS = (ORIGINAL, TILDE, LIMIT)

# Original-variant boundary arguments scale like e^lambda * y; past this the
# Mehler exponent range is exhausted and the quadrature loses error control.
MAX_LAMBDA = 25.0

# Absolute rounding floor of the outer oscillatory integral.  The integral
# itself is O(|Gamma(s)|), so the achievable accuracy on the eta-normalized
# scale degrades like e^{pi t / 2}; tolerances are clamped accordingly.
_ABS_NOISE = 4e-16


@dataclass(frozen=True)
class SqueezeParameter:
    """Dilation amount lambda, dimensionless, practical range [0, 40]."""

    lam: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.lam) or self.lam < 0.0:
            raise DomainError("squeeze parameter must be finite and nonnegative")
        if self.lam > 40.0:
            raise DomainError("squeeze parameter beyond the supported range [0, 40]")


@dataclass(frozen=True)
class QuantumNumber:
    """Level index n of the transverse number operator."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.n != int(self.n):
            raise DomainError("quantum number must be a nonnegative integer")


@dataclass(frozen=True)
class WaveSample:
    """One complex wave-function value with the parameters that made it.

    error is a diagnostic: the a posteriori quadrature or truncation
    estimate attached by the producing operation, on the same normalized
    scale that operation controlled.
    """

    x: float
    y: float
    s: complex
    n: int
    lam: float
    value: complex
    variant: str
    error: float = 0.0

    def __post_init__(self) -> None:
        if self.x < 0.0 or self.y < 0.0:
            raise DomainError("wave samples live on the half-line: x, y >= 0")
        if self.variant not in _VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}")


@dataclass(frozen=True)
class EigenvalueRecord:
    s: complex
    n: int
    energy: complex
    real_energy: bool


class TildeExpansion(NamedTuple):
    exact: complex
    zero_order: complex
    first_order: complex
    residual: float


class MehlerSeriesResult(NamedTuple):
    value: float
    tail_bound: float
    terms_used: int


def eigenvalue_of(s: complex, n: int) -> EigenvalueRecord:
    """Eigenvalue record E = i(s - 1/2) + n; real exactly on the line."""
    z = complex(s)
    if n < 0:
        raise DomainError("n must be nonnegative")
    energy = 1j * (z - 0.5) + n
    return EigenvalueRecord(s=z, n=int(n), energy=energy, real_energy=(z.real == 0.5))


# ---------------------------------------------------------------------------
# Eigenfunctions and the squeeze action
# ---------------------------------------------------------------------------


def phi_s(x, s: complex):
    """Generalized dilation eigenfunction x^{-s} / sqrt(2 pi), x > 0."""
    z = complex(s)
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("phi_s is singular at x = 0; use varphi_zero for the boundary value")
    if arr.ndim == 0:
        return cmath.exp(-z * math.log(float(arr))) / SQRT_2PI
    return np.exp(-z * np.log(arr)) / SQRT_2PI


def squeeze_apply(psi: Callable, lam: float) -> Callable:
    """Unitary squeeze: x maps to e^{-lam/2} psi(e^{-lam} x)."""
    p = SqueezeParameter(float(lam))
    amp = math.exp(-0.5 * p.lam)
    scale = math.exp(-p.lam)

    def squeezed(x):
        return amp * psi(scale * x)

    return squeezed


def _chi_rows(m_max: int, y: np.ndarray) -> np.ndarray:
    """Rows chi_m(y) for m = 0..m_max in one recurrence pass."""
    rows = np.empty((m_max + 1, y.size))
    rows[0] = np.exp(-0.5 * y)
    if m_max >= 1:
        rows[1] = (1.0 - y) * rows[0]
    for m in range(1, m_max):
        rows[m + 1] = ((2.0 * m + 1.0 - y) * rows[m] - m * rows[m - 1]) / (m + 1.0)
    return rows


def _overlap_grid(m_max: int, tol: float) -> tuple[np.ndarray, np.ndarray]:
    # chi_m oscillates out to roughly 4m + 2 and only then starts its
    # exponential tail, so the cutoff must scale with the largest order.
    edge = 4.0 * m_max + 2.0 + 6.0 * (m_max + 1.0) ** (1.0 / 3.0)
    cutoff = edge + tail_cutoff_for(0.3, tol)
    panels = max(32, int(cutoff))
    x, w = _gauss_rule(12)
    edges = np.linspace(0.0, cutoff, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mid[:, None] + half * x[None, :]).ravel()
    weights = np.tile(half * w, panels)
    return nodes, weights


def _bare_overlaps(n: int, m_max: int, lam: float) -> np.ndarray:
    """Half-line integrals of chi_n(e^{-lam} y) chi_m(y) for m = 0..m_max.

    The generating function of these integrals over m is 2 B^n / A^{n+1}
    with A = (1+eps) + t(1-eps), B = (1-eps) + t(1+eps), eps = e^{-lam}.
    Writing B = (A - 4 eps/(1+eps)) (1+eps)/(1-eps) expands the coefficient
    as a short sum over powers of 1/A, which keeps every summand on the
    scale of the answer instead of cancelling across binomials.
    """
    m_count = m_max + 1
    if lam == 0.0:
        out = np.zeros(m_count)
        if n <= m_max:
            out[n] = 1.0
        return out
    eps = math.exp(-lam)
    ln_a0 = math.log1p(eps)
    ln_beta = math.log1p(eps) - math.log1p(-eps)
    ln_gam = math.log(4.0) - lam - math.log1p(-eps)
    ln_rho = math.log1p(-eps) - math.log1p(eps)
    m = np.arange(m_count, dtype=float)
    logs = np.empty((n + 1, m_count))
    for k in range(n + 1):
        j = n - k
        log_cmj = np.zeros(m_count)
        for i in range(1, j + 1):
            log_cmj += np.log(m + i) - math.log(i)
        log_cnk = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(j + 1)
        logs[k] = log_cnk + k * ln_beta + j * ln_gam + (k - n - 1) * ln_a0 + log_cmj
    signs = np.array([(-1.0) ** (n - k) for k in range(n + 1)])[:, None]
    peak = np.max(logs, axis=0)
    reduced = np.sum(signs * np.exp(logs - peak[None, :]), axis=0)
    parity = np.where(np.arange(m_count) % 2 == 0, 1.0, -1.0)
    return 2.0 * parity * np.exp(peak + m * ln_rho) * reduced


def overlap_s1(m: int, n: int, lam: float, *, bare: bool = False) -> float:
    """Squeezed-basis overlap e^{-lam/2} times the chi_m / squeezed-chi_n integral.

    Computed by half-line quadrature.  With bare=True the e^{-lam/2}
    prefactor is dropped; the bare integral tends to 2 (-1)^m as lam
    grows, for every n.
    """
    if m < 0 or n < 0:
        raise DomainError("m and n must be nonnegative")
    p = SqueezeParameter(float(lam))
    nodes, weights = _overlap_grid(m, 1e-13)
    value = float(np.dot(weights * chi(n, math.exp(-p.lam) * nodes), chi(m, nodes)))
    if bare:
        return value
    return math.exp(-0.5 * p.lam) * value


# ---------------------------------------------------------------------------
# Mehler kernel
# ---------------------------------------------------------------------------


def mehler_closed(y, yp, t):
    """Closed form of sum_m chi_m(y) chi_m(y') t^m for 0 <= t < 1.

    Computed as exp(b - a) * [e^{-b} I0(b)] / (1 - t) with
    a = ((y + y')/2)(1+t)/(1-t) and b = 2 sqrt(y y' t)/(1-t), so the only
    exponential ever taken has a nonpositive argument:
    a - b >= sqrt(y y') (1 - sqrt(t))^2 / (1 - t) >= 0.
    """
    ya = np.asarray(y, dtype=float)
    yb = np.asarray(yp, dtype=float)
    ta = np.asarray(t, dtype=float)
    if np.any(ya < 0.0) or np.any(yb < 0.0):
        raise DomainError("Mehler kernel needs y, y' >= 0")
    if np.any(ta < 0.0) or np.any(ta >= 1.0):
        raise DomainError("Mehler kernel parameter must satisfy 0 <= t < 1")
    scalar = ya.ndim == 0 and yb.ndim == 0 and ta.ndim == 0
    one_minus = 1.0 - ta
    a = 0.5 * (ya + yb) * (1.0 + ta) / one_minus
    b = 2.0 * np.sqrt(ya * yb * ta) / one_minus
    out = np.exp(b - a) * bessel_i0_scaled(b) / one_minus
    return float(out) if scalar else out


def mehler_series(y: float, yp: float, t: float, policy: Optional[TruncationPolicy] = None) -> MehlerSeriesResult:
    """Direct Laguerre-basis sum of the Mehler kernel with a tail bound.

    The tail bound uses the half-line envelope |chi_m| <= 1, giving
    tail <= t^{M+1}/(1-t) after terms up to m = M.  Raises
    NonConvergenceError when the last included term still exceeds the
    policy tolerance.
    """
    if y < 0.0 or yp < 0.0:
        raise DomainError("need y, y' >= 0")
    if not (0.0 <= t < 1.0):
        raise DomainError("need 0 <= t < 1")
    if policy is None:
        policy = TruncationPolicy(max_terms=400, abs_tol=1e-12)
    m_max = policy.max_terms - 1
    # Extended precision: at widely separated y, y' the sum cancels about
    # eight digits below its largest term, which double-precision terms
    # cannot support at the contracted relative accuracy.
    args = np.array([float(y), float(yp)], dtype=np.longdouble)
    rows = np.empty((m_max + 1, 2), dtype=np.longdouble)
    rows[0] = np.exp(-0.5 * args)
    if m_max >= 1:
        rows[1] = (1.0 - args) * rows[0]
    for m in range(1, m_max):
        rows[m + 1] = ((2.0 * m + 1.0 - args) * rows[m] - m * rows[m - 1]) / (m + 1.0)
    powers = np.longdouble(t) ** np.arange(m_max + 1)
    terms = rows[:, 0] * rows[:, 1] * powers
    value = float(np.sum(terms))
    last = abs(float(terms[-1]))
    if not policy.converged(last, value):
        raise NonConvergenceError(
            f"Mehler series term still {last:.3g} after {m_max + 1} terms"
        )
    tail = float(powers[-1] * t / (1.0 - t))
    return MehlerSeriesResult(value=value, tail_bound=tail, terms_used=m_max + 1)


# ---------------------------------------------------------------------------
# Rotated-profile boundary value and pluggable profiles
# ---------------------------------------------------------------------------


def varphi_zero(s: complex) -> complex:
    """Boundary value of the rotated eigenfunction.

    Gamma(1-s) (-2i)^{1/2-s} / sqrt(2 pi) with the principal branch
    (-2i)^{1/2-s} = exp[(1/2-s)(ln 2 - i pi/2)]; continuous along the
    critical line and nonvanishing wherever Gamma(1-s) is finite.
    """
    z = complex(s)
    branch = (0.5 - z) * complex(math.log(2.0), -0.5 * math.pi)
    return gamma_complex(1.0 - z) * cmath.exp(branch) / SQRT_2PI


class RotatedProfile(Protocol):
    """Pluggable model of the rotated eigenfunction profile."""

    def value(self, x: float, s: complex) -> complex: ...

    def at_zero(self, s: complex) -> complex: ...


class StandInProfile:
    """The unrotated eigenfunction as the default stand-in profile.

    Every boundary formula downstream depends on the profile only through
    its x = 0 value, which is varphi_zero; away from zero the stand-in is
    phi_s.  Intended for structure tests.
    """

    def value(self, x: float, s: complex) -> complex:
        if x == 0.0:
            return varphi_zero(s)
        return phi_s(x, s)

    def at_zero(self, s: complex) -> complex:
        return varphi_zero(s)


class AbelLaguerreProfile:
    """Abel-regularized Laguerre expansion of the rotated profile.

    Sums i^m r^m c_m(s) chi_m(x), with c_m(s) the x^{-s} moments of chi_m
    computed by singular-endpoint quadrature, then extrapolates r -> 1
    through a fixed radius ladder (polynomial extrapolation in 1 - r).
    Exploratory: pointwise convergence for x > 0 on the critical line is
    an open question and nothing downstream depends on it.
    """

    def __init__(
        self,
        max_terms: int = 48,
        radii: Sequence[float] = (0.84, 0.88, 0.92, 0.96, 0.98),
        target_tol: float = 1e-9,
    ) -> None:
        if max_terms < 4:
            raise DomainError("profile needs at least 4 terms")
        if len(radii) < 2 or not all(0.0 < r < 1.0 for r in radii):
            raise DomainError("radii must be a ladder inside (0, 1)")
        self.max_terms = int(max_terms)
        self.radii = tuple(float(r) for r in radii)
        self.target_tol = float(target_tol)
        self._coef_cache: dict[tuple[int, complex], complex] = {}

    def coefficient(self, m: int, s: complex) -> complex:
        """c_m(s): the x^{-s} moment of chi_m over (0, inf), unit-normalized."""
        z = complex(s)
        key = (m, z)
        got = self._coef_cache.get(key)
        if got is not None:
            return got
        spec = QuadratureSpec(
            scheme=ENDPOINT_SINGULAR,
            panels=max(24, int(8 * (1.0 + abs(z.imag)))),
            nodes_per_panel=12,
            tail_cutoff=tail_cutoff_for(0.4, self.target_tol),
            target_tol=self.target_tol,
        )
        result = integrate_singular_log(lambda u: chi(m, u), 1.0 - z, spec)
        value = result.value / SQRT_2PI
        self._coef_cache[key] = value
        return value

    def _abel_sum(self, chi_values: np.ndarray, s: complex) -> complex:
        m_idx = np.arange(self.max_terms)
        coefs = np.array([self.coefficient(int(m), s) for m in m_idx])
        base = (1j ** m_idx) * coefs * chi_values
        deltas = [1.0 - r for r in self.radii]
        table = [complex(np.sum(base * (r ** m_idx))) for r in self.radii]
        # Neville extrapolation of the radius ladder to delta = 0.
        for level in range(1, len(deltas)):
            nxt = []
            for i in range(len(table) - 1):
                num = deltas[i + level] * table[i] - deltas[i] * table[i + 1]
                nxt.append(num / (deltas[i + level] - deltas[i]))
            table = nxt
        return table[0]

    def value(self, x: float, s: complex) -> complex:
        if x < 0.0:
            raise DomainError("x must be >= 0")
        rows = _chi_rows(self.max_terms - 1, np.array([float(x)]))[:, 0]
        return self._abel_sum(rows, complex(s))

    def at_zero(self, s: complex) -> complex:
        return self._abel_sum(np.ones(self.max_terms), complex(s))


DEFAULT_PROFILE = StandInProfile()


# ---------------------------------------------------------------------------
# Alternating-sum acceleration
# ---------------------------------------------------------------------------


def _euler_accelerated(terms: np.ndarray) -> tuple[complex, float]:
    """Iterated averaging of partial sums (Euler transformation).

    Each averaging level halves an alternating geometric tail.  Returns the
    stabilized value and the magnitude of the last correction.
    """
    # Corrections of a slowly rotating alternating series dip far below
    # their eventual plateau, so no early stop: reduce all the way down
    # and report the final correction.
    row = np.cumsum(np.asarray(terms, dtype=complex))
    value = complex(row[-1])
    change = abs(value - complex(row[-2])) if row.size > 1 else 0.0
    while row.size > 1:
        row = 0.5 * (row[:-1] + row[1:])
        change = abs(complex(row[-1]) - value)
        value = complex(row[-1])
    return value, change


def _euler_accelerated_rows(terms: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full iterated averaging along axis 1 for a batch of term rows."""
    row = np.cumsum(np.asarray(terms, dtype=complex), axis=1)
    prev = row[:, -1].copy()
    change = np.abs(prev)
    while row.shape[1] > 1:
        row = 0.5 * (row[:, :-1] + row[:, 1:])
        change = np.abs(row[:, -1] - prev)
        prev = row[:, -1].copy()
    return prev, change


# ---------------------------------------------------------------------------
# Full wave function (direct level-sum route)
# ---------------------------------------------------------------------------


def psi_full(
    x: float,
    y: float,
    s: complex,
    n: int,
    lam: float,
    policy: Optional[TruncationPolicy] = None,
    profile: Optional[RotatedProfile] = None,
) -> WaveSample:
    """Position-space wave function by the direct level sum.

    Sum over m of [bare overlap of level m with the squeezed level n]
    times chi_m(e^lam y) (m+1)^{-s} profile(x/(m+1)), Euler-accelerated.
    Requires lam <= 25 so e^lam y stays inside the usable range of the
    weighted recurrences.
    """
    if policy is None:
        policy = TruncationPolicy(max_terms=1024, abs_tol=1e-12)
    if profile is None:
        profile = DEFAULT_PROFILE
    z = complex(s)
    p = SqueezeParameter(float(lam))
    if p.lam > MAX_LAMBDA:
        raise DomainError(f"psi_full supports lam <= {MAX_LAMBDA:g}")
    if x <= 0.0:
        raise DomainError("psi_full needs x > 0; the boundary value is psi_boundary")
    if y < 0.0:
        raise DomainError("y must be >= 0")
    QuantumNumber(int(n))
    y_scaled = math.exp(p.lam) * y
    # Two honest estimators, because the sign pattern changes regime.  At
    # y = 0 the terms alternate regularly and iterated averaging converges
    # even though the raw envelope ratio approaches 1.  Once chi_m(e^lam y)
    # oscillates, averaging plateaus but the raw envelope decays like
    # ((1-e^{-lam})/(1+e^{-lam}))^m, so the plain partial sum wins.  Grow the
    # depth until either estimator settles within the budget.
    m_count = min(64, policy.max_terms)
    prev_plain: Optional[complex] = None
    while True:
        overlaps = _bare_overlaps(int(n), m_count - 1, p.lam)
        m_idx = np.arange(m_count)
        chi_vals = _chi_rows(m_count - 1, np.array([y_scaled]))[:, 0]
        weights = np.exp(-z * np.log(m_idx + 1.0))
        prof_vals = np.array([profile.value(x / (m + 1.0), z) for m in m_idx])
        terms = overlaps * chi_vals * weights * prof_vals
        value, tail = _euler_accelerated(terms)
        plain = complex(np.sum(terms))
        plain_err = math.inf if prev_plain is None else abs(plain - prev_plain)
        if not np.any(terms):
            plain_err = 0.0
        if plain_err < abs(tail):
            value, tail = plain, plain_err
        if policy.converged(tail, abs(value)):
            break
        if m_count >= policy.max_terms:
            raise NonConvergenceError(
                f"level sum not converged: best error estimate {abs(tail):.3g}"
            )
        prev_plain = plain
        m_count = min(2 * m_count, policy.max_terms)
    return WaveSample(
        x=float(x), y=float(y), s=z, n=int(n), lam=p.lam,
        value=value, variant=ORIGINAL, error=tail,
    )


# ---------------------------------------------------------------------------
# Boundary integral
# ---------------------------------------------------------------------------

_BUMP_HALF_WIDTH = 14.0  # Gaussian remainder e^{-98} beyond the panelled bump
_MAX_BOUNDARY_ROUNDS = 5


def _inner_profile(
    v: np.ndarray, Y: float, eps: float, n: int, inner_panels: int, order: int
) -> np.ndarray:
    """Inner transverse integral, without the 1/(1-t) factor, per outer node.

    In r = sqrt(y') the integrand is exp[-(c/2)(r - r*)^2] times smooth
    factors, with t = e^{-u}, c = (1+t)/(1-t), r* = 2 sqrt(Y t)/(1+t).
    Panels cover 14 bump widths, so the discarded remainder is ~e^{-98} of
    the local scale.  The offset r - r* is built directly from the panel
    coordinate, never by subtraction of close floats.
    """
    u = np.exp(v)
    t = np.exp(-u)
    one_minus_t = -np.expm1(-u)
    c = (1.0 + t) / one_minus_t
    sigma = 1.0 / np.sqrt(c)
    r_star = 2.0 * math.sqrt(Y) * np.sqrt(t) / (1.0 + t) if Y > 0.0 else np.zeros_like(t)
    peak_log = -Y * one_minus_t / (2.0 * (1.0 + t))
    out = np.zeros_like(v)
    # Nodes whose bump peak already underflows contribute exact zeros.
    idx = np.nonzero(peak_log > -740.0)[0]
    if idx.size == 0:
        return out
    x01, w01 = _gauss_rule(order)
    starts = np.arange(inner_panels) / inner_panels
    pattern = (starts[:, None] + (x01[None, :] + 1.0) / (2.0 * inner_panels)).ravel()
    pweights = np.tile(w01 / (2.0 * inner_panels), inner_panels)
    for lo in range(0, idx.size, 1024):
        sel = idx[lo : lo + 1024]
        sig = sigma[sel][:, None]
        rs = r_star[sel][:, None]
        cc = c[sel][:, None]
        xi_lo = np.maximum(-_BUMP_HALF_WIDTH, -rs / sig)
        span = _BUMP_HALF_WIDTH - xi_lo
        xi = xi_lo + span * pattern[None, :]
        d = sig * xi
        r = rs + d
        g = -0.5 * cc * d * d + peak_log[sel][:, None]
        b = cc * rs * r
        f = 2.0 * r * chi(n, eps * r * r) * bessel_i0_scaled(b) * np.exp(g)
        out[sel] = (f * pweights[None, :]).sum(axis=1) * (span[:, 0] * sigma[sel])
    return out


def _outer_grid(v_lo: float, v_hi: float, panels: int, order: int):
    x01, w01 = _gauss_rule(order)
    edges = np.linspace(v_lo, v_hi, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mid[:, None] + half * x01[None, :]).ravel()
    weights = np.tile(half * w01, panels)
    return nodes, weights


def _eta_scale_floor(s: complex) -> float:
    """Achievable accuracy of the boundary quadrature on the eta scale."""
    return _ABS_NOISE * (1.0 + abs(complex(s).imag) / 10.0) / abs(gamma_complex(s))


def _boundary_eta_scale(
    s_values: np.ndarray,
    y: float,
    n: int,
    lam: float,
    variant: str,
    target_tol: Optional[float],
) -> tuple[np.ndarray, float]:
    """Boundary integral divided by Gamma(s), batched over spectral points.

    The inner integral does not involve s, so one inner pass per
    refinement round serves the whole batch; the outer integral is then
    one weighted phase sum per point.  Convergence is controlled on this
    eta-normalized scale, which is O(1) uniformly in t; per-point
    tolerances are clamped to the double-precision floor, which grows like
    e^{pi t/2} because the raw integral is O(|Gamma(s)|).
    """
    eps = math.exp(-lam)
    Y = (math.exp(lam) if variant == ORIGINAL else eps) * y
    sig_min = float(min(z.real for z in s_values))
    if sig_min <= 0.0:
        raise DomainError("boundary integral requires Re s > 0")
    t_max = float(max(abs(z.imag) for z in s_values))
    gammas = np.array([gamma_complex(z) for z in s_values])
    floors = np.array([_eta_scale_floor(z) for z in s_values])
    if target_tol is None:
        tols = np.maximum(1e-9, 30.0 * floors)
    else:
        tols = np.maximum(float(target_tol), 3.0 * floors)
    # The lower cut must discard less than the *raw* tolerance tol |Gamma|,
    # since the integral itself is O(|Gamma(s)|).  Below the cut the
    # integrand is u^{s-1} [J(0) + O(u) + O(Y u)] with J(0) = chi_n(eps Y),
    # so the J(0) u_lo^s / s head is restored analytically and the cut only
    # needs to control the next order, hence the sigma + 1 in the exponent.
    raw_tol = float(np.min(tols)) * float(np.min(np.abs(gammas)))
    v_lo = (math.log(raw_tol) - math.log(10.0) - math.log(1.0 + Y)) / (
        sig_min + 1.0
    ) - 6.0
    v_hi = math.log(45.0)
    head_amp = float(chi(n, eps * Y))
    head = head_amp * np.exp(s_values * v_lo) / s_values
    panels = max(24, int(math.ceil((1.0 + t_max) * (v_hi - v_lo) / 6.0)))
    inner_panels = 12
    order = 12
    prev = None
    err = math.inf
    for _ in range(_MAX_BOUNDARY_ROUNDS + 1):
        v, w = _outer_grid(v_lo, v_hi, panels, order)
        u = np.exp(v)
        kernel = w * _inner_profile(v, Y, eps, n, inner_panels, order) / np.expm1(u)
        vals = np.empty(s_values.size, dtype=complex)
        for lo in range(0, s_values.size, 128):
            chunk = s_values[lo : lo + 128]
            vals[lo : lo + 128] = np.exp(np.multiply.outer(chunk, v)) @ kernel
        vals = (vals + head) / gammas
        if prev is not None:
            diffs = np.abs(vals - prev)
            err = float(np.max(diffs))
            if np.all(diffs <= tols):
                return vals, err
        prev = vals
        panels *= 2
        inner_panels = min(2 * inner_panels, 48)
        if panels * order * inner_panels * order > 40_000_000:
            break
    raise NonConvergenceError(
        f"boundary quadrature stalled at eta-scale discrepancy {err:.3g}"
    )


def _check_boundary_args(y: float, n: int, lam: float, variant: str) -> None:
    if variant not in (ORIGINAL, TILDE):
        raise DomainError("variant must be 'original' or 'tilde'")
    if y < 0.0:
        raise DomainError("y must be >= 0")
    QuantumNumber(int(n))
    p = SqueezeParameter(float(lam))
    if variant == ORIGINAL and y > 0.0 and p.lam > MAX_LAMBDA:
        raise OverflowRangeError(
            f"original variant with y > 0 supports lam <= {MAX_LAMBDA:g}"
        )


def psi_boundary(
    y: float,
    s: complex,
    n: int,
    lam: float,
    variant: str = ORIGINAL,
    target_tol: Optional[float] = None,
) -> WaveSample:
    """Boundary wave function by honest iterated quadrature.

    Outer integral over u with the u^{s-1} e^{-u}/(1-e^{-u}) weight via
    the log substitution; inner integral over y' of the squeezed level
    against the Mehler-type exponential kernel.  The tilde variant scales
    the transverse coordinate by e^{-lam} instead of e^{lam}.

    target_tol is an absolute tolerance on the eta-normalized value
    psi / varphi_zero; None picks a tolerance 30x above the rounding
    floor, and explicit values are clamped to 3x the floor (the floor
    grows like e^{pi t/2}, see _eta_scale_floor).  The achieved estimate
    is reported in the sample's error field.
    """
    z = complex(s)
    _check_boundary_args(y, n, lam, variant)
    vals, err = _boundary_eta_scale(
        np.array([z]), float(y), int(n), float(lam), variant, target_tol
    )
    value = varphi_zero(z) * complex(vals[0])
    return WaveSample(
        x=0.0, y=float(y), s=z, n=int(n), lam=float(lam),
        value=value, variant=variant, error=err,
    )


def psi_boundary_batch(
    s_values: Sequence[complex],
    y: float,
    n: int,
    lam: float,
    variant: str = ORIGINAL,
    target_tol: Optional[float] = None,
) -> tuple[np.ndarray, float]:
    """Boundary values for many spectral points on one shared grid.

    Returns (values, worst eta-normalized error).  One inner-integral
    pass serves every point, so a scan grid costs little more than a
    single evaluation.
    """
    _check_boundary_args(y, n, lam, variant)
    arr = np.asarray(list(s_values), dtype=complex)
    if arr.size == 0:
        return np.empty(0, dtype=complex), 0.0
    vals, err = _boundary_eta_scale(arr, float(y), int(n), float(lam), variant, target_tol)
    pref = np.array([varphi_zero(z) for z in arr])
    return pref * vals, err


def boundary_levels(
    s_values: Sequence[complex],
    n: int,
    lam: float,
    depth: Optional[int] = None,
) -> np.ndarray:
    """Boundary values at y = 0 through the level-sum route.

    The y = 0 boundary value equals varphi_zero(s) times
    sum_m A_m (m+1)^{-s}, where A_m is the bare overlap of level m with
    the squeezed level n; the overlaps do not involve s, so one
    quadrature pass serves any number of spectral points.  The
    alternating sum is evaluated by the full iterated-averaging
    transform, which keeps *relative* accuracy at any height t, unlike
    the real-axis quadrature whose absolute floor ~4e-16 swamps the
    O(|Gamma(s)|) integral beyond t ~ 17.  Cross-checked against
    psi_boundary in the test suite on their common turf.
    """
    arr = np.asarray(list(s_values), dtype=complex)
    if arr.size == 0:
        return np.empty(0, dtype=complex)
    if any(z.real <= 0.0 for z in arr):
        raise DomainError("level route requires Re s > 0")
    QuantumNumber(int(n))
    SqueezeParameter(float(lam))
    if depth is None:
        t_max = float(max(abs(z.imag) for z in arr))
        depth = 72 + int(math.ceil(2.3 * t_max))
    overlaps = _bare_overlaps(int(n), depth - 1, float(lam))
    m_idx = np.arange(depth)
    powers = np.exp(np.multiply.outer(-arr, np.log(m_idx + 1.0)))
    terms = powers * overlaps[None, :]
    values, change = _euler_accelerated_rows(terms)
    worst = float(np.max(change))
    if worst > 1e-8 * float(np.max(np.abs(values) + 1.0)):
        raise NonConvergenceError(
            f"level sum transform left correction {worst:.3g}"
        )
    pref = np.array([varphi_zero(z) for z in arr])
    return pref * values


def psi_boundary_limit(s: complex, y: float = 0.0) -> complex:
    """Large-squeeze limit of the boundary value.

    2 varphi_zero(s) eta(s) at y = 0; exactly 0 for y > 0 (the limit
    concentrates on the boundary point).
    """
    z = complex(s)
    if z.real <= 0.0:
        raise DomainError("limit formula requires Re s > 0")
    if y < 0.0:
        raise DomainError("y must be >= 0")
    if y > 0.0:
        return 0.0 + 0.0j
    return 2.0 * varphi_zero(z) * eta(z)


def phi_confined(
    x: float,
    s: complex,
    policy: Optional[TruncationPolicy] = None,
    profile: Optional[RotatedProfile] = None,
) -> tuple[complex, float]:
    """Confined profile 2 sum_m (-1)^m (m+1)^{-s} profile(x/(m+1)).

    Euler-accelerated; returns (value, tail_estimate).  At x = 0 every
    term carries the profile boundary value, and the accelerated sum
    reproduces 2 profile(0) eta(s) numerically rather than by shortcut.
    With max_terms = 1 the value is the single m = 0 term.
    """
    z = complex(s)
    if z.real <= 0.0:
        raise DomainError("confined profile requires Re s > 0")
    if x < 0.0:
        raise DomainError("x must be >= 0")
    if policy is None:
        policy = TruncationPolicy(max_terms=64, abs_tol=1e-12)
    if profile is None:
        profile = DEFAULT_PROFILE
    m_idx = np.arange(policy.max_terms)
    signs = np.where(m_idx % 2 == 0, 1.0, -1.0)
    weights = np.exp(-z * np.log(m_idx + 1.0))
    if x == 0.0:
        prof = np.full(policy.max_terms, profile.at_zero(z))
    else:
        prof = np.array([profile.value(x / (m + 1.0), z) for m in m_idx])
    terms = 2.0 * signs * weights * prof
    if policy.max_terms == 1:
        return complex(terms[0]), 0.0
    value, tail = _euler_accelerated(terms)
    if not policy.converged(tail, abs(value)):
        raise NonConvergenceError(
            f"alternating acceleration stalled at correction {tail:.3g}"
        )
    return value, tail


def tilde_expansion_check(
    y: float,
    s: complex,
    n: int,
    lam: float,
    target_tol: Optional[float] = None,
) -> TildeExpansion:
    """Compare the tilde boundary value against its large-squeeze expansion.

    zero_order is the limit value; first_order adds the e^{-lam} term
    with coefficient (2n + 1 + y/2) times
    2 varphi_zero(s) (eta(s) - 2 eta(s-1)); residual = |exact -
    first_order| is expected to scale like e^{-2 lam}.
    """
    z = complex(s)
    if lam < 5.0:
        raise DomainError("expansion regime needs lam >= 5")
    if target_tol is None:
        target_tol = max(1e-11, 10.0 * _eta_scale_floor(z))
    exact = psi_boundary(y, z, n, lam, variant=TILDE, target_tol=target_tol).value
    pref = 2.0 * varphi_zero(z)
    zero_order = pref * eta(z)
    correction = (eta(z) - 2.0 * eta(z - 1.0)) * (2.0 * n + 1.0 + 0.5 * y)
    first_order = zero_order + math.exp(-lam) * pref * correction
    return TildeExpansion(
        exact=exact,
        zero_order=zero_order,
        first_order=first_order,
        residual=abs(exact - first_order),
    )
