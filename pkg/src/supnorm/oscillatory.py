"""Smooth cutoffs and the oscillatory-sum/integral estimates built on them:
plateau windows on [Z/2, 2Z] with derivative scale T, an exact dyadic partition
of unity, exponential-sum decay under Poisson summation, kernel integrals
against the plus/minus Bessel kernels, continued-fraction rational
approximation, and the major-arc bound formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np
from scipy import special

from .specfun import ArchimedeanParameter


# ---------------------------------------------------------------------------
# smooth windows
# ---------------------------------------------------------------------------

def _bump_edge(v):
    """C-infinity step: 0 for v <= 0, 1 for v >= 1, exp(-1/v) transition."""
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    out[v >= 1] = 1.0
    mid = (v > 0) & (v < 1)
    vm = v[mid]
    a = np.exp(-1.0 / vm)
    b = np.exp(-1.0 / (1.0 - vm))
    out[mid] = a / (a + b)
    return out


@dataclass(frozen=True)
class SmoothWindow:
    """Plateau window supported on [Z/2, 2Z], ramping over length T at each end,
    so the j-th derivative is O(T^-j)."""

    Z: float
    T: float

    def __post_init__(self):
        if self.Z < 1:
            raise ValueError(f"need Z >= 1, got {self.Z}")
        if not 1 <= self.T <= self.Z:
            raise ValueError(f"need 1 <= T <= Z, got T={self.T}, Z={self.Z}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        val = _bump_edge((x - self.Z / 2) / self.T) * _bump_edge((2 * self.Z - x) / self.T)
        return val if val.ndim else float(val)

    @property
    def support(self) -> tuple[float, float]:
        return (self.Z / 2, 2 * self.Z)

    def derivative_constants(self, j_max: int = 4, n_grid: int = 2000) -> list[float]:
        """Fitted C_j with sup |window^(j)| <= C_j T^-j, finite differences."""
        x = np.linspace(self.Z / 2 - self.T, 2 * self.Z + self.T, n_grid)
        h = self.T / 50
        offsets = range(-j_max, j_max + 1)
        table = {i: self(x + i * h) for i in offsets}
        consts = []
        for j in range(1, j_max + 1):
            # central difference: sum_i (-1)^i C(j,i) f(x + (j/2 - i) h) via binomial stencil
            acc = np.zeros_like(x)
            for i in range(j + 1):
                shift = j - 2 * i
                # use the symmetric stencil on a doubled step to stay on integer offsets
                acc += (-1) ** i * math.comb(j, i) * table[shift]
            deriv = acc / (2 * h) ** j
            consts.append(float(np.max(np.abs(deriv)) * self.T ** j))
        return consts


class DyadicPartition:
    """G(x) = psi(x) / sum_k psi(x / 2^k) with psi a log-scale bump on [1/2, 2];
    by construction sum over dyadic levels Z = 2^nu of G(x/Z) is exactly 1 for x >= 1."""

    @staticmethod
    def bump(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        ok = x > 0
        u = np.zeros_like(x)
        u[ok] = np.log2(x[ok])
        inside = ok & (np.abs(u) < 1)
        out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        num = self.bump(x)
        den = np.zeros_like(num)
        # psi(x/2^k) is nonzero only for k within 1 of log2(x)
        with np.errstate(divide="ignore"):
            base = np.where(x > 0, np.log2(np.maximum(x, 1e-300)), 0.0)
        for k_off in (-1, 0, 1):
            k = np.floor(base).astype(int) + k_off
            den += self.bump(x / np.exp2(k))
        out = np.where(den > 0, num / np.maximum(den, 1e-300), 0.0)
        return out if out.ndim else float(out)

    def partition_check(self, x_grid, max_level: int = 64) -> dict:
        x = np.asarray(x_grid, dtype=float)
        if np.any(x < 1):
            raise ValueError("partition identity is asserted for x >= 1 only")
        total = np.zeros_like(x)
        for nu in range(max_level):
            total += self(x / 2.0 ** nu)
        worst = float(np.max(np.abs(total - 1.0)))
        return {"max_deviation": worst, "points": len(x)}


# ---------------------------------------------------------------------------
# rational approximation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalApproximation:
    x: float
    a: int
    q: int
    H: float
    beta: float

    def __post_init__(self):
        if self.q < 1 or math.gcd(self.a, self.q) != 1:
            raise ValueError("require q >= 1 and gcd(a, q) = 1")
        if self.q > self.H:
            raise ValueError(f"q={self.q} exceeds H={self.H}")
        if abs(self.beta) > 1.0 / (self.q * self.H) + 1e-15:
            raise ValueError("|x - a/q| > 1/(qH)")


def dirichlet_approximate(x, H: float) -> RationalApproximation:
    """Best continued-fraction convergent a/q of x with q <= H; then
    |x - a/q| <= 1/(q H) automatically."""
    if H < 1:
        raise ValueError(f"need H >= 1, got {H}")
    xf = Fraction(x)
    # convergents of the continued fraction of x
    p_prev, q_prev, p_cur, q_cur = 1, 0, math.floor(xf), 1
    frac = xf - math.floor(xf)
    while frac != 0:
        rec = 1 / frac
        a_k = math.floor(rec)
        frac = rec - a_k
        p_nxt, q_nxt = a_k * p_cur + p_prev, a_k * q_cur + q_prev
        if q_nxt > H:
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_nxt, q_nxt
    return RationalApproximation(
        x=float(x), a=p_cur, q=q_cur, H=float(H), beta=float(xf - Fraction(p_cur, q_cur))
    )


def distance_to_nearest_integer(alpha) -> float:
    if isinstance(alpha, Fraction):
        r = alpha - round(alpha)
        return abs(float(r))
    return abs(alpha - round(alpha))


# ---------------------------------------------------------------------------
# exponential-sum decay (Poisson)
# ---------------------------------------------------------------------------

def lemma4_decay_check(w: SmoothWindow, alpha, j: int = 2) -> dict:
    """|sum_m e(alpha m) window(m)| against Z (T ||alpha||)^{-j}; the sum is
    finite because the window has compact support."""
    if j < 2:
        raise ValueError(f"need j >= 2, got {j}")
    norm = distance_to_nearest_integer(alpha)
    if norm == 0:
        raise ValueError("alpha must not be an integer")
    lo, hi = w.support
    m = np.arange(math.ceil(lo), math.floor(hi) + 1)
    phases = 2 * math.pi * ((float(alpha) * m) % 1.0)
    vals = w(m.astype(float))
    s = complex(np.dot(vals, np.cos(phases)), np.dot(vals, np.sin(phases)))
    bound = w.Z * (w.T * norm) ** (-j)
    return {
        "sum_abs": abs(s),
        "bound": bound,
        "ratio": abs(s) / bound,
        "T_times_norm": w.T * norm,
    }


def lemma4_t_sweep(Z: float, alpha, j: int, t_values) -> dict:
    """Log-log slope of |sum| against T at fixed Z, alpha; decays like T^-j."""
    sums = []
    for T in t_values:
        sums.append(max(lemma4_decay_check(SmoothWindow(Z, T), alpha, j)["sum_abs"], 1e-300))
    logt = np.log(np.asarray(t_values, dtype=float))
    logs = np.log(np.asarray(sums))
    slope = float(np.polyfit(logt, logs, 1)[0])
    return {"slope": slope, "sums": sums, "t_values": list(t_values)}


# ---------------------------------------------------------------------------
# kernel integrals (Lemma 6 shapes)
# ---------------------------------------------------------------------------

def _kernel_values(param: ArchimedeanParameter, sign: str, w: np.ndarray) -> np.ndarray:
    """Vectorized plus/minus kernel at arguments w = 4*pi*y-style points."""
    if param.kind == "holomorphic":
        if sign == "-":
            return np.zeros_like(w)
        return 2 * math.pi * special.jv(param.k - 1, w)
    t = abs(param.t)
    if t == 0:
        if sign == "+":
            return 2 * math.pi * special.yv(0, w)
        return 4 * special.kv(0, w)
    out = np.empty_like(w)
    with mp.workdps(25 + int(3 * t)):
        nu = 2j * mp.mpf(t)
        if sign == "+":
            c = math.pi / math.cosh(math.pi * t)
            for i, ww in enumerate(w):
                out[i] = c * 2 * float(mp.bessely(nu, mp.mpf(ww)).real)
        else:
            c = 4 * math.cosh(math.pi * t)
            for i, ww in enumerate(w):
                out[i] = c * float(mp.besselk(nu, mp.mpf(ww)).real)
    return out


def voronoi_integral(w: SmoothWindow, param: ArchimedeanParameter, sign: str,
                     alpha: float) -> float:
    """I = int g(xi) kernel(alpha sqrt(xi)) dxi over the window's support,
    by Gauss-Legendre panels in v = sqrt(xi) sized to the oscillation."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    v_lo, v_hi = math.sqrt(w.Z / 2), math.sqrt(2 * w.Z)
    # kernel phase is alpha*v; keep panel phase below ~2 radians
    length = min((v_hi - v_lo) / 8, 2.0 / alpha)
    n = int(math.ceil((v_hi - v_lo) / length))
    length = (v_hi - v_lo) / n
    x, gw = np.polynomial.legendre.leggauss(12)
    starts = v_lo + length * np.arange(n)
    v = (starts[:, None] + length / 2 + (length / 2) * x[None, :]).ravel()
    weights = np.tile(gw * length / 2, n)
    kern = _kernel_values(param, sign, alpha * v)
    return float(np.dot(weights, w(v * v) * kern * 2 * v))


def lemma6_bound1(Z: float, t_star: float, alpha: float) -> float:
    return Z ** 0.75 * t_star / math.sqrt(alpha)


def lemma6_bound2(Z: float, T: float, t_star: float, alpha: float, j: int) -> float:
    """Strengthened bound valid when alpha*sqrt(Z/2) >= 2 t*."""
    if alpha * math.sqrt(Z / 2) < 2 * t_star:
        raise ValueError("hypothesis alpha*sqrt(Z/2) >= 2 t* fails")
    factor = (math.sqrt(Z) / T + t_star / math.sqrt(Z)) / alpha
    return factor ** j * lemma6_bound1(Z, t_star, alpha)


# ---------------------------------------------------------------------------
# major-arc bound
# ---------------------------------------------------------------------------

def lemma8_bound(q: int, beta: float, Z: float, t_star: float,
                 eps_factor: float = 1.0) -> float:
    """t*^{3/2} q (|beta|^{3/2} Z + t*^{3/2} / Z^{1/2}), times the supplied
    stand-in for the epsilon power."""
    if q < 1 or Z < 1 or t_star < 1:
        raise ValueError("require q >= 1, Z >= 1, t* >= 1")
    return eps_factor * t_star ** 1.5 * q * (abs(beta) ** 1.5 * Z + t_star ** 1.5 / math.sqrt(Z))
