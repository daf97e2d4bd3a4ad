"""Bessel kernels of integer and purely imaginary order, Whittaker weights,
and numerical checkers for the inequalities they satisfy.

Real orders go through scipy.special; purely imaginary orders go through mpmath
with working precision scaled to |t| so the exponentially small K_{it} survives
the cosh(pi t / 2) renormalization.  Every "<<" inequality is tested with a single
fitted calibration constant which the caller (and the test suite) pins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy import integrate, special


# ---------------------------------------------------------------------------
# archimedean parameter
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArchimedeanParameter:
    kind: str  # "holomorphic" | "maass"
    k: int | None = None
    t: float | None = None

    @classmethod
    def holomorphic(cls, k: int) -> "ArchimedeanParameter":
        if k < 2 or k % 2 != 0:
            raise ValueError(f"holomorphic weight must be an even integer >= 2, got {k}")
        return cls(kind="holomorphic", k=k, t=(k - 1) / 2)

    @classmethod
    def maass(cls, t: float) -> "ArchimedeanParameter":
        return cls(kind="maass", t=float(t))

    @property
    def t_star(self) -> float:
        return 1.0 + abs(self.t)


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def bessel_j(order, y: float) -> float:
    if y <= 0:
        raise ValueError(f"argument must be positive, got {y}")
    return float(special.jv(order, y))


def _dps_for(t: float) -> int:
    # K_{it}(y) ~ e^{-pi t / 2}; keep ~17 significant digits after renormalizing
    return 20 + int(0.7 * abs(t))


def bessel_k_imag(t: float, y: float) -> float:
    """cosh(pi t / 2) * K_{it}(y) -- real for real t, even in t."""
    if y <= 0:
        raise ValueError(f"argument must be positive, got {y}")
    t = abs(float(t))
    if t == 0:
        return float(special.kv(0, y)) if y < 600 else float(mp.besselk(0, y))
    with mp.workdps(_dps_for(t)):
        val = mp.cosh(mp.pi * t / 2) * mp.besselk(1j * t, mp.mpf(y))
        return float(val.real)


def bessel_k_imag_quadrature(t: float, y: float) -> float:
    """Independent oracle: cosh(pi t / 2) * integral_0^inf exp(-y cosh u) cos(tu) du.

    Uses mpmath tanh-sinh quadrature at elevated precision; intended for |t| <~ 30.
    """
    if y <= 0:
        raise ValueError(f"argument must be positive, got {y}")
    t = abs(float(t))
    dps = 25 + int(1.5 * t)
    with mp.workdps(dps):
        yy = mp.mpf(y)
        # truncate where exp(-y cosh u) is below working precision
        target = mp.mpf(10) ** (-(dps + 10))
        umax = mp.acosh(max(mp.mpf(2), -mp.log(target) / yy))
        if t > 0:
            # split at the oscillation scale of cos(tu)
            pts = [mp.mpf(0)]
            step = mp.pi / (2 * t)
            while pts[-1] < umax:
                pts.append(min(pts[-1] + step, umax))
        else:
            pts = [mp.mpf(0), umax]
        integral = mp.quad(lambda u: mp.e ** (-yy * mp.cosh(u)) * mp.cos(t * u), pts)
        return float(mp.cosh(mp.pi * t / 2) * integral)


def bessel_y_imag_pair(t: float, y: float) -> float:
    """Y_{2it}(y) + Y_{-2it}(y); real and even in t by conjugate symmetry."""
    if y <= 0:
        raise ValueError(f"argument must be positive, got {y}")
    t = abs(float(t))
    if t == 0:
        return 2.0 * float(special.yv(0, y))
    with mp.workdps(_dps_for(2 * t) + 10):
        val = mp.bessely(2j * t, mp.mpf(y))
        return float(2 * val.real)


def whittaker_weight(param: ArchimedeanParameter, y: float) -> float:
    if y <= 0:
        raise ValueError(f"argument must be positive, got {y}")
    if param.kind == "holomorphic":
        k = param.k
        # log-domain: Gamma(k)^{-1/2} (4 pi y)^{k/2} e^{-2 pi y}
        logval = -0.5 * math.lgamma(k) + 0.5 * k * math.log(4 * math.pi * y) - 2 * math.pi * y
        return math.exp(logval)
    return math.sqrt(y) * bessel_k_imag(param.t, 2 * math.pi * y)


def voronoi_kernel(param: ArchimedeanParameter, sign: str, y: float) -> float:
    if y <= 0:
        raise ValueError(f"argument must be positive, got {y}")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if param.kind == "holomorphic":
        if sign == "-":
            return 0.0
        return 2 * math.pi * bessel_j(param.k - 1, 4 * math.pi * y)
    t = abs(param.t)
    if sign == "+":
        if t == 0:
            return 2 * math.pi * float(special.yv(0, 4 * math.pi * y))
        with mp.workdps(_dps_for(2 * t) + 10):
            pair = 2 * mp.bessely(2j * t, 4 * mp.pi * y).real
            return float(mp.pi / mp.cosh(mp.pi * t) * pair)
    # 4 cosh(pi t) K_{2it}(4 pi y); note cosh(pi (2t) / 2) = cosh(pi t)
    return 4.0 * bessel_k_imag(2 * t, 4 * math.pi * y)


# ---------------------------------------------------------------------------
# inequality / identity checkers
# ---------------------------------------------------------------------------

def check_derivative_recurrences(order: float, y_grid, h: float = 1e-5) -> dict:
    """Central finite differences of J_r and K_r against
    J_r' = (J_{r-1} - J_{r+1})/2 and K_r' = -(K_{r-1} + K_{r+1})/2."""
    worst_j = 0.0
    worst_k = 0.0
    r = float(order)
    for y in y_grid:
        fd_j = (special.jv(r, y + h) - special.jv(r, y - h)) / (2 * h)
        rec_j = 0.5 * (special.jv(r - 1, y) - special.jv(r + 1, y))
        worst_j = max(worst_j, abs(fd_j - rec_j))
        if r >= 0:
            fd_k = (special.kv(r, y + h) - special.kv(r, y - h)) / (2 * h)
            rec_k = -0.5 * (special.kv(r - 1, y) + special.kv(r + 1, y))
            worst_k = max(worst_k, abs(fd_k - rec_k))
    return {"order": r, "max_discrepancy_J": worst_j, "max_discrepancy_K": worst_k}


# correct sign column for the one-integration-by-parts identity; J and Y carry a
# minus, K a plus (verified against direct quadrature)
_IBP_SIGN = {"J": -1.0, "Y": -1.0, "K": 1.0}
_FAMILY = {"J": special.jv, "Y": special.yv, "K": special.kv}


def check_ibp_identity(g, g_support: tuple[float, float], r: float, alpha: float,
                       family: str, gprime=None) -> dict:
    """Both sides of
        int g(y) B_r(alpha sqrt(y)) dy
          = sign * (2/alpha) int (g'(y) sqrt(y) - (r/2) g(y)/sqrt(y)) B_{r+1}(alpha sqrt(y)) dy
    by quadrature, sign = -1 for B in {J, Y} and +1 for K."""
    if family not in _FAMILY:
        raise ValueError(f"family must be J, Y or K, got {family!r}")
    bes = _FAMILY[family]
    a, b = g_support
    if gprime is None:
        def gprime(y, _h=1e-6):
            return (g(y + _h) - g(y - _h)) / (2 * _h)

    lhs, err1 = integrate.quad(lambda y: g(y) * bes(r, alpha * math.sqrt(y)), a, b, limit=400)
    rhs, err2 = integrate.quad(
        lambda y: (gprime(y) * math.sqrt(y) - r / 2 * g(y) / math.sqrt(y))
        * bes(r + 1, alpha * math.sqrt(y)),
        a, b, limit=400,
    )
    rhs *= _IBP_SIGN[family] * 2 / alpha
    if err1 > 1e-7 * (1 + abs(lhs)) or err2 > 1e-7 * (1 + abs(rhs)):
        return {"converged": False, "lhs": lhs, "rhs": rhs, "rel_error": float("inf")}
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return {"converged": True, "lhs": lhs, "rhs": rhs, "rel_error": abs(lhs - rhs) / scale}


def check_kbessel_transition_bound(t: float, w_grid) -> dict:
    """cosh(pi t/2) K_{it}(w) against min(t^{-1/3}, |w^2 - t^2|^{-1/4}), t >= 2."""
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    worst = 0.0
    worst_w = None
    for w in w_grid:
        val = abs(bessel_k_imag(t, w))
        gap = abs(w * w - t * t)
        bound = t ** (-1 / 3) if gap == 0 else min(t ** (-1 / 3), gap ** (-0.25))
        ratio = val / bound
        if ratio > worst:
            worst, worst_w = ratio, w
    return {"t": t, "constant": worst, "worst_w": worst_w}


def fit_bessel_j_shape(orders, y_grid) -> dict:
    """Fitted constant for |J_k(y)| <= C (1+k) / (1+sqrt(y))."""
    y = np.asarray(list(y_grid), dtype=float)
    worst = 0.0
    worst_at = None
    for k in orders:
        vals = np.abs(special.jv(k, y))
        bound = (1 + k) / (1 + np.sqrt(y))
        ratios = vals / bound
        i = int(np.argmax(ratios))
        if ratios[i] > worst:
            worst, worst_at = float(ratios[i]), (k, float(y[i]))
    return {"constant": worst, "worst_point": worst_at}


def fit_bessel_k_shape(ts, y_grid, eps: float = 0.1, a_decay: float = 3.0) -> dict:
    """Fitted constant for cosh(pi t/2)|K_{it}(y)| <= C ((1+t)/y)^eps (1 + y/(1+t))^{-A}."""
    worst = 0.0
    worst_at = None
    for t in ts:
        for y in y_grid:
            val = abs(bessel_k_imag(t, y))
            bound = ((1 + t) / y) ** eps * (1 + y / (1 + t)) ** (-a_decay)
            ratio = val / bound
            if ratio > worst:
                worst, worst_at = ratio, (t, y)
    return {"constant": worst, "worst_point": worst_at, "eps": eps, "A": a_decay}


def fit_whittaker_shape(params, y_factors, js=(0, 1, 2), eps: float = 0.1,
                        a_decay: float = 3.0) -> dict:
    """Fitted constant for |W^{(j)}(y)| <= C (t*)^{1/2} (t*/y)^{j+eps} (1+y/t*)^{-A},
    j-th derivatives by central finite differences."""
    worst = 0.0
    worst_at = None
    for param in params:
        ts = param.t_star
        for fac in y_factors:
            y = fac * ts
            h = max(1e-4 * y, 1e-6)
            for j in js:
                if j == 0:
                    d = whittaker_weight(param, y)
                elif j == 1:
                    d = (whittaker_weight(param, y + h) - whittaker_weight(param, y - h)) / (2 * h)
                else:
                    d = (whittaker_weight(param, y + h) - 2 * whittaker_weight(param, y)
                         + whittaker_weight(param, y - h)) / (h * h)
                bound = math.sqrt(ts) * (ts / y) ** (j + eps) * (1 + y / ts) ** (-a_decay)
                ratio = abs(d) / bound
                if ratio > worst:
                    worst, worst_at = ratio, (param.kind, param.k or param.t, fac, j)
    return {"constant": worst, "worst_point": worst_at}
