"""Volume and diameter inequalities for closed hyperbolic n-manifolds.

Everything is formula level: ball volumes in H^n, the volume/diameter and
injectivity/diameter comparisons, the net-size and nerve-degree bounds, and
the torsion bound assembled from them. Volumes leave double range quickly
(log vol ~ (n-1) R), so each quantity has a ``log_`` twin and the linear
versions are thin wrappers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import ConfigError, ConstantTableMissing

QUAD_RTOL = 1e-13
_MAX_DEPTH = 60


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, rtol: float = QUAD_RTOL) -> float:
    """Adaptive Simpson quadrature with Richardson correction.

    The absolute tolerance is ``rtol`` times a coarse 17-point estimate of
    the integral, split in halves on each bisection.
    """
    if b == a:
        return 0.0
    xs = [a + (b - a) * k / 16 for k in range(17)]
    coarse = abs(sum(f(x) * w for x, w in zip(xs, [1] + [4, 2] * 7 + [4, 1])) * (b - a) / 48)
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    whole = (b - a) * (fa + 4 * fm + fb) / 6
    eps = rtol * max(coarse, abs(whole), 1e-300)
    total = 0.0
    stack = [(a, b, fa, fm, fb, whole, eps, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s, tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = (mid - lo) * (flo + 4 * flm + fmid) / 6
        right = (hi - mid) * (fmid + 4 * frm + fhi) / 6
        delta = left + right - s
        if depth >= _MAX_DEPTH or abs(delta) <= 15 * tol:
            total += left + right + delta / 15
        else:
            stack.append((mid, hi, fmid, frm, fhi, right, tol / 2, depth + 1))
            stack.append((lo, mid, flo, flm, fmid, left, tol / 2, depth + 1))
    return total


def log_sinh(t: float) -> float:
    if t <= 0:
        return -math.inf
    if t < 20:
        return math.log(math.sinh(t))
    return t + math.log1p(-math.exp(-2 * t)) - math.log(2.0)


def log_sphere_area(n: int) -> float:
    """log vol(S^(n-1)) = log(2 pi^(n/2) / Gamma(n/2))."""
    return math.log(2.0) + 0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n)


def _check_dim(n: int) -> None:
    if int(n) != n or n < 2:
        raise ConfigError(f"dimension must be an integer >= 2, got {n}")


def log_ball_volume(n: int, R: float) -> float:
    """log of vol(S^(n-1)) * int_0^R sinh^(n-1)(t) dt.

    The integrand is rescaled by sinh(R)^(n-1) so it stays in [0, 1].
    """
    _check_dim(n)
    if R < 0:
        raise ConfigError(f"radius must be nonnegative, got {R}")
    if R == 0:
        return -math.inf
    m = n - 1
    top = log_sinh(R)

    def scaled(t: float) -> float:
        if t <= 0:
            return 0.0
        return math.exp(m * (log_sinh(t) - top))

    return log_sphere_area(n) + m * top + math.log(adaptive_simpson(scaled, 0.0, R))


def ball_volume(n: int, R: float) -> float:
    """Volume of a radius-R ball in H^n; ``inf`` past double range."""
    lv = log_ball_volume(n, R)
    return math.exp(lv) if lv < 709.0 else math.inf


def ball_volume_closed(n: int, R: float) -> float:
    """Closed forms for n = 2, 3 (used as cross-checks of the quadrature)."""
    if n == 2:
        return 4 * math.pi * math.sinh(0.5 * R) ** 2
    if n == 3:
        x = 2 * R
        if x < 0.1:
            # sinh x - x by its series, avoiding cancellation
            term, acc, k = x**3 / 6, 0.0, 3
            while term > 1e-30 * x**3:
                acc += term
                term *= x * x / ((k + 1) * (k + 2))
                k += 2
            return math.pi * acc
        return math.pi * (math.sinh(x) - x)
    raise ConfigError("closed form only for n = 2 or 3")


def euclidean_ball_volume(n: int, R: float) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1) * R**n


def min_diameter_for_log_volume(n: int, log_v: float, rtol: float = 1e-10) -> float:
    _check_dim(n)
    if log_v == -math.inf:
        return 0.0
    lo, hi = 0.0, 1.0
    while log_ball_volume(n, hi) < log_v:
        lo, hi = hi, 2 * hi
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if log_ball_volume(n, mid) < log_v:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def min_diameter_for_volume(n: int, v: float, rtol: float = 1e-10) -> float:
    """Smallest diameter a closed hyperbolic n-manifold of volume v can have.

    The radius-diam ball around any point covers the manifold, so v is at
    most the volume of that ball in H^n; this inverts that relation.
    """
    if v < 0:
        raise ConfigError("volume must be nonnegative")
    return min_diameter_for_log_volume(n, math.log(v) if v > 0 else -math.inf, rtol)


def injectivity_floor(diam: float, C: float = 1.0) -> float:
    if C <= 0 or diam < 0:
        raise ConfigError("need diam >= 0 and C > 0")
    return math.exp(-diam / C)


def log_betti_bound(n: int, diam: float, C: float = 1.0) -> float:
    return math.log(C) + (n - 1) * diam


def betti_bound(n: int, diam: float, C: float = 1.0) -> float:
    """b_i(M) <= C exp((n-1) diam(M))."""
    if C <= 0 or diam < 0:
        raise ConfigError("need diam >= 0 and C > 0")
    return C * math.exp((n - 1) * diam)


def log_net_size_bound(n: int, log_vol: float, r: float) -> float:
    if r <= 0:
        raise ConfigError("r must be positive")
    return log_vol - log_ball_volume(n, r / 4)


def net_size_bound(n: int, vol: float, r: float) -> float:
    """Packing bound on the size of an (r/4)-separated set in a manifold of volume ``vol``."""
    if vol <= 0:
        raise ConfigError("volume must be positive")
    return math.exp(log_net_size_bound(n, math.log(vol), r))


def degree_bound(n: int, r: float) -> float:
    """Neighbours of a net point in the nerve: vol B(9r/8) / vol B(r/8)."""
    if r <= 0:
        raise ConfigError("r must be positive")
    return math.exp(log_ball_volume(n, 9 * r / 8) - log_ball_volume(n, r / 8))


@dataclass(frozen=True)
class GeometryParams:
    n: int
    diam: float
    vol: float | None = None
    inj: float | None = None
    C_inj: float = 1.0
    C_vol: float = 1.0
    C_betti: float = 1.0

    def __post_init__(self):
        _check_dim(self.n)
        for name in ("diam", "C_inj", "C_vol", "C_betti"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.vol is not None:
            if not self.vol > 0:
                raise ConfigError("vol must be positive")
            if math.log(self.vol) > log_ball_volume(self.n, self.diam) * (1 + 1e-12):
                raise ConfigError("vol exceeds the volume of a ball of radius diam")
        if self.inj is not None and not self.inj > 0:
            raise ConfigError("inj must be positive")


def lookup_gabber_constant(table: Mapping, degree: int) -> tuple[int, float]:
    """Constant valid for complexes of max degree ``degree``.

    ``table`` maps a degree cap to ``{p: C}``; the smallest cap >= degree is
    used (a complex of degree <= D also has degree <= any larger cap) and the
    largest constant over p is returned with the cap used.
    """
    caps = sorted(int(k) for k in table)
    usable = [c for c in caps if c >= degree]
    if not usable:
        raise ConstantTableMissing(
            f"constant table missing: no Gabber constant for degree {degree} (table caps {caps})")
    cap = usable[0]
    row = table[cap] if cap in table else table[str(cap)]
    return cap, max(float(v) for v in row.values())


@dataclass(frozen=True)
class TorsionBound:
    n: int
    diam: float
    r: float
    log_net_size: float
    degree: int
    local_degree: float
    degree_cap_used: int
    gabber_constant: float
    loglog_bound: float

    @property
    def envelope(self) -> float:
        """loglog bound per unit diameter."""
        return self.loglog_bound / self.diam

    def to_json(self) -> dict:
        return {
            "n": self.n, "diam": self.diam, "r": self.r,
            "log_net_size": self.log_net_size,
            "net_size": math.exp(self.log_net_size) if self.log_net_size < 709 else None,
            "degree": self.degree, "local_degree": self.local_degree,
            "degree_cap_used": self.degree_cap_used,
            "gabber_constant": self.gabber_constant,
            "loglog_bound": self.loglog_bound,
            "log_bound": math.exp(self.loglog_bound) if self.loglog_bound < 709 else None,
            "envelope": self.envelope,
        }


def required_degree_cap(n: int) -> int:
    """Integer degree cap covering the nerve degree bound at every diameter."""
    return math.ceil(degree_bound(n, 1.0) * (1 - 1e-12))


def torsion_bound(n: int, diam: float, params: GeometryParams | None, gabber_table: Mapping) -> TorsionBound:
    """Bound on log log |H_i(M; Z)_tors| for any i.

    r = exp(-diam / C_inj) lower-bounds the injectivity radius; an
    (r/4)-net has at most vol / vol B(r/4) points, with vol <= vol B(diam)
    unless ``params.vol`` is given; the nerve of the r/2-balls has degree at
    most vol B(9r/8) / vol B(r/8). That ratio grows with r, and r <= 1 for
    every diameter, so the degree cap is taken at r = 1 and stays the same
    for all diameters. Gabber's lemma then gives log|tors| <= C(cap) * |net|.
    """
    params = params or GeometryParams(n=n, diam=diam)
    if diam <= 0:
        raise ConfigError("diam must be positive")
    r = injectivity_floor(diam, params.C_inj)
    log_vol = math.log(params.vol) if params.vol is not None else log_ball_volume(n, diam)
    log_v = log_net_size_bound(n, log_vol, r)
    degree = required_degree_cap(n)
    cap, c = lookup_gabber_constant(gabber_table, degree)
    return TorsionBound(n, diam, r, log_v, degree, degree_bound(n, r), cap, c, math.log(c) + log_v)


DEFAULT_BERGERON_VENKATESH_SLACK = 0.01


@dataclass(frozen=True)
class SharpnessParams:
    A: float
    B: float = 6 * math.pi * (1 + DEFAULT_BERGERON_VENKATESH_SLACK)
    lambda1_floor: float = 1.0

    def __post_init__(self):
        for name in ("A", "B", "lambda1_floor"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")


@dataclass(frozen=True)
class SharpnessResult:
    slope: float       # 1 / A
    offset: float      # log B
    target: float
    diam_at_target: float
    envelope: float    # target / diam_at_target

    def to_json(self) -> dict:
        return dict(self.__dict__)


def sharpness_chain(loglog_tors_target: float, s: SharpnessParams) -> SharpnessResult:
    """Chain diam <= A log vol and vol <= B log|tors|.

    Together: log log|tors| >= diam / A - log B. At a given value T of
    log log|tors| the diameter is at most A (T + log B), so the ratio
    log log|tors| / diam is at least T / (A (T + log B)), which tends to 1/A.
    The spectral-gap floor only guarantees that A exists and does not enter.
    """
    T = loglog_tors_target
    if not T > 0:
        raise ConfigError("target must be positive")
    offset = math.log(s.B)
    if T + offset <= 0:
        raise ConfigError("target too small for this B: the chain gives no diameter bound")
    diam = s.A * (T + offset)
    return SharpnessResult(1.0 / s.A, offset, T, diam, T / diam)
