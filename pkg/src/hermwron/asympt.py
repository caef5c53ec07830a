"""Plancherel-Rotach approximations, zero-curve formulas for two-, three- and
four-term Hermite Wronskians, and the semicircle law for their real parts.

Everything here runs in double precision except the exact oracles
(:func:`hermite_function`, :func:`wronskian2_exact`), which evaluate the
integer polynomials from :mod:`hermwron.polyalg` with mpmath.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from statistics import median
from typing import Callable, Iterable, Sequence

import mpmath

from .partition import Partition, partition_from_degrees
from .polyalg import evaluate, hermite, wronskian_of_indices

__all__ = [
    "RegionError",
    "chebyshev_T",
    "theta",
    "chi",
    "delta_k",
    "big_phi",
    "pr_envelope",
    "hermite_pr_approx",
    "hermite_function",
    "pr_relative_error",
    "wronskian2_pr_approx",
    "wronskian2_exact",
    "curve_scaled_v",
    "curve_unscaled_y",
    "real_zero_asymptotes",
    "wigner_pdf",
    "wigner_cdf",
    "ks_statistic",
    "semicircle_ks",
    "curve3",
    "curve4_mid",
    "curve4_out",
    "curve4_doubled_mid",
    "curve4_doubled_out",
    "CurveSpec",
    "FitReport",
    "sample_curves",
    "curve_fit_report",
]

DEFAULT_DELTA = 0.1
DEFAULT_WINDOW = (0.85, 0.1)
# |sin(k arccos u)| below this counts as a zero of 1 - T_k(u)^2
_SINGULAR_EPS = 1e-12


class RegionError(ValueError):
    """Argument outside the region where a formula is defined."""


def chebyshev_T(k: int, x: float) -> float:
    """T_k(x) by the three-term recurrence; valid for every real x."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t0, t1 = 1.0, x
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, 2 * x * t1 - t0
    return t1


def _check_cut(w) -> complex:
    w = complex(w)
    if w.imag == 0 and abs(w.real) > 1:
        raise RegionError(f"w = {w.real} lies on a branch cut")
    return w


def _real_if(w_in, val: complex):
    return val.real if isinstance(w_in, (int, float)) else val


def theta(w):
    """w sqrt(1 - w^2) / 2 + arcsin(w) / 2 - pi / 4 (principal branches)."""
    z = _check_cut(w)
    val = 0.5 * z * cmath.sqrt(1 - z * z) + 0.5 * cmath.asin(z) - math.pi / 4
    return _real_if(w, val)


def chi(w):
    z = _check_cut(w)
    return _real_if(w, 0.5 * cmath.asin(z))


def delta_k(k: int, w):
    """k arccos w.  Note 2k Theta(w) - k w Theta'(w) equals minus this."""
    z = _check_cut(w)
    return _real_if(w, k * cmath.acos(z))


def big_phi(n: int, w):
    """2n Theta(w) + chi(w), the phase of the n-th Hermite function."""
    z = _check_cut(w)
    return _real_if(w, 2 * n * complex(theta(z)) + complex(chi(z)))


def _check_region(w, delta: float) -> complex:
    z = _check_cut(w)
    if abs(z.real) > 1 - delta:
        raise RegionError(f"|Re w| = {abs(z.real)} exceeds 1 - delta = {1 - delta}")
    return z


def pr_envelope(n: int, w: float) -> float:
    """C_n (1 - w^2)^(-1/4) with C_n = sqrt(2/pi) (2n)^(-1/4)."""
    return math.sqrt(2 / math.pi) * (2 * n) ** -0.25 * (1 - w * w) ** -0.25


def hermite_pr_approx(n: int, w, delta: float = DEFAULT_DELTA):
    """Leading Plancherel-Rotach term for the orthonormal Hermite function
    phi_n(z) = H_n(z) exp(-z^2/2) / sqrt(2^n n! sqrt(pi)) at z = sqrt(2n) w."""
    if n < 1:
        raise ValueError("n must be positive")
    z = _check_region(w, delta)
    cn = math.sqrt(2 / math.pi) * (2 * n) ** -0.25
    val = cn * (1 - z * z) ** -0.25 * cmath.cos(2 * n * complex(theta(z)) + complex(chi(z)))
    return _real_if(w, val)


def hermite_function(n: int, x, dps: int = 30):
    """Orthonormal Hermite function phi_n at real or complex x, from exact H_n."""
    bits = int(dps * 3.33) + 16
    with mpmath.workprec(bits + 64):
        z = mpmath.mpmathify(x)
        h = evaluate(hermite(n), z, bits)
        norm = mpmath.sqrt(mpmath.mpf(2) ** n * mpmath.factorial(n) * mpmath.sqrt(mpmath.pi))
        val = h * mpmath.exp(-z * z / 2) / norm
        return val.real if isinstance(z, mpmath.mpf) else val


def pr_relative_error(n: int, w: float) -> float:
    """|approx - exact| / envelope for the leading Plancherel-Rotach term."""
    x = math.sqrt(2 * n) * w
    exact = float(hermite_function(n, mpmath.mpf(x)).real)
    return abs(hermite_pr_approx(n, w, delta=0.0) - exact) / pr_envelope(n, w)


def wronskian2_pr_approx(n: int, k: int, w, delta: float = DEFAULT_DELTA):
    """Asymptotic W(phi_n, phi_{n+k}) at z = sqrt(2n) w, both orthonormal."""
    z = _check_region(w, delta)
    dk = complex(delta_k(k, z))
    ph = complex(big_phi(n, z))
    corr = (cmath.sin(dk) + k * cmath.sin(2 * ph + dk)) / (4 * n * (1 - z * z))
    return _real_if(w, (2 / math.pi) * (cmath.sin(dk) + corr))


def wronskian2_exact(n: int, k: int, w, dps: int = 30):
    """W(phi_n, phi_{n+k}) at z = sqrt(2n) w from the exact integer Wronskian."""
    bits = int(dps * 3.33) + 16
    poly = wronskian_of_indices([n, n + k])
    with mpmath.workprec(bits + 64):
        z = mpmath.sqrt(2 * n) * mpmath.mpmathify(w)
        val = evaluate(poly, z, bits)
        sp = mpmath.sqrt(mpmath.pi)
        norm = mpmath.sqrt(
            mpmath.mpf(2) ** n * mpmath.factorial(n) * sp * mpmath.mpf(2) ** (n + k) * mpmath.factorial(n + k) * sp
        )
        out = val * mpmath.exp(-z * z) / norm
        return float(out.real) if isinstance(w, (int, float)) else complex(out)


def _log_sin2(k: int, u: float) -> float:
    """ln |1 - T_k(u)^2| = 2 ln |sin(k arccos u)|; -inf at the singular points."""
    s = abs(math.sin(k * math.acos(u)))
    if s < _SINGULAR_EPS:
        return -math.inf
    return 2 * math.log(s)


def _check_u(u: float):
    if not -1 < u < 1:
        raise RegionError(f"u = {u} outside (-1, 1)")


def curve_scaled_v(u: float, n: int, k: int) -> float:
    """Asymptotic |v| of the scaled zeros w = u + iv of W(H_n, H_{n+k}).

    Returned unclipped; -inf at the zeros of 1 - T_k(u)^2.
    """
    _check_u(u)
    s = 1 - u * u
    return (math.log(8 * n / k) + math.log(s) + 0.5 * _log_sin2(k, u)) / (4 * n * math.sqrt(s))


def curve_unscaled_y(x: float, n: int, k: int) -> float:
    """|y| of the zero curve of W(H_n, H_{n+k}) in the unscaled plane."""
    u = x / math.sqrt(2 * n)
    _check_u(u)
    return (math.log(8 * n / k) + math.log(1 - u * u) + 0.5 * _log_sin2(k, u)) / (
        2 * math.sqrt(2 * n - x * x)
    )


def real_zero_asymptotes(n: int, k: int) -> list[float]:
    """sqrt(2n) cos(pi m / k) for m = 1..k-1, in decreasing order."""
    if k < 1:
        raise ValueError("k must be positive")
    r = math.sqrt(2 * n)
    return [r * math.cos(math.pi * m / k) for m in range(1, k)]


def wigner_pdf(u: float) -> float:
    return (2 / math.pi) * math.sqrt(1 - u * u) if -1 <= u <= 1 else 0.0


def wigner_cdf(u: float) -> float:
    if not -1 <= u <= 1:
        raise RegionError(f"u = {u} outside [-1, 1]")
    return (u * math.sqrt(1 - u * u) + math.asin(u) + math.pi / 2) / math.pi


def ks_statistic(samples: Iterable[float], cdf: Callable[[float], float]) -> float:
    xs = sorted(samples)
    if not xs:
        raise ValueError("empty sample")
    m = len(xs)
    d = 0.0
    for i, x in enumerate(xs):
        f = cdf(x)
        d = max(d, f - i / m, (i + 1) / m - f)
    return d


def _clipped_wigner_cdf(u: float) -> float:
    return 0.0 if u <= -1 else 1.0 if u >= 1 else wigner_cdf(u)


def semicircle_ks(roots, n: int) -> float:
    """KS distance between scaled real parts of upper-half roots and the
    semicircle law.  ``roots`` is a RootSet or an iterable of complex."""
    pts = roots.upper() if hasattr(roots, "upper") else [complex(z) for z in roots if complex(z).imag > 0]
    if not pts:
        raise ValueError("no roots in the upper half plane")
    scale = math.sqrt(2 * n)
    return ks_statistic((z.real / scale for z in pts), _clipped_wigner_cdf)


def _curve_core(x: float, n: int, k: int, c: float, lead: float, tw: float) -> float:
    """lead / sqrt(2n - x^2) * (ln c + ln(1 - x^2/2n) + tw * ln|1 - T_k^2|)."""
    u = x / math.sqrt(2 * n)
    _check_u(u)
    return lead * (math.log(c) + math.log(1 - u * u) + tw * _log_sin2(k, u)) / math.sqrt(2 * n - x * x)


def curve3(x: float, n: int, k: int) -> float:
    """Empirical zero curve of W(H_n, H_{n+k}, H_{n+2k})."""
    return _curve_core(x, n, k, 6 * n / k, 1.0, 0.5)


def curve4_mid(x: float, n: int, k: int) -> float:
    """Middle empirical curve of W(H_n, H_{n+k}, H_{n+2k}, H_{n+3k})."""
    return _curve_core(x, n, k, 4 * n / k, 0.5, 0.5)


def curve4_out(x: float, n: int, k: int) -> float:
    """Outer empirical curve; three times the middle one."""
    return _curve_core(x, n, k, 4 * n / k, 1.5, 0.5)


def _check_doubled(n: int, l: int):
    if not 1 <= l < n:
        raise ValueError(f"need 1 <= l < n, got n={n}, l={l}")


def curve4_doubled_mid(x: float, n: int, l: int) -> float:
    """Middle curve for W(H_n, H_{n+1}, H_{n+l+1}, H_{n+l+2})."""
    _check_doubled(n, l)
    u = x / math.sqrt(2 * n)
    _check_u(u)
    ls = _log_sin2(l, u)
    if ls == -math.inf:
        return math.inf
    return (math.log(4 * n) + 1.5 * math.log(1 - u * u) - 0.5 * ls) / (2 * math.sqrt(2 * n - x * x))


def curve4_doubled_out(x: float, n: int, l: int) -> float:
    """Outer curve for W(H_n, H_{n+1}, H_{n+l+1}, H_{n+l+2})."""
    _check_doubled(n, l)
    u = x / math.sqrt(2 * n)
    _check_u(u)
    return (math.log(8 * n * n / (5 * l)) + 1.5 * math.log(1 - u * u) + _log_sin2(l, u) / l) / math.sqrt(
        2 * n - x * x
    )


FAMILIES = ("two-term", "three-term", "four-term-equal", "four-term-doubled")


@dataclass(frozen=True)
class CurveSpec:
    """Selects a Wronskian family and the matching curve formula(s).

    ``n`` is always the smallest Hermite index.  Families:
    two-term W(H_n, H_{n+k}); three-term W(H_n, H_{n+k}, H_{n+2k});
    four-term-equal W(H_n, ..., H_{n+3k}); four-term-doubled
    W(H_n, H_{n+1}, H_{n+l+1}, H_{n+l+2}).
    """

    family: str
    n: int
    k: int = 1
    l: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.family == "four-term-doubled":
            _check_doubled(self.n, self.l)
        elif self.k < 1:
            raise ValueError("k must be positive")

    def indices(self) -> list[int]:
        n, k, l = self.n, self.k, self.l
        if self.family == "two-term":
            return [n, n + k]
        if self.family == "three-term":
            return [n, n + k, n + 2 * k]
        if self.family == "four-term-equal":
            return [n, n + k, n + 2 * k, n + 3 * k]
        return [n, n + 1, n + l + 1, n + l + 2]

    def partition(self) -> Partition:
        return partition_from_degrees(self.indices())

    @property
    def scale(self) -> float:
        return math.sqrt(2 * self.n)

    def branches(self) -> dict[str, Callable[[float], float]]:
        n, k, l = self.n, self.k, self.l
        if self.family == "two-term":
            return {"curve": lambda x: curve_unscaled_y(x, n, k)}
        if self.family == "three-term":
            return {"curve": lambda x: curve3(x, n, k)}
        if self.family == "four-term-equal":
            return {"mid": lambda x: curve4_mid(x, n, k), "out": lambda x: curve4_out(x, n, k)}
        return {"mid": lambda x: curve4_doubled_mid(x, n, l), "out": lambda x: curve4_doubled_out(x, n, l)}

    def label(self) -> str:
        args = ",".join(f"H_{i}" for i in self.indices())
        return f"W({args})"


def _branch_value(fn, x: float):
    """Curve value, or None where the formula gives no point (<= 0 or singular)."""
    try:
        y = fn(x)
    except RegionError:
        return None
    if not math.isfinite(y) or y <= 0:
        return None
    return y


def sample_curves(spec: CurveSpec, num: int = 401, a: float = DEFAULT_WINDOW[0]) -> list[tuple]:
    """Rows (x, branch, y) on a uniform grid of |x| <= a sqrt(2n); y is NaN
    where the branch has no point."""
    if num < 2:
        raise ValueError("need at least two sample points")
    xmax = a * spec.scale
    rows = []
    for name, fn in spec.branches().items():
        for i in range(num):
            x = -xmax + 2 * xmax * i / (num - 1)
            y = _branch_value(fn, x)
            rows.append((x, name, math.nan if y is None else y))
    return rows


@dataclass
class FitReport:
    spec: CurveSpec
    window: tuple[float, float]
    count: int
    per_branch: dict = field(default_factory=dict)
    unmatched: int = 0
    median_rel: float = math.nan
    max_rel: float = math.nan
    frac_within_10: float = math.nan
    frac_within_20: float = math.nan
    deviations: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        def f(v):
            return None if not math.isfinite(v) else round(v, 12)

        return {
            "family": self.spec.family,
            "wronskian": self.spec.label(),
            "n": self.spec.n,
            "k": self.spec.k,
            "l": self.spec.l,
            "window": {"a": self.window[0], "b": self.window[1]},
            "count": self.count,
            "per_branch": dict(sorted(self.per_branch.items())),
            "unmatched": self.unmatched,
            "median_rel_deviation": f(self.median_rel),
            "max_rel_deviation": f(self.max_rel),
            "fraction_within_10pct": f(self.frac_within_10),
            "fraction_within_20pct": f(self.frac_within_20),
        }


def curve_fit_report(roots, spec: CurveSpec, window: Sequence[float] = DEFAULT_WINDOW) -> FitReport:
    """Vertical deviation of upper-half nonreal roots from the nearest branch.

    Window: |x| <= a sqrt(2n) and y >= b.  Relative deviation is
    |y - y_curve| / y_curve; a root with no branch point at its x counts as
    unmatched with infinite deviation.
    """
    a, b = window
    if not (0 < a < 1 and b > 0):
        raise ValueError("window needs 0 < a < 1 and b > 0")
    pts = roots.upper() if hasattr(roots, "upper") else [complex(z) for z in roots if complex(z).imag > 0]
    xmax = a * spec.scale
    sel = [z for z in pts if abs(z.real) <= xmax and z.imag >= b]
    if not sel:
        raise ValueError("no roots inside the fit window")
    branches = spec.branches()
    devs, per_branch, unmatched = [], {name: 0 for name in branches}, 0
    for z in sel:
        best = None
        for name, fn in branches.items():
            yc = _branch_value(fn, z.real)
            if yc is None:
                continue
            d = abs(z.imag - yc)
            if best is None or d < best[0]:
                best = (d, name, yc)
        if best is None:
            unmatched += 1
            devs.append(math.inf)
            continue
        per_branch[best[1]] += 1
        devs.append(best[0] / best[2])
    m = len(devs)
    return FitReport(
        spec=spec,
        window=(a, b),
        count=m,
        per_branch=per_branch,
        unmatched=unmatched,
        median_rel=median(devs),
        max_rel=max(devs),
        frac_within_10=sum(d <= 0.10 for d in devs) / m,
        frac_within_20=sum(d <= 0.20 for d in devs) / m,
        deviations=devs,
    )
