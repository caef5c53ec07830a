"""Exact checks of the simplicity and doubled-partition conjectures, and of
the random-matrix integral representation of W_(m,m).

Verdicts come from integer arithmetic only: subresultant gcds, modular
coprimality certificates and Sturm counts.  Nothing here looks at a float.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .partition import (
    Partition,
    PartitionError,
    distinct_partitions,
    origin_multiplicity,
    partitions_up_to,
)
from .polyalg import BigPoly, derivative, wronskian_of_partition
from .rootfind import (
    coprime_certificate,
    count_imaginary_roots_exact,
    count_real_roots_exact,
    deflate_origin,
    is_squarefree_away_from_origin,
)

__all__ = [
    "ConjectureReport",
    "FormulaViolation",
    "Family",
    "check_simplicity",
    "check_doubled_conjecture",
    "brezin_hikami_poly",
    "scan",
    "reports_to_jsonl",
]


class FormulaViolation(AssertionError):
    """The origin multiplicity differs from d(d+1)/2.  This is a theorem, so
    a mismatch means a bug, not a finding."""

    def __init__(self, report: "ConjectureReport"):
        super().__init__(
            f"origin multiplicity of {report.partition}: observed {report.origin_observed}, "
            f"formula {report.origin_formula}"
        )
        self.report = report


@dataclass(frozen=True)
class ConjectureReport:
    """Exact counts for one Wronskian and the verdicts drawn from them.

    ``real_count`` and the imaginary counts are distinct nonzero roots.
    ``mu`` and ``odd_count`` are set only for doubled-partition checks.
    """

    kind: str
    partition: str
    degree: int
    origin_observed: int
    origin_formula: int
    squarefree: bool
    gcd_degree: int
    certificate: str
    real_count: int
    imag_total: int
    imag_upper: int
    mu: Optional[str] = None
    odd_count: Optional[int] = None
    verdicts: dict = field(default_factory=dict)

    @property
    def formula_ok(self) -> bool:
        return self.origin_observed == self.origin_formula

    @property
    def violation(self) -> bool:
        """A conjecture fails for this partition under every reading."""
        return bool(self.verdicts.get("violation"))

    @property
    def warnings(self) -> list[str]:
        return list(self.verdicts.get("warnings", []))

    def to_json(self) -> dict:
        return asdict(self)

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _squarefree_certificate(w: BigPoly) -> tuple[bool, int, str]:
    """(flag, deg gcd(W, W'), how it was decided).

    A constant gcd of the deflated polynomial and its derivative modulo a
    good prime already proves squarefreeness; otherwise fall back to the
    subresultant gcd over Z.
    """
    m, q = deflate_origin(w)
    if q.degree < 1:
        return True, max(m - 1, 0), "trivial"
    if coprime_certificate(q, derivative(q)):
        return True, max(m - 1, 0), "modular"
    flag, gdeg = is_squarefree_away_from_origin(w)
    return flag, gdeg, "subresultant"


def _counts(w: BigPoly) -> tuple[int, int, int]:
    _, q = deflate_origin(w)
    if q.degree < 1:
        return 0, 0, 0
    real = count_real_roots_exact(q)
    total, upper = count_imaginary_roots_exact(q)
    return real, total, upper


def check_simplicity(p: Partition) -> ConjectureReport:
    """All zeros of W_lambda away from 0 are simple; origin order d(d+1)/2."""
    if not p.is_integral:
        raise PartitionError(f"{p} has half-integer parts")
    w = wronskian_of_partition(p)
    flag, gdeg, how = _squarefree_certificate(w)
    real, total, upper = _counts(w)
    observed = w.valuation()
    formula = origin_multiplicity(p)
    verdicts = {
        "multiplicity_formula": observed == formula,
        "simple_away_from_origin": flag,
        "violation": not flag,
        "warnings": [],
    }
    return ConjectureReport(
        kind="simplicity",
        partition=str(p),
        degree=w.degree,
        origin_observed=observed,
        origin_formula=formula,
        squarefree=flag,
        gcd_degree=gdeg,
        certificate=how,
        real_count=real,
        imag_total=total,
        imag_upper=upper,
        verdicts=verdicts,
    )


def _doubled_base(mu: Partition) -> Partition:
    """nu = (mu_1^2, ..., mu_n^2) in repetition notation."""
    parts = mu.int_parts()
    if len(set(parts)) != len(parts):
        raise PartitionError(f"{mu} has repeated parts")
    return Partition.from_parts([a for a in parts for _ in (0, 1)])


def check_doubled_conjecture(mu: Partition) -> ConjectureReport:
    """No real zeros and one imaginary zero per odd part of mu, for nu = mu^2.

    The imaginary count is read two ways: ``total`` compares every root on
    the imaginary axis with the odd-part count, ``pair`` compares conjugate
    pairs (roots in the upper half) and requires the total to be twice it.
    """
    nu = _doubled_base(mu)
    w = wronskian_of_partition(nu)
    flag, gdeg, how = _squarefree_certificate(w)
    real, total, upper = _counts(w)
    odd = sum(a % 2 for a in mu.int_parts())
    observed = w.valuation()
    formula = origin_multiplicity(nu)

    total_reading = total == odd
    pair_reading = upper == odd and total == 2 * odd
    readings = [name for name, ok in (("total", total_reading), ("pair", pair_reading)) if ok]
    warnings = []
    if not total_reading:
        warnings.append(f"total reading: {total} imaginary roots vs {odd} odd parts")
    if not pair_reading:
        warnings.append(f"pair reading: {upper} upper-half roots vs {odd} odd parts")
    verdicts = {
        "multiplicity_formula": observed == formula,
        "no_real_roots": real == 0,
        "total_reading": total_reading,
        "pair_reading": pair_reading,
        "readings_holding": readings,
        "violation": real != 0 or not readings,
        "warnings": warnings,
    }
    return ConjectureReport(
        kind="doubled",
        partition=str(nu),
        degree=w.degree,
        origin_observed=observed,
        origin_formula=formula,
        squarefree=flag,
        gcd_degree=gdeg,
        certificate=how,
        real_count=real,
        imag_total=total,
        imag_upper=upper,
        mu=str(mu),
        odd_count=odd,
        verdicts=verdicts,
    )


# ------------------------------------------------------ integral representation


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def brezin_hikami_poly(m: int) -> tuple[BigPoly, Fraction, int]:
    """Expand and integrate prod_{i<j}(x_i-x_j)^2 prod_k (z-x_k)^2 e^{-x_k^2}.

    Returns ``(poly, scale, half_pi_power)`` with the integral equal to
    ``scale * sqrt(pi)**half_pi_power * poly(z)``, ``poly`` primitive with
    positive leading coefficient and ``scale > 0``.  Monomials are indexed
    by exponent tuples (z, x_1, ..., x_m); the expansion grows quickly, hence
    the bound on m.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > 3:
        raise ValueError("monomial expansion limited to m <= 3")
    nv = m + 1

    def var(i):
        return tuple(1 if j == i else 0 for j in range(nv))

    one = {(0,) * nv: 1}
    integrand = dict(one)
    for i, j in ((i, j) for i in range(1, nv) for j in range(i + 1, nv)):
        d = {var(i): 1, var(j): -1}
        integrand = _poly_mul(integrand, _poly_mul(d, d))
    for k in range(1, nv):
        d = {var(0): 1, var(k): -1}
        integrand = _poly_mul(integrand, _poly_mul(d, d))

    # int x^(2j) e^(-x^2) dx = sqrt(pi) (2j-1)!! / 2^j, odd moments vanish;
    # the sqrt(pi)^m is carried symbolically
    coeffs: dict[int, Fraction] = {}
    for e, c in integrand.items():
        if any(x % 2 for x in e[1:]):
            continue
        val = Fraction(c)
        for x in e[1:]:
            val *= Fraction(_double_factorial(x - 1), 2 ** (x // 2))
        coeffs[e[0]] = coeffs.get(e[0], 0) + val
    deg = max(coeffs)
    dense = [coeffs.get(i, Fraction(0)) for i in range(deg + 1)]
    den = math.lcm(*(c.denominator for c in dense))
    ints = [int(c * den) for c in dense]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    poly = BigPoly([c // g for c in ints])
    scale = Fraction(g, den)
    return poly, scale, m


# ------------------------------------------------------------------ batch scans


@dataclass(frozen=True)
class Family:
    """Enumerable family of partitions for a scan.

    ``conjecture1``: every integer partition of weight <= ``max_weight``
    (the empty one excluded).  ``conjecture2``: every nonempty distinct-part
    mu with mu_1 <= ``max_part`` and at most ``max_len`` parts.  ``extra``
    appends explicit partitions after the enumerated ones.
    """

    kind: str
    max_weight: int = 0
    max_part: int = 0
    max_len: int = 0
    extra: tuple = ()

    def __post_init__(self):
        if self.kind not in ("conjecture1", "conjecture2"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if min(self.max_weight, self.max_part, self.max_len) < 0:
            raise ValueError("bounds must be nonnegative")

    def members(self) -> list[Partition]:
        if self.kind == "conjecture1":
            base = [p for p in partitions_up_to(self.max_weight) if p.length]
        else:
            base = list(distinct_partitions(self.max_part, self.max_len)) if self.max_len else []
        seen = set(base)
        for p in self.extra:
            if p not in seen:
                base.append(p)
                seen.add(p)
        return base

    def checker(self):
        return check_simplicity if self.kind == "conjecture1" else check_doubled_conjecture


def scan(family: Family, workers: int = 1, strict: bool = True) -> Iterator[ConjectureReport]:
    """Reports in enumeration order.

    With ``strict`` a multiplicity-formula mismatch raises
    :class:`FormulaViolation` as soon as its report is reached.  Conjecture
    violations are never raised; they are carried in each report's verdicts.
    """
    members = family.members()
    fn = family.checker()
    if workers > 1 and len(members) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results: Iterable[ConjectureReport] = list(pool.map(fn, members))
    else:
        results = map(fn, members)
    for rep in results:
        if strict and not rep.formula_ok:
            raise FormulaViolation(rep)
        yield rep


def reports_to_jsonl(reports: Iterable[ConjectureReport]) -> str:
    return "".join(r.to_jsonl() + "\n" for r in reports)
