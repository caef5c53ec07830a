"""Zeros of integer polynomials: exact counting by Sturm sequences and
multiprecision location by Aberth-Ehrlich iteration.

Exact counts never depend on a floating tolerance.  Numerical roots are
certified by inclusion disks: with ``a_n`` the leading coefficient, the
disks ``|z - z_i| <= n |p(z_i)| / |a_n prod_{j != i} (z_i - z_j)|`` contain all
zeros, and each one of them when the disks are pairwise disjoint.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2

from .polyalg import BigPoly, derivative, exact_quotient, poly_gcd, pseudo_remainder

log = logging.getLogger(__name__)

__all__ = [
    "RootSet",
    "ConvergenceError",
    "SymmetryError",
    "deflate_origin",
    "squarefree_part",
    "squarefree_decomposition",
    "coprime_certificate",
    "sturm_sequence",
    "count_real_roots_exact",
    "count_imaginary_roots_exact",
    "is_squarefree_away_from_origin",
    "find_roots",
    "symmetrize_roots",
]


class ConvergenceError(RuntimeError):
    """The solver hit its precision ceiling before certifying every root."""

    def __init__(self, msg, achieved_bound=None):
        super().__init__(msg)
        self.achieved_bound = achieved_bound


class SymmetryError(ValueError):
    """A root set expected to be symmetric is not, beyond tolerance."""


# ---------------------------------------------------------------- exact part


def deflate_origin(p: BigPoly) -> tuple[int, BigPoly]:
    """Split p = z**m * q with q(0) != 0."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root set")
    m = p.valuation()
    return m, p.shift_down(m)


def squarefree_part(p: BigPoly) -> BigPoly:
    """Primitive polynomial with the same distinct roots as p."""
    if p.degree < 1:
        return BigPoly([1])
    g = poly_gcd(p, derivative(p))
    return exact_quotient(p.primitive(), g.primitive()).primitive()


def squarefree_decomposition(p: BigPoly) -> list[tuple[BigPoly, int]]:
    """Yun's algorithm: p ~ prod f_i**i with f_i squarefree and coprime.

    Only nonconstant factors are returned; the integer content is dropped.
    """
    if p.degree < 1:
        return []
    a = p.primitive()
    out = []
    g = poly_gcd(a, derivative(a)).primitive()
    b = exact_quotient(a, g)
    c = exact_quotient(derivative(a), g)
    d = c - derivative(b)
    i = 1
    while b.degree >= 1:
        f = poly_gcd(b, d).primitive()
        if f.degree >= 1:
            out.append((f, i))
        b = exact_quotient(b, f)
        c = exact_quotient(d, f)
        d = c - derivative(b)
        i += 1
    return out


_PRIMES = (2**61 - 1, 2**31 - 1, 1_000_000_007, 998_244_353)


def _gcd_degree_mod(a: Sequence[int], b: Sequence[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p); inputs low to high."""

    def norm(c):
        c = [x % p for x in c]
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = norm(a), norm(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for j, y in enumerate(b):
                a[off + j] = (a[off + j] - f * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def coprime_certificate(a: BigPoly, b: BigPoly) -> bool:
    """True only if gcd(a, b) = 1 over Q, proven by a gcd modulo a prime.

    Reduction modulo a prime that divides neither leading coefficient can
    only raise the gcd degree, so a constant gcd mod p is a proof.  False
    means inconclusive.
    """
    for p in _PRIMES:
        if a.lc % p and b.lc % p:
            if _gcd_degree_mod(a.coeffs, b.coeffs, p) == 0:
                return True
    return False


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p: BigPoly) -> list[BigPoly]:
    """Sturm chain of the squarefree part, with contents divided out.

    Each remainder is scaled by a positive rational only, so sign patterns
    are those of the classical chain.
    """
    s0 = squarefree_part(p)
    if s0.degree < 1:
        return [s0]
    chain = [s0, _positive_primitive(derivative(s0))]
    while chain[-1].degree >= 1:
        a, b = chain[-2], chain[-1]
        r = pseudo_remainder(a, b)
        if r.is_zero():
            break
        # prem = lc(b)**(delta + 1) * rem; undo a negative factor
        delta = len(a) - len(b)
        if b.lc < 0 and delta % 2 == 0:
            r = -r
        chain.append(-_positive_primitive(r))
    return chain


def _positive_primitive(p: BigPoly) -> BigPoly:
    c = abs(p.content())
    return BigPoly(x // c for x in p.coeffs)


def _variations(signs: Sequence[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _signs_at(chain: Sequence[BigPoly], x) -> list[int]:
    if x == math.inf:
        return [_sign(f.lc) for f in chain]
    if x == -math.inf:
        return [_sign(f.lc) * (-1 if f.degree % 2 else 1) for f in chain]
    xf = Fraction(x)
    return [_sign(f(xf)) for f in chain]


def count_real_roots_exact(p: BigPoly, lo=-math.inf, hi=math.inf) -> int:
    """Number of distinct real roots in (lo, hi]; the whole line by default."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    chain = sturm_sequence(p)
    if chain[0].degree < 1:
        return 0
    return _variations(_signs_at(chain, lo)) - _variations(_signs_at(chain, hi))


def _imaginary_axis_poly(q: BigPoly) -> BigPoly:
    """Real polynomial s(y) proportional to q(i y), for q of definite parity."""
    par = q.parity()
    if par is None:
        raise ValueError("polynomial has indefinite parity")
    out = []
    for j, a in enumerate(q.coeffs):
        if a == 0:
            out.append(0)
        else:
            # i**j / i**par is real: (-1)**((j - par) / 2)
            out.append(a * (-1) ** ((j - par) // 2))
    return BigPoly(out)


def count_imaginary_roots_exact(p: BigPoly) -> tuple[int, int]:
    """Distinct roots on the imaginary axis excluding 0: (total, upper half)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.parity() is None:
        raise ValueError("polynomial has indefinite parity")
    _, q = deflate_origin(p)
    s = _imaginary_axis_poly(q)
    total = count_real_roots_exact(s)
    upper = count_real_roots_exact(s, 0, math.inf)
    return total, upper


def is_squarefree_away_from_origin(p: BigPoly) -> tuple[bool, int]:
    """(flag, deg gcd(p, p')); flag iff gcd is c * z**max(m - 1, 0)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    m = p.valuation()
    g = poly_gcd(p, derivative(p))
    gdeg = g.degree
    expected = max(m - 1, 0)
    flag = gdeg == expected and all(c == 0 for c in g.coeffs[:-1])
    return flag, gdeg


# ------------------------------------------------------------- numerical part


def _ctx(prec: int):
    return gmpy2.context(gmpy2.get_context(), precision=prec)


def _dec(x, digits: int) -> str:
    """Scientific notation with ``digits`` significant digits."""
    if x == 0:
        return "0"
    if digits <= 15:
        return "{:.{}e}".format(float(x), digits - 1)
    if not isinstance(x, type(gmpy2.mpfr(0))):
        x = gmpy2.mpfr(x)
    mant, exp, _ = x.digits(10, digits)
    sign = "-" if mant.startswith("-") else ""
    mant = mant.lstrip("-")
    return f"{sign}{mant[0]}.{mant[1:]}e{exp - 1:+03d}"


@dataclass(frozen=True)
class RootSet:
    """Distinct nonzero roots with multiplicities, plus the exact origin order.

    ``roots`` holds ``(gmpy2.mpc, multiplicity)`` pairs sorted by real then
    imaginary part.
    """

    roots: tuple
    origin_multiplicity: int
    degree: int
    precision_bits: int
    residual_bound: object
    inclusion_radius: object
    target_digits: int
    partition: Optional[str] = None

    @property
    def axis_tol(self) -> float:
        return 10.0 ** (-(self.target_digits / 2))

    def points(self) -> list:
        return [z for z, _ in self.roots]

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots) + self.origin_multiplicity

    def complex_points(self) -> list[complex]:
        return [complex(z) for z, _ in self.roots]

    def classify(self) -> dict:
        """Counts of real, pure imaginary (upper) and generic (upper) roots."""
        tol = self.axis_tol
        real = imag_upper = generic_upper = 0
        for z, _ in self.roots:
            scale = max(1, abs(z))
            if abs(z.imag) <= tol * scale:
                real += 1
            elif z.imag > 0:
                if abs(z.real) <= tol * scale:
                    imag_upper += 1
                else:
                    generic_upper += 1
        return {"real": real, "imaginary_upper": imag_upper, "generic_upper": generic_upper}

    def real_roots(self) -> list[float]:
        tol = self.axis_tol
        return sorted(float(z.real) for z, _ in self.roots if abs(z.imag) <= tol * max(1, abs(z)))

    def upper(self) -> list[complex]:
        """Nonreal roots in the upper half plane, as Python complex numbers."""
        tol = self.axis_tol
        return [complex(z) for z, _ in self.roots if z.imag > tol * max(1, abs(z))]

    def to_json(self) -> dict:
        digits = self.target_digits + 5
        return {
            "partition": self.partition,
            "degree": self.degree,
            "origin_multiplicity": self.origin_multiplicity,
            "precision_bits": self.precision_bits,
            "residual_bound": _dec(self.residual_bound, 6),
            "inclusion_radius": _dec(self.inclusion_radius, 6),
            "classification": self.classify(),
            "roots": [
                {"re": _dec(z.real, digits), "im": _dec(z.imag, digits), "mult": m}
                for z, m in self.roots
            ],
        }


_STALL_SWEEPS = 30


def _start_radius(coeffs: Sequence[int]):
    """1.5 x geometric mean of the root moduli, capped by Fujiwara's bound."""
    n = len(coeffs) - 1
    an = abs(gmpy2.mpfr(coeffs[-1]))
    fuj = gmpy2.mpfr(0)
    for j in range(1, n + 1):
        a = abs(gmpy2.mpfr(coeffs[n - j]))
        if j == n:
            a /= 2
        if a:
            fuj = max(fuj, (a / an) ** (gmpy2.mpfr(1) / j))
    fuj *= 2
    gm = (abs(gmpy2.mpfr(coeffs[0])) / an) ** (gmpy2.mpfr(1) / n)
    return min(fuj, gm * gmpy2.mpfr("1.5"))


def _initial_points(coeffs: Sequence[int], prec: int):
    n = len(coeffs) - 1
    with _ctx(prec):
        R = _start_radius(coeffs)
        two_pi = 2 * gmpy2.const_pi()
        phase = gmpy2.mpfr("0.4")
        return [R * gmpy2.exp(gmpy2.mpc(0, two_pi * j / n + phase)) for j in range(n)]


def _aberth(coeffs: Sequence[int], tol_digits: int, zs, prec: int, max_iter: int):
    """Gauss-Seidel Aberth sweeps at ``prec`` bits; returns (roots, converged)."""
    n = len(coeffs) - 1
    mpc = gmpy2.mpc
    with _ctx(prec):
        cf = [gmpy2.mpfr(a) for a in coeffs]
        top, rest = cf[-1], cf[-2::-1]
        zs = [mpc(z) for z in zs]
        tol = gmpy2.mpfr(10) ** (-tol_digits)
        done = [False] * n
        ndone, last_gain = 0, 0
        for it in range(max_iter):
            for i in range(n):
                if done[i]:
                    continue
                zi = zs[i]
                p, dp = top, mpc(0)
                for a in rest:
                    dp = dp * zi + p
                    p = p * zi + a
                if p == 0:
                    done[i] = True
                    continue
                ratio = p / dp
                s = mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - zs[j])
                w = ratio / (1 - ratio * s)
                zs[i] = zi - w
                if abs(w) < tol * max(1, abs(zi)):
                    done[i] = True
            count = sum(done)
            if count == n:
                log.debug("aberth: degree %d converged after %d sweeps at %d bits", n, it + 1, prec)
                return zs, True
            if count > ndone:
                ndone, last_gain = count, it
            elif ndone and it - last_gain > _STALL_SWEEPS:
                # remaining corrections sit at the rounding floor
                log.debug("aberth: degree %d stalled at %d/%d after %d sweeps at %d bits", n, ndone, n, it + 1, prec)
                return zs, False
        log.debug("aberth: degree %d not converged in %d sweeps at %d bits", n, max_iter, prec)
        return zs, False


def _certify(coeffs: Sequence[int], zs, prec: int):
    """Inclusion radii and residual bounds for all ``zs`` at ``prec`` bits."""
    n = len(coeffs) - 1
    with _ctx(prec):
        cf = [gmpy2.mpfr(a) for a in coeffs]
        an = abs(cf[-1])
        absc = [abs(a) for a in cf]
        unit = gmpy2.mpfr(2) ** (-prec)
        radii, resid = [], []
        for i, zi in enumerate(zs):
            p = cf[-1]
            for a in reversed(cf[:-1]):
                p = p * zi + a
            r = abs(zi)
            s = gmpy2.mpfr(0)
            for a in reversed(absc):
                s = s * r + a
            # computed value plus a Horner rounding bound
            err = abs(p) + 4 * (n + 1) * unit * s
            prod = an
            for j, zj in enumerate(zs):
                if j != i:
                    prod *= abs(zi - zj)
            radii.append(n * err / prod if prod else gmpy2.inf())
            resid.append(err)
        return radii, resid


def _disks_disjoint(zs, radii) -> bool:
    n = len(zs)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(zs[i] - zs[j]) <= radii[i] + radii[j]:
                return False
    return True


def _solve_squarefree(f: BigPoly, target_digits: int, start_bits: int, ceiling: int):
    """Certified roots of a squarefree f with f(0) != 0.

    An even f is solved in t = z**2 at half the degree.
    """
    n = int(f.degree)
    if n == 0:
        return [], start_bits, 0, 0
    even = f.parity() == 0
    coeffs = f.coeffs[0::2] if even else f.coeffs
    m = len(coeffs) - 1
    prec = start_bits
    zs = None
    tol = 10.0 ** (-target_digits)
    radii = None
    while True:
        if zs is None:
            zs = _initial_points(coeffs, prec)
        zs, ok = _aberth(coeffs, target_digits + 3, zs, prec, max_iter=100 + 10 * m)
        if ok:
            with _ctx(prec):
                roots = zs
                if even:
                    roots = []
                    for t in zs:
                        r = gmpy2.sqrt(t)
                        roots += [r, -r]
            radii, resid = _certify(f.coeffs, roots, prec)
            small = all(r <= tol * max(1, abs(z)) for r, z in zip(radii, roots))
            if small and _disks_disjoint(roots, radii):
                return roots, prec, max(resid), max(radii)
            log.debug("certification failed at %d bits, escalating", prec)
        if prec * 2 > ceiling:
            bound = max(radii) if radii else None
            raise ConvergenceError(
                f"no certified roots for degree {n} within {ceiling} bits", achieved_bound=bound
            )
        prec *= 2


def find_roots(p: BigPoly, target_digits: int = 30, partition: Optional[str] = None) -> RootSet:
    """All complex roots of an integer polynomial, certified to ``target_digits``.

    The origin is split off exactly and multiple roots are separated by an
    exact squarefree decomposition before any floating-point work.  Precision
    starts at max(256, bitlen / 4) bits and doubles up to 32 times that.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if target_digits < 1:
        raise ValueError("target_digits must be positive")
    m, q = deflate_origin(p)
    start = max(256, p.bit_length() // 4, int(target_digits * 3.33) + 64)
    ceiling = 32 * start
    roots = []
    prec_used = start
    resid_max = gmpy2.mpfr(0)
    rad_max = gmpy2.mpfr(0)
    if q.degree >= 1 and coprime_certificate(q, derivative(q)):
        factors = [(q.primitive(), 1)]
    else:
        factors = squarefree_decomposition(q)
    for f, mult in factors:
        zs, prec, resid, rad = _solve_squarefree(f, target_digits, start, ceiling)
        prec_used = max(prec_used, prec)
        resid_max = max(resid_max, resid)
        rad_max = max(rad_max, rad)
        roots += [(z, mult) for z in zs]
    roots.sort(key=lambda t: (t[0].real, t[0].imag))
    return RootSet(
        roots=tuple(roots),
        origin_multiplicity=m,
        degree=int(p.degree),
        precision_bits=prec_used,
        residual_bound=resid_max,
        inclusion_radius=rad_max,
        target_digits=target_digits,
        partition=partition,
    )


def _pop_nearest(pool: list, target, mult: int, limit):
    best, best_d = None, None
    for idx, (z, m) in enumerate(pool):
        if m != mult:
            continue
        d = abs(z - target)
        if best_d is None or d < best_d:
            best, best_d = idx, d
    if best is None or best_d > limit:
        raise SymmetryError(f"no symmetric partner for {complex(target)}")
    return pool.pop(best)


def symmetrize_roots(rs: RootSet, parity: bool = True, tol=None) -> RootSet:
    """Average symmetric partners and snap near-axis roots onto the axes.

    The result is exactly closed under conjugation, and under negation when
    ``parity`` is set.  Partners further apart than 10 * tol (relative to
    max(1, |z|)) raise :class:`SymmetryError`.
    """
    if tol is None:
        tol = rs.axis_tol
    with _ctx(rs.precision_bits):
        tol = gmpy2.mpfr(tol)

        def limit(z):
            return 10 * tol * max(1, abs(z))

        real, upper, lower = [], [], []
        for z, m in rs.roots:
            z = gmpy2.mpc(z)
            if abs(z.imag) <= tol * max(1, abs(z)):
                real.append((gmpy2.mpc(z.real, 0), m))
            elif z.imag > 0:
                upper.append((z, m))
            else:
                lower.append((z, m))
        if len(upper) != len(lower):
            raise SymmetryError("root set is not closed under conjugation")
        paired = []
        for z, m in upper:
            w, _ = _pop_nearest(lower, z.conjugate(), m, limit(z))
            paired.append(((z + w.conjugate()) / 2, m))
        upper = paired
        if parity:
            upper = _mirror(upper, tol, limit)
            real = _mirror(real, tol, limit)
        out = real + upper + [(z.conjugate(), m) for z, m in upper]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return replace(rs, roots=tuple(out))


def _mirror(roots: list, tol, limit) -> list:
    """Pair z with -conj(z); snap roots within tol of the imaginary axis."""
    on_axis, left, right = [], [], []
    for z, m in roots:
        if abs(z.real) <= tol * max(1, abs(z)):
            on_axis.append((gmpy2.mpc(0, z.imag), m))
        elif z.real > 0:
            right.append((z, m))
        else:
            left.append((z, m))
    if len(left) != len(right):
        raise SymmetryError("root set is not closed under negation")
    out = on_axis
    for z, m in right:
        w, _ = _pop_nearest(left, -z.conjugate(), m, limit(z))
        avg = (z - w.conjugate()) / 2
        out += [(avg, m), (-avg.conjugate(), m)]
    return out
