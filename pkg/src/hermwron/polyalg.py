"""Exact dense polynomials over the integers, Hermite polynomials and their
Wronskians.

Nothing in here rounds.  Multiprecision floats appear only in
:func:`evaluate`, which is the bridge to the numerical modules.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
from gmpy2 import divexact, mpz

from .partition import Partition, PartitionError, conjugate, degree_sequence

__all__ = [
    "BigPoly",
    "RationalFunction",
    "NotProportionalError",
    "hermite",
    "derivative",
    "wronskian",
    "wronskian_of_partition",
    "wronskian_of_indices",
    "proportionality_constant",
    "check_duality",
    "three_term_identity_check",
    "four_term_identity_check",
    "log_deriv2_potential",
    "evaluate",
    "poly_gcd",
    "pseudo_remainder",
    "exact_quotient",
]


class NotProportionalError(ArithmeticError):
    """Two polynomials expected to be rational multiples of each other are not."""


class BigPoly:
    """Polynomial with integer coefficients, ``coeffs[j]`` multiplying z**j.

    Immutable; trailing zero coefficients are stripped on construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("BigPoly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "BigPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: int) -> "BigPoly":
        return cls([c])

    @property
    def degree(self):
        """Degree; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BigPoly([other])
        return isinstance(other, BigPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"BigPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[j]
            if a == 0:
                continue
            mag = abs(a)
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            body = str(mag) if (mag != 1 or j == 0) else ""
            if body and mono:
                body += "*"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body + mono))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    def __neg__(self) -> "BigPoly":
        return BigPoly(-a for a in self.coeffs)

    def __add__(self, other) -> "BigPoly":
        if isinstance(other, int):
            other = BigPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return BigPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "BigPoly":
        if isinstance(other, int):
            other = BigPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> "BigPoly":
        return (-self) + other

    def __mul__(self, other) -> "BigPoly":
        if isinstance(other, int):
            return BigPoly(a * other for a in self.coeffs) if other else BigPoly()
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return BigPoly()
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    out[i + j] += x * y
        return BigPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BigPoly":
        out, base = BigPoly([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        """Exact Horner evaluation at an int, Fraction, or any ring element."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def content(self) -> int:
        """Gcd of the coefficients, with the sign of the leading coefficient."""
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return -g if self.lc < 0 else g

    def primitive(self) -> "BigPoly":
        c = self.content()
        return BigPoly(a // c for a in self.coeffs) if c else BigPoly()

    def reflect(self) -> "BigPoly":
        """p(-z)."""
        return BigPoly(a if j % 2 == 0 else -a for j, a in enumerate(self.coeffs))

    def parity(self):
        """``0`` if even, ``1`` if odd, ``None`` if neither (zero poly is even)."""
        odd = any(a for a in self.coeffs[0::2])
        even = any(a for a in self.coeffs[1::2])
        if odd and even:
            return None
        return 1 if even else 0

    def valuation(self) -> int:
        """Largest m with z**m dividing p."""
        if not self.coeffs:
            raise ZeroDivisionError("valuation of the zero polynomial")
        m = 0
        while self.coeffs[m] == 0:
            m += 1
        return m

    def shift_down(self, m: int) -> "BigPoly":
        """p / z**m, assuming the low coefficients vanish."""
        if any(self.coeffs[:m]):
            raise ArithmeticError(f"z^{m} does not divide {self}")
        return BigPoly(self.coeffs[m:])

    def bit_length(self) -> int:
        return max((abs(a).bit_length() for a in self.coeffs), default=0)

    def to_json(self) -> dict:
        return {"coeffs": [str(a) for a in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "BigPoly":
        return cls(int(s) for s in obj["coeffs"])


def derivative(p: BigPoly) -> BigPoly:
    return BigPoly(j * a for j, a in enumerate(p.coeffs) if j)


@lru_cache(maxsize=None)
def hermite(n: int) -> BigPoly:
    """Physicists' Hermite polynomial, leading coefficient 2**n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev, cur = BigPoly([1]), BigPoly([0, 2])
    if n == 0:
        return prev
    for j in range(1, n):
        prev, cur = cur, BigPoly([0, 2]) * cur - prev * (2 * j)
    return cur


def exact_quotient(a: BigPoly, b: BigPoly) -> BigPoly:
    """a / b when b divides a in Z[z]; raises ArithmeticError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a.coeffs)
    db, lb = len(b.coeffs) - 1, b.lc
    if len(rem) - 1 < db:
        if rem:
            raise ArithmeticError("inexact polynomial division")
        return BigPoly()
    q = [0] * (len(rem) - db)
    bc = b.coeffs
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        t, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i - db] = t
        off = i - db
        for j in range(db + 1):
            rem[off + j] -= t * bc[j]
    if any(rem[:db]):
        raise ArithmeticError("inexact polynomial division")
    return BigPoly(q)


def _prem_list(r: list, b: list) -> list:
    """Pseudo-remainder on raw coefficient lists (low to high, no trailing zeros)."""
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        return list(r)
    r = list(r)
    e = len(r) - db
    while r and len(r) - 1 >= db:
        c = r[-1]
        off = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[off + j] -= c * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e:
        f = lb**e
        r = [x * f for x in r]
    return r


def pseudo_remainder(a: BigPoly, b: BigPoly) -> BigPoly:
    """prem(a, b) = lc(b)**(deg a - deg b + 1) * a  mod  b."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
    if a.degree < b.degree:
        return a
    return BigPoly(_prem_list([mpz(x) for x in a.coeffs], [mpz(x) for x in b.coeffs]))


def poly_gcd(a: BigPoly, b: BigPoly) -> BigPoly:
    """Gcd over Z[z] by the subresultant remainder sequence.

    Returned primitive times the gcd of the contents, with positive leading
    coefficient.
    """
    if a.is_zero() and b.is_zero():
        return BigPoly()
    if a.is_zero() or b.is_zero():
        nz = b if a.is_zero() else a
        return nz.primitive() * abs(nz.content())
    c = math.gcd(abs(a.content()), abs(b.content()))
    A = [mpz(x) for x in a.primitive().coeffs]
    B = [mpz(x) for x in b.primitive().coeffs]
    if len(A) < len(B):
        A, B = B, A
    g, h = mpz(1), mpz(1)
    while True:
        delta = len(A) - len(B)
        R = _prem_list(A, B)
        if not R:
            break
        if len(R) == 1:
            return BigPoly([c])
        d = g * h**delta
        A, B = B, [divexact(x, d) for x in R]
        g = A[-1]
        if delta:
            h = divexact(g**delta, h ** (delta - 1))
    out = BigPoly(B).primitive()
    if out.lc < 0:
        out = -out
    return out * c


def proportionality_constant(lhs: BigPoly, rhs: BigPoly) -> Fraction:
    """The unique rational c with lhs == c * rhs, coefficientwise."""
    if rhs.is_zero() or lhs.is_zero():
        raise NotProportionalError("cannot compare with the zero polynomial")
    if len(lhs) != len(rhs):
        raise NotProportionalError(f"degrees differ: {lhs.degree} vs {rhs.degree}")
    c = Fraction(lhs.lc, rhs.lc)
    for x, y in zip(lhs.coeffs, rhs.coeffs):
        if x * c.denominator != y * c.numerator:
            raise NotProportionalError("polynomials are not proportional")
    return c


def _cofactor_det(m: list[list[BigPoly]]) -> BigPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = BigPoly()
    for c in range(n):
        if m[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1 :] for row in m[1:]]
        term = m[0][c] * _cofactor_det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def _bareiss_det(m: list[list[BigPoly]]) -> BigPoly:
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = BigPoly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return BigPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_quotient(num, prev)
        prev = piv
    return a[n - 1][n - 1] * sign


def wronskian(fs: Sequence[BigPoly]) -> BigPoly:
    """det of the matrix with entry (r, c) = r-th derivative of fs[c]."""
    if not fs:
        raise ValueError("need at least one function")
    n = len(fs)
    cols = []
    for f in fs:
        col = [f]
        for _ in range(n - 1):
            col.append(derivative(col[-1]))
        cols.append(col)
    m = [[cols[c][r] for c in range(n)] for r in range(n)]
    if n <= 3:
        return _cofactor_det(m)
    return _bareiss_det(m)


def wronskian_of_indices(ks: Sequence[int]) -> BigPoly:
    """W(H_{ks[0]}, H_{ks[1]}, ...) with the columns in the given order."""
    return wronskian([hermite(k) for k in ks])


def wronskian_of_partition(p: Partition) -> BigPoly:
    """W_lambda with columns ordered by decreasing Hermite index."""
    if p.length == 0:
        return BigPoly([1])
    ds = degree_sequence(p)
    if not ds.is_integral:
        raise PartitionError(f"{p} gives non-integer Hermite indices")
    return wronskian_of_indices(ds.int_ks())


def _rotate_i(p: BigPoly, weight: int) -> BigPoly:
    """(-i)**weight * p(i z) for p of parity ``weight``; the result is real."""
    out = []
    for j, a in enumerate(p.coeffs):
        if a == 0:
            out.append(0)
            continue
        if (j - weight) % 2:
            raise ArithmeticError("polynomial parity does not match its weight")
        s = (-1) ** weight * (-1) ** ((weight + j) // 2)
        out.append(s * a)
    return BigPoly(out)


def check_duality(p: Partition) -> Fraction:
    """c with W_{lambda*}(z) = c * (-i)**|lambda| * W_lambda(i z)."""
    w = wronskian_of_partition(p)
    wc = wronskian_of_partition(conjugate(p))
    rotated = _rotate_i(w, int(p.weight))
    return proportionality_constant(wc, rotated)


def three_term_identity_check(n: int, k: int, l: int) -> Fraction:
    """c with W(H_{n-k}, H_n, H_{n+l}) = c * (k H_{n-k} W(H_n, H_{n+l}) - l H_{n+l} W(H_{n-k}, H_n))."""
    if not (n >= k >= 1 and l >= 1):
        raise ValueError("need n >= k >= 1 and l >= 1")
    a, b, c = hermite(n - k), hermite(n), hermite(n + l)
    lhs = wronskian([a, b, c])
    rhs = a * wronskian([b, c]) * k - c * wronskian([a, b]) * l
    return proportionality_constant(lhs, rhs)


def four_term_identity_check(n: int, k: int, l: int, m: int) -> Fraction:
    """c with W(H_n, H_{n+k}, H_{n+k+l}, H_{n+k+l+m}) equal to c times
    l(k+l+m) W(H_n,H_{n+k}) W(H_{n+k+l},H_{n+k+l+m}) - km W(H_n,H_{n+k+l+m}) W(H_{n+k},H_{n+k+l})."""
    if min(n, k, l, m) < 1:
        raise ValueError("all arguments must be >= 1")
    h0, h1, h2, h3 = (hermite(n), hermite(n + k), hermite(n + k + l), hermite(n + k + l + m))
    lhs = wronskian([h0, h1, h2, h3])
    rhs = (
        wronskian([h0, h1]) * wronskian([h2, h3]) * (l * (k + l + m))
        - wronskian([h0, h3]) * wronskian([h1, h2]) * (k * m)
    )
    return proportionality_constant(lhs, rhs)


class RationalFunction:
    """numerator / denominator over Z[z], kept in lowest terms.

    Normal form: polynomial gcd removed, integer content shared by both
    removed, denominator leading coefficient positive.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: BigPoly, denominator: BigPoly):
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        if numerator.is_zero():
            num, den = BigPoly(), BigPoly([1])
        else:
            g = poly_gcd(numerator, denominator)
            num, den = exact_quotient(numerator, g), exact_quotient(denominator, g)
            c = math.gcd(abs(num.content()), abs(den.content()))
            if den.lc < 0:
                c = -c
            num = BigPoly(a // c for a in num.coeffs)
            den = BigPoly(a // c for a in den.coeffs)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"

    def __call__(self, x):
        num, den = self.numerator(x), self.denominator(x)
        if isinstance(num, (int, Fraction)):
            return Fraction(num) / den
        return num / den

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()}


def log_deriv2_potential(p: Partition) -> RationalFunction:
    """-2 (log W_lambda)'' = -2 (W'' W - W'^2) / W^2, i.e. u(z) - z^2 - c."""
    w = wronskian_of_partition(p)
    w1 = derivative(w)
    w2 = derivative(w1)
    return RationalFunction((w2 * w - w1 * w1) * -2, w * w)


def evaluate(p: BigPoly, z, precision_bits: int = 64):
    """Horner evaluation of ``p`` at complex ``z`` with enough guard bits.

    The working precision is the largest coefficient bit length plus
    ``precision_bits`` plus a degree-dependent guard, so the only loss comes
    from cancellation, which the caller bounds with :func:`horner_error_bound`.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    wp = p.bit_length() + precision_bits + 2 * max(len(p), 1).bit_length() + 8
    with mpmath.workprec(wp):
        zz = mpmath.mpc(z)
        acc = mpmath.mpc(0)
        for a in reversed(p.coeffs):
            acc = acc * zz + a
        return +acc


def horner_error_bound(p: BigPoly, z, precision_bits: int = 64):
    """Absolute rounding bound for :func:`evaluate`: 2 n u sum |a_j| |z|^j."""
    wp = p.bit_length() + precision_bits + 2 * max(len(p), 1).bit_length() + 8
    with mpmath.workprec(64):
        r = abs(mpmath.mpc(z))
        s = mpmath.mpf(0)
        for a in reversed(p.coeffs):
            s = s * r + abs(a)
        return 2 * len(p) * s * mpmath.ldexp(1, -wp) * 2
