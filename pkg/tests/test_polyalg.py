import itertools
import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hermwron.partition import Partition, conjugate, parse_partition
from hermwron.polyalg import (
    BigPoly,
    NotProportionalError,
    RationalFunction,
    check_duality,
    derivative,
    evaluate,
    exact_quotient,
    four_term_identity_check,
    hermite,
    horner_error_bound,
    log_deriv2_potential,
    poly_gcd,
    proportionality_constant,
    pseudo_remainder,
    three_term_identity_check,
    wronskian,
    wronskian_of_indices,
    wronskian_of_partition,
)

X = sympy.symbols("x")

small_polys = st.lists(st.integers(-50, 50), min_size=1, max_size=7).map(BigPoly)
nonzero_polys = small_polys.filter(lambda p: not p.is_zero())


def hermite_explicit(n: int) -> BigPoly:
    """n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!)."""
    c = [0] * (n + 1)
    for m in range(n // 2 + 1):
        c[n - 2 * m] = (-1) ** m * 2 ** (n - 2 * m) * math.factorial(n) // (math.factorial(m) * math.factorial(n - 2 * m))
    return BigPoly(c)


def to_sympy(p: BigPoly):
    return sum(c * X**j for j, c in enumerate(p.coeffs))


def from_sympy(expr) -> BigPoly:
    return BigPoly([int(c) for c in reversed(sympy.Poly(sympy.expand(expr), X).all_coeffs())])


def leibniz_det(m):
    """Permutation expansion; shares no code with the library determinants."""
    n = len(m)
    total = BigPoly()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = BigPoly([1])
        for r in range(n):
            term = term * m[r][perm[r]]
        total = total + term if inv % 2 == 0 else total - term
    return total


def hermite_derivative(n: int, r: int) -> BigPoly:
    # H_n^(r) = 2^r n!/(n-r)! H_{n-r}
    if r > n:
        return BigPoly()
    return hermite_explicit(n - r) * (2**r * math.factorial(n) // math.factorial(n - r))


# ---------------------------------------------------------------- BigPoly


def test_bigpoly_basics():
    p = BigPoly([1, 0, 2, 0, 0])
    assert p.coeffs == (1, 0, 2) and p.degree == 2 and p.lc == 2
    assert BigPoly().degree == -math.inf and BigPoly().is_zero()
    assert p(3) == 19
    assert BigPoly([0, 0, 6, 0, 4]).valuation() == 2
    assert BigPoly([0, 0, 6, 0, 4]).shift_down(2) == BigPoly([6, 0, 4])
    assert BigPoly([6, 0, -4]).content() == -2
    assert BigPoly([3, 0, 1]).parity() == 0 and BigPoly([0, 1, 0, 5]).parity() == 1
    assert BigPoly([1, 1]).parity() is None


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    assert a * b == b * a
    assert (a * b)(3) == a(3) * b(3)


@given(small_polys)
def test_json_roundtrip(p):
    assert BigPoly.from_json(p.to_json()) == p


@given(nonzero_polys, nonzero_polys)
def test_exact_quotient(a, b):
    assert exact_quotient(a * b, b) == a


def test_exact_quotient_rejects_inexact():
    with pytest.raises(ArithmeticError):
        exact_quotient(BigPoly([1, 0, 1]), BigPoly([1, 1]))


@given(nonzero_polys, nonzero_polys.filter(lambda p: p.degree >= 1))
def test_pseudo_remainder_identity(a, b):
    r = pseudo_remainder(a, b)
    assert r.is_zero() or r.degree < b.degree
    if a.degree >= b.degree:
        e = int(a.degree - b.degree + 1)
        q = exact_quotient(a * (b.lc**e) - r, b)
        assert q * b + r == a * (b.lc**e)


@settings(max_examples=60)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_against_sympy(a, b, c):
    g = poly_gcd(a * c, b * c)
    ref = from_sympy(sympy.gcd(to_sympy(a * c), to_sympy(b * c)))
    assert proportionality_constant(g, ref) in (1, -1) or g.degree == ref.degree == 0
    assert g.lc > 0


def test_proportionality():
    assert proportionality_constant(BigPoly([2, 4]), BigPoly([1, 2])) == 2
    assert proportionality_constant(BigPoly([-1, 0, -3]), BigPoly([2, 0, 6])) == Fraction(-1, 2)
    with pytest.raises(NotProportionalError):
        proportionality_constant(BigPoly([1, 2]), BigPoly([1, 3]))
    with pytest.raises(NotProportionalError):
        proportionality_constant(BigPoly([1, 2]), BigPoly([1, 2, 1]))


# -------------------------------------------------------------- Hermite


@pytest.mark.parametrize("n", [0, 1, 2, 5, 17, 40])
def test_hermite_matches_explicit_formula(n):
    assert hermite(n) == hermite_explicit(n)
    assert hermite(n) == from_sympy(sympy.hermite(n, X))


def test_hermite_small():
    assert hermite(0) == BigPoly([1])
    assert hermite(2) == BigPoly([-2, 0, 4])
    assert hermite(3) == BigPoly([0, -12, 0, 8])


@given(st.integers(1, 60))
def test_hermite_derivative_rule(n):
    assert derivative(hermite(n)) == hermite(n - 1) * (2 * n)
    assert hermite(n).lc == 2**n and hermite(n).parity() == n % 2


# ------------------------------------------------------------ Wronskians


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("1,1", [-4, 0, -8]),
        ("2,1", [0, 0, 0, -32]),
        ("2,2", [-24, 0, 0, 0, -32]),
        ("3,3", [-144, 0, -288, 0, 192, 0, -128]),
        ("3,2,1", [0, 0, 0, 0, 0, 0, -8192]),
    ],
)
def test_wronskian_frozen_values(text, coeffs):
    assert wronskian_of_partition(parse_partition(text)) == BigPoly(coeffs)


@pytest.mark.parametrize("ks", [[3, 1], [4, 2, 0], [5, 3, 2], [6, 4, 2, 1], [7, 5, 3, 1, 0], [9, 6, 4, 3, 1]])
def test_wronskian_against_sympy(ks):
    ref = sympy.wronskian([sympy.hermite(k, X) for k in ks], X)
    assert wronskian_of_indices(ks) == from_sympy(ref)


@pytest.mark.parametrize("ks", [[4, 3, 1, 0], [6, 5, 2, 1], [8, 6, 5, 2, 1], [7, 6, 5, 4, 3, 2]])
def test_bareiss_against_leibniz(ks):
    n = len(ks)
    m = [[hermite_derivative(k, r) for k in ks] for r in range(n)]
    assert wronskian_of_indices(ks) == leibniz_det(m)


def test_wronskian_column_order_sign():
    assert wronskian_of_indices([1, 2]) == -wronskian_of_indices([2, 1])


def test_wronskian_empty_and_single():
    assert wronskian_of_partition(Partition()) == BigPoly([1])
    assert wronskian_of_partition(parse_partition("4")) == hermite(4)
    with pytest.raises(ValueError):
        wronskian([])


@pytest.mark.parametrize("n", range(1, 7))
def test_staircase_is_monomial(n):
    w = wronskian_of_partition(Partition.from_parts(range(n, 0, -1)))
    assert w.degree == w.valuation() == n * (n + 1) // 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4))
def test_degree_parity_duality(parts):
    p = Partition.from_parts(parts, sort=True)
    w = wronskian_of_partition(p)
    assert w.degree == p.weight
    assert w.parity() == int(p.weight) % 2
    c = check_duality(p)
    assert c * check_duality(conjugate(p)) == 1


def test_duality_examples():
    assert check_duality(parse_partition("2")) == -2
    assert check_duality(parse_partition("1,1")) == Fraction(-1, 2)
    assert check_duality(parse_partition("2,1")) == 1


# ------------------------------------------------------------ identities


@pytest.mark.parametrize("n, k, l", [(1, 1, 1), (5, 2, 3), (10, 3, 3), (12, 1, 4)])
def test_three_term_identity(n, k, l):
    assert three_term_identity_check(n, k, l) == 2


def test_three_term_identity_domain():
    with pytest.raises(ValueError):
        three_term_identity_check(1, 2, 1)
    with pytest.raises(ValueError):
        three_term_identity_check(3, 1, 0)


@pytest.mark.parametrize("n, k, l, m", [(1, 1, 1, 1), (4, 2, 1, 3), (6, 2, 2, 2), (3, 1, 4, 2)])
def test_four_term_identity(n, k, l, m):
    assert four_term_identity_check(n, k, l, m) == 4


# ------------------------------------------------------------- potential


def test_potential_examples():
    assert log_deriv2_potential(parse_partition("1")) == RationalFunction(BigPoly([2]), BigPoly([0, 0, 1]))
    assert log_deriv2_potential(parse_partition("1,1")) == RationalFunction(
        BigPoly([-8, 0, 16]), BigPoly([1, 0, 4, 0, 4])
    )


@pytest.mark.parametrize("text", ["2,1", "3,1", "2,2,1"])
def test_potential_against_sympy(text):
    w = to_sympy(wronskian_of_partition(parse_partition(text)))
    ref = sympy.cancel(-2 * sympy.diff(sympy.log(w), X, 2))
    got = log_deriv2_potential(parse_partition(text))
    assert sympy.simplify(to_sympy(got.numerator) / to_sympy(got.denominator) - ref) == 0
    assert got.denominator.lc > 0


def test_potential_double_poles():
    # -2 (log W)'' has a double pole with residue-free coefficient 2 at each simple zero
    r = log_deriv2_potential(parse_partition("1,1"))
    z0 = mpmath.mpc(0, 1) / mpmath.sqrt(2)
    eps = mpmath.mpf("1e-8")
    with mpmath.workdps(40):
        val = mpmath.mpc(r(z0 + eps)) * eps**2
    assert abs(val - 2) < 1e-6


# ------------------------------------------------------------- evaluation


def test_evaluate_against_exact_rational():
    p = hermite(60)
    x = Fraction(37, 10)
    exact = sum(Fraction(c) * x**j for j, c in enumerate(p.coeffs))
    with mpmath.workdps(50):
        got = evaluate(p, mpmath.mpf(37) / 10, 128)
        err = abs(got.real - mpmath.mpf(exact.numerator) / exact.denominator)
        assert err <= horner_error_bound(p, mpmath.mpf(37) / 10, 128) + abs(got) * mpmath.mpf(2) ** -120


def test_evaluate_precision_floor():
    with pytest.raises(ValueError):
        evaluate(hermite(3), 1, 32)


def test_evaluate_at_root():
    w = wronskian_of_partition(parse_partition("1,1"))
    with mpmath.workprec(200):
        z = mpmath.mpc(0, 1) / mpmath.sqrt(2)
        assert abs(evaluate(w, z, 128)) <= mpmath.mpf(2) ** -128
