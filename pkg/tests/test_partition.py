from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hermwron.partition import (
    Partition,
    PartitionError,
    conjugate,
    degree_sequence,
    diagram_points,
    distinct_partitions,
    doubled,
    origin_multiplicity,
    parse_partition,
    partition_from_degrees,
    partitions_of,
    partitions_up_to,
)

# p(n) for n = 0..12, OEIS A000041
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]

int_partitions = st.lists(st.integers(1, 9), min_size=0, max_size=6).map(
    lambda xs: Partition.from_parts(xs, sort=True)
)
half_partitions = st.lists(st.integers(1, 15), min_size=1, max_size=5).map(
    lambda xs: Partition(tuple(sorted(xs, reverse=True)))
)


@pytest.mark.parametrize(
    "text, parts",
    [
        ("5,3,2", (5, 3, 2)),
        ("10^2,6^2,4^2", (10, 10, 6, 6, 4, 4)),
        ("(2, 3, 1)", (3, 2, 1)),
        ("11/2,5/2,1", (Fraction(11, 2), Fraction(5, 2), 1)),
        ("", ()),
    ],
)
def test_parse(text, parts):
    assert parse_partition(text).parts == tuple(Fraction(p) for p in parts)


@pytest.mark.parametrize("text", ["0,1", "-1", "1/3", "a", "2^0", "1,,2", "3/0"])
def test_parse_rejects(text):
    with pytest.raises(PartitionError):
        parse_partition(text)


def test_text_roundtrip_examples():
    assert str(parse_partition("10,10,6,6")) == "(10^2,6^2)"
    assert parse_partition("11/2,5/2,1").to_text() == "11/2,5/2,1"


@given(half_partitions)
def test_text_roundtrip(p):
    assert parse_partition(p.to_text()) == p
    assert parse_partition(p.to_text(powers=False)) == p


def test_weight_and_integrality():
    p = parse_partition("11/2,5/2,1")
    assert p.weight == 9 and not p.is_integral
    with pytest.raises(PartitionError):
        p.int_parts()


def test_doubled():
    assert doubled(parse_partition("5,3,2")) == parse_partition("10^2,6^2,4^2")
    assert doubled(parse_partition("11/2,5/2,1")) == parse_partition("11^2,5^2,2^2")


@given(half_partitions)
def test_doubled_weight(p):
    d = doubled(p)
    assert d.is_integral and d.weight == 4 * p.weight and d.length == 2 * p.length


def test_conjugate_examples():
    assert conjugate(parse_partition("5,3,2")) == parse_partition("3,3,2,1,1")
    assert conjugate(parse_partition("3,2,1")) == parse_partition("3,2,1")
    assert conjugate(Partition()) == Partition()


@given(int_partitions)
def test_conjugate_involution(p):
    c = conjugate(p)
    assert conjugate(c) == p
    assert c.weight == p.weight


def test_degree_sequence_examples():
    assert degree_sequence(parse_partition("5,3,2")).int_ks() == (7, 4, 2)
    assert degree_sequence(parse_partition("2,1")).int_ks() == (3, 1)
    assert degree_sequence(parse_partition("1/2")).ks == (Fraction(1, 2),)


@given(int_partitions)
def test_degree_roundtrip(p):
    ks = degree_sequence(p).int_ks()
    assert partition_from_degrees(ks) == p
    assert partition_from_degrees(list(reversed(ks))) == p


def test_partition_from_degrees_drops_trailing_zero_parts():
    # H_0 and H_1 at the bottom only change the Wronskian by a constant
    assert partition_from_degrees([5, 1, 0]) == parse_partition("3")
    assert partition_from_degrees([6, 4, 1, 0]) == parse_partition("3,2")
    assert partition_from_degrees([100, 105]) == parse_partition("104,100")
    with pytest.raises(PartitionError):
        partition_from_degrees([3, 3])


def test_origin_multiplicity_examples():
    assert origin_multiplicity(parse_partition("3,2,1")) == 6
    assert origin_multiplicity(parse_partition("2,1")) == 3
    assert origin_multiplicity(parse_partition("1,1")) == 0
    assert origin_multiplicity(parse_partition("1")) == 1
    assert origin_multiplicity(Partition()) == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_staircase_multiplicity(n):
    p = Partition.from_parts(range(n, 0, -1))
    assert origin_multiplicity(p) == n * (n + 1) // 2 == p.weight


@given(int_partitions)
def test_origin_multiplicity_bounded(p):
    m = origin_multiplicity(p)
    assert 0 <= m <= p.weight
    assert m == origin_multiplicity(conjugate(p))


def test_diagram_counts_and_symmetry():
    p = parse_partition("5,3,2")
    assert len(diagram_points(p, "standard")) == 10
    assert all(y < 0 for _, y in diagram_points(p, "standard").points)
    assert all(y > 0 for _, y in diagram_points(p, "french").points)
    fq = diagram_points(p, "four-quadrant")
    assert len(fq) == 40
    pts = set(fq.points)
    assert all((-x, y) in pts and (x, -y) in pts for x, y in pts)


def test_diagram_half_integer_axis_bullets():
    fq = diagram_points(parse_partition("11/2,5/2,1"), "four-quadrant")
    assert len(fq) == 36
    on_axis = [pt for pt in fq.points if pt[0] == 0]
    # rows of odd width 11 and 5 put a bullet on the axis, above and below
    assert len(on_axis) == 4


def test_diagram_csv_and_bad_convention():
    csv = diagram_points(parse_partition("1"), "french").to_csv()
    assert csv == "x,y\n0.5,0.5\n"
    with pytest.raises(ValueError):
        diagram_points(parse_partition("1"), "polar")


def test_enumerators():
    assert [sum(1 for _ in partitions_of(n)) for n in range(13)] == PARTITION_COUNTS
    assert sum(1 for _ in partitions_up_to(12)) == sum(PARTITION_COUNTS)
    ds = list(distinct_partitions(5, 2))
    assert len(ds) == 15
    assert all(len(set(p.twice)) == p.length for p in ds)
    assert list(distinct_partitions(3, 0)) == []
