"""Partitions with integer or half-integer parts, their diagrams, and the
dictionary between partitions and Hermite index sequences.

Parts are stored as twice their value so that half-integers stay exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition",
    "DegreeSequence",
    "DiagramPoints",
    "PartitionError",
    "parse_partition",
    "doubled",
    "conjugate",
    "degree_sequence",
    "partition_from_degrees",
    "origin_multiplicity",
    "diagram_points",
    "partitions_of",
    "partitions_up_to",
    "distinct_partitions",
]

CONVENTIONS = ("standard", "french", "four-quadrant")


class PartitionError(ValueError):
    """Malformed partition text or an operation applied outside its domain."""


def _as_twice(value) -> int:
    q = Fraction(value)
    t = 2 * q
    if t.denominator != 1:
        raise PartitionError(f"part {value} is not an integer or half-integer")
    return int(t)


def _fmt_twice(t: int) -> str:
    return str(t // 2) if t % 2 == 0 else f"{t}/2"


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing sequence of positive (half-)integers.

    ``twice`` holds ``2 * part`` for every part.  Use :meth:`from_parts` to
    build from ordinary numbers.
    """

    twice: tuple[int, ...] = ()

    def __post_init__(self):
        tw = tuple(int(t) for t in self.twice)
        object.__setattr__(self, "twice", tw)
        for t in tw:
            if t <= 0:
                raise PartitionError("parts must be positive")
        for a, b in zip(tw, tw[1:]):
            if a < b:
                raise PartitionError("parts must be weakly decreasing")

    @classmethod
    def from_parts(cls, parts: Iterable, sort: bool = False) -> "Partition":
        tw = [_as_twice(p) for p in parts]
        if sort:
            tw.sort(reverse=True)
        return cls(tuple(tw))

    @property
    def parts(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(t, 2) for t in self.twice)

    @property
    def length(self) -> int:
        return len(self.twice)

    def __len__(self) -> int:
        return len(self.twice)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(self.twice), 2)

    @property
    def is_integral(self) -> bool:
        return all(t % 2 == 0 for t in self.twice)

    def int_parts(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise PartitionError(f"{self} has half-integer parts")
        return tuple(t // 2 for t in self.twice)

    def to_text(self, powers: bool = True) -> str:
        """Comma-separated parts, collapsing repeats to ``a^r`` when asked."""
        out = []
        for t, grp in groupby(self.twice):
            r = len(list(grp))
            s = _fmt_twice(t)
            if powers and r > 1:
                out.append(f"{s}^{r}")
            else:
                out.extend([s] * r)
        return ",".join(out)

    def __str__(self) -> str:
        return "(" + self.to_text() + ")"


_PART_RE = re.compile(r"^(\d+)(?:/(\d+))?(?:\^(\d+))?$")


def parse_partition(text: str) -> Partition:
    """Parse ``"5,3,2"``, ``"10^2,6^2"`` or ``"11/2,5/2,1"``.

    Order of the parts in the text is irrelevant; the result is sorted
    descending.  Zero, negative and non-half-integer parts are rejected.
    """
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    if not s:
        return Partition()
    twice = []
    for raw in s.split(","):
        tok = raw.strip().replace(" ", "")
        if tok.startswith("-"):
            raise PartitionError(f"negative part {tok!r}")
        m = _PART_RE.match(tok)
        if m is None:
            raise PartitionError(f"cannot parse part {tok!r}")
        num, den, rep = m.groups()
        den_i = int(den) if den is not None else 1
        if den_i == 0:
            raise PartitionError(f"zero denominator in {tok!r}")
        value = Fraction(int(num), den_i)
        if value == 0:
            raise PartitionError(f"zero part {tok!r}")
        if (2 * value).denominator != 1:
            raise PartitionError(f"part {tok!r} is not an integer or half-integer")
        r = int(rep) if rep is not None else 1
        if r == 0:
            raise PartitionError(f"zero repetition count in {tok!r}")
        twice.extend([int(2 * value)] * r)
    twice.sort(reverse=True)
    return Partition(tuple(twice))


def doubled(p: Partition) -> Partition:
    """Double every part and take it twice; always integer-valued."""
    out = []
    for t in p.twice:
        out += [2 * t, 2 * t]
    return Partition(tuple(out))


def conjugate(p: Partition) -> Partition:
    parts = p.int_parts()
    if not parts:
        return Partition()
    conj = [sum(1 for a in parts if a >= j) for j in range(1, parts[0] + 1)]
    return Partition(tuple(2 * c for c in conj))


@dataclass(frozen=True)
class DegreeSequence:
    """Strictly decreasing Hermite indices k_i = lambda_i + n - i (twice-valued)."""

    twice: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.twice, self.twice[1:]):
            if a <= b:
                raise PartitionError("degree sequence must be strictly decreasing")
        if self.twice and self.twice[-1] < 0:
            raise PartitionError("degree sequence must be nonnegative")

    @property
    def ks(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(t, 2) for t in self.twice)

    @property
    def is_integral(self) -> bool:
        return all(t % 2 == 0 for t in self.twice)

    def int_ks(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise PartitionError("degree sequence is not integer-valued")
        return tuple(t // 2 for t in self.twice)

    def __len__(self) -> int:
        return len(self.twice)


def degree_sequence(p: Partition) -> DegreeSequence:
    n = p.length
    return DegreeSequence(tuple(t + 2 * (n - 1 - i) for i, t in enumerate(p.twice)))


def partition_from_degrees(ks: Sequence) -> Partition:
    """Inverse of :func:`degree_sequence`; ``ks`` in any order, all distinct.

    Indices that map to trailing zero parts (a trailing H_0, H_1, ... run) are
    dropped; they change the Wronskian only by a constant factor.
    """
    tw = sorted((_as_twice(k) for k in ks), reverse=True)
    if len(set(tw)) != len(tw):
        raise PartitionError("Hermite indices must be distinct")
    n = len(tw)
    parts = [t - 2 * (n - 1 - i) for i, t in enumerate(tw)]
    if any(x < 0 for x in parts):
        raise PartitionError("indices do not come from a partition")
    while parts and parts[-1] == 0:
        parts.pop()
    if any(x == 0 for x in parts):
        raise PartitionError("indices do not come from a partition")
    return Partition(tuple(parts))


def origin_multiplicity(p: Partition) -> int:
    """Order of vanishing of W_lambda at z = 0, from the parities of the k_i."""
    ks = degree_sequence(p).int_ks() if p.length else ()
    odd = sum(k % 2 for k in ks)
    d = odd - (len(ks) - odd)
    return d * (d + 1) // 2


@dataclass(frozen=True)
class DiagramPoints:
    points: tuple[tuple[Fraction, Fraction], ...]
    convention: str

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self) -> str:
        rows = ["x,y"] + [f"{float(x)!r},{float(y)!r}" for x, y in self.points]
        return "\n".join(rows) + "\n"


def diagram_points(p: Partition, convention: str = "four-quadrant") -> DiagramPoints:
    """Bullet coordinates at box centres, in box units.

    ``standard`` draws rows downward, ``french`` upward.  ``four-quadrant``
    centres each row of width 2*lambda_i on the vertical axis and mirrors the
    rows above and below the horizontal axis, so a half-integer part puts a
    bullet on the vertical axis.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    half = Fraction(1, 2)
    pts: list[tuple[Fraction, Fraction]] = []
    if convention in ("standard", "french"):
        sign = -1 if convention == "standard" else 1
        for i, a in enumerate(p.int_parts(), start=1):
            for j in range(1, a + 1):
                pts.append((j - half, sign * (i - half)))
    else:
        for i, t in enumerate(p.twice, start=1):
            xs = [Fraction(-t, 2) + half + s for s in range(t)]
            for ysign in (1, -1):
                for x in xs:
                    pts.append((x, ysign * (i - half)))
    return DiagramPoints(tuple(sorted(pts)), convention)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Integer partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for a in range(min(rem, cap), 0, -1):
            for rest in rec(rem - a, a):
                yield (a,) + rest

    for parts in rec(n, max_part):
        yield Partition.from_parts(parts)


def partitions_up_to(max_weight: int) -> Iterator[Partition]:
    """All integer partitions with weight 0..max_weight, by weight."""
    for n in range(max_weight + 1):
        yield from partitions_of(n)


def distinct_partitions(max_part: int, max_len: int) -> Iterator[Partition]:
    """Nonempty partitions with distinct parts, largest part <= max_part."""

    def rec(cap, left):
        if left == 0:
            return
        for a in range(cap, 0, -1):
            yield (a,)
            for rest in rec(a - 1, left - 1):
                yield (a,) + rest

    for parts in sorted(rec(max_part, max_len), key=lambda t: (len(t), t)):
        yield Partition.from_parts(parts)
