"""Profiles, shapes, partitions, and cylindric partitions.

Conventions used throughout the package:

* A *profile* is a composition ``c = (c_1, ..., c_r)`` of non-negative
  integers with positive sum.  Its length ``r`` is the rank, its sum ``l``
  the level.
* A *cylindric partition* with profile ``c`` is a tuple of ``r`` ordinary
  partitions ``rows = (row_1, ..., row_r)`` such that
  ``row_i[j] >= row_{i+1}[j + c_{i+1}]`` for every ``i < r`` and ``j``, and
  cyclically ``row_r[j] >= row_1[j + c_1]``, reading missing entries as 0.
* Row ``i`` is drawn with its left end shifted by the offset
  ``o_i = c_{i+1} + ... + c_r`` (so ``o_r = 0``); box ``j`` of row ``i``
  occupies absolute column ``o_i + j``.  The right ends
  ``e_i = o_i + len(row_i)`` are weakly decreasing down the rows, and the
  *shape* ``(e_1 - e_r, ..., e_{r-1} - e_r)`` is a partition with at most
  ``r - 1`` parts, each at most the level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator


class CylpartError(Exception):
    """Base class for all errors raised by this package."""


class RowCountMismatch(CylpartError):
    pass


class ViolatedInequality(CylpartError):
    """A cylindric inequality fails; carries the 1-based (row, column)."""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"row {i}, column {j}: cylindric inequality violated")


class RankMismatch(CylpartError):
    pass


class LevelTooSmall(CylpartError):
    pass


@dataclass(frozen=True)
class Partition:
    """An integer partition: weakly decreasing positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def from_multiset(cls, values: Iterable[int]) -> "Partition":
        return cls(tuple(sorted(values, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def part(self, j: int) -> int:
        """1-based part access, 0 beyond the end."""
        return self.parts[j - 1] if 1 <= j <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for p in self.parts if p >= k)
                               for k in range(1, self.parts[0] + 1)))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


EMPTY_PARTITION = Partition()


@dataclass(frozen=True)
class Profile:
    """A composition (c_1, ..., c_r) with all c_i >= 0 and positive sum."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 1:
            raise ValueError("profile needs at least one part")
        if any(p < 0 for p in parts):
            raise ValueError(f"profile parts must be non-negative: {parts}")
        if sum(parts) < 1:
            raise ValueError("profile level must be positive")

    @classmethod
    def of(cls, *parts: int) -> "Profile":
        return cls(tuple(parts))

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def level(self) -> int:
        return sum(self.parts)

    def offsets(self) -> tuple[int, ...]:
        """Left-end offset of each row: o_i = c_{i+1} + ... + c_r, o_r = 0."""
        r = self.rank
        out = [0] * r
        for i in range(r - 2, -1, -1):
            out[i] = out[i + 1] + self.parts[i + 1]
        return tuple(out)

    def __str__(self) -> str:
        return "c=(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Shape:
    """Right-end shape of a slice: weakly decreasing, length rank-1.

    Shapes are always zero-padded to exactly ``rank - 1`` entries so the
    rank stays recoverable from the value itself.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"shape parts must be non-negative: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"shape parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, *parts: int) -> "Shape":
        return cls(tuple(parts))

    @property
    def rank(self) -> int:
        return len(self.parts) + 1

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def all_shapes(rank: int, level: int) -> list[Shape]:
    """Every shape of the given rank with parts at most ``level``.

    There are binomial(level + rank - 1, rank - 1) of them, listed in
    ascending lexicographic order.
    """
    if rank < 1 or level < 1:
        raise ValueError("rank and level must be positive")
    out = []
    for combo in itertools.combinations_with_replacement(range(level, -1, -1), rank - 1):
        out.append(Shape(combo))
    return sorted(out, key=lambda s: s.parts)


def shape_of_zero(profile: Profile) -> Shape:
    """Shape of the empty cylindric partition: (c_r+...+c_2, ..., c_r)."""
    c = profile.parts
    r = profile.rank
    return Shape(tuple(sum(c[j:r]) for j in range(1, r)))


def shape_to_profile(shape: Shape, level: int) -> Profile:
    """The profile whose empty partition has the given shape.

    Inverse of :func:`shape_of_zero` at a fixed level.
    """
    s = shape.parts
    if s and s[0] > level:
        raise LevelTooSmall(f"shape {shape} needs level >= {s[0]}, got {level}")
    r = shape.rank
    c = [0] * r
    c[0] = level - (s[0] if s else 0)
    for j in range(1, r - 1):
        c[j] = s[j - 1] - s[j]
    if r >= 2:
        c[r - 1] = s[r - 2]
    return Profile(tuple(c))


def delta(c: Profile, d: Profile) -> int:
    """Minimal weight of a slice whose shape is the zero-shape of ``d``,
    packed tightly against the zero-shape of ``c``.

    For compositions c, d of the same rank r this is

        sum_{k=2}^{r} (k-1) (d_k - c_k)
        + r * max(0, max_{j=2}^{r} (c_r + ... + c_j) - (d_r + ... + d_j)).

    Not symmetric; delta(c, c) = 0.  The two profiles may have different
    levels (only their zero-shapes matter).
    """
    if c.rank != d.rank:
        raise RankMismatch(f"ranks differ: {c.rank} vs {d.rank}")
    r = c.rank
    lin = sum((k - 1) * (d.parts[k - 1] - c.parts[k - 1]) for k in range(2, r + 1))
    worst = 0
    tail_c = tail_d = 0
    for k in range(r, 1, -1):
        tail_c += c.parts[k - 1]
        tail_d += d.parts[k - 1]
        worst = max(worst, tail_c - tail_d)
    return lin + r * worst


def delta_shapes(sigma: Shape, tau: Shape, level: int) -> int:
    """Shape overload of :func:`delta`: converts both shapes to profiles
    at the given level, never duplicating the formula."""
    if sigma.rank != tau.rank:
        raise RankMismatch(f"ranks differ: {sigma.rank} vs {tau.rank}")
    return delta(shape_to_profile(sigma, level), shape_to_profile(tau, level))


@dataclass(frozen=True)
class CylindricPartition:
    """A validated cylindric partition: profile plus one row per rank."""

    profile: Profile
    rows: tuple[Partition, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def weight(self) -> int:
        return sum(row.weight for row in self.rows)

    @property
    def max_part(self) -> int:
        return max((row.part(1) for row in self.rows), default=0)

    @property
    def is_empty(self) -> bool:
        return all(len(row) == 0 for row in self.rows)

    def __add__(self, other: "CylindricPartition") -> "CylindricPartition":
        if self.profile != other.profile:
            raise RankMismatch("cannot add cylindric partitions with different profiles")
        rows = []
        for a, b in zip(self.rows, other.rows):
            n = max(len(a), len(b))
            rows.append(Partition(tuple(a.part(j) + b.part(j) for j in range(1, n + 1))))
        return CylindricPartition(self.profile, tuple(rows))

    def to_text(self, with_profile: bool = True) -> str:
        body = "|".join(str(row) for row in self.rows)
        return f"{self.profile} {body}" if with_profile else body

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile.parts),
            "rows": [list(row.parts) for row in self.rows],
            "weight": str(self.weight),
            "max_part": self.max_part,
        }

    def __str__(self) -> str:
        return self.to_text()


def validate(rows: Iterable[Partition], profile: Profile) -> CylindricPartition:
    """Check the cyclic inequalities and return the validated value.

    Raises :class:`RowCountMismatch` or :class:`ViolatedInequality` naming
    the first failing inequality as 1-based (row, column).
    """
    rows = tuple(rows)
    r = profile.rank
    if len(rows) != r:
        raise RowCountMismatch(f"profile has rank {r} but {len(rows)} rows given")
    for i in range(r):
        upper = rows[i]
        lower = rows[(i + 1) % r]
        shift = profile.parts[(i + 1) % r]
        for j in range(1, len(lower) - shift + 1):
            if upper.part(j) < lower.part(j + shift):
                raise ViolatedInequality(i + 1, j)
    return CylindricPartition(profile, rows)


def empty_partition(profile: Profile) -> CylindricPartition:
    return CylindricPartition(profile, tuple(Partition() for _ in range(profile.rank)))


def parse_profile(text: str) -> Profile:
    """Parse ``c=(1,2,0)`` or plain ``1,2,0``."""
    body = text.strip()
    if body.startswith("c="):
        body = body[2:].strip()
    body = body.strip("()")
    return Profile(tuple(int(p) for p in body.split(",") if p.strip() != ""))


def parse_cylindric(text: str, profile: Profile | None = None) -> CylindricPartition:
    """Parse the canonical text form, e.g. ``c=(1,2,0) 10,5,4,1|12,8,5,3|7,6,4,2``.

    The ``c=(...)`` prefix may be omitted when a profile is supplied.
    """
    text = text.strip()
    if text.startswith("c="):
        head, _, body = text.partition(" ")
        profile = parse_profile(head)
    else:
        body = text
    if profile is None:
        raise ValueError("no profile given and none present in the text form")
    row_texts = body.split("|") if body else []
    if body == "":
        row_texts = [""] * profile.rank
    rows = tuple(
        Partition(tuple(int(p) for p in rt.split(",") if p.strip() != ""))
        for rt in row_texts
    )
    return validate(rows, profile)
