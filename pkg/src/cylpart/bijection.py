"""The pivot bijection between cylindric partitions and pairs (mu, beta).

Stacking the distinct slices of a cylindric partition leaves skew *spaces*
between consecutive ones.  Tiling each space column by column (leftmost
column first, top to bottom within a column) visits one intermediate slice
per weight.  A chain slice is a *pivot* when the first box tiled after it
sits strictly left of the last box tiled before it; pivot shapes always
have first part >= 2.

One copy of each pivot, recorded as weight plus shape label, forms the
labeled distinct partition ``beta``; the weights of all remaining slices
form the plain partition ``mu``.  The map is a bijection: ``beta`` pins the
unique infinite path through the slice poset, and ``mu`` says how often
each node on it is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (CylindricPartition, CylpartError, Partition, Profile,
                   Shape)
from .slices import (Slice, SliceChain, decompose as slice_decompose,
                     recompose, slice_shape, slice_with, zero_slice)


class InadmissibleBeta(CylpartError):
    pass


@dataclass(frozen=True)
class LabeledDistinctPartition:
    """Strictly decreasing weights, each labeled by a shape."""

    entries: tuple[tuple[int, Shape], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        ws = [w for w, _ in self.entries]
        if any(w < 1 for w in ws):
            raise ValueError("weights must be positive")
        if any(a <= b for a, b in zip(ws, ws[1:])):
            raise ValueError("weights must be strictly decreasing")

    @property
    def weight(self) -> int:
        return sum(w for w, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def run_lengths(self) -> list[int]:
        """Lengths of maximal blocks of consecutive weights."""
        runs = []
        ws = [w for w, _ in self.entries]
        i = 0
        while i < len(ws):
            j = i
            while j + 1 < len(ws) and ws[j + 1] == ws[j] - 1:
                j += 1
            runs.append(j - i + 1)
            i = j + 1
        return runs

    def to_text(self) -> str:
        return ",".join(f"{w}^{s}" for w, s in self.entries)

    def __str__(self) -> str:
        return self.to_text() if self.entries else "(empty)"

    @classmethod
    def parse(cls, text: str) -> "LabeledDistinctPartition":
        """Parse entries like ``15^(2,1),11^(3,2),10^(3,1),1^(2,2)``."""
        text = text.strip()
        if not text or text == "(empty)":
            return cls(())
        entries = []
        for chunk in text.replace("),", ");").split(";"):
            w_text, _, s_text = chunk.partition("^")
            shape = Shape(tuple(int(v) for v in s_text.strip("()").split(",")
                                if v.strip() != ""))
            entries.append((int(w_text), shape))
        return cls(tuple(entries))


def _space_columns(outer: Slice, inner: Slice) -> tuple[int, int] | None:
    """(leftmost, rightmost) absolute columns of the skew space inner->outer,
    or None when the space is empty."""
    eo = outer.right_ends()
    ei = inner.right_ends()
    lo = min((ei[i] + 1 for i in range(len(eo)) if eo[i] > ei[i]), default=None)
    if lo is None:
        return None
    hi = max(eo[i] for i in range(len(eo)) if eo[i] > ei[i])
    return lo, hi


def chain_pivots(profile: Profile, chain: Sequence[Slice]) -> list[bool]:
    """Pivot flags for a strictly decreasing chain, largest slice first.

    The space after the largest slice is the infinite strip to its right,
    whose leftmost column is one past its smallest right end.
    """
    slices = list(chain)
    flags = []
    for j, s in enumerate(slices):
        below = slices[j + 1] if j + 1 < len(slices) else zero_slice(profile)
        before = _space_columns(s, below)
        if before is None:
            raise InadmissibleBeta(f"chain stalls at {s.lengths}")
        if j == 0:
            first_after = min(s.right_ends()) + 1
        else:
            after = _space_columns(slices[j - 1], s)
            if after is None:
                raise InadmissibleBeta(f"chain stalls above {s.lengths}")
            first_after = after[0]
        flags.append(first_after < before[1])
    return flags


@dataclass(frozen=True)
class TiledPath:
    """One slice per weight 0..window, with pivot flags on the chain slices."""

    profile: Profile
    window: int
    slices: tuple[Slice, ...]          # index = weight
    pivot_weights: frozenset[int]
    chain: tuple[Slice, ...]

    def slice_at(self, weight: int) -> Slice:
        return self.slices[weight]

    def pivot_slices(self) -> list[Slice]:
        return [self.slices[w] for w in sorted(self.pivot_weights, reverse=True)]


def tile(profile: Profile, chain: Sequence[Slice], window: int) -> TiledPath:
    """Fill the spaces of a strictly decreasing chain box by box.

    Boxes go into each space column by column, left to right, top to bottom
    within a column; past the largest chain slice the infinite strip is
    tiled the same way up to the window.  The result records the unique
    intermediate slice of every weight 0..window.
    """
    slices = sorted(chain, key=lambda s: s.weight)  # smallest first
    for a, b in zip(slices, slices[1:]):
        if not (b.contains(a) and a != b):
            raise InadmissibleBeta(
                f"{b.lengths} does not strictly contain {a.lengths}")
    if slices and slices[-1].weight > window:
        raise InadmissibleBeta(
            f"window {window} below the largest chain weight {slices[-1].weight}")

    offsets = profile.offsets()
    r = profile.rank
    current = list(zero_slice(profile).lengths)
    path = [Slice(profile, tuple(current))]

    def fill_to(target_lengths, limit: int):
        # Visit the space's cells by (absolute column, row), adding one box
        # at a time and recording each new slice.
        cells = []
        for i in range(r):
            lo = offsets[i] + current[i] + 1
            hi = offsets[i] + target_lengths[i]
            cells.extend((col, i) for col in range(lo, hi + 1))
        cells.sort()
        for _, i in cells:
            if len(path) - 1 >= limit:
                return
            current[i] += 1
            path.append(Slice(profile, tuple(current)))

    for target in slices:
        fill_to(target.lengths, window)
    # Infinite strip past the largest slice: walk absolute columns left to
    # right; a row takes a box in every column beyond its own right end.
    boundary = [offsets[i] + current[i] for i in range(r)]
    col = min(boundary) + 1
    while len(path) - 1 < window:
        for i in range(r):
            if boundary[i] < col and len(path) - 1 < window:
                current[i] += 1
                path.append(Slice(profile, tuple(current)))
        col += 1

    flags = chain_pivots(profile, list(reversed(slices)))
    pivot_weights = frozenset(s.weight for s, f in
                              zip(reversed(slices), flags) if f)
    return TiledPath(profile, window, tuple(path), pivot_weights,
                     tuple(reversed(slices)))


def pivots(path: TiledPath) -> list[Slice]:
    """The flagged chain slices of a tiled path, largest first."""
    return path.pivot_slices()


def pivot_decompose(cp: CylindricPartition
                    ) -> tuple[Partition, LabeledDistinctPartition]:
    """Split a cylindric partition into (mu, beta).

    ``beta`` takes one copy of every pivot slice as (weight, shape);
    ``mu`` keeps the weights of everything else.  Weights add up:
    |cp| = |mu| + |beta|.
    """
    chain = slice_decompose(cp)
    distinct = chain.distinct()
    flags = chain_pivots(cp.profile, distinct)
    beta_entries = []
    mu_parts: list[int] = []
    for (s, mult), flag in zip(chain.entries, flags):
        if flag:
            beta_entries.append((s.weight, slice_shape(s)))
            mu_parts.extend([s.weight] * (mult - 1))
        else:
            mu_parts.extend([s.weight] * mult)
    return (Partition.from_multiset(mu_parts),
            LabeledDistinctPartition(tuple(beta_entries)))


def _beta_slices(beta: LabeledDistinctPartition, profile: Profile) -> list[Slice]:
    out = []
    for w, sh in beta.entries:
        s = slice_with(profile, sh, w)
        if s is None:
            raise InadmissibleBeta(f"no slice of shape {sh} and weight {w}")
        out.append(s)
    return out


def validate_beta(beta: LabeledDistinctPartition, profile: Profile
                  ) -> tuple[bool, str]:
    """Operational admissibility: the slices named by beta, stacked as a
    chain, must each come out flagged as a pivot.  Returns (ok, diagnosis)."""
    try:
        slices = _beta_slices(beta, profile)
    except InadmissibleBeta as e:
        return False, str(e)
    for w, sh in beta.entries:
        if not sh.parts or sh.parts[0] < 2:
            return False, f"shape {sh} of part {w} can never be a pivot"
    for a, b in zip(slices, slices[1:]):
        if not (a.contains(b) and a != b):
            return False, (f"slices {a.lengths} and {b.lengths} do not nest")
    try:
        flags = chain_pivots(profile, slices)
    except InadmissibleBeta as e:
        return False, str(e)
    for (w, sh), flag in zip(beta.entries, flags):
        if not flag:
            return False, f"{w}^{sh} is not a pivot in this lineup"
    return True, "admissible"


def reconstruct_window(beta: LabeledDistinctPartition, mu: Partition,
                       profile: Profile) -> int:
    """Tiling window large enough for every pivot decision and mu insertion."""
    top_beta = beta.entries[0][0] if beta.entries else 0
    top_mu = mu.part(1)
    return top_beta + profile.rank * profile.level + top_mu + 1


def pivot_reconstruct(mu: Partition, beta: LabeledDistinctPartition,
                      profile: Profile) -> CylindricPartition:
    """Inverse of :func:`pivot_decompose`.

    Tiles the pivot chain, then adds one slice per part of ``mu`` at the
    unique tiled slice of that weight.
    """
    ok, why = validate_beta(beta, profile)
    if not ok:
        raise InadmissibleBeta(why)
    window = reconstruct_window(beta, mu, profile)
    path = tile(profile, _beta_slices(beta, profile), window)
    weights = sorted([w for w, _ in beta.entries] + list(mu.parts), reverse=True)
    slices = [path.slice_at(w) for w in weights]
    if not slices:
        return recompose(SliceChain(profile, ()))
    return recompose(SliceChain.from_slices(profile, slices))


def validate_beta_rank2(beta: LabeledDistinctPartition, a: int, b: int) -> bool:
    """Closed-form admissibility test for rank-2 profiles (a, b).

    Conditions: every label (s) has 2 <= s <= a+b; w + s and b share parity;
    different parts keep |w1 - w2| >= |s1 - s2| + 2; and each part obeys
    w >= s - b, w > b - s.
    """
    level = a + b
    for w, sh in beta.entries:
        if sh.rank != 2:
            return False
        s = sh.parts[0]
        if not (2 <= s <= level):
            return False
        if (w + s) % 2 != b % 2:
            return False
        if not (w >= s - b and w > b - s):
            return False
    es = beta.entries
    for (w1, s1), (w2, s2) in zip(es, es[1:]):
        if abs(w1 - w2) < abs(s1.parts[0] - s2.parts[0]) + 2:
            return False
    return True
