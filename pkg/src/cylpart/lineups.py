"""Pivot lineups: chains of potential pivots and their gap classification.

A *potential pivot* is a slice whose shape has first part >= 2.  For a
chain of n potential pivots over a profile (largest first, the empty slice
implicitly at the bottom), each gap between consecutive members is, modulo
the rank, pinned to the tight-packing distance delta of the adjacent
shapes.  A gap equal to delta is *jammed*; a gap of delta + rank or more is
*loose*.  Chains whose members are all genuine pivots are lineups:

* loose lineup:   every gap >= delta + rank (pivothood then holds);
* minimal loose:  every gap exactly delta + rank (unique per shape choice);
* jammed lineup:  some gap exactly delta, all members still pivots;
* minimal jammed: every gap is delta or delta + rank, some gap delta,
  all members still pivots.

``iota`` collects the 1-based gap indices sitting at exact delta, counted
from the largest slice down; index n is the gap onto the empty slice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import CylpartError, Profile, Shape, shape_of_zero
from .bijection import chain_pivots
from .polynomials import family, pivot_lineup_poly
from .qpoly import QPoly
from .rings import ZZ
from .series import (BivariateTruncated, TruncatedSeries, inv_poch_finite,
                     inv_zq_pochhammer)
from .oracle import count_bivariate
from .slices import Slice, slice_shape, slice_with


class NotPotentialPivot(CylpartError):
    pass


def potential_pivot_shapes(rank: int, level: int) -> list[Shape]:
    """All shapes with first part >= 2; there are
    binomial(level + rank - 1, rank - 1) - rank of them."""
    return [s for s in family(rank, level).shapes if s.parts and s.parts[0] >= 2]


@dataclass(frozen=True)
class Lineup:
    profile: Profile
    slices: tuple[Slice, ...]        # largest first
    classification: str              # loose | minimal-loose | jammed | minimal-jammed | none
    iota: frozenset[int]

    @property
    def weight(self) -> int:
        return sum(s.weight for s in self.slices)

    def shapes(self) -> list[Shape]:
        return [slice_shape(s) for s in self.slices]

    def to_text(self) -> str:
        body = ",".join(f"{s.weight}^{slice_shape(s)}"
                        for s in reversed(self.slices))
        iota = "{" + ",".join(str(j) for j in sorted(self.iota)) + "}"
        return f"{body} iota={iota} class={self.classification}"

    def __str__(self) -> str:
        return self.to_text()


def classify(profile: Profile, slices: Sequence[Slice]) -> Lineup:
    """Classify a strictly decreasing chain of potential pivots.

    Gap j compares slice j against slice j+1 (the empty slice past the
    end).  Pivothood is always re-checked operationally on the chain, never
    assumed from the gap pattern alone.
    """
    chain = list(slices)
    zero_shape = shape_of_zero(profile)
    level = profile.level
    r = profile.rank
    fam = family(r, level)
    for s in chain:
        sh = slice_shape(s)
        if not sh.parts or sh.parts[0] < 2:
            raise NotPotentialPivot(f"{s.weight}^{sh} can never be a pivot")
    for a, b in zip(chain, chain[1:]):
        if not (a.contains(b) and a != b):
            raise NotPotentialPivot(
                f"{a.lengths} does not strictly contain {b.lengths}")
    n = len(chain)
    if n == 0:
        return Lineup(profile, (), "minimal-loose", frozenset())

    jammed_gaps = set()
    all_tight_or_step = True
    for j in range(1, n + 1):
        upper = chain[j - 1]
        lower_weight = chain[j].weight if j < n else 0
        lower_shape = slice_shape(chain[j]) if j < n else zero_shape
        gap = upper.weight - lower_weight
        dist = fam.dist(lower_shape, slice_shape(upper))
        if gap == dist:
            jammed_gaps.add(j)
        elif gap != dist + r:
            all_tight_or_step = False

    flags = chain_pivots(profile, chain)
    if not all(flags):
        return Lineup(profile, tuple(chain), "none", frozenset())
    if jammed_gaps:
        cls = "minimal-jammed" if all_tight_or_step else "jammed"
        return Lineup(profile, tuple(chain), cls, frozenset(jammed_gaps))
    cls = "minimal-loose" if all_tight_or_step else "loose"
    return Lineup(profile, tuple(chain), cls, frozenset())


def _chain_from_gaps(profile: Profile, shapes: Sequence[Shape],
                     tight: Sequence[bool]) -> list[Slice] | None:
    """Build the chain whose gap j is delta (tight) or delta + rank; shapes
    are listed largest slice first.  None when some member fails to exist
    as a slice or the chain stalls."""
    r = profile.rank
    level = profile.level
    fam = family(r, level)
    zero_shape = shape_of_zero(profile)
    n = len(shapes)
    weights = [0] * (n + 1)
    for j in range(n, 0, -1):
        lower_shape = shapes[j] if j < n else zero_shape
        gap = fam.dist(lower_shape, shapes[j - 1]) + (0 if tight[j - 1] else r)
        weights[j - 1] = weights[j] + gap
    out = []
    prev = None
    for sh, w in zip(shapes, weights[:n]):
        s = slice_with(profile, sh, w)
        if s is None or s.is_zero:
            return None
        if prev is not None and not (prev.contains(s) and prev != s):
            return None
        out.append(s)
        prev = s
    return out


def enumerate_minimal_loose(n: int, profile: Profile) -> list[Lineup]:
    """One minimal loose lineup per choice of n potential pivot shapes."""
    shapes = potential_pivot_shapes(profile.rank, profile.level)
    out = []
    for combo in itertools.product(shapes, repeat=n):
        chain = _chain_from_gaps(profile, combo, [False] * n)
        assert chain is not None, "loose gaps always leave room"
        lineup = classify(profile, chain)
        assert lineup.classification == "minimal-loose", str(lineup)
        out.append(lineup)
    return out


def enumerate_minimal_jammed(n: int, profile: Profile) -> list[Lineup]:
    """All minimal jammed lineups with n pivots: over every shape choice
    and every non-empty set of tightened gaps, keep the chains whose
    members all stay pivots."""
    shapes = potential_pivot_shapes(profile.rank, profile.level)
    out = []
    for combo in itertools.product(shapes, repeat=n):
        for mask in range(1, 1 << n):
            tight = [(mask >> j) & 1 == 1 for j in range(n)]
            chain = _chain_from_gaps(profile, combo, tight)
            if chain is None:
                continue
            lineup = classify(profile, chain)
            if lineup.classification != "minimal-jammed":
                continue
            if lineup.iota != frozenset(j + 1 for j in range(n) if tight[j]):
                continue
            out.append(lineup)
    return out


def pivot_chain_gf(n: int, profile: Profile, order: int) -> TruncatedSeries:
    """Brute force: sum q^{total weight} over all strictly decreasing chains
    of n slices, every member a pivot, with total weight <= order."""
    counts = [0] * (order + 1)
    if n == 0:
        counts[0] = 1
        return TruncatedSeries.from_coeffs(ZZ, counts, order)
    shapes = potential_pivot_shapes(profile.rank, profile.level)
    slices_by_weight: list[list[Slice]] = [[] for _ in range(order + 1)]
    for w in range(1, order + 1):
        for sh in shapes:
            s = slice_with(profile, sh, w)
            if s is not None:
                slices_by_weight[w].append(s)

    def extend(chain: list[Slice], budget: int):
        # chain holds the smaller slices already chosen, smallest last;
        # the next slice must strictly contain chain[0].
        if len(chain) == n:
            total = sum(s.weight for s in chain)
            if all(chain_pivots(profile, chain)):
                counts[total] += 1
            return
        low = chain[0].weight + 1 if chain else 1
        for w in range(low, budget + 1):
            for s in slices_by_weight[w]:
                if chain and not (s.contains(chain[0]) and s != chain[0]):
                    continue
                remaining = budget - w
                # the rest of the chain needs strictly increasing weights
                needed = sum(range(w + 1, w + 1 + n - len(chain) - 1))
                if remaining < needed:
                    continue
                extend([s] + chain, remaining)

    extend([], order)
    return TruncatedSeries.from_coeffs(ZZ, counts, order)


@dataclass(frozen=True)
class LineupCheckReport:
    profile: Profile
    n: int
    order: int
    ok: bool
    detail: str

    def __str__(self) -> str:
        status = "ok" if self.ok else "MISMATCH"
        return f"{self.detail} for {self.profile}, n={self.n}, q^{self.order}: {status}"


def minimal_jammed_correction(n: int, profile: Profile) -> QPoly:
    """Sum over minimal jammed lineups of q^{|lineup|} times the product of
    (1 - q^{rank*j}) over the tightened gap indices."""
    r = profile.rank
    total = QPoly()
    for lineup in enumerate_minimal_jammed(n, profile):
        piece = QPoly.monomial(lineup.weight)
        for j in sorted(lineup.iota):
            piece = piece * QPoly((1,) + (0,) * (r * j - 1) + (-1,))
        total = total + piece
    return total


def lemma_check(n: int, profile: Profile, order: int) -> LineupCheckReport:
    """Chains of n pivots, counted two ways.

    Brute force on the left; on the right, minimal loose lineup weights
    plus the sign-corrected minimal jammed weights, all over
    (q^rank; q^rank)_n.
    """
    lhs = pivot_chain_gf(n, profile, order)
    numerator = QPoly()
    for lineup in enumerate_minimal_loose(n, profile):
        numerator = numerator + QPoly.monomial(lineup.weight)
    numerator = numerator + minimal_jammed_correction(n, profile)
    rhs = TruncatedSeries.from_coeffs(ZZ, numerator.truncated(order), order)
    rhs = rhs * inv_poch_finite(n, order, step=profile.rank)
    ok = lhs.coeffs == rhs.coeffs
    detail = "pivot-chain count identity"
    if not ok:
        bad = next(i for i in range(order + 1) if lhs.coeffs[i] != rhs.coeffs[i])
        detail += f" (first mismatch at q^{bad}: {lhs.coeffs[bad]} vs {rhs.coeffs[bad]})"
    return LineupCheckReport(profile, n, order, ok, detail)


def qconj_genfunc_check(profile: Profile, order: int, n_max: int
                        ) -> LineupCheckReport:
    """Full two-variable identity against the enumeration oracle:

        F(z, q) = 1/(zq; q)_inf *
                  sum_n (pivot_lineup + jammed correction) z^n / (q^r; q^r)_n

    compared coefficientwise for z-degree <= n_max, q-degree <= order.
    """
    r = profile.rank
    rhs_sum = BivariateTruncated.zero(order)
    for n in range(n_max + 1):
        numerator = pivot_lineup_poly(profile, n) + minimal_jammed_correction(n, profile)
        series = TruncatedSeries.from_coeffs(ZZ, numerator.truncated(order), order)
        series = series * inv_poch_finite(n, order, step=r)
        contrib = BivariateTruncated(
            order, tuple(QPoly.monomial(n, c) if c else QPoly()
                         for c in series.coeffs))
        rhs_sum = rhs_sum + contrib
    rhs = (inv_zq_pochhammer(order) * rhs_sum).truncate_z(n_max)
    lhs = count_bivariate(profile, order).truncate_z(n_max)
    ok = lhs.coeffs == rhs.coeffs
    detail = "pivot generating-function identity"
    if not ok:
        bad = next(i for i in range(order + 1) if lhs.coeffs[i] != rhs.coeffs[i])
        detail += f" (first mismatch at q^{bad})"
    return LineupCheckReport(profile, n_max, order, ok, detail)
