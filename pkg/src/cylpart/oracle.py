"""Brute-force enumeration of cylindric partitions.

This module is the ground truth every identity in the package is checked
against, so it stays deliberately simple: a depth-first search over rows,
bounding each part by the cyclic constraints and the remaining weight
budget, followed by a full validation pass.
"""

from __future__ import annotations

from .core import CylindricPartition, Partition, Profile, validate
from .qpoly import QPoly
from .series import BivariateTruncated, TruncatedSeries
from .rings import ZZ

DEFAULT_WEIGHT_CAP = 30

_cache: dict[tuple[tuple[int, ...], int], list[CylindricPartition]] = {}


def _rows_within(cap_row: tuple[int, ...] | None, lower_row: tuple[int, ...],
                 shift: int, budget: int):
    """All partitions with weight <= budget, part j <= cap_row[j - shift - 1]
    (no cap for j <= shift, 0 beyond the caps), and part j >= lower_row[j-1].

    ``cap_row=None`` means unconstrained from above except by the budget.
    """
    out: list[tuple[int, ...]] = []
    min_len = len(lower_row)

    def cap(j: int) -> int:
        if cap_row is None:
            return budget
        if j <= shift:
            return budget
        k = j - shift
        return cap_row[k - 1] if k <= len(cap_row) else 0

    def low(j: int) -> int:
        return lower_row[j - 1] if j <= len(lower_row) else 0

    def rec(prefix: list[int], j: int, remaining: int):
        if j > min_len:
            out.append(tuple(prefix))
        if remaining <= 0:
            return
        hi = min(cap(j), remaining, prefix[-1] if prefix else remaining)
        lo = max(low(j), 1)
        for p in range(hi, lo - 1, -1):
            prefix.append(p)
            rec(prefix, j + 1, remaining - p)
            prefix.pop()

    rec([], 1, budget)
    return out


def enumerate_by_weight(profile: Profile, max_weight: int,
                        cap: int = DEFAULT_WEIGHT_CAP) -> list[CylindricPartition]:
    """Every cylindric partition with the given profile and weight <= max_weight.

    Exhaustive and duplicate-free; results come back sorted by (weight,
    canonical text form).  ``cap`` guards runaway searches.
    """
    if max_weight < 0:
        return []
    if max_weight > cap:
        raise ValueError(f"weight bound {max_weight} exceeds the cap {cap}; "
                         f"raise `cap` explicitly if this is intended")
    key = (profile.parts, max_weight)
    if key in _cache:
        return _cache[key]
    superset = next((cached for (parts, w), cached in _cache.items()
                     if parts == profile.parts and w > max_weight), None)
    if superset is not None:
        result = [cp for cp in superset if cp.weight <= max_weight]
        _cache[key] = result
        return result

    r = profile.rank
    results: list[CylindricPartition] = []
    seen: set[str] = set()

    def place_rows(rows: list[tuple[int, ...]], budget: int):
        i = len(rows)
        if i == r:
            cand = validate(tuple(Partition(row) for row in rows), profile)
            text = cand.to_text()
            if text not in seen:
                seen.add(text)
                results.append(cand)
            return
        if i == 0:
            choices = _rows_within(None, (), 0, budget)
        elif i < r - 1:
            choices = _rows_within(rows[i - 1], (), profile.parts[i], budget)
        else:
            # Last row: also bounded below by the wraparound against row 1.
            c1 = profile.parts[0]
            lower = rows[0][c1:] if len(rows[0]) > c1 else ()
            choices = _rows_within(rows[i - 1], lower, profile.parts[i], budget)
        for row in choices:
            rows.append(row)
            place_rows(rows, budget - sum(row))
            rows.pop()

    place_rows([], max_weight)
    results.sort(key=lambda cp: (cp.weight, cp.to_text()))
    _cache[key] = results
    return results


def count_series(profile: Profile, order: int, cap: int = DEFAULT_WEIGHT_CAP) -> TruncatedSeries:
    """Number of cylindric partitions by weight, as a truncated series."""
    counts = [0] * (order + 1)
    for cp in enumerate_by_weight(profile, order, cap):
        counts[cp.weight] += 1
    return TruncatedSeries.from_coeffs(ZZ, counts, order)


def count_bivariate(profile: Profile, order: int, cap: int = DEFAULT_WEIGHT_CAP) -> BivariateTruncated:
    """Counts refined by largest part: the q^n coefficient collects z^{max}."""
    buckets: list[dict[int, int]] = [dict() for _ in range(order + 1)]
    for cp in enumerate_by_weight(profile, order, cap):
        d = buckets[cp.weight]
        m = cp.max_part
        d[m] = d.get(m, 0) + 1
    polys = []
    for n, d in enumerate(buckets):
        top = max(d) if d else -1
        assert top <= n, "a part of size >= 1 is needed per unit of largest part"
        polys.append(QPoly(tuple(d.get(m, 0) for m in range(top + 1))))
    return BivariateTruncated(order, tuple(polys))


def has_distinct_parts(cp: CylindricPartition) -> bool:
    """True when the multiset of all positive parts across rows has no repeats."""
    seen: set[int] = set()
    for row in cp.rows:
        for p in row.parts:
            if p in seen:
                return False
            seen.add(p)
    return True


def count_distinct_series(profile: Profile, order: int,
                          cap: int = DEFAULT_WEIGHT_CAP) -> TruncatedSeries:
    """Counts of cylindric partitions with all parts distinct across rows."""
    counts = [0] * (order + 1)
    for cp in enumerate_by_weight(profile, order, cap):
        if has_distinct_parts(cp):
            counts[cp.weight] += 1
    return TruncatedSeries.from_coeffs(ZZ, counts, order)


def count_max_at_most(profile: Profile, bound: int, order: int,
                      cap: int = DEFAULT_WEIGHT_CAP) -> TruncatedSeries:
    """Counts of cylindric partitions with largest part <= bound."""
    counts = [0] * (order + 1)
    for cp in enumerate_by_weight(profile, order, cap):
        if cp.max_part <= bound:
            counts[cp.weight] += 1
    return TruncatedSeries.from_coeffs(ZZ, counts, order)


def count_max_exactly(profile: Profile, bound: int, order: int,
                      cap: int = DEFAULT_WEIGHT_CAP) -> TruncatedSeries:
    """Counts of cylindric partitions with largest part exactly ``bound``."""
    counts = [0] * (order + 1)
    for cp in enumerate_by_weight(profile, order, cap):
        if cp.max_part == bound:
            counts[cp.weight] += 1
    return TruncatedSeries.from_coeffs(ZZ, counts, order)
