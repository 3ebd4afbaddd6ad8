"""Polynomial numerators for bounded cylindric partition counts.

For a fixed rank and level, the generating function of cylindric partitions
with parts at most n factors as P_n(shape) / (q^r; q^r)_n, where the
numerators satisfy a coupled recurrence over all shapes of the family:

    P_n(c) = sum over shapes d of q^{n * delta(c, d)} * P_{n-1}(d)

with delta(c, d) the tight-packing distance from the zero shape of c to the
shape d.  The largest-part-exactly-n variant replaces the diagonal term's
q^{n*0} by q^{n*r}; the pivot-chain variant restricts d to shapes with
first part >= 2 and adds n*r to every exponent.  All tables are memoized
per (rank, level) family since the recurrences couple all shapes.
"""

from __future__ import annotations

from functools import lru_cache

from .core import Profile, Shape, all_shapes, delta, shape_of_zero, shape_to_profile
from .qpoly import QPoly, geometric_sum, q_binomial
from .series import (BivariateTruncated, TruncatedSeries, inv_poch_finite)
from .rings import ZZ


class PolynomialFamily:
    """Memoized polynomial tables for one (rank, level) family."""

    def __init__(self, rank: int, level: int):
        self.rank = rank
        self.level = level
        self.shapes = all_shapes(rank, level)
        self.pivot_shapes = [s for s in self.shapes if s.parts and s.parts[0] >= 2]
        self._delta = {}
        for a in self.shapes:
            pa = shape_to_profile(a, level)
            for b in self.shapes:
                self._delta[(a, b)] = delta(pa, shape_to_profile(b, level))
        self._parts_at_most: list[dict[Shape, QPoly]] = [
            {s: QPoly.one() for s in self.shapes}]
        self._pivot_lineup: list[dict[Shape, QPoly]] = [
            {s: QPoly.one() for s in self.pivot_shapes}]

    def dist(self, a: Shape, b: Shape) -> int:
        return self._delta[(a, b)]

    def _extend_parts_at_most(self, n: int):
        while len(self._parts_at_most) <= n:
            k = len(self._parts_at_most)
            prev = self._parts_at_most[-1]
            layer = {}
            for c in self.shapes:
                acc = QPoly()
                for d in self.shapes:
                    acc = acc + prev[d].shift(k * self.dist(c, d))
                layer[c] = acc
            self._parts_at_most.append(layer)

    def parts_at_most(self, n: int, c: Shape) -> QPoly:
        """Numerator of the count of cylindric partitions with parts <= n."""
        if n < 0:
            raise ValueError("n must be non-negative")
        self._extend_parts_at_most(n)
        return self._parts_at_most[n][c]

    def largest_part_exact(self, n: int, c: Shape) -> QPoly:
        """Numerator with largest part exactly n: the diagonal step pays a
        full extra column, q^{n*rank}, instead of q^0."""
        if n < 0:
            raise ValueError("n must be non-negative")
        if n == 0:
            return QPoly.one()
        self._extend_parts_at_most(n - 1)
        prev = self._parts_at_most[n - 1]
        acc = prev[c].shift(n * self.rank)
        for d in self.shapes:
            if d != c:
                acc = acc + prev[d].shift(n * self.dist(c, d))
        return acc

    def _extend_pivot_lineup(self, n: int):
        while len(self._pivot_lineup) <= n:
            k = len(self._pivot_lineup)
            prev = self._pivot_lineup[-1]
            layer = {}
            for c in self.pivot_shapes:
                acc = QPoly()
                for d in self.pivot_shapes:
                    acc = acc + prev[d].shift(k * (self.dist(c, d) + self.rank))
                layer[c] = acc
            self._pivot_lineup.append(layer)

    def pivot_lineup(self, n: int, c: Shape) -> QPoly:
        """Weight numerator of minimal loose pivot lineups below shape c.

        The recurrence runs over potential pivot shapes only; a base shape
        outside that set is handled by one extra application of the step.
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        if n == 0:
            return QPoly.one()
        if c in self._pivot_lineup[0]:
            self._extend_pivot_lineup(n)
            return self._pivot_lineup[n][c]
        self._extend_pivot_lineup(n - 1)
        prev = self._pivot_lineup[n - 1]
        acc = QPoly()
        for d in self.pivot_shapes:
            acc = acc + prev[d].shift(n * (self.dist(c, d) + self.rank))
        return acc

    def pivot_corrected(self, n: int, c: Shape) -> QPoly:
        """Alternating combination of largest-part numerators:

        sum over k + m = n of [n choose k] in base q^rank, times
        (1 + q^j + ... + q^{(rank-1)j}) over j = 1..m, times
        (-1)^m q^{m(m+1)/2}, times the largest-part-exactly-k numerator.
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        total = QPoly()
        r = self.rank
        for k in range(n + 1):
            m = n - k
            piece = q_binomial(n, k).subst_power(r)
            for j in range(1, m + 1):
                piece = piece * geometric_sum(j, (r - 1) * j)
            piece = piece.shift(m * (m + 1) // 2)
            if m % 2 == 1:
                piece = -piece
            total = total + piece * self.largest_part_exact(k, c)
        return total


@lru_cache(maxsize=None)
def family(rank: int, level: int) -> PolynomialFamily:
    return PolynomialFamily(rank, level)


def _family_of(profile: Profile) -> tuple[PolynomialFamily, Shape]:
    return family(profile.rank, profile.level), shape_of_zero(profile)


def parts_at_most_poly(profile: Profile, n: int) -> QPoly:
    fam, c = _family_of(profile)
    return fam.parts_at_most(n, c)


def largest_part_exact_poly(profile: Profile, n: int) -> QPoly:
    fam, c = _family_of(profile)
    return fam.largest_part_exact(n, c)


def pivot_lineup_poly(profile: Profile, n: int) -> QPoly:
    fam, c = _family_of(profile)
    return fam.pivot_lineup(n, c)


def pivot_corrected_poly(profile: Profile, n: int) -> QPoly:
    fam, c = _family_of(profile)
    return fam.pivot_corrected(n, c)


def parts_at_most_series(profile: Profile, n: int, order: int) -> TruncatedSeries:
    """parts_at_most numerator over (q^r; q^r)_n, truncated."""
    num = TruncatedSeries.from_coeffs(ZZ, parts_at_most_poly(profile, n).truncated(order), order)
    return num * inv_poch_finite(n, order, step=profile.rank)


def largest_part_exact_series(profile: Profile, n: int, order: int) -> TruncatedSeries:
    num = TruncatedSeries.from_coeffs(ZZ, largest_part_exact_poly(profile, n).truncated(order), order)
    return num * inv_poch_finite(n, order, step=profile.rank)


def f_truncated(profile: Profile, order: int) -> BivariateTruncated:
    """The two-variable counting series: z marks the largest part, q the
    weight; assembled as sum of z^n * largest_part_exact_series(n)."""
    total = BivariateTruncated.zero(order)
    for n in range(order + 1):
        piece = largest_part_exact_series(profile, n, order)
        contrib = BivariateTruncated(
            order, tuple(QPoly.monomial(n, c) if c else QPoly()
                         for c in piece.coeffs))
        total = total + contrib
    return total


def check_functional_equation(profile: Profile, order: int) -> tuple[bool, str]:
    """Truncated bivariate identity relating the counting series of all
    shapes at one level:

        F_c(z, q) = (1-z)/(1-z q^r) F_c(z q^r, q)
                    + z * sum over shapes d of
                      (1-z) q^{delta(c,d)} / (1-z q^{delta(c,d)}) F_d(z q^{delta(c,d)}, q)

    with the d-sum taken over shapes other than c (the d = c term is the
    plain z F_c(z, q), already accounted for on the left after moving it
    over).  Returns (ok, detail).
    """
    r = profile.rank
    level = profile.level
    fam = family(r, level)
    c = shape_of_zero(profile)
    F = {d: f_truncated(shape_to_profile(d, level), order) for d in fam.shapes}
    one_minus_z = QPoly((1, -1))
    z = QPoly((0, 1))

    lhs = F[c]
    rhs = F[c].subst_z_mul_qpow(r).mul_inv_one_minus_zq(r).scale_z(one_minus_z)
    for d in fam.shapes:
        k = fam.dist(c, d)
        if k == 0:
            term = F[d].scale_z(z)
        else:
            term = (F[d].subst_z_mul_qpow(k)
                    .mul_inv_one_minus_zq(k)
                    .scale_z(one_minus_z)
                    .shift_q(k)
                    .scale_z(z))
        rhs = rhs + term
    if lhs.coeffs == rhs.coeffs:
        return True, f"functional equation holds for {profile} to q^{order}"
    bad = next(i for i in range(order + 1) if lhs.coeffs[i] != rhs.coeffs[i])
    return False, (f"functional equation fails for {profile} at q^{bad}: "
                   f"{lhs.coeffs[bad]} vs {rhs.coeffs[bad]}")
