"""Truncated formal power series in q over an exact coefficient ring.

A :class:`TruncatedSeries` stores coefficients c_0..c_N exactly; arithmetic
never reads beyond the truncation order N.  :class:`BivariateTruncated`
additionally carries a polynomial in z at every q power (z is never
truncated; q powers above N are dropped).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Profile
from .qpoly import QPoly, q_binomial  # noqa: F401  (q_binomial re-exported here)
from .rings import Ring, RingMismatch, ZZ, ring_of


class OrderMismatch(Exception):
    pass


class NonpositiveExponent(Exception):
    pass


@dataclass(frozen=True)
class TruncatedSeries:
    ring: Ring
    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise OrderMismatch(
                f"series of order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, ring: Ring, coeffs, order: int) -> "TruncatedSeries":
        cs = [ring.coerce(c) for c in coeffs[:order + 1]]
        cs += [ring.zero] * (order + 1 - len(cs))
        return cls(ring, order, tuple(cs))

    @classmethod
    def constant(cls, ring: Ring, value, order: int) -> "TruncatedSeries":
        return cls.from_coeffs(ring, [value], order)

    @classmethod
    def one(cls, ring: Ring, order: int) -> "TruncatedSeries":
        return cls.constant(ring, 1, order)

    @classmethod
    def zero(cls, ring: Ring, order: int) -> "TruncatedSeries":
        return cls.constant(ring, 0, order)

    def _check(self, other: "TruncatedSeries"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.order != other.order:
            raise OrderMismatch(f"{self.order} vs {other.order}")

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.ring, self.order,
                               tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.ring, self.order,
                               tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = self.order
        out = [self.ring.zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.ring, n, tuple(out))

    def scale(self, factor) -> "TruncatedSeries":
        factor = self.ring.coerce(factor)
        return TruncatedSeries(self.ring, self.order,
                               tuple(factor * a for a in self.coeffs))

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k."""
        if k == 0:
            return self
        if k > self.order:
            return TruncatedSeries.zero(self.ring, self.order)
        cs = (self.ring.zero,) * k + self.coeffs[:self.order + 1 - k]
        return TruncatedSeries(self.ring, self.order, cs)

    def mul_inv_one_minus(self, e: int) -> "TruncatedSeries":
        """Multiply by 1/(1 - q^e)."""
        if e < 1:
            raise NonpositiveExponent(f"exponent {e} must be positive")
        cs = list(self.coeffs)
        for i in range(e, self.order + 1):
            cs[i] = cs[i] + cs[i - e]
        return TruncatedSeries(self.ring, self.order, tuple(cs))

    def mul_one_minus(self, e: int) -> "TruncatedSeries":
        """Multiply by (1 - q^e)."""
        if e < 1:
            raise NonpositiveExponent(f"exponent {e} must be positive")
        cs = list(self.coeffs)
        for i in range(self.order, e - 1, -1):
            cs[i] = cs[i] - self.coeffs[i - e]
        return TruncatedSeries(self.ring, self.order, tuple(cs))

    def mul_one_plus(self, e: int, factor) -> "TruncatedSeries":
        """Multiply by (1 + factor * q^e)."""
        if e < 1:
            raise NonpositiveExponent(f"exponent {e} must be positive")
        factor = self.ring.coerce(factor)
        cs = list(self.coeffs)
        for i in range(self.order, e - 1, -1):
            cs[i] = cs[i] + factor * self.coeffs[i - e]
        return TruncatedSeries(self.ring, self.order, tuple(cs))

    def into_ring(self, ring: Ring) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs(ring, list(self.coeffs), self.order)

    def truncated(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.ring, order, self.coeffs[:order + 1])

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c and i > 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*q")
            else:
                terms.append(f"{c}*q^{i}")
        return " + ".join(terms) + f" + O(q^{self.order + 1})"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.tag,
            "order": self.order,
            "coeffs": [self.ring.element_to_json(c) for c in self.coeffs],
        }


def inv_poch_finite(n: int, order: int, ring: Ring = ZZ, step: int = 1) -> TruncatedSeries:
    """1 / ((q^step; q^step)_n) truncated: product of 1/(1 - q^{step*j}), j = 1..n."""
    s = TruncatedSeries.one(ring, order)
    for j in range(1, n + 1):
        if step * j > order:
            break
        s = s.mul_inv_one_minus(step * j)
    return s


def poch_finite(n: int, order: int, ring: Ring = ZZ) -> TruncatedSeries:
    """(q; q)_n truncated."""
    s = TruncatedSeries.one(ring, order)
    for j in range(1, n + 1):
        if j > order:
            break
        s = s.mul_one_minus(j)
    return s


def poch_infinite(base_exp: int, modulus: int, order: int, ring: Ring = ZZ) -> TruncatedSeries:
    """(q^m; q^t)_infinity truncated: product of (1 - q^{m + j t}), j >= 0."""
    if base_exp < 1:
        raise NonpositiveExponent(f"exponent {base_exp} must be positive")
    s = TruncatedSeries.one(ring, order)
    for e in range(base_exp, order + 1, modulus):
        s = s.mul_one_minus(e)
    return s


def product_inv_factors(factors, order: int, ring: Ring = ZZ) -> TruncatedSeries:
    """Expansion of a product of 1/(q^m; q^t)_infinity factors.

    ``factors`` is an iterable of (base exponent m, modulus t) pairs, with
    multiplicity meaningful.
    """
    s = TruncatedSeries.one(ring, order)
    for m, t in factors:
        if m < 1:
            raise NonpositiveExponent(f"exponent {m} must be positive")
        for e in range(m, order + 1, t):
            s = s.mul_inv_one_minus(e)
    return s


def borodin_factors(profile: Profile) -> list[tuple[int, int]]:
    """The (exponent, modulus) multiset of the cylindric-partition product.

    With t = rank + level and s(i, j) = c_i + ... + c_j the factors are
    1/(q^t; q^t), then 1/(q^{m + j - i + s(i+1, j)}; q^t) over
    1 <= i <= j <= rank, 1 <= m <= c_i, and
    1/(q^{t - m + j - i - s(j, i-1)}; q^t) over 2 <= j <= i <= rank,
    1 <= m <= c_i.
    """
    c = profile.parts
    r = profile.rank
    t = r + profile.level

    def s(i, j):  # 1-based inclusive partial sum, empty when i > j
        return sum(c[i - 1:j])

    factors = [(t, t)]
    for i in range(1, r + 1):
        for j in range(i, r + 1):
            for m in range(1, c[i - 1] + 1):
                factors.append((m + j - i + s(i + 1, j), t))
    for i in range(2, r + 1):
        for j in range(2, i + 1):
            for m in range(1, c[i - 1] + 1):
                factors.append((t - m + j - i - s(j, i - 1), t))
    return factors


def borodin_product(profile: Profile, order: int, ring: Ring = ZZ) -> TruncatedSeries:
    """The infinite-product form of the cylindric partition counting series."""
    return product_inv_factors(borodin_factors(profile), order, ring)


def euler_terms(beta, order: int, ring: Ring | None = None):
    """Yield the summands beta^n q^{n(n+1)/2} / (q;q)_n while they can
    still touch the truncation order."""
    ring = ring or ring_of(beta)
    beta = ring.coerce(beta)
    n = 0
    power = ring.one
    while n * (n + 1) // 2 <= order:
        term = inv_poch_finite(n, order, ring).shift(n * (n + 1) // 2).scale(power)
        yield term
        n += 1
        power = power * beta


def euler_distinct(beta, order: int, ring: Ring | None = None) -> TruncatedSeries:
    """(-beta*q; q)_infinity, computed both as the finite-factor product and
    as the q-exponential sum; the two must agree to the truncation order."""
    ring = ring or ring_of(beta)
    beta = ring.coerce(beta)
    prod = TruncatedSeries.one(ring, order)
    for j in range(1, order + 1):
        prod = prod.mul_one_plus(j, beta)
    total = TruncatedSeries.zero(ring, order)
    for term in euler_terms(beta, order, ring):
        total = total + term
    if prod.coeffs != total.coeffs:
        raise AssertionError("product and sum expansions disagree")
    return prod


def lambert_zddz(beta, k: int, order: int, ring: Ring | None = None) -> TruncatedSeries:
    """Sum of n^k beta^n q^{n(n+1)/2} / (q;q)_n.

    This is the k-fold z d/dz derivative of the z-refined distinct-parts
    product, evaluated at z = 1, applied termwise.
    """
    if k < 0:
        raise ValueError("derivative count must be non-negative")
    ring = ring or ring_of(beta)
    total = TruncatedSeries.zero(ring, order)
    for n, term in enumerate(euler_terms(beta, order, ring)):
        total = total + term.scale(n ** k)
    return total


def progression_filter(terms, modulus: int, residue: int,
                       order: int, ring: Ring = ZZ) -> TruncatedSeries:
    """Sum only the terms with index congruent to ``residue`` mod ``modulus``.

    ``terms`` is an iterable of TruncatedSeries indexed from 0; index
    filtering is direct, no roots of unity are involved.
    """
    if not (0 <= residue < modulus):
        raise ValueError(f"need 0 <= residue < modulus, got {residue}, {modulus}")
    total = None
    for n, term in enumerate(terms):
        if total is None:
            total = TruncatedSeries.zero(term.ring, term.order)
        if n % modulus == residue:
            total = total + term
    if total is None:
        total = TruncatedSeries.zero(ring, order)
    return total


@dataclass(frozen=True)
class BivariateTruncated:
    """Series in q to a fixed order whose q-coefficients are z-polynomials."""

    order: int
    coeffs: tuple  # QPoly in z per q power, length order + 1

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise OrderMismatch(
                f"needs {self.order + 1} q-coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, order: int) -> "BivariateTruncated":
        return cls(order, tuple(QPoly() for _ in range(order + 1)))

    @classmethod
    def one(cls, order: int) -> "BivariateTruncated":
        return cls(order, (QPoly.one(),) + tuple(QPoly() for _ in range(order)))

    @classmethod
    def from_univariate(cls, series: TruncatedSeries) -> "BivariateTruncated":
        return cls(series.order, tuple(QPoly((c,)) for c in series.coeffs))

    def _check(self, other: "BivariateTruncated"):
        if self.order != other.order:
            raise OrderMismatch(f"{self.order} vs {other.order}")

    def __add__(self, other: "BivariateTruncated") -> "BivariateTruncated":
        self._check(other)
        return BivariateTruncated(self.order,
                                  tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BivariateTruncated") -> "BivariateTruncated":
        self._check(other)
        return BivariateTruncated(self.order,
                                  tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "BivariateTruncated") -> "BivariateTruncated":
        self._check(other)
        out = [QPoly() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return BivariateTruncated(self.order, tuple(out))

    def scale_z(self, zpoly: QPoly) -> "BivariateTruncated":
        return BivariateTruncated(self.order, tuple(zpoly * c for c in self.coeffs))

    def shift_q(self, k: int) -> "BivariateTruncated":
        if k == 0:
            return self
        if k > self.order:
            return BivariateTruncated.zero(self.order)
        cs = (QPoly(),) * k + self.coeffs[:self.order + 1 - k]
        return BivariateTruncated(self.order, cs)

    def subst_z_mul_qpow(self, k: int) -> "BivariateTruncated":
        """Substitute z -> z * q^k: the term z^m q^j becomes z^m q^{j + k m}."""
        if k == 0:
            return self
        out = [dict() for _ in range(self.order + 1)]
        for j, zp in enumerate(self.coeffs):
            for m, c in enumerate(zp.coeffs):
                if not c:
                    continue
                jj = j + k * m
                if jj <= self.order:
                    out[jj][m] = out[jj].get(m, 0) + c
        polys = []
        for d in out:
            if d:
                top = max(d)
                polys.append(QPoly(tuple(d.get(m, 0) for m in range(top + 1))))
            else:
                polys.append(QPoly())
        return BivariateTruncated(self.order, tuple(polys))

    def mul_inv_one_minus_zq(self, k: int) -> "BivariateTruncated":
        """Multiply by 1/(1 - z q^k) for k >= 1 (geometric series in z q^k)."""
        if k < 1:
            raise NonpositiveExponent("geometric factor needs k >= 1")
        geom = BivariateTruncated(
            self.order,
            tuple(QPoly.monomial(j // k) if j % k == 0 else QPoly()
                  for j in range(self.order + 1)))
        return self * geom

    def mul_inv_one_minus_q(self, e: int) -> "BivariateTruncated":
        """Multiply by 1/(1 - q^e)."""
        if e < 1:
            raise NonpositiveExponent(f"exponent {e} must be positive")
        cs = list(self.coeffs)
        for i in range(e, self.order + 1):
            cs[i] = cs[i] + cs[i - e]
        return BivariateTruncated(self.order, tuple(cs))

    def truncate_z(self, zmax: int) -> "BivariateTruncated":
        return BivariateTruncated(
            self.order, tuple(QPoly(c.coeffs[:zmax + 1]) for c in self.coeffs))

    def at_z_one(self, ring: Ring = ZZ) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(ring, [c(1) for c in self.coeffs], self.order)

    def z_coefficient(self, m: int, ring: Ring = ZZ) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(
            ring, [c.coefficient(m) for c in self.coeffs], self.order)

    def z_degree(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c and i > 0:
                continue
            zs = c.to_str("z")
            body = zs if c.degree <= 0 else f"({zs})"
            terms.append(body if i == 0 else
                         f"{body}*q" if i == 1 else f"{body}*q^{i}")
        return " + ".join(terms) + f" + O(q^{self.order + 1})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[str(x) for x in c.coeffs] for c in self.coeffs],
        }


def inv_zq_pochhammer(order: int) -> BivariateTruncated:
    """1/(zq; q)_infinity truncated: sum of z^m q^m / (q;q)_m."""
    total = BivariateTruncated.zero(order)
    for m in range(order + 1):
        piece = inv_poch_finite(m, order).shift(m)
        contrib = BivariateTruncated(
            order, tuple(QPoly.monomial(m, c) if c else QPoly() for c in piece.coeffs))
        total = total + contrib
    return total
