"""Exact dense univariate polynomials over int / Fraction coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class IndexOutOfRange(Exception):
    pass


class QPoly:
    """A polynomial stored as a dense coefficient tuple, constant term first.

    Coefficients are exact (int, Fraction, or any exact ring element with
    +, -, *).  Trailing zeros are never stored, so the zero polynomial has
    an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "QPoly":
        return cls(())

    @classmethod
    def one(cls) -> "QPoly":
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "QPoly":
        return cls((0,) * k + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == QPoly((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def coefficient(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            other = QPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "QPoly":
        return self + (-other if isinstance(other, QPoly) else QPoly((-other,)))

    def __rsub__(self, other) -> "QPoly":
        return (-self) + other

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            return QPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        result = QPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "QPoly":
        """Multiply by the k-th power of the variable."""
        if not self.coeffs:
            return self
        return QPoly((0,) * k + self.coeffs)

    def subst_power(self, m: int) -> "QPoly":
        """Substitute variable -> variable**m."""
        if m < 1:
            raise ValueError("power substitution needs m >= 1")
        out = [0] * (m * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[m * i] = c
        return QPoly(tuple(out))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def div_exact(self, other: "QPoly") -> "QPoly":
        """Exact polynomial division; raises if the remainder is nonzero.

        Exactness is required, so the computation runs over Fractions and
        the result coefficients are re-normalised to int when possible.
        """
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        dcs = [Fraction(c) for c in other.coeffs]
        dq = len(dcs) - 1
        if len(rem) - 1 < dq:
            if any(rem):
                raise ValueError("division is not exact")
            return QPoly()
        out = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(out) - 1, -1, -1):
            c = rem[k + dq] / dcs[-1]
            out[k] = c
            if c:
                for j, d in enumerate(dcs):
                    rem[k + j] -= c * d
        if any(rem):
            raise ValueError("division is not exact")
        return QPoly(tuple(int(c) if c.denominator == 1 else c for c in out))

    def truncated(self, order: int) -> tuple:
        """Coefficients 0..order, zero padded."""
        return tuple(self.coefficient(i) for i in range(order + 1))

    def to_str(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{var}" if c != 1 else var)
            else:
                terms.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"QPoly({self.coeffs})"


def geometric_sum(ratio_exponent: int, top: int) -> QPoly:
    """1 + q^e + q^{2e} + ... with exponents up to ``top``."""
    if ratio_exponent < 1:
        raise ValueError("exponent must be positive")
    out = [0] * (top + 1)
    for k in range(0, top + 1, ratio_exponent):
        out[k] = 1
    return QPoly(tuple(out))


def poch_poly(n: int) -> QPoly:
    """The finite product (1-q)(1-q^2)...(1-q^n) as an exact polynomial."""
    out = QPoly.one()
    for j in range(1, n + 1):
        out = out * QPoly((1,) + (0,) * (j - 1) + (-1,))
    return out


def q_binomial(n: int, k: int) -> QPoly:
    """Gaussian binomial coefficient via exact polynomial division."""
    if not (0 <= k <= n):
        raise IndexOutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    return poch_poly(n).div_exact(poch_poly(k) * poch_poly(n - k))
