"""Truncated power series with exact or floating coefficients.

Coefficients may be any field elements (``float``, ``Fraction``, ...); the
arithmetic never leaves the coefficient type, so ``Fraction`` input gives exact
Taylor coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence


@dataclass(frozen=True)
class SeriesPoly:
    """``c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))``."""

    coeffs: tuple
    order: int

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Any], order: int) -> SeriesPoly:
        cs = list(coeffs[: order + 1])
        zero = cs[0] * 0 if cs else 0
        cs += [zero] * (order + 1 - len(cs))
        return cls(tuple(cs), order)

    @classmethod
    def variable(cls, order: int, one: Any = 1) -> SeriesPoly:
        return cls.from_coeffs([one * 0, one], order)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def _coerce(self, other) -> SeriesPoly:
        if isinstance(other, SeriesPoly):
            return other
        return SeriesPoly.from_coeffs([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return SeriesPoly(tuple(self[i] + other[i] for i in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return SeriesPoly(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SeriesPoly):
            return SeriesPoly(tuple(c * other for c in self.coeffs), self.order)
        n = min(self.order, other.order)
        out = [self[0] * other[0] * 0] * (n + 1)
        for i in range(n + 1):
            if self[i] == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += self[i] * other[j]
        return SeriesPoly(tuple(out), n)

    __rmul__ = __mul__

    def reciprocal(self) -> SeriesPoly:
        if self[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        inv0 = 1 / self[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = sum((self[k] * out[n - k] for k in range(1, n + 1)), self[0] * 0)
            out.append(-acc * inv0)
        return SeriesPoly(tuple(out), self.order)

    def __truediv__(self, other):
        if isinstance(other, SeriesPoly):
            return self * other.reciprocal()
        return SeriesPoly(tuple(c / other for c in self.coeffs), self.order)

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        out = SeriesPoly.from_coeffs([self[0] ** 0], self.order)
        for _ in range(k):
            out = out * self
        return out

    def compose(self, inner: SeriesPoly) -> SeriesPoly:
        """``self(inner(z))``; requires ``inner`` to have no constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must vanish at 0")
        n = min(self.order, inner.order)
        out = SeriesPoly.from_coeffs([self[n]], n)
        for c in reversed(self.coeffs[:n]):
            out = out * inner + c
        return out

    def derivative(self) -> SeriesPoly:
        return SeriesPoly(
            tuple(k * self[k] for k in range(1, self.order + 1)) or (self[0] * 0,),
            max(self.order - 1, 0),
        )
