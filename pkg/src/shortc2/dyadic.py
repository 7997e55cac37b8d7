"""Elements k/d^n of Z[1/d], kept in lowest terms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _reduce(k: int, n: int, d: int) -> tuple[int, int]:
    if k == 0:
        return 0, 0
    while n > 0 and k % d == 0:
        k //= d
        n -= 1
    return k, n


@dataclass(frozen=True, init=False)
class DyadicClass:
    k: int
    n: int
    d: int

    def __init__(self, k: int, n: int = 0, d: int = 2):
        if d < 2:
            raise ValueError("base must be at least 2")
        if n < 0:
            k, n = k * d ** (-n), 0
        k, n = _reduce(int(k), int(n), int(d))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", int(d))

    @classmethod
    def from_fraction(cls, value: Fraction, d: int) -> "DyadicClass":
        value = Fraction(value)
        den, n = value.denominator, 0
        scale = 1
        while den > scale:
            scale *= d
            n += 1
        if scale % den:
            raise ValueError(f"{value} is not in Z[1/{d}]")
        return cls(value.numerator * (scale // den), n, d)

    def as_fraction(self) -> Fraction:
        return Fraction(self.k, self.d**self.n)

    def __float__(self) -> float:
        return self.k / self.d**self.n

    def _check(self, other: "DyadicClass"):
        if not isinstance(other, DyadicClass) or other.d != self.d:
            raise TypeError("dyadic classes over different bases")

    def __add__(self, other: "DyadicClass") -> "DyadicClass":
        self._check(other)
        n = max(self.n, other.n)
        return DyadicClass(self.k * self.d ** (n - self.n) + other.k * self.d ** (n - other.n), n, self.d)

    def __neg__(self) -> "DyadicClass":
        return DyadicClass(-self.k, self.n, self.d)

    def __sub__(self, other: "DyadicClass") -> "DyadicClass":
        return self + (-other)

    def __mul__(self, m: int) -> "DyadicClass":
        return DyadicClass(self.k * int(m), self.n, self.d)

    __rmul__ = __mul__

    def scaled(self, power: int) -> "DyadicClass":
        """Multiply by d^power (power may be negative)."""
        if power >= 0:
            return DyadicClass(self.k * self.d**power, self.n, self.d)
        return DyadicClass(self.k, self.n - power, self.d)

    def mod_one(self) -> "DyadicClass":
        return DyadicClass(self.k % self.d**self.n, self.n, self.d)

    def is_integer(self) -> bool:
        return self.n == 0

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n}

    @classmethod
    def from_json(cls, data: dict, d: int) -> "DyadicClass":
        return cls(int(data["k"]), int(data["n"]), d)

    def __str__(self) -> str:
        return str(self.k) if self.n == 0 else f"{self.k}/{self.d}^{self.n}"
