"""Invariant-factor description of a finite abelian group."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class AbGroupInvariants:
    """Invariant factors ``d_1 | d_2 | ... `` of a finite abelian group, ascending."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(x) for x in self.factors)
        object.__setattr__(self, "factors", f)
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain: {f}")
        if any(x < 2 for x in f):
            raise ValueError(f"invariant factors must be >= 2: {f}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "AbGroupInvariants":
        """Normalize a list of cyclic orders (any order, 1s allowed)."""
        orders = [int(o) for o in orders if int(o) != 1]
        if any(o <= 0 for o in orders):
            raise ValueError("cyclic orders must be positive")
        return cls(tuple(_chain(orders)))

    def __str__(self) -> str:
        return " x ".join(f"Z/{d}" for d in self.factors) if self.factors else "0"


def _chain(orders: list[int]) -> list[int]:
    # gcd/lcm exchange: Z/a + Z/b = Z/gcd + Z/lcm
    ds = sorted(orders)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = math.gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
        ds = sorted(d for d in ds if d != 1)
    return ds
