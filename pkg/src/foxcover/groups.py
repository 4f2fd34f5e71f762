"""Small finite groups with elements encoded as integers ``0 .. order-1``."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


class FiniteGroup:
    order: int
    identity: int

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``gens``."""
        gens = [g for g in set(gens) if g != self.identity]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def format(self, a: int):
        return a


class Z2Power(FiniteGroup):
    """``(Z/2)^m``; element ``a`` has bit ``i`` set iff coordinate ``i+1`` is 1."""

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("m must be non-negative")
        self.m = m
        self.order = 1 << m
        self.identity = 0

    def mul(self, a: int, b: int) -> int:
        return a ^ b

    def inv(self, a: int) -> int:
        return a

    def basis(self, i: int) -> int:
        """The unit vector e_i, 1-indexed."""
        if not 1 <= i <= self.m:
            raise ValueError(f"e_{i} not in (Z/2)^{self.m}")
        return 1 << (i - 1)

    def from_bits(self, bits: Sequence[int]) -> int:
        if len(bits) != self.m or any(b not in (0, 1) for b in bits):
            raise ValueError(f"expected {self.m} bits, got {bits!r}")
        return sum(b << i for i, b in enumerate(bits))

    def format(self, a: int) -> list[int]:
        return [(a >> i) & 1 for i in range(self.m)]

    def __repr__(self) -> str:
        return f"Z2Power({self.m})"


class TableGroup(FiniteGroup):
    """A group given by its Cayley table; the group axioms are checked on construction."""

    def __init__(self, table: Sequence[Sequence[int]]):
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise ValueError("multiplication table must be a non-empty square")
        t = [list(row) for row in table]
        for row in t:
            if sorted(row) != list(range(n)):
                raise ValueError("each table row must be a permutation of 0..n-1")
        idents = [e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))]
        if not idents:
            raise ValueError("table has no identity element")
        e = idents[0]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise ValueError(f"table is not associative at {(a, b, c)}")
        self.table = t
        self.order = n
        self.identity = e
        self._inv = [t[a].index(e) for a in range(n)]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    @classmethod
    def cyclic(cls, n: int) -> "TableGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    def __repr__(self) -> str:
        return f"TableGroup(order={self.order})"
