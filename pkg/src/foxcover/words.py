"""Reduced words in a free group on indexed meridian generators.

A word is stored as a tuple of non-zero signed integers: ``(5, -2, 1)`` is
``g5 g2^-1 g1``. This is also the JSON wire format.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

GeneratorSet = frozenset  # of positive generator indices


class Word:
    """An immutable reduced word. Construct through :func:`reduce` or ``Word(...)``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        object.__setattr__(self, "letters", _free_reduce(_check_letters(letters)))

    @classmethod
    def _trusted(cls, letters: tuple[int, ...]) -> "Word":
        # caller guarantees letters are already reduced
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.letters) < (len(other), other.letters)

    def __repr__(self) -> str:
        return f"Word({list(self.letters)})"

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"g{abs(a)}" if a > 0 else f"g{abs(a)}^-1" for a in self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def generators(self) -> frozenset[int]:
        return frozenset(abs(a) for a in self.letters)

    def to_json(self) -> list[int]:
        return list(self.letters)


IDENTITY = Word._trusted(())


def _check_letters(letters: Iterable) -> list[int]:
    out = []
    for a in letters:
        if isinstance(a, tuple):
            k, s = a
            if k < 1 or s not in (1, -1):
                raise ValueError(f"bad letter {a!r}")
            a = k * s
        if isinstance(a, bool) or not isinstance(a, int) or a == 0:
            raise ValueError(f"bad letter {a!r}: generator indices are non-zero integers")
        out.append(a)
    return out


def _free_reduce(letters: Sequence[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def reduce(raw: Iterable) -> Word:
    """Freely reduce a sequence of letters.

    Letters are signed integers or ``(index, sign)`` pairs.
    """
    return Word(raw)


def multiply(a: Word, b: Word) -> Word:
    i = 0
    la, lb = a.letters, b.letters
    n = min(len(la), len(lb))
    while i < n and la[-1 - i] == -lb[i]:
        i += 1
    return Word._trusted(la[: len(la) - i] + lb[i:])


def invert(a: Word) -> Word:
    return Word._trusted(tuple(-x for x in reversed(a.letters)))


def coset_rep(w: Word, H: Iterable[int]) -> Word:
    """Canonical representative of the right coset ``w <g_k : k in H>``.

    Strips the longest suffix of ``w`` whose letters all lie in ``H``.
    Since ``<g_k : k in H>`` is a free factor, two reduced words share a
    coset exactly when these stripped prefixes agree.
    """
    H = H if isinstance(H, (set, frozenset)) else frozenset(H)
    letters = w.letters
    end = len(letters)
    while end and abs(letters[end - 1]) in H:
        end -= 1
    if end == len(letters):
        return w
    return Word._trusted(letters[:end])


def in_free_factor(w: Word, H: Iterable[int]) -> bool:
    """Membership of a reduced word in the subgroup generated by ``{g_k : k in H}``."""
    H = H if isinstance(H, (set, frozenset)) else frozenset(H)
    return all(abs(a) in H for a in w.letters)


def reduced_words(generators: Iterable[int], max_length: int, min_length: int = 0) -> Iterator[Word]:
    """All reduced words over ``generators`` by increasing length."""
    gens = sorted(set(generators))
    alphabet = [s * k for k in gens for s in (1, -1)]
    if min_length == 0:
        yield IDENTITY
    layer: list[tuple[int, ...]] = [()]
    for length in range(1, max_length + 1):
        layer = [w + (a,) for w in layer for a in alphabet if not w or w[-1] != -a]
        if length >= min_length:
            for w in layer:
                yield Word._trusted(w)
