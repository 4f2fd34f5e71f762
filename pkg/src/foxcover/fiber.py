"""Truncated projective limits of discrete levels.

A :class:`LevelSystem` holds levels ``1 .. depth`` and bonding maps
``bond(n): level n+1 -> level n``. A fiber point is a :class:`Thread`, one
element per level compatible with the bonds. At finite depth the shape of
the limit is read off the bonding-fiber sizes ``N_n`` (see
:func:`classify_fiber`).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import islice
from typing import Any, Hashable, Iterable, Iterator, Mapping, Sequence, Union

OVERFLOW = "OVERFLOW"
NSize = Union[int, str]


class FiberError(Exception):
    pass


class CapExceeded(FiberError):
    """More threads than the requested cap; ``partial`` holds the first ``cap``."""

    def __init__(self, cap: int, partial: frozenset):
        super().__init__(f"truncated fiber has more than {cap} threads")
        self.cap = cap
        self.partial = partial


class NotHomogeneous(FiberError):
    def __init__(self, level: int, sizes: Mapping[Any, int]):
        super().__init__(f"bonding fibers over level {level} have different sizes: {sorted(set(sizes.values()))}")
        self.level = level
        self.sizes = dict(sizes)


class Verdict(str, enum.Enum):
    STATIONARY_DISCRETE = "STATIONARY_DISCRETE"
    CANTOR_LIKE = "CANTOR_LIKE"
    NON_LOCALLY_COMPACT = "NON_LOCALLY_COMPACT"
    INCONCLUSIVE = "INCONCLUSIVE"


class LevelSystem:
    """Base class for a finite-depth filtered system of discrete levels.

    Subclasses provide :meth:`elements` and :meth:`bond`; :meth:`preimage`
    falls back to a scan of the level above. ``exact`` is False when the
    levels are partial enumerations of infinite sets.
    """

    depth: int
    exact: bool = True

    def elements(self, n: int) -> Iterator[Hashable]:
        raise NotImplementedError

    def bond(self, n: int, y: Hashable) -> Hashable:
        raise NotImplementedError

    def basepoint(self, n: int) -> Hashable:
        return next(iter(self.elements(n)))

    def preimage(self, n: int, x: Hashable) -> Iterator[Hashable]:
        return (y for y in self.elements(n + 1) if self.bond(n, y) == x)

    def project(self, n: int, m: int, y: Hashable) -> Hashable:
        """Image of a level-``n`` element at level ``m <= n``."""
        for k in range(n - 1, m - 1, -1):
            y = self.bond(k, y)
        return y

    def level_size(self, n: int) -> int:
        return sum(1 for _ in self.elements(n))

    def label_json(self, x: Hashable) -> Any:
        return x

    def _check_level(self, n: int) -> None:
        if not 1 <= n <= self.depth:
            raise IndexError(f"level {n} outside 1..{self.depth}")


class FiniteLevelSystem(LevelSystem):
    """Levels given explicitly as collections, bonds as mappings."""

    def __init__(self, levels: Sequence[Iterable[Hashable]], bonds: Sequence[Mapping[Hashable, Hashable]]):
        if len(bonds) != max(len(levels) - 1, 0):
            raise ValueError("need exactly depth-1 bonding maps")
        self._levels = [tuple(dict.fromkeys(lv)) for lv in levels]
        self._bonds = [dict(b) for b in bonds]
        self.depth = len(self._levels)
        for n, b in enumerate(self._bonds, start=1):
            lower = set(self._levels[n - 1])
            for y in self._levels[n]:
                if y not in b:
                    raise ValueError(f"bond {n} is not defined on {y!r}")
                if b[y] not in lower:
                    raise ValueError(f"bond {n} sends {y!r} outside level {n}")

    def elements(self, n: int) -> Iterator[Hashable]:
        self._check_level(n)
        return iter(self._levels[n - 1])

    def bond(self, n: int, y: Hashable) -> Hashable:
        return self._bonds[n - 1][y]

    def level_size(self, n: int) -> int:
        return len(self._levels[n - 1])


@dataclass(frozen=True)
class Thread:
    choices: tuple  # choices[i] lives at level i+1

    def at(self, n: int) -> Hashable:
        return self.choices[n - 1]

    def truncate(self, depth: int) -> "Thread":
        return Thread(self.choices[:depth])

    @property
    def depth(self) -> int:
        return len(self.choices)


@dataclass(frozen=True)
class ThreadEnumeration:
    threads: frozenset
    exhaustive: bool


def thread_through(sys: LevelSystem, top: Hashable) -> Thread:
    """The unique thread ending at a top-level element."""
    choices = [top]
    for n in range(sys.depth - 1, 0, -1):
        choices.append(sys.bond(n, choices[-1]))
    return Thread(tuple(reversed(choices)))


def is_consistent(sys: LevelSystem, thread: Thread) -> bool:
    return all(sys.bond(n, thread.at(n + 1)) == thread.at(n) for n in range(1, thread.depth))


def enumerate_threads(sys: LevelSystem, cap: int) -> ThreadEnumeration:
    """All threads of the truncated system.

    Raises :class:`CapExceeded` when there are more than ``cap`` of them.
    ``exhaustive`` is False whenever the levels themselves are partial.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    threads = []
    for top in sys.elements(sys.depth):
        if len(threads) == cap:
            raise CapExceeded(cap, frozenset(threads))
        threads.append(thread_through(sys, top))
    return ThreadEnumeration(frozenset(threads), exhaustive=sys.exact)


def _capped_count(it: Iterable, cap: int) -> NSize:
    n = sum(1 for _ in islice(it, cap + 1))
    return OVERFLOW if n > cap else n


def bonding_fiber_sizes(
    sys: LevelSystem,
    sample_cap: int,
    transitive: Sequence[bool] | None = None,
    *,
    override: bool = False,
    samples: int = 4,
) -> list[NSize]:
    """``N_n = #bond(n)^-1(x)`` for ``n = 1 .. depth-1``, or OVERFLOW past ``sample_cap``.

    ``N_n`` only makes sense when a deck group acts transitively on every
    level; pass the per-level certificate from ``deck_transitive_per_level``
    or ``override=True``. On exact systems up to ``samples`` elements per
    level are compared and a mismatch raises :class:`NotHomogeneous` unless
    overridden. Partial systems are measured at the basepoint only, since
    elements near the enumeration boundary have artificially small fibers.
    """
    if transitive is None and not override:
        raise ValueError("bonding_fiber_sizes needs a transitivity certificate or override=True")
    if transitive is not None and len(transitive) < sys.depth - 1:
        raise ValueError("certificate must cover every level")
    out: list[NSize] = []
    for n in range(1, sys.depth):
        if sys.exact:
            xs = list(islice(sys.elements(n), samples))
        else:
            xs = [sys.basepoint(n)]
        sizes = {x: _capped_count(sys.preimage(n, x), sample_cap) for x in xs}
        if len(set(sizes.values())) > 1 and not override:
            raise NotHomogeneous(n, sizes)
        out.append(sizes[xs[0]])
    return out


@dataclass(frozen=True)
class FiberClassification:
    verdict: Verdict
    n_sequence: tuple
    stationary_from: int | None = None


_MIN_STATIONARY_TAIL = 3


def classify_fiber(n_sequence: Sequence[NSize]) -> FiberClassification:
    """Evidence-level shape of the limit from observed bonding-fiber sizes.

    Rules are applied in order: a tail of at least three 1's gives
    STATIONARY_DISCRETE (the limit equals a finite level); all 2's gives
    CANTOR_LIKE; any OVERFLOW gives NON_LOCALLY_COMPACT; anything else is
    INCONCLUSIVE.
    """
    seq = tuple(n_sequence)
    if not seq:
        raise ValueError("empty n_sequence")
    start = len(seq)
    while start > 0 and seq[start - 1] == 1:
        start -= 1
    if len(seq) - start >= _MIN_STATIONARY_TAIL:
        return FiberClassification(Verdict.STATIONARY_DISCRETE, seq, stationary_from=start + 1)
    if all(v == 2 for v in seq):
        return FiberClassification(Verdict.CANTOR_LIKE, seq)
    if any(v == OVERFLOW for v in seq):
        return FiberClassification(Verdict.NON_LOCALLY_COMPACT, seq)
    return FiberClassification(Verdict.INCONCLUSIVE, seq)


def fiber_report(
    sys: LevelSystem,
    n_sequence: Sequence[NSize],
    *,
    thread_cap: int = 1000,
    sample_size: int = 8,
    size_cap: int | None = None,
) -> dict:
    """JSON-ready report. ``size_cap`` bounds level counting on partial systems."""
    sizes: list[NSize] = []
    for n in range(1, sys.depth + 1):
        if size_cap is None or sys.exact:
            sizes.append(sys.level_size(n))
        else:
            sizes.append(_capped_count(sys.elements(n), size_cap))
    cls = classify_fiber(n_sequence) if n_sequence else None
    sample = []
    for top in islice(sys.elements(sys.depth), min(sample_size, thread_cap)):
        th = thread_through(sys, top)
        sample.append([sys.label_json(x) for x in th.choices])
    return {
        "depth": sys.depth,
        "level_sizes": sizes,
        "n_sequence": list(n_sequence),
        "verdict": cls.verdict.value if cls else Verdict.INCONCLUSIVE.value,
        "threads_sample": sample,
    }
