"""Branched coverings of planar puncture configurations.

The complement of ``N`` punctures in the plane has free fundamental group on
meridians ``g1 .. gN``. A neighborhood basis ``D_1 ⊇ D_2 ⊇ ...`` of the
point ``b`` is recorded only through which punctures each disc contains
(the disc schedule). For a cover with monodromy group ``G`` the level-n
fiber space is ``G / <g_k : k in D_n>`` and the fiber over ``b`` is the
limit of these levels.

- universal cover: ``G`` is the free group itself, levels are infinite and
  enumerated up to a word-length cap;
- quotient cover: ``G`` is a finite group ``Q`` given by a
  :class:`QuotientSpec`, levels are exact and ``Q`` acts by left translation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Hashable, Iterator, Mapping, Sequence

from .fiber import (
    FiberClassification,
    LevelSystem,
    NSize,
    Thread,
    Verdict,
    bonding_fiber_sizes,
    classify_fiber,
    fiber_report,
)
from .groups import FiniteGroup, TableGroup, Z2Power
from .words import IDENTITY, Word, coset_rep, reduced_words

UNIVERSAL = None


class ConfigError(ValueError):
    """A configuration that violates the schema or its invariants."""


@dataclass(frozen=True)
class PunctureConfig:
    punctures: int
    accumulating: bool
    disc_schedule: tuple[frozenset[int], ...]
    basepoint: str = "a"

    def __post_init__(self):
        if self.punctures < 1:
            raise ConfigError("need at least one puncture")
        sched = tuple(frozenset(d) for d in self.disc_schedule)
        object.__setattr__(self, "disc_schedule", sched)
        if not sched:
            raise ConfigError("disc_schedule must have at least one level")
        for n, d in enumerate(sched, start=1):
            bad = [k for k in d if not 1 <= k <= self.punctures]
            if bad:
                raise ConfigError(f"disc_schedule[{n - 1}]: punctures {bad} outside 1..{self.punctures}")
            if n > 1 and not d <= sched[n - 2]:
                raise ConfigError(f"disc_schedule[{n - 1}] is not contained in disc_schedule[{n - 2}]")
            if self.accumulating and not d:
                raise ConfigError(f"disc_schedule[{n - 1}] is empty in an accumulating configuration")

    @classmethod
    def canonical(cls, punctures: int) -> "PunctureConfig":
        """Punctures at (1/k, 0) accumulating at the origin.

        The disc of radius 1/(n - 1/2) about the origin holds exactly the
        punctures k >= n.
        """
        sched = tuple(frozenset(range(n, punctures + 1)) for n in range(1, punctures + 1))
        return cls(punctures, True, sched)

    @classmethod
    def finite(cls, punctures: int, disc_schedule: Sequence[Sequence[int]]) -> "PunctureConfig":
        return cls(punctures, False, tuple(frozenset(d) for d in disc_schedule))

    @property
    def max_depth(self) -> int:
        return len(self.disc_schedule)

    @property
    def generators(self) -> frozenset[int]:
        return frozenset(range(1, self.punctures + 1))

    def disc(self, n: int) -> frozenset[int]:
        """Puncture indices inside D_n (1-indexed)."""
        if not 1 <= n <= self.max_depth:
            raise IndexError(f"no disc D_{n}; schedule has {self.max_depth} levels")
        return self.disc_schedule[n - 1]

    def check_depth(self, depth: int) -> None:
        if not 1 <= depth <= self.max_depth:
            raise ValueError(f"depth {depth} outside 1..{self.max_depth}")

    def check_word(self, w: Word) -> None:
        bad = sorted(k for k in w.generators() if k > self.punctures)
        if bad:
            raise ValueError(f"word uses generators {bad} beyond {self.punctures} punctures")

    def to_json(self) -> dict:
        return {
            "punctures": self.punctures,
            "accumulating": self.accumulating,
            "disc_schedule": [sorted(d) for d in self.disc_schedule],
        }


@lru_cache(maxsize=256)
def _closure(group: FiniteGroup, gens: frozenset) -> frozenset:
    return group.closure(gens)


@dataclass(frozen=True, eq=False)
class QuotientSpec:
    """A surjection from the meridian free group onto a finite group."""

    group: FiniteGroup
    images: Mapping[int, int]

    def __post_init__(self):
        imgs = dict(self.images)
        for k, g in imgs.items():
            if not 0 <= g < self.group.order:
                raise ConfigError(f"image of g{k} is not a group element")
        object.__setattr__(self, "images", imgs)
        if _closure(self.group, frozenset(imgs.values())) != frozenset(self.group.elements()):
            raise ConfigError("generator images do not generate the group")

    @classmethod
    def z2_power(cls, m: int) -> "QuotientSpec":
        """``(Z/2)^m`` with ``g_k -> e_k``."""
        grp = Z2Power(m)
        return cls(grp, {k: grp.basis(k) for k in range(1, m + 1)})

    def image(self, w: Word) -> int:
        g = self.group.identity
        for a in w.letters:
            x = self.images[abs(a)]
            g = self.group.mul(g, x if a > 0 else self.group.inv(x))
        return g

    def subgroup(self, generators) -> frozenset[int]:
        """``<q(g_k) : k in generators>``."""
        return _closure(self.group, frozenset(self.images[k] for k in generators if k in self.images))

    def check_covers(self, cfg: PunctureConfig) -> None:
        missing = sorted(cfg.generators - set(self.images))
        if missing:
            raise ConfigError(f"quotient has no image for generators {missing}")


class UniversalLevels(LevelSystem):
    """``F / <g_k : k in D_n>`` enumerated over words of length <= ``word_length_cap``.

    Level elements are canonical coset representatives, i.e. reduced words
    whose last letter is not in ``D_n``.
    """

    exact = False

    def __init__(self, cfg: PunctureConfig, depth: int, word_length_cap: int):
        cfg.check_depth(depth)
        if word_length_cap < 1:
            raise ValueError("word_length_cap must be >= 1")
        self.cfg = cfg
        self.depth = depth
        self.word_length_cap = word_length_cap

    def elements(self, n: int) -> Iterator[Word]:
        self._check_level(n)
        H = self.cfg.disc(n)
        for w in reduced_words(self.cfg.generators, self.word_length_cap):
            if not w or abs(w.letters[-1]) not in H:
                yield w

    def contains(self, n: int, w: Word) -> bool:
        return len(w) <= self.word_length_cap and (not w or abs(w.letters[-1]) not in self.cfg.disc(n))

    def basepoint(self, n: int) -> Word:
        return IDENTITY

    def bond(self, n: int, y: Word) -> Word:
        return coset_rep(y, self.cfg.disc(n))

    def preimage(self, n: int, x: Word) -> Iterator[Word]:
        # y = x h with h in <D_n>; no cancellation since x does not end in D_n
        H, H_next = self.cfg.disc(n), self.cfg.disc(n + 1)
        yield x
        room = self.word_length_cap - len(x)
        for h in reduced_words(H, room, min_length=1):
            if abs(h.letters[-1]) not in H_next:
                yield Word._trusted(x.letters + h.letters)

    def label_json(self, x: Word) -> list[int]:
        return x.to_json()


class QuotientLevels(LevelSystem):
    """Exact levels ``Q / <q(g_k) : k in D_n>``; a coset is labelled by its least element."""

    def __init__(self, cfg: PunctureConfig, q: QuotientSpec, depth: int):
        cfg.check_depth(depth)
        q.check_covers(cfg)
        self.cfg, self.q, self.depth = cfg, q, depth
        grp = q.group
        self._label: list[list[int]] = []
        self._levels: list[tuple[int, ...]] = []
        for n in range(1, depth + 1):
            H = sorted(q.subgroup(cfg.disc(n)))
            label = [-1] * grp.order
            reps = []
            for g in grp.elements():
                if label[g] >= 0:
                    continue
                coset = [grp.mul(g, h) for h in H]
                # g is the least unlabelled element, hence least in its coset
                for c in coset:
                    label[c] = g
                reps.append(g)
            self._label.append(label)
            self._levels.append(tuple(reps))

    def elements(self, n: int) -> Iterator[int]:
        self._check_level(n)
        return iter(self._levels[n - 1])

    def level_size(self, n: int) -> int:
        return len(self._levels[n - 1])

    def coset_of(self, n: int, g: int) -> int:
        return self._label[n - 1][g]

    def contains(self, n: int, x: int) -> bool:
        return self._label[n - 1][x] == x

    def basepoint(self, n: int) -> int:
        return self.coset_of(n, self.q.group.identity)

    def bond(self, n: int, y: int) -> int:
        return self._label[n - 1][y]

    def label_json(self, x: int):
        return self.q.group.format(x)


@dataclass(frozen=True)
class DeckAction:
    """A group acting on every level of a system; ``generators`` generate the acting group."""

    act: Callable[[Any, int, Hashable], Hashable]
    generators: tuple
    group: FiniteGroup | None = None

    def restricted(self, generators) -> "DeckAction":
        return DeckAction(self.act, tuple(generators), self.group)


def quotient_levels(cfg: PunctureConfig, q: QuotientSpec, depth: int) -> tuple[QuotientLevels, DeckAction]:
    sys = QuotientLevels(cfg, q, depth)
    grp = q.group

    def act(g: int, n: int, x: int) -> int:
        return sys.coset_of(n, grp.mul(g, x))

    gens = tuple(sorted(set(q.images.values())))
    return sys, DeckAction(act, gens, grp)


def universal_levels(cfg: PunctureConfig, depth: int, word_length_cap: int) -> UniversalLevels:
    return UniversalLevels(cfg, depth, word_length_cap)


def universal_action(sys: UniversalLevels) -> DeckAction:
    """Left multiplication of the free group on coset representatives."""

    def act(g: Word, n: int, x: Word) -> Word:
        return coset_rep(g * x, sys.cfg.disc(n))

    gens = tuple(Word([k]) for k in sorted(sys.cfg.generators))
    return DeckAction(act, gens)


def orbit_counts(sys: LevelSystem, action: DeckAction) -> list[int]:
    """Number of orbits per level.

    On partial systems an edge ``x -> g.x`` is only followed when ``g.x`` lies
    inside the enumeration.
    """
    counts = []
    for n in range(1, sys.depth + 1):
        elems = list(sys.elements(n))
        parent = {x: x for x in elems}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        components = len(elems)
        inverses = () if action.group is not None else tuple(g.inverse() for g in action.generators)
        for x in elems:
            for g in action.generators + inverses:
                y = action.act(g, n, x)
                if not sys.exact and not sys.contains(n, y):
                    continue
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
                    components -= 1
        counts.append(components)
    return counts


def deck_transitive_per_level(sys: LevelSystem, action: DeckAction) -> list[bool]:
    return [c == 1 for c in orbit_counts(sys, action)]


def stabilizer(sys: LevelSystem, action: DeckAction, n: int, x: Hashable) -> frozenset:
    """Brute-force stabilizer of a level element in a finite deck group."""
    if action.group is None:
        raise ValueError("stabilizer needs a finite deck group")
    return frozenset(g for g in action.group.elements() if action.act(g, n, x) == x)


def lift_endpoint(w: Word, cfg: PunctureConfig, q: QuotientSpec | None, depth: int) -> Thread:
    """Endpoint of the lift of the path-word ``w``: its coset at every level.

    Computed level by level from the definition, without going through a
    level system's bonding maps.
    """
    cfg.check_depth(depth)
    cfg.check_word(w)
    if q is None:
        return Thread(tuple(coset_rep(w, cfg.disc(n)) for n in range(1, depth + 1)))
    g = q.image(w)
    grp = q.group
    return Thread(tuple(min(grp.mul(g, h) for h in q.subgroup(cfg.disc(n))) for n in range(1, depth + 1)))


class GaloisVerdict(str, enum.Enum):
    GALOISIAN_EVIDENCE = "GALOISIAN_EVIDENCE"
    NOT_GALOISIAN_EVIDENCE = "NOT_GALOISIAN_EVIDENCE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class GaloisReport:
    system: LevelSystem
    n_sequence: list[NSize]
    classification: FiberClassification
    orbit_counts: list[int]
    thread_count: NSize
    galois_verdict: GaloisVerdict

    def to_json(self, **report_kw) -> dict:
        rep = fiber_report(self.system, self.n_sequence, **report_kw)
        rep["galois_verdict"] = self.galois_verdict.value
        rep["orbit_counts"] = list(self.orbit_counts)
        return rep


def is_galoisian(
    cfg: PunctureConfig,
    q: QuotientSpec | None,
    depth: int,
    *,
    word_length_cap: int = 4,
    sample_cap: int = 50,
) -> GaloisReport:
    """Evidence-level Galois test at finite depth.

    A stationary bonding sequence means a discrete fiber, on which the dense
    deck orbits are everything. Overflowing or Cantor-like bonding fibers mean
    an uncountable fiber that a countable deck group cannot act on
    transitively.
    """
    if q is None:
        sys = universal_levels(cfg, depth, word_length_cap)
        action = universal_action(sys)
    else:
        sys, action = quotient_levels(cfg, q, depth)
    orbits = orbit_counts(sys, action)
    seq = bonding_fiber_sizes(sys, sample_cap, [c == 1 for c in orbits])
    if depth > 1:
        cls = classify_fiber(seq)
    else:
        cls = FiberClassification(Verdict.INCONCLUSIVE, ())
    threads = sys.level_size(depth)

    if cls.verdict is Verdict.STATIONARY_DISCRETE:
        verdict = GaloisVerdict.GALOISIAN_EVIDENCE
    elif cls.verdict is Verdict.NON_LOCALLY_COMPACT:
        verdict = GaloisVerdict.NOT_GALOISIAN_EVIDENCE
    elif cls.verdict is Verdict.CANTOR_LIKE and orbits[-1] < threads:
        verdict = GaloisVerdict.NOT_GALOISIAN_EVIDENCE
    else:
        verdict = GaloisVerdict.INCONCLUSIVE
    return GaloisReport(sys, seq, cls, orbits, threads, verdict)


def parse_quotient(spec: Mapping | None, cfg: PunctureConfig) -> QuotientSpec | None:
    """Build a :class:`QuotientSpec` from its JSON form, or None for the universal cover.

    ``{"type": "Z2^m", "m": 6, "images": {"1": [1,0,0,0,0,0], ...}}`` (images
    default to ``g_k -> e_k``) or ``{"type": "table", "table": [[...]],
    "images": {"1": 1, ...}}``.
    """
    if spec is None:
        return None
    kind = spec.get("type")
    if kind == "Z2^m":
        m = spec.get("m", cfg.punctures)
        grp = Z2Power(m)
        if "images" in spec:
            images = {int(k): grp.from_bits(v) if isinstance(v, list) else int(v) for k, v in spec["images"].items()}
        else:
            if m < cfg.punctures:
                raise ConfigError("default images g_k -> e_k need m >= punctures")
            images = {k: grp.basis(k) for k in range(1, cfg.punctures + 1)}
    elif kind == "table":
        grp = TableGroup(spec["table"])
        images = {int(k): int(v) for k, v in spec["images"].items()}
    else:
        raise ConfigError(f"quotient.type must be 'Z2^m' or 'table', got {kind!r}")
    q = QuotientSpec(grp, images)
    q.check_covers(cfg)
    return q


def parse_config(data: Mapping) -> tuple[PunctureConfig, QuotientSpec | None]:
    """Config JSON -> (configuration, quotient or None). Accumulating configs may omit the schedule."""
    n = data["punctures"]
    acc = data.get("accumulating", False)
    if "disc_schedule" in data and data["disc_schedule"] is not None:
        cfg = PunctureConfig(n, acc, tuple(frozenset(d) for d in data["disc_schedule"]))
    elif acc:
        cfg = PunctureConfig.canonical(n)
    else:
        raise ConfigError("disc_schedule is required for non-accumulating configurations")
    return cfg, parse_quotient(data.get("quotient"), cfg)
