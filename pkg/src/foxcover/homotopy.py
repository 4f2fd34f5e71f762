"""Almost homotopy of path-words ending at the branch point.

Two paths from the basepoint ending at ``b`` are almost homotopic when
their difference loop can be pushed, within its homotopy class, into every
small neighborhood of ``b``. In the meridian model that is the subgroup
membership test ``w1^-1 w2 in <g_k : k in D_n>`` at every level ``n``.
The test is computed here on the difference loop alone; :func:`lift_endpoint`
computes the fiber side from each word's own cosets, and
:func:`equivalence_check` compares the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union

from .cover import PunctureConfig, QuotientSpec, lift_endpoint
from .words import IDENTITY, Word, in_free_factor, invert, multiply

LIMIT_POINT = "LIMIT_POINT"


class TargetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PathWord:
    word: Word
    target: Union[str, int] = LIMIT_POINT


def _as_path(p) -> PathWord:
    return p if isinstance(p, PathWord) else PathWord(p)


def _loop_in_level(loop: Word, cfg: PunctureConfig, q: QuotientSpec | None, n: int) -> bool:
    if q is None:
        return in_free_factor(loop, cfg.disc(n))
    return q.image(loop) in q.subgroup(cfg.disc(n))


def separating_level(p1, p2, cfg: PunctureConfig, depth: int, q: QuotientSpec | None = None) -> int | None:
    """First level at which the two paths end in different components, or None."""
    p1, p2 = _as_path(p1), _as_path(p2)
    if p1.target != p2.target:
        raise TargetMismatch(f"paths end at {p1.target!r} and {p2.target!r}")
    cfg.check_depth(depth)
    loop = multiply(invert(p1.word), p2.word)
    # the discs are nested, so once separated always separated
    for n in range(1, depth + 1):
        if not _loop_in_level(loop, cfg, q, n):
            return n
    return None


def almost_homotopic(p1, p2, cfg: PunctureConfig, depth: int, q: QuotientSpec | None = None) -> bool:
    """True means equivalent up to ``depth`` (evidence); False is conclusive."""
    return separating_level(p1, p2, cfg, depth, q) is None


def almost_trivial(loop: Word, cfg: PunctureConfig, depth: int, q: QuotientSpec | None = None) -> bool:
    return separating_level(IDENTITY, loop, cfg, depth, q) is None


def equivalence_mismatches(
    sample: Iterable, cfg: PunctureConfig, q: QuotientSpec | None, depth: int
) -> list[tuple[PathWord, PathWord]]:
    """Pairs where almost homotopy and equality of lifted endpoints disagree."""
    paths = [_as_path(p) for p in sample]
    ends = {p: lift_endpoint(p.word, cfg, q, depth) for p in paths}
    bad = []
    for p1, p2 in combinations(paths, 2):
        if p1.target != p2.target:
            continue
        if almost_homotopic(p1, p2, cfg, depth, q) != (ends[p1] == ends[p2]):
            bad.append((p1, p2))
    return bad


def equivalence_check(sample: Iterable, cfg: PunctureConfig, q: QuotientSpec | None, depth: int) -> bool:
    return not equivalence_mismatches(sample, cfg, q, depth)
