"""Exit criteria. Each test appends one PASS/FAIL line to the terminal summary."""
import time
from itertools import combinations

import numpy as np
import pytest

from foxcover import btz
from foxcover.cover import (
    UNIVERSAL,
    GaloisVerdict,
    PunctureConfig,
    QuotientSpec,
    deck_transitive_per_level,
    is_galoisian,
    quotient_levels,
    stabilizer,
    universal_levels,
)
from foxcover.fiber import OVERFLOW, Verdict, bonding_fiber_sizes, classify_fiber, enumerate_threads
from foxcover.homotopy import equivalence_mismatches
from foxcover.words import Word

from conftest import ACCEPTANCE_LINES
from oracles import all_reduced, closure_bruteforce

pytestmark = pytest.mark.acceptance


def record(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} | {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_1_cantor_fiber():
    t0 = time.perf_counter()
    N = 12
    cfg, q = PunctureConfig.canonical(N), QuotientSpec.z2_power(N)
    sys, action = quotient_levels(cfg, q, N)
    sizes = [sys.level_size(n) for n in range(1, N + 1)]
    transitive = deck_transitive_per_level(sys, action)
    seq = bonding_fiber_sizes(sys, 50, transitive, samples=10**6)
    verdict = classify_fiber(seq).verdict
    threads = enumerate_threads(sys, cap=2**N)
    elapsed = time.perf_counter() - t0
    ok = (
        sizes == [2**k for k in range(N)]
        and seq == [2] * (N - 1)
        and verdict is Verdict.CANTOR_LIKE
        and len(threads.threads) == 2 ** (N - 1)
        and elapsed < 5
    )
    record(1, "Cantor fiber (Z/2)^12", ok,
           f"sizes={sizes} N_n={seq} verdict={verdict.value} t={elapsed:.2f}s")


def _identity_fiber_formula(m_gens, cap):
    # reduced words over m generators ending in one fixed generator (either sign), plus the identity
    return 1 + sum(2 * (2 * m_gens - 1) ** (L - 1) for L in range(1, cap + 1))


def test_2_non_locally_compact():
    t0 = time.perf_counter()
    depth, cap = 5, 6
    cfg = PunctureConfig.canonical(depth)
    sys = universal_levels(cfg, depth, cap)
    seq = bonding_fiber_sizes(sys, 50, override=True)
    verdict = classify_fiber(seq).verdict
    formula = [_identity_fiber_formula(len(cfg.disc(n)), cap) for n in range(1, depth)]
    elapsed = time.perf_counter() - t0
    ok = (
        seq == [OVERFLOW] * (depth - 1)
        and all(f > 50 for f in formula)
        and verdict is Verdict.NON_LOCALLY_COMPACT
        and elapsed < 30
    )
    record(2, "Z^N-type fiber overflow", ok,
           f"N_n={seq} exact_fiber_sizes={formula} verdict={verdict.value} t={elapsed:.2f}s")


def _strict_chains(top, terminal):
    """Strictly decreasing chains of subsets from ``top`` down to ``terminal``."""
    if top == terminal:
        yield [terminal]
        return
    rest = sorted(top - terminal)
    for k in range(1, len(rest) + 1):
        for removed in combinations(rest, k):
            for tail in _strict_chains(top - frozenset(removed), terminal):
                yield [top] + tail


def finite_configs(max_punctures=4, tail=3):
    """Every disc schedule around a point with at most one puncture in its small discs."""
    for N in range(1, max_punctures + 1):
        allp = frozenset(range(1, N + 1))
        for terminal in [frozenset()] + [frozenset({j}) for j in allp]:
            tops = {frozenset(s) | terminal for k in range(N + 1) for s in combinations(sorted(allp), k)}
            for top in sorted(tops, key=sorted):
                for chain in _strict_chains(top, terminal):
                    yield PunctureConfig.finite(N, chain + [terminal] * tail)


def test_3_galois_dichotomy():
    t0 = time.perf_counter()
    configs = list(finite_configs())
    failures = []
    for cfg in configs:
        rep = is_galoisian(cfg, UNIVERSAL, cfg.max_depth, word_length_cap=3)
        cls = rep.classification
        tail = rep.n_sequence[cls.stationary_from - 1 :] if cls.stationary_from else []
        if not (
            cls.verdict is Verdict.STATIONARY_DISCRETE
            and tail and set(tail) == {1}
            and rep.galois_verdict is GaloisVerdict.GALOISIAN_EVIDENCE
        ):
            failures.append((cfg.to_json(), rep.n_sequence))
    acc = is_galoisian(PunctureConfig.canonical(6), UNIVERSAL, 6)
    elapsed = time.perf_counter() - t0
    ok = not failures and acc.galois_verdict is GaloisVerdict.NOT_GALOISIAN_EVIDENCE
    record(3, "Galois dichotomy", ok,
           f"finite configs={len(configs)} failures={len(failures)} "
           f"accumulating N_n={acc.n_sequence} -> {acc.galois_verdict.value} t={elapsed:.2f}s")


def test_4_fiber_path_agreement():
    t0 = time.perf_counter()
    cfg = PunctureConfig.canonical(4)
    sample = [Word._trusted(w) for w in all_reduced([1, 2, 3, 4], 3)]
    bad_u = equivalence_mismatches(sample, cfg, UNIVERSAL, 4)
    bad_q = equivalence_mismatches(sample, cfg, QuotientSpec.z2_power(4), 4)
    elapsed = time.perf_counter() - t0
    pairs = len(sample) * (len(sample) - 1) // 2
    ok = not bad_u and not bad_q and elapsed < 60
    record(4, "almost homotopy == endpoint threads", ok,
           f"words={len(sample)} pairs={pairs} mismatches universal={len(bad_u)} quotient={len(bad_q)} t={elapsed:.2f}s")


def test_5_deck_commutation_and_stabilizers():
    cfg, q = PunctureConfig.canonical(6), QuotientSpec.z2_power(6)
    grp = q.group
    sys, action = quotient_levels(cfg, q, 6)
    commute_fail = 0
    checks = 0
    for g in grp.elements():
        for n in range(1, 6):
            for y in sys.elements(n + 1):
                checks += 1
                if sys.bond(n, action.act(g, n + 1, y)) != action.act(g, n, sys.bond(n, y)):
                    commute_fail += 1
    stab_fail = []
    for n in range(1, 7):
        expected = closure_bruteforce(grp.mul, grp.identity, [q.images[k] for k in cfg.disc(n)])
        if stabilizer(sys, action, n, sys.basepoint(n)) != expected:
            stab_fail.append(n)
    ok = commute_fail == 0 and not stab_fail
    record(5, "deck/bond commutation, stabilizers (Z/2)^6", ok,
           f"commutation checks={checks} failures={commute_fail} stabilizer mismatched levels={stab_fail}")


def test_6_btz_suite():
    t0 = time.perf_counter()
    rep = btz.verify(samples=100_000, seed=42, pullback_points=1000)
    elapsed = time.perf_counter() - t0
    ok = (
        rep["roundtrip_max_err"] <= 1e-9
        and rep["equivariance_max_err"] <= 1e-12
        and rep["parabolic_check"]
        and rep["pullback_max_err"] <= 1e-7
        and rep["injectivity_violations"] == 0
        and rep["image_characterization"]
        and elapsed < 10
    )
    record(6, "BTZ numeric suite", ok,
           f"roundtrip={rep['roundtrip_max_err']:.2e} equivariance={rep['equivariance_max_err']:.2e} "
           f"pullback={rep['pullback_max_err']:.2e}(h={rep['pullback_step']}) "
           f"injectivity_violations={rep['injectivity_violations']} parabolic={rep['parabolic_check']} "
           f"image={rep['image_characterization']} t={elapsed:.2f}s")


def test_7_quotient_chart():
    rng = np.random.default_rng(2024)
    n = 10_000
    qs = btz.sample_cyl(rng, n)
    ps = btz.sample_cyl(rng, n)
    # half the pairs are genuine theta-shifts of each other, so coincidences are exercised
    shift = rng.integers(-3, 4, n)
    related = rng.random(n) < 0.5
    ps[related] = qs[related] + np.column_stack([np.zeros(n), np.zeros(n), 2 * np.pi * shift])[related]
    pairs = list(zip(ps, qs))
    bad = btz.quotient_chart_violations(pairs, range(-3, 4), tol=1e-9)
    record(7, "quotient chart", not bad,
           f"pairs={n} related={int(related.sum())} k=-3..3 violations={len(bad)}")
