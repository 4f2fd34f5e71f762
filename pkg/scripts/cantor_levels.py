"""Level sizes and bonding degrees of the (Z/2)^N quotient over the accumulating configuration."""
import argparse
import json
import time

from foxcover.cover import PunctureConfig, QuotientSpec, is_galoisian


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=14)
    args = ap.parse_args()
    for n in range(2, args.max_n + 1):
        t0 = time.perf_counter()
        rep = is_galoisian(PunctureConfig.canonical(n), QuotientSpec.z2_power(n), n)
        sizes = [rep.system.level_size(k) for k in range(1, n + 1)]
        print(json.dumps({
            "N": n,
            "level_sizes": sizes,
            "n_sequence": rep.n_sequence,
            "verdict": rep.classification.verdict.value,
            "galois_verdict": rep.galois_verdict.value,
            "seconds": round(time.perf_counter() - t0, 3),
        }))


if __name__ == "__main__":
    main()
