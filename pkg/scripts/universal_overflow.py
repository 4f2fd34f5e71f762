"""Growth of the identity bonding fiber of the universal cover over the accumulating point.

For each word-length cap, counts level-(n+1) coset representatives over the
identity coset at level n. Unbounded growth in the cap is the finite-depth
signature of an infinite, non-locally-compact fiber.
"""
import argparse
from itertools import islice

from foxcover.cover import PunctureConfig, universal_levels
from foxcover.words import IDENTITY


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--max-cap", type=int, default=7)
    ap.add_argument("--limit", type=int, default=10**6, help="stop counting past this")
    args = ap.parse_args()
    cfg = PunctureConfig.canonical(args.depth)
    print("cap  " + "  ".join(f"N_{n:<8}" for n in range(1, args.depth)))
    for cap in range(1, args.max_cap + 1):
        sys = universal_levels(cfg, args.depth, cap)
        row = [sum(1 for _ in islice(sys.preimage(n, IDENTITY), args.limit)) for n in range(1, args.depth)]
        print(f"{cap:<4} " + "  ".join(f"{c:<10}" for c in row))


if __name__ == "__main__":
    main()
