"""Run the BTZ numeric suite over several seeds and finite-difference steps."""
import argparse
import json

from foxcover import btz


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 42])
    ap.add_argument("--steps", type=float, nargs="+", default=[1e-5, 1e-4, 1e-3])
    args = ap.parse_args()
    for seed in args.seeds:
        for h in args.steps:
            rep = btz.verify(samples=args.samples, seed=seed, h=h)
            print(json.dumps({k: rep[k] for k in (
                "seed", "pullback_step", "roundtrip_max_err", "equivariance_max_err",
                "pullback_max_err", "injectivity_violations", "parabolic_check",
            )}))


if __name__ == "__main__":
    main()
