"""Run both decisions on the bundled datasets and print a short summary."""
from pathlib import Path

from coneproc.informativity import DecideOptions, decide_nullcontrollability, decide_reachability
from coneproc.io import load_dataset

DATA = Path(__file__).resolve().parents[1] / "data"


def main() -> None:
    for name in ("example2.json", "example3.json"):
        d, _ = load_dataset(DATA / name)
        print(f"== {name}: n={d.n}, {d.T} pairs")
        for opts in (DecideOptions(), DecideOptions(fallback=False)):
            r = decide_reachability(d, opts)
            tag = "" if opts.fallback else " (no fallback)"
            print(f"  reachability{tag}: {r.verdict} via {r.path} ({r.reason})")
            if r.oracle is not None:
                print("    oracle chain: " + " -> ".join(c.describe() for c in r.oracle.chain))
        r = decide_nullcontrollability(d)
        print(f"  null-controllability: {r.verdict} ({r.reason})")
        Z, W = r.matrices["Z"], r.matrices["W"]
        print(f"  Z = {Z}\n  W = {W}")


if __name__ == "__main__":
    main()
