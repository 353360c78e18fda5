"""Mean/max relative error of every variant over a range of sizes.

Writes the report CSV and a plot-ready series file, and prints the ordering
flags per size. Defaults reproduce the CDFT sweep 16..4096 with 50 trials.

    python scripts/accuracy_sweep.py --kind cdft --max-log2 12 --trials 50 --out results/
"""
import argparse
import pathlib
import warnings

from amqft.accuracy import ordering_check, reports_csv
from amqft.cli import plot_data_text


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kind", default="cdft")
    ap.add_argument("--min-log2", type=int, default=4)
    ap.add_argument("--max-log2", type=int, default=12)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()

    reports = []
    for e in range(args.min_log2, args.max_log2 + 1):
        N = 2**e
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = ordering_check(args.kind, N, args.trials, args.seed)
        reports.extend(res.reports)
        ranked = " ".join(f"v{v}:{err:.2e}" for v, err in res.ranked)
        print(f"N={N:5d} mixed_worse={res.mixed_worse} margin_ok={res.margin_ok} "
              f"v2_best={res.v2_best} ref_err={res.sanity.extended_err:.1e}  {ranked}")

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / f"accuracy_{args.kind}.csv").write_text(reports_csv(reports))
    (args.out / f"accuracy_{args.kind}.dat").write_text(plot_data_text(reports))
    print(f"wrote {args.out}/accuracy_{args.kind}.csv and .dat")


if __name__ == "__main__":
    main()
