"""Print the cost, flop and comparison tables from metered runs.

    python scripts/reproduce_tables.py [--max-log2 11] [--outdir results/]
"""
import argparse
import pathlib

from amqft.cli import TABLES, render, table_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-log2", type=int, default=11)
    ap.add_argument("--outdir", type=pathlib.Path)
    args = ap.parse_args()
    sizes = [2**e for e in range(2, args.max_log2 + 1)]
    for which in TABLES:
        header, rows = table_rows(which, sizes)
        text = render(header, rows, "csv")
        if args.outdir:
            args.outdir.mkdir(parents=True, exist_ok=True)
            (args.outdir / f"{which}.csv").write_text(text)
        print(f"== {which}")
        print(text)


if __name__ == "__main__":
    main()
