#!/usr/bin/env python3
"""Plot the per-rank delay ECDFs written by `chsplice simulate` (ecdf.csv).

Usage: plot_ecdf.py RUN_DIR [RUN_DIR ...] [-o ecdf.png] [--truth-ns 0,12.5] [--xlim=-10,60]

Each run directory contributes one step curve per rank; pass several to
compare band plans or subset fractions on one figure.
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def load(run_dir: Path) -> pd.DataFrame:
    df = pd.read_csv(run_dir / "ecdf.csv")
    expected = ["rank", "delay_ns", "probability"]
    if list(df.columns) != expected:
        raise SystemExit(f"{run_dir}/ecdf.csv: expected columns {expected}, got {list(df.columns)}")
    return df


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("runs", nargs="+", type=Path)
    ap.add_argument("-o", "--output", type=Path, default=Path("ecdf.png"))
    ap.add_argument("--truth-ns", default="", help="comma-separated true delays to mark")
    ap.add_argument("--xlim", default="", help="x range in ns as LO,HI; estimates wrapped to the end of the 1/f_s period fall outside a tight range")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for run in args.runs:
        df = load(run)
        for rank, grp in df.groupby("rank"):
            x = [grp["delay_ns"].iloc[0]] + grp["delay_ns"].tolist()
            y = [0.0] + grp["probability"].tolist()
            ax.step(x, y, where="post", label=f"{run.name} path {rank + 1}")
    for t in filter(None, args.truth_ns.split(",")):
        ax.axvline(float(t), color="k", linestyle=":", linewidth=1)
    ax.set_xlabel("estimated delay [ns]")
    ax.set_ylabel("ECDF")
    ax.set_ylim(0, 1.02)
    if args.xlim:
        lo, hi = (float(v) for v in args.xlim.split(","))
        ax.set_xlim(lo, hi)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
