#!/usr/bin/env python3
"""Summarize and plot delay errors from `chsplice simulate` (peaks.csv).

Usage: plot_peaks.py RUN_DIR [RUN_DIR ...] [-o peaks.png]

Prints, per run and true path, the share of packets matched and within 1 and 3
wideband samples, and draws a histogram of the signed errors per path.
Missed paths are counted but not drawn.
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

COLUMNS = ["packet", "path", "true_delay_ns", "est_delay_ns", "error_samples", "matched"]


def load(run_dir: Path) -> pd.DataFrame:
    df = pd.read_csv(run_dir / "peaks.csv")
    if list(df.columns) != COLUMNS:
        raise SystemExit(f"{run_dir}/peaks.csv: expected columns {COLUMNS}, got {list(df.columns)}")
    return df


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("runs", nargs="+", type=Path)
    ap.add_argument("-o", "--output", type=Path, default=Path("peaks.png"))
    args = ap.parse_args()

    frames = {run: load(run) for run in args.runs}
    n_paths = max(int(df["path"].max()) + 1 for df in frames.values())
    fig, axes = plt.subplots(1, n_paths, figsize=(4 * n_paths, 3.5), squeeze=False)

    print(f"{'run':30s} {'path':>4s} {'true_ns':>9s} {'matched':>8s} {'<=1':>6s} {'<=3':>6s}")
    for run, df in frames.items():
        for path, grp in df.groupby("path"):
            err = grp["error_samples"].abs()
            total = len(grp)
            print(
                f"{run.name:30s} {path:4d} {grp['true_delay_ns'].iloc[0]:9.3f} "
                f"{grp['matched'].mean():8.2%} {(err <= 1).sum() / total:6.2%} {(err <= 3).sum() / total:6.2%}"
            )
            errors = grp.loc[grp["matched"] == 1, "error_samples"].to_numpy()
            if errors.size:
                lim = max(1.0, float(np.ceil(np.abs(errors).max())))
                axes[0][path].hist(errors, bins=np.linspace(-lim, lim, 41), alpha=0.6, label=run.name)

    for path, ax in enumerate(axes[0]):
        ax.set_title(f"path {path + 1}")
        ax.set_xlabel("delay error [wideband samples]")
        ax.grid(True, alpha=0.3)
    axes[0][0].set_ylabel("packets")
    axes[0][-1].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
