"""Figures from a sweep CSV: ``ffgrowth-plot sweep.csv --out-dir figs``.

Kept apart from the ``ffgrowth`` CLI, which only emits delimited data.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

SIZE_COLUMNS = (
    ("delta", "|(A-A)^2+(A-A)^2|", 1 + 1 / 21),
    ("size_sum", "|A+A|", None),
    ("size_sq_sum", "|A^2+A^2|", None),
    ("size_shift", "|A+A^2|", 1 + 1 / 84),
)
EXP_COLUMNS = (
    ("exp_delta", 1 + 1 / 21),
    ("exp_sum", 1 + 1 / 42),
    ("exp_sq_sum", 1 + 1 / 42),
    ("exp_shift", 1 + 1 / 84),
)


def read_sweep(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{path} has no records")
    cols = {}
    for key in rows[0]:
        vals = [r[key] for r in rows]
        try:
            cols[key] = np.array([float(v) if v != "" else np.nan for v in vals])
        except ValueError:
            cols[key] = np.array(vals)
    return cols


def plot_sizes(cols, path) -> None:
    n = cols["n"]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for (key, label, _), marker in zip(SIZE_COLUMNS, "osD^"):
        ax.scatter(n, cols[key], s=12, alpha=0.5, marker=marker, label=label)
    grid = np.linspace(max(n.min(), 1), n.max(), 100)
    ax.plot(grid, grid ** (1 + 1 / 21), "k--", lw=1, label="n^(1+1/21)")
    ax.plot(grid, grid ** (1 + 1 / 84), "k:", lw=1, label="n^(1+1/84)")
    ax.axhline(cols["q"][0], color="grey", lw=0.8, label="q")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("|A|")
    ax.set_ylabel("size")
    ax.legend(fontsize=8, frameon=False, loc="upper left", bbox_to_anchor=(1.01, 1))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_exponents(cols, path) -> None:
    fig, axes = plt.subplots(1, len(EXP_COLUMNS), figsize=(12, 3.2), sharey=True)
    for ax, (key, target) in zip(axes, EXP_COLUMNS):
        vals = cols[key][~np.isnan(cols[key])]
        if vals.size:
            ax.hist(vals, bins=20, color="0.6")
        ax.axvline(target, color="k", ls="--", lw=1)
        ax.set_title(key, fontsize=9)
    axes[0].set_ylabel("records")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_sweep(csv_path, out_dir) -> list[Path]:
    cols = read_sweep(csv_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(csv_path).stem
    paths = [out_dir / f"{stem}_sizes.png", out_dir / f"{stem}_exponents.png"]
    plot_sizes(cols, paths[0])
    plot_exponents(cols, paths[1])
    return paths


def plot_search_history(history, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.step(np.arange(1, len(history) + 1), history, where="post")
    ax.set_xlabel("iteration")
    ax.set_ylabel("best objective")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="ffgrowth-plot", description="plot an ffgrowth sweep CSV")
    ap.add_argument("csv")
    ap.add_argument("--out-dir", default=".")
    args = ap.parse_args(argv)
    try:
        for p in plot_sweep(args.csv, args.out_dir):
            print(p)
    except (OSError, ValueError, KeyError) as exc:
        print(f"ffgrowth-plot: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
