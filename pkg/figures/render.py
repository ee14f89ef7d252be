#!/usr/bin/env python3
"""Render publication-style figures from the experiment CLI's CSV output.

Four figure kinds, one per experiment family:

* prob-all-real : P(all eigenvalues real) vs K, one series per dimension n
                  (reads the histogram CSV schema, k == n rows)
* expected      : top panel E vs n per K; bottom panel log-scale n - E vs K
                  with the fitted exponential overlaid from the gamma table
* histogram-k   : P(k eigenvalues real) vs K, one series per parity-valid k
* cloud         : scatter of normalized eigenvalues, one panel per input CSV

Input schemas are exactly the CLI contracts; a missing column is a hard
error (exit 2) and an empty data table exits 1.  Rendering is deterministic:
a fixed SVG hash salt and no embedded timestamps, so the same CSV always
produces byte-identical SVG output.

Usage:
    python render.py --kind histogram-k --in histogram_k.csv --out fig3.svg
    python render.py --kind cloud --in c1.csv --in c2.csv --out fig4.svg [--png fig4.png]
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "ginprod-figures"

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

KINDS = ("prob-all-real", "expected", "histogram-k", "cloud")

_SCHEMAS = {
    "prob-all-real": ["n", "K", "k", "count", "p_hat", "stderr"],
    "expected": ["n", "K", "E", "stderr"],
    "histogram-k": ["n", "K", "k", "count", "p_hat", "stderr"],
    "cloud": ["trial", "re", "im"],
}
_GAMMA_COLUMNS = ["n", "gamma", "intercept", "rms_residual", "K_min", "K_max", "points_used"]


class SchemaError(ValueError):
    pass


def _parse_table(text: str, required: list[str]) -> list[dict]:
    lines = [row for row in csv.reader(io.StringIO(text)) if row]
    if not lines:
        raise SchemaError("empty table")
    header = lines[0]
    missing = [c for c in required if c not in header]
    if missing:
        raise SchemaError(f"missing required columns {missing}; found {header}")
    return [{c: float(v) for c, v in zip(header, row)} for row in lines[1:]]


def load_tables(path: str, kind: str):
    """(data rows, gamma rows or None) from one CSV file."""
    with open(path) as fh:
        text = fh.read()
    parts = [p for p in text.split("\n\n") if p.strip()]
    if not parts:
        raise SchemaError(f"{path}: no header found")
    data = _parse_table(parts[0], _SCHEMAS[kind])
    gamma = None
    if len(parts) > 1 and kind == "expected":
        gamma = _parse_table(parts[1], _GAMMA_COLUMNS)
    return data, gamma


def _series(rows, key):
    out = {}
    for row in rows:
        out.setdefault(row[key], []).append(row)
    return {k: sorted(v, key=lambda r: r["K"]) for k, v in sorted(out.items())}


def fig_prob_all_real(tables):
    rows = [r for rows, _ in tables for r in rows if r["k"] == r["n"]]
    if not rows:
        raise SchemaError("no k == n rows to plot")
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for n, pts in _series(rows, "n").items():
        ks = [p["K"] for p in pts]
        ax.errorbar(ks, [p["p_hat"] for p in pts], yerr=[4 * p["stderr"] for p in pts],
                    marker="o", ms=3.5, capsize=2, label=f"n={int(n)}")
    ax.set_xlabel("number of factors K")
    ax.set_ylabel("P(all eigenvalues real)")
    ax.set_ylim(0, 1.02)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return fig, {"series": [f"n={int(n)}" for n in _series(rows, 'n')]}


def fig_expected(tables, log_y=True):
    rows = [r for rows, _ in tables for r in rows]
    gamma_rows = [g for _, gs in tables if gs for g in gs]
    if not rows:
        raise SchemaError("no curve rows to plot")
    fig, (top, bot) = plt.subplots(2, 1, figsize=(6.4, 7.2))
    by_k = {}
    for r in rows:
        by_k.setdefault(r["K"], []).append(r)
    for k_products in sorted(by_k):
        pts = sorted(by_k[k_products], key=lambda r: r["n"])
        top.errorbar([p["n"] for p in pts], [p["E"] for p in pts],
                     yerr=[4 * p["stderr"] for p in pts], marker="o", ms=3.5,
                     label=f"K={int(k_products)}")
    top.set_xlabel("dimension n")
    top.set_ylabel("expected number of real eigenvalues")
    top.legend(fontsize=8)
    top.grid(alpha=0.3)

    labels = []
    for n, pts in _series(rows, "n").items():
        ks = [p["K"] for p in pts]
        gaps = [n - p["E"] for p in pts]
        keep = [(k, g) for k, g in zip(ks, gaps) if g > 0]
        if not keep:
            continue
        line = bot.plot([k for k, _ in keep], [g for _, g in keep], "o", ms=4,
                        label=f"n={int(n)}")
        labels.append(f"n={int(n)}")
        for g_row in gamma_rows:
            if g_row["n"] == n:
                xs = np.linspace(min(ks), max(ks), 64)
                fit = np.exp(g_row["intercept"] - g_row["gamma"] * xs)
                bot.plot(xs, fit, "--", color=line[0].get_color(), lw=1,
                         label=f"exp fit, rate {g_row['gamma']:.3f}")
    if log_y:
        bot.set_yscale("log")
    bot.set_xlabel("number of factors K")
    bot.set_ylabel("n - E")
    bot.legend(fontsize=8)
    bot.grid(alpha=0.3, which="both")
    fig.tight_layout()
    return fig, {"series": labels, "gamma_rows": len(gamma_rows)}


def fig_histogram_k(tables):
    rows = [r for rows, _ in tables for r in rows]
    if not rows:
        raise SchemaError("no histogram rows to plot")
    dims = {r["n"] for r in rows}
    if len(dims) != 1:
        raise SchemaError(f"histogram-k expects a single dimension, found {sorted(dims)}")
    n = int(dims.pop())
    valid = list(range(n % 2, n + 1, 2))
    found = sorted({int(r["k"]) for r in rows})
    if found != valid:
        raise SchemaError(f"expected parity-valid k {valid}, found {found}")
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for k in valid:
        pts = sorted((r for r in rows if r["k"] == k), key=lambda r: r["K"])
        ax.errorbar([p["K"] for p in pts], [p["p_hat"] for p in pts],
                    yerr=[4 * p["stderr"] for p in pts], marker="o", ms=3.5,
                    capsize=2, label=f"k={k}")
    ax.set_xlabel("number of factors K")
    ax.set_ylabel(f"P(k of {n} eigenvalues real)")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return fig, {"series": [f"k={k}" for k in valid]}


def fig_cloud(tables, names):
    panels = [rows for rows, _ in tables]
    if not panels or any(not rows for rows in panels):
        raise SchemaError("every cloud input must contain points")
    cols = min(2, len(panels))
    rows_n = (len(panels) + cols - 1) // cols
    fig, axes = plt.subplots(rows_n, cols, figsize=(4.2 * cols, 4.2 * rows_n),
                             squeeze=False)
    circle_t = np.linspace(0, 2 * np.pi, 256)
    for ax, rows, name in zip(axes.ravel(), panels, names):
        ax.scatter([r["re"] for r in rows], [r["im"] for r in rows], s=1.5, alpha=0.5,
                   linewidths=0)
        ax.plot(np.cos(circle_t), np.sin(circle_t), "k-", lw=0.6, alpha=0.6)
        ax.set_xlim(-1.05, 1.05)
        ax.set_ylim(-1.05, 1.05)
        ax.set_aspect("equal")
        ax.set_title(name, fontsize=9)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
    for ax in axes.ravel()[len(panels):]:
        ax.axis("off")
    fig.tight_layout()
    return fig, {"panels": len(panels)}


def render(kind, in_paths, out_path, png_path=None, log_y=True):
    tables = [load_tables(p, kind) for p in in_paths]
    if kind == "prob-all-real":
        fig, meta = fig_prob_all_real(tables)
    elif kind == "expected":
        fig, meta = fig_expected(tables, log_y=log_y)
    elif kind == "histogram-k":
        fig, meta = fig_histogram_k(tables)
    else:
        fig, meta = fig_cloud(tables, in_paths)
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    if png_path:
        fig.savefig(png_path, format="png", dpi=150)
    plt.close(fig)
    return meta


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="input CSV (repeatable; cloud kind makes one panel per file)")
    parser.add_argument("--out", required=True, help="output SVG path")
    parser.add_argument("--png", help="also write a PNG to this path")
    parser.add_argument("--linear-y", action="store_true",
                        help="linear instead of log scale on the rate panel")
    args = parser.parse_args(argv)
    try:
        meta = render(args.kind, args.inputs, args.out, png_path=args.png,
                      log_y=not args.linear_y)
    except SchemaError as exc:
        sys.stderr.write(f"schema error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    if not meta.get("series") and not meta.get("panels"):
        sys.stderr.write("no data plotted\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
