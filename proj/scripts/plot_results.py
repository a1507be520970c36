#!/usr/bin/env python3
"""Plot results documents produced by the arts CLI.

Usage: plot_results.py RESULTS.json [OUT.png]

Handles all three document kinds: prediction_curve, selection_sweep and
strategy_comparison. Dev tooling only; not part of the test surface.
"""
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def plot_curves(doc, ax_q, ax_r):
    t = doc["thresholds"]
    if doc["kind"] == "prediction_curve":
        q, r = doc["qber"], doc["rate"]
        label = "model"
    else:
        q = [x if x is not None else float("nan") for x in doc["qber"]]
        r = doc["rate"]
        label = "measured"
    ax_q.plot(t, q, marker=".", label=label)
    ax_q.axhline(0.11, color="gray", linestyle=":", label="11% limit")
    ax_q.set_ylabel("QBER")
    ax_q.legend()
    ax_r.plot(t, r, marker=".", color="tab:green")
    ax_r.set_xlabel("probe threshold")
    ax_r.set_ylabel("key rate (per sifted bit)")


def plot_comparison(doc, fig):
    snr_grid = doc["inputs"]["snr_grid"]
    mu_grid = doc["inputs"]["mu_grid"]
    rates = {s["name"]: s["rates"] for s in doc["strategies"]}
    axes = fig.subplots(1, len(snr_grid), sharey=True, squeeze=False)[0]
    for j, snr in enumerate(snr_grid):
        ax = axes[j]
        for name, style in (("none", "o:"), ("count_threshold", "s--"), ("arts", "^-")):
            ys = [rates[name][i * len(snr_grid) + j] for i in range(len(mu_grid))]
            ax.plot(mu_grid, ys, style, label=name)
        ax.set_xscale("log")
        ax.set_title(f"SNR = {snr:g}")
        ax.set_xlabel("mu (sifted bits / packet)")
    axes[0].set_ylabel("key rate (per sifted bit)")
    axes[0].legend()


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"
    with open(path) as f:
        doc = json.load(f)

    kind = doc.get("kind")
    if kind in ("prediction_curve", "selection_sweep"):
        fig, (ax_q, ax_r) = plt.subplots(2, 1, figsize=(8, 7), sharex=True)
        plot_curves(doc, ax_q, ax_r)
    elif kind == "strategy_comparison":
        fig = plt.figure(figsize=(4 * len(doc["inputs"]["snr_grid"]), 4))
        plot_comparison(doc, fig)
    else:
        sys.exit(f"unknown results kind: {kind!r}")
    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
