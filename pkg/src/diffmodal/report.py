"""Delimited and graphical output for property-suite runs: a CSV of
per-trial records plus summary figures rendered to files."""

from __future__ import annotations

import csv
from pathlib import Path

from .suites import SuiteResult


def write_csv(results: list[SuiteResult], path: Path) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "trial", "size", "param", "ok", "detail"])
        for res in results:
            for r in res.records:
                writer.writerow([r.suite, r.trial, r.size, r.param, int(r.ok), r.detail])
    return path


def write_figures(results: list[SuiteResult], out_dir: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax_counts, ax_sizes) = plt.subplots(1, 2, figsize=(11, 4.2))

    names = [res.name for res in results]
    passes = [res.trials - res.failures for res in results]
    fails = [res.failures for res in results]
    xs = range(len(names))
    ax_counts.bar(xs, passes, color="#2a7e43", label="pass")
    ax_counts.bar(xs, fails, bottom=passes, color="#b03a2e", label="fail")
    ax_counts.set_xticks(list(xs))
    ax_counts.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax_counts.set_ylabel("trials")
    ax_counts.set_title("suite outcomes")
    ax_counts.legend()

    for res in results:
        sizes = [r.size for r in res.records]
        if sizes:
            ax_sizes.hist(
                sizes,
                bins=range(1, max(sizes) + 2),
                histtype="step",
                label=res.name,
            )
    ax_sizes.set_xlabel("instance size (points)")
    ax_sizes.set_ylabel("trials")
    ax_sizes.set_title("sampled instance sizes")
    ax_sizes.legend(fontsize=7)

    fig.tight_layout()
    path = out_dir / "summary.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]


def write_report(results: list[SuiteResult], out_dir: str | Path) -> list[Path]:
    """Write results.csv and the summary figures into `out_dir`."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [write_csv(results, out_dir / "results.csv")]
    written.extend(write_figures(results, out_dir))
    return written
