"""Write verification results to a directory: text report, TSV summary, PNG figures."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .verify import SuiteResult  # noqa: E402


def _bar(path: Path, labels, values, title: str, xlabel: str = "") -> None:
    fig, ax = plt.subplots(figsize=(7, 0.45 * len(labels) + 1.5))
    ax.barh(range(len(labels)), values, color="#4a7ab5")
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels)
    ax.invert_yaxis()
    ax.set_title(title)
    if xlabel:
        ax.set_xlabel(xlabel)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def write_report(result: SuiteResult, out: str | Path) -> list[Path]:
    """Returns the paths written, report first."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    report = out / "report.txt"
    report.write_text("\n".join(result.lines()) + "\n")
    written.append(report)

    tsv = out / "summary.tsv"
    with tsv.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["suite", "check", "status", "detail"])
        for c in result.checks:
            w.writerow([c.suite, c.name, "PASS" if c.ok else "FAIL", c.detail])
    written.append(tsv)

    if result.timings:
        path = out / "timings.png"
        _bar(path, list(result.timings), list(result.timings.values()), "time per block", "seconds")
        written.append(path)
    stats = result.stats
    cases = stats.get("classifier", {}).get("cases")
    if cases:
        path = out / "classifier_cases.png"
        _bar(path, list(cases), list(cases.values()), "classifier cases on the corpus", "matroids")
        written.append(path)
    nodes = stats.get("tree", {}).get("nodes")
    if nodes:
        path = out / "tree_nodes.png"
        keys = sorted(nodes)
        fig, ax = plt.subplots(figsize=(6, 3.5))
        ax.bar(keys, [nodes[k] for k in keys], color="#6a9f58")
        ax.set_xlabel("nodes in the tree decomposition")
        ax.set_ylabel("connected matroids")
        ax.set_xticks(keys)
        fig.tight_layout()
        fig.savefig(path, dpi=100)
        plt.close(fig)
        written.append(path)
    rounded = stats.get("roundedness")
    if rounded:
        path = out / "roundedness.png"
        _bar(path, list(rounded), [v[1] for v in rounded.values()],
             "connected corpus matroids with a family minor", "matroids")
        written.append(path)
    disj = stats.get("dichotomy", {}).get("disjuncts")
    if disj:
        path = out / "dichotomy.png"
        _bar(path, list(disj), list(disj.values()), "certified disjunct after relaxing", "relaxations")
        written.append(path)
    return written
