"""Report writers: JSON, delimited tables, aligned text, and figures.

Every report can be written as ``<stem>.json`` plus ``<stem>.tsv`` (the
delimited per-row table); when figures are requested a matplotlib rendering
of the numeric content is saved alongside as ``<stem>.png``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .families import AsymptoticReport
from .theorems import ExperimentReport


def _fraction_float(x) -> Optional[float]:
    if x is None:
        return None
    return float(Fraction(x))


def write_json(data: dict, path: Path) -> Path:
    path.write_text(json.dumps(data, indent=2, sort_keys=False) + "\n")
    return path


def _write_tsv(rows: list, columns: list, path: Path) -> Path:
    lines = ["\t".join(columns)]
    for row in rows:
        lines.append("\t".join("" if row.get(c) is None else str(row.get(c)) for c in columns))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_family_report(
    report: AsymptoticReport, outdir: str | Path, stem: str = "family-report",
    figures: bool = True,
) -> list:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = [write_json(report.to_json(), outdir / f"{stem}.json")]
    rows = []
    for i, row in enumerate(report.rows):
        flat = dict(row)
        if report.delta is not None:
            flat["delta"] = str(report.delta["delta_per_n"][i])
            flat["delta_running_inf"] = str(report.delta["running_inf"][i])
        if flat.get("reg_bracket"):
            flat["reg"] = f"[{flat['reg_bracket']['lower']},{flat['reg_bracket']['upper']}]"
        rows.append(flat)
    columns = ["n", "reg", "d", "mu", "reg_over_n", "d_over_n"]
    if report.delta is not None:
        columns += ["delta", "delta_running_inf"]
    written.append(_write_tsv(rows, columns, outdir / f"{stem}.tsv"))
    written.append((outdir / f"{stem}.txt"))
    (outdir / f"{stem}.txt").write_text(report.text_table() + "\n")
    if figures:
        written.append(_family_figure(report, outdir / f"{stem}.png"))
    return written


def _family_figure(report: AsymptoticReport, path: Path) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    npanels = 2 if report.delta is not None else 1
    fig, axes = plt.subplots(1, npanels, figsize=(5.5 * npanels, 4.0))
    if npanels == 1:
        axes = [axes]
    ns = [row["n"] for row in report.rows]
    reg_lo, reg_hi = [], []
    for row in report.rows:
        if row["reg"] is not None:
            reg_lo.append(row["reg"] / row["n"])
            reg_hi.append(row["reg"] / row["n"])
        else:
            reg_lo.append(row["reg_bracket"]["lower"] / row["n"])
            reg_hi.append(row["reg_bracket"]["upper"] / row["n"])
    d_over = [_fraction_float(row["d_over_n"]) for row in report.rows]
    ax = axes[0]
    ax.fill_between(ns, reg_lo, reg_hi, alpha=0.25, label="reg bracket / n")
    ax.plot(ns, reg_hi, "o-", label="reg / n")
    ax.plot(ns, d_over, "s--", label="d / n")
    ax.set_xlabel("n")
    ax.set_title("regularity and generating degree, scaled by n")
    ax.legend()
    if report.delta is not None:
        ax = axes[1]
        dvals = [_fraction_float(str(x)) for x in report.delta["delta_per_n"]]
        dinf = [_fraction_float(str(x)) for x in report.delta["running_inf"]]
        ax.plot(range(1, len(dvals) + 1), dvals, "o-", label="delta((1/n)NP)")
        ax.plot(range(1, len(dinf) + 1), dinf, "--", label="running inf")
        if report.delta.get("limit_region_delta") is not None:
            ax.axhline(
                _fraction_float(str(report.delta["limit_region_delta"])),
                color="gray",
                linestyle=":",
                label="limit-region estimate",
            )
        ax.set_xlabel("n")
        ax.set_title("Newton polyhedron delta")
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_experiment_report(
    report: ExperimentReport, outdir: str | Path, stem: Optional[str] = None,
    figures: bool = True,
) -> list:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = stem or report.preset
    written = [write_json(report.to_json(), outdir / f"{stem}.json")]
    rows = [
        {"id": a["id"], "verdict": a["verdict"], "expected": a["expected"],
         "computed": a["computed"]}
        for a in report.assertions
    ]
    written.append(
        _write_tsv(rows, ["id", "verdict", "expected", "computed"], outdir / f"{stem}.tsv")
    )
    (outdir / f"{stem}.txt").write_text(report.summary() + "\n")
    written.append(outdir / f"{stem}.txt")
    if figures:
        fig_path = _experiment_figure(report, outdir / f"{stem}.png")
        if fig_path is not None:
            written.append(fig_path)
    return written


def _experiment_figure(report: ExperimentReport, path: Path) -> Optional[Path]:
    """Render the numeric content when the report carries per-n or per-k rows."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if report.preset == "nolimit":
        rows = report.artifacts.get("rows", [])
        if not rows:
            return None
        fig, ax = plt.subplots(figsize=(6, 4))
        ns = [r["n"] for r in rows]
        lo = [r["reg_lower"] / r["n"] for r in rows]
        hi = [
            (r["reg_upper"] / r["n"]) if r["reg_upper"] is not None else None
            for r in rows
        ]
        for n, l, h in zip(ns, lo, hi):
            if h is None:
                ax.plot([n], [l], "^", color="tab:red")
                ax.annotate("lower bound", (n, l), textcoords="offset points", xytext=(4, 4))
            else:
                ax.plot([n, n], [l, h], "-", color="tab:blue", lw=3)
        ax.axhline(5, color="gray", ls=":")
        ax.axhline(6, color="gray", ls=":")
        ax.set_xlabel("n")
        ax.set_ylabel("reg(Q^n + (f^n)) / n")
        ax.set_title("no-limit evidence: brackets oscillate between 5 and 6")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
        return path
    if report.preset == "symbolic":
        per_k = report.artifacts.get("per_k", [])
        if not per_k:
            return None
        fig, ax = plt.subplots(figsize=(6, 4))
        ks = [r["k"] for r in per_k]
        lo = [r["contribution"][0] for r in per_k]
        hi = [r["contribution"][1] for r in per_k]
        for k, l, h in zip(ks, lo, hi):
            ax.plot([k, k], [l, h], "-", lw=4, color="tab:blue")
        ax.set_xlabel("k")
        ax.set_ylabel("reg(Q^n+(f^k)) + n - k")
        ax.set_title("per-k contributions to the symbolic-power bracket")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
        return path
    if report.preset == "conj-char0":
        rows = report.artifacts.get("rows", [])
        if not rows:
            return None
        fig, ax = plt.subplots(figsize=(6, 4))
        ns = [r["n"] for r in rows]
        ax.plot(ns, [r["conjectured"] for r in rows], "x--", label="conjectured")
        for r in rows:
            ax.plot([r["n"], r["n"]], r["bracket"], "-", lw=3, color="tab:blue")
        ax.set_xlabel("n")
        ax.set_ylabel("reg(Q^n + (f^n)) over Q")
        ax.set_title("char-0 brackets vs conjectured values (evidence)")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
        return path
    return None
