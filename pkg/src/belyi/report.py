"""Tab-delimited tables and matplotlib figures for the command line reports."""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from belyi.census import DessinClass, cycle_string, hall_count  # noqa: E402

BIG_INT_SHOWN = 60


def short_int(n: int) -> str:
    """The integer itself, or a digit count when it is too long to print."""
    s = str(n)
    if len(s) <= BIG_INT_SHOWN:
        return s
    return f"<{len(s)}-digit integer>"


def log10_int(n: int) -> float:
    s = str(n)
    if len(s) < 300:
        return math.log10(n)
    return len(s) - 1 + math.log10(int(s[:15]) / 10**14)


def tsv(rows: Sequence[Sequence]) -> str:
    return "\n".join("\t".join(str(c) for c in row) for row in rows)


def census_table(classes: Sequence[DessinClass]) -> str:
    rows = [("class", "passport", "genus", "aut_order", "sigma0", "sigma1")]
    for i, c in enumerate(classes):
        rep = c.representative
        rows.append((i, c.passport, c.genus, c.aut_order, cycle_string(rep.sigma0), cycle_string(rep.sigma1)))
    return tsv(rows)


def census_figure(classes: Sequence[DessinClass], path: str) -> None:
    d = classes[0].representative.degree
    genus = Counter(c.genus for c in classes)
    aut = Counter(c.aut_order for c in classes)
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(8, 3.2))
    g_keys = sorted(genus)
    ax0.bar([str(g) for g in g_keys], [genus[g] for g in g_keys], color="#4c72b0")
    ax0.set_xlabel("genus")
    ax0.set_ylabel("classes")
    a_keys = sorted(aut)
    ax1.bar([str(a) for a in a_keys], [aut[a] for a in a_keys], color="#dd8452")
    ax1.set_xlabel("automorphism group order")
    fig.suptitle(f"degree {d}: {len(classes)} classes, M_d = {hall_count(d)}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def hall_figure(max_d: int, path: str, class_counts: dict | None = None) -> None:
    ds = list(range(1, max_d + 1))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(ds, [hall_count(d) for d in ds], "o-", label="M_d (subgroups of index d)")
    ax.semilogy(ds, [math.factorial(d) for d in ds], "--", color="0.6", label="d!")
    if class_counts:
        ks = sorted(class_counts)
        ax.semilogy(ks, [class_counts[k] for k in ks], "s-", label="isomorphism classes")
    ax.set_xlabel("degree d")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def degree_figure(kinds: Sequence[str], degrees: Sequence[int], path: str) -> None:
    """log10 of each step degree and of the running total degree."""
    xs = list(range(len(degrees)))
    running = []
    total = 0.0
    for d in degrees:
        total += log10_int(d)
        running.append(total)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(xs, [log10_int(d) for d in degrees], color="#55a868", label="step degree")
    ax.plot(xs, running, "ko-", label="composed degree")
    ax.set_xticks(xs)
    ax.set_xticklabels([f"{i}\n{k}" for i, k in zip(xs, kinds)], fontsize=7)
    ax.set_ylabel("log10 degree")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
