"""Partition-agreement measures and the raw-series k-means baseline."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .clustering import Partition, kmeans
from .dataset import Dataset, znormalize_rows
from .errors import DataError


@dataclass(frozen=True)
class ContingencyTable:
    """Joint cluster counts for two labelings of the same items."""

    counts: dict[tuple[int, int], int]
    row_marginals: dict[int, int]
    col_marginals: dict[int, int]
    total: int

    @classmethod
    def from_labels(cls, a, b) -> "ContingencyTable":
        a, b = list(a), list(b)
        if len(a) != len(b):
            raise DataError(f"label length mismatch: {len(a)} vs {len(b)}")
        return cls(
            counts=dict(Counter(zip(a, b))),
            row_marginals=dict(Counter(a)),
            col_marginals=dict(Counter(b)),
            total=len(a),
        )


def _comb2(x: int) -> int:
    return x * (x - 1) // 2


def _as_set_partition(labels) -> set[frozenset[int]]:
    groups: dict[int, set[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, set()).add(i)
    return {frozenset(g) for g in groups.values()}


def ari(a, b) -> float:
    """Adjusted Rand Index in [-1, 1], exact in integer arithmetic.

    When both partitions are trivial (all-singletons or single-cluster on
    both sides) the index is undefined by the usual formula; identical set
    partitions then score 1, anything else 0.
    """
    table = ContingencyTable.from_labels(a, b)
    index = sum(_comb2(v) for v in table.counts.values())
    sum_a = sum(_comb2(v) for v in table.row_marginals.values())
    sum_b = sum(_comb2(v) for v in table.col_marginals.values())
    pairs = _comb2(table.total)
    # ARI = (index - expected) / (max - expected), scaled by 2 * pairs to
    # stay in integers until the final division.
    num = 2 * (index * pairs - sum_a * sum_b)
    den = (sum_a + sum_b) * pairs - 2 * sum_a * sum_b
    if den == 0:
        return 1.0 if _as_set_partition(a) == _as_set_partition(b) else 0.0
    return num / den


def rand_index(a, b) -> float:
    """Fraction of item pairs on which the two partitions agree."""
    table = ContingencyTable.from_labels(a, b)
    pairs = _comb2(table.total)
    if pairs == 0:
        return 1.0
    together_both = sum(_comb2(v) for v in table.counts.values())
    together_a = sum(_comb2(v) for v in table.row_marginals.values())
    together_b = sum(_comb2(v) for v in table.col_marginals.values())
    concordant = pairs + 2 * together_both - together_a - together_b
    return concordant / pairs


def _entropy(marginals: dict[int, int], total: int) -> float:
    return -sum((c / total) * math.log(c / total) for c in marginals.values() if c > 0)


def nmi(a, b) -> float:
    """Mutual information normalized by the mean of the two label entropies.

    A zero-entropy (single-cluster) side yields 0 against any non-trivial
    partition; two trivial identical partitions yield 1.
    """
    table = ContingencyTable.from_labels(a, b)
    n = table.total
    ha = _entropy(table.row_marginals, n)
    hb = _entropy(table.col_marginals, n)
    if ha == 0.0 and hb == 0.0:
        return 1.0
    mi = 0.0
    for (i, j), nij in table.counts.items():
        if nij > 0:
            mi += (nij / n) * math.log(
                nij * n / (table.row_marginals[i] * table.col_marginals[j])
            )
    return min(1.0, max(0.0, mi / ((ha + hb) / 2.0)))


def purity(pred, truth) -> float:
    """Mean over predicted clusters of their dominant true-class share."""
    table = ContingencyTable.from_labels(pred, truth)
    best: dict[int, int] = {}
    for (i, _), nij in table.counts.items():
        best[i] = max(best.get(i, 0), nij)
    return sum(best.values()) / table.total


def all_scores(pred, truth) -> dict[str, float]:
    return {
        "ari": ari(pred, truth),
        "rand_index": rand_index(pred, truth),
        "nmi": nmi(pred, truth),
        "purity": purity(pred, truth),
    }


def baseline_kmeans(dataset: Dataset, k: int, seed: int) -> Partition:
    """k-means on the z-normalized raw series (truncated to the shortest length)."""
    n_min = dataset.min_length
    rows = np.vstack([znormalize_rows(ts.values[:n_min]) for ts in dataset.series])
    return kmeans(rows, k, seed=seed)
