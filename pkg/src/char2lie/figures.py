"""PNG heatmaps of Gram and structure matrices (matplotlib, Agg backend)."""
from __future__ import annotations

from typing import Sequence


def structure_matrix(g) -> list[list[int]]:
    """Entry (i, j) is the number of nonzero coordinates of [e_i, e_j]."""
    return [[sum(1 for a in g.c[i][j] if a) for j in range(g.n)] for i in range(g.n)]


def heatmap(matrix: Sequence[Sequence[int]], labels: Sequence[str], title: str, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n = len(matrix)
    fig, ax = plt.subplots(figsize=(1.0 + 0.45 * n, 0.8 + 0.45 * n))
    im = ax.imshow([list(r) for r in matrix], cmap="viridis", interpolation="nearest")
    ax.set_xticks(range(n), labels, rotation=90)
    ax.set_yticks(range(n), labels)
    for i, row in enumerate(matrix):
        for j, a in enumerate(row):
            if a:
                ax.text(j, i, format(a, "x"), ha="center", va="center", color="w", fontsize=8)
    ax.set_title(title)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
