"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Plotly heatmaps of imsets and of elementary independence models.
"""
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import pandas as pd
import plotly.graph_objects as go

from .graph_core import Triplet, VertexSet, bits, submasks
from .imset import Imset

ArrayLike2D = Union[np.ndarray, pd.DataFrame, Sequence[Sequence[float]]]


def _to_matrix_and_labels(data: ArrayLike2D, xlabels=None, ylabels=None):
    """
    Normalise input to (z, x, y).
    - DataFrame: index -> y, columns -> x.
    - anything else: 2D array, labels generated when missing.
    """
    if isinstance(data, pd.DataFrame):
        x = list(data.columns) if xlabels is None else list(xlabels)
        y = list(data.index) if ylabels is None else list(ylabels)
        return data.to_numpy(dtype=float), x, y

    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2:
        raise ValueError("Heatmap data must be 2D.")
    rows, cols = arr.shape
    x = list(xlabels) if xlabels is not None else [str(j) for j in range(cols)]
    y = list(ylabels) if ylabels is not None else [str(i) for i in range(rows)]
    return arr, x, y


def make_heatmap_figure(
    data: ArrayLike2D,
    xlabels: Optional[Sequence[str]] = None,
    ylabels: Optional[Sequence[str]] = None,
    colorscale="RdBu",
    zmid: Optional[float] = 0,
    cell_text: Optional[Sequence[Sequence[str]]] = None,
    title: Optional[str] = None,
    colorbar_title: str = "coefficient",
):
    """
    Plotly heatmap for Dash.

    - cell_text: strings drawn on the cells (same shape as the data).
    - zmid: centre of a diverging colour scale; None for sequential scales.
    """
    z, x, y = _to_matrix_and_labels(data, xlabels, ylabels)
    hm = go.Heatmap(
        z=z,
        x=x,
        y=y,
        colorscale=colorscale,
        zmid=zmid,
        text=cell_text,
        texttemplate="%{text}" if cell_text is not None else None,
        hoverongaps=False,
        xgap=2,
        ygap=2,
        colorbar=dict(title=colorbar_title),
    )
    fig = go.Figure(data=hm)
    fig.update_layout(
        title=title or "",
        xaxis=dict(title="", automargin=True),
        yaxis=dict(title="", automargin=True, autorange="reversed"),
        margin=dict(l=60, r=20, t=60, b=60),
        template="plotly_white",
    )
    return fig


def imset_table(u: Imset) -> pd.DataFrame:
    """One row per nonzero coefficient."""
    rows = [{"set": str(s), "size": len(s), "coefficient": c} for s, c in u]
    return pd.DataFrame(rows, columns=["set", "size", "coefficient"])


def imset_heatmap(u: Imset, title: Optional[str] = None):
    """Coefficients laid out by cardinality: one row per |S|, nonzero sets left to right."""
    by_size: dict[int, list[tuple[VertexSet, int]]] = {}
    for s, c in u:
        by_size.setdefault(len(s), []).append((s, c))
    sizes = list(range(len(u.frame) + 1)) if not u.is_zero() else [0]
    width = max((len(v) for v in by_size.values()), default=1)
    z = np.full((len(sizes), width), np.nan)
    text = [["" for _ in range(width)] for _ in sizes]
    for row, size in enumerate(sizes):
        for col, (s, c) in enumerate(by_size.get(size, [])):
            z[row, col] = c
            text[row][col] = f"{s}: {c:+d}"
    return make_heatmap_figure(
        z,
        xlabels=[str(i + 1) for i in range(width)],
        ylabels=[f"|S|={k}" for k in sizes],
        cell_text=text,
        title=title or "Imset coefficients by set size",
    )


def model_frame(triplets: Iterable[Triplet], vertices: VertexSet) -> pd.DataFrame:
    """Pairs {a,b} x conditioning sets C; 1 where <a,b|C> holds, NaN where C meets the pair."""
    universe = vertices.universe
    members = list(bits(vertices.mask))
    pairs = list(combinations(members, 2))
    conds = sorted(submasks(vertices.mask))
    frame = pd.DataFrame(
        0.0,
        index=[f"{universe.labels[a]},{universe.labels[b]}" for a, b in pairs],
        columns=[str(VertexSet(universe, c)) for c in conds],
    )
    for a, b in pairs:
        for c in conds:
            if c >> a & 1 or c >> b & 1:
                frame.loc[f"{universe.labels[a]},{universe.labels[b]}", str(VertexSet(universe, c))] = np.nan
    for t in triplets:
        if not t.is_elementary:
            continue
        t = t.canonical()
        frame.loc[f"{t.a.text()},{t.b.text()}", str(t.c)] = 1.0
    return frame


def model_heatmap(triplets: Iterable[Triplet], vertices: VertexSet, title: Optional[str] = None):
    frame = model_frame(triplets, vertices)
    return make_heatmap_figure(
        frame,
        colorscale=[[0, "#f8f9fa"], [1, "#198754"]],
        zmid=None,
        title=title or "Elementary independence statements",
        colorbar_title="holds",
    )
