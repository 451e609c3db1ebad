import numpy as np
import pandas as pd
import plotly.graph_objects as go
import pytest

from modules.heatmap import imset_heatmap, imset_table, make_heatmap_figure, model_frame, model_heatmap
from modules.imset import Imset
from modules.separation import elementary_model
from modules.standard import standard_imset_ug


def test_make_heatmap_figure_from_frame():
    frame = pd.DataFrame([[1, -1], [0, 2]], index=["r1", "r2"], columns=["c1", "c2"])
    fig = make_heatmap_figure(frame, title="t")
    assert isinstance(fig, go.Figure)
    assert list(fig.data[0].x) == ["c1", "c2"]
    assert list(fig.data[0].y) == ["r1", "r2"]


def test_make_heatmap_figure_rejects_1d():
    with pytest.raises(ValueError):
        make_heatmap_figure(np.arange(3))


def test_imset_table_and_heatmap(cycle_triangle):
    u = standard_imset_ug(cycle_triangle)
    table = imset_table(u)
    assert list(table.columns) == ["set", "size", "coefficient"]
    assert len(table) == len(u)
    assert table["coefficient"].sum() == 0
    fig = imset_heatmap(u)
    z = np.asarray(fig.data[0].z, dtype=float)
    assert z.shape[0] == 6
    assert np.nansum(z) == 0


def test_zero_imset_heatmap(cycle_triangle):
    fig = imset_heatmap(Imset.zero(cycle_triangle.universe))
    assert np.asarray(fig.data[0].z).shape == (1, 1)


def test_model_frame(c4):
    model = elementary_model(c4)
    frame = model_frame(model, c4.vertices)
    assert frame.shape == (6, 16)
    assert frame.loc["a,c", "{b,d}"] == 1.0
    assert frame.loc["b,d", "{a,c}"] == 1.0
    assert frame.loc["a,b", "{}"] == 0.0
    assert np.isnan(frame.loc["a,b", "{a}"])
    assert np.nansum(frame.to_numpy()) == 2
    assert isinstance(model_heatmap(model, c4.vertices), go.Figure)
