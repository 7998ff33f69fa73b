"""SVG rendering of record tables: spec inference, geometry, error paths."""

import math
import re

import pytest

from rbfherm.experiments import ErrorRecord, write_records
from rbfherm.plotting import (
    PlotError,
    PlotSpec,
    emit_plot,
    infer_plot_spec,
    render_heatmap,
    render_line_plot,
)


def rec(**overrides):
    fields = dict(
        experiment="method_compare",
        method="hrbf",
        epsilon=1.0,
        n=None,
        l=1,
        radius=0.1,
        n_nodes=56,
        unknowns=171,
        err_f=1e-6,
        err_fx=1e-5,
        err_fy=1e-5,
        cond_estimate=1e10,
        singular=False,
    )
    fields.update(overrides)
    return ErrorRecord(**fields)


def polylines(svg):
    return re.findall(r'<polyline[^>]*points="([^"]*)"', svg)


# ---------------------------------------------------------------------------
# spec inference

def test_infer_plot_spec_per_experiment():
    sweep = infer_plot_spec([rec(experiment="eps_n_sweep", n=4)])
    assert sweep.kind == "heatmap"
    assert (sweep.x, sweep.y) == ("epsilon", "n")
    assert sweep.x_log

    poly = infer_plot_spec([rec(experiment="poly_compare")])
    assert poly.kind == "line" and poly.series == ("l",)

    compare = infer_plot_spec([rec(experiment="method_compare")])
    assert compare.series == ("method",)
    assert compare.x == "epsilon" and compare.x_log

    scaling = infer_plot_spec([rec(experiment="radius_scaling")])
    assert scaling.x == "radius" and scaling.x_log

    cost = infer_plot_spec([rec(experiment="cost_study")])
    assert cost.x == "unknowns"
    assert cost.series == ("radius", "epsilon", "method")
    assert not cost.x_log

    with pytest.raises(PlotError, match="no default plot"):
        infer_plot_spec([rec(experiment="mystery")])


# ---------------------------------------------------------------------------
# line plots

def test_one_polyline_per_series():
    records = [
        rec(method=method, epsilon=eps, err_f=err)
        for method, err in (("hrbf", 1e-4), ("mhrbf", 1e-8))
        for eps in (0.1, 1.0, 10.0)
    ]
    svg = render_line_plot(records, infer_plot_spec(records))
    lines = polylines(svg)
    assert len(lines) == 2
    for coords in lines:
        assert len(coords.split()) == 3
    assert ">method=hrbf<" in svg
    assert ">method=mhrbf<" in svg


def test_line_geometry_spans_the_frame():
    # linear axes, one series, two points at the data extremes: the corners
    # of the plotting frame are at (74, 422) and (544, 40)
    records = [rec(epsilon=1.0, err_f=2.0), rec(epsilon=3.0, err_f=6.0)]
    spec = PlotSpec(kind="line", x="epsilon", value="err_f", value_log=False)
    svg = render_line_plot(records, spec)
    lines = polylines(svg)
    assert lines == ["74.00,422.00 544.00,40.00"]


def test_single_point_series_renders_a_circle():
    records = [rec(method="hrbf"), rec(method="mhrbf", err_f=1e-9)]
    svg = render_line_plot(records, infer_plot_spec(records))
    assert svg.count("<circle") == 2
    assert not polylines(svg)


def test_duplicate_positions_collapse_to_the_minimum():
    records = [rec(err_f=1e-2), rec(err_f=1e-8), rec(epsilon=2.0, err_f=1e-4)]
    spec = PlotSpec(kind="line", x="epsilon")
    svg = render_line_plot(records, spec)
    assert len(polylines(svg)) == 1
    # the min of the duplicated x=1 cell sets the lower axis bound
    assert ">1e-8<" in svg


def test_zero_errors_are_floored_not_dropped():
    records = [rec(err_f=0.0), rec(epsilon=2.0, err_f=1e-10)]
    spec = PlotSpec(kind="line", x="epsilon")
    svg = render_line_plot(records, spec)
    assert len(polylines(svg)) == 1


def test_nonfinite_values_are_skipped():
    records = [rec(err_f=math.inf), rec(epsilon=2.0, err_f=1e-4)]
    spec = PlotSpec(kind="line", x="epsilon")
    svg = render_line_plot(records, spec)
    assert svg.count("<circle") == 1
    with pytest.raises(PlotError, match="no finite data"):
        render_line_plot([rec(err_f=math.nan)], spec)


def test_log_x_axis_rejects_nonpositive_values():
    spec = PlotSpec(kind="line", x="epsilon", x_log=True)
    with pytest.raises(PlotError, match="positive"):
        render_line_plot([rec(epsilon=-1.0)], spec)


def test_unknown_columns_are_rejected():
    with pytest.raises(PlotError, match="unknown x column"):
        render_line_plot([rec()], PlotSpec(kind="line", x="banana"))
    with pytest.raises(PlotError, match="unknown series column"):
        render_line_plot([rec()], PlotSpec(kind="line", x="epsilon", series=("spam",)))
    with pytest.raises(PlotError, match="unknown value column"):
        render_heatmap([rec()], PlotSpec(kind="heatmap", x="epsilon", y="n", value="z"))


# ---------------------------------------------------------------------------
# heatmaps

def test_heatmap_draws_one_cell_per_grid_point():
    records = [
        rec(experiment="eps_n_sweep", epsilon=eps, n=n, err_f=err)
        for (eps, n), err in {
            (0.1, 1): 1e-2,
            (0.1, 2): 1e-4,
            (1.0, 1): 1e-6,
            (1.0, 2): 1e-8,
        }.items()
    ]
    svg = render_heatmap(records, infer_plot_spec(records))
    # one background, four cells, sixteen colorbar steps
    assert svg.count("<rect") == 21
    assert ">-8.00<" in svg and ">-2.00<" in svg


# ---------------------------------------------------------------------------
# file emission

def test_emit_plot_round_trip(tmp_path):
    csv_path = tmp_path / "records.csv"
    records = [
        rec(method=method, epsilon=eps, err_f=err * eps)
        for method, err in (("hrbf", 1e-4), ("mhrbf", 1e-8))
        for eps in (0.1, 1.0, 10.0)
    ]
    write_records(csv_path, records, metadata={"experiment": "method_compare"})
    out_a = emit_plot(csv_path, tmp_path / "a.svg")
    out_b = emit_plot(csv_path, tmp_path / "b.svg")
    text = (tmp_path / "a.svg").read_text()
    assert str(out_a) == str(tmp_path / "a.svg")
    assert text.startswith("<svg ")
    assert text.endswith("</svg>\n")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_emit_plot_refuses_empty_tables(tmp_path):
    csv_path = tmp_path / "empty.csv"
    write_records(csv_path, [], metadata={"experiment": "method_compare"})
    out_path = tmp_path / "empty.svg"
    with pytest.raises(PlotError, match="no data rows"):
        emit_plot(csv_path, out_path)
    assert not out_path.exists()


def test_emit_plot_honors_an_explicit_spec(tmp_path):
    csv_path = tmp_path / "records.csv"
    write_records(
        csv_path,
        [rec(epsilon=1.0, err_f=2.0), rec(epsilon=3.0, err_f=6.0)],
        metadata={"experiment": "method_compare"},
    )
    spec = PlotSpec(kind="line", x="epsilon", value_log=False)
    emit_plot(csv_path, tmp_path / "custom.svg", spec=spec)
    svg = (tmp_path / "custom.svg").read_text()
    assert polylines(svg) == ["74.00,422.00 544.00,40.00"]
    with pytest.raises(PlotError, match="unknown plot kind"):
        emit_plot(csv_path, tmp_path / "bad.svg", spec=PlotSpec(kind="scatter", x="epsilon"))