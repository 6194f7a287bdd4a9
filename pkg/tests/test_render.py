"""Heatmap rendering: byte determinism, cell and legend structure."""

import xml.etree.ElementTree as ET

import pytest

from qlinkopt.mosaic import SweepAxes, build_mosaic
from qlinkopt.optimize import SearchConfig
from qlinkopt.render import render_heatmap
from qlinkopt.tables import CellView, MosaicView, read_mosaic_csv, write_csv

FAST = SearchConfig(seed_grid=3, max_evaluations=60)


@pytest.fixture(scope="module")
def mosaic_2x2():
    axes = SweepAxes(jitter_values=(20e-12, 300e-12), distance_values=(10.0, 120.0))
    return build_mosaic(axes, bandwidths=(50.0, 2.0), search=FAST)


def test_two_runs_produce_identical_bytes(mosaic_2x2, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render_heatmap(mosaic_2x2, a)
    render_heatmap(mosaic_2x2, b)
    assert a.read_bytes() == b.read_bytes()


def test_mosaic_and_its_csv_render_identically(mosaic_2x2, tmp_path):
    direct = tmp_path / "direct.svg"
    render_heatmap(mosaic_2x2, direct)
    csv_path = tmp_path / "m.csv"
    write_csv(mosaic_2x2, csv_path)
    via_csv = tmp_path / "via_csv.svg"
    render_heatmap(read_mosaic_csv(csv_path), via_csv)
    assert direct.read_bytes() == via_csv.read_bytes()


def test_output_is_well_formed_xml(mosaic_2x2, tmp_path):
    path = tmp_path / "m.svg"
    render_heatmap(mosaic_2x2, path)
    root = ET.fromstring(path.read_text())
    assert root.tag.endswith("svg")


def test_single_cell_mosaic_has_one_cell_and_one_legend_entry(tmp_path):
    view = MosaicView(
        jitter_values=(1e-10,),
        distance_values=(50.0,),
        cells=((CellView(combo="only", bandwidth_ghz=10.0, metric_value=123.0),),),
    )
    path = tmp_path / "one.svg"
    render_heatmap(view, path)
    svg = path.read_text()
    assert svg.count("GHz</text>") == 1
    assert "only, 10 GHz" in svg
    assert "no key" not in svg
    # rects: hatch pattern tile, background, one data cell, plot frame,
    # one legend swatch
    assert svg.count("<rect") == 5


def test_no_key_cells_are_hatched_and_named_in_legend(tmp_path):
    view = MosaicView(
        jitter_values=(1e-11, 1e-10),
        distance_values=(10.0,),
        cells=(
            ((CellView(combo="x", bandwidth_ghz=5.0, metric_value=1.0),)),
            ((CellView(combo=None, bandwidth_ghz=None, metric_value=0.0),)),
        ),
    )
    path = tmp_path / "hatch.svg"
    render_heatmap(view, path)
    svg = path.read_text()
    assert 'fill="url(#nokey)"' in svg
    assert ">no key</text>" in svg


def test_legend_lists_every_combo_category(tmp_path):
    def cell(combo, bw):
        return CellView(combo=combo, bandwidth_ghz=bw, metric_value=1.0)

    view = MosaicView(
        jitter_values=(1e-11, 1e-10),
        distance_values=(10.0, 100.0),
        cells=(
            (cell("alpha", 100.0), cell("beta", 10.0)),
            (cell("gamma", 1.0), cell("alpha", 5.0)),
        ),
    )
    path = tmp_path / "legend.svg"
    render_heatmap(view, path)
    svg = path.read_text()
    for entry in ("alpha, 100 GHz", "alpha, 5 GHz", "beta, 10 GHz", "gamma, 1 GHz"):
        assert entry in svg
    assert svg.count("GHz</text>") == 4


def test_empty_view_is_rejected(tmp_path):
    view = MosaicView(jitter_values=(), distance_values=(), cells=())
    with pytest.raises(ValueError, match="empty"):
        render_heatmap(view, tmp_path / "x.svg")


def test_labels_are_xml_escaped(tmp_path):
    view = MosaicView(
        jitter_values=(1e-10,),
        distance_values=(50.0,),
        cells=((CellView(combo="a<b & c", bandwidth_ghz=1.0, metric_value=1.0),),),
    )
    path = tmp_path / "esc.svg"
    render_heatmap(view, path)
    root = ET.fromstring(path.read_text())
    texts = [t.text for t in root.iter() if t.tag.endswith("text")]
    assert any(t == "a<b & c, 1 GHz" for t in texts)
