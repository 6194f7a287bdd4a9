"""CSV writing and reading: layouts, lossless floats, empty and no-key cases."""

import csv
import math

import pytest

from qlinkopt.model import OperatingPoint, link_stats
from qlinkopt.mosaic import (
    DEFAULT_COMBOS,
    Metric,
    Mosaic,
    SINGLE_CHANNEL_BANDWIDTHS_GHZ,
    SweepAxes,
    build_mosaic,
    normalized_table,
    sweep_cell,
)
from qlinkopt.optimize import SearchConfig
from qlinkopt.tables import read_mosaic_csv, write_csv
from test_optimize import standard_scenario

FAST = SearchConfig(seed_grid=3, max_evaluations=60)


def small_mosaic(**kw):
    axes = SweepAxes(jitter_values=(20e-12, 300e-12), distance_values=(10.0, 120.0))
    args = dict(bandwidths=(50.0, 2.0), search=FAST)
    args.update(kw)
    return build_mosaic(axes, **args)


class TestMosaicCsv:
    def test_round_trip_is_bit_exact(self, tmp_path):
        m = small_mosaic()
        path = tmp_path / "mosaic.csv"
        write_csv(m, path)
        view = read_mosaic_csv(path)
        assert view.jitter_values == m.axes.jitter_values
        assert view.distance_values == m.axes.distance_values
        for i in range(2):
            for j in range(2):
                cell = m.cells[i][j]
                seen = view.cells[i][j]
                assert seen.combo == m.combos[cell.best_combo].label
                assert seen.bandwidth_ghz == cell.best_bandwidth
                assert seen.metric_value == cell.metric_value

    def test_header_layout(self, tmp_path):
        path = tmp_path / "mosaic.csv"
        write_csv(small_mosaic(), path)
        first = path.read_text().splitlines()[0]
        assert first == "jitter_s,distance_km,winner_combo,winner_bandwidth_ghz,metric_value"

    def test_empty_mosaic_writes_header_only(self, tmp_path):
        empty = Mosaic(
            axes=SweepAxes(jitter_values=(), distance_values=()),
            metric=Metric.ABSOLUTE_SKR,
            cells=(),
            bandwidth_set=SINGLE_CHANNEL_BANDWIDTHS_GHZ,
            combos=DEFAULT_COMBOS,
        )
        path = tmp_path / "empty.csv"
        write_csv(empty, path)
        lines = path.read_text().splitlines()
        assert len(lines) == 1
        assert lines[0].startswith("jitter_s,")

    def test_no_key_cells_have_empty_winner_fields(self, tmp_path):
        m = small_mosaic(loss_db=200.0)
        path = tmp_path / "dead.csv"
        write_csv(m, path)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))[1:]
        assert all(row[2] == "" and row[3] == "" for row in rows)
        view = read_mosaic_csv(path)
        assert all(cell.no_key for row in view.cells for cell in row)
        assert all(cell.metric_value == 0.0 for row in view.cells for cell in row)

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="unexpected header"):
            read_mosaic_csv(path)

    def test_rejects_incomplete_grid(self, tmp_path):
        m = small_mosaic()
        path = tmp_path / "mosaic.csv"
        write_csv(m, path)
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")  # drop one cell
        with pytest.raises(ValueError, match="missing cell"):
            read_mosaic_csv(path)


@pytest.fixture(scope="module")
def table_100km():
    axes = SweepAxes(
        jitter_values=(5e-12, 50e-12, 200e-12), distance_values=(100.0,)
    )
    m = build_mosaic(axes)
    return normalized_table(m, 100.0, (200e-12, 50e-12, 5e-12))


class TestNormalizedTableCsv:
    def test_nine_rows_by_thirteen_bandwidth_columns(self, table_100km, tmp_path):
        path = tmp_path / "table.csv"
        write_csv(table_100km, path)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))
        assert len(rows) == 1 + 9  # header + 3 combos x 3 jitters
        assert all(len(row) == 2 + 13 for row in rows)
        assert rows[0][:2] == ["combo", "jitter_s"]
        assert rows[0][2] == "1000"
        assert rows[0][-1] == "0.1"

    def test_rows_are_combo_major(self, table_100km, tmp_path):
        path = tmp_path / "table.csv"
        write_csv(table_100km, path)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))[1:]
        labels = [row[0] for row in rows]
        assert labels == (
            ["SMF 1550nm"] * 3 + ["SMF 1310nm"] * 3 + ["NZDSF 1550nm"] * 3
        )
        # jitter rows keep the requested order inside each block
        jitters = [float(row[1]) for row in rows[:3]]
        assert jitters == [200e-12, 50e-12, 5e-12]

    def test_values_round_trip_exactly(self, table_100km, tmp_path):
        path = tmp_path / "table.csv"
        write_csv(table_100km, path)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))[1:]
        for k in range(3):
            for i in range(3):
                row = rows[k * 3 + i]
                assert float(row[1]) == table_100km.jitter_values[i]
                parsed = tuple(float(v) for v in row[2:])
                assert parsed == table_100km.values[i][k]


class TestLinkStatsCsv:
    def test_single_row_with_all_fields(self, tmp_path):
        st = link_stats(standard_scenario(), OperatingPoint(2e-10, 1e8))
        path = tmp_path / "stats.csv"
        write_csv(st, path)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))
        assert len(rows) == 2
        assert rows[0][:4] == ["eta_total", "coherence_fwhm", "cd_broadening", "total_width"]
        named = dict(zip(rows[0], rows[1]))
        assert float(named["skr"]) == st.skr
        assert float(named["qber"]) == st.qber
        assert float(named["eta_total"]) == st.eta_total

    def test_infinite_car_survives(self, tmp_path):
        # dark-count-free link at zero source rate has no accidentals at all
        from qlinkopt.model import Defaults, build_scenario
        from qlinkopt.mosaic import SMF_C_BAND

        quiet = Defaults(dark_count_rate=0.0)
        s = build_scenario(SMF_C_BAND, 1550.0, 10.0, 10.0, 50e-12, defaults=quiet)
        st = link_stats(s, OperatingPoint(1e-10, 0.0))
        assert st.car == math.inf
        path = tmp_path / "stats.csv"
        write_csv(st, path)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))
        named = dict(zip(rows[0], rows[1]))
        assert float(named["car"]) == math.inf


def test_write_csv_rejects_unknown_types(tmp_path):
    with pytest.raises(TypeError, match="cannot serialize"):
        write_csv(object(), tmp_path / "x.csv")
