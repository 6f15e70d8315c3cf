import csv
import json
import xml.etree.ElementTree as ElementTree

import pytest

from qkonc.config import ExperimentConfig
from qkonc.errors import ArgumentError, OutputError
from qkonc.fitting import ExpFit
from qkonc.kernel import ConcentrationPoint
from qkonc.report import (COMPARISON, COMPARISON_HEADER, CONCENTRATION, CONCENTRATION_HEADER, INSUFFICIENT_POINTS,
                          ExperimentReport, emit_csv, emit_svg, format_value, prepare_output_dir, write_json)
from qkonc.runtime import RuntimeCurve, RuntimeRecord, RuntimeScope

MU = ExpFit(0.61, 0.42, 0.97)
SIGMA = ExpFit(0.27, 0.51, 0.95)


def _report() -> ExperimentReport:
    points = [ConcentrationPoint(n, 0.61 * 0.657 ** n, 0.27 * 0.6 ** n, 100, 42 ^ n) for n in (2, 4, 6)]
    records = [RuntimeRecord(n, 4 + 6 * (n - 1), 1234.5678 * n, 1234.5678 * n / 4950, 1e-7 * n, 0.1 / 3 * n,
                             2.0 ** n * 1e-3, RuntimeScope.FULL_GRAM) for n in (2, 4, 6)]
    curve = RuntimeCurve(RuntimeScope.FULL_GRAM, 100, MU, SIGMA, records=records, points=points,
                         quantum_growth=ExpFit(1e-3, -0.3, 0.99), classical_growth=ExpFit(1e-4, -0.69, 1.0))
    return ExperimentReport(ExperimentConfig(qubits=(2, 4, 6)), points=points, mu_fit=MU, sigma_fit=SIGMA,
                            curve=curve, records=list(records), machine={"platform": "test"}, wall_time_s=1.5)


def _read_rows(path):
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


class TestEmitCsv:
    def test_concentration(self, tmp_path):
        report = _report()
        path = tmp_path / "concentration.csv"
        emit_csv(report, str(path), CONCENTRATION)
        rows = _read_rows(path)
        assert rows[0] == CONCENTRATION_HEADER == ["n", "m", "seed", "mean_k", "std_k"]
        assert len(rows) == 4
        for row, point in zip(rows[1:], report.points):
            assert (int(row[0]), int(row[1]), int(row[2])) == (point.n, point.m, point.seed)
            assert float(row[3]) == point.mean
            assert float(row[4]) == point.std

    def test_comparison(self, tmp_path):
        report = _report()
        path = tmp_path / "comparison.csv"
        emit_csv(report, str(path), COMPARISON)
        rows = _read_rows(path)
        assert ",".join(rows[0]) == "n,layers,shots,t_circ_s,t_quantum_s,t_classical_s,scope"
        assert rows[0] == COMPARISON_HEADER
        for row, record in zip(rows[1:], report.records):
            assert [float(value) for value in row[2:6]] == [record.shots, record.t_circ, record.t_quantum,
                                                            record.t_classical]
            assert row[6] == "full-gram"

    def test_line_endings(self, tmp_path):
        path = tmp_path / "concentration.csv"
        emit_csv(_report(), str(path))
        content = path.read_bytes()
        assert b"\r" not in content
        assert content.endswith(b"\n")

    def test_empty_report(self, tmp_path):
        empty = ExperimentReport(ExperimentConfig())
        for kind, header in ((CONCENTRATION, CONCENTRATION_HEADER), (COMPARISON, COMPARISON_HEADER)):
            path = tmp_path / "{}.csv".format(kind)
            emit_csv(empty, str(path), kind)
            assert _read_rows(path) == [header]

    def test_unknown_kind(self, tmp_path):
        with pytest.raises(ArgumentError):
            emit_csv(_report(), str(tmp_path / "x.csv"), "scatter")

    def test_unwritable_path(self, tmp_path):
        path = tmp_path / "missing" / "concentration.csv"
        with pytest.raises(OutputError) as info:
            emit_csv(_report(), str(path))
        assert info.value.path == str(path)
        assert str(path) in str(info.value)

    @pytest.mark.parametrize("value", [0.1, 1 / 3, 2.0 ** -60, 1e300, 123456789.123456789])
    def test_floats_reparse_exactly(self, value):
        assert format_value(value) == "{:.17g}".format(value)
        assert float(format_value(value)) == value

    def test_non_float_cells(self):
        assert format_value(7) == "7"
        assert format_value("per-entry") == "per-entry"


class TestEmitSvg:
    @pytest.mark.parametrize("kind", [CONCENTRATION, COMPARISON])
    def test_valid_svg(self, tmp_path, kind):
        path = tmp_path / "{}.svg".format(kind)
        emit_svg(_report(), str(path), kind)
        root = ElementTree.parse(str(path)).getroot()
        assert root.tag.endswith("svg")
        content = path.read_text(encoding="utf-8")
        assert "href" not in content
        assert "<polyline" in content
        assert "1e-" in content

    def test_concentration_legend(self, tmp_path):
        path = tmp_path / "c.svg"
        emit_svg(_report(), str(path), CONCENTRATION)
        content = path.read_text(encoding="utf-8")
        for label in ("mean &lt;K&gt;", "std sigma(K)", "mean fit", "std fit"):
            assert label in content

    def test_comparison_legend(self, tmp_path):
        path = tmp_path / "c.svg"
        emit_svg(_report(), str(path), COMPARISON)
        content = path.read_text(encoding="utf-8")
        assert "quantum T_Q" in content and "classical T_C" in content

    def test_empty_report(self, tmp_path):
        path = tmp_path / "empty.svg"
        emit_svg(ExperimentReport(ExperimentConfig()), str(path), CONCENTRATION)
        ElementTree.parse(str(path))

    def test_unknown_kind(self, tmp_path):
        with pytest.raises(ArgumentError):
            emit_svg(_report(), str(tmp_path / "x.svg"), "pie")


class TestReportDicts:
    def test_fits(self):
        assert _report().fits_dict() == {"mu": MU.to_dict(), "sigma": SIGMA.to_dict()}

    def test_fits_with_status(self):
        report = ExperimentReport(ExperimentConfig(qubits=(2,)), fit_status=INSUFFICIENT_POINTS)
        assert report.fits_dict() == {"mu": None, "sigma": None, "status": "insufficient points"}

    def test_to_dict(self):
        data = json.loads(json.dumps(_report().to_dict()))
        assert data["seed_derivation"] == "seed XOR n"
        assert ExperimentConfig.from_dict(data["config"]) == ExperimentConfig(qubits=(2, 4, 6))
        assert [p["n"] for p in data["points"]] == [2, 4, 6]
        assert len(data["records"]) == 3
        assert data["records"][0]["shots"] == 1234.5678 * 2
        assert data["records"][0]["shots_per_entry"] == 1234.5678 * 2 / 4950
        assert data["growth"]["quantum"]["rate"] == 0.3
        assert data["growth"]["classical"]["rate"] == 0.69
        assert data["advantage_qubits"] == []
        assert "machine" not in data and "wall_time_s" not in data

    def test_concentration_only_report(self):
        report = ExperimentReport(ExperimentConfig(), points=_report().points, mu_fit=MU, sigma_fit=SIGMA)
        assert "records" not in report.to_dict() and "growth" not in report.to_dict()

    def test_manifest(self):
        manifest = _report().manifest()
        assert manifest["status"] == "ok" and manifest["error"] is None
        assert manifest["wall_time_s"] == 1.5
        assert manifest["machine"] == {"platform": "test"}


class TestOutputDir:
    def test_creates_nested(self, tmp_path):
        path = tmp_path / "a" / "b"
        prepare_output_dir(str(path))
        assert path.is_dir()

    def test_existing_file(self, tmp_path):
        path = tmp_path / "file"
        path.write_text("x")
        with pytest.raises(OutputError):
            prepare_output_dir(str(path))

    def test_write_json(self, tmp_path):
        path = tmp_path / "data.json"
        write_json(str(path), {"b": [1, 2.5]})
        assert json.loads(path.read_text()) == {"b": [1, 2.5]}
        assert path.read_bytes().endswith(b"}\n")
