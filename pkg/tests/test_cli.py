import csv
import io
import json

import numpy as np
import pytest

from decochan.cli import main
from decochan.report import CSV_HEADER, make_figures, sweep


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows


class TestCapacityCommand:
    def test_fully_x0(self, capsys):
        code, out, _ = run_cli(["capacity", "--family", "fully", "--d", "12", "--x", "0"], capsys)
        assert code == 0
        row = parse_csv(out)[0]
        assert row[0] == "fully"
        assert float(row[4]) == pytest.approx(3.5849625, abs=1e-6)

    def test_block_full_noise_log2k(self, capsys):
        code, out, _ = run_cli(
            ["capacity", "--family", "block", "--d", "12", "--k", "3", "--x", "1"], capsys
        )
        assert code == 0
        assert float(parse_csv(out)[0][4]) == pytest.approx(np.log2(3), abs=1e-9)

    def test_numeric_gap(self, capsys):
        code, out, _ = run_cli(
            [
                "capacity", "--family", "weak", "--d", "12", "--k", "2", "--x", "1",
                "--numeric", "--tol", "1e-11",
            ],
            capsys,
        )
        assert code == 0
        row = parse_csv(out)[0]
        assert float(row[6]) <= 1e-6

    def test_json_output(self, capsys):
        code, out, _ = run_cli(
            ["capacity", "--family", "fully", "--d", "4", "--x", "0.5", "--json"], capsys
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == "fully"
        assert payload["q_numeric"] is None
        # 2 + (3/4)(1/2)log2(1/8) + (5/8)log2(5/8)
        expected = 2.0 + 0.375 * np.log2(0.125) + 0.625 * np.log2(0.625)
        assert payload["q_closed"] == pytest.approx(expected, abs=1e-12)

    def test_bad_parameter_exit_2(self, capsys):
        code, _, err = run_cli(
            ["capacity", "--family", "block", "--d", "12", "--k", "5", "--x", "0.5"], capsys
        )
        assert code == 2
        assert "does not divide" in err


class TestCurveCommand:
    def test_endpoints(self, capsys):
        code, out, _ = run_cli(
            ["curve", "--family", "fully", "--d", "12", "--x-steps", "3"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        assert rows[0] == list(CSV_HEADER)
        xs = [float(r[3]) for r in rows[1:]]
        assert xs == [0.0, 0.5, 1.0]
        assert float(rows[1][4]) == pytest.approx(np.log2(12), abs=1e-5)
        assert float(rows[3][4]) == pytest.approx(0.0, abs=1e-9)

    def test_block_endpoint(self, capsys):
        code, out, _ = run_cli(
            ["curve", "--family", "block", "--d", "12", "--k", "6", "--x-steps", "11"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        assert float(rows[-1][4]) == pytest.approx(np.log2(6), abs=1e-9)

    def test_weak_positive_at_full_noise(self, capsys):
        code, out, _ = run_cli(
            ["curve", "--family", "weak", "--d", "12", "--k", "4", "--x-steps", "11"], capsys
        )
        assert code == 0
        assert float(parse_csv(out)[-1][4]) > 0.0

    def test_deterministic_output(self, capsys):
        argv = ["curve", "--family", "weak", "--d", "8", "--k", "3", "--x-steps", "21"]
        _, out1, _ = run_cli(argv, capsys)
        _, out2, _ = run_cli(argv, capsys)
        assert out1 == out2

    def test_bad_steps(self, capsys):
        code, _, err = run_cli(
            ["curve", "--family", "fully", "--d", "4", "--x-steps", "1"], capsys
        )
        assert code == 2


@pytest.fixture(scope="module")
def fig_dir(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("figs")
    paths = make_figures(out_dir, d=12, x_steps=101)
    return out_dir, paths


class TestFiguresCommand:
    def test_files_exist(self, fig_dir):
        out_dir, paths = fig_dir
        for name in ("fig1.csv", "fig1.svg", "fig2.csv", "fig2.svg"):
            assert (out_dir / name).exists()

    def test_fig1_spot_values(self, fig_dir):
        out_dir, _ = fig_dir
        rows = parse_csv((out_dir / "fig1.csv").read_text())[1:]
        by = {(int(r[2]), float(r[3])): float(r[4]) for r in rows}
        assert by[(1, 1.0)] == pytest.approx(0.0, abs=1e-9)
        for x in (0.0, 0.37, 1.0):
            assert by[(12, x)] == pytest.approx(3.5849625, abs=1e-6)
        ks = sorted({int(r[2]) for r in rows})
        assert ks == [1, 2, 3, 4, 6, 12]

    def test_fig2_shares_k1_curve(self, fig_dir):
        out_dir, _ = fig_dir
        fig1 = parse_csv((out_dir / "fig1.csv").read_text())[1:]
        fig2 = parse_csv((out_dir / "fig2.csv").read_text())[1:]
        col1 = {float(r[3]): float(r[4]) for r in fig1 if r[2] == "1"}
        col2 = {float(r[3]): float(r[4]) for r in fig2 if r[2] == "1"}
        assert col1.keys() == col2.keys()
        for x, q in col1.items():
            assert abs(q - col2[x]) <= 1e-12

    def test_fig2_nonzero_at_full_noise(self, fig_dir):
        out_dir, _ = fig_dir
        rows = parse_csv((out_dir / "fig2.csv").read_text())[1:]
        for k in (2, 3, 4, 6):
            q = [float(r[4]) for r in rows if int(r[2]) == k and float(r[3]) == 1.0]
            assert len(q) == 1 and q[0] > 0.0

    def test_svg_shape(self, fig_dir):
        out_dir, _ = fig_dir
        svg = (out_dir / "fig1.svg").read_text()
        assert svg.startswith("<?xml")
        assert 'version="1.1"' in svg
        assert 'viewBox="0 0 800 600"' in svg

    def test_reproducible_bytes(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        make_figures(a, d=12, x_steps=11)
        make_figures(b, d=12, x_steps=11)
        for name in ("fig1.csv", "fig2.csv", "fig1.svg", "fig2.svg"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_io_failure_exit_3(self, tmp_path, capsys):
        blocker = tmp_path / "occupied"
        blocker.write_text("not a directory")
        code, _, err = run_cli(["figures", "--out-dir", str(blocker)], capsys)
        assert code == 3

    def test_cli_reports_paths(self, tmp_path, capsys):
        code, out, _ = run_cli(
            ["figures", "--out-dir", str(tmp_path / "f"), "--x-steps", "5"], capsys
        )
        assert code == 0
        assert out.count("wrote ") == 4


class TestVerifyCommand:
    def test_passes(self, capsys):
        code, out, _ = run_cli(["verify", "--max-d", "3", "--tol", "1e-9", "--seed", "7"], capsys)
        assert code == 0
        assert "overall: PASS" in out
        assert "degradability/fully" in out

    def test_injected_failure_exit_1(self, capsys):
        code, out, _ = run_cli(["verify", "--max-d", "2", "--inject-failure"], capsys)
        assert code == 1
        assert "FAIL" in out

    def test_bad_max_d(self, capsys):
        code, _, _ = run_cli(["verify", "--max-d", "1"], capsys)
        assert code == 2


class TestSweepFunction:
    def test_rows_ordered_by_x(self):
        rows = sweep("block", 6, 2, 11)
        xs = [r.x for r in rows]
        assert xs == sorted(xs)
        assert rows[0].q_closed == pytest.approx(np.log2(6), abs=1e-12)
        assert rows[-1].q_closed == pytest.approx(1.0, abs=1e-12)

    def test_numeric_rows_have_gap(self):
        rows = sweep("fully", 4, 1, 3, numeric=True, opt_tol=1e-11)
        assert all(r.gap is not None and r.gap <= 1e-6 for r in rows)
