"""CLI parsing, CSV contract, SVG plot contract."""

import math
import xml.etree.ElementTree as ET

import pytest

from sefdm.cli import (
    CSV_HEADER,
    UsageError,
    emit_csv,
    emit_plot,
    main,
    parse_args,
    read_csv,
)
from sefdm.harness import SweepSpec, ber_sweep


def _tiny_records(ebn0=(2.0, 4.0), decoder="stripe", alphas=((1, 2),)):
    spec = SweepSpec(
        carriers=8, samples=8, alphas=alphas, ebn0_db=ebn0, alphabet="qam4",
        decoder=decoder, min_bit_errors=20, max_symbol_periods=500, seed=3,
    )
    return ber_sweep(spec)


class TestParseArgs:
    def test_figure_style_run(self):
        cfg = parse_args(
            "--carriers 16 --oversample 16 --alpha 5/6 --alphabet qam4 "
            "--decoder stripe --ebn0 0:12:2".split()
        )
        assert cfg.spec.carriers == 16
        assert cfg.spec.samples == 256
        assert cfg.spec.alphas == ((5, 6),)
        assert cfg.spec.ebn0_db == (0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0)
        assert cfg.spec.decoder == "stripe"

    def test_repeatable_alpha_and_list(self):
        cfg = parse_args(
            "--carriers 8 --alpha 1/2 --alpha 3/4 --ebn0-list 1,2.5,4".split()
        )
        assert cfg.spec.alphas == ((1, 2), (3, 4))
        assert cfg.spec.ebn0_db == (1.0, 2.5, 4.0)

    def test_default_samples_equal_carriers(self):
        cfg = parse_args("--carriers 16 --alpha 5/6 --ebn0-list 4".split())
        assert cfg.spec.samples == 16

    def test_malformed_alpha(self):
        with pytest.raises(UsageError):
            parse_args("--carriers 8 --alpha five/6 --ebn0-list 4".split())

    def test_non_reduced_alpha(self):
        with pytest.raises(UsageError):
            parse_args("--carriers 8 --alpha 2/4 --ebn0-list 4".split())

    def test_alpha_above_one(self):
        with pytest.raises(UsageError):
            parse_args("--carriers 8 --alpha 7/6 --ebn0-list 4".split())

    def test_samples_below_carriers(self):
        with pytest.raises(UsageError):
            parse_args("--carriers 16 --samples 8 --alpha 1/2 --ebn0-list 4".split())

    def test_ml_guard(self):
        # 4^12 = 2^24 candidates exceeds the 2^20 enumeration guard
        with pytest.raises(UsageError):
            parse_args(
                "--carriers 12 --alphabet qam4 --decoder ml --alpha 5/6 --ebn0-list 4".split()
            )

    def test_ml_within_guard_accepted(self):
        cfg = parse_args(
            "--carriers 4 --samples 128 --alphabet qam4 --decoder ml "
            "--alpha 3/4 --ebn0-list 8".split()
        )
        assert cfg.spec.decoder == "ml"

    def test_unknown_flag_exits(self):
        with pytest.raises(SystemExit):
            parse_args("--carriers 8 --alpha 1/2 --ebn0-list 4 --bogus 1".split())

    def test_samples_oversample_exclusive(self):
        with pytest.raises(SystemExit):
            parse_args(
                "--carriers 8 --samples 16 --oversample 2 --alpha 1/2 --ebn0-list 4".split()
            )

    def test_malformed_ebn0_range(self):
        with pytest.raises(UsageError):
            parse_args("--carriers 8 --alpha 1/2 --ebn0 4:2".split())


class TestEmitCsv:
    def test_header_contract(self, tmp_path):
        path = tmp_path / "out.csv"
        emit_csv(_tiny_records(), path)
        first = path.read_text(encoding="utf-8").splitlines()[0]
        assert first == CSV_HEADER

    def test_deterministic_modulo_wall_time(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(_tiny_records(), p1)
        emit_csv(_tiny_records(), p2)
        rows1 = [l.rsplit(",", 1)[0] for l in p1.read_text().splitlines()]
        rows2 = [l.rsplit(",", 1)[0] for l in p2.read_text().splitlines()]
        assert rows1 == rows2

    def test_round_trip(self, tmp_path):
        import dataclasses

        records = _tiny_records()
        path = tmp_path / "rt.csv"
        emit_csv(records, path)
        back = read_csv(path)
        key = lambda r: (r.alpha_num / r.alpha_den, r.ebn0_db)
        a = sorted((dataclasses.replace(r, wall_time_s=0.0) for r in records), key=key)
        b = sorted((dataclasses.replace(r, wall_time_s=0.0) for r in back), key=key)
        assert a == b

    def test_noiseless_row(self, tmp_path):
        records = _tiny_records(ebn0=(math.inf,), alphas=((1, 1),))
        path = tmp_path / "zero.csv"
        emit_csv(records, path)
        row = path.read_text().splitlines()[1].split(",")
        header = CSV_HEADER.split(",")
        assert row[header.index("ber")] == "0.0"
        assert row[header.index("ci_low")] == "0.0"

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            emit_csv([], tmp_path / "no.csv")


class TestEmitPlot:
    def test_valid_self_contained_svg(self, tmp_path):
        path = tmp_path / "plot.svg"
        emit_plot(_tiny_records(), path)
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")
        text = path.read_text(encoding="utf-8")
        assert "href" not in text  # no external resources

    def test_theory_curve_present(self, tmp_path):
        path = tmp_path / "plot.svg"
        emit_plot(_tiny_records(), path)
        assert "theory (qam4)" in path.read_text(encoding="utf-8")

    def test_zero_error_points_marked_not_joined(self, tmp_path):
        records = _tiny_records(ebn0=(math.inf,), alphas=((1, 1),))
        path = tmp_path / "plot.svg"
        emit_plot(records, path)
        text = path.read_text(encoding="utf-8")
        assert "<path d=" in text  # distinct marker for the zero-error point


class TestMain:
    def test_end_to_end(self, tmp_path):
        out = tmp_path / "run"
        rc = main(
            f"--carriers 8 --alpha 1/2 --ebn0-list 2,4 --decoder stripe "
            f"--min-errors 10 --max-periods 200 --seed 1 --out {out} --format both".split()
        )
        assert rc == 0
        assert (tmp_path / "run.csv").exists()
        assert (tmp_path / "run.svg").exists()

    def test_usage_error_exit_code(self, capsys):
        assert main("--carriers 8 --alpha 2/4 --ebn0-list 4".split()) == 2
        assert "error" in capsys.readouterr().err
