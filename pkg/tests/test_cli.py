import argparse
import csv
import io
import json
import random
from fractions import Fraction

import pytest

from padiclocal import cli
from padiclocal.cli import (
    COLUMNS,
    ConfigError,
    RunConfig,
    build_config,
    emit,
    fixed,
    main,
    make_row,
    parse_config_file,
    sort_key,
)


def write_config(tmp_path, text):
    path = tmp_path / "run.cfg"
    path.write_text(text, encoding="utf-8")
    return str(path)


SMALL = 'qs = [2]\nkinds = ["split"]\nn_T_values = [0]\nn_chi_max = 1\n'


class TestConfigParsing:
    def test_json_values_string_fallback_and_comments(self, tmp_path):
        path = write_config(
            tmp_path,
            "# leading comment\n"
            "qs = [2, 3]   # trailing comment\n"
            "\n"
            "setting = ind\n"
            "l_ratio = 0.25\n",
        )
        assert parse_config_file(path) == {
            "qs": [2, 3],
            "setting": "ind",
            "l_ratio": 0.25,
        }

    def test_line_without_equals_is_an_error(self, tmp_path):
        path = write_config(tmp_path, "qs [2]\n")
        with pytest.raises(ConfigError, match="expected key = value"):
            parse_config_file(path)

    def test_missing_file_is_an_error(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config"):
            parse_config_file(str(tmp_path / "absent.cfg"))

    def test_flag_overrides_beat_the_file(self, tmp_path):
        path = write_config(tmp_path, "truncation = 30\nseed = 5\n")
        args = argparse.Namespace(config=path, precision=None, truncation=80,
                                  jobs=None, seed=None)
        cfg = build_config(args)
        assert cfg.truncation == 80
        assert cfg.seed == 5

    def test_unknown_key_is_refused(self, tmp_path):
        path = write_config(tmp_path, "bogus_key = 1\n")
        args = argparse.Namespace(config=path, precision=None, truncation=None,
                                  jobs=None, seed=None)
        with pytest.raises(ConfigError, match=r"unknown config keys \['bogus_key'\]"):
            build_config(args)

    @pytest.mark.parametrize(
        "override",
        [
            {"qs": [1]},
            {"kinds": ["split", "cuspidal"]},
            {"alphas": [2]},
            {"jobs": 0},
            {"setting": "both"},
            {"s_points": ["one"]},
        ],
    )
    def test_validation_rejects_bad_values(self, override):
        with pytest.raises(ConfigError):
            RunConfig(**override).validate()


class TestRowPlumbing:
    def test_fixed_rounds_to_twelve_significant_digits(self):
        assert fixed(Fraction(1, 3)) == 0.333333333333
        assert fixed(2) == 2.0

    def test_make_row_records_exact_values(self):
        row = make_row(3, "split", 0, 1, -1, "2", Fraction(-32, 13), False)
        assert row["schema"] == 1
        assert row["value_re"] == fixed(Fraction(-32, 13))
        assert row["value_im"] == 0.0
        assert row["value_exact"] == "-32/13"

    def test_make_row_handles_complex_values_and_extras(self):
        row = make_row(value=1 + 2j, deps=("vol_T",), branch="special")
        assert row["value_re"] == 1.0 and row["value_im"] == 2.0
        assert "value_exact" not in row
        assert row["symbolic_deps"] == "vol_T"
        assert row["branch"] == "special"

    def test_emit_json_lines_are_sorted_and_schema_versioned(self, capsys):
        rows = [make_row(3, "split", 0, 0, 1, "2", 1, False),
                make_row(2, "inert", 0, 0, 1, "1", 2, True)]
        emit(rows, "json", None)
        lines = capsys.readouterr().out.strip().splitlines()
        parsed = [json.loads(line) for line in lines]
        assert [row["q"] for row in parsed] == [2, 3]
        for line in lines:
            keys = list(json.loads(line))
            assert keys == sorted(keys)

    def test_emit_csv_has_the_fixed_header_and_drops_extras(self, tmp_path):
        rows = [make_row(2, "split", 0, 0, 1, "1", 1, False, chi_index=4)]
        out = tmp_path / "table.csv"
        emit(rows, "csv", str(out))
        text = out.read_text(encoding="utf-8")
        assert text.splitlines()[0] == ",".join(COLUMNS)
        record = next(csv.DictReader(io.StringIO(text)))
        assert record["q"] == "2" and "chi_index" not in record

    def test_emission_order_is_independent_of_input_order(self, capsys):
        rows = [make_row(q, kind, 0, n, 1, "1", q + n, False, chi_index=n)
                for q in (2, 3) for kind in ("split", "inert") for n in (0, 1)]
        emit(list(rows), "json", None)
        first = capsys.readouterr().out
        shuffled = list(rows)
        random.Random(9).shuffle(shuffled)
        emit(shuffled, "json", None)
        assert capsys.readouterr().out == first
        assert sorted(rows, key=sort_key) == sorted(reversed(rows), key=sort_key)


class TestMain:
    def test_euler_subcommand_emits_rows(self, tmp_path, capsys):
        path = write_config(tmp_path, SMALL)
        assert main(["euler", "--config", path]) == 0
        rows = [json.loads(line)
                for line in capsys.readouterr().out.strip().splitlines()]
        assert rows and all(row["schema"] == 1 for row in rows)
        assert {row["kind"] for row in rows} == {"split"}

    def test_bad_config_exits_two_with_a_failure_record(self, tmp_path, capsys):
        path = write_config(tmp_path, "bogus_key = 1\n")
        assert main(["euler", "--config", path]) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err)
        assert record["stage"] == "config"
        assert "bogus_key" in record["failure"]

    def test_verification_failure_exits_one(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setattr(cli, "is_exceptional",
                            lambda case, alpha, chi: True)
        path = write_config(tmp_path, SMALL)
        assert main(["exceptional", "--config", path]) == 1
        record = json.loads(capsys.readouterr().out.strip().splitlines()[0])
        assert record["subcommand"] == "exceptional"
        assert "disagrees" in record["failure"]

    def test_out_flag_writes_csv_to_a_file(self, tmp_path, capsys):
        path = write_config(tmp_path, SMALL)
        out = tmp_path / "euler.csv"
        assert main(["euler", "--config", path, "--format", "csv",
                     "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(COLUMNS)
        assert len(lines) > 1

    def test_interpolate_reads_place_tables_from_config(self, tmp_path, capsys):
        path = write_config(
            tmp_path,
            'places = [{"q": 3, "torus_kind": "inert", "pi_kind": "spherical"}]\n'
            'setting = "ind"\n',
        )
        assert main(["interpolate", "--config", path]) == 0
        rows = [json.loads(line)
                for line in capsys.readouterr().out.strip().splitlines()]
        by_check = {row["check"]: row for row in rows}
        assert by_check["place-0"]["symbolic_deps"] == "vol_T"
        assert by_check["assembly"]["value_re"] == pytest.approx(3 ** 0.5 / 4)

    def test_interpolate_refuses_a_malformed_place(self, tmp_path, capsys):
        path = write_config(tmp_path, 'places = [{"torus_kind": "inert"}]\n')
        assert main(["interpolate", "--config", path]) == 2
        record = json.loads(capsys.readouterr().err)
        assert record["stage"] == "config"

    def test_discrete_series_runs_with_defaults(self, capsys):
        assert main(["discrete-series"]) == 0
        rows = [json.loads(line)
                for line in capsys.readouterr().out.strip().splitlines()]
        assert {row["check"] for row in rows} == {
            "ladder-relations", "reflection-plus", "reflection-minus",
            "rotation-exchange", "two-structures", "extensions",
        }
