"""CLI surface: subcommands, exit-status contract, file IO, JSON stability."""

import json
import re

import pytest

from seqext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


class TestConstruct:
    def test_formation_with_files(self, capsys, tmp_path):
        out = tmp_path / "w"
        code, payload, _ = run_json(
            capsys, "construct", "formation",
            "--r", "2", "--q", "3", "--x", "3", "--t", "2", "--out", str(out),
        )
        assert code == 0
        assert payload["results"]["witness"] == "1 2 4 1 2 4 1 3 5 1 3 5 2 3 6 2 3 6"
        assert all(c["pass"] for c in payload["checks"])
        assert (tmp_path / "w.seq").read_text().strip() == payload["results"]["witness"]
        assert "troop 1: 1 2 4" in (tmp_path / "w.trace").read_text()

    def test_block(self, capsys):
        code, payload, _ = run_json(capsys, "construct", "block", "--n", "4", "--s", "3")
        assert code == 0
        assert payload["results"]["witness"] == "1 2 3 4 | 3 2 1 | 2 3 4 |"
        length_check = next(c for c in payload["checks"] if c["name"] == "length")
        assert length_check["measured"] == 10

    def test_ds_sparse_infeasible_exits_2(self, capsys):
        code, _, err = run(
            capsys, "construct", "ds-sparse", "--n", "4", "--s", "4", "--j", "2"
        )
        assert code == 2 and "error" in err

    def test_ds_sparse(self, capsys):
        code, payload, _ = run_json(
            capsys, "construct", "ds-sparse", "--n", "48", "--s", "24", "--j", "2"
        )
        assert code == 0
        assert all(c["pass"] for c in payload["checks"])

    def test_missing_params_exit_2(self, capsys):
        code, _, err = run(capsys, "construct", "formation", "--r", "2")
        assert code == 2 and "missing" in err


class TestVerify:
    def test_formation_witness_passes(self, capsys, tmp_path):
        f = tmp_path / "t232.seq"
        f.write_text("1 2 1 2 1 3 1 3 2 3 2 3\n")
        code, out, _ = run(capsys, "verify", str(f), "sparse:2", "formation:2:7")
        assert code == 0 and "pass" in out

    def test_adjacent_repeat_fails_ds(self, capsys, tmp_path):
        f = tmp_path / "bad.seq"
        f.write_text("1 1\n")
        code, out, _ = run(capsys, "verify", str(f), "ds:2")
        assert code == 1 and "FAIL" in out

    def test_block_witness_ds(self, capsys, tmp_path):
        f = tmp_path / "blocks.seq"
        f.write_text("1 2 3 4 | 3 2 1 | 2 3 4 |\n")
        code, _, _ = run(capsys, "verify", str(f), "ds:3", "lambda-prime:3")
        assert code == 0

    def test_pattern_check(self, capsys, tmp_path):
        f = tmp_path / "s.seq"
        f.write_text("1 2 1 3 1\n")  # max alternation 3: avoids (ab)^2
        code, _, _ = run(capsys, "verify", str(f), "pattern:(ab)^2")
        assert code == 0
        f2 = tmp_path / "s2.seq"
        f2.write_text("1 2 1 2\n")  # is (ab)^2: avoidance check fails
        code2, _, _ = run(capsys, "verify", str(f2), "pattern:(ab)^2")
        assert code2 == 1

    def test_unknown_check_exits_2(self, capsys, tmp_path):
        f = tmp_path / "s.seq"
        f.write_text("1 2\n")
        code, _, _ = run(capsys, "verify", str(f), "nonsense:1")
        assert code == 2

    def test_parse_error_exits_2(self, capsys, tmp_path):
        f = tmp_path / "bad.seq"
        f.write_text("1 1 | 2\n")
        code, _, _ = run(capsys, "verify", str(f), "ds:2")
        assert code == 2


class TestOracle:
    def test_lambda(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "lambda", "--n", "3", "--s", "2", "--j", "2"
        )
        assert code == 0
        assert payload["results"]["value"] == 5
        assert payload["results"]["exhausted"] is True

    def test_ex_matrix_shorthand(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "ex-matrix", "--n", "4", "--m", "4", "--pattern", "R2,2"
        )
        assert code == 0 and payload["results"]["value"] == 9

    def test_lambda_prime(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "lambda-prime", "--n", "3", "--s", "1", "--m", "3"
        )
        assert code == 0 and payload["results"]["value"] == 6

    def test_lambda_blocks(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "lambda-blocks", "--n", "2", "--s", "2", "--m", "2"
        )
        assert code == 0 and payload["results"]["value"] == 3

    def test_pattern_shorthand(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "pattern", "--pattern", "(ab)^2", "--j", "2", "--n", "3"
        )
        assert code == 0 and payload["results"]["value"] == 5

    def test_pattern_inline(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "pattern", "--pattern", "a a", "--j", "2", "--n", "3"
        )
        assert code == 0 and payload["results"]["value"] == 3

    def test_pattern_from_file(self, capsys, tmp_path):
        f = tmp_path / "u.seq"
        f.write_text("a b a b\n")
        code, payload, _ = run_json(
            capsys, "oracle", "pattern", "--pattern", str(f), "--j", "2", "--n", "3"
        )
        assert code == 0 and payload["results"]["value"] == 5

    def test_matrix_pattern_from_file(self, capsys, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("11\n11\n")
        code, payload, _ = run_json(
            capsys, "oracle", "ex-matrix", "--n", "3", "--m", "3", "--pattern", str(f)
        )
        assert code == 0 and payload["results"]["value"] == 6

    def test_formation(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "formation",
            "--n", "3", "--r", "2", "--s", "2", "--j", "2",
        )
        assert code == 0 and payload["results"]["value"] == 5

    def test_cap_exceeded_exits_2(self, capsys):
        code, _, err = run(
            capsys, "oracle", "lambda", "--n", "6", "--s", "1", "--j", "2"
        )
        assert code == 2 and "cap" in err

    def test_override_caps_reports_estimate(self, capsys):
        code, payload, _ = run_json(
            capsys, "oracle", "lambda",
            "--n", "6", "--s", "1", "--j", "2", "--override-caps",
        )
        assert code == 0
        assert payload["results"]["value"] == 6
        assert payload["results"]["estimated_nodes"] > 0

    def test_threads_match_serial(self, capsys):
        _, serial, _ = run_json(
            capsys, "oracle", "lambda", "--n", "4", "--s", "2", "--j", "2"
        )
        _, par, _ = run_json(
            capsys, "oracle", "lambda", "--n", "4", "--s", "2", "--j", "2",
            "--threads", "2",
        )
        assert serial["results"]["value"] == par["results"]["value"]
        assert serial["results"]["witness"] == par["results"]["witness"]


class TestBound:
    def test_kst(self, capsys):
        code, payload, _ = run_json(
            capsys, "bound", "kst", "--n", "4", "--m", "4", "--a", "2", "--b", "2"
        )
        assert code == 0 and payload["results"]["bound"] == 10.0

    def test_ds_ceiling_compare(self, capsys):
        code, payload, _ = run_json(
            capsys, "bound", "ds-ceiling", "--n", "3", "--s", "2", "--compare-oracle"
        )
        assert code == 0
        assert payload["results"]["bound"] == 7
        assert payload["results"]["oracle_value"] == 5

    def test_formation_ceiling(self, capsys):
        code, payload, _ = run_json(
            capsys, "bound", "formation-ceiling", "--n", "3", "--r", "2", "--s", "2"
        )
        assert code == 0 and payload["results"]["bound"] == 18

    def test_kst_compare(self, capsys):
        code, payload, _ = run_json(
            capsys, "bound", "kst", "--n", "4", "--m", "4", "--a", "2", "--b", "2",
            "--compare-oracle",
        )
        assert code == 0
        assert payload["results"]["oracle_value"] == 9
        assert all(c["pass"] for c in payload["checks"])


class TestConvert:
    def test_blocks_to_matrix(self, capsys, tmp_path):
        f = tmp_path / "b.seq"
        f.write_text("1 2 | 2 1\n")
        code, payload, _ = run_json(capsys, "convert", "blocks-to-matrix", str(f))
        assert code == 0 and payload["results"]["output"] == "11\n11"

    def test_matrix_to_blocks(self, capsys, tmp_path):
        f = tmp_path / "m.txt"
        f.write_text("11\n11\n")
        code, payload, _ = run_json(capsys, "convert", "matrix-to-blocks", str(f))
        assert code == 0 and payload["results"]["output"] == "1 2 | 1 2"

    def test_round_trip_with_zero_rows(self, capsys, tmp_path):
        matrix_text = "101\n000\n011"
        f = tmp_path / "m.txt"
        f.write_text(matrix_text + "\n")
        code, payload, _ = run_json(capsys, "convert", "matrix-to-blocks", str(f))
        blocks_file = tmp_path / "b.seq"
        blocks_file.write_text(payload["results"]["output"] + "\n")
        code2, payload2, _ = run_json(
            capsys, "convert", "blocks-to-matrix", str(blocks_file), "--n", "3"
        )
        assert code2 == 0 and payload2["results"]["output"] == matrix_text

    def test_section3_witness_incidence(self, capsys, tmp_path):
        f = tmp_path / "b.seq"
        f.write_text("1 2 3 4 | 3 2 1 | 2 3 4\n")
        code, payload, _ = run_json(capsys, "convert", "blocks-to-matrix", str(f))
        assert code == 0
        rows = payload["results"]["output"].split("\n")
        assert len(rows) == 4 and all(len(r) == 3 for r in rows)

    def test_output_file(self, capsys, tmp_path):
        f = tmp_path / "b.seq"
        f.write_text("1 2 | 2 1\n")
        out = tmp_path / "m.txt"
        code, _, _ = run(capsys, "convert", "blocks-to-matrix", str(f), "--out", str(out))
        assert code == 0 and out.read_text() == "11\n11\n"


class TestJsonStability:
    def test_byte_identical_modulo_wall_time(self, capsys):
        def scrub(text):
            return re.sub(r'"wall_time_ms": \d+', '"wall_time_ms": 0', text)

        outs = []
        for _ in range(2):
            code = main(["oracle", "lambda", "--n", "3", "--s", "2", "--j", "2", "--json"])
            assert code == 0
            outs.append(scrub(capsys.readouterr().out))
        assert outs[0] == outs[1]
