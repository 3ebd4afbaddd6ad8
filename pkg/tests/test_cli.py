import io
import json

import pytest

from cylpart.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestBasicCommands:
    def test_count_equals_borodin(self, capsys):
        code, counted = run_json(capsys, "count", "--profile", "2,1", "--order", "15")
        assert code == 0 and counted["schema"] == 1
        code, product = run_json(capsys, "borodin", "--profile", "2,1", "--order", "15")
        assert code == 0
        assert counted["coeffs"] == product["coeffs"]
        assert all(isinstance(c, str) for c in counted["coeffs"])

    def test_decompose_example(self, capsys):
        code, out = run_cli(capsys, "decompose", "--profile", "1,1,1", "5,4|8,2|7,5,1")
        assert code == 0
        assert out.strip() == "beta=5^(2,0),1^(2,2) mu=7,6,5,4,2,2"

    def test_reconstruct_roundtrip(self, capsys):
        code, out = run_cli(capsys, "reconstruct", "--profile", "1,1,1",
                            "--beta", "15^(2,1),11^(3,2),10^(3,1),1^(2,2)",
                            "--mu", "13,10,10,9,5,5,3,2")
        assert code == 0
        assert out.strip() == "c=(1,1,1) 9,7,7,6,1|12,9,7,3,1|11,10,7,2,2"

    def test_enumerate_count_agree(self, capsys):
        code, listed = run_json(capsys, "enumerate", "--profile", "1,1", "--order", "5")
        assert code == 0
        code, counted = run_json(capsys, "count", "--profile", "1,1", "--order", "5")
        assert sum(int(c) for c in counted["coeffs"]) == len(listed["partitions"])

    def test_slices_and_shrink(self, capsys):
        code, out = run_cli(capsys, "slices", "--profile", "2,1",
                            "15,15,10,10,6,5|18,13,6,6")
        assert code == 0 and "10^(3) x5" in out
        code, payload = run_json(capsys, "shrink", "--profile", "1,1,1",
                                 "--mode", "exact",
                                 "3,3,3,2,2,2,2,1,1,1,1,1|3,3,3,2,2,2,1,1,1,1|"
                                 "3,3,3,2,2,2,2,1,1,1,1")
        assert payload["side"] == ["9", "9", "6", "6", "6", "3", "3", "3", "3"]

    def test_stdin_partitions(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("5,4|8,2|7,5,1\n"))
        code, out = run_cli(capsys, "decompose", "--profile", "1,1,1", "-")
        assert code == 0 and "beta=5^(2,0),1^(2,2)" in out


class TestStructuredOutput:
    def test_stg_json(self, capsys):
        code, payload = run_json(capsys, "stg", "--rank", "3", "--level", "2")
        assert code == 0
        assert payload["rank_power_blocks"] == \
            [[[1, 2], [2, 3]], [[3, 2], [2, 1]], [[3, 2], [2, 1]]]
        assert payload["block_char_polys"][0] == ["-1", "-4", "1"]

    def test_path_counts_text(self, capsys):
        code, out = run_cli(capsys, "path-counts", "--profile", "1,1,1",
                            "--order", "7")
        assert code == 0
        assert out.splitlines()[-1] == "a_7 = 192"

    def test_poly_csv(self, capsys):
        code, out = run_cli(capsys, "poly", "Ptilde", "--profile", "1,1,0",
                            "--n", "2", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "rank,level,n,shape,value_at_1,min_coefficient"
        assert all(len(line.split(",")) == 6 for line in lines)

    def test_lineups(self, capsys):
        code, payload = run_json(capsys, "lineups", "--profile", "1,1,0",
                                 "--kind", "mjl", "--n", "3")
        assert code == 0
        assert "1^(2,0),5^(2,1),9^(2,2) iota={3} class=minimal-jammed" \
            in payload["lineups"]


class TestVerificationCommands:
    def test_verify_closed_form(self, capsys):
        for profile in ["1,1,1", "2,0,0", "4,0"]:
            code, out = run_cli(capsys, "verify-closed-form",
                                "--profile", profile, "--order", "20")
            assert code == 0 and "ok" in out

    def test_verify_closed_form_unknown_profile(self, capsys):
        assert main(["verify-closed-form", "--profile", "3,1"]) == 2

    def test_functional_eq(self, capsys):
        code, out = run_cli(capsys, "functional-eq", "--profile", "2,1",
                            "--order", "8")
        assert code == 0

    def test_lemma_and_qconj(self, capsys):
        assert main(["lemma-check", "--profile", "1,1,0",
                     "--n", "2", "--order", "10"]) == 0
        capsys.readouterr()
        assert main(["qconj-check", "--profile", "2,1",
                     "--n", "2", "--order", "8"]) == 0

    def test_verify_all(self, capsys):
        code, payload = run_json(capsys, "verify-all", "--profile", "0,2,0",
                                 "--order", "10", "--jobs", "2", "--seed", "7")
        assert code == 0 and payload["ok"]
        assert len(payload["checks"]) == 10

    def test_verify_all_deterministic_across_jobs(self, capsys):
        _, a = run_json(capsys, "verify-all", "--profile", "1,1",
                        "--order", "8", "--jobs", "1", "--seed", "3")
        _, b = run_json(capsys, "verify-all", "--profile", "1,1",
                        "--order", "8", "--jobs", "3", "--seed", "3")
        assert a == b


class TestUsageErrors:
    def test_no_arguments(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_bad_partition_text(self, capsys):
        assert main(["decompose", "--profile", "1,1,1", "9|1,1|"]) in (0, 2)
        code = main(["decompose", "--profile", "1,1,1", "1|4|x"])
        assert code == 2

    def test_invalid_partition_rejected(self, capsys):
        # top row must dominate the shifted second row: 1 >= 5 fails
        code = main(["decompose", "--profile", "1,1,1", "1|5,5|"])
        assert code == 2
