import json
import os

import pytest

from zisieve.cli import main


@pytest.fixture()
def cache(tmp_path, monkeypatch):
    path = tmp_path / "primes.zipt"
    monkeypatch.setenv("ZISIEVE_CACHE", str(path))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDispatch:
    def test_unknown_subcommand_usage_error(self, capsys, cache):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1
        assert "usage error" in err

    def test_no_subcommand(self, capsys, cache):
        code, _, err = run(capsys)
        assert code == 1

    def test_computation_error_exit_2(self, capsys, cache):
        code, _, err = run(capsys, "chen", "--N", "3")
        assert code == 2
        assert "even" in err

    def test_bad_gaussian_usage_error(self, capsys, cache):
        code, _, err = run(capsys, "factor", "zzz")
        assert code == 1

    def test_bad_epsilon_rejected(self, capsys, cache):
        code, _, err = run(capsys, "--epsilon", "0.9", "constants")
        assert code == 1


class TestCommands:
    def test_factor_text(self, capsys, cache):
        code, out, _ = run(capsys, "factor", "4+2i")
        assert code == 0
        assert out.strip() == "(1+i)^2 * (2+i)^1 * unit(-i)"

    def test_factor_unit_only(self, capsys, cache):
        code, out, _ = run(capsys, "factor", "i")
        assert out.strip() == "unit(i)"

    def test_primes_build_and_reuse(self, capsys, cache):
        code, out, _ = run(capsys, "--output", "json", "primes", "--limit", "100")
        assert code == 0
        payload = json.loads(out)
        assert payload["count"] == 25  # prime ideals of norm < 100
        assert cache.exists()

    def test_pi(self, capsys, cache):
        code, out, _ = run(capsys, "pi", "100")
        assert code == 0
        assert out.strip() == "25"

    def test_pi_cong(self, capsys, cache):
        code, out, _ = run(capsys, "--output", "json", "pi-cong", "50", "3", "1")
        payload = json.loads(out)
        assert payload["count"] == 5

    def test_lattice_count(self, capsys, cache):
        code, out, _ = run(capsys, "lattice-count", "100")
        assert out.strip() == "317"

    def test_phi_and_moebius(self, capsys, cache):
        assert run(capsys, "phi", "3")[1].strip() == "8"
        assert run(capsys, "moebius", "2+i")[1].strip() == "-1"
        assert run(capsys, "moebius", "2")[1].strip() == "0"

    def test_sing_series_schema(self, capsys, cache):
        code, out, _ = run(capsys, "--output", "json", "sing-series", "6+6i", "--cutoff", "500")
        payload = json.loads(out)
        assert set(payload) == {"value", "cutoff", "tail_bound"}
        assert payload["value"] > 0

    def test_sing_series_odd_rejected(self, capsys, cache):
        code, _, err = run(capsys, "sing-series", "3")
        assert code == 2

    def test_sieve_fn_schema(self, capsys, cache):
        code, out, _ = run(capsys, "--output", "json", "sieve-fn", "--s", "2")
        payload = json.loads(out)
        assert set(payload) == {"s", "F", "f"}
        assert payload["f"] == 0.0

    def test_sieve_demo_schema(self, capsys, cache):
        code, out, _ = run(
            capsys, "--output", "json", "sieve-demo", "--N", "24+18i", "--z", "8", "--D", "64"
        )
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {
            "exact",
            "lambda_lower",
            "lambda_upper",
            "jr_lower",
            "jr_upper",
            "remainder_sum",
        }
        assert payload["lambda_lower"] <= payload["exact"] <= payload["lambda_upper"]

    def test_chen_report(self, capsys, cache):
        code, out, _ = run(capsys, "chen", "--N", "4+2i")
        payload = json.loads(out)
        assert payload["r_value"] == 22
        assert payload["goldbach_count"] == 19

    def test_chen_verbose_loose_count(self, capsys, cache):
        code, out, _ = run(capsys, "chen", "--N", "10+4i", "--verbose")
        payload = json.loads(out)
        assert payload["r_value_distinct"] >= payload["r_value"]

    def test_mertens_single(self, capsys, cache):
        code, out, _ = run(capsys, "--output", "json", "mertens", "--x", "1000")
        payload = json.loads(out)
        assert set(payload) == {"x", "recip_sum", "fitted_B", "product_inv", "ratio_to_theory"}


class TestReports:
    def test_chen_scan_stdout_csv(self, capsys, cache):
        code, out, err = run(capsys, "chen-scan", "--min-norm", "4", "--max-norm", "60")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "N_re,N_im,norm,r_value,goldbach_count,singular_series,lower_bound,ratio"
        assert len(lines) > 5
        # the norm-4 target N = 2 is the known goldbach-free certificate
        assert "counterexample certificate" in err

    def test_chen_scan_csv_with_figure(self, capsys, cache, tmp_path):
        out_csv = tmp_path / "scan.csv"
        code, _, err = run(
            capsys, "chen-scan", "--min-norm", "100", "--max-norm", "400",
            "--csv", str(out_csv),
        )
        assert code == 0
        assert out_csv.exists()
        fig = tmp_path / "scan.png"
        assert fig.exists() and fig.stat().st_size > 0
        header = out_csv.read_text().splitlines()[0]
        assert header.split(",") == [
            "N_re", "N_im", "norm", "r_value", "goldbach_count",
            "singular_series", "lower_bound", "ratio",
        ]
        assert "counterexample" not in err

    def test_mertens_csv_with_figure(self, capsys, cache, tmp_path):
        out_csv = tmp_path / "mertens.csv"
        code, _, _ = run(capsys, "mertens", "--x", "5000", "--csv", str(out_csv))
        assert code == 0
        assert out_csv.exists()
        assert (tmp_path / "mertens.png").exists()
        rows = out_csv.read_text().splitlines()
        assert rows[0] == "x,recip_sum,fitted_B,product_inv,ratio_to_theory"
        assert len(rows) >= 10

    def test_min_above_max_usage_error(self, capsys, cache):
        code, _, _ = run(capsys, "chen-scan", "--min-norm", "10", "--max-norm", "4")
        assert code == 1


class TestDeterminism:
    def test_rerun_byte_identical(self, capsys, cache):
        outputs = []
        for _ in range(2):
            code, out, _ = run(capsys, "--output", "json", "chen", "--N", "20+10i")
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1]

    def test_scan_identical_across_jobs(self, capsys, cache):
        _, serial, _ = run(capsys, "chen-scan", "--min-norm", "4", "--max-norm", "300")
        _, parallel, _ = run(
            capsys, "--jobs", "2", "chen-scan", "--min-norm", "4", "--max-norm", "300"
        )
        assert serial == parallel

    def test_constants_stable(self, capsys, cache):
        _, a, _ = run(capsys, "--output", "json", "constants")
        _, b, _ = run(capsys, "--output", "json", "constants")
        assert a == b


class TestConfigFile:
    def test_file_and_flag_precedence(self, capsys, cache, tmp_path):
        conf = tmp_path / "zisieve.conf"
        conf.write_text("jobs = 2\nquad_tol = 1e-8  # comment\n")
        code, out, _ = run(
            capsys, "--config", str(conf), "--output", "json", "constants"
        )
        assert code == 0

    def test_unknown_key_rejected(self, capsys, cache, tmp_path):
        conf = tmp_path / "zisieve.conf"
        conf.write_text("nonsense = 1\n")
        code, _, err = run(capsys, "--config", str(conf), "constants")
        assert code == 1

    def test_env_cache_used(self, capsys, cache):
        run(capsys, "primes", "--limit", "50")
        assert cache.exists()
