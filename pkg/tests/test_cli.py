import json
import math

import pytest

from ginprod.cli import main


def run_cli(*argv):
    return main(list(argv))


def read_lines(path):
    return path.read_text().splitlines()


class TestProbAllReal:
    def test_two_factor_2x2(self, tmp_path):
        out = tmp_path / "p.csv"
        code = run_cli("prob-all-real", "--n", "2", "--k-products", "2",
                       "--trials", "20000", "--seed", "7", "--out", str(out))
        assert code == 0
        header, row = read_lines(out)
        assert header == "n,K,k,count,p_hat,stderr"
        n, k_products, k, count, p_hat, stderr = row.split(",")
        assert (n, k_products, k) == ("2", "2", "2")
        assert abs(float(p_hat) - math.pi / 4) < 4.0 * float(stderr)
        manifest = json.loads((tmp_path / "p.csv.manifest.json").read_text())
        assert manifest["subcommand"] == "prob-all-real"
        assert manifest["master_seed"] == 7
        assert "duration_s" in manifest

    def test_single_factor_value(self, tmp_path):
        out = tmp_path / "p.csv"
        assert run_cli("prob-all-real", "--n", "2", "--k-products", "1",
                       "--trials", "20000", "--out", str(out)) == 0
        p_hat = float(read_lines(out)[1].split(",")[4])
        assert p_hat == pytest.approx(1.0 / math.sqrt(2.0), abs=0.02)

    def test_grid_row_count(self, tmp_path):
        out = tmp_path / "p.csv"
        assert run_cli("prob-all-real", "--n", "2,3", "--k-products", "1-3",
                       "--trials", "500", "--out", str(out)) == 0
        assert len(read_lines(out)) == 1 + 2 * 3

    def test_zero_trials_rejected(self, tmp_path):
        assert run_cli("prob-all-real", "--n", "2", "--k-products", "1",
                       "--trials", "0", "--out", str(tmp_path / "x.csv")) == 2


class TestHistogram:
    def test_parity_rows_n3(self, tmp_path):
        out = tmp_path / "h.csv"
        assert run_cli("histogram", "--n", "3", "--k-products", "1",
                       "--trials", "2000", "--out", str(out)) == 0
        ks = [line.split(",")[2] for line in read_lines(out)[1:]]
        assert ks == ["1", "3"]

    def test_parity_rows_n8(self, tmp_path):
        out = tmp_path / "h.csv"
        assert run_cli("histogram", "--n", "8", "--k-products", "1",
                       "--trials", "2000", "--out", str(out)) == 0
        ks = [line.split(",")[2] for line in read_lines(out)[1:]]
        assert ks == ["0", "2", "4", "6", "8"]

    def test_all_real_dominates_for_long_products(self, tmp_path):
        out = tmp_path / "h.csv"
        assert run_cli("histogram", "--n", "8", "--k-products", "30",
                       "--trials", "4000", "--seed", "3", "--out", str(out)) == 0
        p_by_k = {line.split(",")[2]: float(line.split(",")[4])
                  for line in read_lines(out)[1:]}
        assert p_by_k["8"] == max(p_by_k.values())


class TestExpectedSweep:
    def test_rows_and_gamma_table(self, tmp_path):
        out = tmp_path / "e.csv"
        assert run_cli("expected-sweep", "--n-list", "2", "--k-list", "1-4",
                       "--trials", "4000", "--fit-gamma", "--out", str(out)) == 0
        lines = read_lines(out)
        assert lines[0] == "n,K,E,stderr"
        blank = lines.index("")
        assert blank == 5  # header + 4 rows
        assert lines[blank + 1] == "n,gamma,intercept,rms_residual,K_min,K_max,points_used"
        gamma = float(lines[blank + 2].split(",")[1])
        assert gamma > 0.0

    def test_row_count_grid(self, tmp_path):
        out = tmp_path / "e.csv"
        assert run_cli("expected-sweep", "--n-list", "2,3", "--k-list", "1,2",
                       "--trials", "500", "--out", str(out)) == 0
        assert len(read_lines(out)) == 1 + 4

    def test_first_point_is_sqrt2(self, tmp_path):
        out = tmp_path / "e.csv"
        assert run_cli("expected-sweep", "--n-list", "2", "--k-list", "1",
                       "--trials", "20000", "--out", str(out)) == 0
        _, _, e, se = read_lines(out)[1].split(",")
        assert abs(float(e) - math.sqrt(2.0)) < 4.0 * float(se)


class TestAnalytic:
    def test_p2_22(self, capsys):
        assert run_cli("analytic", "p2-22") == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert float(row.split(",")[2]) == pytest.approx(math.pi / 4, abs=1e-8)

    def test_p_theta(self, capsys):
        assert run_cli("analytic", "p-theta", "--theta", "0.7853981633974483") == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert float(row.split(",")[2]) == pytest.approx(2**-0.5, abs=1e-9)

    def test_mean_f(self, capsys):
        assert run_cli("analytic", "mean-f") == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert float(row.split(",")[2]) == pytest.approx((math.pi - 2) / 4, abs=1e-6)

    def test_p_nn(self, capsys):
        assert run_cli("analytic", "p-nn", "--n", "3") == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert float(row.split(",")[2]) == pytest.approx(2**-1.5, abs=1e-12)

    def test_dp_dbeta(self, capsys):
        assert run_cli("analytic", "dp-dbeta", "--beta", "1") == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert float(row.split(",")[2]) > 0.0

    def test_pfq(self, capsys):
        assert run_cli("analytic", "pfq", "--top", "0.25,0.25", "--bottom", "1.25",
                       "--z", "1", "--tol", "1e-10") == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert float(row.split(",")[2]) == pytest.approx(math.pi / (2 * math.sqrt(2)),
                                                         abs=1e-8)

    def test_missing_parameter_usage_error(self):
        assert run_cli("analytic", "p-theta") == 2

    def test_unconverged_series_is_numerical_failure(self):
        assert run_cli("analytic", "pfq", "--top", "0.5,0.5", "--bottom", "1.5",
                       "--z", "0.999", "--tol", "1e-14", "--max-terms", "20") == 3


class TestEigencloud:
    def test_row_count_and_disk_bound(self, tmp_path):
        out = tmp_path / "c.csv"
        assert run_cli("eigencloud", "--n", "4", "--k-products", "1",
                       "--trials", "50", "--out", str(out)) == 0
        lines = read_lines(out)
        assert lines[0] == "trial,re,im"
        assert len(lines) == 1 + 200
        for line in lines[1:]:
            _, re, im = line.split(",")
            assert float(re) ** 2 + float(im) ** 2 <= 1.0 + 1e-12


class TestCooptimal:
    def test_pairs(self, tmp_path):
        out = tmp_path / "f.csv"
        assert run_cli("cooptimal", "pairs", "--trials", "20000", "--out", str(out)) == 0
        _, _, _, f_hat, stderr = read_lines(out)[1].split(",")
        assert abs(float(f_hat) - (math.pi - 2) / 4) < 4.0 * float(stderr)

    def test_theta_mode(self, tmp_path):
        out = tmp_path / "f.csv"
        assert run_cli("cooptimal", "theta", "--theta", "0.7853981633974483",
                       "--trials", "20000", "--out", str(out)) == 0
        _, _, _, f_hat, stderr = read_lines(out)[1].split(",")
        assert abs(float(f_hat) - (2**-0.5 - 0.5)) < 4.0 * float(stderr)

    def test_theta_mode_requires_theta(self):
        assert run_cli("cooptimal", "theta", "--trials", "100") == 2


class TestDeterminismAndFormats:
    def test_byte_identical_reruns_and_thread_independence(self, tmp_path):
        outs = []
        for name, threads in (("a.csv", "1"), ("b.csv", "1"), ("c.csv", "2")):
            out = tmp_path / name
            assert run_cli("prob-all-real", "--n", "3", "--k-products", "2",
                           "--trials", "4000", "--seed", "5", "--threads", threads,
                           "--out", str(out)) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1] == outs[2]

    def test_json_structure_excludes_volatile_fields(self, tmp_path):
        out = tmp_path / "h.json"
        assert run_cli("histogram", "--n", "2", "--k-products", "1",
                       "--trials", "1000", "--format", "json", "--out", str(out)) == 0
        doc = json.loads(out.read_text())
        assert set(doc) == {"manifest", "rows"}
        assert "duration_s" not in doc["manifest"]
        assert "threads" not in doc["manifest"]
        assert doc["rows"][0]["n"] == 2
        sidecar = json.loads((tmp_path / "h.json.manifest.json").read_text())
        assert "duration_s" in sidecar and "threads" in sidecar

    def test_json_bytes_thread_independent(self, tmp_path):
        blobs = []
        for name, threads in (("x.json", "1"), ("y.json", "4")):
            out = tmp_path / name
            assert run_cli("eigencloud", "--n", "3", "--k-products", "2",
                           "--trials", "100", "--format", "json", "--threads", threads,
                           "--out", str(out)) == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]

    def test_stdout_csv_clean(self, capsys):
        assert run_cli("analytic", "p-nn", "--n", "2") == 0
        captured = capsys.readouterr()
        assert captured.out.startswith("name,params,value,err_est\n")
        assert "manifest" in captured.err
