import io
import json

import numpy as np
import pytest

from vegaineq import GroupedSample, Sample, gini, vega
from vegaineq.cli import DatasetSpec, load, run


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestLoad:
    def test_plain_values(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("v\n1\n2\n3\n")
        sample, meta = load(DatasetSpec(str(path), "v"))
        assert np.array_equal(sample.values, [1.0, 2.0, 3.0])
        assert sample.weights is None
        assert meta["rows_read"] == 3

    def test_weight_column_equals_replication(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("v,w\n1,2\n2,1\n3,1\n")
        sample, _ = load(DatasetSpec(str(path), "v", weight_column="w"))
        replicated = Sample([1.0, 1.0, 2.0, 3.0])
        for fn in (gini, vega):
            assert fn(sample).value == pytest.approx(fn(replicated).value, abs=1e-12)

    def test_drop_policy(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("v\n1\n\n2\n,\n3\n")
        sample, meta = load(DatasetSpec(str(path), "v", missing_policy="drop"))
        assert sample.n == 3
        assert meta["rows_dropped"] == 1
        assert meta["warnings"]

    def test_error_policy(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("v\n1\noops\n3\n")
        with pytest.raises(ValueError):
            load(DatasetSpec(str(path), "v"))

    def test_group_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("v,g\n1,a\n2,b\n")
        data, _ = load(DatasetSpec(str(path), "v", group_column="g"))
        assert isinstance(data, GroupedSample)
        assert data.labels == ("a", "b")

    def test_tab_autodetect(self, tmp_path):
        path = tmp_path / "d.tsv"
        path.write_text("v\tg\n1\ta\n2\tb\n")
        sample, _ = load(DatasetSpec(str(path), "v"))
        assert np.array_equal(sample.values, [1.0, 2.0])

    def test_column_by_index(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b\n1,10\n2,20\n")
        sample, _ = load(DatasetSpec(str(path), "1"))
        assert np.array_equal(sample.values, [10.0, 20.0])

    def test_unknown_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a\n1\n")
        with pytest.raises(ValueError):
            load(DatasetSpec(str(path), "nope"))


class TestRun:
    def test_json_report(self, tiny_csv):
        code, out, _ = _run(["--input", str(tiny_csv), "--column", "income",
                             "--measure", "vega", "--output", "json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["tool"] == "vegaineq"
        assert doc["measures"][0]["measure"] == "vega"
        expected = vega(Sample([1.0, 2.0, 3.0, 5.0, 10.0])).value
        assert doc["measures"][0]["value"] == pytest.approx(expected, abs=1e-12)

    def test_default_measures_and_decomposition(self, tiny_csv):
        code, out, _ = _run(["--input", str(tiny_csv), "--column", "income",
                             "--group-column", "region"])
        assert code == 0
        doc = json.loads(out)
        assert [m["measure"] for m in doc["measures"]] == ["gini", "vega"]
        assert doc["decomposition"] is not None
        assert doc["decomposition"]["residual"] <= 1e-10

    def test_byte_stable_output(self, tiny_csv):
        argv = ["--input", str(tiny_csv), "--column", "income",
                "--group-column", "region"]
        _, out1, _ = _run(argv)
        _, out2, _ = _run(argv)
        assert out1 == out2

    def test_json_round_trip_exact(self, tiny_csv):
        from vegaineq import evaluate

        code, out, _ = _run(["--input", str(tiny_csv), "--column", "income"])
        doc = json.loads(out)
        recomputed = evaluate(Sample([1.0, 2.0, 3.0, 5.0, 10.0]), "vega").value
        assert doc["measures"][1]["value"] == recomputed  # exact, not approx

    def test_strict_majority_exits_one(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("v\n0\n0\n0\n1\n2\n")
        code, out, err = _run(["--input", str(path), "--column", "v", "--strict"])
        assert code == 1
        assert out == ""
        assert "NONPOSITIVE_MAJORITY" in err

    def test_usage_error_exit_two(self, tiny_csv):
        code, _, _ = _run(["--input", str(tiny_csv)])
        assert code == 2
        code, _, err = _run(["--input", str(tiny_csv), "--column", "nope"])
        assert code == 2

    def test_missing_file_exit_one(self):
        code, _, err = _run(["--input", "/no/such/file.csv", "--column", "v"])
        assert code == 1
        assert err

    def test_quantile_and_threads_flags(self, tiny_csv):
        code, out, _ = _run(["--input", str(tiny_csv), "--column", "income",
                             "--quantiles", "5", "--threads", "2",
                             "--measure", "vega"])
        assert code == 0
        doc = json.loads(out)
        exact = vega(Sample([1.0, 2.0, 3.0, 5.0, 10.0])).value
        assert doc["measures"][0]["value"] == pytest.approx(exact, abs=1e-12)
        assert doc["plan"]["mode"] == "quantile"

    def test_angular_mean_behind_flag(self, tiny_csv):
        code, out, _ = _run(["--input", str(tiny_csv), "--column", "income",
                             "--measure", "angular-mean"])
        assert code == 0
        doc = json.loads(out)
        assert doc["measures"][0]["measure"] == "angular_mean"

    def test_table_output(self, tiny_csv):
        code, out, _ = _run(["--input", str(tiny_csv), "--column", "income",
                             "--group-column", "region", "--output", "table"])
        assert code == 0
        assert "gini" in out and "vega" in out and "decomposition" in out

    def test_seventeen_digit_floats(self, tiny_csv):
        _, out, _ = _run(["--input", str(tiny_csv), "--column", "income",
                          "--measure", "vega"])
        doc = json.loads(out)
        value = doc["measures"][0]["value"]
        assert out.count("%.17g" % value) >= 1
