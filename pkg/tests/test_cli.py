"""End-to-end CLI behaviour: artifacts, determinism, exit codes."""

import json

import pytest

from ordspec.cli import main


def run(args):
    return main(args)


class TestDerive:
    def test_two_dim_prints_means(self, tmp_path, capsys):
        assert run(["derive", "--m", "2", "--n", "2", "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "mean=0.125" in out
        assert "mean=0.875" in out
        assert (tmp_path / "density_m2n2_k1.json").exists()
        assert (tmp_path / "curve_m2n2_k2.csv").exists()

    def test_three_dim_middle_density_json(self, tmp_path, capsys):
        assert run(["derive", "--m", "3", "--n", "3", "--k", "2",
                    "--out", str(tmp_path)]) == 0
        obj = json.loads((tmp_path / "density_m3n3_k2.json").read_text())
        assert obj["m"] == 3 and obj["k"] == 2
        steps = {t["step_index"] for t in obj["terms"]}
        assert steps == {2, 3}
        # leading coefficient of the step-2 polynomial is 48
        step2 = next(t for t in obj["terms"] if t["step_index"] == 2)
        assert step2["coefficients"][0] == {"num": "48", "den": "1"}

    def test_unequal_dims_family(self, tmp_path, capsys):
        assert run(["derive", "--m", "4", "--n", "5", "--out", str(tmp_path)]) == 0
        for k in (1, 2, 3, 4):
            assert (tmp_path / f"density_m4n5_k{k}.json").exists()

    def test_invalid_dims_exit(self, tmp_path):
        with pytest.raises(SystemExit):
            run(["derive", "--m", "9", "--n", "9", "--out", str(tmp_path)])
        with pytest.raises(SystemExit):
            run(["derive", "--m", "3", "--n", "2", "--out", str(tmp_path)])

    def test_invalid_k_exit(self, tmp_path):
        with pytest.raises(SystemExit):
            run(["derive", "--m", "2", "--n", "2", "--k", "3", "--out", str(tmp_path)])


class TestExportRoundTrip:
    def test_json_reexport_byte_identical(self, tmp_path, capsys):
        run(["derive", "--m", "3", "--n", "3", "--k", "1", "--out", str(tmp_path)])
        src = tmp_path / "density_m3n3_k1.json"
        dst = tmp_path / "reexport.json"
        assert run(["export", "--input", str(src), "--format", "json",
                    "--output", str(dst)]) == 0
        assert src.read_bytes() == dst.read_bytes()

    def test_csv_export_matches_derive(self, tmp_path, capsys):
        run(["derive", "--m", "2", "--n", "2", "--k", "1", "--out", str(tmp_path)])
        src = tmp_path / "density_m2n2_k1.json"
        dst = tmp_path / "curve.csv"
        assert run(["export", "--input", str(src), "--format", "csv",
                    "--output", str(dst)]) == 0
        assert dst.read_bytes() == (tmp_path / "curve_m2n2_k1.csv").read_bytes()

    def test_missing_input(self, tmp_path):
        with pytest.raises(SystemExit):
            run(["export", "--input", str(tmp_path / "nope.json"),
                 "--output", str(tmp_path / "out.json")])


class TestMoments:
    def test_closed_form_values(self, capsys):
        assert run(["moments", "--m", "2", "--n", "2", "--k", "1", "--qmax", "2"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("q=0 moment=1/1")
        assert out[1].startswith("q=1 moment=1/8")
        assert out[2].startswith("q=2 moment=1/40")


class TestDescriptors:
    def test_table_row(self, capsys):
        assert run(["descriptors", "--m", "3", "--n", "3", "--k", "1"]) == 0
        out = capsys.readouterr().out
        assert "mean=1/27" in out
        assert "variance=4/3645" in out
        assert "skewness=245/121" in out


class TestMonteCarlo:
    def test_artifacts_and_determinism(self, tmp_path, capsys):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        args = ["montecarlo", "--m", "2", "--n", "2", "--samples", "5000",
                "--seed", "7", "--bins", "20"]
        assert run(args + ["--out", str(out1)]) == 0
        assert run(args + ["--out", str(out2)]) == 0
        for name in ("stats_m2n2_seed7.json", "hist_m2n2_seed7_k1.csv",
                     "hist_m2n2_seed7_k2.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_thread_env_override(self, tmp_path, capsys, monkeypatch):
        args = ["montecarlo", "--m", "2", "--n", "2", "--samples", "60000",
                "--seed", "3", "--threads", "1"]
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run(args + ["--out", str(out1)]) == 0
        monkeypatch.setenv("ORDSPEC_THREADS", "2")
        assert run(args + ["--out", str(out2)]) == 0
        name = "stats_m2n2_seed3.json"
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestCompareCommand:
    def test_pass_at_reference_sample_count(self, tmp_path, capsys):
        code = run(["compare", "--m", "2", "--n", "2", "--samples", "100100",
                    "--seed", "0", "--out", str(tmp_path)])
        assert code == 0
        report = json.loads((tmp_path / "compare_m2n2.json").read_text())
        assert report["passed"] is True

    def test_undersampled_fails_with_worst_entry(self, tmp_path, capsys):
        code = run(["compare", "--m", "2", "--n", "2", "--samples", "100",
                    "--seed", "12", "--out", str(tmp_path)])
        assert code == 1
        out = capsys.readouterr().out
        assert "FAIL" in out and "(k=" in out


class TestFixturesCheck:
    def test_full_corpus_passes(self, capsys):
        assert run(["fixtures-check"]) == 0
        out = capsys.readouterr().out
        assert "0 failure(s)" in out
        assert "ok   table1.k2.kappa2" in out

    def test_perturbed_corpus_fails_naming_entry(self, capsys):
        # negative control through the library API with an injected bad corpus
        from fractions import Fraction
        from ordspec.fixtures import DESCRIPTORS_M3, check_all

        bad = {k: dict(v) for k, v in DESCRIPTORS_M3.items()}
        bad[2]["variance"] = bad[2]["variance"] + Fraction(1, 10 ** 9)
        results = check_all(descriptor_corpus=bad)
        failing = [r for r in results if not r.ok]
        assert [r.fixture_id for r in failing] == ["table1.k2.kappa2"]
