import json

import pandas as pd
import pytest

from src.cli import load_job, main, parse_coefficients, parse_rational, run
from src.errors import JobFileError


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_parse_rational():
    r = parse_rational("num: 0.1 1; den: 1 2")
    assert r.numerator == (0.1, 1.0)
    assert r.denominator == (1.0, 2.0)
    assert parse_rational("num: 0.5").denominator == (1.0,)
    assert parse_coefficients("1, 2 3") == (1.0, 2.0, 3.0)
    for text in ("den: 1 2", "num: 1; den: 0", "numerator: 1", "num: x"):
        with pytest.raises(JobFileError):
            parse_rational(text)


def test_load_job_rejects_unknown_sections_and_keys(tmp_path):
    with pytest.raises(JobFileError):
        load_job(_write(tmp_path, "a.ini", "[plants]\nnumerator = 1 @ 0\n"))
    with pytest.raises(JobFileError):
        load_job(_write(tmp_path, "b.ini", "[plant]\nnumerator = 1 @ 0\ndenominator = 1 1 @ 0\ngain = 2\n"))
    with pytest.raises(JobFileError):
        load_job(tmp_path / "missing.ini")


def test_job_options_override_tolerances(jobs_dir):
    job = load_job(jobs_dir / "synthetic_c1.ini")
    tolerances = job.options.tolerances()
    assert tolerances.fir_tolerance == 1e-2
    assert job.options.zero_tolerance == 1e-3
    assert job.output_path("_fn.csv").name == "synthetic_c1_fn.csv"


def test_analyze_q1(copy_job, capsys):
    assert run("analyze", copy_job("q1.ini")) == 0
    out = capsys.readouterr().out
    assert "Kind: Neutral" in out
    assert "Finiteness: Finite" in out
    assert "C+ roots: 2:" in out
    assert "Root search heuristic: yes" in out


def test_analyze_q2_reports_the_conjugate(copy_job, capsys, tmp_path):
    json_path = tmp_path / "q2.json"
    assert main(["analyze", str(copy_job("q2.ini")), "--json", str(json_path)]) == 0
    out = capsys.readouterr().out
    assert "Finiteness: Infinite" in out
    assert "Conjugate C+ roots: 1:" in out
    document = json.loads(json_path.read_text())
    assert document["finiteness"] == "Infinite"
    assert document["roots"] is None
    assert len(document["conjugate_roots"]["roots"]) == 1


def test_analyze_indeterminate_exits_2(tmp_path, capsys):
    path = _write(tmp_path, "circle.ini", "[quasi_polynomial]\nq = 1 1 @ 0 ; 1 0 @ 1\n")
    assert run("analyze", path) == 2
    assert "Finiteness: Indeterminate" in capsys.readouterr().out


def test_analyze_undecided_conjugate_exits_2(tmp_path, capsys):
    # asymptotic roots 1 and 0.5: q itself has infinitely many C+ roots, its conjugate is undecided
    path = _write(tmp_path, "half.ini", "[quasi_polynomial]\nq = 1 1 @ 0 ; -3 0 @ 1 ; 2 0 @ 2\n")
    assert run("analyze", path) == 2
    out = capsys.readouterr().out
    assert "Finiteness: Infinite" in out
    assert "Conjugate finiteness: Indeterminate" in out


def test_factor_p3(copy_job, capsys, tmp_path):
    json_path = tmp_path / "p3.json"
    assert run("factor", copy_job("p3.ini"), json_path) == 0
    assert capsys.readouterr().out.startswith("Case: C2")
    assert json.loads(json_path.read_text())["case"] == "C2"


def test_factor_not_admissible(copy_job, capsys):
    assert run("factor", copy_job("not_admissible.ini")) == 2
    out = capsys.readouterr().out
    assert "Case: NotAdmissible" in out
    assert "denominator" in out


def test_malformed_quasi_polynomial_exits_1(tmp_path):
    path = _write(tmp_path, "bad.ini", "[plant]\nnumerator = 1 @ @ 0\ndenominator = 1 1 @ 0\n")
    assert run("factor", path) == 1


def test_missing_section_exits_1(copy_job):
    assert run("controller", copy_job("p1.ini")) == 1
    assert run("phi", copy_job("q1.ini")) == 1


def test_phi_writes_the_impulse_response(copy_job, capsys):
    path = copy_job("fir_example.ini")
    assert run("phi", path) == 0
    out = capsys.readouterr().out
    assert "[FIR certification]" in out
    assert "result: pass" in out
    frame = pd.read_csv(path.with_name("fir_example_impulse.csv"))
    assert list(frame.columns) == ["t", "f"]
    assert len(frame) == 1000


def test_controller_writes_blocks_and_frequency_response(copy_job, capsys, tmp_path):
    path = copy_job("synthetic_c1.ini")
    assert run("controller", path, tmp_path / "controller.json") == 0
    out = capsys.readouterr().out
    assert out.startswith("Case: C1")
    assert "[F_n certification]" in out and "[F_d certification]" in out
    for suffix in ("_fn.csv", "_fd.csv"):
        assert list(pd.read_csv(path.with_name(f"synthetic_c1{suffix}")).columns) == ["t", "f"]
    frequency = pd.read_csv(path.with_name("synthetic_c1_frequency.csv"))
    assert list(frequency.columns) == ["omega", "re", "im"]
    assert len(frequency) == 200
    assert json.loads((tmp_path / "controller.json").read_text())["case"] == "C1"


def test_fixture_passes(copy_job, capsys):
    path = copy_job("fixture_p3.ini")
    assert run("fixture", path) == 0
    assert capsys.readouterr().out.rstrip().endswith("fixture: pass")
    assert path.with_name("fixture_p3_fn.csv").exists()
    assert path.with_name("fixture_p3_fd.csv").exists()


def test_perturbed_fixture_exits_1(tmp_path, capsys):
    path = _write(tmp_path, "perturbed.ini", "[fixture]\n"
                                              "fd_num = -0.1260 0.3061 @ 0 ; -0.6147 -0.0810 @ 1.5\n"
                                              "fd_den = 1 -1.2470 1.1137\n"
                                              "fd_support = 1.5\n")
    assert run("fixture", path) == 1
    out = capsys.readouterr().out
    assert "fixture: fail" in out
    assert "tail growth rate" in out


def test_main_requires_a_command():
    with pytest.raises(SystemExit):
        main([])


@pytest.mark.parametrize("weights, gamma", [("w1 = num: 1 0; den: 1\n", "1.0"), ("", "0.0")])
def test_invalid_synthesis_inputs_exit_1(tmp_path, capsys, weights, gamma):
    text = ("[plant]\nnumerator = 1 2 @ 0.5\ndenominator = 1 0 0 1 @ 0 ; 1 @ 1.5\n\n"
            + (f"[weights]\n{weights}\n" if weights else "")
            + f"[synthesis]\ngamma = {gamma}\nf = num: 1; den: 1 1\n")
    assert run("controller", _write(tmp_path, "bad.ini", text)) == 1
    assert capsys.readouterr().out == ""
