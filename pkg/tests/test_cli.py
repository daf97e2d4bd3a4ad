import json
import math

import pytest
from click.testing import CliRunner

from supnorm.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_kloosterman_json(runner):
    res = runner.invoke(main, ["kloosterman", "--m", "1", "--n", "1", "--c", "3"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["re"] == pytest.approx(-1.0)
    assert rep["weil_ratio"] <= 1.0


def test_kloosterman_rejects_incompatible_character(runner):
    res = runner.invoke(main, ["kloosterman", "--m", "1", "--n", "1", "--c", "7",
                               "--char", "quadratic:5"])
    assert res.exit_code == 2


def test_bessel_eval(runner):
    res = runner.invoke(main, ["bessel", "--fn", "J", "--order", "2", "--y", "3.0"])
    assert res.exit_code == 0
    from scipy import special
    assert json.loads(res.output)["value"] == pytest.approx(float(special.jv(2, 3.0)))


def test_bessel_requires_args(runner):
    assert runner.invoke(main, ["bessel", "--fn", "J"]).exit_code == 2
    assert runner.invoke(main, ["bessel", "--fn", "Kimag", "--y", "1"]).exit_code == 2


def test_bessel_verify_csv(runner):
    res = runner.invoke(main, ["bessel", "verify"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[0] == "property,constant,limit,passed"
    assert len(lines) == 7


def test_transform_both_methods(runner):
    res = runner.invoke(main, ["transform", "--a", "10", "--b", "2", "--t", "1"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["rel_error"] < 1e-6
    assert rep["closed"] == pytest.approx(rep["quadrature"], rel=1e-6)


def test_transform_requires_exactly_one_spectral_flag(runner):
    assert runner.invoke(main, ["transform", "--a", "10", "--b", "2"]).exit_code == 2
    assert runner.invoke(
        main, ["transform", "--a", "10", "--b", "2", "--k", "4", "--t", "1"]).exit_code == 2


def test_approx(runner):
    res = runner.invoke(main, ["approx", "--x", "3/7", "--h", "10"])
    rep = json.loads(res.output)
    assert (rep["a"], rep["q"]) == (3, 7)


def test_decay(runner):
    res = runner.invoke(main, ["decay", "--z", "256", "--t", "32", "--alpha", "0.3"])
    assert res.exit_code == 0
    assert json.loads(res.output)["ratio"] < 1.0


def test_count_a_with_elements(runner):
    res = runner.invoke(main, ["count", "A", "--c-scale", "1", "--s", "0", "--r", "0",
                               "--r-tilde", "0", "--u", "5", "--n-level", "5",
                               "--emit-elements"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["count"] == 1
    assert rep["elements"] == [[1, 0, 0, 0]]


def test_count_matrices_resource_cap(runner):
    res = runner.invoke(main, ["count", "matrices", "--x", "0", "--y", "0.001",
                               "--n", "20", "--n-level", "1", "--delta", "1e9"])
    assert res.exit_code == 3


def test_count_reduce(runner):
    res = runner.invoke(main, ["count", "reduce", "--l1", "2", "--l2", "3", "--c", "6",
                               "--u", "1", "--n-level", "5", "--r1", "50", "--r2", "50"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["congruence_violations"] == []
    assert rep["max_multiplicity"] <= rep["multiplicity_bound"]


def test_amplifier_diagonal(runner):
    res = runner.invoke(main, ["amplifier", "--l", "10", "--n-level", "5", "--seed", "1"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["support_primes"] == [11, 13, 17, 19]
    assert rep["diagonal_exact"] == 4
    assert rep["diagonal"][0] == pytest.approx(4.0)


def test_optimize_exponents(runner):
    res = runner.invoke(main, ["optimize"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["exponent_N"] == "-25/914"
    assert rep["exponent_t_star"] == "9979/1828"
    assert rep["balanced_term_dominates"] is True


def test_optimize_hybrid(runner):
    res = runner.invoke(main, ["optimize", "hybrid"])
    rep = json.loads(res.output)
    assert rep["final_exponent"] == "-1/2269"
    assert rep["weights"] == ["37/2269", "2232/2269"]


def test_verify_empty_selector_succeeds(runner):
    res = runner.invoke(main, ["verify", "--selector", "nothing-matches-*"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["properties"] == [] and rep["all_passed"] is True


def test_verify_deterministic_and_atomic(runner, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        res = runner.invoke(main, ["verify", "--selector", "exponents/*",
                                   "--seed", "5", "--output", str(p)])
        assert res.exit_code == 0
    assert p1.read_bytes() == p2.read_bytes()
    rep = json.loads(p1.read_text())
    assert rep["seed"] == 5 and rep["version"] == 1
    assert not list(tmp_path.glob(".tmp-*"))


def test_verify_csv_format(runner):
    res = runner.invoke(main, ["verify", "--selector", "transforms/positivity",
                               "--format", "csv"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[0] == "id,fitted_constant,limit,passed"
    assert len(lines) == 2


def test_verify_config_file(runner, tmp_path):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("# comment\nseed = 9\n")
    res = runner.invoke(main, ["verify", "--selector", "transforms/positivity",
                               "--config", str(cfg)])
    assert json.loads(res.output)["seed"] == 9
