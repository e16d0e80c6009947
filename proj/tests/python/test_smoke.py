import math

import pytest

import sl3k


def test_cg_value():
    exact, value = sl3k.q(0, 0, 1, 1)
    assert exact == "(1/10)·√10"
    assert math.isclose(value, math.sqrt(10) / 10, rel_tol=1e-15)


def test_wigner_identity_rotation():
    assert abs(sl3k.wigner_D(2, 1, 1, 0.0, 0.0, 0.0) - 1.0) < 1e-14
    assert abs(sl3k.wigner_D(2, 1, 0, 0.0, 0.0, 0.0)) < 1e-14
    with pytest.raises(ValueError):
        sl3k.wigner_D(1, 3, 0, 0.0, 0.0, 0.0)


def test_multiplicities():
    assert [sl3k.multiplicity((0, 0, 0), l) for l in range(5)] == [1, 0, 2, 1, 3]
    assert len(sl3k.basis((1, 0, 1), 3)) == 7 * sl3k.multiplicity((1, 0, 1), 3)


def test_sl2_composition():
    report = sl3k.sl2_composition("1/2", 0)
    assert report["irreducible"] is False


def test_action_matrix():
    m = sl3k.action_matrix(["1/2", "1/3"], (0, 1, 1), "Z2", 3)
    assert isinstance(m, dict)


def test_k3_chain():
    report = sl3k.compose("k3")
    assert report["ok"] is True
    assert len(report["chain"]) == 3


def test_suite_and_cli():
    assert "orthogonality" in sl3k.suite_names()
    assert sl3k.run_suite("orthogonality", 3)["passed"] is True
    code, out, _ = sl3k.run_cli(["cg", "--k", "0", "--j", "0", "--l", "1", "--m", "1"])
    assert code == 0
    assert out == "(1/10)·√10 ≈ 0.316228\n"
    assert sl3k.run_cli(["bogus"])[0] == 2
