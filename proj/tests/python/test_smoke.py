import pytest

import ietlab


def test_census_gate():
    rows = ietlab.survey(4, 2, 9)
    assert (rows[7]["cycles"], rows[7]["polys"]) == (1, 1)
    assert rows[7]["polynomials"] == [[1, -7, 13, -7, 1]]
    assert (rows[8]["cycles"], rows[8]["polys"]) == (6, 3)


def test_quartic():
    q = ietlab.build("quartic")
    assert q.rho == pytest.approx(0.227777, abs=1e-6)
    assert q.minpoly == [1, -7, 13, -7, 1]
    zero, comps = ietlab.drift(q)
    assert not zero and len(comps) == 4


def test_e2star_drift_and_codes():
    e = ietlab.build("e2star")
    assert e.rho == pytest.approx(0.106711, abs=1e-6)
    assert ietlab.drift(e)[0]
    x = ["1/3", "1/2", "-1/4"]
    code = ietlab.encode(e, x)
    assert ietlab.decode(e, code) == x


def test_v_row_and_fill():
    assert ietlab.v_row(4)["v"] == pytest.approx(0.546715, abs=1e-5)
    r = ietlab.lattice_fill(2, 10, 1, 100000)
    assert r["complete"] and r["reached"] == r["total"]


def test_escape_and_density():
    q = ietlab.build("quartic")
    assert ietlab.escape_fit(q, 1 << 16)["slope"] == pytest.approx(1.0, abs=0.1)
    assert ietlab.density(q, "0", "1/2", 20) == pytest.approx(0.5, abs=0.05)


def test_errors():
    with pytest.raises(ValueError):
        ietlab.build("nonsense")
    with pytest.raises(ValueError):
        ietlab.build("4213:0120")
