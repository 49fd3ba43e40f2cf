import math

import pytest

from qising.ldp import Observable
from qising.stats import (birkhoff_table, entropy_estimate, markov_witness,
                          mixing_defect)
from qising.params import new_params

P6 = new_params(math.pi / 6)


def test_mixing_defect_example():
    rep = mixing_defect(P6, 1, 2, 2, 1, 2)
    assert rep.predicted == pytest.approx(3 / 16, abs=1e-15)
    assert rep.defect == pytest.approx(3 / 16, abs=1e-13)
    assert rep.defect != 0.0


@pytest.mark.parametrize("n", [2, 3, 6])
def test_mixing_defect_parity_flip(n):
    even = mixing_defect(P6, 1, 2, 2, 1, n)
    odd = mixing_defect(P6, 1, 2, 2, 1, n + 1)
    assert even.defect == pytest.approx(-odd.defect, abs=1e-13)
    # the same-boundary defect vanishes identically
    flat = mixing_defect(P6, 1, 1, 2, 2, n)
    assert flat.predicted == 0.0
    assert flat.defect == pytest.approx(0.0, abs=1e-13)


def test_mixing_defect_range():
    with pytest.raises(ValueError):
        mixing_defect(P6, 1, 2, 2, 1, 1)
    with pytest.raises(ValueError):
        mixing_defect(P6, 1, 2, 2, 1, 13)


def test_markov_witness_rationals():
    w = markov_witness(P6)
    assert w.cond_1 == pytest.approx(1 / 8, abs=1e-14)
    assert w.cond_11 == pytest.approx(1 / 2, abs=1e-14)
    assert w.cond_111 == pytest.approx(1 / 8, abs=1e-14)
    with pytest.raises(ValueError):
        markov_witness(new_params(math.pi / 4))


def test_entropy_estimate_sanity():
    est = entropy_estimate(P6, 1, 60, 2000)
    p = P6.p
    target = -(p * math.log(p) + (1 - p) * math.log(1 - p))
    assert est.target == pytest.approx(target)
    # finite-n offset is log(2)/n; allow that plus the 3-sigma band
    assert abs(est.mean - est.target) <= math.log(2) / 60 + est.half_width
    with pytest.raises(ValueError):
        entropy_estimate(P6, 1, 10, 2000)


def test_entropy_estimate_degenerate():
    est = entropy_estimate(new_params(math.pi / 4), 1, 60, 1000)
    assert est.target == 0.0
    # mu of every sampled word is exactly 1/2, so the estimate is log(2)/n
    assert est.mean == pytest.approx(math.log(2) / 60, abs=1e-14)


def test_birkhoff_table():
    rows = birkhoff_table(P6, Observable(1.0, 0.0), 2, [8, 16, 30], 0.25,
                          num_samples=4000)
    assert [r["n"] for r in rows] == [8, 16, 30]
    for row in rows:
        if row["exact"] is not None:
            band = 4 * math.sqrt(max(row["exact"], 1e-12)) / math.sqrt(4000)
            assert row["empirical"] == pytest.approx(row["exact"], abs=band + 0.01)
    assert rows[-1]["exact"] is None
    assert rows[0]["empirical"] >= rows[-1]["empirical"]
