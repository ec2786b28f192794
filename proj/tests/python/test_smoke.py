import math
from itertools import product

import pytest

import latllt

COIN = {0: 0.5, 1: 0.5}
THREE = {0: 0.5, 1: 0.3, 2: 0.2}


def brute_law(probs, n):
    law = {}
    for path in product(probs.items(), repeat=n):
        k = sum(o for o, _ in path)
        law[k] = law.get(k, 0.0) + math.prod(p for _, p in path)
    return law


def test_stats_and_validation():
    stats = latllt.validate(latllt.LatticePmf(0.0, 1.0, THREE))
    assert stats.mu == pytest.approx(0.7, abs=1e-15)
    assert stats.sigma2 == pytest.approx(0.61, abs=1e-15)
    assert stats.vartheta == pytest.approx(0.5, abs=1e-15)
    assert stats.basber


def test_errors_carry_code():
    with pytest.raises(latllt.LatlltError) as info:
        latllt.validate(latllt.LatticePmf(0.0, 1.0, {0: 0.5, 2: 0.5}))
    assert info.value.code == "NonMaximalSpan"
    with pytest.raises(latllt.LatlltError) as info:
        latllt.LatticePmf(0.0, 1.0, {0: 0.5, 1: 0.499})
    assert info.value.code == "SumNotOne"


def test_convolution_matches_enumeration():
    pmf = latllt.LatticePmf(0.0, 1.0, THREE)
    for n in range(1, 6):
        d = latllt.convolve_n(pmf, n)
        law = brute_law(THREE, n)
        assert len(d.probs) == 2 * n + 1
        for k, p in law.items():
            assert d.at_offset(k) == pytest.approx(p, abs=1e-14)
    assert latllt.prob_at(latllt.convolve_n(pmf, 3), 2.0) == pytest.approx(0.285, abs=1e-15)


def test_support_cap():
    with pytest.raises(latllt.LatlltError) as info:
        latllt.convolve_n(latllt.LatticePmf(0.0, 1.0, COIN), 10**9)
    assert info.value.code == "SupportTooLarge"


def test_bernoulli_part_reconstruction():
    pmf = latllt.LatticePmf(0.0, 1.0, THREE)
    part = latllt.build_part(pmf, latllt.TauSequence({0: 0.3, 1: 0.1}))
    assert part.eps_probability() == pytest.approx(0.4, abs=1e-15)
    assert latllt.reconstruction_residual(part) < 1e-12
    assert sum(p for _, _, p in part.atoms()) == pytest.approx(1.0, abs=1e-14)


def test_chernoff():
    check = latllt.verify_chernoff(0.5, 0.25, 10)
    assert check.exact == pytest.approx(56 / 1024, abs=1e-15)
    assert check.holds
    assert latllt.psi(0.5, 0.5) == 1.0
    theta = latllt.solve_theta(0.9, 0.4)
    assert latllt.psi(theta, 0.4) == pytest.approx(0.9, abs=1e-12)


def test_llt_and_correlation():
    pmf = latllt.LatticePmf(0.0, 1.0, COIN)
    stats = latllt.validate(pmf)
    curve = latllt.llt_error(pmf, [100, 1000, 10000])
    deltas = [d for _, d, _ in curve["points"]]
    assert deltas[0] > deltas[1] > deltas[2]
    seq = latllt.kappa_sequence(pmf, stats, 0.0)
    assert latllt.exact_cov(pmf, seq, 5, 5) == pytest.approx(
        5 * latllt.prob_at(latllt.convolve_n(pmf, 5), seq.value(5))
        * (1 - latllt.prob_at(latllt.convolve_n(pmf, 5), seq.value(5))), abs=1e-14)
    scan = latllt.bound_scan(pmf, seq, latllt.dyadic_grid(8, 64))
    assert math.isfinite(scan["c_hat"]) and scan["c_hat"] > 0
    off = latllt.off_lattice_sequence(pmf, stats, 0.0)
    assert latllt.exact_cov(pmf, off, 40, 10) == 0.0


def test_ensemble_reproducible():
    pmf = latllt.LatticePmf(0.0, 1.0, COIN)
    seq = latllt.kappa_sequence(pmf, latllt.validate(pmf), 0.0)
    a = latllt.run_ensemble(pmf, seq, 10000, [100, 1000, 10000], 4, 7, 2)
    b = latllt.run_ensemble(pmf, seq, 10000, [100, 1000, 10000], 4, 7, 1)
    assert a == b
    assert a["limit"] == pytest.approx(0.797885, abs=1e-6)
    assert latllt.expected_average(pmf, seq, 10000) == pytest.approx(0.7947, abs=5e-4)


def test_json_round_trip():
    pmf = latllt.parse_pmf_json('{"v0": 0.5, "D": 2, "probs": {"-1": 0.25, "3": 0.75}}')
    again = latllt.parse_pmf_json(latllt.to_pmf_json(pmf))
    assert again.to_dict() == pmf.to_dict()
    assert again.v0 == 0.5 and again.span == 2.0


def test_interval_form():
    pmf = latllt.LatticePmf(0.0, 1.0, THREE)
    seq = latllt.kappa_sequence(pmf, latllt.validate(pmf), 0.0)
    point, point_limit = latllt.run_interval_path(pmf, seq, 1000, [100, 1000], 3, 0.0, 0.0)
    wide, wide_limit = latllt.run_interval_path(pmf, seq, 1000, [100, 1000], 3, -1.0, 1.0)
    assert wide_limit == pytest.approx(3 * point_limit, rel=1e-15)
    assert all(w >= p for w, p in zip(wide, point))
