import math

import pytest

from sievelab.energies import (energy_e2, energy_e4, energy_f2,
                               hypothesis_scan, kssz_check, parseval_check,
                               scan_summary)
from sievelab.sqrtmod import sqrt_mod_all


def brute_e2(R, j, r):
    values = []
    for m in range(1, R + 1):
        values.extend(sqrt_mod_all(j * m % r, r).roots)
    count = 0
    for a in values:
        for b in values:
            for c in values:
                for d in values:
                    if (a + b - c - d) % r == 0:
                        count += 1
    return count


def test_e2_literal_quadruple_count():
    for (R, j, r) in ((1, 1, 7), (3, 1, 7), (2, 2, 15), (4, 1, 12)):
        assert energy_e2(R, j, r).energy == brute_e2(R, j, r)


def test_e2_example():
    assert energy_e2(1, 1, 7).energy == 6


def test_methods_agree_on_grid():
    for r in (7, 12, 35, 60):
        for j in (1, 11):
            if math.gcd(j, r) != 1:
                continue
            for R in (1, 4, min(8, r)):
                e2c = energy_e2(R, j, r, "conv")
                e2b = energy_e2(R, j, r, "brute")
                assert e2c.energy == e2b.energy
                e4c = energy_e4(R, j, r, "conv")
                e4b = energy_e4(R, j, r, "brute")
                assert e4c.energy == e4b.energy
                for h in (0, 1, 2):
                    assert (energy_f2(R, j, h, r, "conv").energy
                            == energy_f2(R, j, h, r, "brute").energy)


def test_energy_is_exact_integer():
    rep = energy_e4(8, 1, 60)
    assert isinstance(rep.energy, int)


def test_f2_bound_uses_gcd_h_r():
    rep = energy_f2(4, 1, 3, 15)
    assert rep.hyp_bound == pytest.approx(3 * 4 ** 4 / 15 + 16)
    # h = 0 mod r uses (0, r) = r
    rep0 = energy_f2(4, 1, 0, 15)
    assert rep0.hyp_bound == pytest.approx(15 * 4 ** 4 / 15 + 16)


def test_parseval_cross_check():
    for (R, j, r) in ((3, 1, 29), (6, 2, 35), (8, 1, 60)):
        for fold in (2, 4):
            pc = parseval_check(R, j, r, fold)
            assert pc.abs_error <= 1e-6 * max(1, pc.exact_E)


def test_kssz_requires_prime():
    with pytest.raises(ValueError):
        kssz_check(15, 1, 3)
    out = kssz_check(29, 1, 3, with_e4=True)
    assert out["e2"] == energy_e2(3, 1, 29).energy
    assert out["e4_ratio"] >= 0


def test_hypothesis_scan_and_summary():
    reports = hypothesis_scan("H1", [7, 11, 13], lambda r: 2)
    assert len(reports) == 3
    summary = scan_summary(reports)
    assert summary["count"] == 3
    assert summary["max_ratio"] == max(rep.ratio for rep in reports)
    assert scan_summary([]) == {"count": 0, "max_ratio": None, "argmax": None}


def test_hypothesis_scan_skips_noncoprime_j():
    reports = hypothesis_scan("H3", [6], lambda r: 2, j_sample=(2, 5),
                              h_sample=(1,))
    assert all(rep.j == 5 for rep in reports)
