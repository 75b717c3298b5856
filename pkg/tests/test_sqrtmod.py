import numpy as np
import pytest

from sievelab.arith import factorize
from sievelab.sqrtmod import (RootSet, build_root_multiset, root_pairs,
                              sqrt_mod_all, sqrt_mod_prime,
                              sqrt_mod_prime_power)


def oracle_roots(m, r):
    ks = np.arange(r, dtype=np.int64)
    return tuple(int(k) for k in ks[ks * ks % r == m % r])


def test_rootset_validates():
    with pytest.raises(ValueError):
        RootSet(7, 2, (1,))  # 1*1 != 2 mod 7
    with pytest.raises(ValueError):
        RootSet(15, 4, (7, 2))  # unsorted
    rs = RootSet(15, 4, (2, 7, 8, 13))
    assert len(rs) == 4 and 7 in rs


def test_sqrt_mod_prime_exhaustive():
    for p in (3, 5, 7, 11, 13, 17, 97, 101, 257):
        for m in range(p):
            assert sqrt_mod_prime(m, p).roots == oracle_roots(m, p)


def test_sqrt_mod_prime_rejects_two_and_composites():
    with pytest.raises(ValueError):
        sqrt_mod_prime(1, 2)
    with pytest.raises(ValueError):
        sqrt_mod_prime(1, 15)


def test_sqrt_mod_prime_power_exhaustive():
    for p, amax in ((2, 8), (3, 5), (5, 3), (7, 3), (11, 2), (13, 2)):
        for a in range(1, amax + 1):
            q = p ** a
            for m in range(q):
                got = sqrt_mod_prime_power(m, p, a).roots
                assert got == oracle_roots(m, q), (m, p, a)


def test_root_count_of_zero():
    # m = 0 has exactly p^floor(alpha/2) roots mod p^alpha
    for p in (2, 3, 5, 7, 11):
        for a in range(1, 8):
            if p ** a > 10 ** 4:
                break
            assert len(sqrt_mod_prime_power(0, p, a).roots) == p ** (a // 2)


def test_odd_power_of_p_has_no_roots():
    # m = p^beta * unit with odd beta is never a square mod p^alpha
    assert sqrt_mod_prime_power(3, 3, 3).roots == ()
    assert sqrt_mod_prime_power(2, 2, 4).roots == ()
    assert sqrt_mod_prime_power(5 * 3, 5, 4).roots == ()


def test_sqrt_mod_all_examples():
    assert sqrt_mod_all(4, 15).roots == (2, 7, 8, 13)
    assert sqrt_mod_all(0, 1).roots == (0,)
    assert sqrt_mod_all(1, 24).roots == (1, 5, 7, 11, 13, 17, 19, 23)


def test_sqrt_mod_all_exhaustive_small():
    for r in range(1, 121):
        for m in range(r):
            assert sqrt_mod_all(m, r).roots == oracle_roots(m, r), (m, r)


def test_sqrt_mod_all_accepts_factored_modulus():
    fm = factorize(360)
    for m in (0, 1, 4, 81, 100, 359):
        assert sqrt_mod_all(m, fm).roots == oracle_roots(m, 360)


def test_roots_closed_under_negation():
    for r in (7, 12, 45, 97, 360):
        for m in range(0, r, 7):
            roots = sqrt_mod_all(m, r).roots
            assert all((r - k) % r in roots for k in roots)


def test_root_pairs_matches_squaring():
    for r in (1, 2, 5, 8, 16, 36, 97, 243, 360, 1009, 5040):
        rp = root_pairs(r)
        assert rp.shape == (r, 2)
        assert np.all((rp[:, 1] * rp[:, 1] - rp[:, 0]) % r == 0)
        # every k is a root of exactly one m
        assert np.all(np.bincount(rp[:, 1], minlength=r) == 1)
        # sorted by (m, k)
        keys = rp[:, 0] * r + rp[:, 1]
        assert np.all(np.diff(keys) > 0)


def test_root_pairs_tonelli_prime():
    # a prime = 1 mod 8 exercises the vectorized Tonelli-Shanks branch
    p = 9601
    rp = root_pairs(p)
    assert np.all((rp[:, 1] * rp[:, 1] - rp[:, 0]) % p == 0)
    assert np.all(np.bincount(rp[:, 1], minlength=p) == 1)


def test_build_root_multiset_plain_methods_agree():
    for r in (7, 12, 45, 97):
        for j in (1, 5):
            if np.gcd(j, r) != 1:
                continue
            for R in (1, 3, r):
                fast = build_root_multiset(R, j, r, "plain", method="fast")
                oracle = build_root_multiset(R, j, r, "plain", method="oracle")
                assert fast.table == oracle.table


def test_build_root_multiset_plain_mass():
    # mass = number of (m, k) pairs with m <= R
    ms = build_root_multiset(8, 1, 15, "plain")
    direct = sum(len(sqrt_mod_all(m, 15).roots) for m in range(1, 9))
    assert ms.mass() == direct


def test_build_root_multiset_difference():
    r, j, h, R = 21, 2, 1, 5
    ms = build_root_multiset(R, j, r, "difference", h=h)
    count = 0
    for m in range(1, R + 1):
        ks = sqrt_mod_all(j * m % r, r).roots
        kts = sqrt_mod_all(j * (m + h) % r, r).roots
        count += len(ks) * len(kts)
    assert ms.mass() == count


def test_build_root_multiset_validates():
    with pytest.raises(ValueError):
        build_root_multiset(0, 1, 7, "plain")
    with pytest.raises(ValueError):
        build_root_multiset(3, 7, 7, "plain")  # gcd(j, r) != 1
    with pytest.raises(ValueError):
        build_root_multiset(3, 1, 7, "difference")  # missing h
