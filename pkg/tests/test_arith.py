import math

import pytest

from sievelab.arith import (FactoredModulus, crt_combine, divisor_count, eps_q,
                            factorize, gcd_power_sum, is_prime, jacobi,
                            mod_inverse)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}
    for n in range(2, 43):
        assert is_prime(n) == (n in primes)
    assert not is_prime(1)
    assert not is_prime(0)


def test_is_prime_large():
    assert is_prime(2 ** 31 - 1)
    assert not is_prime(2 ** 31 + 1)
    assert is_prime(10 ** 9 + 7)
    # Carmichael numbers must not fool the deterministic bases
    for n in (561, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265):
        assert not is_prime(n)


def test_factorize_reconstructs():
    for n in list(range(1, 200)) + [360, 1024, 9973, 2 ** 20 - 1, 10 ** 9 + 6]:
        fm = factorize(n)
        prod = 1
        for p, a in fm.factors:
            assert is_prime(p)
            prod *= p ** a
        assert prod == n


def test_factorize_rejects_bad_input():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(-6)


def test_factored_modulus_validates():
    with pytest.raises(ValueError):
        FactoredModulus(12, ((4, 1), (3, 1)))  # 4 is not prime
    with pytest.raises(ValueError):
        FactoredModulus(10, ((2, 1), (3, 1)))  # product mismatch
    fm = FactoredModulus(12, ((2, 2), (3, 1)))
    assert list(fm.prime_powers) == [4, 3]
    assert fm.divisor_count() == 6


def test_jacobi_matches_euler_for_primes():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 97):
        for a in range(0, p):
            euler = pow(a, (p - 1) // 2, p)
            want = 0 if euler == 0 else (1 if euler == 1 else -1)
            assert jacobi(a, p) == want


def test_jacobi_multiplicative_in_top():
    for q in (15, 21, 45, 77, 105):
        for a in range(1, 30):
            for b in range(1, 30):
                assert jacobi(a * b, q) == jacobi(a, q) * jacobi(b, q)


def test_mod_inverse():
    for q in (2, 3, 10, 97, 360):
        for a in range(1, q):
            if math.gcd(a, q) != 1:
                with pytest.raises(ValueError):
                    mod_inverse(a, q)
            else:
                assert a * mod_inverse(a, q) % q == 1


def test_crt_combine():
    value, modulus = crt_combine([(2, 3), (3, 5), (2, 7)])
    assert modulus == 105
    assert value % 3 == 2 and value % 5 == 3 and value % 7 == 2
    with pytest.raises(ValueError):
        crt_combine([(1, 6), (2, 4)])  # moduli not coprime


def test_divisor_count():
    assert divisor_count(1) == 1
    assert divisor_count(12) == 6
    assert divisor_count(9973) == 2
    assert divisor_count(360) == 24


def test_gcd_power_sum_matches_direct():
    for r in (1, 2, 12, 36, 97):
        for sigma in (0.2, 0.5, 1.0):
            for H in (1, 7, 50):
                direct = sum(math.gcd(h, r) ** sigma for h in range(1, H + 1))
                assert gcd_power_sum(H, r, sigma) == pytest.approx(direct)


def test_gcd_power_sum_divisor_bound():
    # the explicit bound with constant 1: sum <= H * tau(r)
    for r in (12, 36, 97, 720, 2310):
        tau = divisor_count(r)
        for H in (1, 10, 100):
            for sigma in (0.2, 0.5, 1.0):
                assert gcd_power_sum(H, r, sigma) <= H * tau + 1e-9


def test_eps_q():
    assert eps_q(1) == 1
    assert eps_q(5) == 1
    assert eps_q(3) == 1j
    assert eps_q(7) == 1j
    assert eps_q(9) == 1
