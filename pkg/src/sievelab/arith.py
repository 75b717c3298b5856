"""Exact integer / modular arithmetic primitives.

Everything in this module is pure integer arithmetic: factorization,
Jacobi symbols, CRT recombination and gcd power sums.  No floating point
except in the final value of gcd_power_sum (whose exponent may be
fractional).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed, seed + 1, 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class FactoredModulus:
    """A positive integer together with its full prime factorization."""

    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be >= 1")
        prod = 1
        prev = 0
        for p, a in self.factors:
            if a < 1:
                raise ValueError(f"exponent {a} < 1 for prime {p}")
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p
            prod *= p ** a
        if prod != self.n:
            raise ValueError("factors do not multiply to n")

    @property
    def prime_powers(self) -> List[int]:
        return [p ** a for p, a in self.factors]

    def divisor_count(self) -> int:
        out = 1
        for _, a in self.factors:
            out *= a + 1
        return out

    def omega(self) -> int:
        return len(self.factors)


_TRIAL_LIMIT = 10 ** 6


def factorize(n: int) -> FactoredModulus:
    """Full prime factorization: trial division, then Miller-Rabin / Pollard rho.

    Intended for n <= 2^63; rejects n = 0.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n > 2 ** 63:
        raise ValueError("factorize caps n at 2^63")
    orig = n
    fac: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < _TRIAL_LIMIT:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        g = _pollard_rho(m)
        stack.append(g)
        stack.append(m // g)
    return FactoredModulus(orig, tuple(sorted(fac.items())))


def jacobi(a: int, q: int) -> int:
    """Jacobi symbol (a/q) by binary reciprocity; q must be odd and positive."""
    if q <= 0 or q % 2 == 0:
        raise ValueError("jacobi requires odd positive q")
    a %= q
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if q % 8 in (3, 5):
                result = -result
        a, q = q, a
        if a % 4 == 3 and q % 4 == 3:
            result = -result
        a %= q
    return result if q == 1 else 0


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m; raises if gcd(a, m) > 1."""
    g, x = _xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} has no inverse mod {m}")
    return x % m


def _xgcd(a: int, b: int) -> Tuple[int, int]:
    x0, x1 = 1, 0
    a0, b0 = a, b
    while b0:
        q, a0, b0 = a0 // b0, b0, a0 % b0
        x0, x1 = x1, x0 - q * x1
    return a0, x0


def crt_combine(residues: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    """Combine (value, modulus) pairs with pairwise coprime moduli.

    Returns (value, modulus) with modulus the product.  Rejects
    non-coprime moduli.
    """
    v, m = 0, 1
    for value, modulus in residues:
        if modulus < 1:
            raise ValueError("moduli must be positive")
        g = math.gcd(m, modulus)
        if g != 1:
            raise ValueError(f"moduli not coprime (gcd {g})")
        # v' = v mod m, value mod modulus
        inv = mod_inverse(m % modulus, modulus) if modulus > 1 else 0
        t = ((value - v) * inv) % modulus
        v = v + m * t
        m *= modulus
        v %= m
    return v, m


def divisor_count(r: int) -> int:
    return factorize(r).divisor_count()


def gcd_power_sum(H: int, r: int, sigma: Fraction | float) -> float:
    """Sum of gcd(h, r)^sigma over 1 <= h <= H.

    Bounded by H * tau(r) for 0 < sigma <= 1 (constant exactly 1).
    """
    if H < 1 or r < 1:
        raise ValueError("H and r must be >= 1")
    s = float(sigma)
    if not 0 < s <= 1:
        raise ValueError("sigma must lie in (0, 1]")
    total = 0.0
    for h in range(1, H + 1):
        total += math.gcd(h, r) ** s
    return total


def eps_q(q: int) -> complex:
    """The normalized Gauss-sum sign: 1 for q = 1 mod 4, i for q = 3 mod 4."""
    if q % 2 == 0 or q < 1:
        raise ValueError("eps_q requires odd positive q")
    return 1 if q % 4 == 1 else 1j
