"""Complete exponential sums: quadratic Gauss sums, the root-difference
sum E_{j,h}(l,n), the appendix sum G(q;a,b,j,k,u,s) and rational-function
sums modulo primes, each with its explicit-constant bound margin.

All phases are reduced exactly in integers before the single conversion
to double, so the phase error is machine epsilon regardless of modulus.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .arith import FactoredModulus, eps_q, factorize, is_prime, jacobi, mod_inverse
from .sqrtmod import sqrt_mod_all

TWO_PI = 2.0 * math.pi


def e_frac(num: int, den: int) -> complex:
    """e(num/den) with the argument reduced exactly in integers."""
    return cmath.exp(TWO_PI * 1j * ((num % den) / den))


def unit_phases(q: int) -> np.ndarray:
    """Array of e_q(t) for t in [0, q)."""
    return np.exp(TWO_PI * 1j * np.arange(q) / q)


@dataclass(frozen=True)
class ExpSumValue:
    value: complex
    terms: int
    modulus: int
    margin: float | None = None

    @property
    def abs(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class RationalFunctionModP:
    """f = f1/f2 with integer coefficient lists (ascending powers), prime p."""

    numerator: Tuple[int, ...]
    denominator: Tuple[int, ...]
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if all(c % self.p == 0 for c in self.denominator):
            raise ValueError("denominator vanishes identically mod p")

    def reduced(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        f1 = _trim([c % self.p for c in self.numerator])
        f2 = _trim([c % self.p for c in self.denominator])
        return tuple(f1), tuple(f2)

    def total_degree(self) -> int:
        f1, f2 = self.reduced()
        return max(len(f1) - 1, 0) + max(len(f2) - 1, 0)

    def is_constant(self) -> bool:
        f1, f2 = self.reduced()
        if not f1:
            return True
        if len(f1) != len(f2):
            return False
        lc1, lc2 = f1[-1], f2[-1]
        return all((c1 * lc2 - c2 * lc1) % self.p == 0 for c1, c2 in zip(f1, f2))


def _trim(coeffs: List[int]) -> List[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def gauss_sum_direct(q: int, a: int, b: int) -> ExpSumValue:
    """G(q;a,b) = sum_{n=1..q} e_q(a n^2 + b n), by literal summation."""
    if q < 1:
        raise ValueError("q must be >= 1")
    n = np.arange(1, q + 1, dtype=np.int64)
    phases = ((a % q) * (n * n % q) + (b % q) * n) % q
    value = complex(np.exp(TWO_PI * 1j * phases / q).sum())
    return ExpSumValue(value, q, q)


def gauss_sum_closed(q: int, a: int, b: int) -> ExpSumValue:
    """Closed-form G(q;a,b) for odd q.

    0 when gcd(a,q) does not divide b; otherwise factor out d = gcd(a,q)
    and evaluate eps * e_q(-(4a)^-1 b^2) * (a/q) * sqrt(q) on the coprime
    part.
    """
    if q % 2 == 0 or q < 1:
        raise ValueError("closed form requires odd q")
    if q == 1:
        return ExpSumValue(1 + 0j, 1, 1)
    d = math.gcd(a, q)
    if d > 1:
        if b % d != 0:
            return ExpSumValue(0j, q, q)
        inner = gauss_sum_closed(q // d, a // d, b // d)
        return ExpSumValue(d * inner.value, q, q)
    inv4a = mod_inverse(4 * a, q)
    value = (eps_q(q) * e_frac(-inv4a * b * b, q) * jacobi(a, q) * math.sqrt(q))
    return ExpSumValue(value, q, q)


def esum_jh(
    l: int,
    n: int,
    j: int,
    h: int,
    r: int | FactoredModulus,
    form: str = "paired",
) -> ExpSumValue:
    """The complete root-difference sum over Z/rZ.

    paired: sum over (k, kt) mod r with kt^2 - k^2 = j*h of
            e_r(l(kt - k) + n * jbar * k^2).
    bare:   sum over a mod r and root pairs k^2 = ja, kt^2 = j(a+h) of
            e_r(l(kt - k) + n*a).
    The two agree identically; both are kept as a cross-check.
    margin is |value| / (r^{4/5} (h,r) (l,r)^{1/5}), eps = 0.
    """
    fm = r if isinstance(r, FactoredModulus) else factorize(r)
    rr = fm.n
    if math.gcd(j, rr) != 1:
        raise ValueError("need gcd(j, r) = 1")
    total = 0j
    terms = 0
    if form == "paired":
        jinv = mod_inverse(j, rr) if rr > 1 else 0
        for k in range(rr):
            target = (k * k + j * h) % rr
            for kt in sqrt_mod_all(target, fm).roots:
                total += e_frac(l * (kt - k) + n * jinv * k * k, rr)
                terms += 1
    elif form == "bare":
        for a in range(1, rr + 1):
            ks = sqrt_mod_all(j * a % rr, fm).roots
            if not ks:
                continue
            kts = sqrt_mod_all(j * (a + h) % rr, fm).roots
            for k in ks:
                for kt in kts:
                    total += e_frac(l * (kt - k) + n * a, rr)
                    terms += 1
    else:
        raise ValueError(f"unknown form {form!r}")
    hr = math.gcd(h, rr)
    lr = math.gcd(l, rr)
    bound = rr ** 0.8 * (hr if hr else rr) * (lr if lr else rr) ** 0.2
    return ExpSumValue(total, terms, rr, abs(total) / bound)


@lru_cache(maxsize=256)
def _unit_inverses(q: int) -> Tuple[np.ndarray, np.ndarray]:
    """(units, inverses) arrays mod q via one batched inversion."""
    units = [c for c in range(1, q + 1) if math.gcd(c, q) == 1]
    prefix = [1]
    for c in units:
        prefix.append(prefix[-1] * c % q)
    inv_all = mod_inverse(prefix[-1], q)
    invs = [0] * len(units)
    for i in range(len(units) - 1, -1, -1):
        invs[i] = prefix[i] * inv_all % q
        inv_all = inv_all * units[i] % q
    return np.array(units, dtype=np.int64), np.array(invs, dtype=np.int64)


def gcal(q: int, a: int, b: int, j: int, k: int, u: int, s: int) -> ExpSumValue:
    """G(q;a,b,j,k,u,s): sum over reduced residues c mod q of
    e_q(a c + b (j k - u s^2 c^2)^2 / (4 j s^3 c^2)).

    Odd q only; requires gcd(js, q) = 1.  q = 1 returns the single term 1.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return ExpSumValue(1 + 0j, 1, 1)
    if q % 2 == 0:
        raise ValueError("gcal handles odd q only")
    if math.gcd(j * s, q) != 1:
        raise ValueError("need gcd(js, q) = 1")
    units, invs = _unit_inverses(q)
    inv_base = mod_inverse(4 * j * s % q * s % q * s % q, q)
    # phase(c) = a c + b (jk - u s^2 c^2)^2 * inv(4 j s^3) * inv(c)^2, all mod q
    c2 = units * units % q
    num = (j * k - u * (s * s % q) % q * c2) % q
    num2 = num * num % q
    inv_c2 = invs * invs % q
    phase = (a % q * units + b % q * num2 % q * inv_base % q * inv_c2) % q
    value = complex(np.exp(TWO_PI * 1j * phase / q).sum())
    return ExpSumValue(value, len(units), q)


def gcal_bound(q: int, a: int, b: int, k: int, u: int) -> float:
    """Prime-power bound 12 q^{4/5} gcd(b u^2, a, b k^2, q)^{1/5}."""
    g = math.gcd(math.gcd(b * u * u, a), math.gcd(b * k * k, q))
    g = math.gcd(g, q)
    return 12 * q ** 0.8 * g ** 0.2


def rational_expsum(f: RationalFunctionModP) -> ExpSumValue:
    """S(f,p) over n mod p with f2(n) != 0; margin against 2 d_p(f) sqrt(p)."""
    if f.is_constant():
        raise ValueError("bound requires f nonconstant mod p")
    p = f.p
    f1, f2 = f.reduced()
    ns = np.arange(p, dtype=np.int64)
    v1 = _poly_eval_mod(f1, ns, p)
    v2 = _poly_eval_mod(f2, ns, p)
    keep = v2 != 0
    units, invs = _unit_inverses(p)
    inv_table = np.zeros(p, dtype=np.int64)
    inv_table[units % p] = invs
    phase = v1[keep] * inv_table[v2[keep]] % p
    value = complex(np.exp(TWO_PI * 1j * phase / p).sum())
    bound = 2 * f.total_degree() * math.sqrt(p)
    return ExpSumValue(value, int(keep.sum()), p, abs(value) / bound)


def _poly_eval_mod(coeffs: Sequence[int], xs: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros_like(xs)
    for c in reversed(coeffs):
        out = (out * xs + c) % p
    return out
