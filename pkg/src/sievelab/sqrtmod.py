"""Complete sets of square roots of m modulo r, for arbitrary composite r.

A "square root of m mod r" means every k in [0, r) with k^2 = m (mod r).
Prime-power moduli are handled by Tonelli-Shanks / direct exponentiation
plus Hensel lifting (explicit case analysis at p = 2); composite moduli by
CRT recombination of the prime-power root sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

import numpy as np

from .arith import FactoredModulus, factorize, is_prime, mod_inverse


@dataclass(frozen=True)
class RootSet:
    """All k in [0, r) with k^2 = m (mod r), sorted."""

    modulus: int
    m: int
    roots: Tuple[int, ...]

    def __post_init__(self):
        for k in self.roots:
            if (k * k - self.m) % self.modulus != 0:
                raise ValueError(f"{k} is not a root of {self.m} mod {self.modulus}")
        if list(self.roots) != sorted(set(self.roots)):
            raise ValueError("roots must be sorted and duplicate-free")

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, k: int) -> bool:
        return k in self.roots


def sqrt_mod_prime(m: int, p: int) -> RootSet:
    """Square roots of m modulo an odd prime p.

    0, 1 or 2 roots; a single root only for m = 0.
    """
    if p == 2:
        raise ValueError("p = 2 is handled by sqrt_mod_prime_power")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m %= p
    if m == 0:
        return RootSet(p, 0, (0,))
    x = _unit_sqrt_mod_prime(m, p)
    if x is None:
        return RootSet(p, m, ())
    return RootSet(p, m, tuple(sorted({x, p - x})))


def _unit_sqrt_mod_prime(m: int, p: int) -> int | None:
    """One square root of a unit m mod odd prime p, or None if non-residue."""
    if p % 4 == 3:
        x = pow(m, (p + 1) // 4, p)
        return x if x * x % p == m else None
    if p % 8 == 5:
        x = pow(m, (p + 3) // 8, p)
        if x * x % p != m:
            x = x * pow(2, (p - 1) // 4, p) % p
        return x if x * x % p == m else None
    # Tonelli-Shanks for p = 1 mod 8
    if pow(m, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    x = pow(m, (q + 1) // 2, p)
    t = pow(m, q, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (s - i - 1), p)
        x = x * b % p
        t = t * b * b % p
        c = b * b % p
        s = i
    return x


def _unit_roots_mod_2power(m: int, gamma: int) -> List[int]:
    """All roots of an odd m modulo 2^gamma."""
    mod = 1 << gamma
    m %= mod
    if gamma == 1:
        return [1]
    if gamma == 2:
        return [1, 3] if m == 1 else []
    if m % 8 != 1:
        return []
    # lift a root from mod 8 upward: x -> x or x + 2^(k-1) works mod 2^(k+1)
    x = 1
    for k in range(3, gamma):
        if (x * x - m) % (1 << (k + 1)) != 0:
            x += 1 << (k - 1)
    return sorted({x % mod, (-x) % mod, (x + mod // 2) % mod, (-x + mod // 2) % mod})


def _unit_roots_mod_odd_prime_power(m: int, p: int, gamma: int) -> List[int]:
    """All roots of a unit m modulo p^gamma, p odd."""
    x = _unit_sqrt_mod_prime(m % p, p)
    if x is None:
        return []
    mod = p
    for _ in range(gamma - 1):
        # Hensel: x -> x - (x^2 - m) / (2x), unique lift since p is odd
        newmod = mod * p
        x = (x - (x * x - m) * mod_inverse(2 * x, newmod)) % newmod
        mod = newmod
    return sorted({x, (p ** gamma - x) % p ** gamma})


def sqrt_mod_prime_power(m: int, p: int, alpha: int) -> RootSet:
    """All square roots of m modulo p^alpha.

    m = 0 has exactly p^floor(alpha/2) roots.  Otherwise write
    m = m1 * p^beta with (m1, p) = 1: solvable only for even beta with m1
    a square modulo p^(alpha-beta), and the roots are the scaled lifts
    p^(beta/2) * (x + t * p^(alpha-beta)).
    """
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p ** alpha
    m %= q
    if m == 0:
        step = p ** ((alpha + 1) // 2)
        return RootSet(q, 0, tuple(range(0, q, step)))
    beta = 0
    m1 = m
    while m1 % p == 0:
        m1 //= p
        beta += 1
    if beta % 2 != 0:
        return RootSet(q, m, ())
    gamma = alpha - beta
    if p == 2:
        base = _unit_roots_mod_2power(m1, gamma)
    else:
        base = _unit_roots_mod_odd_prime_power(m1, p, gamma)
    if not base:
        return RootSet(q, m, ())
    half = p ** (beta // 2)
    pg = p ** gamma
    roots = sorted(half * (x + t * pg) for x in base for t in range(half))
    return RootSet(q, m, tuple(roots))


def sqrt_mod_all(m: int, r: int | FactoredModulus) -> RootSet:
    """All square roots of m modulo r, via CRT over the prime powers of r."""
    fm = r if isinstance(r, FactoredModulus) else factorize(r)
    n = fm.n
    m %= n
    if n == 1:
        return RootSet(1, 0, (0,))
    partial: List[Tuple[int, ...]] = []
    for p, a in fm.factors:
        rs = sqrt_mod_prime_power(m, p, a)
        if not rs.roots:
            return RootSet(n, m, ())
        partial.append(rs.roots)
    mods = fm.prime_powers
    combos = [0]
    combo_mod = 1
    for roots_i, q_i in zip(partial, mods):
        inv1 = mod_inverse(combo_mod % q_i, q_i) if q_i > 1 else 0
        new = []
        for v in combos:
            for x in roots_i:
                t = ((x - v) * inv1) % q_i
                new.append(v + combo_mod * t)
        combos = new
        combo_mod *= q_i
    return RootSet(n, m, tuple(sorted(combos)))


def root_pairs(r: int | FactoredModulus) -> np.ndarray:
    """All (m, k) with k^2 = m (mod r), as an (r, 2) array sorted by (m, k).

    Built from the prime-power solver plus a vectorized CRT outer product,
    i.e. the same pipeline as sqrt_mod_all but amortized over every m.
    There are exactly r pairs since every k is a root of exactly one m.
    """
    fm = r if isinstance(r, FactoredModulus) else factorize(r)
    n = fm.n
    if n == 1:
        return np.array([[0, 0]], dtype=np.int64)
    acc_m = np.array([0], dtype=np.int64)
    acc_k = np.array([0], dtype=np.int64)
    acc_mod = 1
    for p, a in fm.factors:
        q = p ** a
        ms, ks = _prime_power_pairs(p, a)
        inv = mod_inverse(acc_mod % q, q) if q > 1 else 0
        # CRT the accumulated pairs with the new prime-power pairs
        tm = (np.subtract.outer(ms, acc_m % q) * inv) % q
        tk = (np.subtract.outer(ks, acc_k % q) * inv) % q
        acc_m = (acc_m[None, :] + acc_mod * tm).ravel()
        acc_k = (acc_k[None, :] + acc_mod * tk).ravel()
        acc_mod *= q
    order = np.lexsort((acc_k, acc_m))
    return np.stack([acc_m[order], acc_k[order]], axis=1)


_PP_PAIR_CACHE: Dict[Tuple[int, int], Tuple[np.ndarray, np.ndarray]] = {}


def _vec_pow_mod(base: np.ndarray, e: int, p: int) -> np.ndarray:
    """Elementwise base**e mod p by square-and-multiply (p**2 < 2**63)."""
    result = np.ones_like(base)
    b = base % p
    while e:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return result


def _vec_unit_sqrt_mod_prime(m: np.ndarray, p: int) -> np.ndarray:
    """One root for each unit entry of m mod odd prime p, -1 for non-residues.

    Same case split as _unit_sqrt_mod_prime (direct exponentiation for
    p = 3 mod 4 and p = 5 mod 8, Tonelli-Shanks otherwise), vectorized
    with masked array updates.
    """
    if p % 4 == 3:
        x = _vec_pow_mod(m, (p + 1) // 4, p)
        return np.where(x * x % p == m, x, -1)
    if p % 8 == 5:
        x = _vec_pow_mod(m, (p + 3) // 8, p)
        fix = x * x % p != m
        x[fix] = x[fix] * pow(2, (p - 1) // 4, p) % p
        return np.where(x * x % p == m, x, -1)
    out = np.full_like(m, -1)
    residue = _vec_pow_mod(m, (p - 1) // 2, p) == 1
    mr = m[residue]
    if mr.size == 0:
        return out
    q, s0 = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s0 += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    x = _vec_pow_mod(mr, (q + 1) // 2, p)
    t = _vec_pow_mod(mr, q, p)
    c = np.full_like(mr, pow(z, q, p))
    s = np.full_like(mr, s0)
    while True:
        active = t != 1
        if not active.any():
            break
        # order of t: least i with t^(2^i) = 1
        t2 = t.copy()
        i = np.zeros_like(t)
        mask = active & (t2 != 1)
        while mask.any():
            t2[mask] = t2[mask] * t2[mask] % p
            i[mask] += 1
            mask &= t2 != 1
        # b = c^(2^(s-i-1)) by repeated squaring with per-element exponent
        e = np.where(active, s - i - 1, 0)
        b = c.copy()
        while (e > 0).any():
            sel = e > 0
            b[sel] = b[sel] * b[sel] % p
            e[sel] -= 1
        x[active] = x[active] * b[active] % p
        bb = b * b % p
        t[active] = t[active] * bb[active] % p
        c[active] = bb[active]
        s[active] = i[active]
    out[residue] = x
    return out


def _prime_pair_table(p: int) -> Tuple[np.ndarray, np.ndarray]:
    """(m, k) root pairs mod an odd prime p via the vectorized solver."""
    units = np.arange(1, p, dtype=np.int64)
    x = _vec_unit_sqrt_mod_prime(units, p)
    good = x >= 0
    mr = units[good]
    xr = x[good]
    ms = np.concatenate([[0], mr, mr])
    ks = np.concatenate([[0], xr, (p - xr) % p])
    order = np.lexsort((ks, ms))
    return ms[order], ks[order]


def _prime_power_pairs(p: int, a: int) -> Tuple[np.ndarray, np.ndarray]:
    key = (p, a)
    hit = _PP_PAIR_CACHE.get(key)
    if hit is not None:
        return hit
    q = p ** a
    if a == 1 and p > 2:
        out = _prime_pair_table(p)
    elif a == 1:
        out = (np.array([0, 1], dtype=np.int64), np.array([0, 1], dtype=np.int64))
    else:
        ms: List[int] = []
        ks: List[int] = []
        for m in range(q):
            for k in sqrt_mod_prime_power(m, p, a).roots:
                ms.append(m)
                ks.append(k)
        out = (np.array(ms, dtype=np.int64), np.array(ks, dtype=np.int64))
    if q <= 10000:
        _PP_PAIR_CACHE[key] = out
    return out


@dataclass(frozen=True)
class RootMultiset:
    """Residue -> count table of square roots (plain) or root differences.

    plain:       count(lam) = #{m in [1,R] : lam^2 = j*m (mod r)}
    difference:  count(lam) = #{(m,k,kt) : 1<=m<=R, k^2=jm, kt^2=j(m+h),
                                kt-k = lam (mod r)}
    """

    modulus: int
    R: int
    j: int
    kind: str
    h: int | None
    table: Dict[int, int] = field(compare=False)

    def mass(self) -> int:
        return sum(self.table.values())

    def count(self, lam: int) -> int:
        return self.table.get(lam % self.modulus, 0)


def build_root_multiset(
    R: int,
    j: int,
    r: int | FactoredModulus,
    kind: str = "plain",
    h: int | None = None,
    method: str = "fast",
) -> RootMultiset:
    """Build the root multiset for m in [1, R].

    kind "plain" counts roots lam of j*m; kind "difference" counts
    differences kt - k between roots of j(m+h) and jm.  method "fast"
    iterates k in O(r) (plain) resp. uses bulk root tables (difference);
    method "oracle" iterates m and calls sqrt_mod_all per value.
    """
    fm = r if isinstance(r, FactoredModulus) else factorize(r)
    n = fm.n
    if not 1 <= R <= n:
        raise ValueError("need 1 <= R <= r")
    if math.gcd(j, n) != 1:
        raise ValueError("need gcd(j, r) = 1")
    if kind not in ("plain", "difference"):
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "difference" and h is None:
        raise ValueError("difference kind needs h")

    table: Dict[int, int] = {}
    jinv = mod_inverse(j, n) if n > 1 else 0
    if kind == "plain":
        if method == "fast":
            for k in range(n):
                m = (jinv * k * k) % n
                if m == 0:
                    m = n
                if m <= R:
                    table[k] = table.get(k, 0) + 1
        else:
            for m in range(1, R + 1):
                for k in sqrt_mod_all(j * m % n, fm).roots:
                    table[k] = table.get(k, 0) + 1
        return RootMultiset(n, R, j, "plain", None, table)

    assert h is not None
    for m in range(1, R + 1):
        ks = sqrt_mod_all(j * m % n, fm).roots
        if not ks:
            continue
        kts = sqrt_mod_all(j * (m + h) % n, fm).roots
        for k in ks:
            for kt in kts:
                lam = (kt - k) % n
                table[lam] = table.get(lam, 0) + 1
    return RootMultiset(n, R, j, "difference", h, table)
