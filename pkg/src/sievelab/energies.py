"""Exact additive energies E2, E4, F2 of modular square roots.

Fast path: sparse integer cyclic convolution of the root multiset
(exact, arbitrary precision).  Oracle path: dense enumeration of all
pair sums with numpy bincount.  Both return exact integers.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .arith import FactoredModulus, factorize, is_prime
from .sqrtmod import RootMultiset, build_root_multiset

ENERGY_LIMIT = 1 << 127


@dataclass(frozen=True)
class EnergyReport:
    kind: str  # E2 | E4 | F2
    R: int
    j: int
    h: int | None
    r: int
    energy: int
    hyp_bound: float
    method: str

    @property
    def ratio(self) -> float:
        return self.energy / self.hyp_bound if self.hyp_bound > 0 else float("inf")


@dataclass(frozen=True)
class SpectrumCheck:
    r: int
    fourier_E: float
    exact_E: int

    @property
    def abs_error(self) -> float:
        return abs(self.fourier_E - self.exact_E)


def _cyclic_convolve(a: Dict[int, int], b: Dict[int, int], r: int) -> Dict[int, int]:
    """Sparse exact cyclic convolution over Z/rZ with Python integers."""
    out: Dict[int, int] = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            s = la + lb
            if s >= r:
                s -= r
            out[s] = out.get(s, 0) + ca * cb
    return out


def _sum_of_squares(t: Dict[int, int]) -> int:
    return sum(c * c for c in t.values())


def _dense_pair_hist(values: Sequence[int], r: int) -> np.ndarray:
    """Histogram of (v1 + v2) mod r over all ordered pairs, by enumeration."""
    v = np.asarray(values, dtype=np.int64)
    if v.size == 0:
        return np.zeros(r, dtype=np.int64)
    sums = np.add.outer(v, v).ravel() % r
    return np.bincount(sums, minlength=r).astype(np.int64)


def _expand(table: Dict[int, int]) -> List[int]:
    out: List[int] = []
    for lam, c in table.items():
        out.extend([lam] * c)
    return out


def _energy_from_multiset(table: Dict[int, int], r: int, fold: int, method: str) -> int:
    """fold = 2 for E2/F2 (pair sums), 4 for E4 (quadruple sums)."""
    if method == "conv":
        c2 = _cyclic_convolve(table, table, r)
        if fold == 4:
            c2 = _cyclic_convolve(c2, c2, r)
        e = _sum_of_squares(c2)
    else:
        values = _expand(table)
        h2 = _dense_pair_hist(values, r)
        if fold == 4:
            support = np.nonzero(h2)[0]
            sums = np.add.outer(support, support).ravel() % r
            weights = np.multiply.outer(h2[support], h2[support]).ravel()
            h4 = np.zeros(r, dtype=np.int64)
            np.add.at(h4, sums, weights)
            e = sum(int(c) ** 2 for c in h4)
        else:
            e = sum(int(c) ** 2 for c in h2)
    if e >= ENERGY_LIMIT:
        raise OverflowError("energy exceeds 2^127")
    return e


def _resolve_method(method: str) -> str:
    if method == "auto":
        return "conv"
    if method in ("conv", "brute"):
        return method
    raise ValueError(f"unknown method {method!r}")


def energy_e2(R: int, j: int, r: int, method: str = "auto") -> EnergyReport:
    """Quadruples (k1..k4) with ki^2 = j*mi, mi in [1,R], k1+k2 = k3+k4 mod r."""
    meth = _resolve_method(method)
    fm = factorize(r) if isinstance(r, int) else r
    ms = build_root_multiset(R, j, fm, "plain",
                             method="fast" if meth == "conv" else "oracle")
    e = _energy_from_multiset(ms.table, fm.n, 2, meth)
    bound = R ** 4 / fm.n + R ** 2
    return EnergyReport("E2", R, j, None, fm.n, e, bound, meth)


def energy_e4(R: int, j: int, r: int, method: str = "auto") -> EnergyReport:
    """8-tuple analogue of energy_e2 (4-vs-4 sums)."""
    meth = _resolve_method(method)
    fm = factorize(r) if isinstance(r, int) else r
    ms = build_root_multiset(R, j, fm, "plain",
                             method="fast" if meth == "conv" else "oracle")
    e = _energy_from_multiset(ms.table, fm.n, 4, meth)
    bound = R ** 8 / fm.n + R ** 4
    return EnergyReport("E4", R, j, None, fm.n, e, bound, meth)


def energy_f2(R: int, j: int, h: int, r: int, method: str = "auto") -> EnergyReport:
    """Additive energy of root differences f(m) = sqrt(j(m+h)) - sqrt(jm)."""
    meth = _resolve_method(method)
    fm = factorize(r) if isinstance(r, int) else r
    ms = build_root_multiset(R, j, fm, "difference", h=h)
    e = _energy_from_multiset(ms.table, fm.n, 2, meth)
    hr = math.gcd(h % fm.n, fm.n) if (h % fm.n) != 0 else fm.n
    bound = hr * R ** 4 / fm.n + R ** 2
    return EnergyReport("F2", R, j, h, fm.n, e, bound, meth)


def parseval_check(R: int, j: int, r: int, fold: int = 2) -> SpectrumCheck:
    """Float Parseval cross-check: (1/r) sum |a_hat(t)|^(2*fold) vs exact energy."""
    fm = factorize(r) if isinstance(r, int) else r
    n = fm.n
    ms = build_root_multiset(R, j, fm, "plain")
    dense = np.zeros(n)
    for lam, c in ms.table.items():
        dense[lam] = c
    spec = np.abs(np.fft.fft(dense)) ** (2 * fold)
    fourier = float(spec.sum() / n)
    exact = _energy_from_multiset(ms.table, n, fold, "conv")
    return SpectrumCheck(n, fourier, exact)


def kssz_check(r: int, j: int, R: int, with_e4: bool = False) -> Dict[str, float]:
    """E2 (optionally E4) against the prime-modulus theorem brackets, eps = 0.

    Constant-tracking monitor; the theorems' implied constants are not
    explicit, so ratios are reported, never asserted.
    """
    if not is_prime(r):
        raise ValueError("kssz_check requires prime r")
    if R > r:
        raise ValueError("need R <= r")
    e2 = energy_e2(R, j, r).energy
    b2 = (R ** 1.5 / r ** 0.5 + 1) * R ** 2
    out = {"r": r, "j": j, "R": R, "e2": e2, "e2_bound": b2, "e2_ratio": e2 / b2}
    if with_e4:
        e4 = energy_e4(R, j, r).energy
        b4 = (R ** (5 / 8) / r ** (1 / 8) + R ** 5.5 / r ** 0.5
              + R ** 3 / r ** 0.25) * R ** 6 + R ** 5
        out.update({"e4": e4, "e4_bound": b4, "e4_ratio": e4 / b4})
    return out


def hypothesis_scan(
    kind: str,
    r_values: Iterable[int],
    R_rule: Callable[[int], int],
    j_sample: Sequence[int] = (1,),
    h_sample: Sequence[int] = (1,),
    work_cap: int = 10 ** 8,
) -> List[EnergyReport]:
    """Empirical stress test of the expected-bound hypotheses H1/H2/H3.

    Evaluates the relevant energy on the (r, R, j[, h]) grid and records
    the ratio against the bracketed expected bound with eps = 0.
    Infeasible grid points (work above work_cap) are skipped.
    """
    if kind not in ("H1", "H2", "H3"):
        raise ValueError(f"unknown hypothesis {kind!r}")
    reports: List[EnergyReport] = []
    for r in r_values:
        R = max(1, min(r, R_rule(r)))
        if r * R * R > work_cap:
            continue
        for j in j_sample:
            if math.gcd(j, r) != 1:
                continue
            if kind == "H1":
                reports.append(energy_e2(R, j, r))
            elif kind == "H2":
                reports.append(energy_e4(R, j, r))
            else:
                for h in h_sample:
                    reports.append(energy_f2(R, j, h, r))
    return reports


def scan_summary(reports: Sequence[EnergyReport]) -> Dict[str, object]:
    if not reports:
        return {"count": 0, "max_ratio": None, "argmax": None}
    best = max(reports, key=lambda rep: rep.ratio)
    return {
        "count": len(reports),
        "max_ratio": best.ratio,
        "argmax": {"kind": best.kind, "r": best.r, "R": best.R,
                   "j": best.j, "h": best.h, "energy": best.energy},
    }
