"""Parameter-grid scan driver with deterministic ordering and lossless
CSV/JSON persistence."""

from __future__ import annotations

import csv
import itertools
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

from . import __version__
from .energies import energy_e2, energy_e4, energy_f2
from .expsums import esum_jh, gauss_sum_closed, gauss_sum_direct, rational_expsum
from .sieve import px_monitor


@dataclass(frozen=True)
class ScanSpec:
    operation: str
    grid: Mapping[str, Sequence]
    seed: int = 0
    budget: int = 10 ** 9

    def __post_init__(self):
        if self.operation not in SCAN_OPERATIONS:
            raise ValueError(f"unknown operation {self.operation!r}")
        if not self.grid or any(len(v) == 0 for v in self.grid.values()):
            raise ValueError("grid must be non-empty in every parameter")


@dataclass(frozen=True)
class ResultRecord:
    operation: str
    parameters: Dict[str, object]
    outputs: Dict[str, object]
    elapsed_ms: float
    version: str = __version__


def _op_e2(p):
    rep = energy_e2(p["R"], p["j"], p["r"])
    return {"energy": rep.energy, "bound": rep.hyp_bound, "ratio": rep.ratio}, \
        p["r"] * p["R"] ** 2


def _op_e4(p):
    rep = energy_e4(p["R"], p["j"], p["r"])
    return {"energy": rep.energy, "bound": rep.hyp_bound, "ratio": rep.ratio}, \
        p["r"] * p["R"] ** 4


def _op_f2(p):
    rep = energy_f2(p["R"], p["j"], p["h"], p["r"])
    return {"energy": rep.energy, "bound": rep.hyp_bound, "ratio": rep.ratio}, \
        p["r"] * p["R"] ** 2


def _op_esum(p):
    v = esum_jh(p["l"], p["n"], p["j"], p["h"], p["r"])
    return {"abs": v.abs, "ratio": v.margin}, p["r"]


def _op_gauss(p):
    q, a, b = p["q"], p["a"], p["b"]
    direct = gauss_sum_direct(q, a, b)
    out = {"abs": direct.abs, "re": direct.value.real, "im": direct.value.imag}
    if q % 2 == 1:
        closed = gauss_sum_closed(q, a, b)
        out["closed_error"] = abs(direct.value - closed.value)
        out["ratio"] = out["closed_error"] / max(q * 1e-9, 1e-30)
    return out, q


def _op_bombieri(p):
    from .expsums import RationalFunctionModP

    f = RationalFunctionModP(tuple(p["numerator"]), tuple(p["denominator"]), p["p"])
    v = rational_expsum(f)
    return {"abs": v.abs, "ratio": v.margin}, p["p"]


def _op_px(p):
    out = dict(px_monitor(p["x"], p["Q"], p["N"]))
    out["ratio"] = out.get("conj_ratio", 0.0)
    return out, p["Q"] ** 2 * p["N"]


SCAN_OPERATIONS: Dict[str, Callable] = {
    "e2": _op_e2,
    "e4": _op_e4,
    "f2": _op_f2,
    "esum": _op_esum,
    "gauss": _op_gauss,
    "bombieri": _op_bombieri,
    "px": _op_px,
}


def run_scan(spec: ScanSpec) -> List[ResultRecord]:
    """Evaluate every grid point within budget, in deterministic
    lexicographic parameter order, then append a summary row; budget
    exhaustion emits the partial results plus a truncation marker."""
    op = SCAN_OPERATIONS[spec.operation]
    keys = sorted(spec.grid)
    points = sorted(itertools.product(*(spec.grid[k] for k in keys)))
    records: List[ResultRecord] = []
    spent = 0
    truncated = False
    for values in points:
        params = dict(zip(keys, values))
        t0 = time.perf_counter()
        outputs, cost = op(params)
        elapsed = (time.perf_counter() - t0) * 1e3
        spent += cost
        records.append(ResultRecord(spec.operation, params, outputs, elapsed))
        if spent > spec.budget:
            truncated = True
            break
    best = None
    for rec in records:
        ratio = rec.outputs.get("ratio")
        if ratio is not None and (best is None or ratio > best.outputs["ratio"]):
            best = rec
    summary_out: Dict[str, object] = {"count": len(records)}
    if best is not None:
        summary_out["max_ratio"] = best.outputs["ratio"]
        summary_out.update({f"argmax_{k}": v for k, v in best.parameters.items()})
    records.append(ResultRecord("summary", {}, summary_out, 0.0))
    if truncated:
        records.append(ResultRecord("truncated", {}, {"budget": spec.budget,
                                                      "spent": spent}, 0.0))
    return records


def _encode_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, complex):
        return f"{format(v.real, '.17g')}+{format(v.imag, '.17g')}i"
    return str(v)


def _decode_value(s: str):
    if s == "":
        return None
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    if "/" in s and s.endswith(tuple("0123456789")):
        try:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        except ValueError:
            pass
    if s.endswith("i"):
        try:
            body = s[:-1]
            cut = max(body.rfind("+", 1), body.rfind("-", 1))
            return complex(float(body[:cut]), float(body[cut:]))
        except ValueError:
            pass
    try:
        return float(s)
    except ValueError:
        return s


def records_to_csv(records: Sequence[ResultRecord], timing: bool = False) -> str:
    """Serialize records to CSV.  Timing is off by default so that a fixed
    (spec, seed, version) yields byte-identical files across runs."""
    pkeys = sorted({k for r in records for k in r.parameters})
    okeys = sorted({k for r in records for k in r.outputs})
    cols = (["operation"] + [f"param_{k}" for k in pkeys]
            + [f"out_{k}" for k in okeys]
            + (["elapsed_ms"] if timing else []) + ["version"])
    rows = [",".join(cols)]
    for r in records:
        cells = [r.operation]
        cells += [_encode_value(r.parameters[k]) if k in r.parameters else ""
                  for k in pkeys]
        cells += [_encode_value(r.outputs[k]) if k in r.outputs else ""
                  for k in okeys]
        if timing:
            cells.append(format(r.elapsed_ms, ".17g"))
        cells.append(r.version)
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def records_from_csv(text: str) -> List[ResultRecord]:
    lines = [row for row in csv.reader(text.splitlines()) if row]
    header = lines[0]
    out: List[ResultRecord] = []
    for row in lines[1:]:
        params: Dict[str, object] = {}
        outputs: Dict[str, object] = {}
        rec = {"operation": "", "elapsed_ms": 0.0, "version": ""}
        for col, cell in zip(header, row):
            if col == "operation":
                rec["operation"] = cell
            elif col == "elapsed_ms":
                rec["elapsed_ms"] = float(cell)
            elif col == "version":
                rec["version"] = cell
            elif col.startswith("param_") and cell != "":
                params[col[6:]] = _decode_value(cell)
            elif col.startswith("out_") and cell != "":
                outputs[col[4:]] = _decode_value(cell)
        out.append(ResultRecord(rec["operation"], params, outputs,
                                rec["elapsed_ms"], rec["version"]))
    return out


def records_to_json(records: Sequence[ResultRecord], timing: bool = False) -> str:
    """Serialize records to JSON; see records_to_csv for the timing rule."""
    def enc(d):
        return {k: _encode_value(v) if isinstance(v, (float, Fraction, complex, bool))
                else v for k, v in d.items()}

    payload = []
    for r in records:
        item = {"operation": r.operation, "parameters": enc(r.parameters),
                "outputs": enc(r.outputs), "version": r.version}
        if timing:
            item["elapsed_ms"] = format(r.elapsed_ms, ".17g")
        payload.append(item)
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def records_from_json(text: str) -> List[ResultRecord]:
    out = []
    for item in json.loads(text):
        params = {k: _decode_value(v) if isinstance(v, str) else v
                  for k, v in item["parameters"].items()}
        outputs = {k: _decode_value(v) if isinstance(v, str) else v
                   for k, v in item["outputs"].items()}
        out.append(ResultRecord(item["operation"], params, outputs,
                                float(item.get("elapsed_ms", 0.0)),
                                item["version"]))
    return out
