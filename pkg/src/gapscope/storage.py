"""Problem, report, and configuration files.

All persistence is JSON with [re, im] pairs for complex entries (no
binary formats), sorted keys, and repr-exact floats, so identical runs
produce identical bytes.
"""

import json
from dataclasses import dataclass, field, asdict

import numpy as np

from .problems import (HamiltonianPair, BarrierSpec, UnfoldingSpec,
                       hamming_plus_barrier, grover_pair, unfolding_family, diagonal_pair)

PROBLEM_SCHEMA = "gapscope-problem/1"
REPORT_SCHEMA = "gapscope-report/1"


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def pair_to_dict(pair: HamiltonianPair, dense: bool = True) -> dict:
    out = {
        "schema": PROBLEM_SCHEMA,
        "family": pair.family,
        "dim": pair.dim,
        "params": pair.params,
        "seed": pair.seed,
    }
    if dense:
        out["h0"] = matrix_to_json(pair.h0)
        out["h1"] = matrix_to_json(pair.h1)
    return out


def build_pair(family: str, params: dict, seed=None) -> HamiltonianPair:
    """Regenerate a pair from its family tag and parameters."""
    if family == "hamming-barrier":
        spec = BarrierSpec(int(params["n"]), int(params["l"]), int(params["u"]), float(params["h"]))
        return hamming_plus_barrier(spec, eps=float(params.get("eps", 0.0)), seed=seed or 0)
    if family == "grover":
        return grover_pair(int(params["dim"]), seed=seed)
    if family == "unfolding":
        return unfolding_family(UnfoldingSpec(eps=float(params.get("eps", 0.0))))
    if family == "diagonal":
        pts = params["points"]
        return diagonal_pair([p[0] for p in pts], [p[1] for p in pts])
    raise ValueError(f"unknown problem family {family!r}")


def pair_from_dict(data: dict) -> HamiltonianPair:
    if "h0" in data and "h1" in data:
        return HamiltonianPair(matrix_from_json(data["h0"]), matrix_from_json(data["h1"]),
                               family=data.get("family", "custom"),
                               params=data.get("params", {}), seed=data.get("seed"))
    return build_pair(data["family"], data.get("params", {}), seed=data.get("seed"))


def write_problem(pair: HamiltonianPair, path, dense: bool = True):
    with open(path, "w") as fh:
        json.dump(pair_to_dict(pair, dense=dense), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_problem(path) -> HamiltonianPair:
    with open(path) as fh:
        return pair_from_dict(json.load(fh))


def write_report(report: dict, path):
    report = dict(report)
    report["schema"] = REPORT_SCHEMA
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_report(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


@dataclass
class RunConfig:
    """analyze-run settings; round-trips through JSON."""

    problem: dict = field(default_factory=dict)   # {"file": path} or {"family":..., "params":...}
    start: float = 0.0
    end: float = 2.0 * np.pi
    delta: float = 0.001
    bands: tuple = (1, 2)
    window: float = 0.1
    outdir: str = "."
    formats: tuple = ("csv", "json", "svg")
    tolerances: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bands"] = list(self.bands)
        d["formats"] = list(self.formats)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        kw = dict(data)
        if "bands" in kw:
            kw["bands"] = tuple(int(b) for b in kw["bands"])
        if "formats" in kw:
            kw["formats"] = tuple(kw["formats"])
        allowed = {f for f in cls.__dataclass_fields__}
        kw = {k: v for k, v in kw.items() if k in allowed}
        return cls(**kw)


def write_config(cfg: RunConfig, path):
    with open(path, "w") as fh:
        json.dump(cfg.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_config(path) -> RunConfig:
    with open(path) as fh:
        return RunConfig.from_dict(json.load(fh))
