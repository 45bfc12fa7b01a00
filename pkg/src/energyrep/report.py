"""Machine-readable check reports: JSON verdicts plus CSV tables.

Reports carry no wall-clock fields, so a fixed config and seed reproduce the
bytes exactly; run timestamps go to a sidecar meta file instead.
"""
from __future__ import annotations

import csv
import hashlib
import json
import platform
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import scipy


def environment_stamp() -> dict:
    from . import __version__
    return {
        "package": f"energyrep {__version__}",
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "platform": platform.platform(),
    }


def digest_of(*parts) -> str:
    text = "|".join(str(p) for p in parts)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CheckResult:
    name: str
    inputs_digest: str
    measured: float
    tolerance: float
    comparator: str  # "<=" or ">="
    verdict: str     # pass | fail | refused
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs_digest": self.inputs_digest,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "comparator": self.comparator,
            "verdict": self.verdict,
            "detail": self.detail,
        }


def check(name: str, inputs_digest: str, measured: float, tolerance: float,
          comparator: str = "<=", detail: str = "") -> CheckResult:
    measured = float(measured)
    ok = measured <= tolerance if comparator == "<=" else measured >= tolerance
    return CheckResult(name, inputs_digest, measured, float(tolerance),
                       comparator, "pass" if ok else "fail", detail)


def refusal(name: str, inputs_digest: str, detail: str) -> CheckResult:
    return CheckResult(name, inputs_digest, float("nan"), float("nan"), "<=",
                       "refused", detail)


@dataclass
class Report:
    suite: str
    seed: int
    config_digest: str
    environment: dict = field(default_factory=environment_stamp)
    checks: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    @property
    def passed(self) -> bool:
        return all(c.verdict == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "config_digest": self.config_digest,
            "environment": self.environment,
            "checks": [c.to_dict() for c in self.checks],
            "extras": self.extras,
            "passed": self.passed,
        }

    def write_json(self, outdir: Path) -> Path:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / f"{self.suite}.json"
        # NaN is not valid JSON; refusals serialize their sentinel as a string
        payload = json.dumps(self.to_dict(), indent=2, sort_keys=True,
                             allow_nan=False) \
            if _finite(self) else _dumps_with_nan(self.to_dict())
        path.write_text(payload + "\n", encoding="utf-8")
        return path


def _finite(report: Report) -> bool:
    return all(np.isfinite(c.measured) and np.isfinite(c.tolerance)
               for c in report.checks)


def _dumps_with_nan(payload: dict) -> str:
    def clean(obj):
        if isinstance(obj, float) and not np.isfinite(obj):
            return "refused"
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [clean(v) for v in obj]
        return obj
    return json.dumps(clean(payload), indent=2, sort_keys=True)


def write_sidecar_meta(outdir: Path, note: str = "") -> Path:
    """Wall-clock stamp, isolated from the deterministic reports."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "run_meta.txt"
    stamp = datetime.now(timezone.utc).isoformat()
    path.write_text(f"timestamp_utc={stamp}\n{note}\n", encoding="utf-8")
    return path


def write_csv(outdir: Path, name: str, header, rows) -> Path:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{name}.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (np.floating,)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return int(v)
    return v
