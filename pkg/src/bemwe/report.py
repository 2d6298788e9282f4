"""Fit reports: a human-readable text form and a lossless JSON sidecar."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from . import __version__
from .inference import FitReport, RegionPartition

__all__ = ["ReportDocument"]


def _plain(obj):
    # numpy scalars/arrays and tuples down to JSON-native types
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return obj


@dataclass
class ReportDocument:
    n: int
    n1: int
    n2: int
    n3: int
    scale: float
    source: str
    alpha: float
    beta: float
    lam: float
    estimates: list
    loglik: float
    covariance: list
    conf_intervals: list
    confidence: float
    iterations: int
    converged: bool
    diagnostics: dict = field(default_factory=dict)
    tool_version: str = __version__
    seed: Optional[int] = None

    @classmethod
    def from_fit(
        cls,
        fit: FitReport,
        part: RegionPartition,
        scale: float = 1.0,
        source: str = "",
        seed: Optional[int] = None,
    ) -> "ReportDocument":
        return cls(
            n=part.n,
            n1=part.n1,
            n2=part.n2,
            n3=part.n3,
            scale=float(scale),
            source=source,
            alpha=fit.fixed.alpha,
            beta=fit.fixed.beta,
            lam=fit.fixed.lam,
            estimates=_plain(fit.estimates),
            loglik=float(fit.loglik),
            covariance=_plain(fit.covariance),
            conf_intervals=_plain(fit.conf_intervals),
            confidence=float(fit.confidence),
            iterations=int(fit.iterations),
            converged=bool(fit.converged),
            diagnostics=_plain(fit.diagnostics),
            seed=seed,
        )

    def to_dict(self) -> dict[str, Any]:
        return _plain(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        g = lambda v: f"{v:.6g}"  # noqa: E731
        pct = f"{100 * self.confidence:g}%"
        lines = [
            "[input]",
            f"source = {self.source}",
            f"n = {self.n}",
            f"n1 (x1 < x2) = {self.n1}",
            f"n2 (x2 < x1) = {self.n2}",
            f"n3 (ties) = {self.n3}",
            f"scale = {g(self.scale)}",
            "",
            "[fixed]",
            f"alpha = {g(self.alpha)}",
            f"beta = {g(self.beta)}",
            f"lambda = {g(self.lam)}",
            "",
            "[estimates]",
        ]
        for k, (est, (lo, hi)) in enumerate(zip(self.estimates, self.conf_intervals), start=1):
            se = self.covariance[k - 1][k - 1] ** 0.5
            lines.append(f"gamma{k} = {g(est)}  se = {g(se)}  {pct} CI = ({g(lo)}, {g(hi)})")
        lines += [
            f"loglik = {g(self.loglik)}",
            "",
            "[covariance]",
            *("  ".join(f"{g(v):>12}" for v in row) for row in self.covariance),
            "",
            "[solver]",
            f"converged = {str(self.converged).lower()}",
            f"iterations = {self.iterations}",
        ]
        if "max_abs_score" in self.diagnostics:
            lines.append(f"max_abs_score = {g(self.diagnostics['max_abs_score'])}")
        if self.diagnostics.get("boundary"):
            comps = ", ".join(f"gamma{k + 1}" for k in self.diagnostics["boundary"])
            lines.append(f"boundary = {comps}")
        lines.append(f"version = {self.tool_version}")
        return "\n".join(lines) + "\n"
