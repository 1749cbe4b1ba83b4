"""Shared result type and the verify-before-return step."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..geometry.scalar import bit_length
from ..graphs import Graph
from ..surface import Realization, Surface, VerificationReport, realizes, validate


class ConstructionFailed(RuntimeError):
    """A construction produced a surface that does not verify (a bug)."""


@dataclass(frozen=True)
class Stats:
    polygons: int
    max_corners: int
    max_bits: int

    @classmethod
    def of(cls, s: Surface) -> "Stats":
        bits = [bit_length(v) for p in s.polygons for c in p.corners for v in c]
        return cls(
            polygons=len(s.polygons),
            max_corners=max((len(p) for p in s.polygons), default=0),
            max_bits=max(bits, default=0),
        )


@dataclass(frozen=True)
class ConstructionResult:
    surface: Surface
    realization: Realization
    target: Graph
    report: VerificationReport = field(repr=False)
    stats: Stats
    extra: dict = field(default_factory=dict, repr=False)


def finish(surface: Surface, target: Graph, **extra) -> ConstructionResult:
    report = validate(surface)
    if not report.valid:
        v = report.violations[0]
        raise ConstructionFailed(f"construction does not verify: {v.items} {v.description}")
    real = realizes(surface, target, report)
    if real is None:
        raise ConstructionFailed("adjacency graph is not isomorphic to the target")
    return ConstructionResult(surface, real, target, report, Stats.of(surface), extra)
