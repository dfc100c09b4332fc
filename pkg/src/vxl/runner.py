"""Batch execution of every universe with probe capture.

Each universe runs in a fresh interpreter environment with replacements
active; failures are recorded per universe and never abort the batch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import nodes as N
from .errors import ConfigError
from .interp import DEFAULT_STEP_LIMIT, PROBE_CAPTURE_CAP, evaluate
from .universes import (VariationTree, Universe, active_assignment,
                        collect_variation_tree, enumerate_universes,
                        MAX_UNIVERSES)
from .values import value_to_json


@dataclass
class ProbeCapture:
    universe_index: int
    probe_id: str
    values: List[object]
    truncated: bool = False


@dataclass
class UniverseRun:
    universe: Universe
    status: str  # "ok" | "failed"
    error: Optional[str] = None
    error_span: Optional[N.Span] = None
    step_count: int = 0


@dataclass
class RunReport:
    entry_name: str
    universes: List[UniverseRun]
    captures: List[ProbeCapture]
    active_universe_index: int
    probe_ids: List[str]  # document order
    variation_tree: VariationTree = field(repr=False, default=None)

    def ok_universes(self) -> List[UniverseRun]:
        return [u for u in self.universes if u.status == "ok"]


def probe_ids_in_order(tree: N.Program) -> List[str]:
    return [node.pid for node in N.walk(tree) if isinstance(node, N.Probe)]


def _find_entry(tree: N.Program, entry_name: str):
    entries = [it for it in tree.items
               if isinstance(it, N.ExampleDef) and it.name == entry_name]
    if not entries:
        raise ConfigError(f"no example named {entry_name!r}")
    if len(entries) > 1:
        raise ConfigError(f"multiple examples named {entry_name!r}")
    return entries[0]


def default_entry_name(tree: N.Program) -> str:
    """The example named "main", else the sole example."""
    names = [it.name for it in tree.items if isinstance(it, N.ExampleDef)]
    if "main" in names:
        return "main"
    if len(names) == 1:
        return names[0]
    if not names:
        raise ConfigError("program has no examples")
    raise ConfigError(
        f"no example named 'main' among multiple examples: {names}")


def _run_one(tree, entry_name, assignment, step_limit):
    events: List[tuple] = []
    result = evaluate(tree, entry_name,
                      resolver=assignment,
                      sink=lambda pid, value: events.append((pid, value)),
                      replacements_active=True,
                      step_limit=step_limit)
    return result, events


def _captures_from_events(events, universe_index, probe_order):
    by_probe: Dict[str, List[object]] = {}
    for pid, value in events:
        by_probe.setdefault(pid, []).append(value)
    captures = []
    ordered = [p for p in probe_order if p in by_probe]
    # probes reported from outside the document order (should not happen
    # for in-language probes) come last, sorted for determinism
    extras = sorted(p for p in by_probe if p not in probe_order)
    for pid in ordered + extras:
        values = by_probe[pid]
        captures.append(ProbeCapture(
            universe_index=universe_index,
            probe_id=pid,
            values=values,
            truncated=len(values) >= PROBE_CAPTURE_CAP))
    return captures


def run_all_universes(tree: N.Program, entry_name: Optional[str] = None,
                      max_universes: int = MAX_UNIVERSES,
                      step_limit: int = DEFAULT_STEP_LIMIT) -> RunReport:
    if entry_name is None:
        entry_name = default_entry_name(tree)
    _find_entry(tree, entry_name)
    vt = collect_variation_tree(tree)
    universes = enumerate_universes(vt, max_universes)
    active = active_assignment(vt)
    active_index = next(u.index for u in universes if u.assignment == active)
    probe_order = probe_ids_in_order(tree)

    runs: List[UniverseRun] = []
    captures: List[ProbeCapture] = []
    for universe in universes:
        result, events = _run_one(tree, entry_name, universe.assignment,
                                  step_limit)
        if result.error is not None:
            runs.append(UniverseRun(universe, "failed",
                                    error=result.error.message,
                                    error_span=result.error.span,
                                    step_count=result.step_count))
        else:
            runs.append(UniverseRun(universe, "ok",
                                    step_count=result.step_count))
        captures.extend(_captures_from_events(events, universe.index,
                                              probe_order))
    return RunReport(entry_name=entry_name, universes=runs,
                     captures=captures, active_universe_index=active_index,
                     probe_ids=probe_order, variation_tree=vt)


def run_universe(tree: N.Program, entry_name: str, assignment,
                 step_limit: int = DEFAULT_STEP_LIMIT):
    """Single-universe run; matches the corresponding slice of
    run_all_universes for any enumerated assignment."""
    _find_entry(tree, entry_name)
    vt = collect_variation_tree(tree)
    universes = enumerate_universes(vt)
    match = next((u for u in universes if u.assignment == assignment), None)
    index = match.index if match is not None else -1
    result, events = _run_one(tree, entry_name, assignment, step_limit)
    probe_order = probe_ids_in_order(tree)
    captures = _captures_from_events(events, index, probe_order)
    if result.error is not None:
        return ("failed", captures, result.step_count, result.error.message)
    return ("ok", captures, result.step_count, None)


@dataclass
class ActiveProbeView:
    values: Optional[Dict[str, List[object]]]
    error: Optional[str]


def active_probe_values(report: RunReport) -> ActiveProbeView:
    """Captures of the active universe keyed by probe id; if the active
    universe failed, its error is surfaced instead."""
    active = report.universes[report.active_universe_index]
    if active.status == "failed":
        return ActiveProbeView(values=None, error=active.error)
    values = {c.probe_id: c.values for c in report.captures
              if c.universe_index == report.active_universe_index}
    return ActiveProbeView(values=values, error=None)


def report_to_json(report: RunReport) -> dict:
    return {
        "entry": report.entry_name,
        "active": report.active_universe_index,
        "universes": [
            {
                "index": run.universe.index,
                "label": run.universe.label,
                "assignment": dict(run.universe.assignment),
                "status": run.status,
                **({"error": run.error} if run.error else {}),
                "steps": run.step_count,
            }
            for run in report.universes
        ],
        "captures": [
            {
                "universe": c.universe_index,
                "probe": c.probe_id,
                "values": [value_to_json(v) for v in c.values],
                "truncated": c.truncated,
            }
            for c in report.captures
        ],
    }
