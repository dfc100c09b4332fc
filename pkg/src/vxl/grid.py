"""Comparison-grid construction and rendering.

Default layout: one row per probe, one column per ok universe. Pivoted
layout puts one top-level variation point on the y-axis. Failed universes
never populate cells in the default layout; they are listed under the grid
with their error messages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .errors import ConfigError
from .runner import RunReport
from .universes import universe_label
from .values import format_value

FAILURE_PREFIX = "⟨error: "
EMPTY_CELL = "–"


@dataclass
class ValueRenderer:
    name: str
    applies: Callable[[object], bool]
    render: Callable[[object], str]


class RendererRegistry:
    """First applicable renderer wins; the textual fallback is always last."""

    def __init__(self):
        self._renderers: List[ValueRenderer] = []
        self._fallback = ValueRenderer("text", lambda v: True, format_value)

    def register(self, renderer: ValueRenderer):
        self._renderers.append(renderer)

    def render(self, value) -> str:
        for renderer in self._renderers:
            if renderer.applies(value):
                return renderer.render(value)
        return self._fallback.render(value)


DEFAULT_RENDERERS = RendererRegistry()


@dataclass
class FailureCell:
    error: str


@dataclass
class GridModel:
    title: str
    row_headers: List[str]
    column_headers: List[str]
    cells: List[list]  # row-major; cell = list[str] | FailureCell | None
    pivot: Optional[str] = None
    excluded: List[dict] = field(default_factory=list)  # {label, error}

    def __post_init__(self):
        assert len(self.cells) == len(self.row_headers)
        for row in self.cells:
            assert len(row) == len(self.column_headers)


def _render_values(values, renderers: RendererRegistry) -> List[str]:
    return [renderers.render(v) for v in values]


def _captures_by_key(report: RunReport) -> Dict[tuple, list]:
    return {(c.universe_index, c.probe_id): c.values
            for c in report.captures}


def build_default_grid(report: RunReport,
                       renderers: Optional[RendererRegistry] = None
                       ) -> GridModel:
    renderers = renderers or DEFAULT_RENDERERS
    captures = _captures_by_key(report)
    ok_runs = report.ok_universes()
    rows = list(report.probe_ids)
    cells = []
    for pid in rows:
        row = []
        for run in ok_runs:
            values = captures.get((run.universe.index, pid))
            if values is None:
                row.append(None)
            else:
                row.append(_render_values(values, renderers))
        cells.append(row)
    columns = [run.universe.label or f"universe {run.universe.index}"
               for run in ok_runs]
    excluded = [{"label": run.universe.label, "error": run.error}
                for run in report.universes if run.status == "failed"]
    return GridModel(title=f"probes for {report.entry_name!r}",
                     row_headers=rows, column_headers=columns, cells=cells,
                     excluded=excluded)


def build_pivot_grid(report: RunReport, pivot_vp_id: str,
                     renderers: Optional[RendererRegistry] = None
                     ) -> GridModel:
    renderers = renderers or DEFAULT_RENDERERS
    vt = report.variation_tree
    by_id = vt.by_id()
    if pivot_vp_id not in by_id:
        raise ConfigError(f"unknown variation '{pivot_vp_id}'")
    pivot = by_id[pivot_vp_id]
    if pivot.parent is not None:
        raise ConfigError(
            f"cannot pivot on nested variation '{pivot_vp_id}'")
    captures = _captures_by_key(report)
    runs_by_index = {run.universe.index: run for run in report.universes}

    # columns: distinct assignments over the remaining variation points,
    # in enumeration order
    sub_keys = []
    sub_assignments = []
    for run in report.universes:
        sub = {k: v for k, v in run.universe.assignment.items()
               if k != pivot_vp_id}
        key = tuple(sorted(sub.items()))
        if key not in sub_keys:
            sub_keys.append(key)
            sub_assignments.append(sub)
    columns = [universe_label(vt, sub) for sub in sub_assignments]

    multiple_probes = len(report.probe_ids) > 1
    row_headers = []
    cells = []
    for alt_index in pivot.enabled_indices():
        alt = pivot.alternatives[alt_index]
        for pid in report.probe_ids:
            header = f"{pivot.display_name}: {alt.name}"
            if multiple_probes:
                header += f" · {pid}"
            row_headers.append(header)
            row = []
            for sub in sub_assignments:
                composed = dict(sub)
                composed[pivot_vp_id] = alt_index
                run = next((r for r in report.universes
                            if r.universe.assignment == composed), None)
                if run is None:
                    row.append(None)
                elif run.status == "failed":
                    row.append(FailureCell(run.error))
                else:
                    values = captures.get((run.universe.index, pid))
                    row.append(None if values is None
                               else _render_values(values, renderers))
            cells.append(row)
    excluded = [{"label": run.universe.label, "error": run.error}
                for run in report.universes if run.status == "failed"]
    return GridModel(title=f"probes for {report.entry_name!r} "
                           f"by {pivot.display_name}",
                     row_headers=row_headers, column_headers=columns,
                     cells=cells, pivot=pivot_vp_id, excluded=excluded)


class GridStrategyRegistry:
    """Grid-producing strategies; "default" and "pivot" are built in."""

    def __init__(self):
        self._strategies: Dict[str, Callable] = {}
        self.register("default",
                      lambda report, **kw: build_default_grid(report, **kw))
        self.register("pivot",
                      lambda report, pivot_vp_id, **kw:
                      build_pivot_grid(report, pivot_vp_id, **kw))

    def register(self, name: str, build: Callable):
        self._strategies[name] = build

    def get(self, name: str) -> Callable:
        if name not in self._strategies:
            raise ConfigError(f"unknown grid strategy '{name}'")
        return self._strategies[name]

    def names(self) -> List[str]:
        return list(self._strategies)


GRID_STRATEGIES = GridStrategyRegistry()


def build_grid(report: RunReport, pivot: Optional[str] = None,
               renderers: Optional[RendererRegistry] = None) -> GridModel:
    if pivot is None:
        return build_default_grid(report, renderers=renderers)
    return build_pivot_grid(report, pivot, renderers=renderers)


def grid_to_json(model: GridModel) -> dict:
    def cell_json(cell):
        if cell is None:
            return None
        if isinstance(cell, FailureCell):
            return {"error": cell.error}
        return list(cell)

    out = {
        "title": model.title,
        "rows": list(model.row_headers),
        "cols": list(model.column_headers),
        "cells": [[cell_json(c) for c in row] for row in model.cells],
        "excluded": list(model.excluded),
    }
    if model.pivot is not None:
        out["pivot"] = model.pivot
    return out


def grid_to_markdown(model: GridModel) -> str:
    def cell_text(cell) -> str:
        if cell is None:
            return EMPTY_CELL
        if isinstance(cell, FailureCell):
            return f"{FAILURE_PREFIX}{cell.error}⟩"
        return "; ".join(cell)

    lines = []
    header = [""] + list(model.column_headers)
    lines.append("| " + " | ".join(header) + " |")
    lines.append("| " + " | ".join("---" for _ in header) + " |")
    for row_header, row in zip(model.row_headers, model.cells):
        lines.append("| " + " | ".join(
            [row_header] + [cell_text(c) for c in row]) + " |")
    if model.excluded:
        lines.append("")
        lines.append("excluded:")
        for entry in model.excluded:
            lines.append(f"- {entry['label']}: "
                         f"{FAILURE_PREFIX}{entry['error']}⟩")
    return "\n".join(lines) + "\n"


def render_grid(model: GridModel, fmt: str = "markdown") -> str:
    if fmt == "markdown":
        return grid_to_markdown(model)
    if fmt == "json":
        import json
        return json.dumps(grid_to_json(model), ensure_ascii=False, indent=2)
    raise ConfigError(f"unknown grid format '{fmt}'")
