"""Variation-tree extraction and universe enumeration.

A universe assigns one enabled alternative to every *reachable* variation
point: a nested variation participates only when its enclosing alternative
is chosen. Enumeration is deterministic (document order, ascending
alternative indices) so grids and tests are stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import nodes as N
from .errors import ConfigError, GuardError
from .naming import alternative_display_name, variation_display_name

MAX_UNIVERSES = 512


@dataclass
class AltInfo:
    name: str
    disabled: bool
    contained_variation_ids: List[str] = field(default_factory=list)


@dataclass
class VpInfo:
    vp_id: str
    display_name: str
    active_index: int
    alternatives: List[AltInfo]
    parent: Optional[Tuple[str, int]] = None  # (vp_id, alt_index)

    def enabled_indices(self) -> List[int]:
        return [i for i, a in enumerate(self.alternatives) if not a.disabled]


@dataclass
class VariationTree:
    nodes: List[VpInfo] = field(default_factory=list)

    def by_id(self) -> Dict[str, VpInfo]:
        return {vp.vp_id: vp for vp in self.nodes}


@dataclass
class Universe:
    assignment: Dict[str, int]
    label: str
    index: int


def _dedup_alt_names(names: List[str]) -> List[str]:
    seen = {}
    for name in names:
        seen[name] = seen.get(name, 0) + 1
    out = []
    for i, name in enumerate(names):
        if seen[name] > 1:
            out.append(f"{name} ({i + 1})")
        else:
            out.append(name)
    return out


def collect_variation_tree(tree: N.Program) -> VariationTree:
    """Gather variation points in document order with nesting links."""
    vt = VariationTree()

    def visit(node, parent: Optional[Tuple[str, int]]):
        if isinstance(node, N.Variation):
            names = _dedup_alt_names(
                [alternative_display_name(a) for a in node.alts])
            info = VpInfo(
                vp_id=node.vid,
                display_name=variation_display_name(tree, node),
                active_index=node.active_index,
                alternatives=[AltInfo(names[i], a.disabled)
                              for i, a in enumerate(node.alts)],
                parent=parent,
            )
            vt.nodes.append(info)
            if parent is not None:
                parent_vp = vt.by_id()[parent[0]]
                parent_vp.alternatives[parent[1]] \
                    .contained_variation_ids.append(node.vid)
            for i, alt in enumerate(node.alts):
                visit(alt.block, (node.vid, i))
            return
        for child in N.children(node):
            visit(child, parent)

    visit(tree, None)
    return vt


def _check_enabled(vt: VariationTree):
    for vp in vt.nodes:
        if not vp.enabled_indices():
            raise ConfigError(
                f"variation '{vp.vp_id}' has no enabled alternatives")


def _reachable(vp: VpInfo, partial: Dict[str, int]) -> bool:
    if vp.parent is None:
        return True
    parent_id, alt_index = vp.parent
    return partial.get(parent_id) == alt_index


def enumerate_universes(vt: VariationTree,
                        max_universes: int = MAX_UNIVERSES) -> List[Universe]:
    """All reachable assignments over enabled alternatives, in lexicographic
    order by (document order, ascending alternative index)."""
    _check_enabled(vt)
    assignments: List[Dict[str, int]] = []

    def extend(pos: int, partial: Dict[str, int]):
        if pos == len(vt.nodes):
            assignments.append(dict(partial))
            if len(assignments) > max_universes:
                widest = max(vt.nodes,
                             key=lambda vp: len(vp.enabled_indices()))
                raise GuardError(
                    f"more than {max_universes} universes; consider "
                    f"disabling alternatives of variation "
                    f"'{widest.vp_id}'")
            return
        vp = vt.nodes[pos]
        if not _reachable(vp, partial):
            extend(pos + 1, partial)
            return
        for index in vp.enabled_indices():
            partial[vp.vp_id] = index
            extend(pos + 1, partial)
            del partial[vp.vp_id]

    extend(0, {})
    return [Universe(assignment=a, label=universe_label(vt, a), index=i)
            for i, a in enumerate(assignments)]


def universe_label(vt: VariationTree, assignment: Dict[str, int]) -> str:
    parts = []
    for vp in vt.nodes:
        if vp.vp_id in assignment:
            alt = vp.alternatives[assignment[vp.vp_id]]
            parts.append(f"{vp.display_name}: {alt.name}")
    return ", ".join(parts)


def active_assignment(vt: VariationTree) -> Dict[str, int]:
    """Reachable assignment formed by each variation's active index."""
    assignment: Dict[str, int] = {}
    for vp in vt.nodes:
        if not _reachable(vp, assignment):
            continue
        if vp.alternatives[vp.active_index].disabled:
            raise ConfigError(
                f"active alternative of '{vp.vp_id}' is disabled")
        assignment[vp.vp_id] = vp.active_index
    return assignment


def active_universe(vt: VariationTree,
                    max_universes: int = MAX_UNIVERSES) -> Universe:
    target = active_assignment(vt)
    for universe in enumerate_universes(vt, max_universes):
        if universe.assignment == target:
            return universe
    raise ConfigError("active assignment is not an enumerable universe")
