"""Editing operations on marker nodes.

Every operation is tree-in, tree-out; the result is re-printed and
re-parsed so spans always describe the canonical source of the returned
tree. Callers that keep source text in sync should re-print after each
edit.
"""

from __future__ import annotations

import copy
import random
import string
from typing import Optional, Tuple

from . import nodes as N
from .errors import GuardError, MarkerError, UnknownIdError
from .naming import derive_alternative_name
from .parser import parse, parse_expression
from .printer import print_program


class CountingIdGenerator:
    """Deterministic ids: v1, v2, ... p1, ... r1, ... per marker kind."""

    def __init__(self):
        self.counts = {"v": 0, "p": 0, "r": 0}

    def _next(self, prefix, existing):
        while True:
            self.counts[prefix] += 1
            candidate = f"{prefix}{self.counts[prefix]}"
            if candidate not in existing:
                return candidate

    def variation_id(self, existing):
        return self._next("v", existing)

    def probe_id(self, existing):
        return self._next("p", existing)

    def replacement_id(self, existing):
        return self._next("r", existing)


class RandomIdGenerator:
    """9-character base-36 ids for interactive sessions."""

    ALPHABET = string.digits + string.ascii_lowercase

    def __init__(self, rng: Optional[random.Random] = None):
        self.rng = rng or random.Random()

    def _next(self, existing):
        while True:
            candidate = "".join(self.rng.choice(self.ALPHABET)
                                for _ in range(9))
            if candidate not in existing:
                return candidate

    variation_id = _next
    probe_id = _next
    replacement_id = _next


def normalize(tree: N.Program) -> N.Program:
    """Re-print and re-parse so spans match the canonical text."""
    return parse(print_program(tree))


def _check_id(mid: str):
    if not (1 <= len(mid) <= 12) or any(
            c not in "abcdefghijklmnopqrstuvwxyz0123456789" for c in mid):
        raise MarkerError(
            f"marker id {mid!r} must be 1-12 characters from [a-z0-9]")


def _find_expr_at_span(tree, span: N.Span):
    """Innermost expression whose span matches exactly."""
    matches = []

    def visit(node):
        for child in N.children(node):
            visit(child)
        if N.is_expr(node) and node.span is not None \
                and node.span.start == span.start \
                and node.span.end == span.end:
            matches.append(node)

    visit(tree)
    if not matches:
        raise MarkerError(
            f"span [{span.start}, {span.end}) does not cover exactly one "
            "expression")
    return matches[0]


def _replace_node(tree, target, replacement):
    """Structurally replace `target` (by identity) inside a deep-copied tree.

    Returns the new tree; the copy shares no nodes with the original."""
    replaced = [False]

    def rebuild(node):
        if node is target:
            replaced[0] = True
            return replacement
        clone = copy.copy(node)
        for name in ("items", "stmts", "args", "alts"):
            if hasattr(clone, name):
                setattr(clone, name,
                        [rebuild(c) for c in getattr(clone, name)])
        for name in ("body", "expr", "cond", "then", "orelse", "tail",
                     "operand", "left", "right", "obj", "index", "block",
                     "original", "replacement"):
            if hasattr(clone, name):
                child = getattr(clone, name)
                if child is not None and not isinstance(child, (str, int,
                                                                float, bool)):
                    setattr(clone, name, rebuild(child))
        return clone

    new_tree = rebuild(tree)
    if not replaced[0]:
        raise MarkerError("target node not found in tree")
    return new_tree


def _find_variation(tree, vp_id: str) -> N.Variation:
    for node in N.walk(tree):
        if isinstance(node, N.Variation) and node.vid == vp_id:
            return node
    raise UnknownIdError(f"unknown variation '{vp_id}'")


def _expr_block(expr) -> N.Block:
    return N.Block([], copy.deepcopy(expr))


def wrap_in_variation(tree: N.Program, target: N.Span,
                      idgen) -> Tuple[N.Program, str]:
    """Wrap the expression at `target` in a two-alternative variation whose
    alternatives both copy the original expression."""
    expr = _find_expr_at_span(tree, target)
    existing = N.marker_ids(tree)
    vid = idgen.variation_id(existing)
    _check_id(vid)
    if vid in existing:
        raise MarkerError(f"id collision: '{vid}' already used")
    alt_name = derive_alternative_name(expr)
    variation = N.Variation(vid, 0, "", [
        N.Alt(alt_name, False, _expr_block(expr)),
        N.Alt(alt_name, False, _expr_block(expr)),
    ])
    return normalize(_replace_node(tree, expr, variation)), vid


def wrap_in_probe(tree: N.Program, target: N.Span,
                  idgen) -> Tuple[N.Program, str]:
    expr = _find_expr_at_span(tree, target)
    existing = N.marker_ids(tree)
    pid = idgen.probe_id(existing)
    _check_id(pid)
    if pid in existing:
        raise MarkerError(f"id collision: '{pid}' already used")
    probe = N.Probe(pid, copy.deepcopy(expr))
    return normalize(_replace_node(tree, expr, probe)), pid


def wrap_in_replacement(tree: N.Program, target: N.Span,
                        replacement_body: str,
                        idgen) -> Tuple[N.Program, str]:
    expr = _find_expr_at_span(tree, target)
    try:
        body = parse_expression(replacement_body)
    except Exception as exc:
        raise MarkerError(f"replacement body does not parse: {exc}") from exc
    existing = N.marker_ids(tree)
    rid = idgen.replacement_id(existing)
    _check_id(rid)
    if rid in existing:
        raise MarkerError(f"id collision: '{rid}' already used")
    node = N.Replace(rid, _expr_block(expr), N.Block([], body))
    return normalize(_replace_node(tree, expr, node)), rid


def add_alternative(tree: N.Program, vp_id: str,
                    body: Optional[str] = None) -> N.Program:
    vp = _find_variation(tree, vp_id)
    if body is not None:
        try:
            expr = parse_expression(body)
        except Exception as exc:
            raise MarkerError(
                f"alternative body does not parse: {exc}") from exc
        block = N.Block([], expr)
    else:
        block = copy.deepcopy(vp.alts[vp.active_index].block)
    new_alt = N.Alt(derive_alternative_name(block), False, block)
    new_vp = copy.copy(vp)
    new_vp.alts = list(vp.alts) + [new_alt]
    return normalize(_replace_node(tree, vp, new_vp))


def set_active(tree: N.Program, vp_id: str, index: int) -> N.Program:
    vp = _find_variation(tree, vp_id)
    if index < 0 or index >= len(vp.alts):
        raise MarkerError(
            f"alternative index {index} out of range for '{vp_id}'")
    if vp.alts[index].disabled:
        raise MarkerError(
            f"alternative {index} of '{vp_id}' is disabled")
    new_vp = copy.copy(vp)
    new_vp.active_index = index
    return normalize(_replace_node(tree, vp, new_vp))


def set_disabled(tree: N.Program, vp_id: str, index: int,
                 disabled: bool) -> N.Program:
    vp = _find_variation(tree, vp_id)
    if index < 0 or index >= len(vp.alts):
        raise MarkerError(
            f"alternative index {index} out of range for '{vp_id}'")
    if disabled:
        others_enabled = any(not alt.disabled
                             for i, alt in enumerate(vp.alts) if i != index)
        if not others_enabled:
            raise GuardError(
                f"cannot disable the last enabled alternative of '{vp_id}'")
    new_vp = copy.copy(vp)
    new_vp.alts = [copy.copy(a) for a in vp.alts]
    new_vp.alts[index].disabled = disabled
    if disabled and new_vp.active_index == index:
        new_vp.active_index = next(
            i for i, a in enumerate(new_vp.alts) if not a.disabled)
    return normalize(_replace_node(tree, vp, new_vp))


def rename(tree: N.Program, vp_id: str, alt_index: Optional[int],
           name: str) -> N.Program:
    vp = _find_variation(tree, vp_id)
    new_vp = copy.copy(vp)
    if alt_index is None:
        new_vp.name = name
    else:
        if alt_index < 0 or alt_index >= len(vp.alts):
            raise MarkerError(
                f"alternative index {alt_index} out of range for '{vp_id}'")
        new_vp.alts = [copy.copy(a) for a in vp.alts]
        new_vp.alts[alt_index].name = name
    return normalize(_replace_node(tree, vp, new_vp))


def set_alternative_body(tree: N.Program, vp_id: str, index: int,
                         body: str) -> N.Program:
    """Replace one alternative's block; auto-derived names follow the new
    body, manual names stay."""
    vp = _find_variation(tree, vp_id)
    if index < 0 or index >= len(vp.alts):
        raise MarkerError(
            f"alternative index {index} out of range for '{vp_id}'")
    try:
        expr = parse_expression(body)
    except Exception as exc:
        raise MarkerError(f"alternative body does not parse: {exc}") from exc
    old = vp.alts[index]
    was_auto = old.name == derive_alternative_name(old.block)
    new_vp = copy.copy(vp)
    new_vp.alts = [copy.copy(a) for a in vp.alts]
    new_block = N.Block([], expr)
    new_vp.alts[index].block = new_block
    if was_auto:
        new_vp.alts[index].name = derive_alternative_name(new_block)
    return normalize(_replace_node(tree, vp, new_vp))


def apply_universe(tree: N.Program, assignment) -> N.Program:
    """Set every variation in the assignment active; equivalent to clicking
    Apply on a grid column."""
    for vp_id, index in assignment.items():
        tree = set_active(tree, vp_id, index)
    return tree


def _inline_block(block: N.Block, what: str):
    if block.stmts:
        raise MarkerError(
            f"cannot inline {what}: its block contains statements")
    if block.tail is None:
        raise MarkerError(f"cannot inline {what}: its block has no value")
    return block.tail


def cleanup(tree: N.Program) -> N.Program:
    """Resolve all markers: variations become their active alternative's
    value expression, probes their operand, replacements their original."""

    def resolve(node):
        clone = copy.copy(node)
        for name in ("items", "stmts", "args", "alts"):
            if hasattr(clone, name):
                setattr(clone, name,
                        [resolve(c) for c in getattr(clone, name)])
        for name in ("body", "expr", "cond", "then", "orelse", "tail",
                     "operand", "left", "right", "obj", "index", "block",
                     "original", "replacement"):
            if hasattr(clone, name):
                child = getattr(clone, name)
                if child is not None and not isinstance(child, (str, int,
                                                                float, bool)):
                    setattr(clone, name, resolve(child))
        if isinstance(clone, N.Variation):
            alt = clone.alts[clone.active_index]
            if alt.disabled:
                raise MarkerError(
                    f"active alternative of '{clone.vid}' is disabled")
            return _inline_block(alt.block, f"variation '{clone.vid}'")
        if isinstance(clone, N.Probe):
            return clone.operand
        if isinstance(clone, N.Replace):
            return _inline_block(clone.original,
                                 f"replacement '{clone.rid}'")
        return clone

    return normalize(resolve(tree))
