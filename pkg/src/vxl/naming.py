"""Automatic names for alternatives and variation points.

Literals name themselves; other expressions contribute a prefix of their
printed form. A variation point used as a named call argument takes the
argument's name; otherwise it falls back to its first alternative's name.
Manually assigned names (stored non-empty in the variation node) always win.
"""

from __future__ import annotations

from . import nodes as N
from .errors import MarkerError
from .printer import format_number, print_expr

NAME_PREFIX_LEN = 24


def derive_alternative_name(body) -> str:
    """body may be an expression or an expression-valued block."""
    expr = body.tail if isinstance(body, N.Block) else body
    if expr is None:
        raise MarkerError("alternative block has no value expression")
    if isinstance(expr, N.Num):
        return format_number(expr.value)
    if isinstance(expr, N.Bool):
        return "true" if expr.value else "false"
    if isinstance(expr, N.Str):
        return expr.value if expr.value else '""'
    printed = print_expr(expr)
    if len(printed) > NAME_PREFIX_LEN:
        return printed[:NAME_PREFIX_LEN] + "…"
    return printed


def alternative_display_name(alt: N.Alt) -> str:
    return alt.name if alt.name else derive_alternative_name(alt.block)


def _parent_map(tree):
    parents = {}
    for node in N.walk(tree):
        for child in N.children(node):
            parents[id(child)] = node
    return parents


def derive_variation_name(tree, vp_id: str) -> str:
    vp = None
    for node in N.walk(tree):
        if isinstance(node, N.Variation) and node.vid == vp_id:
            vp = node
            break
    if vp is None:
        raise MarkerError(f"unknown variation '{vp_id}'")
    parents = _parent_map(tree)
    # climb through probe/replacement wrappers only
    node = vp
    while True:
        parent = parents.get(id(node))
        if isinstance(parent, N.Probe) and parent.operand is node:
            node = parent
            continue
        if isinstance(parent, N.Block):
            grand = parents.get(id(parent))
            if isinstance(grand, N.Replace) and parent.tail is node:
                node = grand
                continue
        break
    parent = parents.get(id(node))
    if isinstance(parent, N.Arg) and parent.name is not None \
            and parent.expr is node:
        return parent.name
    if not vp.alts:
        raise MarkerError(f"variation '{vp_id}' has no alternatives")
    return alternative_display_name(vp.alts[0])


def variation_display_name(tree, vp: N.Variation) -> str:
    return vp.name if vp.name else derive_variation_name(tree, vp.vid)
