"""Syntax tree node definitions for the VXL language.

All nodes carry a byte-offset span into the source they were parsed from.
Spans are excluded from equality so that structural comparison ignores
formatting; synthetic nodes built by editing operations may carry no span
until the tree is re-printed and re-parsed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(frozen=True)
class Span:
    start: int
    end: int


def _span_field():
    return field(default=None, compare=False, repr=False)


# --- expressions ---

@dataclass
class Num:
    value: float
    span: Optional[Span] = _span_field()


@dataclass
class Str:
    value: str
    span: Optional[Span] = _span_field()


@dataclass
class Bool:
    value: bool
    span: Optional[Span] = _span_field()


@dataclass
class Ident:
    name: str
    span: Optional[Span] = _span_field()


@dataclass
class ListLit:
    items: list
    span: Optional[Span] = _span_field()


@dataclass
class Unary:
    op: str
    operand: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class Arg:
    name: Optional[str]  # named argument `name: expr`, else positional
    expr: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class Call:
    callee: str
    args: list
    span: Optional[Span] = _span_field()


@dataclass
class Index:
    obj: "Expr"
    index: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class Cost:
    block: "Block"
    span: Optional[Span] = _span_field()


@dataclass
class Alt:
    name: str
    disabled: bool
    block: "Block"
    span: Optional[Span] = _span_field()


@dataclass
class Variation:
    vid: str
    active_index: int
    name: str
    alts: list  # list[Alt], length >= 2
    span: Optional[Span] = _span_field()


@dataclass
class Probe:
    pid: str
    operand: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class Replace:
    rid: str
    original: "Block"
    replacement: "Block"
    span: Optional[Span] = _span_field()


# --- statements and items ---

@dataclass
class Block:
    stmts: list
    tail: Optional["Expr"]  # block value when present
    span: Optional[Span] = _span_field()


@dataclass
class Let:
    name: str
    expr: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class Assign:
    name: str
    expr: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class Return:
    expr: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class If:
    cond: "Expr"
    then: Block
    orelse: Optional[Block]
    span: Optional[Span] = _span_field()


@dataclass
class While:
    cond: "Expr"
    body: Block
    span: Optional[Span] = _span_field()


@dataclass
class ExprStmt:
    expr: "Expr"
    span: Optional[Span] = _span_field()


@dataclass
class FnDef:
    name: str
    params: list
    body: Block
    span: Optional[Span] = _span_field()


@dataclass
class ExampleDef:
    name: str
    body: Block
    span: Optional[Span] = _span_field()


@dataclass
class Program:
    items: list
    span: Optional[Span] = _span_field()


Expr = Union[Num, Str, Bool, Ident, ListLit, Unary, Binary, Call, Index,
             Cost, Variation, Probe, Replace]

Stmt = Union[Let, Assign, Return, If, While, ExprStmt]

MARKER_KINDS = (Variation, Probe, Replace)


def children(node):
    """Yield the direct child nodes of a node, in document order."""
    if isinstance(node, Program):
        yield from node.items
    elif isinstance(node, (FnDef, ExampleDef)):
        yield node.body
    elif isinstance(node, Block):
        yield from node.stmts
        if node.tail is not None:
            yield node.tail
    elif isinstance(node, (Let, Assign, Return, ExprStmt)):
        yield node.expr
    elif isinstance(node, If):
        yield node.cond
        yield node.then
        if node.orelse is not None:
            yield node.orelse
    elif isinstance(node, While):
        yield node.cond
        yield node.body
    elif isinstance(node, ListLit):
        yield from node.items
    elif isinstance(node, Unary):
        yield node.operand
    elif isinstance(node, Binary):
        yield node.left
        yield node.right
    elif isinstance(node, Call):
        yield from node.args
    elif isinstance(node, Arg):
        yield node.expr
    elif isinstance(node, Index):
        yield node.obj
        yield node.index
    elif isinstance(node, Cost):
        yield node.block
    elif isinstance(node, Variation):
        yield from node.alts
    elif isinstance(node, Alt):
        yield node.block
    elif isinstance(node, Probe):
        yield node.operand
    elif isinstance(node, Replace):
        yield node.original
        yield node.replacement
    # literals and identifiers have no children


def walk(node):
    """Yield node and every descendant in document order."""
    yield node
    for child in children(node):
        yield from walk(child)


def marker_ids(tree) -> set:
    ids = set()
    for node in walk(tree):
        if isinstance(node, Variation):
            ids.add(node.vid)
        elif isinstance(node, Probe):
            ids.add(node.pid)
        elif isinstance(node, Replace):
            ids.add(node.rid)
    return ids


def is_expr(node) -> bool:
    return isinstance(node, (Num, Str, Bool, Ident, ListLit, Unary, Binary,
                             Call, Index, Cost, Variation, Probe, Replace))
