"""Canonical printer for VXL trees.

Two-space indentation, one statement per line, single spaces around binary
operators. Printing then re-parsing yields a structurally identical tree,
which is what makes source rewriting a safe persistence mechanism.
"""

from __future__ import annotations

from . import nodes as N
from .parser import BINARY_PRECEDENCE

_UNARY_PREC = 7
_POSTFIX_PREC = 8
_PRIMARY_PREC = 9


def format_number(value: float) -> str:
    if value == int(value) and abs(value) < 2 ** 53:
        return str(int(value))
    return repr(value)


def format_string(value: str) -> str:
    out = ['"']
    for ch in value:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\r":
            out.append("\\r")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _prec(expr) -> int:
    if isinstance(expr, N.Binary):
        return BINARY_PRECEDENCE[expr.op]
    if isinstance(expr, N.Unary):
        return _UNARY_PREC
    if isinstance(expr, N.Index):
        return _POSTFIX_PREC
    return _PRIMARY_PREC


def print_expr(expr) -> str:
    if isinstance(expr, N.Num):
        return format_number(expr.value)
    if isinstance(expr, N.Str):
        return format_string(expr.value)
    if isinstance(expr, N.Bool):
        return "true" if expr.value else "false"
    if isinstance(expr, N.Ident):
        return expr.name
    if isinstance(expr, N.ListLit):
        return "[" + ", ".join(print_expr(e) for e in expr.items) + "]"
    if isinstance(expr, N.Unary):
        operand = print_expr(expr.operand)
        if _prec(expr.operand) < _UNARY_PREC:
            operand = f"({operand})"
        return expr.op + operand
    if isinstance(expr, N.Binary):
        prec = BINARY_PRECEDENCE[expr.op]
        left = print_expr(expr.left)
        if _prec(expr.left) < prec:
            left = f"({left})"
        right = print_expr(expr.right)
        if _prec(expr.right) <= prec:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    if isinstance(expr, N.Call):
        args = []
        for arg in expr.args:
            if arg.name is not None:
                args.append(f"{arg.name}: {print_expr(arg.expr)}")
            else:
                args.append(print_expr(arg.expr))
        return f"{expr.callee}({', '.join(args)})"
    if isinstance(expr, N.Index):
        obj = print_expr(expr.obj)
        if _prec(expr.obj) < _POSTFIX_PREC:
            obj = f"({obj})"
        return f"{obj}[{print_expr(expr.index)}]"
    if isinstance(expr, N.Cost):
        return f"cost {print_inline_block(expr.block)}"
    if isinstance(expr, N.Variation):
        parts = [format_string(expr.vid), str(expr.active_index),
                 format_string(expr.name)]
        for alt in expr.alts:
            parts.append(
                f"__alt({format_string(alt.name)}, "
                f"{'true' if alt.disabled else 'false'}, "
                f"{print_inline_block(alt.block)})")
        return f"__variation({', '.join(parts)})"
    if isinstance(expr, N.Probe):
        return f"__probe({format_string(expr.pid)}, {print_expr(expr.operand)})"
    if isinstance(expr, N.Replace):
        return (f"__replace({format_string(expr.rid)}, "
                f"{print_inline_block(expr.original)}, "
                f"{print_inline_block(expr.replacement)})")
    raise TypeError(f"not an expression: {expr!r}")


def print_inline_block(block: N.Block) -> str:
    parts = [_print_stmt_inline(s) for s in block.stmts]
    if block.tail is not None:
        parts.append(print_expr(block.tail))
    if not parts:
        return "{ }"
    return "{ " + " ".join(parts) + " }"


def _print_stmt_inline(stmt) -> str:
    if isinstance(stmt, N.Let):
        return f"let {stmt.name} = {print_expr(stmt.expr)};"
    if isinstance(stmt, N.Assign):
        return f"{stmt.name} = {print_expr(stmt.expr)};"
    if isinstance(stmt, N.Return):
        return f"return {print_expr(stmt.expr)};"
    if isinstance(stmt, N.ExprStmt):
        return f"{print_expr(stmt.expr)};"
    if isinstance(stmt, N.If):
        text = f"if {print_expr(stmt.cond)} {print_inline_block(stmt.then)}"
        if stmt.orelse is not None:
            text += f" else {print_inline_block(stmt.orelse)}"
        return text
    if isinstance(stmt, N.While):
        return f"while {print_expr(stmt.cond)} {print_inline_block(stmt.body)}"
    raise TypeError(f"not a statement: {stmt!r}")


def _print_block_lines(block: N.Block, indent: int, out: list):
    pad = "  " * indent
    for stmt in block.stmts:
        _print_stmt_lines(stmt, indent, out)
    if block.tail is not None:
        out.append(pad + print_expr(block.tail))


def _print_stmt_lines(stmt, indent: int, out: list):
    pad = "  " * indent
    if isinstance(stmt, N.If):
        out.append(pad + f"if {print_expr(stmt.cond)} {{")
        _print_block_lines(stmt.then, indent + 1, out)
        if stmt.orelse is not None:
            out.append(pad + "} else {")
            _print_block_lines(stmt.orelse, indent + 1, out)
        out.append(pad + "}")
    elif isinstance(stmt, N.While):
        out.append(pad + f"while {print_expr(stmt.cond)} {{")
        _print_block_lines(stmt.body, indent + 1, out)
        out.append(pad + "}")
    else:
        out.append(pad + _print_stmt_inline(stmt))


def print_program(tree: N.Program) -> str:
    out = []
    for item in tree.items:
        if isinstance(item, N.FnDef):
            out.append(f"fn {item.name}({', '.join(item.params)}) {{")
            _print_block_lines(item.body, 1, out)
            out.append("}")
        elif isinstance(item, N.ExampleDef):
            out.append(f"example {format_string(item.name)} {{")
            _print_block_lines(item.body, 1, out)
            out.append("}")
        else:
            _print_stmt_lines(item, 0, out)
    return "\n".join(out) + ("\n" if out else "")
