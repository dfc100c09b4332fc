"""Deterministic tree-walking interpreter for VXL.

`evaluate` runs one example under a variation resolver and a probe sink.
Runtime failures are reported inside the ExecutionResult, never raised to
the caller, so one broken universe cannot take down a batch run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from . import nodes as N
from .errors import RuntimeFault
from .values import UNIT, FnValue, format_value

PROBE_CAPTURE_CAP = 10_000
DEFAULT_STEP_LIMIT = 5_000_000


@dataclass
class ErrorInfo:
    message: str
    span: Optional[N.Span] = None

    def __str__(self):
        return self.message


@dataclass
class ExecutionResult:
    return_value: object = None
    step_count: int = 0
    error: Optional[ErrorInfo] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


class _Env:
    __slots__ = ("vars", "parent")

    def __init__(self, parent=None):
        self.vars = {}
        self.parent = parent

    def lookup(self, name, span):
        env = self
        while env is not None:
            if name in env.vars:
                return env.vars[name]
            env = env.parent
        raise RuntimeFault(f"unknown identifier '{name}'", span)

    def assign(self, name, value, span):
        env = self
        while env is not None:
            if name in env.vars:
                env.vars[name] = value
                return
            env = env.parent
        raise RuntimeFault(f"unknown identifier '{name}'", span)

    def define(self, name, value):
        self.vars[name] = value


def _type_name(value) -> str:
    if type(value) is bool:
        return "boolean"
    if isinstance(value, float):
        return "number"
    if isinstance(value, str):
        return "text"
    if isinstance(value, list):
        return "list"
    if isinstance(value, dict):
        return "record"
    if isinstance(value, FnValue):
        return "function"
    return "unit"


def _want_number(value, span):
    if type(value) is bool or not isinstance(value, float):
        raise RuntimeFault(f"expected a number, got {_type_name(value)}", span)
    return value


def _want_bool(value, span):
    if type(value) is not bool:
        raise RuntimeFault(f"expected a boolean, got {_type_name(value)}", span)
    return value


def _want_list(value, span):
    if not isinstance(value, list):
        raise RuntimeFault(f"expected a list, got {_type_name(value)}", span)
    return value


class _Interp:
    def __init__(self, tree: N.Program, resolver: Mapping[str, int],
                 sink: Optional[Callable], replacements_active: bool,
                 step_limit: int):
        self.tree = tree
        self.resolver = resolver or {}
        self.sink = sink
        self.replacements_active = replacements_active
        self.step_limit = step_limit
        self.steps = 0
        self.probe_counts = {}
        self.functions = {}
        for item in tree.items:
            if isinstance(item, N.FnDef):
                if item.name in self.functions:
                    raise RuntimeFault(
                        f"duplicate function '{item.name}'", item.span)
                self.functions[item.name] = item

    def run_example(self, entry_name: str) -> object:
        entries = [it for it in self.tree.items
                   if isinstance(it, N.ExampleDef) and it.name == entry_name]
        if not entries:
            raise RuntimeFault(f"no example named {entry_name!r}", None)
        if len(entries) > 1:
            raise RuntimeFault(
                f"multiple examples named {entry_name!r}", None)
        globals_env = _Env()
        for item in self.tree.items:
            if isinstance(item, (N.FnDef, N.ExampleDef)):
                continue
            self.exec_stmt(item, globals_env)
        try:
            return self.eval_block(entries[0].body, _Env(globals_env))
        except _ReturnSignal as sig:
            return sig.value

    # --- statements ---

    def exec_stmt(self, stmt, env: _Env):
        if isinstance(stmt, N.Let):
            env.define(stmt.name, self.eval_expr(stmt.expr, env))
        elif isinstance(stmt, N.Assign):
            env.assign(stmt.name, self.eval_expr(stmt.expr, env), stmt.span)
        elif isinstance(stmt, N.Return):
            raise _ReturnSignal(self.eval_expr(stmt.expr, env))
        elif isinstance(stmt, N.If):
            if _want_bool(self.eval_expr(stmt.cond, env), stmt.cond.span):
                self.eval_block(stmt.then, _Env(env))
            elif stmt.orelse is not None:
                self.eval_block(stmt.orelse, _Env(env))
        elif isinstance(stmt, N.While):
            while _want_bool(self.eval_expr(stmt.cond, env), stmt.cond.span):
                self.eval_block(stmt.body, _Env(env))
        elif isinstance(stmt, N.ExprStmt):
            self.eval_expr(stmt.expr, env)
        else:
            raise RuntimeFault(f"cannot execute {type(stmt).__name__}",
                               getattr(stmt, "span", None))

    def eval_block(self, block: N.Block, env: _Env) -> object:
        for stmt in block.stmts:
            self.exec_stmt(stmt, env)
        if block.tail is not None:
            return self.eval_expr(block.tail, env)
        return UNIT

    # --- expressions ---

    def eval_expr(self, expr, env: _Env) -> object:
        self.steps += 1
        if self.steps > self.step_limit:
            raise RuntimeFault("step limit exceeded", expr.span)
        if isinstance(expr, N.Num):
            return expr.value
        if isinstance(expr, N.Str):
            return expr.value
        if isinstance(expr, N.Bool):
            return expr.value
        if isinstance(expr, N.Ident):
            name = expr.name
            env_val = self._try_lookup(name, env)
            if env_val is not _MISSING:
                return env_val
            if name in self.functions:
                return FnValue(name)
            raise RuntimeFault(f"unknown identifier '{name}'", expr.span)
        if isinstance(expr, N.ListLit):
            return [self.eval_expr(e, env) for e in expr.items]
        if isinstance(expr, N.Unary):
            return self.eval_unary(expr, env)
        if isinstance(expr, N.Binary):
            return self.eval_binary(expr, env)
        if isinstance(expr, N.Call):
            return self.eval_call(expr, env)
        if isinstance(expr, N.Index):
            obj = _want_list(self.eval_expr(expr.obj, env), expr.obj.span)
            idx = _want_number(self.eval_expr(expr.index, env),
                               expr.index.span)
            if idx != int(idx):
                raise RuntimeFault("list index must be an integer",
                                   expr.index.span)
            i = int(idx)
            if i < 0 or i >= len(obj):
                raise RuntimeFault(
                    f"index {i} out of range for list of length {len(obj)}",
                    expr.span)
            return obj[i]
        if isinstance(expr, N.Cost):
            before = self.steps
            self.eval_block(expr.block, _Env(env))
            return float(self.steps - before)
        if isinstance(expr, N.Variation):
            index = self.resolver.get(expr.vid, expr.active_index)
            if index < 0 or index >= len(expr.alts):
                raise RuntimeFault(
                    f"alternative index {index} out of range for "
                    f"variation '{expr.vid}'", expr.span)
            return self.eval_block(expr.alts[index].block, _Env(env))
        if isinstance(expr, N.Probe):
            value = self.eval_expr(expr.operand, env)
            count = self.probe_counts.get(expr.pid, 0) + 1
            if count > PROBE_CAPTURE_CAP:
                raise RuntimeFault(
                    f"probe '{expr.pid}' captured more than "
                    f"{PROBE_CAPTURE_CAP} values", expr.span)
            self.probe_counts[expr.pid] = count
            if self.sink is not None:
                self.sink(expr.pid, value)
            return value
        if isinstance(expr, N.Replace):
            block = (expr.replacement if self.replacements_active
                     else expr.original)
            return self.eval_block(block, _Env(env))
        raise RuntimeFault(f"cannot evaluate {type(expr).__name__}",
                           getattr(expr, "span", None))

    @staticmethod
    def _try_lookup(name, env: _Env):
        while env is not None:
            if name in env.vars:
                return env.vars[name]
            env = env.parent
        return _MISSING

    def eval_unary(self, expr: N.Unary, env: _Env):
        value = self.eval_expr(expr.operand, env)
        if expr.op == "-":
            return -_want_number(value, expr.operand.span)
        return not _want_bool(value, expr.operand.span)

    def eval_binary(self, expr: N.Binary, env: _Env):
        op = expr.op
        if op == "&&":
            if not _want_bool(self.eval_expr(expr.left, env), expr.left.span):
                return False
            return _want_bool(self.eval_expr(expr.right, env), expr.right.span)
        if op == "||":
            if _want_bool(self.eval_expr(expr.left, env), expr.left.span):
                return True
            return _want_bool(self.eval_expr(expr.right, env), expr.right.span)
        left = self.eval_expr(expr.left, env)
        right = self.eval_expr(expr.right, env)
        if op == "==":
            from .values import value_equal
            return value_equal(left, right)
        if op == "!=":
            from .values import value_equal
            return not value_equal(left, right)
        if op == "+":
            if isinstance(left, str) and isinstance(right, str):
                return left + right
            if isinstance(left, list) and isinstance(right, list):
                return left + right
            return (_want_number(left, expr.left.span)
                    + _want_number(right, expr.right.span))
        if op in ("<", "<=", ">", ">="):
            if isinstance(left, str) and isinstance(right, str):
                pass
            else:
                left = _want_number(left, expr.left.span)
                right = _want_number(right, expr.right.span)
            if op == "<":
                return left < right
            if op == "<=":
                return left <= right
            if op == ">":
                return left > right
            return left >= right
        left = _want_number(left, expr.left.span)
        right = _want_number(right, expr.right.span)
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op == "/":
            if right == 0:
                raise RuntimeFault("division by zero", expr.span)
            return left / right
        if op == "%":
            if right == 0:
                raise RuntimeFault("division by zero", expr.span)
            return math.fmod(left, right)
        raise RuntimeFault(f"unknown operator '{op}'", expr.span)

    def eval_call(self, expr: N.Call, env: _Env):
        name = expr.callee
        fn = self.functions.get(name)
        if fn is not None:
            return self.call_function(fn, expr, env)
        builtin = _BUILTINS.get(name)
        if builtin is not None:
            arity, impl = builtin
            for arg in expr.args:
                if arg.name is not None:
                    raise RuntimeFault(
                        f"built-in '{name}' takes no named arguments",
                        arg.span)
            values = [self.eval_expr(arg.expr, env) for arg in expr.args]
            if len(values) != arity:
                raise RuntimeFault(
                    f"'{name}' expects {arity} argument(s), got {len(values)}",
                    expr.span)
            return impl(self, values, expr)
        # calling a function held in a variable
        value = self._try_lookup(name, env)
        if isinstance(value, FnValue):
            target = self.functions.get(value.name)
            if target is not None:
                return self.call_function(target, expr, env)
        raise RuntimeFault(f"unknown function '{name}'", expr.span)

    def call_function(self, fn: N.FnDef, expr: N.Call, env: _Env):
        positional = []
        named = {}
        for arg in expr.args:
            value = self.eval_expr(arg.expr, env)
            if arg.name is None:
                if named:
                    raise RuntimeFault(
                        "positional argument after named argument", arg.span)
                positional.append(value)
            else:
                if arg.name not in fn.params:
                    raise RuntimeFault(
                        f"'{fn.name}' has no parameter '{arg.name}'",
                        arg.span)
                if arg.name in named:
                    raise RuntimeFault(
                        f"duplicate named argument '{arg.name}'", arg.span)
                named[arg.name] = value
        if len(positional) + len(named) != len(fn.params):
            raise RuntimeFault(
                f"'{fn.name}' expects {len(fn.params)} argument(s), got "
                f"{len(positional) + len(named)}", expr.span)
        frame = _Env()
        for i, param in enumerate(fn.params):
            if i < len(positional):
                if param in named:
                    raise RuntimeFault(
                        f"parameter '{param}' given twice", expr.span)
                frame.define(param, positional[i])
            elif param in named:
                frame.define(param, named[param])
            else:
                raise RuntimeFault(
                    f"missing argument for parameter '{param}'", expr.span)
        try:
            return self.eval_block(fn.body, frame)
        except _ReturnSignal as sig:
            return sig.value


_MISSING = object()


def _builtin_len(interp, values, expr):
    v = values[0]
    if isinstance(v, (list, str)):
        return float(len(v))
    raise RuntimeFault(f"len() expects a list or text, got {_type_name(v)}",
                       expr.span)


def _builtin_push(interp, values, expr):
    lst = _want_list(values[0], expr.span)
    return lst + [values[1]]


def _builtin_range(interp, values, expr):
    a = _want_number(values[0], expr.span)
    b = _want_number(values[1], expr.span)
    if a != int(a) or b != int(b):
        raise RuntimeFault("range() expects integer bounds", expr.span)
    return [float(i) for i in range(int(a), int(b))]


def _builtin_str(interp, values, expr):
    v = values[0]
    if isinstance(v, str):
        return v
    return format_value(v)


def _builtin_abs(interp, values, expr):
    return abs(_want_number(values[0], expr.span))


def _builtin_min(interp, values, expr):
    return min(_want_number(values[0], expr.span),
               _want_number(values[1], expr.span))


def _builtin_max(interp, values, expr):
    return max(_want_number(values[0], expr.span),
               _want_number(values[1], expr.span))


def _builtin_floor(interp, values, expr):
    return float(math.floor(_want_number(values[0], expr.span)))


_BUILTINS = {
    "len": (1, _builtin_len),
    "push": (2, _builtin_push),
    "range": (2, _builtin_range),
    "str": (1, _builtin_str),
    "abs": (1, _builtin_abs),
    "min": (2, _builtin_min),
    "max": (2, _builtin_max),
    "floor": (1, _builtin_floor),
}


def evaluate(tree: N.Program, entry_name: str,
             resolver: Optional[Mapping[str, int]] = None,
             sink: Optional[Callable] = None,
             replacements_active: bool = False,
             step_limit: int = DEFAULT_STEP_LIMIT) -> ExecutionResult:
    """Run one example to completion.

    The resolver maps variation ids to alternative indices, overriding each
    variation's stored active index. The sink receives (probe_id, value)
    for every probe hit, in execution order.
    """
    try:
        interp = _Interp(tree, resolver, sink, replacements_active, step_limit)
    except RuntimeFault as fault:
        return ExecutionResult(error=ErrorInfo(fault.message, fault.span))
    try:
        value = interp.run_example(entry_name)
        return ExecutionResult(return_value=value, step_count=interp.steps)
    except RuntimeFault as fault:
        return ExecutionResult(step_count=interp.steps,
                               error=ErrorInfo(fault.message, fault.span))
