"""Recursive-descent parser for VXL.

Produces a tree of nodes from `nodes.py`, with byte spans. Marker ids are
checked for uniqueness at parse time; variation/replacement blocks must end
in an expression so they always have a value.
"""

from __future__ import annotations

from .errors import ParseError
from .lexer import Token, tokenize
from . import nodes as N

BINARY_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "%": 6,
}

STMT_STARTERS = {"let", "return", "if", "while"}


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.seen_marker_ids = {}

    def peek(self, offset=0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind) -> bool:
        return self.peek().kind == kind

    def expect(self, kind) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {self._describe(tok)}", tok.line,
                             tok.col, expected=[kind])
        return self.next()

    @staticmethod
    def _describe(tok: Token) -> str:
        if tok.kind == "eof":
            return "end of input"
        return f"'{tok.text}'"

    def error(self, msg, tok=None, expected=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col, expected=expected)

    def register_marker_id(self, mid: str, tok: Token):
        if mid in self.seen_marker_ids:
            self.error(f"duplicate marker id '{mid}'", tok)
        self.seen_marker_ids[mid] = tok

    # --- program structure ---

    def parse_program(self) -> N.Program:
        items = []
        start = self.peek().start
        while not self.at("eof"):
            items.append(self.parse_item())
        end = self.peek().end
        return N.Program(items, span=N.Span(start, end))

    def parse_item(self):
        if self.at("fn"):
            return self.parse_fn()
        if self.at("example"):
            return self.parse_example()
        return self.parse_stmt()

    def parse_fn(self) -> N.FnDef:
        start = self.expect("fn").start
        name = self.expect("ident").text
        self.expect("(")
        params = []
        if not self.at(")"):
            params.append(self.expect("ident").text)
            while self.at(","):
                self.next()
                params.append(self.expect("ident").text)
        self.expect(")")
        body = self.parse_block()
        return N.FnDef(name, params, body, span=N.Span(start, body.span.end))

    def parse_example(self) -> N.ExampleDef:
        start = self.expect("example").start
        name = self.expect("string").value
        body = self.parse_block()
        return N.ExampleDef(name, body, span=N.Span(start, body.span.end))

    # --- statements ---

    def parse_stmt(self):
        tok = self.peek()
        if tok.kind == "let":
            self.next()
            name = self.expect("ident").text
            self.expect("=")
            expr = self.parse_expr()
            end = self.expect(";").end
            return N.Let(name, expr, span=N.Span(tok.start, end))
        if tok.kind == "return":
            self.next()
            expr = self.parse_expr()
            end = self.expect(";").end
            return N.Return(expr, span=N.Span(tok.start, end))
        if tok.kind == "if":
            self.next()
            cond = self.parse_expr()
            then = self.parse_block()
            orelse = None
            end = then.span.end
            if self.at("else"):
                self.next()
                orelse = self.parse_block()
                end = orelse.span.end
            return N.If(cond, then, orelse, span=N.Span(tok.start, end))
        if tok.kind == "while":
            self.next()
            cond = self.parse_expr()
            body = self.parse_block()
            return N.While(cond, body, span=N.Span(tok.start, body.span.end))
        if tok.kind == "ident" and self.peek(1).kind == "=":
            name = self.next().text
            self.next()  # '='
            expr = self.parse_expr()
            end = self.expect(";").end
            return N.Assign(name, expr, span=N.Span(tok.start, end))
        expr = self.parse_expr()
        end = self.expect(";").end
        return N.ExprStmt(expr, span=N.Span(tok.start, end))

    def parse_block(self, require_value=False) -> N.Block:
        open_tok = self.expect("{")
        stmts = []
        tail = None
        while not self.at("}"):
            tok = self.peek()
            if tok.kind == "eof":
                self.error("unterminated block", tok, expected=["}"])
            if tok.kind in STMT_STARTERS or (
                    tok.kind == "ident" and self.peek(1).kind == "="):
                stmts.append(self.parse_stmt())
                continue
            expr = self.parse_expr()
            if self.at(";"):
                end = self.next().end
                stmts.append(N.ExprStmt(expr, span=N.Span(
                    expr.span.start if expr.span else tok.start, end)))
                continue
            if self.at("}"):
                tail = expr
                break
            self.error(f"unexpected {self._describe(self.peek())}",
                       expected=[";", "}"])
        close = self.expect("}")
        if require_value and tail is None:
            self.error("block must end in an expression", close)
        return N.Block(stmts, tail, span=N.Span(open_tok.start, close.end))

    # --- expressions ---

    def parse_expr(self):
        return self.parse_binary(1)

    def parse_binary(self, min_prec):
        left = self.parse_unary()
        while True:
            op = self.peek().kind
            prec = BINARY_PRECEDENCE.get(op)
            if prec is None or prec < min_prec:
                return left
            self.next()
            right = self.parse_binary(prec + 1)
            left = N.Binary(op, left, right,
                            span=N.Span(left.span.start, right.span.end))

    def parse_unary(self):
        tok = self.peek()
        if tok.kind in ("!", "-"):
            self.next()
            operand = self.parse_unary()
            return N.Unary(tok.kind, operand,
                           span=N.Span(tok.start, operand.span.end))
        return self.parse_postfix()

    def parse_postfix(self):
        expr = self.parse_primary()
        while self.at("["):
            self.next()
            index = self.parse_expr()
            close = self.expect("]")
            expr = N.Index(expr, index, span=N.Span(expr.span.start, close.end))
        return expr

    def parse_primary(self):
        tok = self.peek()
        if tok.kind == "number":
            self.next()
            return N.Num(tok.value, span=N.Span(tok.start, tok.end))
        if tok.kind == "string":
            self.next()
            return N.Str(tok.value, span=N.Span(tok.start, tok.end))
        if tok.kind in ("true", "false"):
            self.next()
            return N.Bool(tok.kind == "true", span=N.Span(tok.start, tok.end))
        if tok.kind == "(":
            self.next()
            inner = self.parse_expr()
            close = self.expect(")")
            # parenthesized spans cover the parens so sibling spans stay disjoint
            inner.span = N.Span(tok.start, close.end)
            return inner
        if tok.kind == "[":
            self.next()
            items = []
            if not self.at("]"):
                items.append(self.parse_expr())
                while self.at(","):
                    self.next()
                    items.append(self.parse_expr())
            close = self.expect("]")
            return N.ListLit(items, span=N.Span(tok.start, close.end))
        if tok.kind == "cost":
            self.next()
            block = self.parse_block()
            return N.Cost(block, span=N.Span(tok.start, block.span.end))
        if tok.kind == "__variation":
            return self.parse_variation()
        if tok.kind == "__probe":
            return self.parse_probe()
        if tok.kind == "__replace":
            return self.parse_replace()
        if tok.kind == "ident":
            self.next()
            if self.at("("):
                return self.parse_call(tok)
            return N.Ident(tok.text, span=N.Span(tok.start, tok.end))
        self.error(f"unexpected {self._describe(tok)}", tok,
                   expected=["expression"])

    def parse_call(self, name_tok: Token) -> N.Call:
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_arg())
            while self.at(","):
                self.next()
                args.append(self.parse_arg())
        close = self.expect(")")
        return N.Call(name_tok.text, args,
                      span=N.Span(name_tok.start, close.end))

    def parse_arg(self) -> N.Arg:
        tok = self.peek()
        if tok.kind == "ident" and self.peek(1).kind == ":":
            self.next()
            self.next()
            expr = self.parse_expr()
            return N.Arg(tok.text, expr, span=N.Span(tok.start, expr.span.end))
        expr = self.parse_expr()
        return N.Arg(None, expr, span=expr.span)

    # --- markers ---

    def parse_variation(self) -> N.Variation:
        start_tok = self.expect("__variation")
        self.expect("(")
        id_tok = self.expect("string")
        self.register_marker_id(id_tok.value, id_tok)
        self.expect(",")
        idx_tok = self.expect("number")
        if idx_tok.value != int(idx_tok.value) or idx_tok.value < 0:
            self.error("active index must be a nonnegative integer", idx_tok)
        active_index = int(idx_tok.value)
        self.expect(",")
        name = self.expect("string").value
        alts = []
        while self.at(","):
            self.next()
            alts.append(self.parse_alt())
        close = self.expect(")")
        if len(alts) < 2:
            self.error("a variation needs at least two alternatives", close)
        if active_index >= len(alts):
            self.error(
                f"active index {active_index} out of range for "
                f"{len(alts)} alternatives", idx_tok)
        return N.Variation(id_tok.value, active_index, name, alts,
                           span=N.Span(start_tok.start, close.end))

    def parse_alt(self) -> N.Alt:
        start_tok = self.expect("__alt")
        self.expect("(")
        name = self.expect("string").value
        self.expect(",")
        flag_tok = self.peek()
        if flag_tok.kind not in ("true", "false"):
            self.error("expected 'true' or 'false' for the disabled flag",
                       flag_tok, expected=["true", "false"])
        self.next()
        self.expect(",")
        block = self.parse_block(require_value=True)
        close = self.expect(")")
        return N.Alt(name, flag_tok.kind == "true", block,
                     span=N.Span(start_tok.start, close.end))

    def parse_probe(self) -> N.Probe:
        start_tok = self.expect("__probe")
        self.expect("(")
        id_tok = self.expect("string")
        self.register_marker_id(id_tok.value, id_tok)
        self.expect(",")
        operand = self.parse_expr()
        close = self.expect(")")
        return N.Probe(id_tok.value, operand,
                       span=N.Span(start_tok.start, close.end))

    def parse_replace(self) -> N.Replace:
        start_tok = self.expect("__replace")
        self.expect("(")
        id_tok = self.expect("string")
        self.register_marker_id(id_tok.value, id_tok)
        self.expect(",")
        original = self.parse_block(require_value=True)
        self.expect(",")
        replacement = self.parse_block(require_value=True)
        close = self.expect(")")
        return N.Replace(id_tok.value, original, replacement,
                         span=N.Span(start_tok.start, close.end))


def parse(source: str) -> N.Program:
    parser = _Parser(tokenize(source))
    return parser.parse_program()


def parse_expression(source: str):
    """Parse a standalone expression (used for alternative bodies etc.)."""
    parser = _Parser(tokenize(source))
    expr = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        parser.error(f"trailing input after expression: '{tok.text}'", tok)
    return expr
