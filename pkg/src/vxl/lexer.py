"""Tokenizer for VXL source text.

Offsets in tokens are byte offsets into the UTF-8 encoding of the source,
so spans line up with what editor frontends send over the wire.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

KEYWORDS = {
    "fn", "example", "let", "return", "if", "else", "while",
    "true", "false", "cost",
    "__variation", "__probe", "__replace", "__alt",
}

TWO_CHAR = {"==", "!=", "<=", ">=", "&&", "||"}
ONE_CHAR = set("+-*/%<>!=(){}[],;:")


@dataclass
class Token:
    kind: str      # "number" | "string" | "ident" | keyword | operator | "eof"
    text: str
    start: int     # byte offset
    end: int       # byte offset, half-open
    line: int      # 1-based
    col: int       # 1-based, in characters
    value: object = None


def tokenize(source: str) -> list:
    tokens = []
    i = 0
    n = len(source)
    line = 1
    col = 1
    # byte offset of each character index, plus the end offset
    byte_of = [0] * (n + 1)
    acc = 0
    for k, ch in enumerate(source):
        byte_of[k] = acc
        acc += len(ch.encode("utf-8"))
    byte_of[n] = acc

    def err(msg, at_i, at_line, at_col):
        raise ParseError(msg, at_line, at_col)

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        start_i, start_line, start_col = i, line, col
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            text = source[i:j]
            tokens.append(Token("number", text, byte_of[i], byte_of[j],
                                line, col, float(text)))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            out = []
            while True:
                if j >= n:
                    err("unterminated string literal", i, start_line, start_col)
                c = source[j]
                if c == '"':
                    j += 1
                    break
                if c == "\n":
                    err("unterminated string literal", i, start_line, start_col)
                if c == "\\":
                    if j + 1 >= n:
                        err("unterminated string escape", j, start_line, start_col)
                    esc = source[j + 1]
                    mapped = {"n": "\n", "t": "\t", "r": "\r",
                              '"': '"', "\\": "\\"}.get(esc)
                    if mapped is None:
                        err(f"unknown string escape '\\{esc}'", j, line,
                            col + (j - i))
                    out.append(mapped)
                    j += 2
                else:
                    out.append(c)
                    j += 1
            tokens.append(Token("string", source[i:j], byte_of[i], byte_of[j],
                                line, col, "".join(out)))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            kind = text if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, byte_of[i], byte_of[j], line, col))
            col += j - i
            i = j
            continue
        two = source[i:i + 2]
        if two in TWO_CHAR:
            tokens.append(Token(two, two, byte_of[i], byte_of[i + 2], line, col))
            i += 2
            col += 2
            continue
        if ch in ONE_CHAR:
            tokens.append(Token(ch, ch, byte_of[i], byte_of[i + 1], line, col))
            i += 1
            col += 1
            continue
        err(f"unexpected character {ch!r}", i, line, col)

    tokens.append(Token("eof", "", byte_of[n], byte_of[n], line, col))
    return tokens
