"""Runtime values and their textual / JSON projections.

Numbers are 64-bit floats, booleans are distinct from numbers, and lists
copy on modification, so values can be shared between captures safely.
"""

from __future__ import annotations

from dataclasses import dataclass


class Unit:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "unit"


UNIT = Unit()


@dataclass(frozen=True)
class FnValue:
    name: str


def value_equal(a, b) -> bool:
    """Structural equality; bool and number never compare equal."""
    if type(a) is bool or type(b) is bool:
        return type(a) is type(b) and a == b
    if isinstance(a, float) and isinstance(b, float):
        return a == b
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(value_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(
            value_equal(a[k], b[k]) for k in a)
    if isinstance(a, FnValue) and isinstance(b, FnValue):
        return a.name == b.name
    if a is UNIT and b is UNIT:
        return True
    return False


def format_value(value) -> str:
    """Canonical display text, matching VXL literal syntax where one exists."""
    from .printer import format_number, format_string

    if type(value) is bool:
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, str):
        return format_string(value)
    if isinstance(value, list):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    if isinstance(value, dict):
        inner = ", ".join(f"{k}: {format_value(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, FnValue):
        return f"<fn {value.name}>"
    if value is UNIT:
        return "unit"
    raise TypeError(f"not a VXL value: {value!r}")


def value_to_json(value):
    """JSON projection; integral numbers become ints for stable output."""
    if type(value) is bool:
        return value
    if isinstance(value, float):
        if value == int(value) and abs(value) < 2 ** 53:
            return int(value)
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, list):
        return [value_to_json(v) for v in value]
    if isinstance(value, dict):
        return {k: value_to_json(v) for k, v in value.items()}
    if isinstance(value, FnValue):
        return f"<fn {value.name}>"
    if value is UNIT:
        return None
    raise TypeError(f"not a VXL value: {value!r}")
