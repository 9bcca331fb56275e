"""Deterministic JSON text: floats at 17 significant digits, Fractions as "p/q"."""

from __future__ import annotations

import json
import math
from fractions import Fraction


def fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def float_text(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent: int = 2) -> str:
    return "".join(_emit(obj, indent, 0)) + "\n"


def _emit(obj, indent, level):
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        yield json.dumps(obj)
    elif isinstance(obj, int):
        yield str(int(obj))
    elif isinstance(obj, float):
        yield float_text(obj)
    elif isinstance(obj, Fraction):
        yield json.dumps(fraction_text(obj))
    elif isinstance(obj, str):
        yield json.dumps(obj)
    elif isinstance(obj, dict):
        if not obj:
            yield "{}"
            return
        yield "{\n"
        items = list(obj.items())
        for k, (key, val) in enumerate(items):
            yield pad + json.dumps(str(key)) + ": "
            yield from _emit(val, indent, level + 1)
            yield ",\n" if k < len(items) - 1 else "\n"
        yield close + "}"
    elif isinstance(obj, (list, tuple)):
        if not obj:
            yield "[]"
            return
        if all(isinstance(v, (int, str, float, Fraction)) and not isinstance(v, bool) for v in obj):
            yield "[" + ", ".join("".join(_emit(v, indent, level + 1)) for v in obj) + "]"
            return
        yield "[\n"
        for k, val in enumerate(obj):
            yield pad
            yield from _emit(val, indent, level + 1)
            yield ",\n" if k < len(obj) - 1 else "\n"
        yield close + "]"
    else:
        try:
            yield str(int(obj))  # numpy integer scalars
        except (TypeError, ValueError):
            raise TypeError(f"cannot render {type(obj).__name__}") from None
