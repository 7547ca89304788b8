"""Python bindings for the FOOD transformation and interpreter."""

from ._core import (
    FoodError,
    FoodTypeError,
    Obj,
    Program,
    check_properties,
    context,
    eval,
    fuzz,
    generate,
    parse,
    pretty,
    roundtrip,
    trace,
    transform,
    typecheck,
)

__all__ = [
    "FoodError",
    "FoodTypeError",
    "Obj",
    "Program",
    "check_properties",
    "context",
    "eval",
    "fuzz",
    "generate",
    "parse",
    "pretty",
    "roundtrip",
    "trace",
    "transform",
    "typecheck",
]
