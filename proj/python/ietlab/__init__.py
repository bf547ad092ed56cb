"""Exact interval exchange and lattice dynamics experiments."""

from ._core import (
    CheckFailure,
    Example,
    PreconditionError,
    build,
    decode,
    density,
    drift,
    encode,
    escape_fit,
    lattice_fill,
    prop13,
    survey,
    v_row,
)

__all__ = [
    "CheckFailure",
    "Example",
    "PreconditionError",
    "build",
    "decode",
    "density",
    "drift",
    "encode",
    "escape_fit",
    "lattice_fill",
    "prop13",
    "survey",
    "v_row",
]
