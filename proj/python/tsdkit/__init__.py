"""Exact verification and exclusion toolkit for tight spherical 5- and 7-designs.

Thin wrapper over the compiled core: structured results come back as
canonical JSON text and are parsed here, so Python callers and the CLI
see identical data.
"""

import json as _json

from ._core import (
    BoundExceeded,
    Design,
    ParseError,
    UnsupportedInput,
    builtin_names,
)
from . import _core as _c

__version__ = "0.1.0"

__all__ = [
    "BoundExceeded",
    "Design",
    "ParseError",
    "UnsupportedInput",
    "builtin_names",
    "classify_cell",
    "design_report",
    "lattice_report",
    "run_sieve",
    "verdict",
    "verify_table",
    "__version__",
]


def run_sieve(t, lo, hi, registry="", factor_bound=1000, jobs=1):
    """Classify every parameter in [lo, hi] for strength t in {5, 7}."""
    return _json.loads(_c.run_sieve(t, lo, hi, registry, factor_bound, jobs))


def verdict(t, param, registry="", factor_bound=1000):
    """Classify a single parameter: d for t=7, m for t=5."""
    return _json.loads(_c.verdict(t, param, registry, factor_bound))


def verify_table():
    """Check all 24 congruence cells and the surviving-cells conclusion."""
    return _json.loads(_c.verify_table())


def classify_cell(r, delta):
    """2-adic case label for one (r, delta) cell of the congruence table."""
    return _json.loads(_c.classify_cell(r, delta))


def design_report(design, t=7):
    """Strength, tightness, and spectrum report for a design."""
    return _json.loads(design.report(t))


def lattice_report(design, disc_bound=10000):
    """Lattice generated by the design: parity, determinant, discriminant form."""
    return _json.loads(design.lattice_report(disc_bound))
