"""Exact computations with Mackey functors over finite groups.

JSON arguments may be given as dicts or strings; JSON results come back as
Python objects.
"""

import json as _json

from . import _core
from ._core import GreenFunctor, GreenModule, Group, InputError, MackeyFunctor, VerificationError

__all__ = [
    "Group",
    "MackeyFunctor",
    "GreenFunctor",
    "GreenModule",
    "InputError",
    "VerificationError",
    "group",
    "named_groups",
    "table_of_marks",
    "burnside_ring",
    "hom_rank",
    "compose_spans",
    "triangle_is_identity",
    "mackey",
    "levels",
    "box",
    "box_unit_invertible",
    "green",
    "green_failure",
    "tor",
    "rel_box_levels",
    "spectral_sequence",
    "bpq",
    "promonoidal_sweep",
]


def _text(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def _ints(rows):
    return [[int(v) for v in row] for row in rows]


def _as_group(g):
    return group(g) if isinstance(g, str) else g


def group(spec):
    """A built-in group by name (see named_groups) or a group JSON object."""
    return _core.group(_text(spec) if not isinstance(spec, str) else spec)


named_groups = _core.named_groups


def table_of_marks(g):
    return _ints(_core.table_of_marks(_as_group(g)))


def burnside_ring(g):
    """Structure constants: column i*n + j holds [G/H_i][G/H_j] on the orbit basis."""
    return _ints(_core.burnside_ring(_as_group(g)))


def hom_rank(g, x, y):
    """Rank of the span group from X to Y (G-sets given as labels or "pt")."""
    return _core.hom_rank(_as_group(g), x, y)


def compose_spans(second, first, g=None):
    return _json.loads(_core.compose_spans(_text(second), _text(first), _as_group(g) if g else None))


def triangle_is_identity(g, x):
    return _core.triangle_is_identity(_as_group(g), x)


def mackey(spec, g=None):
    """A Mackey functor from its JSON description, checked structurally."""
    return _core.mackey(_text(spec), _as_group(g) if g else None)


def levels(m):
    """Level invariants keyed by subgroup label, 0 standing for Z."""
    return _json.loads(m.levels_json())


box = _core.box
box_unit_invertible = _core.box_unit_invertible


def green(spec, g=None):
    return _core.green(_text(spec), _as_group(g) if g else None)


def green_failure(spec, g=None):
    """None for a Green functor, otherwise the violated axiom."""
    return _core.green_failure(_text(spec), _as_group(g) if g else None)


def tor(ring, left, right, pmax=2, g=None):
    """Tor_p(left, right) over ring for p = 0..pmax, as level invariants."""
    out = _core.tor(_text(ring), _text(left), _text(right), pmax, _as_group(g) if g else None)
    return [_json.loads(x) for x in out]


def rel_box_levels(ring, left, right, g=None):
    return _json.loads(_core.rel_box_levels(_text(ring), _text(left), _text(right), _as_group(g) if g else None))


def spectral_sequence(spec, rmax=4):
    return _json.loads(_core.spectral_sequence(_text(spec), rmax))


def bpq(g):
    return _json.loads(_core.bpq(_as_group(g)))


def promonoidal_sweep(g, max_feet=2):
    return _core.promonoidal_sweep(_as_group(g), max_feet)
