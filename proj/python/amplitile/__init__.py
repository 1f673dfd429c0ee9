"""Exact BCFW tile computations (thin wrapper over the C++ core)."""
import json
from fractions import Fraction

from . import _amplitile as _core

ChordError = _core.ChordError
narayana_count = _core.narayana_count


def _src(x):
    return x if isinstance(x, str) else json.dumps(x)


def enumerate_chord_diagrams(n, k):
    return json.loads(_core.enumerate_chord_diagrams(n, k))


def example(name="six-chord"):
    return json.loads(_core.example(name))


def recipe_from_chords(diagram):
    return json.loads(_core.recipe_from_chords(_src(diagram)))


def cell(source):
    """Plabic graph summary for a chord diagram or recipe (dict or JSON text)."""
    return json.loads(_core.cell(_src(source)))


def cell_from_window(window):
    return json.loads(_core.cell_from_window(list(window)))


def vandermonde_z(n, k):
    return [[Fraction(x) for x in row] for row in json.loads(_core.vandermonde_z(n, k))]


def promote(chain, butterfly, side="L"):
    return _core.promote(chain, list(butterfly), side)


def domino_table(diagram):
    return json.loads(_core.domino_table(_src(diagram)))


def coordinate_functionaries(source):
    return json.loads(_core.coordinate_functionaries(_src(source)))


def tile_seed(diagram, seed=1):
    return json.loads(_core.tile_seed(_src(diagram), seed))


def facets(source):
    return json.loads(_core.facets(_src(source)))


def verify_spurion(trials=20, seed=1):
    return json.loads(_core.verify_spurion(trials, seed))


def check_catalog(trials=1, seed=1):
    return json.loads(_core.check_catalog(trials, seed))


def toy_forms(x, y):
    """(quadrilateral, triangle 124, triangle 234) canonical forms at (x, y)."""
    return tuple(Fraction(v) for v in _core.toy_forms(str(Fraction(x)), str(Fraction(y))))
