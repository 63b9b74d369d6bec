"""Confounder definitions, adjustment sets and property checks on causal diagrams.

Graphs and models are passed as text in the CLI file formats (or as
``pathlib.Path`` objects, which are read). Results are plain dicts with the
same layout as the CLI's ``--format json`` output.
"""

import json
import os
from pathlib import Path

from . import _confound
from ._confound import ConfoundError

__all__ = [
    "ConfoundError",
    "classify",
    "d_separated",
    "effects",
    "fixture",
    "fuzz",
    "minimal_sets",
    "paper_suite",
    "properties",
    "select",
]


def _text(value):
    if value is None:
        return None
    if isinstance(value, os.PathLike):
        return Path(value).read_text()
    return value


def _names(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return ",".join(value)


def minimal_sets(graph):
    return json.loads(_confound.minimal_sets(_text(graph)))


def classify(graph, model=None, variable=None, defs=None, exact=False):
    return json.loads(_confound.classify(_text(graph), _text(model), variable or "", _names(defs), exact))


def properties(graph, model=None, *, definition, variable=None, exact=False):
    return json.loads(_confound.properties(_text(graph), _text(model), definition, variable or "", exact))


def select(graph, model=None, *, mode, set=(), keep=(), oracle=None):
    return json.loads(_confound.select(_text(graph), _text(model), mode, _names(set), _names(keep), oracle or ""))


def paper_suite(fixtures=None):
    return json.loads(_confound.paper_suite(None if fixtures is None else os.fspath(fixtures)))


def fuzz(seed, nodes=8, trials=100, edge_prob=0.4, models=True, selection=True):
    return json.loads(_confound.fuzz(seed, nodes, trials, edge_prob, models, selection))


def d_separated(graph, a, b, given=()):
    return _confound.d_separated(_text(graph), _names(a), _names(b), _names(given))


def effects(graph, model, adjust=()):
    """Average causal effect, standardized risk difference over ``adjust``, its bias,
    and whether the potential outcomes are independent of the exposure given ``adjust``."""
    return json.loads(_confound.effects(_text(graph), _text(model), _names(adjust)))


def fixture(name):
    """Text of a built-in example file such as ``"m_bias.graph"``."""
    text = _confound.fixture(name)
    if text is None:
        raise KeyError(name)
    return text
