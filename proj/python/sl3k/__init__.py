"""Exact K-type computations for principal series representations of SL(3,R)."""

import json

from . import _core
from ._core import basis, multiplicity, q, run_cli, suite_names, wigner_D

__all__ = [
    "action_matrix",
    "basis",
    "compose",
    "multiplicity",
    "q",
    "run_cli",
    "run_suite",
    "sl2_composition",
    "suite_names",
    "wigner_D",
]


def _strings(values):
    return [str(v) for v in values]


def sl2_composition(nu, eps=0):
    """Composition structure of the SL(2,R) principal series at rational nu."""
    return json.loads(_core.sl2_composition_json(str(nu), eps))


def action_matrix(lambda_, delta, generator, lmax):
    """Block matrix of a Lie algebra generator on the v basis, as a dict."""
    return json.loads(_core.action_matrix_json(_strings(lambda_), list(delta), generator, lmax))


def compose(preset, k=2, s="0", lmax=-1, threads=0):
    """Composition-series report for one of the presets even-k, degenerate, k3, k23."""
    return json.loads(_core.compose_json(preset, k, str(s), lmax, threads))


def run_suite(name, lmax=4, seed=1):
    """Runs one numerical oracle suite and returns its result as a dict."""
    return json.loads(_core.run_suite_json(name, lmax, seed))
