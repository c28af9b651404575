"""Fixed-point iteration and Hyers-Ulam stability certificates.

Commands take an instance document (a dict in the instance-file schema) and
return the report as a dict.
"""

import json

from ._fixpoint import (
    ConsistencyError,
    DomainError,
    Error,
    InputError,
    baker_series_solution,
    bound_banach,
    bound_ciric,
    bound_kannan_chatterjea,
    ciric_reduced_factor,
    distance,
    kannan_step_bound,
    metric_names,
    run_cli,
)
from . import _fixpoint

__all__ = [
    "ConsistencyError",
    "DomainError",
    "Error",
    "InputError",
    "baker_series_solution",
    "bound_banach",
    "bound_ciric",
    "bound_kannan_chatterjea",
    "certify",
    "check_metric",
    "ciric_reduced_factor",
    "classify",
    "distance",
    "kannan_step_bound",
    "metric_names",
    "repro",
    "run_cli",
    "solve",
]


def _call(fn, doc):
    return json.loads(fn(json.dumps(doc)))


def check_metric(doc):
    return _call(_fixpoint._check_metric, doc)


def classify(doc):
    return _call(_fixpoint._classify, doc)


def solve(doc):
    return _call(_fixpoint._solve, doc)


def certify(doc):
    return _call(_fixpoint._certify, doc)


def repro(seed=0):
    """Rows of the reproduction suite."""
    return json.loads(_fixpoint._repro(seed))
