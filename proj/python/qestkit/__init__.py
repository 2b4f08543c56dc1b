"""Quantum estimation geometry: scores, Fisher matrices, model
classification, and Cramer-Rao / Holevo bounds for full-rank parametric
families of density matrices."""

from ._core import (
    InputError,
    Model,
    Point,
    RegularityError,
    SolverError,
    __version__,
    bloch_classify,
    bounds,
    classify,
    classify_global,
    evaluate,
    lemma_suite,
    load_model,
    make_point,
    matrices,
    model_from_json,
    model_to_json,
    scores,
    zoo_catalog,
    zoo_model,
)

__all__ = [
    "InputError",
    "Model",
    "Point",
    "RegularityError",
    "SolverError",
    "__version__",
    "bloch_classify",
    "bounds",
    "classify",
    "classify_global",
    "evaluate",
    "lemma_suite",
    "load_model",
    "make_point",
    "matrices",
    "model_from_json",
    "model_to_json",
    "scores",
    "zoo_catalog",
    "zoo_model",
]
