"""Hamming distances and distance-minimizing revision.

Three metrics are supported:

``count``     number of disagreeing variables
``weighted``  sum of per-variable weights over the disagreeing variables
``set``       the set of disagreeing variables, compared by inclusion

Revising T by F keeps the members of F closest to T. When a partition
splits both T and F, each block can be revised on its own and the results
glued back together; :func:`revise_componentwise` does exactly that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .errors import (
    EmptyModelSetError,
    FormatError,
    LanguageMismatchError,
    NotJointlyFactorizableError,
)
from .factorization import Partition, is_factorization
from .language import Language, check_same
from .models import Assignment, ModelSet, embed, glue, restrict

METRICS = ("count", "set", "weighted")

DistanceValue = int | frozenset  # a Count or a VarSet of variable indices


@dataclass(frozen=True)
class WeightProfile:
    """One positive integer weight per variable of ``language``."""

    language: Language
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != self.language.size:
            raise ValueError("one weight per variable is required")
        for w in self.weights:
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise ValueError(f"weights must be positive integers, got {w!r}")

    @classmethod
    def unit(cls, language: Language) -> WeightProfile:
        return cls(language, (1,) * language.size)

    @classmethod
    def from_mapping(cls, language: Language, mapping: Mapping[str, int]) -> WeightProfile:
        """Weights by variable name; unnamed variables weigh 1."""
        for name in mapping:
            language.index(name)
        return cls(language, tuple(mapping.get(n, 1) for n in language.names))

    def restrict(self, names) -> WeightProfile:
        idx = self.language.indices(names)
        return WeightProfile(self.language.sublanguage(idx), tuple(self.weights[i] for i in idx))

    def __getitem__(self, name: str) -> int:
        return self.weights[self.language.index(name)]


def _same_language(x: Assignment, y: Assignment) -> None:
    if x.language != y.language:
        raise LanguageMismatchError("assignments are over different languages")


def hamming_set(x: Assignment, y: Assignment) -> frozenset[int]:
    """Indices of the variables on which ``x`` and ``y`` disagree."""
    _same_language(x, y)
    return frozenset(x.language.mask_indices(x.code ^ y.code))


def hamming_count(x: Assignment, y: Assignment, w: WeightProfile | None = None) -> int:
    _same_language(x, y)
    diff = hamming_set(x, y)
    if w is None:
        return len(diff)
    check_same(w.language, x.language)
    return sum(w.weights[i] for i in diff)


def _check_pair(T: ModelSet, F: ModelSet) -> None:
    check_same(T.language, F.language)
    if not T or not F:
        raise EmptyModelSetError("revision needs non-empty model sets")


def revise_count(T: ModelSet, F: ModelSet, w: WeightProfile | None = None) -> ModelSet:
    """Members of ``F`` at minimal (weighted) counting distance from ``T``."""
    _check_pair(T, F)
    if w is None:
        w = WeightProfile.unit(T.language)
    check_same(w.language, T.language)
    dist = kernels.min_distances(T.array, F.array, np.asarray(w.weights, dtype=np.int64))
    best = dist.min()
    return ModelSet._trusted(F.language, tuple(c for c, d in zip(F.codes, dist) if d == best))


def revise_set(T: ModelSet, F: ModelSet) -> ModelSet:
    """Members of ``F`` reached from ``T`` by an inclusion-minimal difference set.

    Minimality is global: the candidate difference sets are all ``d(t, f)``
    for t in T and f in F.
    """
    _check_pair(T, F)
    hits = kernels.set_revision_hits(T.array, F.array)
    return ModelSet._trusted(F.language, tuple(c for c, h in zip(F.codes, hits) if h))


def revise(
    T: ModelSet, F: ModelSet, metric: str = "count", weights: WeightProfile | None = None
) -> ModelSet:
    if metric == "count":
        return revise_count(T, F)
    if metric == "weighted":
        return revise_count(T, F, weights)
    if metric == "set":
        return revise_set(T, F)
    raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")


def revise_componentwise(
    T: ModelSet,
    F: ModelSet,
    P: Partition,
    metric: str = "count",
    weights: WeightProfile | None = None,
) -> ModelSet:
    """Revise block by block under ``P`` and glue the blockwise results."""
    _check_pair(T, F)
    check_same(T.language, P.language)
    if not (is_factorization(T, P) and is_factorization(F, P)):
        raise NotJointlyFactorizableError(f"partition {P} does not factorize both sets")
    lang = T.language
    parts = []
    for block in P.blocks:
        w = weights.restrict(block) if weights is not None else None
        local = revise(restrict(T, block), restrict(F, block), metric, w)
        parts.append((block, embed(local, lang)))
    return glue(parts, lang)


def metric_from_json(data: dict | str, language: Language) -> tuple[str, WeightProfile | None]:
    """Read ``{"metric": ..., "weights": {...}}``; a bare name->weight map is also accepted."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"weights JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError("weights JSON must be an object")
    if "weights" in data or "metric" in data:
        metric = data.get("metric", "weighted")
        mapping = data.get("weights", {})
    else:
        metric, mapping = "weighted", data
    if metric not in METRICS:
        raise FormatError(f"unknown metric {metric!r}")
    if not isinstance(mapping, dict):
        raise FormatError("weights must map variable names to integers")
    try:
        profile = WeightProfile.from_mapping(language, mapping)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return metric, profile
