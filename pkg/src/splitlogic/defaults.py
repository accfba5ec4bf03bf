"""Defaults compiled into one-copy preferential structures, and back.

For every pair of models, the defaults separating them are collected and the
strictly less specific ones discarded; each survivor puts the model that
satisfies its consequent below the one that does not. Defaults with
incomparable or equivalent antecedents all fire, so opposite defaults yield
2-cycles, which is allowed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import FormatError, UsageError
from .language import Language, check_same
from .logic import (
    Formula,
    check_vars,
    entails,
    evaluate,
    format_formula,
    formula_of_models,
    models_of,
    parse_formula,
    truth_table,
    vars_in_order,
)
from .models import Assignment, ModelSet


@dataclass(frozen=True)
class Default:
    antecedent: Formula
    consequent: Formula
    label: str | None = None

    def __str__(self) -> str:
        return f"{format_formula(self.antecedent)} |~ {format_formula(self.consequent)}"


def language_of(ds: Iterable[Default], *extra: Formula) -> Language:
    """First-occurrence order over the defaults (antecedent, then consequent), then ``extra``."""
    formulas = []
    for d in ds:
        formulas += [d.antecedent, d.consequent]
    formulas += extra
    return Language(vars_in_order(formulas))


def labelled(ds: Sequence[Default]) -> list[Default]:
    """Copy of ``ds`` where unlabelled defaults are named d1, d2, ... by position."""
    return [
        d if d.label else Default(d.antecedent, d.consequent, f"d{i + 1}") for i, d in enumerate(ds)
    ]


class PreferenceGraph:
    """A strict relation over the assignments of a language: ``m < m'`` is an edge (m, m').

    Each edge carries the labels of the defaults that produced it.
    """

    def __init__(self, language: Language, edges: Mapping[tuple[int, int], Iterable[str]] | Iterable[tuple[int, int]]):
        self.language = language
        if not isinstance(edges, Mapping):
            edges = {e: () for e in edges}
        table = {}
        for (a, b), prov in edges.items():
            a, b = int(a), int(b)
            if a == b:
                raise ValueError("self-loops are not allowed")
            for c in (a, b):
                if not 0 <= c < language.cube_size:
                    raise ValueError(f"edge endpoint {c} out of range for {language!r}")
            table[(a, b)] = frozenset(table.get((a, b), frozenset()) | frozenset(prov))
        self._edges = MappingProxyType(dict(sorted(table.items())))

    @property
    def edges(self) -> Mapping[tuple[int, int], frozenset[str]]:
        return self._edges

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __contains__(self, edge: tuple[int, int]) -> bool:
        return edge in self._edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreferenceGraph):
            return NotImplemented
        return self.language == other.language and dict(self._edges) == dict(other._edges)

    def __repr__(self) -> str:
        fmt = self.language.format_code
        body = ", ".join(f"{fmt(a)}<{fmt(b)}" for a, b in self._edges)
        return f"PreferenceGraph({body})"

    def loops(self) -> list[list[int]]:
        """Strongly connected components with more than one model (diagnostic only)."""
        import networkx as nx

        g = nx.DiGraph(list(self._edges))
        comps = [sorted(c) for c in nx.strongly_connected_components(g) if len(c) > 1]
        return sorted(comps)

    def to_json(self) -> dict:
        fmt = self.language.format_code
        return {
            "vars": list(self.language.names),
            "edges": [
                {"from": fmt(a), "to": fmt(b), "defaults": sorted(prov)}
                for (a, b), prov in self._edges.items()
            ],
        }


def graph_from_json(data: dict | str, language: Language | None = None) -> PreferenceGraph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"graph JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("edges"), list):
        raise FormatError('graph JSON must look like {"vars": [...], "edges": [...]}')
    if language is None:
        if "vars" not in data:
            raise FormatError("graph JSON needs a 'vars' list to fix the language")
        try:
            language = Language(data["vars"])
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    edges: dict[tuple[int, int], set[str]] = {}
    try:
        for e in data["edges"]:
            key = (language.parse_code(e["from"]), language.parse_code(e["to"]))
            edges.setdefault(key, set()).update(e.get("defaults", []))
        return PreferenceGraph(language, edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad edge in graph JSON: {exc}") from None


def more_specific(d1: Default, d2: Default, lang: Language | None = None) -> bool:
    """``d1`` is at least as specific as ``d2``: its antecedent entails theirs."""
    if lang is None:
        lang = language_of([d1, d2])
    return entails(d1.antecedent, d2.antecedent, lang)


def separates(d: Default, m: Assignment, m2: Assignment) -> bool:
    if not (evaluate(d.antecedent, m) and evaluate(d.antecedent, m2)):
        return False
    return evaluate(d.consequent, m) != evaluate(d.consequent, m2)


def _tables(ds: Sequence[Default], lang: Language):
    for d in ds:
        check_vars(d.antecedent, lang)
        check_vars(d.consequent, lang)
    cube = lang.cube_size
    phi = np.zeros((len(ds), cube), dtype=np.uint8)
    psi = np.zeros((len(ds), cube), dtype=np.uint8)
    for k, d in enumerate(ds):
        phi[k] = truth_table(d.antecedent, lang)
        psi[k] = truth_table(d.consequent, lang)
    # ent[j, k]: antecedent j entails antecedent k
    sat = phi.astype(bool)
    ent = ~np.any(sat[:, None, :] & ~sat[None, :, :], axis=2)
    strict = (ent & ~ent.T).astype(np.uint8)
    return phi, psi, strict


def build_preference(ds: Sequence[Default], lang: Language | None = None) -> PreferenceGraph:
    """Compile defaults into a preference relation over the models of ``lang``."""
    ds = labelled(ds)
    if lang is None:
        lang = language_of(ds)
    if not ds:
        return PreferenceGraph(lang, {})
    phi, psi, strict = _tables(ds, lang)
    src, dst, dft = kernels.preference_edges(phi, psi, strict)
    edges: dict[tuple[int, int], set[str]] = {}
    for a, b, k in zip(src.tolist(), dst.tolist(), dft.tolist()):
        edges.setdefault((a, b), set()).add(ds[k].label)
    return PreferenceGraph(lang, edges)


def minimal_models(G: PreferenceGraph, X: ModelSet) -> ModelSet:
    """Members of ``X`` with nothing in ``X`` strictly below them."""
    check_same(X.language, G.language)
    dominated = {b for (a, b) in G.edges if a in X and b in X}
    return ModelSet._trusted(X.language, tuple(c for c in X.codes if c not in dominated))


def nm_consequence(
    ds: Sequence[Default], phi: Formula, psi: Formula, lang: Language | None = None
) -> bool:
    """Every minimal model of ``phi`` satisfies ``psi``."""
    if lang is None:
        lang = language_of(ds, phi, psi)
    check_vars(phi, lang)
    check_vars(psi, lang)
    G = build_preference(ds, lang)
    mu = minimal_models(G, models_of(phi, lang))
    return mu <= models_of(psi, lang)


def extract_defaults(G: PreferenceGraph) -> list[Default]:
    """One default per edge m < m': the theory of {m, m'} defaults to the theory of {m}."""
    lang = G.language
    out = []
    for k, (a, b) in enumerate(G.edges, 1):
        out.append(
            Default(
                formula_of_models(ModelSet(lang, (a, b))),
                formula_of_models(ModelSet(lang, (a,))),
                f"d{k}",
            )
        )
    return out


def round_trip(G: PreferenceGraph) -> bool:
    return build_preference(extract_defaults(G), G.language).edge_set() == G.edge_set()


# -- defaults file ---------------------------------------------------------

def parse_defaults(text: str, source: str = "<string>") -> list[Default]:
    """One ``ANTECEDENT |~ CONSEQUENT`` per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count("|~") != 1:
            raise FormatError(f"{source}:{lineno}: expected exactly one '|~'")
        left, right = line.split("|~")
        try:
            out.append(Default(parse_formula(left), parse_formula(right), f"d{len(out) + 1}"))
        except UsageError as exc:
            raise FormatError(f"{source}:{lineno}: {exc}") from None
    return out


def format_defaults(ds: Iterable[Default]) -> str:
    return "".join(f"{d}\n" for d in ds)
