"""Partitions of a language and factorizations of model sets.

A partition factorizes a model set X when X is exactly the product of its
projections onto the blocks. Since X is always contained in that product,
comparing ``|X|`` with the product of the projection sizes decides it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import (
    EmptyModelSetError,
    FormatError,
    LanguageTooLargeError,
    PartitionError,
    SemanticError,
)
from .language import Language, check_same
from .models import ModelSet, glue, project

MAX_ATOM_BLOCKS = 20
MAX_BRUTE_FORCE_VARS = 6


class SearchTooLargeError(SemanticError):
    """Too many independent blocks survive the pairwise pre-merge."""


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty blocks of variable indices covering ``language``."""

    language: Language
    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, language: Language, blocks: Iterable[Iterable[str | int]]):
        resolved = []
        seen: set[int] = set()
        for block in blocks:
            idx = language.indices(block)
            if not idx:
                raise PartitionError("empty block")
            if seen.intersection(idx):
                raise PartitionError("blocks overlap")
            seen.update(idx)
            resolved.append(idx)
        if len(seen) != language.size:
            missing = [language.names[i] for i in range(language.size) if i not in seen]
            raise PartitionError(f"blocks do not cover {', '.join(missing)}")
        object.__setattr__(self, "language", language)
        object.__setattr__(self, "blocks", tuple(sorted(resolved)))

    @classmethod
    def discrete(cls, language: Language) -> Partition:
        return cls(language, ([i] for i in range(language.size)))

    @classmethod
    def trivial(cls, language: Language) -> Partition:
        return cls(language, [range(language.size)])

    @classmethod
    def from_masks(cls, language: Language, masks: Iterable[int]) -> Partition:
        return cls(language, (language.mask_indices(m) for m in masks))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(self.language.mask(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.blocks)

    def block_names(self) -> list[list[str]]:
        return [[self.language.names[i] for i in b] for b in self.blocks]

    def __str__(self) -> str:
        return " ".join("[" + " ".join(b) + "]" for b in self.block_names())

    def __repr__(self) -> str:
        return f"Partition({self})"

    def to_json(self) -> dict:
        return {"blocks": self.block_names()}


def partition_from_json(data: dict | str, language: Language) -> Partition:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"partition JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("blocks"), list):
        raise FormatError('partition JSON must look like {"blocks": [["p", "q"], ["r"]]}')
    return Partition(language, data["blocks"])


def _require_nonempty(X: ModelSet) -> None:
    if not X:
        raise EmptyModelSetError("the model set is empty")
    if X.language.size == 0:
        raise EmptyModelSetError("the language is empty")


def is_factorization(X: ModelSet, P: Partition) -> bool:
    _require_nonempty(X)
    check_same(X.language, P.language)
    return bool(kernels.is_product(X.array, P.masks))


def glue_of_projections(X: ModelSet, P: Partition) -> ModelSet:
    """The product of the block projections of ``X``; always a superset of ``X``."""
    check_same(X.language, P.language)
    return glue([(b, project(X, b)) for b in P.blocks], X.language)


def is_refinement(A: Partition, B: Partition) -> bool:
    """True iff every block of ``A`` lies inside some block of ``B``."""
    check_same(A.language, B.language)
    owner = {}
    for j, block in enumerate(B.blocks):
        for i in block:
            owner[i] = j
    return all(len({owner[i] for i in block}) == 1 for block in A.blocks)


def restrict_partition(P: Partition, names: Iterable[str | int]) -> Partition:
    """Non-empty intersections of the blocks with ``names``, over the sub-language."""
    lang = P.language
    idx = set(lang.indices(names))
    if not idx:
        raise PartitionError("cannot restrict a partition to an empty variable set")
    sub = lang.sublanguage(idx)
    blocks = []
    for block in P.blocks:
        kept = [lang.names[i] for i in block if i in idx]
        if kept:
            blocks.append(kept)
    return Partition(sub, blocks)


def common_refinement(ps: Sequence[Partition]) -> Partition:
    """All non-empty intersections of one block from each partition."""
    ps = list(ps)
    if not ps:
        raise PartitionError("common refinement of an empty list")
    lang = ps[0].language
    for p in ps[1:]:
        check_same(lang, p.language)
    # two variables share a block iff they share one in every input
    signature: dict[int, tuple[int, ...]] = {}
    for i in range(lang.size):
        key = []
        for p in ps:
            key.append(next(j for j, b in enumerate(p.blocks) if i in b))
        signature[i] = tuple(key)
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, key in signature.items():
        groups.setdefault(key, []).append(i)
    return Partition(lang, groups.values())


def coarsenings(P: Partition) -> Iterator[Partition]:
    """Every partition that ``P`` refines (including ``P``)."""
    for grouping in set_partitions(len(P.blocks)):
        yield Partition(
            P.language, ([i for j in group for i in P.blocks[j]] for group in grouping)
        )


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """All set partitions of range(n) via restricted growth strings."""
    if n == 0:
        yield []
        return
    labels = [0] * n
    maxes = [0] * n

    def emit():
        groups: list[list[int]] = [[] for _ in range(max(labels) + 1)]
        for i, g in enumerate(labels):
            groups[g].append(i)
        return groups

    def rec(i: int):
        if i == n:
            yield emit()
            return
        for g in range(maxes[i - 1] + 2):
            labels[i] = g
            maxes[i] = max(maxes[i - 1], g)
            yield from rec(i + 1)

    yield from rec(1)


def all_partitions(language: Language) -> Iterator[Partition]:
    for groups in set_partitions(language.size):
        yield Partition(language, groups)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def premerge_blocks(X: ModelSet) -> list[int]:
    """Masks of the groups forced together by pairwise dependence, ordered by lowest index."""
    lang = X.language
    uf = _UnionFind(lang.size)
    for i, j in kernels.dependent_pairs(X.array, lang.size):
        uf.union(i, j)
    groups: dict[int, int] = {}
    for i in range(lang.size):
        groups[uf.find(i)] = groups.get(uf.find(i), 0) | lang.bit(i)
    return [groups[r] for r in sorted(groups)]


def finest_factorization(X: ModelSet) -> Partition:
    """The factorization of ``X`` that refines every other factorization.

    Variables whose pairwise projection is not a product must share a block,
    so they are merged first. The remaining groups are assembled into atoms:
    starting from the lowest unassigned group, the smallest union of groups
    that splits off from the rest of the language is the next block.
    """
    _require_nonempty(X)
    lang = X.language
    groups = premerge_blocks(X)
    if len(groups) > MAX_ATOM_BLOCKS:
        raise SearchTooLargeError(
            f"{len(groups)} groups remain after pre-merging (cap {MAX_ATOM_BLOCKS})"
        )
    full = lang.full_mask
    codes = X.array
    remaining = list(groups)
    atoms = []
    while remaining:
        head, rest = remaining[0], remaining[1:]
        atom = None
        for size in range(len(rest) + 1):
            for combo in combinations(range(len(rest)), size):
                mask = head
                for k in combo:
                    mask |= rest[k]
                if mask == full or kernels.is_product(codes, [mask, full ^ mask]):
                    atom = mask, set(combo)
                    break
            if atom is not None:
                break
        if atom is None:
            # unreachable: the union of everything left is always a factor
            raise AssertionError("no factor found for the remaining groups")
        mask, used = atom
        atoms.append(mask)
        remaining = [g for k, g in enumerate(rest) if k not in used]
    return Partition.from_masks(lang, atoms)


def brute_force_finest(X: ModelSet) -> Partition:
    """Oracle: common refinement of every factorizing partition, by exhaustion."""
    _require_nonempty(X)
    if X.language.size > MAX_BRUTE_FORCE_VARS:
        raise LanguageTooLargeError(
            f"brute force is limited to {MAX_BRUTE_FORCE_VARS} variables"
        )
    factorizing = [P for P in all_partitions(X.language) if glue_of_projections(X, P) == X]
    return common_refinement(factorizing)
