"""Recodings of the assignment cube and the search for one that factorizes a set.

A recoding is a bijection of the cube, read as a change of vocabulary: the
same situations described with different variables. Whether a set splits
depends on the vocabulary, so a non-splitting set may split after recoding.

Two families are searched:

``full``    every permutation of the 2**n assignments (n <= 3)
``affine``  x -> Mx xor b with M invertible over GF(2) (n <= 5)

A search succeeds when the image has a factorization with at least two
blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from . import kernels
from .errors import EmptyModelSetError, FormatError, LanguageMismatchError, LanguageTooLargeError
from .language import Language
from .models import ModelSet

MAX_FULL_VARS = 3
MAX_AFFINE_VARS = 5


@dataclass(frozen=True)
class Recoding:
    """A bijection of the cube of ``source`` onto the cube of ``target``.

    ``table[c]`` is the image code of source code ``c``. Affine recodings also
    keep their matrix rows (as source-language masks) and offset code.
    """

    source: Language
    target: Language
    table: tuple[int, ...]
    rows: tuple[int, ...] | None = None
    offset: int = 0

    def __post_init__(self):
        if self.source.size != self.target.size:
            raise LanguageMismatchError("source and target languages differ in size")
        if sorted(self.table) != list(range(self.source.cube_size)):
            raise ValueError("recoding table is not a bijection of the cube")

    @classmethod
    def identity(cls, language: Language) -> Recoding:
        n = language.size
        return cls.affine(language, [language.bit(i) for i in range(n)], 0, language)

    @classmethod
    def permutation(cls, source: Language, table: Sequence[int], target: Language | None = None) -> Recoding:
        return cls(source, target or source, tuple(int(t) for t in table))

    @classmethod
    def affine(
        cls,
        source: Language,
        rows: Sequence[int],
        offset: int = 0,
        target: Language | None = None,
    ) -> Recoding:
        """``rows[r]`` is the mask of source variables XOR-ed into target variable r."""
        n = source.size
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError("an affine recoding needs one row per variable")
        if gf2_rank(rows) != n:
            raise ValueError("matrix is not invertible over GF(2)")
        if target is None:
            target = Language(_primed_names(source, rows, offset))
        cube = np.arange(source.cube_size, dtype=np.uint32)
        image = _affine_apply(cube, rows, offset, n)
        return cls(source, target, tuple(int(v) for v in image), rows, int(offset))

    @classmethod
    def from_matrix(
        cls,
        source: Language,
        matrix: Sequence[Sequence[int]],
        offset: Sequence[int] | None = None,
        target_vars: Sequence[str] | None = None,
    ) -> Recoding:
        n = source.size
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError(f"matrix must be {n}x{n}")
        rows = [sum(source.bit(i) for i, v in enumerate(row) if v) for row in matrix]
        off = 0
        for r, v in enumerate(offset or [0] * n):
            if v:
                off |= 1 << (n - 1 - r)
        target = Language(target_vars) if target_vars is not None else None
        return cls.affine(source, rows, off, target)

    @property
    def is_affine(self) -> bool:
        return self.rows is not None

    def matrix(self) -> list[list[int]]:
        n = self.source.size
        return [[1 if r & self.source.bit(i) else 0 for i in range(n)] for r in self.rows]

    def offset_bits(self) -> list[int]:
        n = self.source.size
        return [self.offset >> (n - 1 - r) & 1 for r in range(n)]

    def inverse(self) -> Recoding:
        inv = [0] * len(self.table)
        for c, t in enumerate(self.table):
            inv[t] = c
        return Recoding(self.target, self.source, tuple(inv))

    def to_json(self) -> dict:
        if self.is_affine:
            return {
                "matrix": self.matrix(),
                "offset": self.offset_bits(),
                "target_vars": list(self.target.names),
            }
        return {"permutation": list(self.table), "target_vars": list(self.target.names)}


def recoding_from_json(data: dict | list | str, source: Language) -> Recoding:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"recoding JSON: {exc}") from None
    try:
        if isinstance(data, list):
            return Recoding.permutation(source, data)
        if "matrix" in data:
            return Recoding.from_matrix(
                source, data["matrix"], data.get("offset"), data.get("target_vars")
            )
        target = Language(data["target_vars"]) if "target_vars" in data else None
        return Recoding.permutation(source, data["permutation"], target)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad recoding JSON: {exc}") from None


def _primed_names(source: Language, rows: Sequence[int], offset: int) -> list[str]:
    changed = [rows[r] != source.bit(r) or bool(offset & source.bit(r)) for r in range(source.size)]
    names = list(source.names)
    while True:
        names = [n + "'" if c else n for n, c in zip(names, changed)]
        if len(set(names)) == len(names):
            return names


def _affine_apply(codes: np.ndarray, rows: Sequence[int], offset: int, n: int) -> np.ndarray:
    return kernels.affine_image(codes, np.asarray(rows, dtype=np.uint32), offset, n)


def apply_recoding(X: ModelSet, R: Recoding) -> ModelSet:
    if X.language.size != R.source.size:
        raise LanguageMismatchError("model set and recoding differ in language size")
    return ModelSet(R.target, (R.table[c] for c in X.codes))


def gf2_rank(rows: Sequence[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def splits(X: ModelSet) -> bool:
    """True iff ``X`` has a factorization with at least two blocks."""
    return bool(kernels.has_nontrivial_factor(X.array, X.language.size))


# -- search ----------------------------------------------------------------

def search_factorizing_recoding(X: ModelSet, mode: str = "affine") -> Recoding | None:
    """First recoding, in enumeration order, whose image of ``X`` splits.

    Returns ``None`` once the family is exhausted. The identity comes first in
    both families, so a set that already splits is returned unchanged.
    """
    if not X:
        raise EmptyModelSetError("the model set is empty")
    if mode == "full":
        return _search_full(X)
    if mode == "affine":
        return _search_affine(X)
    raise ValueError(f"unknown search mode {mode!r}; expected 'full' or 'affine'")


def _search_full(X: ModelSet) -> Recoding | None:
    n = X.language.size
    if n > MAX_FULL_VARS:
        raise LanguageTooLargeError(f"full search is limited to {MAX_FULL_VARS} variables")
    verdicts: dict[tuple[int, ...], bool] = {}
    for table in permutations(range(X.language.cube_size)):
        image = tuple(sorted(table[c] for c in X.codes))
        ok = verdicts.get(image)
        if ok is None:
            ok = verdicts[image] = bool(
                kernels.has_nontrivial_factor(np.asarray(image, dtype=np.uint32), n)
            )
        if ok:
            return Recoding.permutation(X.language, table)
    return None


def _row_key(v: int, n: int) -> int:
    """Enumeration key of a row: its bits read with variable 0 least significant."""
    return int(format(v, f"0{n}b")[::-1], 2) if n else 0


def _span_add(span: int, v: int) -> int:
    """Add vector ``v`` to a subspace stored as a bitmask over the vectors of the cube."""
    out = span
    s = span
    while s:
        low = s & -s
        u = low.bit_length() - 1
        out |= 1 << (u ^ v)
        s ^= low
    return out


def _subspaces(n: int) -> dict[int, list[int]]:
    """All subspaces of GF(2)^n by dimension, each as a bitmask over vectors."""
    by_dim = {0: [1]}
    for d in range(1, n + 1):
        found = set()
        for s in by_dim[d - 1]:
            for v in range(1, 1 << n):
                if not s >> v & 1:
                    found.add(_span_add(s, v))
        by_dim[d] = sorted(found)
    return by_dim


def _basis(span: int) -> list[int]:
    basis: list[int] = []
    cur = 1
    v = 1
    while cur != span:
        if span >> v & 1 and not cur >> v & 1:
            basis.append(v)
            cur = _span_add(cur, v)
        v += 1
    return basis


def _good_splits(X: ModelSet) -> list[tuple[int, int]]:
    """Complementary subspace pairs (S1, S2) whose coordinates split the image of ``X``.

    Whether the image under M splits along a row bipartition depends only on
    the spans of the two row groups: an invertible change inside a group
    permutes that group's coordinates without changing projection sizes.
    """
    n = X.language.size
    subs = _subspaces(n)
    codes = X.array
    full = (1 << n) - 1
    good = []
    for d in range(1, n // 2 + 1):
        for s1 in subs[d]:
            for s2 in subs[n - d]:
                if s1 & s2 != 1 or (d == n - d and s2 < s1):
                    continue
                rows = _basis(s1) + _basis(s2)
                image = _affine_apply(codes, rows, 0, n)
                a = full ^ ((1 << (n - d)) - 1)
                if kernels.is_product(image, [a, full ^ a]):
                    good.append((s1, s2))
    return good


def _search_affine(X: ModelSet) -> Recoding | None:
    """Lexicographically first invertible matrix (offset 0) whose image splits.

    Matrices are ordered by their row tuple, each row compared by
    :func:`_row_key`, so the identity is first. Translations flip variables
    one at a time and never change whether a set splits, so the zero offset
    is always the first successful offset. Rows are chosen greedily, keeping a
    row only while some good subspace pair can still absorb the prefix.
    """
    n = X.language.size
    if n > MAX_AFFINE_VARS:
        raise LanguageTooLargeError(f"affine search is limited to {MAX_AFFINE_VARS} variables")
    if n < 2:
        return None
    good = _good_splits(X)
    if not good:
        return None
    # a state places every chosen row in S1 or S2; spans track independence
    states = [(s1, s2, 1, 1) for s1, s2 in good]
    candidates = sorted(range(1, 1 << n), key=lambda v: _row_key(v, n))
    rows: list[int] = []
    for _ in range(n):
        for v in candidates:
            nxt = []
            for s1, s2, sp1, sp2 in states:
                if s1 >> v & 1 and not sp1 >> v & 1:
                    nxt.append((s1, s2, _span_add(sp1, v), sp2))
                elif s2 >> v & 1 and not sp2 >> v & 1:
                    nxt.append((s1, s2, sp1, _span_add(sp2, v)))
            if nxt:
                rows.append(v)
                states = nxt
                break
        else:
            raise AssertionError("a feasible prefix could not be extended")
    return Recoding.affine(X.language, rows, 0)


def brute_force_affine(X: ModelSet) -> Recoding | None:
    """Oracle: walk every invertible matrix in enumeration order and test the image."""
    n = X.language.size
    candidates = sorted(range(1, 1 << n), key=lambda v: _row_key(v, n))

    def rec(prefix: list[int]):
        if len(prefix) == n:
            image = _affine_apply(X.array, prefix, 0, n)
            return list(prefix) if kernels.has_nontrivial_factor(image, n) else None
        for v in candidates:
            if gf2_rank(prefix + [v]) == len(prefix) + 1:
                found = rec(prefix + [v])
                if found is not None:
                    return found
        return None

    if n < 2:
        return None
    rows = rec([])
    return Recoding.affine(X.language, rows, 0) if rows is not None else None
