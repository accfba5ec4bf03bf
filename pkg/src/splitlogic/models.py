"""Model sets over a finite language: projection, extension and gluing."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FormatError, NotRealizableError, PartitionError
from .language import Language, check_same


@dataclass(frozen=True)
class Assignment:
    """A total truth assignment, stored as an integer code over ``language``."""

    language: Language
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.language.cube_size:
            raise ValueError(f"code {self.code} out of range for {self.language!r}")

    @classmethod
    def from_bits(cls, language: Language, bits: str) -> Assignment:
        return cls(language, language.parse_code(bits))

    def __getitem__(self, name: str | int) -> bool:
        i = name if isinstance(name, int) else self.language.index(name)
        return bool(self.code & self.language.bit(i))

    def valuation(self) -> dict[str, bool]:
        return {name: self[i] for i, name in enumerate(self.language.names)}

    def restrict(self, names: Iterable[str | int]) -> PartialAssignment:
        mask = self.language.mask(names)
        return PartialAssignment(self.language, mask, self.code & mask)

    def __str__(self) -> str:
        return self.language.format_code(self.code)


@dataclass(frozen=True)
class PartialAssignment:
    """Truth values for the variables in ``mask``; other bits of ``bits`` are zero."""

    language: Language
    mask: int
    bits: int

    def __post_init__(self):
        if self.mask & ~self.language.full_mask or self.bits & ~self.mask:
            raise ValueError("partial assignment bits fall outside its domain")

    @classmethod
    def of(cls, language: Language, values: dict[str, bool | int]) -> PartialAssignment:
        mask = bits = 0
        for name, value in values.items():
            b = language.bit(language.index(name))
            mask |= b
            if value:
                bits |= b
        return cls(language, mask, bits)

    @property
    def domain(self) -> tuple[int, ...]:
        return self.language.mask_indices(self.mask)

    def valuation(self) -> dict[str, bool]:
        lang = self.language
        return {lang.names[i]: bool(self.bits & lang.bit(i)) for i in self.domain}

    def compact(self) -> str:
        """Bitstring over the domain only, in language order."""
        lang = self.language
        return "".join("1" if self.bits & lang.bit(i) else "0" for i in self.domain)

    def __str__(self) -> str:
        return " ".join(f"{k}={int(v)}" for k, v in self.valuation().items()) or "{}"


class ModelSet:
    """A finite set of assignments over one language, kept sorted and deduplicated."""

    def __init__(self, language: Language, codes: Iterable[int] = ()):
        codes = tuple(sorted(set(int(c) for c in codes)))
        if codes and (codes[0] < 0 or codes[-1] >= language.cube_size):
            raise ValueError(f"assignment code out of range for {language!r}")
        self.language = language
        self.codes = codes

    @classmethod
    def from_bits(cls, language: Language | str, bits: Iterable[str]) -> ModelSet:
        if not isinstance(language, Language):
            language = Language(language)
        return cls(language, (language.parse_code(b) for b in bits))

    @classmethod
    def full(cls, language: Language) -> ModelSet:
        return cls(language, range(language.cube_size))

    @classmethod
    def _trusted(cls, language: Language, codes: tuple[int, ...]) -> ModelSet:
        self = cls.__new__(cls)
        self.language = language
        self.codes = codes
        return self

    @cached_property
    def array(self) -> np.ndarray:
        return np.fromiter(self.codes, dtype=np.uint32, count=len(self.codes))

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def __bool__(self) -> bool:
        return bool(self.codes)

    def __iter__(self) -> Iterator[Assignment]:
        return (Assignment(self.language, c) for c in self.codes)

    def __contains__(self, item: Assignment | int) -> bool:
        if isinstance(item, Assignment):
            if item.language != self.language:
                return False
            item = item.code
        return item in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelSet):
            return NotImplemented
        return self.language == other.language and self.codes == other.codes

    def __hash__(self) -> int:
        return hash((self.language, self.codes))

    def __repr__(self) -> str:
        return f"ModelSet({' '.join(self.language.names)!r}, {self.bitstrings()})"

    def bitstrings(self) -> list[str]:
        return [self.language.format_code(c) for c in self.codes]

    def __and__(self, other: ModelSet) -> ModelSet:
        check_same(self.language, other.language)
        return ModelSet._trusted(self.language, tuple(c for c in self.codes if c in other._members))

    def __or__(self, other: ModelSet) -> ModelSet:
        check_same(self.language, other.language)
        return ModelSet(self.language, self.codes + other.codes)

    def __le__(self, other: ModelSet) -> bool:
        check_same(self.language, other.language)
        return self._members <= other._members

    def complement(self) -> ModelSet:
        return ModelSet._trusted(
            self.language, tuple(c for c in range(self.language.cube_size) if c not in self._members)
        )


def project(X: ModelSet, names: Iterable[str | int]) -> frozenset[PartialAssignment]:
    """The set of distinct restrictions of members of ``X`` to ``names``."""
    lang = X.language
    mask = lang.mask(names)
    return frozenset(PartialAssignment(lang, mask, b) for b in {c & mask for c in X.codes})


def extend_partial(X: ModelSet, s: PartialAssignment) -> Assignment:
    """The canonically first member of ``X`` agreeing with ``s`` on its domain."""
    check_same(X.language, s.language)
    for c in X.codes:
        if c & s.mask == s.bits:
            return Assignment(X.language, c)
    raise NotRealizableError(f"partial assignment {s} has no extension in the model set")


def _validate_blocks(language: Language, blocks: Sequence[Iterable[str | int]]) -> list[int]:
    masks = []
    covered = 0
    for block in blocks:
        idx = language.indices(block)
        if not idx:
            raise PartitionError("empty block")
        m = language.mask(idx)
        if m & covered:
            raise PartitionError("blocks overlap")
        covered |= m
        masks.append(m)
    if covered != language.full_mask:
        raise PartitionError(f"blocks do not cover {language!r}")
    return masks


def glue(
    parts: Sequence[tuple[Iterable[str | int], Iterable[PartialAssignment]]],
    language: Language | None = None,
) -> ModelSet:
    """All assignments whose restriction to each block lies in that block's set."""
    parts = [(list(block), list(pas)) for block, pas in parts]
    if language is None:
        language = next((pas[0].language for _, pas in parts if pas), None)
        if language is None:
            raise PartitionError("cannot infer the language: every part is empty")
    masks = _validate_blocks(language, [block for block, _ in parts])
    codes = [0]
    for mask, (_, pas) in zip(masks, parts):
        values = set()
        for pa in pas:
            check_same(pa.language, language)
            if pa.mask != mask:
                raise PartitionError(f"partial assignment {pa} does not live on its block")
            values.add(pa.bits)
        codes = [c | v for c in codes for v in values]
    return ModelSet(language, codes)


def free_product(
    XA: Iterable[PartialAssignment],
    other: Iterable[str | int],
    language: Language | None = None,
) -> ModelSet:
    """Glue the partial assignments on their block with the full cube on ``other``."""
    XA = list(XA)
    if language is None:
        if not XA:
            raise PartitionError("cannot infer the language from an empty projection")
        language = XA[0].language
    other = language.indices(other)
    block = language.mask_indices(XA[0].mask) if XA else tuple(
        i for i in range(language.size) if i not in other
    )
    parts = [(block, XA)]
    if other:
        parts.append((other, project(ModelSet.full(language), other)))
    return glue(parts, language)


def restrict(X: ModelSet, names: Iterable[str | int]) -> ModelSet:
    """``X`` projected onto ``names`` and read as a model set of the sub-language."""
    lang = X.language
    idx = lang.indices(names)
    sub = Language(lang.names[i] for i in idx)
    bits = [lang.bit(i) for i in idx]
    k = len(idx)
    out = set()
    for c in X.codes:
        v = 0
        for j, b in enumerate(bits):
            if c & b:
                v |= 1 << (k - 1 - j)
        out.add(v)
    return ModelSet(sub, out)


def embed(Y: ModelSet, language: Language) -> frozenset[PartialAssignment]:
    """Read a model set of a sub-language as partial assignments over ``language``."""
    sub = Y.language
    bits = [language.bit(language.index(name)) for name in sub.names]
    k = len(bits)
    mask = sum(bits)
    out = set()
    for c in Y.codes:
        v = 0
        for j, b in enumerate(bits):
            if c >> (k - 1 - j) & 1:
                v |= b
        out.add(PartialAssignment(language, mask, v))
    return frozenset(out)


# -- text format -----------------------------------------------------------

def parse_modelset(text: str, source: str = "<string>") -> ModelSet:
    """Read the ``vars: p q r`` header followed by one bitstring per line."""
    language = None
    bits = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if language is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "vars":
                raise FormatError(f"{source}:{lineno}: expected 'vars:' header")
            try:
                language = Language(rest.split())
            except ValueError as exc:
                raise FormatError(f"{source}:{lineno}: {exc}") from None
            continue
        try:
            bits.append(language.parse_code(line))
        except ValueError as exc:
            raise FormatError(f"{source}:{lineno}: {exc}") from None
    if language is None:
        raise FormatError(f"{source}: missing 'vars:' header")
    return ModelSet(language, bits)


def format_modelset(X: ModelSet) -> str:
    lines = ["vars: " + " ".join(X.language.names)]
    lines.extend(X.bitstrings())
    return "\n".join(lines) + "\n"
