from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import LanguageMismatchError, LanguageTooLargeError, UnknownVariableError

# Trailing primes are admitted so recoded languages can say q'.
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*\Z")
RESERVED = frozenset({"T", "F"})

# Truth-table enumeration is explicit; 2**24 rows is the ceiling.
MAX_VARS = 24


@dataclass(frozen=True)
class Language:
    """An ordered set of propositional variable names.

    The position of a name is its canonical index. Assignments are encoded as
    integers with variable 0 in the most significant bit, so numeric order of
    codes is the canonical enumeration order.
    """

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str] | str):
        if isinstance(names, str):
            names = names.split()
        names = tuple(names)
        seen = set()
        for name in names:
            if not isinstance(name, str) or not NAME_RE.match(name) or name in RESERVED:
                raise ValueError(f"invalid variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)
        if len(names) > MAX_VARS:
            raise LanguageTooLargeError(
                f"{len(names)} variables exceeds the enumeration cap of {MAX_VARS}"
            )
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __repr__(self) -> str:
        return f"Language({' '.join(self.names)!r})"

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    @property
    def cube_size(self) -> int:
        return 1 << len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"variable {name!r} is not in {self!r}") from None

    def indices(self, names: Iterable[str | int]) -> tuple[int, ...]:
        """Resolve names (or already-resolved indices) to sorted indices."""
        out = set()
        for item in names:
            if isinstance(item, int):
                if not 0 <= item < len(self.names):
                    raise UnknownVariableError(f"index {item} out of range for {self!r}")
                out.add(item)
            else:
                out.add(self.index(item))
        return tuple(sorted(out))

    def bit(self, index: int) -> int:
        """Single-bit mask of the variable at ``index``."""
        return 1 << (len(self.names) - 1 - index)

    def mask(self, names: Iterable[str | int]) -> int:
        m = 0
        for i in self.indices(names):
            m |= self.bit(i)
        return m

    def mask_indices(self, mask: int) -> tuple[int, ...]:
        n = len(self.names)
        return tuple(i for i in range(n) if mask >> (n - 1 - i) & 1)

    def sublanguage(self, names: Iterable[str | int]) -> Language:
        """The sub-language on ``names``, keeping this language's order."""
        return Language(self.names[i] for i in self.indices(names))

    def format_code(self, code: int) -> str:
        n = len(self.names)
        return format(code, f"0{n}b") if n else ""

    def parse_code(self, bits: str) -> int:
        if len(bits) != len(self.names) or set(bits) - {"0", "1"}:
            raise ValueError(f"{bits!r} is not a bitstring of width {len(self.names)}")
        return int(bits, 2) if bits else 0


def check_same(a: Language, b: Language) -> None:
    if a != b:
        raise LanguageMismatchError(f"{a!r} and {b!r} differ")
