import random

import pytest
from hypothesis import strategies as st

from splitlogic import kernels
from splitlogic.language import Language
from splitlogic.models import ModelSet

NAMES = "abcdefghijkl"


def lang_of(n):
    return Language(list(NAMES[:n]))


def random_modelset(rng, n, nonempty=True, density=None):
    lang = lang_of(n)
    p = density if density is not None else rng.random()
    codes = [c for c in range(1 << n) if rng.random() < p]
    if nonempty and not codes:
        codes = [rng.randrange(1 << n)]
    return ModelSet(lang, codes)


@st.composite
def modelsets(draw, min_vars=1, max_vars=5, nonempty=True):
    n = draw(st.integers(min_vars, max_vars))
    codes = draw(
        st.sets(st.integers(0, (1 << n) - 1), min_size=1 if nonempty else 0, max_size=1 << n)
    )
    return ModelSet(lang_of(n), codes)


# -- independent brute-force oracles, written over bitstrings -------------

def bit_distance(x, y, weights=None):
    return sum((weights[i] if weights else 1) for i, (a, b) in enumerate(zip(x, y)) if a != b)


def oracle_revise_count(T, F, weights=None):
    tb, fb = T.bitstrings(), F.bitstrings()
    dist = {f: min(bit_distance(t, f, weights) for t in tb) for f in fb}
    best = min(dist.values())
    return sorted(f for f, d in dist.items() if d == best)


def oracle_revise_set(T, F):
    tb, fb = T.bitstrings(), F.bitstrings()
    diff = {
        (t, f): frozenset(i for i, (a, b) in enumerate(zip(t, f)) if a != b) for t in tb for f in fb
    }
    values = set(diff.values())
    minimal = {d for d in values if not any(e < d for e in values)}
    return sorted({f for (t, f), d in diff.items() if d in minimal})


@pytest.fixture
def rng():
    return random.Random(20260115)


BACKENDS = [kernels.python_backend]
if kernels.compiled_backend is not None:
    BACKENDS.append(kernels.compiled_backend)


@pytest.fixture(params=BACKENDS, ids=lambda b: b.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


def random_groups(rng, n, max_blocks=None):
    """A random set partition of range(n)."""
    labels = [rng.randrange(max_blocks or n) for _ in range(n)]
    groups = {}
    for i, g in enumerate(labels):
        groups.setdefault(g, []).append(i)
    return sorted(groups.values())


def random_product(rng, lang, groups, density=None):
    """A model set that is the product of random non-empty components on ``groups``."""
    from splitlogic.models import embed, glue

    parts = []
    for g in groups:
        sub = lang.sublanguage(g)
        comp = random_modelset_over(rng, sub, density)
        parts.append((g, embed(comp, lang)))
    return glue(parts, lang)


def random_modelset_over(rng, lang, density=None):
    p = density if density is not None else rng.uniform(0.2, 0.9)
    codes = [c for c in range(lang.cube_size) if rng.random() < p]
    if not codes:
        codes = [rng.randrange(lang.cube_size)]
    return ModelSet(lang, codes)


# lines collected by test_acceptance.py, one per criterion
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
