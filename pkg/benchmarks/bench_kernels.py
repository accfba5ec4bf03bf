"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends receive identical inputs; results are checked for equality
before any timing is reported.
"""

import argparse
import time

import numpy as np

from splitlogic import kernels


def _inputs(seed=0):
    rng = np.random.default_rng(seed)
    n = 16
    codes = np.unique(rng.integers(0, 1 << n, size=20000)).astype(np.uint32)
    t = np.unique(rng.integers(0, 1 << 12, size=400)).astype(np.uint32)
    f = np.unique(rng.integers(0, 1 << 12, size=400)).astype(np.uint32)
    small = np.unique(rng.integers(0, 1 << 12, size=600)).astype(np.uint32)
    weights = rng.integers(1, 6, size=12).astype(np.int64)
    k, cube = 8, 1 << 8
    phi = (rng.random((k, cube)) < 0.5).astype(np.uint8)
    psi = (rng.random((k, cube)) < 0.5).astype(np.uint8)
    strict = np.triu(rng.random((k, k)) < 0.3, 1).astype(np.uint8)
    rows = np.array([1 << (n - 1 - i) | (1 << (n - 1 - (i + 1) % n)) for i in range(n)], dtype=np.uint32)
    half = (1 << n) - (1 << (n // 2))
    masks = np.array([half, ((1 << n) - 1) ^ half], dtype=np.uint32)
    return {
        "is_product": (codes, masks),
        "dependent_pairs": (codes, n),
        "has_nontrivial_factor": (small, 12),
        "min_distances": (t, f, weights),
        "set_revision_hits": (t[:150], f[:150]),
        "preference_edges": (phi, psi, strict),
        "affine_image": (codes, rows, 5, n),
    }


def _normalise(value):
    if isinstance(value, tuple):
        return sorted(zip(*(np.asarray(v).tolist() for v in value)))
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, list):
        return [tuple(v) for v in value]
    return bool(value) if isinstance(value, (bool, np.bool_)) else value


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if kernels.compiled_backend is None:
        raise SystemExit("compiled backend not built; run `pip install -e . --no-build-isolation` first")
    py, c = kernels.python_backend, kernels.compiled_backend
    print(f"{'kernel':<24}{'python (s)':>12}{'compiled (s)':>14}{'speed-up':>10}")
    for name, inputs in _inputs().items():
        tp, rp = _best(getattr(py, name), inputs, args.repeat)
        tc, rc = _best(getattr(c, name), inputs, args.repeat)
        if _normalise(rp) != _normalise(rc):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<24}{tp:>12.4f}{tc:>14.5f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
