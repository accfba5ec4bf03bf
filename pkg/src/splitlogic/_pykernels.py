"""Pure-Python implementations of the hot loops.

Every function here has a twin of the same name and signature in the
compiled ``_ckernels`` module. Inputs are numpy arrays (codes as uint32);
outputs are plain Python values or numpy arrays so callers cannot tell the
backends apart.
"""

import numpy as np


def distinct_count(codes, mask):
    mask = int(mask)
    return len({c & mask for c in codes.tolist()})


def is_product(codes, masks):
    """True iff the number of codes equals the product of per-mask distinct counts."""
    values = codes.tolist()
    target = len(values)
    prod = 1
    for mask in np.asarray(masks).tolist():
        prod *= len({c & mask for c in values})
        if prod > target:
            return False
    return prod == target


def dependent_pairs(codes, n):
    """Index pairs (i, j), i < j, whose joint projection is not the product of the singles."""
    values = codes.tolist()
    singles = []
    for i in range(n):
        b = 1 << (n - 1 - i)
        singles.append(len({c & b for c in values}))
    out = []
    for i in range(n):
        bi = 1 << (n - 1 - i)
        for j in range(i + 1, n):
            m = bi | (1 << (n - 1 - j))
            if len({c & m for c in values}) != singles[i] * singles[j]:
                out.append((i, j))
    return out


def has_nontrivial_factor(codes, n):
    """True iff some proper bipartition of the n variables factorizes the codes."""
    if n < 2:
        return False
    values = codes.tolist()
    target = len(values)
    full = (1 << n) - 1
    top = 1 << (n - 1)
    # every bipartition once: the side containing variable 0
    for sub in range(1 << (n - 1)):
        a = top | sub
        if a == full:
            continue
        b = full ^ a
        if len({c & a for c in values}) * len({c & b for c in values}) == target:
            return True
    return False


def min_distances(t_codes, f_codes, weights):
    """For each f, the minimum over t of the weighted Hamming distance.

    ``weights`` is indexed by variable index (variable 0 = most significant bit).
    """
    n = len(weights)
    w = [int(x) for x in weights]
    unit = all(x == 1 for x in w)
    ts = t_codes.tolist()
    out = np.empty(len(f_codes), dtype=np.int64)
    for k, f in enumerate(f_codes.tolist()):
        best = None
        for t in ts:
            x = t ^ f
            if unit:
                d = bin(x).count("1")
            else:
                d = 0
                for i in range(n):
                    if x >> (n - 1 - i) & 1:
                        d += w[i]
            if best is None or d < best:
                best = d
                if d == 0:
                    break
        out[k] = best
    return out


def minimal_xors(t_codes, f_codes):
    """The inclusion-minimal elements of {t ^ f}, sorted ascending."""
    xs = {t ^ f for t in t_codes.tolist() for f in f_codes.tolist()}
    minima = []
    for x in sorted(xs, key=lambda v: (bin(v).count("1"), v)):
        if not any(m & x == m for m in minima):
            minima.append(x)
    return np.array(sorted(minima), dtype=np.uint32)


def set_revision_hits(t_codes, f_codes):
    """Flag each f reached from some t by an inclusion-minimal difference set."""
    minima = set(minimal_xors(t_codes, f_codes).tolist())
    ts = t_codes.tolist()
    return np.array(
        [any((t ^ f) in minima for t in ts) for f in f_codes.tolist()], dtype=np.uint8
    )


def preference_edges(phi, psi, strict):
    """Edges of the specificity-resolved preference relation.

    ``phi`` and ``psi`` are (defaults x cube) 0/1 tables; ``strict[j, k]`` is 1
    when default j is strictly more specific than default k. Returns three
    int64 arrays (source, target, default) listing every contributed edge.
    """
    n_defaults, cube = phi.shape
    phi_l = phi.astype(bool).tolist()
    psi_l = psi.astype(bool).tolist()
    strict_l = strict.astype(bool).tolist()
    # per default: which models satisfy the antecedent
    members = [[m for m in range(cube) if phi_l[k][m]] for k in range(n_defaults)]
    active = [set() for _ in range(cube)]
    for k in range(n_defaults):
        for m in members[k]:
            active[m].add(k)
    src, dst, dft = [], [], []
    for a in range(cube):
        if not active[a]:
            continue
        for b in range(a + 1, cube):
            both = active[a] & active[b]
            if not both:
                continue
            sep = [k for k in sorted(both) if psi_l[k][a] != psi_l[k][b]]
            for k in sep:
                if any(strict_l[j][k] for j in sep):
                    continue
                if psi_l[k][a]:
                    src.append(a)
                    dst.append(b)
                else:
                    src.append(b)
                    dst.append(a)
                dft.append(k)
    return (
        np.array(src, dtype=np.int64),
        np.array(dst, dtype=np.int64),
        np.array(dft, dtype=np.int64),
    )


def affine_image(codes, rows, offset, n):
    """Image of each code under x -> (parity(row_r & x) for each row r) xor offset, in input order."""
    rs = [int(r) for r in rows]
    out = []
    for c in codes.tolist():
        y = 0
        for r, row in enumerate(rs):
            if bin(row & c).count("1") & 1:
                y |= 1 << (n - 1 - r)
        out.append(y ^ int(offset))
    return np.array(out, dtype=np.uint32)
