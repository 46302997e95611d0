"""Enumeration of knot shadows (spherical curves) with few crossings.

A shadow is generated from a Gauss word together with a choice, at every
double point, of which side the second passage comes from.  Words failing the
evenness condition (partners at positions of equal parity) can never be
planar and are skipped up front; the remaining rotation systems are kept when
they have ``n + 2`` faces.  Duplicates under relabelling, rotation of the
word, reversal and reflection are removed with a canonical map code.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .diagram import LinkDiagram, from_pd


def _chord_key(partner: list[int]) -> tuple[int, ...]:
    m = len(partner)
    gaps = [(partner[p] - p) % m for p in range(m)]
    rgaps = [m - g for g in reversed(gaps)]
    best = None
    for seq in (gaps, rgaps):
        for r in range(m):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best  # type: ignore[return-value]


def chord_diagrams(n: int):
    """Even Gauss words up to rotation and reversal, as partner lists."""
    m = 2 * n
    seen = set()
    for perm in permutations(range(1, m, 2)):
        partner = [0] * m
        for k, q in enumerate(perm):
            partner[2 * k] = q
            partner[q] = 2 * k
        key = _chord_key(partner)
        if key in seen:
            continue
        seen.add(key)
        yield partner


def _tuples_for(partner: list[int], signs: tuple[int, ...]) -> list[tuple[int, int, int, int]]:
    m = len(partner)
    tuples = []
    k = 0
    for p in range(m):
        q = partner[p]
        if q < p:
            continue
        in_p, out_p = (p or m), p + 1
        in_q, out_q = q, q + 1
        if signs[k] > 0:
            tuples.append((in_p, in_q, out_p, out_q))
        else:
            tuples.append((in_p, out_q, out_p, in_q))
        k += 1
    return tuples


def _face_count(tuples: list[tuple[int, int, int, int]]) -> int:
    where: dict[int, list[tuple[int, int]]] = {}
    for v, t in enumerate(tuples):
        for s, e in enumerate(t):
            where.setdefault(e, []).append((v, s))
    seen = set()
    faces = 0
    for v in range(len(tuples)):
        for k in range(4):
            if (v, k) in seen:
                continue
            faces += 1
            cur = (v, k)
            while cur not in seen:
                seen.add(cur)
                w, s = cur
                a, b = where[tuples[w][s]]
                x, t = b if a == (w, s) else a
                cur = (x, (t - 1) % 4)
    return faces


def map_code(tuples) -> tuple:
    """Canonical code of a 4-valent plane map, invariant under relabelling
    and reflection."""
    where: dict[int, list[tuple[int, int]]] = {}
    for v, t in enumerate(tuples):
        for s, e in enumerate(t):
            where.setdefault(e, []).append((v, s))

    def across(v, s):
        a, b = where[tuples[v][s]]
        return b if a == (v, s) else a

    best = None
    n = len(tuples)
    for v0 in range(n):
        for s0 in range(4):
            for d in (1, -1):
                num = {v0: 0}
                entry = {v0: s0}
                order = [v0]
                code = []
                i = 0
                while i < len(order):
                    v = order[i]
                    i += 1
                    for k in range(4):
                        s = (entry[v] + d * k) % 4
                        w, t = across(v, s)
                        if w not in num:
                            num[w] = len(order)
                            entry[w] = t
                            order.append(w)
                        code.append((num[w], (d * (t - entry[w])) % 4))
                code = tuple(code)
                if best is None or code < best:
                    best = code
    return best  # type: ignore[return-value]


@lru_cache(maxsize=None)
def shadows(n: int) -> tuple[LinkDiagram, ...]:
    """All knot shadows with ``n`` crossings on the sphere, up to homeomorphism.

    Each is returned as the diagram whose tuples are exactly the generated
    ones; only the shadow matters to callers.
    """
    if n == 0:
        return (from_pd([]),)
    out = []
    codes = set()
    for partner in chord_diagrams(n):
        for rest in product((1, -1), repeat=n - 1):
            tuples = _tuples_for(partner, (1,) + rest)
            if _face_count(tuples) != n + 2:
                continue
            code = map_code(tuples)
            if code in codes:
                continue
            codes.add(code)
            out.append(from_pd(tuples))
    return tuple(out)


def census(max_n: int, min_n: int = 1) -> list[LinkDiagram]:
    return [L for n in range(min_n, max_n + 1) for L in shadows(n)]
