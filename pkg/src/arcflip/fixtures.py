"""Standard diagrams and generators for random link diagrams.

Builders work with provisional edge names and a successor map along each
strand; :func:`assemble` relabels edges consecutively along every component
so the output follows the ascending-label convention.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Hashable, Sequence

import numpy as np

from .diagram import DiagramError, LinkDiagram, from_pd, parse_diagram

TREFOIL_PD = "X 1 1 5 2 4\nX 2 3 1 4 6\nX 3 5 3 6 2\n"
FIG8_PD = "X 1 4 2 5 1\nX 2 8 6 1 5\nX 3 6 3 7 4\nX 4 2 7 3 8\n"
HOPF_PD = "X 1 4 1 3 2\nX 2 2 3 1 4\n"
KINK_PD = "X 1 1 2 2 1\n"
CIRCLE_PD = "components: 1\n"


def trefoil() -> LinkDiagram:
    return parse_diagram(TREFOIL_PD)


def fig8() -> LinkDiagram:
    return parse_diagram(FIG8_PD)


def hopf() -> LinkDiagram:
    return parse_diagram(HOPF_PD)


def kink() -> LinkDiagram:
    return parse_diagram(KINK_PD)


def circle() -> LinkDiagram:
    return parse_diagram(CIRCLE_PD)


def assemble(
    tuples: Sequence[Sequence[Hashable]],
    successor: dict[Hashable, Hashable],
    alias: dict[Hashable, Hashable] | None = None,
) -> LinkDiagram:
    """Relabel provisional edge names and build the diagram.

    ``successor[e]`` is the edge following ``e`` through the crossing where
    ``e`` ends.  ``alias`` identifies provisional names that denote one edge.
    """
    alias = dict(alias or {})

    def find(x):
        while x in alias and alias[x] != x:
            x = alias[x]
        return x

    tuples = [[find(e) for e in t] for t in tuples]
    succ = {find(a): find(b) for a, b in successor.items()}
    labels: dict[Hashable, int] = {}
    cycles: list[list[int]] = []
    for t in tuples:
        for e in t:
            if e in labels:
                continue
            cyc = []
            cur = e
            while cur not in labels:
                labels[cur] = len(labels) + 1
                cyc.append(labels[cur])
                cur = succ[cur]
            cycles.append(cyc)
    pd = [[labels[e] for e in t] for t in tuples]
    L = from_pd(pd, components=cycles)
    return dataclasses.replace(L, header_components=False)


def braid_closure(word: Sequence[int], strands: int | None = None) -> LinkDiagram:
    """Closure of a braid word; generator ``i`` crosses positions i and i+1.

    Positive generators put the strand from the lower left over.
    """
    k = strands or (max(abs(g) for g in word) + 1)
    cur = {p: ("b", p) for p in range(1, k + 1)}
    counter = 0
    tuples, successor = [], {}
    for g in word:
        i = abs(g)
        if not 1 <= i < k:
            raise DiagramError(f"generator {g} out of range for {k} strands")
        in_l, in_r = cur[i], cur[i + 1]
        out_l, out_r = ("e", counter), ("e", counter + 1)
        counter += 2
        if g > 0:
            tuples.append((in_r, out_r, out_l, in_l))
        else:
            tuples.append((in_l, in_r, out_r, out_l))
        successor[in_l] = out_r
        successor[in_r] = out_l
        cur[i], cur[i + 1] = out_l, out_r
    alias = {}
    for p in range(1, k + 1):
        if cur[p] == ("b", p):
            raise DiagramError(f"strand {p} never crosses; the closure is disconnected")
        alias[("b", p)] = cur[p]
    return assemble(tuples, successor, alias)


def _provisional(L: LinkDiagram, tag: str):
    """Tuples (PD frame), successor map and orientation for ``L`` with tagged names."""
    tuples = [[(tag, e) for e in t] for t in L.pd()]
    successor = {}
    for comp in L.components:
        for a, b in zip(comp, comp[1:] + comp[:1]):
            successor[(tag, a)] = (tag, b)
    return tuples, successor


def clasp(L1: LinkDiagram, e: int, L2: LinkDiagram, f: int, over_first: bool = True) -> LinkDiagram:
    """Hook edge ``e`` of ``L1`` through edge ``f`` of ``L2`` with two crossings.

    ``e`` is pushed across ``f`` and back; one crossing has ``e`` over and the
    other has ``e`` under, so the two pieces become linked.  The face to the
    right of ``e`` and the face to the left of ``f`` are merged.
    """
    t1, s1 = _provisional(L1, "a")
    t2, s2 = _provisional(L2, "b")
    E, F = ("a", e), ("b", f)
    e1, e2, e3 = ("a", e, 1), ("a", e, 2), ("a", e, 3)
    f1, f2, f3 = ("b", f, 1), ("b", f, 2), ("b", f, 3)
    tuples = []
    successor = {}
    alias = {}
    for L, tt, s, old, first, mid, last in ((L1, t1, s1, E, e1, e2, e3), (L2, t2, s2, F, f1, f2, f3)):
        if old[1] not in L.shadow.head:
            raise DiagramError(f"no edge {old[1]}")
        for v, t in enumerate(tt):
            u = L.in_under_slot(v)
            row = list(t)
            for k in range(4):
                if row[k] == old:
                    row[k] = last if L.shadow.head[old[1]] == (v, (u + k) % 4) else first
            tuples.append(row)
        if L.n == 0:
            alias[first] = last
        else:
            for a, b in s.items():
                successor[last if a == old else a] = first if b == old else b
        successor[first] = mid
        successor[mid] = last
    # P: e heading east, f heading north; Q: e heading west, f heading north
    if over_first:
        tuples += [[f1, e2, f2, e1], [e2, f3, e3, f2]]
    else:
        tuples += [[e1, f1, e2, f2], [f2, e2, f3, e3]]
    return assemble(tuples, successor, alias)


# --------------------------------------------------------------------------
# random polygon projections


def _segment_hits(P: np.ndarray, Q: np.ndarray):
    """All proper intersections between closed polylines P and Q (may be equal)."""
    same = P is Q
    hits = []
    m, k = len(P), len(Q)
    for i in range(m):
        a, b = P[i], P[(i + 1) % m]
        for j in range(k):
            if same and (j <= i or j == (i + 1) % m or i == (j + 1) % k):
                continue
            c, d = Q[j], Q[(j + 1) % k]
            r, s = b - a, d - c
            den = r[0] * s[1] - r[1] * s[0]
            if abs(den) < 1e-12:
                continue
            w = c - a
            t = (w[0] * s[1] - w[1] * s[0]) / den
            u = (w[0] * r[1] - w[1] * r[0]) / den
            if 1e-9 < t < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
                hits.append((i, t, j, u, r, s))
    return hits


def polygon_diagram(polys: Sequence[np.ndarray], under_first: Sequence[bool]) -> LinkDiagram:
    """Diagram of closed polygons; ``under_first[k]`` picks the understrand of
    the k-th crossing in discovery order (True: the first-found passage)."""
    passages: list[list[tuple[float, int, int]]] = [[] for _ in polys]  # (pos, crossing, role)
    dirs = []
    for a in range(len(polys)):
        for b in range(a, len(polys)):
            for i, t, j, u, r, s in _segment_hits(polys[a], polys[b]):
                x = len(dirs)
                dirs.append((r, s))
                passages[a].append((i + t, x, 0))
                passages[b].append((j + u, x, 1))
    if len(dirs) != len(under_first):
        raise DiagramError("under_first length does not match crossing count")
    # edge leaving passage q of component a is ("e", a, q)
    slots: list[dict[int, tuple]] = [dict() for _ in dirs]
    successor = {}
    for a, plist in enumerate(passages):
        if not plist:
            raise DiagramError("component without crossings")
        plist.sort()
        for q, (_, x, role) in enumerate(plist):
            inc = ("e", a, (q - 1) % len(plist))
            out = ("e", a, q)
            slots[x][role] = (inc, out)
            successor[inc] = out
    tuples = []
    for x, (r, s) in enumerate(dirs):
        u_role = 0 if under_first[x] else 1
        du = r if u_role == 0 else s
        do = s if u_role == 0 else r
        inc_u, out_u = slots[x][u_role]
        inc_o, out_o = slots[x][1 - u_role]
        rays = [(-du, inc_u), (du, out_u), (-do, inc_o), (do, out_o)]
        base = math.atan2(-du[1], -du[0])
        rays.sort(key=lambda rv: (math.atan2(rv[0][1], rv[0][0]) - base) % (2 * math.pi))
        tuples.append([lab for _, lab in rays])
    return assemble(tuples, successor)


def random_polygon(rng: np.random.Generator, winding: int = 1, points: int | None = None) -> np.ndarray:
    k = points or int(rng.integers(4, 8)) * winding
    angles = np.sort(rng.uniform(0, 2 * math.pi * winding, k))
    radius = rng.uniform(0.6, 1.4) * (1 + 0.35 * rng.uniform(-1, 1, k))
    centre = rng.uniform(-0.9, 0.9, 2)
    return np.stack([centre[0] + radius * np.cos(angles), centre[1] + radius * np.sin(angles)], axis=1)


def random_link(
    rng: np.random.Generator,
    components: int,
    max_crossings: int = 10,
    self_crossing: str = "any",
    min_crossings: int = 1,
    tries: int = 2000,
) -> LinkDiagram:
    """A connected random polygon-projection diagram.

    ``self_crossing`` is ``"none"`` (every component self-crossing-free),
    ``"some"`` (at least one component has self-crossings) or ``"any"``.
    """
    for _ in range(tries):
        polys = []
        for c in range(components):
            wind = 1
            if self_crossing == "some" and c == 0:
                wind = 2
            elif self_crossing == "any" and rng.random() < 0.3:
                wind = 2
            polys.append(random_polygon(rng, wind))
        ncross = sum(
            len(_segment_hits(polys[a], polys[b])) for a in range(components) for b in range(a, components)
        )
        if not min_crossings <= ncross <= max_crossings:
            continue
        unders = [bool(b) for b in rng.integers(0, 2, ncross)]
        try:
            L = polygon_diagram(polys, unders)
        except DiagramError:
            continue
        has_self = [L.has_self_crossings(j) for j in range(L.num_components)]
        if self_crossing == "none" and any(has_self):
            continue
        if self_crossing == "some" and not any(has_self):
            continue
        return L
    raise DiagramError("could not generate a diagram with the requested properties")


def chain3() -> LinkDiagram:
    """Three circles A-B-C, with A and C disjoint."""
    ab = clasp(circle(), 1, circle(), 1)
    b_edge = ab.components[1][0]
    return clasp(ab, b_edge, circle(), 1)


def trefoil_fig8_link() -> LinkDiagram:
    """A trefoil diagram and a figure-8 diagram hooked together."""
    return clasp(trefoil(), 1, fig8(), 1)


def fig8_label(bits: str) -> LinkDiagram:
    from .diagram import diagram_from_label

    return diagram_from_label(fig8(), bits)


def torus_8_19() -> LinkDiagram:
    """8_19 as the closed 3-braid (s1 s2)^4."""
    return braid_closure([1, 2] * 4)


def knot_8_20() -> LinkDiagram:
    return braid_closure([1, 1, 1, -2, -1, -1, -1, -2])


def knot_8_21() -> LinkDiagram:
    return braid_closure([1, 1, 1, 2, -1, -1, 2, 2])
