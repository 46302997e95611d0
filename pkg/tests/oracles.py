"""Reference computations that read only PD tuples and component edge cycles.

None of these use the shadow, masks or the search helpers of the package,
so agreement with the package is a real cross-check.
"""
from __future__ import annotations

from collections import deque
from itertools import permutations, product

from arcflip.diagram import LinkDiagram
from arcflip.moves import apply_move, arc_moves


def passages(L: LinkDiagram) -> list[list[tuple[int, bool]]]:
    """Per component, ``(crossing position, is_under)`` at the head of each
    edge, in the order of ``L.components``."""
    pd = L.pd()
    out = []
    for cyc in L.components:
        cands = []
        for k, e in enumerate(cyc):
            nxt = cyc[(k + 1) % len(cyc)]
            # slot 2 is the outgoing under-edge, never the head of an edge
            cands.append(
                [(v, s) for v, t in enumerate(pd) for s in (0, 1, 3) if t[s] == e and t[(s + 2) % 4] == nxt]
            )
        # only a two-edge cycle can offer several heads; its heads are distinct passages
        heads = next(h for h in product(*cands) if len({(v, s % 2) for v, s in h}) == len(h))
        out.append([(v, s == 0) for v, s in heads])
    return out


def signs(L: LinkDiagram) -> list[int | None]:
    """+1 when the overstrand runs d -> b in ``X(a, b, c, d)``; None where
    the overstrand lies on a two-edge cycle and labels cannot tell."""
    pd = L.pd()
    succ = {}
    for cyc in L.components:
        for k, e in enumerate(cyc):
            succ[e] = cyc[(k + 1) % len(cyc)]
    out: list[int | None] = []
    for _, b, _, d in pd:
        if succ[d] == b and succ[b] == d:
            out.append(None)
        else:
            out.append(1 if succ[d] == b else -1)
    return out


def linking_matrix(L: LinkDiagram) -> list[list[int]] | None:
    """lk(i, j) for i < j as the signed count of crossings with i over j."""
    comp_of_edge = {}
    for j, cyc in enumerate(L.components):
        for e in cyc:
            comp_of_edge[e] = j
    k = L.num_components
    lk = [[0] * k for _ in range(k)]
    for (a, b, _, _), sg in zip(L.pd(), signs(L)):
        under, over = comp_of_edge[a], comp_of_edge[b]
        if sg is None:
            return None
        if under != over and over < under:
            lk[over][under] += sg
            lk[under][over] += sg
    return lk


def ascending(L: LinkDiagram) -> bool:
    """Some component order and basepoints meet every crossing first as an
    undercrossing, walking the components one after another."""
    pas = passages(L)
    for order in permutations(range(L.num_components)):
        for starts in product(*(range(len(pas[j])) for j in order)):
            seen = set()
            ok = True
            for j, s in zip(order, starts):
                seq = pas[j][s:] + pas[j][:s]
                for v, under in seq:
                    if v not in seen:
                        seen.add(v)
                        if not under:
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                return True
    return False


def reachable(L: LinkDiagram, variant: int = 1) -> set[tuple]:
    """PD tuples of every diagram reachable by moves, by diagram-level BFS."""
    seen = {L.pd(): L}
    queue = deque([L])
    while queue:
        cur = queue.popleft()
        for _, mv in arc_moves(cur, variant):
            nxt = apply_move(cur, mv)
            key = nxt.pd()
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    return set(seen)
