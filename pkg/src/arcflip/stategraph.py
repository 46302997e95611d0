"""The arc-crossing-change state graph of a knot shadow, admissibility of
crossing sets, and admissible trails.

Vertices of the state graph are binary labels (bit ``v`` is the checkerboard
label of crossing index ``v``).  An arc whose two ends meet at one crossing
only exists on the one-crossing shadow; there the edge is a self-loop, and
the variant I target is recorded alongside it.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .diagram import (
    DiagramError,
    LinkDiagram,
    Shadow,
    zero_label_mask,
)
from .moves import AccMove, LogEntry, MoveError, MoveLog
from .search import Strands, bfs_masks, check_limit, path_to


def _bits(label: int, n: int) -> str:
    return "".join(str((label >> v) & 1) for v in range(n))


def _knot_strands(shadow: Shadow) -> Strands:
    if len(shadow.components) != 1:
        raise DiagramError("the state graph is defined for knot shadows")
    return Strands(shadow)


# --------------------------------------------------------------------------
# the state graph


@dataclass(frozen=True)
class StateEdge:
    source: int
    target: int
    crossing: int  # id of the crossing where the arc starts (selector slot 2)
    target_variant_1: int  # differs from ``target`` only for a one-crossing arc


@dataclass
class StateGraph:
    shadow: Shadow
    edges: list[StateEdge]
    over_counts: dict[int, tuple[int, ...]] = field(repr=False)  # label -> m_i per arc

    @property
    def n(self) -> int:
        return self.shadow.n

    @property
    def vertices(self) -> range:
        return range(1 << self.n)

    def name(self, label: int) -> str:
        return _bits(label, self.n)

    def outdegree(self) -> list[int]:
        out = [0] * (1 << self.n)
        for e in self.edges:
            out[e.source] += 1
        return out

    def indegree(self) -> list[int]:
        """Incoming edges from other vertices (self-loops excluded)."""
        deg = [0] * (1 << self.n)
        for e in self.edges:
            if e.source != e.target:
                deg[e.target] += 1
        return deg

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = defaultdict(list)
        for e in self.edges:
            adj[e.source].append(e.target)
        return adj

    def to_dot(self) -> str:
        lines = ["digraph A_G {"]
        for v in self.vertices:
            lines.append(f'  "{self.name(v)}";')
        for e in self.edges:
            lines.append(f'  "{self.name(e.source)}" -> "{self.name(e.target)}" [label="c{e.crossing}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_state_graph(shadow: Shadow | LinkDiagram, limit: int | None = None) -> StateGraph:
    if isinstance(shadow, LinkDiagram):
        shadow = shadow.shadow
    st = _knot_strands(shadow)
    check_limit(shadow.n, limit)
    z = zero_label_mask(shadow)
    vs, par = st.verts[0], st.par[0]
    ids = shadow.ids
    edges: list[StateEdge] = []
    counts: dict[int, tuple[int, ...]] = {}
    for label in range(1 << shadow.n):
        mask = label ^ z
        unders = [k for k, (v, p) in enumerate(zip(vs, par)) if p == (mask >> v) & 1]
        m = len(vs)
        cnt = []
        for i, ka in enumerate(unders):
            kb = unders[(i + 1) % len(unders)]
            a, b = vs[ka], vs[kb]
            cnt.append(((kb - ka) % m or m) - 1)
            t2 = label ^ (1 << a) ^ (1 << b)
            t1 = t2 if a != b else label ^ (1 << a)
            edges.append(StateEdge(label, t2, ids[a], t1))
        counts[label] = tuple(cnt)
    return StateGraph(shadow, edges, counts)


@dataclass
class DegreeReport:
    checked: int
    violations: list[tuple[str, str, int, int]]  # (vertex, kind, expected, found)

    @property
    def ok(self) -> bool:
        return not self.violations


def degree_check(A: StateGraph) -> DegreeReport:
    outd, ind = A.outdegree(), A.indegree()
    bad = []
    for v in A.vertices:
        if outd[v] != A.n:
            bad.append((A.name(v), "outdegree", A.n, outd[v]))
        expect = sum(comb(m, 2) for m in A.over_counts[v])
        if ind[v] != expect:
            bad.append((A.name(v), "indegree", expect, ind[v]))
    return DegreeReport(1 << A.n, bad)


def components_of(A: StateGraph) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by smallest label."""
    parent = list(A.vertices)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in A.edges:
        a, b = find(e.source), find(e.target)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in A.vertices:
        groups[find(v)].append(v)
    return [groups[r] for r in sorted(groups)]


# --------------------------------------------------------------------------
# admissibility by exhaustive search


def _log_from_keys(L: LinkDiagram, keys: Sequence[tuple[int, bool]], variant: int, hashes: bool = True) -> MoveLog:
    log = MoveLog()
    st = Strands(L.shadow)
    mask = L.mask
    for v, forward in keys:
        mv = AccMove(L.ids[v], 2 if forward else 0, variant)
        log.entries.append(LogEntry(mv, L.with_mask(mask).digest if hashes else None))
        w = st.arc_end(mask, v, forward)
        if w != v:
            mask ^= (1 << v) ^ (1 << w)
        elif variant == 1:
            mask ^= 1 << v
    return log


def reachable_masks(L: LinkDiagram, variant: int = 1, limit: int | None = None) -> dict:
    check_limit(L.n, limit)
    st = Strands(L.shadow)
    parent, _ = bfs_masks(L.mask, lambda m: st.successors(m, variant))
    return parent


def is_admissible(
    L: LinkDiagram, S: Iterable[int], variant: int = 1, limit: int | None = None
) -> tuple[bool, MoveLog | None]:
    """Whether some sequence of arc crossing changes switches exactly the
    crossings with ids in ``S``; a shortest witness log when it does."""
    check_limit(L.n, limit)
    target = L.mask
    for cid in set(S):
        target ^= 1 << L.index(cid)
    st = Strands(L.shadow)
    parent, hit = bfs_masks(L.mask, lambda m: st.successors(m, variant), goal=lambda m: m == target)
    if hit is None:
        return False, None
    keys = [(v, True) for v in path_to(parent, hit)]
    return True, _log_from_keys(L, keys, variant)


# --------------------------------------------------------------------------
# directed shadows of alternating diagrams


@dataclass(frozen=True)
class DirectedShadow:
    """A two-in two-out plane digraph.

    ``rot[v]`` lists the four edge keys at ``v`` counterclockwise;
    ``src[e]``/``dst[e]`` are ``(vertex, slot)`` ends; ``lift[e]`` gives the
    edges of the original shadow that ``e`` stands for, in direction order.
    """

    vertices: tuple[int, ...]
    rot: dict
    src: dict
    dst: dict
    lift: dict

    def out_edges(self, v) -> list:
        return [e for s, e in enumerate(self.rot[v]) if self.src[e] == (v, s)]

    def in_edges(self, v) -> list:
        return [e for s, e in enumerate(self.rot[v]) if self.dst[e] == (v, s)]

    def in_neighbours(self, v) -> list:
        return [self.src[e][0] for e in self.in_edges(v)]

    def circuits(self) -> int:
        """Number of straight-ahead circuits (components of the curve)."""
        seen = set()
        count = 0
        for e0 in sorted(self.src, key=repr):
            if e0 in seen:
                continue
            count += 1
            e, end = e0, self.dst[e0]
            while e not in seen:
                seen.add(e)
                v, s = end
                s2 = (s + 2) % 4
                e = self.rot[v][s2]
                end = self.dst[e] if self.src[e] == (v, s2) else self.src[e]
        return count


def directed_shadow(L: LinkDiagram) -> DirectedShadow:
    """Orient every edge from its overcrossing end to its undercrossing end."""
    if not L.is_alternating():
        raise DiagramError("the two-in two-out orientation needs an alternating diagram")
    sh = L.shadow
    src, dst = {}, {}
    for e in sh.head:
        h, t = sh.head[e], sh.tail[e]
        if L.is_under(*h):
            src[e], dst[e] = t, h
        else:
            src[e], dst[e] = h, t
    rot = {v: tuple(sh.rot[v]) for v in range(sh.n)}
    return DirectedShadow(tuple(range(sh.n)), rot, src, dst, {e: (e,) for e in sh.head})


def resolve_vertex(G: DirectedShadow, z) -> DirectedShadow:
    """Smooth ``z`` respecting directions so that one circuit remains."""
    ins = [s for s in range(4) if G.dst[G.rot[z][s]] == (z, s)]
    if len(ins) != 2 or (ins[1] - ins[0]) % 2:
        raise DiagramError(f"vertex {z} is not an alternating two-in two-out vertex")
    tried = []
    for turn in (1, -1):
        pairs = [(s, (s + turn) % 4) for s in ins]
        try:
            H = _smooth(G, z, pairs)
        except DiagramError:
            continue
        tried.append(H)
        if H.circuits() == 1:
            return H
    raise DiagramError(f"no smoothing of vertex {z} keeps a single circuit")


def _smooth(G: DirectedShadow, z, pairs) -> DirectedShadow:
    rot = {v: r for v, r in G.rot.items() if v != z}
    src, dst, lift = dict(G.src), dict(G.dst), dict(G.lift)
    for s_in, s_out in pairs:
        e_in, e_out = G.rot[z][s_in], G.rot[z][s_out]
        if e_in == e_out:
            raise DiagramError("smoothing would leave a free loop")
    merged = {}
    for s_in, s_out in pairs:
        e_in, e_out = G.rot[z][s_in], G.rot[z][s_out]
        e_in = merged.get(e_in, e_in)
        e_out = merged.get(e_out, e_out)
        if e_in == e_out:
            raise DiagramError("smoothing would leave a free loop")
        new = ("m", e_in, e_out)
        a, b = src[e_in], dst[e_out]
        src[new], dst[new] = a, b
        lift[new] = lift[e_in] + lift[e_out]
        for old in (e_in, e_out):
            del src[old], dst[old], lift[old]
        for k, val in list(merged.items()):
            if val in (e_in, e_out):
                merged[k] = new
        merged[e_in] = merged[e_out] = new
        for v, s in (a, b):
            if v == z:
                continue
            r = list(rot[v])
            r[s] = new
            rot[v] = tuple(r)
    return DirectedShadow(tuple(v for v in G.vertices if v != z), rot, src, dst, lift)


def directed_trail(G: DirectedShadow, x, y) -> list | None:
    """Edges ``a_1, ..., a_k``: ``a_1`` enters ``x`` from an in-neighbour
    ``x'``, ``a_2`` leaves ``x'``, and ``a_2 ... a_k`` is a directed path to
    ``y`` that avoids ``x`` and meets ``y`` only at its end."""
    for a1 in sorted(G.in_edges(x), key=repr):
        xp = G.src[a1][0]
        if xp == x:
            continue
        outs = [e for e in G.out_edges(xp) if e != a1]
        for a2 in sorted(outs, key=repr):
            start = G.dst[a2][0]
            if start == x:
                continue
            if start == y:
                return [a1, a2]
            prev = {start: None}
            queue = deque([start])
            found = False
            while queue and not found:
                v = queue.popleft()
                for e in sorted(G.out_edges(v), key=repr):
                    if e in (a1, a2):
                        continue
                    w = G.dst[e][0]
                    if w == x or w in prev:
                        continue
                    prev[w] = (v, e)
                    if w == y:
                        found = True
                        break
                    queue.append(w)
            if found:
                path = []
                w = y
                while prev[w] is not None:
                    v, e = prev[w]
                    path.append(e)
                    w = v
                return [a1, a2] + path[::-1]
    return None


# --------------------------------------------------------------------------
# admissible trails


@dataclass(frozen=True)
class Step:
    edge: int
    start: int  # crossing index
    start_slot: int
    end: int
    end_slot: int


@dataclass(frozen=True)
class AdmissibleTrail:
    x: int  # crossing ids
    y: int
    steps: tuple[Step, ...]
    shadow: Shadow = field(repr=False, compare=False)

    def turns(self) -> list[str]:
        """At each interior vertex: ``straight``, ``left`` or ``right``."""
        out = []
        for a, b in zip(self.steps, self.steps[1:]):
            d = (b.start_slot - a.end_slot) % 4
            out.append({2: "straight", 1: "right", 3: "left"}.get(d, "back"))
        return out

    def vertices(self) -> list[int]:
        return [self.shadow.ids[self.steps[0].start]] + [self.shadow.ids[s.end] for s in self.steps]

    def passes_ends(self) -> bool:
        """Whether the trail crosses ``x`` or ``y`` between its two ends."""
        return any(v in (self.x, self.y) for v in self.vertices()[1:-1])

    def __str__(self) -> str:
        parts = [f"c{self.shadow.ids[self.steps[0].start]}"]
        for st, turn in zip(self.steps, self.turns() + ["end"]):
            tag = "" if turn in ("end",) else f"[{turn}]"
            parts.append(f"-e{st.edge}-> c{self.shadow.ids[st.end]}{tag}")
        return " ".join(parts)


def _steps_from_edges(L: LinkDiagram, x: int, edges: Sequence[tuple[int, bool]]) -> tuple[Step, ...]:
    """Walk from crossing index ``x`` along ``(edge, along_strand)`` pairs."""
    sh = L.shadow
    steps = []
    cur = x
    for e, along in edges:
        a, b = (sh.tail[e], sh.head[e]) if along else (sh.head[e], sh.tail[e])
        if a[0] != cur:
            raise DiagramError("edge sequence is not a walk")
        steps.append(Step(e, a[0], a[1], b[0], b[1]))
        cur = b[0]
    return tuple(steps)


def trail_from_directed(L: LinkDiagram, G: DirectedShadow, x: int, edges: list) -> AdmissibleTrail:
    """Turn a directed trail ``a_1 .. a_k`` of :func:`directed_trail` into a
    shadow trail starting at ``x`` (``a_1`` is walked against its direction)."""
    sh = L.shadow

    def along(e: int) -> bool:
        # digraph edges run from the over end to the under end
        return L.is_under(*sh.head[e])

    walk = [(e, not along(e)) for e in reversed(G.lift[edges[0]])]
    for key in edges[1:]:
        walk.extend((e, along(e)) for e in G.lift[key])
    steps = _steps_from_edges(L, x, walk)
    return AdmissibleTrail(sh.ids[x], sh.ids[steps[-1].end], steps, sh)


def _check_admissible(L: LinkDiagram, T: AdmissibleTrail) -> None:
    steps = T.steps
    x, y = L.index(T.x), L.index(T.y)
    if not steps:
        raise MoveError("empty trail")
    if steps[0].start != x or not L.is_under(x, steps[0].start_slot):
        raise MoveError("trail must begin along an understrand of x")
    if steps[-1].end != y or not L.is_under(y, steps[-1].end_slot):
        raise MoveError("trail must end along an understrand of y")
    for a, b in zip(steps, steps[1:]):
        if b.edge == a.edge and b.start_slot == a.end_slot:
            raise MoveError("trail turns back")
        v = a.end
        straight = b.start_slot == (a.end_slot + 2) % 4
        if v in (x, y) and not (straight and not L.is_under(v, a.end_slot)):
            raise MoveError(f"trail turns at an endpoint crossing c{L.ids[v]}")
        if straight and L.is_under(v, a.end_slot):
            raise MoveError(f"trail goes straight along an understrand at c{L.ids[v]}")
    used = [s.edge for s in steps]
    if len(set(used)) != len(used):
        raise MoveError("trail repeats an edge")


def _segments(T: AdmissibleTrail) -> list[tuple[Step, Step]]:
    """Pieces between consecutive turning vertices, as (first step, last step)."""
    segs = []
    first = T.steps[0]
    for a, b in zip(T.steps, T.steps[1:]):
        if b.start_slot != (a.end_slot + 2) % 4:
            segs.append((first, a))
            first = b
    segs.append((first, T.steps[-1]))
    return segs


def _segment_move(st: Strands, mask: int, seg: tuple[Step, Step], from_end: bool) -> tuple[int, bool, int]:
    """ACC on a segment, selected at its first (or, if ``from_end``, last)
    crossing.  Returns ``(crossing index, forward, new mask)``."""
    sh = st.shadow
    first, last = seg
    if from_end:
        v, slot, other = last.end, last.end_slot, first.start
    else:
        v, slot, other = first.start, first.start_slot, last.end
    if slot % 2 != (mask >> v) & 1:
        raise MoveError(f"segment end c{sh.ids[v]} is not an undercrossing when its move is due")
    e = sh.rot[v][slot]
    forward = sh.tail[e] == (v, slot)
    w = st.arc_end(mask, v, forward)
    if w != other:
        raise MoveError(f"arc at c{sh.ids[v]} ends at c{sh.ids[w]}, expected c{sh.ids[other]}")
    if w != v:
        mask ^= (1 << v) ^ (1 << w)
    return v, forward, mask


def _greedy_order(st: Strands, mask: int, segs: list, max_rounds: int = 10_000) -> tuple[list, int]:
    """Moves in the order of the constructive proof: fix-ups for turning
    vertices met as overcrossings, a reverse run from ``y``, a forward run
    from ``x``."""
    k = len(segs) - 1  # turning vertices v_1..v_k; segs[i] runs v_i -> v_{i+1}
    keys: list[tuple[int, bool]] = []

    def status(m: int) -> list[bool]:
        # whether v_i is met as an undercrossing, i = 1..k
        return [segs[i - 1][1].end_slot % 2 == (m >> segs[i - 1][1].end) & 1 for i in range(1, k + 1)]

    for _ in range(max_rounds):
        st_ = status(mask)
        if False not in st_:
            break
        t = st_.index(False)  # v_{t+1}: first turning vertex met as an over
        if True not in st_[t:]:
            break
        u = t + st_[t:].index(True)  # v_{u+1}: next one met as an under
        for s in range(u, t, -1):
            v, fwd, mask = _segment_move(st, mask, segs[s], False)
            keys.append((v, fwd))
    else:  # pragma: no cover - each round moves an undercrossing earlier
        raise MoveError("trail fix-up did not converge")
    st_ = status(mask)
    l = st_.index(False) if False in st_ else k
    for s in range(k, l, -1):
        v, fwd, mask = _segment_move(st, mask, segs[s], True)
        keys.append((v, fwd))
    for s in range(l + 1):
        v, fwd, mask = _segment_move(st, mask, segs[s], False)
        keys.append((v, fwd))
    return keys, mask


def _segment_search(st: Strands, start: int, segs: list, target: int, max_states: int = 1 << 16) -> list:
    """Shortest sequence of ACCs, each on an arc that is one of the trail's
    segments, from ``start`` to ``target``."""

    def succ(m: int):
        out = []
        for seg in segs:
            for from_end in (False, True):
                try:
                    v, fwd, m2 = _segment_move(st, m, seg, from_end)
                except MoveError:
                    continue
                out.append(((v, fwd), m2))
        return out

    parent, hit = bfs_masks(start, succ, goal=lambda m: m == target, max_states=max_states)
    if hit is None:
        raise MoveError("no order of segment moves switches exactly the trail ends")
    return path_to(parent, hit)


class TrailFinder:
    """Trail search and compilation for one knot diagram, with cached data."""

    def __init__(self, L: LinkDiagram):
        if L.num_components != 1:
            raise DiagramError("admissible trails are defined for knot diagrams")
        self.L = L
        self.st = Strands(L.shadow)
        self.G = directed_shadow(L) if L.is_alternating() else None

    def compile_keys(self, T: AdmissibleTrail) -> list[tuple[int, bool]]:
        L = self.L
        _check_admissible(L, T)
        segs = _segments(T)
        target = L.mask ^ (1 << L.index(T.x)) ^ (1 << L.index(T.y))
        try:
            keys, mask = _greedy_order(self.st, L.mask, segs)
            if mask != target:
                raise MoveError("moves do not switch exactly the trail ends")
        except MoveError:
            keys = _segment_search(self.st, L.mask, segs, target)
        return keys

    def compiles(self, T: AdmissibleTrail) -> bool:
        try:
            self.compile_keys(T)
        except MoveError:
            return False
        return True

    def find(self, x: int, y: int, generic: bool = True) -> AdmissibleTrail | None:
        """Prefer trails that meet ``x`` and ``y`` only at their ends; fall
        back to trails crossing them straight over in between."""
        L = self.L
        if x == y:
            raise DiagramError("the two crossings must differ")
        a, b = L.index(x), L.index(y)
        relaxed = None
        if self.G is not None:
            for p, q in ((a, b), (b, a)):
                edges = directed_trail(self.G, p, q)
                if edges is not None:
                    T = trail_from_directed(L, self.G, p, edges)
                    if self.compiles(T):
                        if not T.passes_ends():
                            return T
                        relaxed = relaxed or T
        if not generic:
            return relaxed
        cap = len(relaxed.steps) if relaxed is not None else None
        for p, q in ((a, b), (b, a)):
            for steps in generic_trails(L, p, q, max_len=cap):
                T = AdmissibleTrail(L.ids[p], L.ids[q], steps, L.shadow)
                if self.compiles(T):
                    return T
        if relaxed is not None:
            return relaxed
        for p, q in ((a, b), (b, a)):
            for steps in generic_trails(L, p, q, through_ends=True):
                T = AdmissibleTrail(L.ids[p], L.ids[q], steps, L.shadow)
                if self.compiles(T):
                    return T
        return None


def compile_trail_keys(L: LinkDiagram, T: AdmissibleTrail) -> list[tuple[int, bool]]:
    """``(crossing index, forward)`` selectors of a move sequence switching
    exactly the ends of ``T``."""
    return TrailFinder(L).compile_keys(T)


def compile_trail(L: LinkDiagram, T: AdmissibleTrail, hashes: bool = True) -> MoveLog:
    """The arc crossing change log that switches exactly the trail's ends.

    Moves follow the constructive order (fix-ups, then a reverse and a
    forward run).  When the trail passes over one of its own ends that order
    can break; the log then comes from a shortest search restricted to ACCs
    on the trail's segments.
    """
    return _log_from_keys(L, compile_trail_keys(L, T), 1, hashes)


def generic_trails(L: LinkDiagram, x: int, y: int, max_len: int | None = None, through_ends: bool = False):
    """Candidate admissible trails from crossing index ``x`` to ``y``,
    shortest first, following the straight/turn rules at every crossing.

    With ``through_ends`` the trail may also cross ``x`` or ``y`` in its
    interior, straight along the overstrand.
    """
    sh = L.shadow
    max_len = max_len or 2 * sh.n
    ends = (x, y)
    under = {v: tuple(L.is_under(v, s) for s in range(4)) for v in range(sh.n)}

    def out(v: int, s: int) -> tuple[int, int, int]:
        e = sh.rot[v][s]
        h, t = sh.head[e], sh.tail[e]
        return (e,) + (t if h == (v, s) else h)

    cache: dict[tuple[int, int], list] = {}

    def moves(v: int, t: int) -> list:
        """(slot, edge, far crossing, far slot) leaving ``v`` when entered at
        slot ``t``, in edge order."""
        if (v, t) not in cache:
            if v in ends:
                ss = [(t + 2) % 4]
            elif under[v][t]:
                ss = [(t + 1) % 4, (t + 3) % 4]
            else:
                ss = [(t + 2) % 4, (t + 1) % 4, (t + 3) % 4]
            cache[v, t] = sorted(((s,) + out(v, s) for s in ss), key=lambda c: c[1])
        return cache[v, t]

    used: list[Step] = []
    seen: set[int] = set()

    def dfs(v: int, t: int, depth: int):
        u = under[v][t]
        if v == y and u:
            if len(used) == depth:
                yield tuple(used)
            return
        if len(used) >= depth or (v in ends and (u or not through_ends)):
            return
        for s, e, w, r in moves(v, t):
            if e in seen:
                continue
            used.append(Step(e, v, s, w, r))
            seen.add(e)
            yield from dfs(w, r, depth)
            seen.discard(e)
            used.pop()

    starts = sorted((s for s in range(4) if under[x][s]), key=lambda s: sh.rot[x][s])
    # shortest length when edges may repeat: a lower bound, and no trail if unreachable
    dist = {out(x, s)[1:]: 1 for s in starts}
    queue = deque(dist)
    first = None
    while queue:
        v, t = queue.popleft()
        if v == y and under[v][t]:
            first = dist[v, t]
            break
        if v in ends and (under[v][t] or not through_ends):
            continue
        for _, _, w, r in moves(v, t):
            if (w, r) not in dist:
                dist[w, r] = dist[v, t] + 1
                queue.append((w, r))
    if first is None:
        return
    for depth in range(first, max_len + 1):
        for s in starts:
            e, w, r = out(x, s)
            used[:] = [Step(e, x, s, w, r)]
            seen.clear()
            seen.add(e)
            yield from dfs(w, r, depth)


def find_admissible_trail(L: LinkDiagram, x: int, y: int, generic: bool = True) -> AdmissibleTrail | None:
    """An admissible trail joining crossings ``x`` and ``y`` (ids) that
    compiles to a move sequence switching exactly the two.

    Alternating diagrams are tried first with the two-in two-out directed
    construction; otherwise, or when that fails, trails are searched
    directly.  The returned trail may run from ``y`` to ``x``.
    """
    return TrailFinder(L).find(x, y, generic)


# --------------------------------------------------------------------------
# exploratory survey: admissible pairs with and without admissible trails


@dataclass(frozen=True)
class SurveyRow:
    shadow: int  # position in the input sequence
    n: int
    label: str
    pairs: int
    admissible: int
    with_trail: int
    admissible_without_trail: int
    trail_not_admissible: int


def has_trail(L: LinkDiagram, x: int, y: int, through_ends: bool = False) -> bool:
    """Whether any admissible trail joins crossing indices ``x`` and ``y``."""
    return any(True for _ in generic_trails(L, x, y, through_ends=through_ends)) or any(
        True for _ in generic_trails(L, y, x, through_ends=through_ends)
    )


def survey(
    diagrams: Iterable[LinkDiagram], labels: str = "all", through_ends: bool = False, limit: int | None = None
) -> list[SurveyRow]:
    """Per shadow and label, count crossing pairs by admissibility and by
    existence of an admissible trail.

    ``labels`` is ``all`` (every label of the shadow) or ``given`` (only the
    diagram as passed in).
    """
    rows = []
    for k, L0 in enumerate(diagrams):
        check_limit(L0.n, limit)
        st = Strands(L0.shadow)
        z = zero_label_mask(L0.shadow)
        masks = range(1 << L0.n) if labels == "all" else [L0.mask]
        for mask in masks:
            L = L0.with_mask(mask)
            parent, _ = bfs_masks(mask, lambda m: st.successors(m, 1))
            counts = [0, 0, 0, 0]
            pairs = 0
            for a in range(L.n):
                for b in range(a + 1, L.n):
                    pairs += 1
                    adm = (mask ^ (1 << a) ^ (1 << b)) in parent
                    tr = has_trail(L, a, b, through_ends)
                    counts[0] += adm
                    counts[1] += tr
                    counts[2] += adm and not tr
                    counts[3] += tr and not adm
            rows.append(SurveyRow(k, L.n, _bits(mask ^ z, L.n), pairs, *counts))
    return rows
