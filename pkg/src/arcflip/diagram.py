"""Link diagrams over a fixed shadow.

A diagram is stored as a :class:`Shadow` (the 4-valent plane graph with its
rotation system, edge orientations and traced faces) together with an integer
bit mask recording which strand is the understrand at every crossing.  Every
slot index below is relative to the shadow frame, which is the crossing tuple
exactly as it was parsed: slot 0 held the incoming under-edge of the parsed
diagram, so ``mask == 0`` reproduces the input.

PD convention: ``X(a, b, c, d)`` lists edge labels counterclockwise starting
at the incoming under-edge.  Orientation of every component follows the
understrands (``a -> c``); a component that never passes under anything takes
its orientation from the optional ``components:`` header, else from ascending
edge labels (wrap-around allowed).
"""
from __future__ import annotations

import hashlib
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Raised for malformed or non-realizable diagram input."""


Slot = tuple[int, int]  # (crossing index, slot 0..3)


class Shadow:
    """A connected 4-valent plane graph with oriented strands.

    Built once by :func:`_build_shadow`; treat instances as immutable.
    """

    def __init__(
        self,
        ids: tuple[int, ...],
        rot: tuple[tuple[int, int, int, int], ...],
        components: tuple[tuple[int, ...], ...],
        head: dict[int, Slot],
        tail: dict[int, Slot],
        outer: int,
    ):
        self.ids = ids
        self.rot = rot
        self.components = components
        self.head = head
        self.tail = tail
        self.outer = outer
        self.index_of = {cid: v for v, cid in enumerate(ids)}
        self.edge_component = {e: k for k, comp in enumerate(components) for e in comp}
        n = len(ids)
        # slot_in[v][s]: the edge at (v, s) points into v
        self.slot_in = [[False] * 4 for _ in range(n)]
        for e, (v, s) in head.items():
            if v >= 0:
                self.slot_in[v][s] = True
        # strand_comp[v][p]: component whose strand uses slots {p, p+2} at v
        self.strand_comp = [[-1, -1] for _ in range(n)]
        for v in range(n):
            for p in (0, 1):
                self.strand_comp[v][p] = self.edge_component[rot[v][p]]
        self._trace_faces()

    # -- faces -----------------------------------------------------------
    def _other_end(self, e: int, end: Slot) -> Slot:
        h, t = self.head[e], self.tail[e]
        return t if end == h else h

    def _trace_faces(self) -> None:
        n = len(self.ids)
        if n == 0:
            (e,) = self.components[0]
            self.corner_face = {}
            self.left_face = {e: 0}
            self.right_face = {e: 1}
            self.faces = ((("L", e),), (("R", e),))
            return
        corner_face: dict[Slot, int] = {}
        faces: list[tuple[Slot, ...]] = []

        def trace(start: Slot) -> int:
            # start is a corner key (w, k): corner between slots k and k+1 at w
            fid = len(faces)
            cyc = []
            cur = start
            while cur not in corner_face:
                corner_face[cur] = fid
                cyc.append(cur)
                w, k = cur
                e = self.rot[w][k]
                # leave w through slot k, keeping the face on the left
                arrive = self._other_end(e, (w, k))
                if arrive == (w, k):  # pragma: no cover - labels appear twice
                    raise DiagramError("degenerate edge")
                x, t = arrive
                cur = (x, (t - 1) % 4)
            if cur != start:
                raise DiagramError("rotation system is not consistent")
            faces.append(tuple(cyc))
            return fid

        left_face: dict[int, int] = {}
        right_face: dict[int, int] = {}
        for e in sorted(self.head):
            hv, hs = self.head[e]
            tv, ts = self.tail[e]
            for key, store in (((hv, (hs - 1) % 4), left_face), ((tv, (ts - 1) % 4), right_face)):
                fid = corner_face.get(key)
                if fid is None:
                    fid = trace(key)
                store[e] = fid
        self.corner_face = corner_face
        self.left_face = left_face
        self.right_face = right_face
        self.faces = tuple(faces)

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def edges(self) -> list[int]:
        return sorted(self.head)

    @cached_property
    def face_colors(self) -> tuple[int, ...]:
        """Checkerboard colors per face: 0 white, 1 black; the outer face is white."""
        nf = len(self.faces)
        adj: dict[int, set[int]] = defaultdict(set)
        for e in self.head:
            a, b = self.left_face[e], self.right_face[e]
            if a == b:
                raise DiagramError(f"faces are not 2-colorable (edge {e})")
            adj[a].add(b)
            adj[b].add(a)
        color = [-1] * nf
        color[self.outer] = 0
        stack = [self.outer]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if color[g] < 0:
                    color[g] = 1 - color[f]
                    stack.append(g)
                elif color[g] == color[f]:
                    raise DiagramError("faces are not 2-colorable")
        return tuple(color)

    @cached_property
    def passages(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per component, the cyclic list of ``(crossing, entry slot)`` passages.

        The list starts at the head of the component's first edge.
        """
        out = []
        for comp in self.components:
            seq = []
            for e in comp:
                v, s = self.head[e]
                if v >= 0:
                    seq.append((v, s))
            out.append(tuple(seq))
        return tuple(out)

    def key(self) -> tuple:
        return (self.ids, self.rot, self.components, self.outer)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Shadow) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Shadow(n={self.n}, components={len(self.components)})"


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    """A link diagram: a shadow plus, per crossing, which strand pair is under.

    Bit ``v`` of ``mask`` is 0 when slots {0, 2} of the shadow frame carry the
    understrand at crossing index ``v`` and 1 when slots {1, 3} do.
    """

    shadow: Shadow
    mask: int = 0
    style: str = field(default="lines", compare=False)
    header_components: bool = field(default=False, compare=False)
    outer_token: str | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.shadow.n

    @property
    def ids(self) -> tuple[int, ...]:
        return self.shadow.ids

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        return self.shadow.components

    @property
    def num_components(self) -> int:
        return len(self.shadow.components)

    def under_pair(self, v: int) -> int:
        return (self.mask >> v) & 1

    def is_under(self, v: int, slot: int) -> bool:
        return slot % 2 == (self.mask >> v) & 1

    def under_component(self, v: int) -> int:
        return self.shadow.strand_comp[v][self.under_pair(v)]

    def over_component(self, v: int) -> int:
        return self.shadow.strand_comp[v][1 - self.under_pair(v)]

    def in_under_slot(self, v: int) -> int:
        p = self.under_pair(v)
        return p if self.shadow.slot_in[v][p] else p + 2

    def pd_frame(self, v: int) -> int:
        """Shadow slot that sits at PD position 0 (the incoming under-edge)."""
        return self.in_under_slot(v)

    def pd_tuple(self, v: int) -> tuple[int, int, int, int]:
        r = self.shadow.rot[v]
        u = self.in_under_slot(v)
        return tuple(r[(u + k) % 4] for k in range(4))  # type: ignore[return-value]

    def pd(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple(self.pd_tuple(v) for v in range(self.n))

    def sign(self, v: int) -> int:
        """Crossing sign: +1 when the overstrand runs from PD slot 3 to slot 1."""
        u = self.in_under_slot(v)
        return 1 if self.shadow.slot_in[v][(u + 3) % 4] else -1

    def switched(self, indices: Iterable[int]) -> "LinkDiagram":
        m = self.mask
        for v in indices:
            m ^= 1 << v
        return LinkDiagram(self.shadow, m, self.style, self.header_components, self.outer_token)

    def with_mask(self, mask: int) -> "LinkDiagram":
        return LinkDiagram(self.shadow, mask, self.style, self.header_components, self.outer_token)

    def mirror(self) -> "LinkDiagram":
        return self.with_mask(self.mask ^ ((1 << self.n) - 1))

    def index(self, crossing_id: int) -> int:
        try:
            return self.shadow.index_of[crossing_id]
        except KeyError:
            raise DiagramError(f"no crossing with id {crossing_id}") from None

    def self_crossings(self, j: int) -> list[int]:
        sc = self.shadow.strand_comp
        return [v for v in range(self.n) if sc[v][0] == j and sc[v][1] == j]

    def has_self_crossings(self, j: int) -> bool:
        return bool(self.self_crossings(j))

    def crossings_between(self, i: int, j: int) -> list[int]:
        sc = self.shadow.strand_comp
        return [v for v in range(self.n) if {sc[v][0], sc[v][1]} == {i, j} and i != j]

    def is_alternating(self) -> bool:
        for pas in self.shadow.passages:
            if len(pas) < 2:
                continue
            states = [self.is_under(v, s) for v, s in pas]
            if any(states[k] == states[k - 1] for k in range(len(states))):
                return False
        return True

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(_canonical_text(self).encode()).hexdigest()[:16]

    def content_key(self) -> tuple:
        return (self.ids, self.pd(), self.components, self.shadow.outer)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        if self.shadow is other.shadow:
            return self.mask == other.mask
        return self.content_key() == other.content_key()

    def __hash__(self) -> int:
        return hash(self.content_key())

    def __repr__(self) -> str:
        return f"LinkDiagram(n={self.n}, components={self.num_components}, pd={list(self.pd())})"


# --------------------------------------------------------------------------
# parsing

_COMPACT = re.compile(r"X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]")


def parse_diagram(text: str) -> LinkDiagram:
    """Parse a PD file (line or compact form) into a validated diagram."""
    crossings: list[tuple[int, tuple[int, int, int, int]]] = []
    components: list[list[int]] | None = None
    outer_token: str | None = None
    style = "lines"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("components:"):
            body = line.split(":", 1)[1]
            components = []
            for chunk in body.split("|"):
                toks = chunk.replace(",", " ").split()
                if not toks:
                    raise DiagramError(f"line {lineno}: empty component")
                try:
                    components.append([int(t) for t in toks])
                except ValueError:
                    raise DiagramError(f"line {lineno}: bad component list") from None
        elif low.startswith("outer:"):
            outer_token = line.split(":", 1)[1].strip()
            if not outer_token:
                raise DiagramError(f"line {lineno}: empty outer face")
        elif _COMPACT.match(line) or line.startswith("PD"):
            style = "compact"
            rest = _COMPACT.sub("", line)
            if rest.replace(",", "").replace("PD", "").strip(" []()"):
                raise DiagramError(f"line {lineno}: malformed compact tuple list")
            for m in _COMPACT.finditer(line):
                crossings.append((len(crossings) + 1, tuple(int(g) for g in m.groups())))  # type: ignore[arg-type]
        elif line[0] in "Xx":
            toks = line[1:].split()
            if len(toks) != 5:
                raise DiagramError(f"line {lineno}: expected 'X <id> <a> <b> <c> <d>'")
            try:
                vals = [int(t) for t in toks]
            except ValueError:
                raise DiagramError(f"line {lineno}: non-integer token") from None
            crossings.append((vals[0], tuple(vals[1:])))  # type: ignore[arg-type]
        else:
            raise DiagramError(f"line {lineno}: unrecognised line {line!r}")
    ids = [c for c, _ in crossings]
    if len(set(ids)) != len(ids):
        raise DiagramError("duplicate crossing id")
    return from_pd(
        [t for _, t in crossings],
        ids=ids,
        components=components,
        outer=outer_token,
        style=style,
    )


def from_pd(
    tuples: Sequence[Sequence[int]],
    ids: Sequence[int] | None = None,
    components: Sequence[Sequence[int]] | None = None,
    outer: str | int | None = None,
    style: str = "lines",
) -> LinkDiagram:
    """Build a diagram from PD tuples (see module docstring for conventions)."""
    rot = tuple(tuple(int(x) for x in t) for t in tuples)
    for t in rot:
        if len(t) != 4:
            raise DiagramError(f"crossing tuple {t} does not have 4 entries")
    ids = tuple(ids) if ids is not None else tuple(range(1, len(rot) + 1))
    if len(ids) != len(rot):
        raise DiagramError("ids and tuples differ in length")
    header = components is not None
    shadow = _build_shadow(ids, rot, components, outer)  # type: ignore[arg-type]
    token = None if outer is None else str(outer)
    return LinkDiagram(shadow, 0, style, header, token)


def _build_shadow(
    ids: tuple[int, ...],
    rot: tuple[tuple[int, int, int, int], ...],
    components: Sequence[Sequence[int]] | None,
    outer: str | int | None,
) -> Shadow:
    n = len(rot)
    if n == 0:
        if components is None:
            comps: tuple[tuple[int, ...], ...] = ((1,),)
        else:
            comps = tuple(tuple(c) for c in components)
        if len(comps) != 1 or len(comps[0]) != 1:
            raise DiagramError("a crossingless diagram must be a single circle with one edge label")
        e = comps[0][0]
        sh = Shadow((), (), comps, {e: (-1, 0)}, {e: (-1, 1)}, 0)
        sh.outer = _resolve_outer(sh, outer)
        return sh

    where: dict[int, list[Slot]] = defaultdict(list)
    for v, t in enumerate(rot):
        for s, e in enumerate(t):
            where[e].append((v, s))
    bad = sorted(e for e, w in where.items() if len(w) != 2)
    if bad:
        raise DiagramError(f"dangling edge label(s) {bad}: each label must appear exactly twice")

    # connectivity of the shadow
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for e in rot[v]:
            for w, _ in where[e]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    if len(seen) != n:
        raise DiagramError("shadow is disconnected")

    # trace strands: (v, s) continues to (v, s + 2)
    def other(e: int, end: Slot) -> Slot:
        a, b = where[e]
        return b if end == a else a

    head: dict[int, Slot] = {}
    tail: dict[int, Slot] = {}
    cycles: list[list[int]] = []
    visited: set[int] = set()
    for e0 in sorted(where):
        if e0 in visited:
            continue
        # walk in an arbitrary direction, recording (edge, entering end)
        walk: list[tuple[int, Slot]] = []
        e, enter = e0, where[e0][0]
        while True:
            walk.append((e, enter))
            visited.add(e)
            v, s = enter
            nxt = (v, (s + 2) % 4)
            e = rot[v][(s + 2) % 4]
            enter = other(e, nxt)
            if e == e0 and enter == walk[0][1]:
                break
            if len(walk) > 4 * n + 4:  # pragma: no cover - defensive
                raise DiagramError("strand traversal does not close")
        # decide the direction: entering ends are heads in the walk's direction
        forward = _choose_direction(walk, rot)
        if forward:
            order = walk
            for e, h in order:
                head[e] = h
                tail[e] = other(e, h)
            cycles.append([e for e, _ in order])
        else:
            rev = list(reversed(walk))
            for e, h in rev:
                t = h
                head[e] = other(e, t)
                tail[e] = t
            cycles.append([e for e, _ in rev])

    for v in range(n):
        if head[rot[v][0]] != (v, 0) or tail[rot[v][2]] != (v, 2):
            raise DiagramError(f"crossing {ids[v]}: understrand direction is inconsistent")

    comps_out = [_rotate_to_min(c) for c in cycles]
    if components is not None:
        given = [list(c) for c in components]
        if sorted(x for c in given for x in c) != sorted(where):
            raise DiagramError("components header does not partition the edge labels")
        ordered = []
        for g in given:
            match = None
            for c in cycles:
                if set(c) == set(g):
                    match = c
                    break
            if match is None or not _same_cycle(match, g):
                if match is not None and _same_cycle(list(reversed(match)), g):
                    # header reverses a cycle; allowed only if it has no undercrossing
                    if _has_under(match, head):
                        raise DiagramError("components header contradicts understrand orientation")
                    for e in match:
                        h, t = head[e], tail[e]
                        head[e], tail[e] = t, h
                else:
                    raise DiagramError(f"components header entry {g} is not a strand of the shadow")
            ordered.append(tuple(g))
        comps_final = tuple(ordered)
    else:
        comps_final = tuple(sorted((tuple(c) for c in comps_out), key=min))

    sh = Shadow(tuple(ids), rot, comps_final, head, tail, 0)
    if len(sh.faces) != n + 2:
        raise DiagramError(
            f"rotation system is not planar: {len(sh.faces)} faces for {n} crossings (expected {n + 2})"
        )
    sh.outer = _resolve_outer(sh, outer)
    return sh


def _has_under(cycle: list[int], head: dict[int, Slot]) -> bool:
    return any(head[e][1] % 2 == 0 for e in cycle)


def _choose_direction(walk: list[tuple[int, Slot]], rot) -> bool:
    """True when the walk's direction is the component's orientation."""
    votes = 0
    for e, (v, s) in walk:
        if s == 0:
            votes += 1
        elif s == 2:
            votes -= 1
    if votes > 0:
        return True
    if votes < 0:
        return False
    labels = [e for e, _ in walk]
    m = len(labels)
    up = sum(1 for k in range(m) if labels[(k + 1) % m] == labels[k] + 1)
    down = sum(1 for k in range(m) if labels[(k + 1) % m] == labels[k] - 1)
    if up != down:
        return up > down
    if m <= 1:
        return True
    k = labels.index(min(labels))
    return labels[(k + 1) % m] <= labels[(k - 1) % m]


def _rotate_to_min(c: list[int]) -> list[int]:
    k = c.index(min(c))
    return c[k:] + c[:k]


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = list(a).index(b[0])
    except ValueError:
        return False
    return list(a[k:]) + list(a[:k]) == list(b)


def _resolve_outer(sh: Shadow, token: str | int | None) -> int:
    if token is None:
        return sh.left_face[min(sh.left_face)]
    tok = str(token).strip()
    try:
        if tok[0] in "LlRr":
            e = int(tok[1:])
            faces = sh.left_face if tok[0] in "Ll" else sh.right_face
            if e not in faces:
                raise DiagramError(f"outer face refers to unknown edge {e}")
            return faces[e]
        f = int(tok)
    except ValueError:
        raise DiagramError(f"bad outer face token {tok!r}") from None
    if not 0 <= f < len(sh.faces):
        raise DiagramError(f"outer face {f} out of range (0..{len(sh.faces) - 1})")
    return f


def _canonical_text(L: LinkDiagram) -> str:
    parts = [
        "components: " + " | ".join(" ".join(map(str, c)) for c in L.components),
        f"outer: {L.shadow.outer}",
    ]
    parts += [f"X {cid} " + " ".join(map(str, t)) for cid, t in zip(L.ids, L.pd())]
    return "\n".join(parts) + "\n"


def serialize(L: LinkDiagram) -> str:
    """Render ``L`` in the style it was parsed from."""
    lines = []
    if L.header_components:
        lines.append("components: " + " | ".join(" ".join(map(str, c)) for c in L.components))
    if L.outer_token is not None:
        lines.append(f"outer: {L.outer_token}")
    if L.style == "compact" and L.n:
        if list(L.ids) != list(range(1, L.n + 1)):
            lines += [f"X {cid} " + " ".join(map(str, t)) for cid, t in zip(L.ids, L.pd())]
        else:
            lines.append(",".join("X({},{},{},{})".format(*t) for t in L.pd()))
    else:
        lines += [f"X {cid} " + " ".join(map(str, t)) for cid, t in zip(L.ids, L.pd())]
    return "\n".join(lines) + "\n"


def canonical_text(L: LinkDiagram) -> str:
    """Fully explicit serialization (header lines always present)."""
    return _canonical_text(L)


# --------------------------------------------------------------------------
# component structure


@dataclass(frozen=True)
class ComponentLabeling:
    order: tuple[int, ...]

    def position(self, j: int) -> int:
        return self.order.index(j)


def _component_graph(L: LinkDiagram) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {k: set() for k in range(L.num_components)}
    for v in range(L.n):
        a, b = L.shadow.strand_comp[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def is_felicitous(L: LinkDiagram, order: Sequence[int]) -> bool:
    adj = _component_graph(L)
    if sorted(order) != list(range(L.num_components)):
        return False
    for i, k in enumerate(order[:-1]):
        if not adj[k] & set(order[i + 1:]):
            return False
    return True


def felicitous_labeling(L: LinkDiagram, among: Iterable[int] | None = None) -> ComponentLabeling:
    """Order components so each one meets some later one.

    Follows the inductive construction: repeatedly peel off the smallest
    component whose removal leaves the rest connected.
    """
    adj = _component_graph(L)
    rest = sorted(among) if among is not None else list(range(L.num_components))
    order: list[int] = []
    while rest:
        if len(rest) == 1:
            order.append(rest[0])
            break
        for k in rest:
            others = [r for r in rest if r != k]
            if _connected(others, adj):
                order.append(k)
                rest = others
                break
        else:  # pragma: no cover - impossible for a connected graph
            raise DiagramError("component graph is disconnected")
    return ComponentLabeling(tuple(order))


def _connected(nodes: list[int], adj: dict[int, set[int]]) -> bool:
    if not nodes:
        return True
    allowed = set(nodes)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        k = stack.pop()
        for m in adj[k] & allowed:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return len(seen) == len(allowed)


def over_under_sets(L: LinkDiagram, j: int) -> tuple[frozenset[int], frozenset[int]]:
    """Crossing ids where component ``j`` is over / under another component."""
    if not 0 <= j < L.num_components:
        raise IndexError(f"component index {j} out of range")
    over, under = set(), set()
    for v in range(L.n):
        a, b = L.shadow.strand_comp[v]
        if a == b or j not in (a, b):
            continue
        (under if L.under_component(v) == j else over).add(L.ids[v])
    return frozenset(over), frozenset(under)


def precedes(L: LinkDiagram, i: int, j: int, strict: bool = False) -> bool:
    """``K_i ≾ K_j``: at every crossing between them ``K_j`` is on top."""
    cs = L.crossings_between(i, j)
    if strict and not cs:
        return False
    return all(L.over_component(v) == j for v in cs)


def _component_ascending_from(L: LinkDiagram, j: int, start: int) -> bool:
    pas = L.shadow.passages[j]
    seen: set[int] = set()
    m = len(pas)
    sc = L.shadow.strand_comp
    for k in range(m):
        v, s = pas[(start + k) % m]
        if sc[v][0] != sc[v][1]:
            continue
        if v not in seen:
            seen.add(v)
            if not L.is_under(v, s):
                return False
    return True


def ascending_basepoint(L: LinkDiagram, j: int) -> int | None:
    """Edge label of a basepoint from which component ``j`` is ascending, if any."""
    comp = L.components[j]
    if L.n == 0:
        return comp[0]
    if not L.has_self_crossings(j):
        return comp[0]
    pas = L.shadow.passages[j]
    # passage k is the head of comp[k'] for the k-th edge that ends at a crossing
    edges_at = [e for e in comp if L.shadow.head[e][0] >= 0]
    for k in range(len(pas)):
        if _component_ascending_from(L, j, k):
            # basepoint lies on the edge entering passage k
            return edges_at[k]
    return None


def _precedence_order(L: LinkDiagram, nodes: Sequence[int] | None = None, groups=None) -> list[int] | None:
    """Topological order so that earlier components lie below later ones."""
    nodes = list(range(L.num_components)) if nodes is None else list(nodes)
    indeg = {k: 0 for k in nodes}
    out: dict[int, set[int]] = {k: set() for k in nodes}
    rep = {k: k for k in nodes}
    if groups:
        for g in groups:
            for k in g:
                rep[k] = min(g)
    for v in range(L.n):
        a, b = L.shadow.strand_comp[v]
        if a == b:
            continue
        lo, hi = rep[L.under_component(v)], rep[L.over_component(v)]
        if lo == hi:
            continue
        if hi not in out[lo]:
            out[lo].add(hi)
            indeg[hi] += 1
    reps = sorted(set(rep.values()))
    indeg = {k: indeg[k] for k in reps}
    ready = sorted(k for k in reps if indeg[k] == 0)
    order = []
    while ready:
        k = ready.pop(0)
        order.append(k)
        for m in sorted(out[k]):
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
                ready.sort()
    return order if len(order) == len(reps) else None


def ascending_certificate(L: LinkDiagram) -> tuple[dict[int, int], tuple[int, ...]] | None:
    """Basepoints (component -> edge label) and a bottom-to-top order, or None."""
    base = {}
    for j in range(L.num_components):
        b = ascending_basepoint(L, j)
        if b is None:
            return None
        base[j] = b
    order = _precedence_order(L)
    if order is None:
        return None
    return base, tuple(order)


def is_ascending(L: LinkDiagram, base: dict[int, int] | None = None) -> bool:
    """Ascending link diagram test.

    With ``base`` given (component -> edge label), each component is walked from
    the start of that edge; otherwise some basepoint per component must work.
    """
    if base is None:
        return ascending_certificate(L) is not None
    for j, e in base.items():
        comp = L.components[j]
        if e not in comp:
            raise DiagramError(f"edge {e} is not on component {j}")
        if L.has_self_crossings(j):
            edges_at = [x for x in comp if L.shadow.head[x][0] >= 0]
            if not _component_ascending_from(L, j, edges_at.index(e)):
                return False
    return _precedence_order(L) is not None


@dataclass(frozen=True)
class LinkingData:
    lk: tuple[tuple[int, ...], ...]
    total: int
    under_counts: tuple[int, ...]

    def under_parity_matches(self) -> bool:
        k = len(self.under_counts)
        return all(
            self.under_counts[i] % 2 == sum(self.lk[i][j] for j in range(k) if j != i) % 2 for i in range(k)
        )


def linking_data(L: LinkDiagram) -> LinkingData:
    """Pairwise linking numbers, total linking number and ``|U(K_i)|``."""
    k = L.num_components
    twice = [[0] * k for _ in range(k)]
    under = [0] * k
    for v in range(L.n):
        a, b = L.shadow.strand_comp[v]
        if a == b:
            continue
        sg = L.sign(v)
        twice[a][b] += sg
        twice[b][a] += sg
        under[L.under_component(v)] += 1
    lk = tuple(tuple(x // 2 for x in row) for row in twice)
    total = sum(lk[i][j] for i in range(k) for j in range(i + 1, k))
    return LinkingData(lk, total, tuple(under))


# --------------------------------------------------------------------------
# binary labels


@dataclass(frozen=True)
class BinaryLabel:
    bits: tuple[int, ...]  # indexed by crossing index (input order)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @classmethod
    def parse(cls, text: str) -> "BinaryLabel":
        if not set(text) <= {"0", "1"}:
            raise DiagramError(f"bad label {text!r}")
        return cls(tuple(int(c) for c in text))

    def as_int(self) -> int:
        return sum(b << v for v, b in enumerate(self.bits))


def zero_label_mask(shadow: Shadow) -> int:
    """Mask whose checkerboard label is all zeros."""
    colors = shadow.face_colors
    m = 0
    for v in range(shadow.n):
        # under pair p -> over pair q = 1 - p; label 0 needs corner (q, q+1) black
        q = 0 if colors[shadow.corner_face[(v, 0)]] == 1 else 1
        if 1 - q:
            m |= 1 << v
    return m


def checkerboard_and_label(L: LinkDiagram) -> BinaryLabel:
    """Per-crossing bit: 0 when the overstrand sweeps a black region rotating
    counterclockwise onto the understrand, else 1."""
    if L.num_components != 1:
        raise DiagramError("binary labels are defined for knot diagrams")
    colors = L.shadow.face_colors
    bits = []
    for v in range(L.n):
        q = 1 - L.under_pair(v)
        black = colors[L.shadow.corner_face[(v, q)]] == 1
        bits.append(0 if black else 1)
    return BinaryLabel(tuple(bits))


def label_to_mask(shadow: Shadow, label: BinaryLabel | str | int) -> int:
    if isinstance(label, str):
        label = BinaryLabel.parse(label)
    if isinstance(label, BinaryLabel):
        if len(label.bits) != shadow.n:
            raise DiagramError(f"label length {len(label.bits)} != crossing count {shadow.n}")
        label = label.as_int()
    return label ^ zero_label_mask(shadow)


def mask_to_label_int(shadow: Shadow, mask: int) -> int:
    return mask ^ zero_label_mask(shadow)


def diagram_from_label(base: LinkDiagram | Shadow, label: BinaryLabel | str | int) -> LinkDiagram:
    if isinstance(base, Shadow):
        base = LinkDiagram(base)
    return base.with_mask(label_to_mask(base.shadow, label))


def classify_component(L: LinkDiagram, j: int, labeling: ComponentLabeling | None = None) -> str:
    """One of ``has_self_crossings``, ``type_C``, ``simple`` or ``plain``."""
    if not 0 <= j < L.num_components:
        raise IndexError(f"component index {j} out of range")
    if L.has_self_crossings(j):
        return "has_self_crossings"
    _, under = over_under_sets(L, j)
    if len(under) == 1:
        return "type_C"
    order = (labeling or felicitous_labeling(L)).order
    pos = order.index(j)
    if all(precedes(L, i, j) for i in order[:pos]) and all(precedes(L, j, k) for k in order[pos + 1:]):
        return "simple"
    return "plain"


def felicitous_orders(L: LinkDiagram) -> list[tuple[int, ...]]:
    """All felicitous orders, by brute force (used as a test oracle)."""
    return [p for p in permutations(range(L.num_components)) if is_felicitous(L, p)]
