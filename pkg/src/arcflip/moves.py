"""Arcs, semi-arcs and the three crossing-switch moves on a fixed shadow."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .diagram import DiagramError, LinkDiagram, Shadow

__all__ = [
    "MoveError",
    "Arc",
    "AccMove",
    "KinunoMove",
    "MoveLog",
    "LogEntry",
    "enumerate_arcs",
    "resolve_arc",
    "apply_acc",
    "apply_kinuno",
    "apply_move",
    "replay",
    "semi_arc_endpoints",
    "arc_moves",
]


class MoveError(DiagramError):
    """A move that cannot be applied to the diagram at hand."""


@dataclass(frozen=True)
class Arc:
    """A maximal piece of one component between two undercrossings.

    ``start`` and ``end`` are crossing ids; the arc leaves ``start`` as the
    outgoing understrand and arrives at ``end`` as the incoming understrand.
    A closed arc (component with no undercrossing) has both set to ``None``.
    """

    component: int
    start: int | None
    end: int | None
    edges: tuple[int, ...]
    overs: tuple[int, ...]

    @property
    def closed(self) -> bool:
        return self.start is None

    @property
    def selector(self) -> tuple[int, int]:
        if self.start is None:
            raise MoveError("a closed arc has no selector")
        return (self.start, 2)


@dataclass(frozen=True)
class AccMove:
    """Arc crossing change on the arc selected by ``(crossing, slot)``.

    Slot 2 picks the arc leaving the crossing as understrand, slot 0 the arc
    arriving there.  Selection happens against the diagram the move is
    applied to, so logs bind late.
    """

    crossing: int
    slot: int = 2
    variant: int = 1

    def __str__(self) -> str:
        return f"ACC{self.variant} c{self.crossing}.{self.slot}"


@dataclass(frozen=True)
class KinunoMove:
    edge: int

    def __str__(self) -> str:
        return f"KIN e{self.edge}"


Move = Union[AccMove, KinunoMove]


def enumerate_arcs(L: LinkDiagram) -> list[Arc]:
    sh = L.shadow
    arcs: list[Arc] = []
    for j, comp in enumerate(sh.components):
        entries = [sh.head[e] for e in comp]
        m = len(comp)
        under_idx = [k for k, (v, s) in enumerate(entries) if v >= 0 and L.is_under(v, s)]
        if not under_idx:
            overs = tuple(sh.ids[v] for v, _ in entries if v >= 0)
            arcs.append(Arc(j, None, None, tuple(comp), overs))
            continue
        for a, ua in enumerate(under_idx):
            ub = under_idx[(a + 1) % len(under_idx)]
            span = (ub - ua) % m or m
            ks = [(ua + 1 + t) % m for t in range(span)]
            edges = tuple(comp[k] for k in ks)
            overs = tuple(sh.ids[entries[k][0]] for k in ks[:-1])
            arcs.append(Arc(j, sh.ids[entries[ua][0]], sh.ids[entries[ub][0]], edges, overs))
    return arcs


def resolve_arc(L: LinkDiagram, crossing: int, slot: int) -> Arc:
    L.index(crossing)  # rejects unknown ids
    if slot not in (0, 2):
        raise MoveError(f"slot {slot} at crossing {crossing} is not an understrand slot")
    for arc in enumerate_arcs(L):
        if arc.closed:
            continue
        if slot == 2 and arc.start == crossing:
            return arc
        if slot == 0 and arc.end == crossing:
            return arc
    raise MoveError(f"no arc at c{crossing}.{slot}")  # pragma: no cover - every crossing has one


def apply_acc(L: LinkDiagram, m: AccMove) -> LinkDiagram:
    if m.variant not in (1, 2):
        raise MoveError(f"unknown variant {m.variant}")
    arc = resolve_arc(L, m.crossing, m.slot)
    a, b = L.index(arc.start), L.index(arc.end)  # type: ignore[arg-type]
    if a != b:
        return L.switched((a, b))
    return L.switched((a,)) if m.variant == 1 else L


def semi_arc_endpoints(L: LinkDiagram, edge: int) -> tuple[int, int]:
    sh = L.shadow
    if edge not in sh.head:
        raise MoveError(f"no edge {edge}")
    t, h = sh.tail[edge][0], sh.head[edge][0]
    if t < 0:
        raise MoveError("the crossingless circle has no semi-arcs")
    return t, h


def apply_kinuno(L: LinkDiagram, s: KinunoMove | int) -> LinkDiagram:
    edge = s.edge if isinstance(s, KinunoMove) else s
    a, b = semi_arc_endpoints(L, edge)
    if a == b:
        return L
    return L.switched((a, b))


def apply_move(L: LinkDiagram, m: Move) -> LinkDiagram:
    if isinstance(m, AccMove):
        return apply_acc(L, m)
    return apply_kinuno(L, m)


def arc_moves(L: LinkDiagram, variant: int = 1) -> list[tuple[Arc, AccMove]]:
    return [(a, AccMove(a.start, 2, variant)) for a in enumerate_arcs(L) if not a.closed]  # type: ignore[arg-type]


# --------------------------------------------------------------------------
# logs


@dataclass(frozen=True)
class LogEntry:
    move: Move
    pre_hash: str | None = None

    def __str__(self) -> str:
        return f"{self.move} @{self.pre_hash}" if self.pre_hash else str(self.move)


_ACC = re.compile(r"^ACC([12])\s+c(-?\d+)\.(\d)$")
_KIN = re.compile(r"^KIN\s+e(-?\d+)$")


class MoveLog:
    """Ordered moves, each with the digest of the diagram it was applied to."""

    def __init__(self, entries: Iterable[LogEntry] = ()):
        self.entries: list[LogEntry] = list(entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LogEntry]:
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MoveLog) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"MoveLog({[str(e) for e in self.entries]})"

    @property
    def moves(self) -> list[Move]:
        return [e.move for e in self.entries]

    def record(self, L: LinkDiagram, m: Move) -> LinkDiagram:
        """Append ``m`` and return the diagram after applying it to ``L``."""
        self.entries.append(LogEntry(m, L.digest))
        return apply_move(L, m)

    def extend(self, other: "MoveLog") -> None:
        self.entries.extend(other.entries)

    def to_text(self) -> str:
        return "".join(f"{e}\n" for e in self.entries)

    @classmethod
    def from_text(cls, text: str) -> "MoveLog":
        entries = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            digest = None
            if "@" in line:
                line, digest = (p.strip() for p in line.split("@", 1))
            if mo := _ACC.match(line):
                mv: Move = AccMove(int(mo.group(2)), int(mo.group(3)), int(mo.group(1)))
            elif mo := _KIN.match(line):
                mv = KinunoMove(int(mo.group(1)))
            else:
                raise MoveError(f"line {lineno}: cannot parse move {raw.strip()!r}")
            entries.append(LogEntry(mv, digest or None))
        return cls(entries)


def replay(L0: LinkDiagram, log: MoveLog | Iterable[Move], check_hashes: bool = True) -> LinkDiagram:
    L = L0
    entries = log.entries if isinstance(log, MoveLog) else [LogEntry(m) for m in log]
    for k, entry in enumerate(entries):
        if check_hashes and entry.pre_hash and entry.pre_hash != L.digest:
            raise MoveError(f"step {k + 1}: diagram digest {L.digest} does not match log {entry.pre_hash}")
        try:
            L = apply_move(L, entry.move)
        except MoveError as exc:
            raise MoveError(f"step {k + 1} ({entry.move}): {exc}") from exc
    return L


# --------------------------------------------------------------------------
# mask-level arc data for searches over a fixed shadow


def arc_table(shadow: Shadow, mask: int) -> list[tuple[int, int, int, int]]:
    """``(start index, end index, over count, component)`` per non-closed arc."""
    out = []
    for j, pas in enumerate(shadow.passages):
        unders = [k for k, (v, s) in enumerate(pas) if (s & 1) == (mask >> v) & 1]
        if not unders:
            continue
        m = len(pas)
        for a, ua in enumerate(unders):
            ub = unders[(a + 1) % len(unders)]
            span = (ub - ua) % m or m
            out.append((pas[ua][0], pas[ub][0], span - 1, j))
    return out


def successor_masks(shadow: Shadow, mask: int, variant: int = 1) -> list[tuple[int, int]]:
    """``(start index, resulting mask)`` for each ACC move available at ``mask``."""
    out = []
    for a, b, _, _ in arc_table(shadow, mask):
        if a != b:
            out.append((a, mask ^ (1 << a) ^ (1 << b)))
        elif variant == 1:
            out.append((a, mask ^ (1 << a)))
        else:
            out.append((a, mask))
    return out
