"""Breadth-first search over crossing assignments of a fixed shadow."""
from __future__ import annotations

import os
from collections import deque
from typing import Callable, Iterable, Iterator

from .diagram import DiagramError, Shadow

DEFAULT_LIMIT = 20


class LimitExceeded(DiagramError):
    """A search or enumeration would exceed the configured size limit."""


def limit_from_env(default: int = DEFAULT_LIMIT) -> int:
    raw = os.environ.get("ARCFLIP_LIMIT")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise DiagramError(f"ARCFLIP_LIMIT must be an integer, got {raw!r}") from exc


def check_limit(n: int, limit: int | None, what: str = "crossings") -> None:
    lim = limit_from_env() if limit is None else limit
    if n > lim:
        raise LimitExceeded(f"{n} {what} exceeds the limit of {lim}")


class Strands:
    """Passage data of a shadow for fast arc moves on masks.

    ``passages[c]`` lists ``(crossing index, entry slot parity)`` along
    component ``c``; a passage is under at ``mask`` when its parity equals the
    crossing's mask bit.
    """

    def __init__(self, shadow: Shadow):
        self.shadow = shadow
        self.n = len(shadow.ids)
        self.verts = [tuple(v for v, _ in pas) for pas in shadow.passages]
        self.par = [tuple(s & 1 for _, s in pas) for pas in shadow.passages]
        where: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for c, vs in enumerate(self.verts):
            for k, v in enumerate(vs):
                where[v].append((c, k))
        self.where = where

    def under_passage(self, mask: int, v: int) -> tuple[int, int]:
        bit = (mask >> v) & 1
        for c, k in self.where[v]:
            if self.par[c][k] == bit:
                return c, k
        raise AssertionError("no under passage")  # pragma: no cover

    def arc_end(self, mask: int, v: int, forward: bool) -> int:
        """Other endpoint of the arc at ``v``'s understrand, walking forward
        (the arc leaving ``v``) or backward (the arc arriving there)."""
        c, k = self.under_passage(mask, v)
        vs, par = self.verts[c], self.par[c]
        m = len(vs)
        step = 1 if forward else -1
        j = k
        for _ in range(m):
            j = (j + step) % m
            w = vs[j]
            if par[j] == (mask >> w) & 1:
                return w
        raise AssertionError("unreachable")  # pragma: no cover

    def successors(self, mask: int, variant: int = 1) -> list[tuple[int, int]]:
        """``(arc start index, mask after ACC)`` for each arc, in strand order."""
        out = []
        for vs, par in zip(self.verts, self.par):
            unders = [v for v, p in zip(vs, par) if p == (mask >> v) & 1]
            for i, a in enumerate(unders):
                b = unders[(i + 1) % len(unders)]
                if a != b:
                    out.append((a, mask ^ (1 << a) ^ (1 << b)))
                else:
                    out.append((a, mask ^ (1 << a) if variant == 1 else mask))
        return out


def bfs_masks(
    start: int,
    successors: Callable[[int], Iterable[tuple[int, int]]],
    goal: Callable[[int], bool] | None = None,
    max_states: int | None = None,
) -> tuple[dict[int, tuple[int, int] | None], int | None]:
    """BFS from ``start``; returns the parent map and the first goal found.

    Parent entries are ``(previous mask, move key)``.  Without a goal the
    whole reachable set is explored.
    """
    parent: dict[int, tuple[int, int] | None] = {start: None}
    if goal is not None and goal(start):
        return parent, start
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for key, nxt in successors(cur):
            if nxt in parent:
                continue
            parent[nxt] = (cur, key)
            if max_states is not None and len(parent) > max_states:
                raise LimitExceeded(f"search visited more than {max_states} states")
            if goal is not None and goal(nxt):
                return parent, nxt
            queue.append(nxt)
    return parent, None


def path_to(parent: dict[int, tuple[int, int] | None], target: int) -> list[int]:
    """Move keys from the BFS root to ``target``."""
    keys = []
    cur = target
    while parent[cur] is not None:
        prev, key = parent[cur]  # type: ignore[misc]
        keys.append(key)
        cur = prev
    keys.reverse()
    return keys


def iter_masks(n: int) -> Iterator[int]:
    return iter(range(1 << n))
