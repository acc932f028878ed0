"""Combinatorial skeletons of tropical curves and the five trivalent
connected genus-3 graphs."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import Disconnected


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices 0..n-1; loops and parallel edges allowed."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge {(a, b)} out of range for {self.n} vertices")
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def loops(self) -> int:
        return sum(a == b for a, b in self.edges)

    def is_simple(self) -> bool:
        return self.loops() == 0 and len(set(self.edges)) == len(self.edges)

    def n_components(self) -> int:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        return len({find(x) for x in range(self.n)})

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        return Multigraph(self.n, tuple((perm[a], perm[b]) for a, b in self.edges))

    def to_json(self) -> dict:
        return {"vertices": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Multigraph":
        return cls(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]))


def _prune_and_suppress(n: int, edges: list[list[int]]) -> Multigraph:
    alive = set(range(n))
    edges = [list(e) for e in edges]

    def incident(v):
        return [i for i, (a, b) in enumerate(edges) if a == v or b == v]

    def deg(v):
        return sum((a == v) + (b == v) for a, b in edges)

    # prune leaves one at a time; a lone vertex with no edges stays
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if deg(v) == 1 and len(alive) > 1:
                edges.pop(incident(v)[0])
                alive.discard(v)
                changed = True
                break
    # a degree-2 vertex carrying one loop is a bare cycle and stays
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            inc = incident(v)
            if deg(v) != 2 or len(inc) != 2:
                continue
            (a1, b1), (a2, b2) = edges[inc[0]], edges[inc[1]]
            x = b1 if a1 == v else a1
            y = b2 if a2 == v else a2
            for i in sorted(inc, reverse=True):
                edges.pop(i)
            edges.append([x, y])
            alive.discard(v)
            changed = True
            break
    ids = {v: k for k, v in enumerate(sorted(alive))}
    return Multigraph(len(ids), tuple((ids[a], ids[b]) for a, b in edges))


def skeletonize_graph(m: Multigraph) -> Multigraph:
    return _prune_and_suppress(m.n, [list(e) for e in m.edges])


def skeletonize(c) -> Multigraph:
    """Delete rays, prune leaves, suppress degree-2 vertices."""
    return _prune_and_suppress(len(c.positions), [list(e) for e in c.edges])


def multigraph_genus(m: Multigraph) -> int:
    if m.n == 0 or m.n_components() != 1:
        raise Disconnected("genus is defined for connected graphs")
    return len(m.edges) - m.n + 1


class Genus3Class(str, enum.Enum):
    K4 = "K4"
    TWO_BIGON_CHAIN = "TwoBigonChain"
    THETA_WITH_LOOP = "ThetaWithLoop"
    LOOP_CHAIN = "LoopChain"
    LOLLIPOP = "Lollipop"
    OTHER = "Other"


def _is_trivalent_genus3(m: Multigraph) -> bool:
    return (
        m.n == 4
        and len(m.edges) == 6
        and m.n_components() == 1
        and all(m.degree(v) == 3 for v in range(m.n))
    )


def classify_genus3(m: Multigraph) -> Genus3Class:
    s = skeletonize_graph(m)
    if not _is_trivalent_genus3(s):
        return Genus3Class.OTHER
    loops = s.loops()
    if loops == 3:
        return Genus3Class.LOLLIPOP
    if loops == 2:
        return Genus3Class.LOOP_CHAIN
    if loops == 1:
        return Genus3Class.THETA_WITH_LOOP
    return Genus3Class.K4 if s.is_simple() else Genus3Class.TWO_BIGON_CHAIN


def is_lollipop(m: Multigraph) -> bool:
    return classify_genus3(m) is Genus3Class.LOLLIPOP
