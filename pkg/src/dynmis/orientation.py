"""Dynamic graph with a bounded out-degree edge orientation.

Insertions orient the new edge away from its first endpoint; whenever a
vertex then exceeds the out-degree cap, every one of its out-edges is
reversed (the Brodal-Fagerberg reset rule). Every reversal is reported in
a :class:`FlipLog` so that callers holding per-edge state can repair it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field


class GraphError(ValueError):
    """Illegal edge update (self-loop, duplicate, missing edge, bad id)."""


class OrientationError(RuntimeError):
    """The flip cascade did not settle within its budget.

    Only happens when the graph has no orientation respecting the cap,
    i.e. the arboricity promise behind ``d_max`` was broken.
    """


@dataclass
class FlipLog:
    """Orientation changes made by one update, in execution order.

    ``inserted`` is the orientation given to a newly inserted edge before
    any flip; each ``(u, v)`` in ``flips`` means the edge that was ``u -> v``
    is now ``v -> u``.
    """

    flips: list[tuple[int, int]] = field(default_factory=list)
    inserted: tuple[int, int] | None = None

    def __len__(self) -> int:
        return len(self.flips)


class OrientedGraph:
    """Simple undirected graph on ``n`` fixed vertices, stored oriented.

    ``out_adj[v]`` and ``in_adj[v]`` mirror each other exactly; the
    undirected edge set is implied by them.
    """

    def __init__(self, n: int, d_max: int) -> None:
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        if d_max < 1:
            raise GraphError("out-degree cap must be positive")
        self.n = n
        self.d_max = d_max
        self.out_adj: list[set[int]] = [set() for _ in range(n)]
        self.in_adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        self.total_flips = 0

    # -- queries -------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.out_adj[u] or u in self.out_adj[v]

    def out_neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return sorted(self.out_adj[v])

    def in_neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return sorted(self.in_adj[v])

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.out_adj[v])

    def max_out_degree(self) -> int:
        return max(len(s) for s in self.out_adj)

    def edges(self) -> list[tuple[int, int]]:
        """Oriented edges ``(tail, head)`` in ascending order."""
        return [(u, v) for u in range(self.n) for v in sorted(self.out_adj[u])]

    def undirected_edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.edges())

    def dump(self) -> str:
        return "".join(f"{u} -> {v}\n" for u, v in self.edges())

    # -- updates -------------------------------------------------------

    def insert_oriented(self, u: int, v: int) -> FlipLog:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if self.has_edge(u, v):
            raise GraphError(f"edge exists: {{{u}, {v}}}")
        log = FlipLog(inserted=(u, v))
        self.out_adj[u].add(v)
        self.in_adj[v].add(u)
        self.m += 1
        if len(self.out_adj[u]) <= self.d_max:
            return log

        # A graph with a cap-respecting orientation settles long before this.
        budget = 64 * (self.m + 1) * self.n.bit_length() + 1024
        overfull = [u]
        while overfull:
            w = heapq.heappop(overfull)
            if len(self.out_adj[w]) <= self.d_max:
                continue
            for x in sorted(self.out_adj[w]):
                self._reverse(w, x)
                log.flips.append((w, x))
                if len(self.out_adj[x]) == self.d_max + 1:
                    heapq.heappush(overfull, x)
            if len(log.flips) > budget:
                raise OrientationError(
                    f"flip cascade exceeded {budget} flips; "
                    f"no orientation with out-degree <= {self.d_max}?"
                )
        self.total_flips += len(log.flips)
        return log

    def delete_oriented(self, u: int, v: int) -> FlipLog:
        self._check_vertex(u)
        self._check_vertex(v)
        if v in self.out_adj[u]:
            tail, head = u, v
        elif u in self.out_adj[v]:
            tail, head = v, u
        else:
            raise GraphError(f"edge absent: {{{u}, {v}}}")
        self.out_adj[tail].discard(head)
        self.in_adj[head].discard(tail)
        self.m -= 1
        return FlipLog()

    def _reverse(self, u: int, v: int) -> None:
        self.out_adj[u].remove(v)
        self.in_adj[v].remove(u)
        self.out_adj[v].add(u)
        self.in_adj[u].add(v)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range [0, {self.n})")
