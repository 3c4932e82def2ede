"""Edge update streams: generators and the text file format.

File format (UTF-8, newline terminated)::

    n=<int> alpha=<int>
    + <u> <v>
    - <u> <v>

Vertex ids are 0-based; pairs are unordered.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

INSERT = "+"
DELETE = "-"


class StreamFormatError(ValueError):
    pass


class Update(NamedTuple):
    kind: str
    u: int
    v: int

    def __str__(self) -> str:
        return f"{self.kind} {self.u} {self.v}"


@dataclass
class UpdateStream:
    n: int
    alpha_hint: int
    ops: list[Update] = field(default_factory=list)

    def __iter__(self) -> Iterator[Update]:
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def final_edges(self) -> set[tuple[int, int]]:
        edges: set[tuple[int, int]] = set()
        for kind, u, v in self.ops:
            key = (min(u, v), max(u, v))
            if kind == INSERT:
                edges.add(key)
            else:
                edges.discard(key)
        return edges

    def density_bound(self) -> int:
        """Largest ceil(m / (n - 1)) seen over the replay (whole vertex set only).

        A cheap sanity figure, not the arboricity: it only looks at the full
        vertex set, never at denser induced subgraphs.
        """
        if self.n < 2:
            return 0
        m = best = 0
        for kind, _, _ in self.ops:
            m += 1 if kind == INSERT else -1
            best = max(best, -(-m // (self.n - 1)))
        return best


# -- serialization ------------------------------------------------------

_HEADER = re.compile(r"n=(0|[1-9][0-9]*) alpha=(0|[1-9][0-9]*)")
_OP = re.compile(r"([+-]) (0|[1-9][0-9]*) (0|[1-9][0-9]*)")


def serialize(stream: UpdateStream) -> str:
    lines = [f"n={stream.n} alpha={stream.alpha_hint}"]
    lines.extend(f"{kind} {u} {v}" for kind, u, v in stream.ops)
    return "\n".join(lines) + "\n"


def parse(text: str) -> UpdateStream:
    """Parse the stream format, rejecting anything not bit-exact.

    Besides syntax, each event must be legal against the edges present at
    that point (no duplicate insert, no delete of an absent edge).
    """
    if not text.endswith("\n"):
        raise StreamFormatError("stream must end with a newline")
    lines = text[:-1].split("\n")
    header = _HEADER.fullmatch(lines[0])
    if header is None:
        raise StreamFormatError(f"line 1: bad header {lines[0]!r}")
    n, alpha = int(header.group(1)), int(header.group(2))
    if n < 1 or alpha < 1:
        raise StreamFormatError("line 1: n and alpha must be positive")
    stream = UpdateStream(n, alpha)
    present: set[tuple[int, int]] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        match = _OP.fullmatch(line)
        if match is None:
            raise StreamFormatError(f"line {lineno}: malformed event {line!r}")
        kind, u, v = match.group(1), int(match.group(2)), int(match.group(3))
        if u >= n or v >= n:
            raise StreamFormatError(f"line {lineno}: vertex id out of range")
        if u == v:
            raise StreamFormatError(f"line {lineno}: self-loop")
        key = (min(u, v), max(u, v))
        if kind == INSERT:
            if key in present:
                raise StreamFormatError(f"line {lineno}: edge exists")
            present.add(key)
        else:
            if key not in present:
                raise StreamFormatError(f"line {lineno}: edge absent")
            present.remove(key)
        stream.ops.append(Update(kind, u, v))
    return stream


def load(path) -> UpdateStream:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse(fh.read())


def dump(stream: UpdateStream, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize(stream))


# -- generators ---------------------------------------------------------


class _Forest:
    """Acyclic edge set with a union-find that may lag behind deletions.

    After a deletion the union-find still merges everything it merged
    before, so it over-approximates connectivity: "not connected" answers
    stay exact and inserting on them can never close a cycle. It is rebuilt
    once the deletions since the last rebuild reach an eighth of the edges,
    which keeps rebuilds amortised O(1) per operation.
    """

    def __init__(self) -> None:
        self.edges: set[tuple[int, int]] = set()
        self._parent: dict[int, int] = {}
        self._stale = 0

    def _find(self, x: int) -> int:
        parent = self._parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    def _rebuild(self) -> None:
        self._parent = {}
        for u, v in sorted(self.edges):
            self._parent[self._find(u)] = self._find(v)
        self._stale = 0

    def connected(self, u: int, v: int) -> bool:
        if self._stale and self._stale * 8 >= len(self.edges):
            self._rebuild()
        return self._find(u) == self._find(v)

    def add(self, u: int, v: int) -> None:
        ru, rv = self._find(u), self._find(v)
        assert ru != rv, "forest edge would close a cycle"
        self._parent[ru] = rv
        self.edges.add((u, v))

    def remove(self, u: int, v: int) -> None:
        self.edges.remove((u, v))
        self._stale += 1


def gen_forest_union(
    n: int,
    k: int,
    updates: int,
    churn: float = 0.0,
    seed: int = 0,
    hubs: int = 0,
) -> UpdateStream:
    """Random stream whose graph is always a union of ``k`` forests.

    Each step deletes a uniformly random present edge with probability
    ``churn`` (an insert is forced while the graph is empty), otherwise
    inserts a random new edge into the first forest that stays acyclic.
    When no insertion can be found the step becomes a deletion.

    With ``hubs > 0`` half of the inserted edges get one endpoint among
    vertices ``0..hubs-1``, which grows the large in-neighbourhoods that
    drive long chain reactions.
    """
    if n < 2 or k < 1 or updates < 1 or not 0.0 <= churn <= 1.0:
        raise ValueError("need n >= 2, k >= 1, updates >= 1, 0 <= churn <= 1")
    if not 0 <= hubs <= n:
        raise ValueError("hubs must lie in [0, n]")
    rng = random.Random(seed)
    forests = [_Forest() for _ in range(k)]
    owner: dict[tuple[int, int], int] = {}
    edge_list: list[tuple[int, int]] = []
    position: dict[tuple[int, int], int] = {}
    capacity = k * (n - 1)
    stream = UpdateStream(n, k)

    def delete() -> None:
        i = rng.randrange(len(edge_list))
        edge = edge_list[i]
        last = edge_list.pop()
        if last != edge:
            edge_list[i] = last
            position[last] = i
        del position[edge]
        forests[owner.pop(edge)].remove(*edge)
        stream.ops.append(Update(DELETE, *edge))

    def try_insert() -> bool:
        if len(edge_list) >= capacity:
            return False
        for _ in range(64):
            if hubs and rng.random() < 0.5:
                u, v = rng.randrange(hubs), rng.randrange(n)
                if u == v:
                    continue
            else:
                u, v = rng.sample(range(n), 2)
            edge = (min(u, v), max(u, v))
            if edge in owner:
                continue
            for idx, forest in enumerate(forests):
                if not forest.connected(*edge):
                    forest.add(*edge)
                    owner[edge] = idx
                    position[edge] = len(edge_list)
                    edge_list.append(edge)
                    stream.ops.append(Update(INSERT, u, v))
                    return True
        return False

    for _ in range(updates):
        if edge_list and rng.random() < churn:
            delete()
        elif not try_insert():
            delete()
    return stream


def gen_preferential(n: int, m_per_vertex: int, seed: int = 0) -> UpdateStream:
    """Insert-only preferential attachment stream.

    Vertex ``t`` attaches to ``min(t, m_per_vertex)`` distinct earlier
    vertices drawn proportionally to degree + 1. Orienting every edge from
    the newer vertex gives out-degree at most ``m_per_vertex``, so that is
    the arboricity hint.
    """
    if n < 1 or m_per_vertex < 1:
        raise ValueError("need n >= 1 and m_per_vertex >= 1")
    rng = random.Random(seed)
    stream = UpdateStream(n, m_per_vertex)
    # one ticket per vertex plus one per incident edge end
    tickets: list[int] = []
    for t in range(n):
        targets: set[int] = set()
        want = min(t, m_per_vertex)
        while len(targets) < want:
            targets.add(rng.choice(tickets))
        for x in sorted(targets):
            stream.ops.append(Update(INSERT, t, x))
            tickets.append(x)
            tickets.append(t)
        tickets.append(t)
    return stream


def gen_hub_leaf(
    n: int,
    hubs: int,
    k: int,
    updates: int,
    churn: float = 0.0,
    seed: int = 0,
    hub_edge_rate: float = 0.1,
    leaf_second: float = 0.9,
) -> UpdateStream:
    """Stream over hubs ``0..hubs-1`` and leaves ``hubs..n-1``.

    Every leaf keeps at most ``k`` edges, all to hubs, and every hub keeps at
    most ``k`` edges to lower-numbered hubs. Orienting leaf -> hub and
    higher hub -> lower hub is acyclic with out-degree <= k, so the graph
    has arboricity <= k throughout. Hubs end up with large in-neighbourhoods
    of unresolved leaves, which is what fills active sets.

    An insertion between two MIS vertices evicts its second endpoint, so
    leaf edges are written hub first with probability ``leaf_second``; that
    keeps hubs in the MIS and leaves hosted by them.
    """
    if not 1 <= hubs < n or k < 1 or updates < 1 or not 0.0 <= churn <= 1.0:
        raise ValueError("need 1 <= hubs < n, k >= 1, updates >= 1, 0 <= churn <= 1")
    rng = random.Random(seed)
    up: list[set[int]] = [set() for _ in range(n)]  # edges towards hubs (lower ids)
    edge_list: list[tuple[int, int]] = []
    position: dict[tuple[int, int], int] = {}
    stream = UpdateStream(n, k)

    def delete() -> None:
        i = rng.randrange(len(edge_list))
        edge = edge_list[i]
        last = edge_list.pop()
        if last != edge:
            edge_list[i] = last
            position[last] = i
        del position[edge]
        lo, hi = edge
        up[hi].remove(lo)
        stream.ops.append(Update(DELETE, *edge))

    def try_insert() -> bool:
        for _ in range(64):
            if hubs > 1 and rng.random() < hub_edge_rate:
                lo, hi = sorted(rng.sample(range(hubs), 2))
            else:
                lo, hi = rng.randrange(hubs), rng.randrange(hubs, n)
            if lo in up[hi] or len(up[hi]) >= k:
                continue
            up[hi].add(lo)
            position[(lo, hi)] = len(edge_list)
            edge_list.append((lo, hi))
            first = leaf_second if hi >= hubs else 0.5
            stream.ops.append(Update(INSERT, *((lo, hi) if rng.random() < first else (hi, lo))))
            return True
        return False

    for _ in range(updates):
        if edge_list and rng.random() < churn:
            delete()
        elif not try_insert():
            if not edge_list:
                raise ValueError("no insertable edge; graph too small for these parameters")
            delete()
    return stream
