"""Deterministic maximal independent set maintenance for bounded arboricity.

Every update runs four phases:

1. update the MIS (the trivial deletion rule, or the two-stage S+/S-
   chain reaction for an insertion between two MIS vertices);
2. replay the resulting change log against the partition structure,
   still ignoring a newly inserted edge;
3. let the orientation black box insert or delete the edge;
4. replay its flip log, integrating the new edge first.

Each vertex ``v`` partitions its in-neighbours into ``Z_v`` (resolved),
the bucketed active set ``A_v(1..b)``, the bucketed passive set
``P_v(1..b)`` and the residual set ``R_v``. Where a vertex sits at each of
its out-neighbours is a function of a single per-vertex status (resolved,
hosted by ``owner`` at ``bucket``, or residual), which is what lets every
move below touch only ``O(D)`` sets.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable

from sortedcontainers import SortedSet

from .orientation import FlipLog, GraphError, OrientedGraph
from .streams import DELETE, INSERT, Update

# where a vertex currently sits at its out-neighbours
Z, HOSTED, RESIDUAL, DETACHED = range(4)

TraceHook = Callable[[str, tuple], None]


class InvariantViolation(AssertionError):
    """An algorithmic guarantee failed at runtime (strict mode only)."""


class Change(Enum):
    ADDED = "added"
    REMOVED = "removed"


ADDED = Change.ADDED
REMOVED = Change.REMOVED


class ChangeLog(list):
    """Ordered ``(vertex, Change)`` events produced by one update."""

    @property
    def added(self) -> list[int]:
        return [x for x, c in self if c is ADDED]

    @property
    def removed(self) -> list[int]:
        return [x for x, c in self if c is REMOVED]


@dataclass(frozen=True)
class Params:
    n: int
    alpha: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")

    @property
    def s(self) -> int:
        """Bucket capacity."""
        return 8 * self.alpha

    @property
    def b(self) -> int:
        """Bucket count, ceil(log2 n) + 1."""
        return (self.n - 1).bit_length() + 1

    @property
    def d_max(self) -> int:
        return 4 * self.alpha


_EMPTY: frozenset = frozenset()


class VertexState:
    """Partition of one vertex's in-neighbourhood plus its own placement.

    ``a`` is allocated on first use as ``b + 1`` sets (index 0 unused);
    ``p`` maps bucket index to a sorted set and only holds nonempty ones.
    ``a_mask``/``p_mask`` have bit ``i`` set iff that bucket is nonempty.
    """

    __slots__ = (
        "in_mis", "m_minus", "z", "a", "a_count", "a_mask",
        "p", "p_mask", "r", "status", "owner", "bucket",
    )

    def __init__(self) -> None:
        self.in_mis = True
        # z, m_minus and r start as a shared empty placeholder and become
        # real containers on first insertion; most vertices never need them
        self.m_minus: set[int] | frozenset = _EMPTY
        self.z: set[int] | frozenset = _EMPTY
        self.a: list[set[int]] | None = None
        self.a_count = 0
        self.a_mask = 0
        self.p: dict[int, SortedSet] = {}
        self.p_mask = 0
        self.r: SortedSet | frozenset = _EMPTY
        self.status = Z
        self.owner: int | None = None
        self.bucket = 0

    def z_add(self, x: int) -> None:
        if self.z is _EMPTY:
            self.z = set()
        self.z.add(x)

    def r_add(self, x: int) -> None:
        if self.r is _EMPTY:
            self.r = SortedSet()
        self.r.add(x)

    def m_minus_add(self, x: int) -> None:
        if self.m_minus is _EMPTY:
            self.m_minus = set()
        self.m_minus.add(x)

    def active_bucket(self, i: int) -> set[int]:
        return set() if self.a is None else self.a[i]

    def passive_bucket(self, i: int) -> set[int]:
        return set(self.p.get(i, ()))

    def active_members(self) -> list[int]:
        if self.a is None:
            return []
        return [x for bucket in self.a[1:] for x in bucket]


@dataclass
class StagePlan:
    """Transient state of the S+/S- construction for one insertion."""

    s_plus: set[int] = field(default_factory=set)
    s_minus: set[int] = field(default_factory=set)
    processed: set[int] = field(default_factory=set)
    unprocessed_full: list[int] = field(default_factory=list)  # heap
    queue: deque = field(default_factory=deque)
    epoch: int = 1
    process_calls: int = 0
    # (processed, unprocessed) sizes of S- at every epoch end
    epoch_ends: list[tuple[int, int]] = field(default_factory=list)

    @property
    def unprocessed(self) -> set[int]:
        return self.s_minus - self.processed


@dataclass
class UpdateReport:
    """What one ``apply_update`` did; the accounting checks read this."""

    op: Update
    changes: ChangeLog
    plan: StagePlan | None = None
    m_prime: int = 0
    flips: int = 0

    @property
    def splus(self) -> int:
        return len(self.plan.s_plus) if self.plan else 0

    @property
    def sminus(self) -> int:
        return len(self.plan.s_minus) if self.plan else 0


@dataclass
class Counters:
    updates: int = 0
    additions: int = 0
    removals: int = 0
    sum_splus: int = 0
    sum_sminus: int = 0
    flips: int = 0
    elem_ops: int = 0
    guarantee_failures: int = 0
    # growth / full-bucket / epoch / batch / commit
    failure_kinds: dict[str, int] = field(default_factory=dict)


def greedy_induced_mis(
    vertices: Iterable[int], induced_edges: Iterable[tuple[int, int]], alpha: int
) -> set[int]:
    """MIS of the given graph by low-degree peeling.

    Repeatedly takes the lowest-id vertex of degree at most ``2*alpha - 1``
    and deletes it with its neighbours. A graph of arboricity ``alpha``
    always has such a vertex (its average degree is below ``2*alpha``), so
    each pick removes at most ``2*alpha`` vertices and the result has at
    least ``ceil(n' / (2*alpha))`` vertices. If the promise is broken the
    minimum-degree vertex is used instead.
    """
    adj: dict[int, set[int]] = {x: set() for x in vertices}
    for x, y in induced_edges:
        adj[x].add(y)
        adj[y].add(x)
    threshold = 2 * alpha - 1
    degree = {x: len(nbrs) for x, nbrs in adj.items()}
    low = [x for x, d in degree.items() if d <= threshold]
    heapq.heapify(low)
    alive = set(adj)
    chosen: set[int] = set()
    while alive:
        while low and low[0] not in alive:
            heapq.heappop(low)
        if low:
            w = heapq.heappop(low)
        else:
            w = min(alive, key=lambda x: (degree[x], x))
        chosen.add(w)
        gone = [w]
        gone.extend(y for y in adj[w] if y in alive)
        alive.difference_update(gone)
        for y in gone:
            for z in adj[y]:
                if z in alive:
                    degree[z] -= 1
                    if degree[z] == threshold:
                        heapq.heappush(low, z)
    return chosen


class DynamicMIS:
    """Maximal independent set of a dynamic graph on ``n`` vertices.

    ``alpha`` is the promised arboricity bound. With ``strict=True`` the
    runtime guarantees (S+ growth, full buckets during processing, epoch
    bound, commit accounting) raise :class:`InvariantViolation`; otherwise
    failures are only counted in ``stats.guarantee_failures``. MIS validity
    never depends on the promise.
    """

    def __init__(
        self,
        n: int,
        alpha: int = 1,
        *,
        strict: bool = False,
        trace: TraceHook | None = None,
    ) -> None:
        self.params = Params(n, alpha)
        self.n = n
        self.alpha = alpha
        self.s = self.params.s
        self.b = self.params.b
        self.cap = self.s * self.b
        self.strict = strict
        self.trace = trace
        self.graph = OrientedGraph(n, self.params.d_max)
        # the orientation as the partition structure currently knows it;
        # equals self.graph whenever no update is in flight
        self._out: list[set[int]] = [set() for _ in range(n)]
        self._in: list[set[int]] = [set() for _ in range(n)]
        self.state = [VertexState() for _ in range(n)]
        self.stats = Counters()
        self.last: UpdateReport | None = None
        self._pending: tuple[int, int] | None = None
        self._ops = 0

    # -- queries -------------------------------------------------------

    def mis(self) -> set[int]:
        return {v for v, st in enumerate(self.state) if st.in_mis}

    def is_in_mis(self, v: int) -> bool:
        return self.state[v].in_mis

    def out_neighbors(self, v: int) -> list[int]:
        return sorted(self._out[v])

    def in_neighbors(self, v: int) -> list[int]:
        return sorted(self._in[v])

    def vertex_state(self, v: int) -> VertexState:
        return self.state[v]

    def is_active_full(self, v: int) -> bool:
        return self.state[v].a_count == self.cap

    # -- driver --------------------------------------------------------

    def insert(self, u: int, v: int) -> ChangeLog:
        return self.apply_update(Update(INSERT, u, v))

    def delete(self, u: int, v: int) -> ChangeLog:
        return self.apply_update(Update(DELETE, u, v))

    def apply_update(self, op: Update | tuple[str, int, int]) -> ChangeLog:
        kind, u, v = op
        op = Update(kind, u, v)
        for x in (u, v):
            if not 0 <= x < self.n:
                raise GraphError(f"vertex {x} out of range [0, {self.n})")
        present = v in self._out[u] or u in self._out[v]
        if kind == INSERT:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if present:
                raise GraphError(f"edge exists: {{{u}, {v}}}")
        elif kind == DELETE:
            if not present:
                raise GraphError(f"edge absent: {{{u}, {v}}}")
        else:
            raise ValueError(f"unknown update kind {kind!r}")

        self._ops = 0
        report = UpdateReport(op, ChangeLog())
        self.last = report
        if kind == INSERT:
            report.changes = changes = self.handle_insert(u, v)
            self._replay(changes)
            flips = self.graph.insert_oriented(u, v)
            self._emit("phase3", ("insert", u, v, len(flips)))
            self._apply_flips(flips)
        else:
            tail, head = (u, v) if v in self._out[u] else (v, u)
            self._drop_edge(tail, head)
            report.changes = changes = self.handle_delete(u, v)
            self._replay(changes)
            self._sync(tail)
            self._sync(head)
            flips = self.graph.delete_oriented(u, v)
            self._emit("phase3", ("delete", u, v, 0))

        st = self.stats
        st.updates += 1
        st.additions += len(changes.added)
        st.removals += len(changes.removed)
        st.sum_splus += report.splus
        st.sum_sminus += report.sminus
        st.flips += len(flips)
        report.flips = len(flips)
        st.elem_ops += self._ops + len(flips)
        return changes

    def _emit(self, phase: str, event: tuple) -> None:
        if self.trace is not None:
            self.trace(phase, event)

    def _guarantee(self, ok: bool, kind: str, message: str) -> None:
        if ok:
            return
        self.stats.guarantee_failures += 1
        self.stats.failure_kinds[kind] = self.stats.failure_kinds.get(kind, 0) + 1
        if self.strict:
            raise InvariantViolation(message)

    # -- phase 1: updating the MIS ----------------------------------------

    def _set_mis(self, x: int, flag: bool, log: ChangeLog) -> None:
        self.state[x].in_mis = flag
        state = self.state
        for w in self._out[x]:
            if flag:
                state[w].m_minus_add(x)
            else:
                if x in state[w].m_minus:
                    state[w].m_minus.remove(x)
        self._ops += len(self._out[x]) + 1
        log.append((x, ADDED if flag else REMOVED))
        self._emit("phase1", (log[-1][1].value, x))

    def _has_mis_neighbor(self, x: int) -> bool:
        state = self.state
        if state[x].m_minus:
            return True
        self._ops += len(self._out[x])
        if any(state[w].in_mis for w in self._out[x]):
            return True
        # the inserted edge is not in the structure until phase 4
        if self._pending is not None and x in self._pending:
            u, v = self._pending
            return state[v if x == u else u].in_mis
        return False

    def handle_delete(self, u: int, v: int) -> ChangeLog:
        """Phase-1 rule after edge ``{u, v}`` left the structure."""
        log = ChangeLog()
        state = self.state
        if state[v].in_mis and not state[u].in_mis:
            u, v = v, u
        if state[u].in_mis and state[v].in_mis:
            raise InvariantViolation(f"edge {u}-{v} joined two MIS vertices")
        if not state[u].in_mis:
            return log
        if state[v].m_minus:
            return log
        self._ops += len(self._out[v])
        if any(state[w].in_mis for w in self._out[v]):
            return log
        self._set_mis(v, True, log)
        return log

    def handle_insert(self, u: int, v: int) -> ChangeLog:
        """Phase-1 rule for a new edge ``{u, v}``; removes ``v`` if both are in the MIS."""
        state = self.state
        if not (state[u].in_mis and state[v].in_mis):
            return ChangeLog()
        plan = self.build_s_sets(v)
        self.last.plan = plan
        self._pending = (u, v)
        try:
            return self.commit_s_sets(plan, u, v)
        finally:
            self._pending = None

    def build_s_sets(self, v: int) -> StagePlan:
        plan = StagePlan(s_minus={v})
        if not self.is_active_full(v):
            return plan
        self._process_round(v, plan)
        bound = 4 * self.alpha
        while len(plan.s_plus) < bound * len(plan.s_minus):
            if not plan.queue:
                batch = sorted(plan.unprocessed)
                plan.epoch_ends.append((len(plan.processed), len(batch)))
                if not batch:
                    self._guarantee(False, "batch", "enqueued an empty batch")
                    break
                plan.epoch += 1
                self._guarantee(
                    plan.epoch <= self.b, "epoch", f"epoch {plan.epoch} exceeds b={self.b}"
                )
                self._emit("stage1", ("epoch", plan.epoch, len(batch)))
                plan.queue.extend(batch)
            w = plan.queue.popleft()
            if w not in plan.processed:
                self._process_round(w, plan)
        if len(plan.s_minus) > 1:
            self._guarantee(
                len(plan.s_plus) >= bound * len(plan.s_minus), "growth",
                f"|S+|={len(plan.s_plus)} < 4a|S-|={bound * len(plan.s_minus)}",
            )
        return plan

    def _process_round(self, w: int, plan: StagePlan) -> None:
        # the recursion of Process, flattened: keep processing the lowest-id
        # unprocessed S- member with a full active set until none remains
        self.process_vertex(w, plan)
        heap = plan.unprocessed_full
        while heap:
            x = heapq.heappop(heap)
            if x not in plan.processed:
                self.process_vertex(x, plan)

    def process_vertex(self, w: int, plan: StagePlan) -> None:
        assert w in plan.s_minus and w not in plan.processed
        plan.processed.add(w)
        plan.process_calls += 1
        self._emit("stage1", ("process", w))
        st = self.state[w]
        full = st.a_count // self.s
        if st.a_count == self.cap:
            poured = list(st.a[self.b]) + list(st.r)
        elif full == 0:
            self._guarantee(False, "full-bucket", f"process({w}) found no full bucket")
            return
        else:
            poured = list(st.a[full]) + list(st.a[full + 1])
        state = self.state
        s_plus, s_minus = plan.s_plus, plan.s_minus
        for x in poured:
            self._ops += 1
            if x in s_plus:
                continue
            s_plus.add(x)
            for y in self._out[x]:
                self._ops += 1
                if state[y].in_mis and y not in s_minus:
                    s_minus.add(y)
                    if state[y].a_count == self.cap:
                        heapq.heappush(plan.unprocessed_full, y)

    def commit_s_sets(self, plan: StagePlan, u: int, v: int) -> ChangeLog:
        log = ChangeLog()
        state = self.state
        members = plan.s_plus
        edges = []
        for x in members:
            self._ops += len(self._out[x])
            edges.extend((x, y) for y in self._out[x] if y in members)
        m_prime = greedy_induced_mis(members, edges, self.alpha)
        self.last.m_prime = len(m_prime)
        for x in sorted(m_prime):
            self._set_mis(x, True, log)
        for w in sorted(m_prime):
            self._ops += len(self._out[w])
            for y in sorted(self._out[w]):
                if state[y].in_mis:
                    self._set_mis(y, False, log)
        if state[u].in_mis and state[v].in_mis:
            self._set_mis(v, False, log)

        removed = log.removed
        for w in removed:
            candidates = set(self._out[w])
            candidates.update(state[w].active_members())
            for x in sorted(candidates):
                self._ops += 1
                if not state[x].in_mis and not self._has_mis_neighbor(x):
                    self._set_mis(x, True, log)

        added = log.added
        self._guarantee(
            len(added) >= -(-len(members) // (2 * self.alpha)), "commit",
            f"added {len(added)} < |S+|/(2a) with |S+|={len(members)}",
        )
        self._guarantee(len(removed) <= len(plan.s_minus), "commit", "removed more than |S-|")
        self._guarantee(set(removed) <= plan.s_minus, "commit", "removed a vertex outside S-")
        self._guarantee(not set(added) & set(removed), "commit", "added and removed overlap")
        return log

    # -- partition set primitives ------------------------------------------

    def _a_add(self, host: int, i: int, x: int) -> None:
        st = self.state[host]
        if st.a is None:
            st.a = [set() for _ in range(self.b + 1)]
        bucket = st.a[i]
        if len(bucket) >= self.s:
            raise InvariantViolation(f"A_{host}({i}) is already full")
        bucket.add(x)
        st.a_count += 1
        st.a_mask |= 1 << i
        self._ops += 1

    def _a_remove(self, host: int, i: int, x: int) -> None:
        st = self.state[host]
        bucket = st.a[i]
        bucket.remove(x)
        st.a_count -= 1
        if not bucket:
            st.a_mask &= ~(1 << i)
        self._ops += 1

    def _p_add(self, w: int, i: int, x: int) -> None:
        st = self.state[w]
        bucket = st.p.get(i)
        if bucket is None:
            bucket = st.p[i] = SortedSet()
            st.p_mask |= 1 << i
        bucket.add(x)
        self._ops += 1

    def _p_remove(self, w: int, i: int, x: int) -> None:
        st = self.state[w]
        bucket = st.p[i]
        bucket.remove(x)
        if not bucket:
            del st.p[i]
            st.p_mask &= ~(1 << i)
        self._ops += 1

    def _lowest_open(self, v: int) -> int:
        """Lowest non-full bucket of A_v, or b + 1 when A_v is full."""
        return self.state[v].a_count // self.s + 1

    def _resolved(self, x: int) -> bool:
        st = self.state[x]
        return st.in_mis or bool(st.m_minus)

    # -- moving one vertex across all of its out-neighbours --------------

    def _detach(self, x: int) -> None:
        st = self.state[x]
        if st.status == HOSTED:
            self.remove_from_active(x)
            return
        out = self._out[x]
        if st.status == Z:
            for w in out:
                self.state[w].z.remove(x)
        elif st.status == RESIDUAL:
            for w in out:
                self.state[w].r.remove(x)
        self._ops += len(out)
        st.status = DETACHED

    def _attach_resolved(self, x: int) -> None:
        for w in self._out[x]:
            self.state[w].z_add(x)
        self._ops += len(self._out[x])
        self.state[x].status = Z

    def _attach_residual(self, x: int) -> None:
        for w in self._out[x]:
            self.state[w].r_add(x)
        self._ops += len(self._out[x])
        self.state[x].status = RESIDUAL

    def _place(self, x: int) -> None:
        if self._resolved(x):
            self._attach_resolved(x)
        else:
            self.assign_unresolved(x)

    def _sync(self, x: int) -> None:
        """Make x's placement agree with whether it is resolved now."""
        st = self.state[x]
        if st.status != DETACHED:
            if (st.status == Z) == self._resolved(x):
                return
            self._detach(x)
        self._place(x)

    def add_to_active(self, x: int, host: int, i: int) -> None:
        """Host unresolved ``x`` in ``A_host(i)``; passive entries elsewhere."""
        st = self.state[x]
        if st.status not in (RESIDUAL, DETACHED):
            raise InvariantViolation(f"add_to_active({x}) from status {st.status}")
        if not self.state[host].in_mis:
            raise InvariantViolation(f"add_to_active({x}): host {host} not in MIS")
        residual = st.status == RESIDUAL
        for w in self._out[x]:
            if residual:
                self.state[w].r.remove(x)
                self._ops += 1
            if w == host:
                self._a_add(host, i, x)
            else:
                self._p_add(w, i, x)
        st.status, st.owner, st.bucket = HOSTED, host, i

    def remove_from_active(self, x: int, *, refill: bool = True) -> int:
        """Unhost ``x`` (it ends up detached) and close the bucket hole.

        Returns the length of the replacement chain.
        """
        st = self.state[x]
        host, i = st.owner, st.bucket
        self._a_remove(host, i, x)
        for w in self._out[x]:
            if w != host:
                self._p_remove(w, i, x)
        st.status, st.owner, st.bucket = DETACHED, None, 0
        if refill and self.state[host].in_mis:
            return self._refill(host, i)
        return 0

    def _refill(self, u: int, i: int) -> int:
        """Fill the hole at ``A_u(i)`` from R_u, else the highest bucket above i.

        Pulling from ``P_u(j)`` leaves a hole at the previous host's bucket
        ``j > i``, so the chain moves strictly upward and has length <= b.
        """
        state = self.state
        steps = 0
        while True:
            ust = state[u]
            if ust.r:
                y = ust.r[0]
                self.add_to_active(y, u, i)
                return steps + 1
            higher = (ust.a_mask | ust.p_mask) >> (i + 1)
            if not higher:
                return steps
            j = i + higher.bit_length()
            steps += 1
            if ust.a_mask >> j & 1:
                y = min(ust.a[j])
                y_state = state[y]
                self._a_remove(u, j, y)
                self._a_add(u, i, y)
                for w in self._out[y]:
                    if w != u:
                        self._p_remove(w, j, y)
                        self._p_add(w, i, y)
                y_state.bucket = i
                i = j
                continue
            y = ust.p[j][0]
            y_state = state[y]
            old = y_state.owner
            self._a_remove(old, j, y)
            for w in self._out[y]:
                if w == u:
                    self._p_remove(u, j, y)
                    self._a_add(u, i, y)
                elif w == old:
                    self._p_add(old, i, y)
                else:
                    self._p_remove(w, j, y)
                    self._p_add(w, i, y)
            y_state.owner, y_state.bucket = u, i
            if not state[old].in_mis:
                # stale host awaiting its own removal repair
                return steps
            u, i = old, j

    def assign_unresolved(self, x: int) -> None:
        """Place detached, unresolved ``x``: host it at the MIS out-neighbour
        with the smallest active set, or make it residual everywhere."""
        best = None
        best_key = None
        state = self.state
        for c in self._out[x]:
            cst = state[c]
            if cst.in_mis:
                key = (cst.a_count, c)
                if best_key is None or key < best_key:
                    best, best_key = c, key
        self._ops += len(self._out[x])
        if best is not None and best_key[0] < self.cap:
            self.add_to_active(x, best, self._lowest_open(best))
        else:
            self._attach_residual(x)

    # -- phase 2: replaying the change log -------------------------------

    def _replay(self, log: ChangeLog) -> None:
        for x, change in log:
            self._emit("phase2", (change.value, x))
            if change is ADDED:
                self.repair_after_addition(x)
            else:
                self.repair_after_removal(x)

    def repair_after_removal(self, v: int) -> None:
        for u in sorted(self._out[v] | {v}):
            self._sync(u)
        st = self.state[v]
        if not st.a_count:
            return
        members = sorted(st.active_members())
        for x in members:
            self.remove_from_active(x, refill=False)
        for x in members:
            self._place(x)

    def repair_after_addition(self, v: int) -> None:
        for u in sorted(self._out[v] | {v}):
            self._sync(u)
        self._populate(v)

    def _populate(self, v: int) -> None:
        st = self.state[v]
        if not st.in_mis:
            return
        while st.a_count < self.cap and st.r:
            self.add_to_active(st.r[0], v, self._lowest_open(v))
        # pull passive vertices down while that lowers their bucket index
        while st.a_count < self.cap and st.p_mask:
            j = st.p_mask.bit_length() - 1
            if self._lowest_open(v) >= j:
                break
            y = st.p[j][0]
            self.remove_from_active(y)
            self.add_to_active(y, v, self._lowest_open(v))

    # -- phase 4: orientation changes ------------------------------------

    def _apply_flips(self, log: FlipLog) -> None:
        if log.inserted is not None:
            self.handle_flip(*log.inserted, new_edge=True)
        for a, b in log.flips:
            self._emit("phase4", ("flip", a, b))
            self.handle_flip(b, a)

    def handle_flip(self, u: int, v: int, *, new_edge: bool = False) -> None:
        """Integrate edge ``u -> v``: a new edge, or a flip of ``v -> u``."""
        state = self.state
        ust, vst = state[u], state[v]
        if not new_edge:
            if vst.status == Z:
                ust.z.remove(v)
                self._ops += 1
            elif vst.status == HOSTED:
                if vst.owner == u:
                    self.remove_from_active(v)
                else:
                    self._p_remove(u, vst.bucket, v)
            elif vst.status == RESIDUAL:
                ust.r.remove(v)
                self._ops += 1
            if vst.in_mis:
                if v in ust.m_minus:
                    ust.m_minus.remove(v)
            self._out[v].remove(u)
            self._in[u].remove(v)
        # u may just have lost its only MIS in-neighbour
        if ust.status == Z and not self._resolved(u):
            self._detach(u)
        self._out[u].add(v)
        self._in[v].add(u)
        if ust.in_mis:
            vst.m_minus_add(u)
        if ust.status == DETACHED:
            self._place(u)
        else:
            self._add_in_neighbor(v, u)
        self._sync(v)

    def _add_in_neighbor(self, v: int, u: int) -> None:
        """Insert already-placed ``u`` into one of v's sets, then improve it."""
        ust, vst = self.state[u], self.state[v]
        self._ops += 1
        if ust.status == Z:
            vst.z_add(u)
        elif ust.status == HOSTED:
            self._p_add(v, ust.bucket, u)
            if vst.in_mis and self._lowest_open(v) < ust.bucket:
                self.remove_from_active(u)
                self.add_to_active(u, v, self._lowest_open(v))
        else:
            vst.r_add(u)
            if vst.in_mis and vst.a_count < self.cap:
                self.add_to_active(u, v, self._lowest_open(v))

    def _drop_edge(self, tail: int, head: int) -> None:
        """Remove edge ``tail -> head`` from the structure before phase 1."""
        tst, hst = self.state[tail], self.state[head]
        if tst.status == Z:
            hst.z.remove(tail)
        elif tst.status == HOSTED:
            if tst.owner == head:
                self.remove_from_active(tail)
            else:
                self._p_remove(head, tst.bucket, tail)
        elif tst.status == RESIDUAL:
            hst.r.remove(tail)
        self._ops += 1
        if tst.in_mis:
            if tail in hst.m_minus:
                hst.m_minus.remove(tail)
        self._out[tail].remove(head)
        self._in[head].remove(tail)
        if tst.status == DETACHED:
            self._place(tail)

