"""Ground-truth checks for the dynamic MIS.

Nothing here reuses the engine's partition maintenance: the auditor reads
the raw sets off a quiescent engine and recomputes every expectation from
the orientation and the MIS flags alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable


@dataclass(frozen=True)
class Violation:
    invariant: str
    witness: object
    description: str

    def record(self) -> str:
        return f"{self.invariant}\t{self.witness}\t{self.description}"


@dataclass
class AuditReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, invariant: str, witness: object, description: str) -> None:
        self.violations.append(Violation(invariant, witness, description))

    def names(self) -> set[str]:
        return {v.invariant for v in self.violations}

    def render(self) -> str:
        if self.ok:
            return "ok\n"
        lines = [f"{len(self.violations)} violation(s)"]
        lines.extend(f"  [{v.invariant}] {v.witness}: {v.description}" for v in self.violations)
        return "\n".join(lines) + "\n"

    def records(self) -> str:
        return "".join(v.record() + "\n" for v in self.violations)


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def check_mis(edges: Iterable[tuple[int, int]], mis: Iterable[int], n: int | None = None) -> AuditReport:
    """Independence and maximality of ``mis`` in the undirected graph ``edges``."""
    edges = [(min(u, v), max(u, v)) for u, v in edges]
    mis = set(mis)
    if n is None:
        n = 1 + max([x for e in edges for x in e] + list(mis) + [-1])
    adj = _adjacency(n, edges)
    report = AuditReport()
    for u, v in sorted(edges):
        if u in mis and v in mis:
            report.add("independence", (u, v), "both endpoints are in the MIS")
    for x in range(n):
        if x not in mis and not adj[x] & mis:
            report.add("maximality", x, "no neighbour in the MIS")
    return report


def brute_force_maximality_oracle(edges: Iterable[tuple[int, int]], mis: Iterable[int], n: int) -> bool:
    """Pairwise re-check of MIS validity, sharing no code with check_mis."""
    edges = {frozenset(e) for e in edges}
    mis = set(mis)
    for u, v in combinations(sorted(mis), 2):
        if frozenset((u, v)) in edges:
            return False
    for x in range(n):
        if x in mis:
            continue
        if not any(frozenset((x, y)) in edges for y in mis):
            return False
    return True


def enumerate_maximal_independent_sets(n: int, edges: Iterable[tuple[int, int]]) -> list[frozenset[int]]:
    """Every maximal independent set, by exhaustive enumeration (n <= 25)."""
    if n > 25:
        raise ValueError("exhaustive enumeration is limited to n <= 25")
    nbr = [0] * n
    for u, v in edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    full = (1 << n) - 1
    found = []
    for mask in range(1 << n):
        covered = mask
        independent = True
        for x in range(n):
            if mask >> x & 1:
                if nbr[x] & mask:
                    independent = False
                    break
                covered |= nbr[x]
        if independent and covered == full:
            found.append(frozenset(x for x in range(n) if mask >> x & 1))
    return found


def check_invariants(engine) -> AuditReport:
    """Audit a quiescent engine: MIS validity, orientation cap, M-(v) and
    the six partition invariants, plus owner/bucket consistency."""
    report = AuditReport()
    graph = engine.graph
    n, s, b = engine.n, engine.s, engine.b
    out_adj, in_adj = graph.out_adj, graph.in_adj
    state = engine.state
    in_mis = [st.in_mis for st in state]

    for v in range(n):
        if len(out_adj[v]) > graph.d_max:
            report.add("orientation-cap", v, f"out-degree {len(out_adj[v])} > {graph.d_max}")
        if engine._out[v] != out_adj[v]:
            report.add("view", v, "engine adjacency differs from the orientation")

    for u in range(n):
        for v in out_adj[u]:
            if in_mis[u] and in_mis[v]:
                report.add("independence", (u, v), "both endpoints are in the MIS")
    resolved = [in_mis[v] or any(in_mis[u] for u in in_adj[v]) for v in range(n)]
    for v in range(n):
        if not in_mis[v] and not resolved[v] and not any(in_mis[w] for w in out_adj[v]):
            report.add("maximality", v, "no neighbour in the MIS")

    # who hosts whom, read off the active sets themselves
    hosts: dict[int, list[tuple[int, int]]] = {}
    for v in range(n):
        st = state[v]
        expected = {u for u in in_adj[v] if in_mis[u]}
        if st.m_minus != expected:
            report.add("m-minus", v, f"M-(v)={sorted(st.m_minus)} expected {sorted(expected)}")
        for i in range(1, b + 1):
            bucket = st.active_bucket(i)
            if len(bucket) > s:
                report.add("bucket-capacity", (v, i), f"|A_v({i})|={len(bucket)} > s={s}")
            for x in bucket:
                hosts.setdefault(x, []).append((v, i))

    for v in range(n):
        st = state[v]
        actives = [st.active_bucket(i) for i in range(1, b + 1)]
        passives = [st.passive_bucket(i) for i in range(1, b + 1)]
        parts = [st.z, *actives, *passives, st.r]
        union: set[int] = set().union(*parts)
        if union != in_adj[v] or sum(map(len, parts)) != len(in_adj[v]):
            report.add("orientation", v, "Z, A, P, R do not partition N-(v)")
        for x in st.z:
            if not resolved[x]:
                report.add("orientation", (x, v), "unresolved vertex in Z_v")
        for x in st.r:
            if resolved[x]:
                report.add("orientation", (x, v), "resolved vertex in R_v")
        for i, bucket in enumerate(passives, start=1):
            for x in bucket:
                if resolved[x]:
                    report.add("orientation", (x, v), "resolved vertex in P_v")
                if state[x].owner in (None, v) or state[x].bucket != i:
                    report.add("consistency", (x, v), f"in P_v({i}) but hosted at "
                               f"{state[x].owner}/{state[x].bucket}")

        if not in_mis[v] and any(actives):
            report.add("empty-active-set", v, "A_v nonempty outside the MIS")
        for i in range(b - 1):
            if len(actives[i]) < s and actives[i + 1]:
                report.add("full", (v, i + 1), f"A_v({i + 1}) not full but A_v({i + 2}) nonempty")
        # R_v only matters while v can host; outside the MIS A_v is empty by rule
        if in_mis[v] and sum(map(len, actives)) < s * b and st.r:
            report.add("full", v, "A_v not full but R_v nonempty")

    for x in range(n):
        st = state[x]
        placed = hosts.get(x, [])
        if resolved[x]:
            if placed:
                report.add("consistency", x, "resolved vertex sits in an active set")
            for u in out_adj[x]:
                if x not in state[u].z:
                    report.add("resolved", (x, u), "resolved vertex missing from Z_u")
            continue
        if len(placed) > 1:
            report.add("consistency", x, f"in several active sets {placed}")
            continue
        if placed:
            host, i = placed[0]
            if host not in out_adj[x]:
                report.add("consistency", x, f"hosted by {host}, not an out-neighbour")
            if st.owner != host or st.bucket != i:
                report.add("owner", x, f"owner/bucket {st.owner}/{st.bucket} but sits in A_{host}({i})")
            for w in out_adj[x]:
                if w != host and x not in state[w].passive_bucket(i):
                    report.add("consistency", (x, w), f"hosted at bucket {i} but not in P_w({i})")
            if i > 1:
                for u in out_adj[x]:
                    if in_mis[u] and len(state[u].active_bucket(i - 1)) < s:
                        report.add("main", (x, u), f"B(x)={i} but A_u({i - 1}) not full")
        else:
            if st.owner is not None:
                report.add("owner", x, f"owner {st.owner} recorded but x is in no active set")
            for w in out_adj[x]:
                if x not in state[w].r:
                    report.add("consistency", (x, w), "unhosted unresolved vertex missing from R_w")
    return report
