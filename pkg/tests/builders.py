"""Scripted update sequences that put the engine into known hosting states.

A helper vertex that stays in the MIS evicts each leaf first, then the leaf
links to its hub and the helper edge is dropped. The leaf ends up outside
the MIS, unresolved, and oriented leaf -> hub without any flips.
"""

from __future__ import annotations

from dynmis.streams import DELETE, INSERT, Update


def host_leaf(helper: int, leaf: int, hubs: list[int]) -> list[Update]:
    ops = [Update(INSERT, helper, leaf)]
    ops.extend(Update(INSERT, leaf, h) for h in hubs)
    ops.append(Update(DELETE, helper, leaf))
    return ops


class Builder:
    def __init__(self, helper: int, first_leaf: int) -> None:
        self.helper = helper
        self.next_id = first_leaf
        self.ops: list[Update] = []

    def leaves(self, hub: int, count: int) -> list[int]:
        made = []
        for _ in range(count):
            leaf = self.next_id
            self.next_id += 1
            self.ops.extend(host_leaf(self.helper, leaf, [hub]))
            made.append(leaf)
        return made

    def link(self, u: int, v: int) -> None:
        self.ops.append(Update(INSERT, u, v))


def multi_epoch_ops(sides: int = 2, n: int = 256) -> tuple[list[Update], dict]:
    """Hub 0 with a full active set and ``sides`` further hubs with every
    bucket but the last full. The first ``sides`` members of hub 0's top
    bucket also point at one side hub each. Vertex ``sides + 1`` is the
    helper; inserting (helper, 0) evicts hub 0 and needs a second epoch."""
    b = (n - 1).bit_length() + 1
    s = 8
    side_hubs = list(range(1, sides + 1))
    helper = sides + 1
    bld = Builder(helper=helper, first_leaf=helper + 1)
    for h in side_hubs:
        bld.leaves(h, s * (b - 1))
    bld.leaves(0, s * (b - 1))
    top = bld.leaves(0, s)
    for x, h in zip(top, side_hubs):
        bld.link(x, h)
    assert bld.next_id <= n
    return bld.ops, {"hub": 0, "sides": side_hubs, "top": top,
                     "trigger": Update(INSERT, helper, 0)}


def hub_rounds(n: int, rounds: int, seed: int, hubs: int = 4, k: int = 2) -> list[Update]:
    """Randomised rounds of: host many leaves at a few hubs (each leaf on up
    to ``k`` hubs), fire trigger edges at random hubs, delete a few edges,
    then tear everything down. The orientation trigger/helper -> leaf ->
    hub is acyclic with out-degree <= k, so arboricity stays <= k."""
    import random

    rng = random.Random(seed)
    helper, trigger = 0, 1
    hub_ids = list(range(2, 2 + hubs))
    leaf_ids = list(range(2 + hubs, n))
    ops: list[Update] = []
    for _ in range(rounds):
        present: set[tuple[int, int]] = set()
        leaves = rng.sample(leaf_ids, rng.randrange(len(leaf_ids) // 2, len(leaf_ids) + 1))
        for leaf in leaves:
            targets = rng.sample(hub_ids, rng.randint(1, k))
            ops.extend(host_leaf(helper, leaf, targets))
            present.update((leaf, h) for h in targets)
            if rng.random() < 0.002:
                h = rng.choice(hub_ids)
                ops.append(Update(INSERT, trigger, h))
                ops.append(Update(DELETE, h, trigger))
        for _ in range(rng.randint(1, 3)):
            h = rng.choice(hub_ids)
            ops.append(Update(INSERT, trigger, h))
            ops.append(Update(DELETE, trigger, h))
            for edge in rng.sample(sorted(present), min(len(present), rng.randint(0, 5))):
                ops.append(Update(DELETE, *edge))
                present.remove(edge)
        order = sorted(present)
        rng.shuffle(order)
        ops.extend(Update(DELETE, *e) for e in order)
    return ops
