"""Self-checks of a built index against brute-force answers from its input graph."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .container import IndexContainer
from .graph import LabeledGraph, decode, encode_pattern, verify_match
from .index import EncodedIndex
from .pathgraph import build_debruijn, long_edge_violations, maximally_prune, oracle_locate, prunable_prefixes

DEFAULT_NODE_CAP = 200
DEFAULT_BUDGET = 1000


class OracleCapExceeded(RuntimeError):
    pass


def locate_verified(idx: EncodedIndex, g: LabeledGraph, pattern: str) -> tuple[set[int], set[int]]:
    """Split located values into confirmed hits and filtered false positives."""
    pat = encode_pattern(pattern)
    found = idx.locate(idx.find(pat))
    confirmed, filtered = set(), set()
    for value in found:
        node = value - idx.order
        if 0 <= node < g.num_real and verify_match(g, node, pat):
            confirmed.add(value)
        else:
            filtered.add(value)
    return confirmed, filtered


@dataclass
class VerifyReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)


def _patterns(order: int, budget: int, rng: random.Random) -> list[str]:
    out = [""]
    for length in range(1, min(order, 4) + 1):
        out.extend("".join(p) for p in itertools.product("ACGT", repeat=length))
    for _ in range(budget):
        out.append("".join(rng.choice("ACGT") for _ in range(rng.randint(1, order))))
    return out


def verify_index(container: IndexContainer, g: LabeledGraph, budget: int = DEFAULT_BUDGET,
                 node_cap: int = DEFAULT_NODE_CAP, seed: int = 0, max_failures: int = 5) -> VerifyReport:
    """Compare locate, count and the node set against oracles built from ``g``."""
    if g.num_real > node_cap:
        raise OracleCapExceeded(f"graph has {g.num_real} nodes; oracle cap is {node_cap}")
    idx = container.index
    order = idx.order
    rng = random.Random(seed)
    report = VerifyReport()

    try:
        ref = maximally_prune(build_debruijn(g, order))
    except ValueError as e:
        raise OracleCapExceeded(str(e)) from None
    if len(ref) != len(idx):
        report.fail(f"index has {len(idx)} nodes, expected {len(ref)}")
    bad_edges = long_edge_violations(ref)
    if bad_edges:
        report.fail(f"edge bound violated at {ref.key_str(bad_edges[0][0])}")
    if prunable_prefixes(ref):
        report.fail(f"prefix {decode(prunable_prefixes(ref)[0])} still prunable")

    for x in _patterns(order, budget, rng):
        if len(report.failures) >= max_failures:
            break
        report.checked += 1
        try:
            r = idx.find(x)
            got = idx.locate(r)
            want = oracle_locate(g, x, order)
            if got != want:
                report.fail(f"locate {x!r}: index {sorted(got)} oracle {sorted(want)}")
                continue
            if container.counts is not None and container.counts.count(r) != len(got):
                report.fail(f"count {x!r}: {container.counts.count(r)} != {len(got)}")
        except Exception as e:  # corrupted structures may fail in any query
            report.fail(f"query {x!r} raised {type(e).__name__}: {e}")

    for _ in range(min(budget, 200)):
        if len(report.failures) >= max_failures:
            break
        x = "".join(rng.choice("ACGT") for _ in range(rng.randint(order + 1, 2 * order)))
        report.checked += 1
        try:
            confirmed, _ = locate_verified(idx, g, x)
            want = oracle_locate(g, x, order)
            if confirmed != want:
                report.fail(f"long pattern {x!r}: confirmed {sorted(confirmed)} oracle {sorted(want)}")
        except Exception as e:
            report.fail(f"query {x!r} raised {type(e).__name__}: {e}")
    return report
