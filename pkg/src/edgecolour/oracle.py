"""
Oracle

Brute-force ground truth for every engine:
- verify_proper: no two edges at a vertex share a colour
- exact_arboricity: Nash-Williams maximum over all vertex subsets
- min_free_colour: linear-scan reference for the palette search
- audit_engine: recompute adjacency, palettes, invariants and colour
  bounds from scratch and compare against what the engine keeps

Audits never raise; everything they find goes into an AuditReport.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional

from .errors import UsageError
from .graph import OUT, Edge, LevelledAdjacency, SimpleGraph, edge_key
from .static import degeneracy_order

MAX_EXACT_VERTICES = 16


@dataclass
class Violation:
    kind: str                   # e.g. 'improper', 'palette-mismatch', 'invariant-1'
    where: Hashable             # vertex or edge
    detail: str = ""


@dataclass
class AuditReport:
    violations: List[Violation] = field(default_factory=list)
    counters: Counter = field(default_factory=Counter)    # checks passed per kind

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, kind: str, where: Hashable, detail: str = "") -> None:
        self.violations.append(Violation(kind, where, detail))

    def passed(self, kind: str, count: int = 1) -> None:
        self.counters[kind] += count

    def kinds(self) -> Counter:
        return Counter(v.kind for v in self.violations)

    def merge(self, other: "AuditReport") -> "AuditReport":
        self.violations.extend(other.violations)
        self.counters.update(other.counters)
        return self

    def format_report(self, limit: int = 10) -> str:
        lines = [
            "─" * 60,
            "AUDIT",
            "─" * 60,
        ]
        if self.ok:
            checks = sum(self.counters.values())
            lines.append(f"  ✅ clean ({checks:,} checks)")
        else:
            lines.append(f"  ❌ {len(self.violations)} violation(s)")
            for kind, count in sorted(self.kinds().items()):
                lines.append(f"     {kind:<22} {count}")
            lines.append("")
            for v in self.violations[:limit]:
                lines.append(f"  • {v.kind} at {v.where}: {v.detail}")
            if len(self.violations) > limit:
                lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)


def _edges_of(graph) -> List[Edge]:
    if hasattr(graph, 'edges'):
        return [edge_key(*e) for e in graph.edges()]
    return [edge_key(*e) for e in graph]


def verify_proper(graph, colours: Mapping[Edge, int]) -> AuditReport:
    """Report every vertex with a repeated colour and every uncoloured edge."""
    report = AuditReport()
    seen: Dict[int, Dict[int, Edge]] = {}
    for edge in _edges_of(graph):
        colour = colours.get(edge)
        if colour is None:
            report.fail('uncoloured', edge)
            continue
        if colour < 1:
            report.fail('bad-colour', edge, f"colour {colour}")
            continue
        for w in edge:
            at_w = seen.setdefault(w, {})
            if colour in at_w:
                report.fail('improper', w, f"{at_w[colour]} and {edge} share colour {colour}")
            else:
                at_w[colour] = edge
        report.passed('proper')
    return report


def exact_arboricity(graph: SimpleGraph) -> int:
    """
    max over |U| > 1 of ceil(|E(U)| / (|U| - 1)), by enumerating subsets.

    Isolated vertices never raise the density and are left out; at most
    16 others are allowed.
    """
    active = [v for v in range(graph.n) if graph.degree(v) > 0]
    if len(active) > MAX_EXACT_VERTICES:
        raise UsageError(
            f"exact arboricity needs <= {MAX_EXACT_VERTICES} non-isolated vertices, "
            f"got {len(active)}"
        )
    if not active:
        return 0

    index = {v: i for i, v in enumerate(active)}
    n = len(active)
    adj_mask = [0] * n
    for u, v in graph.edges():
        adj_mask[index[u]] |= 1 << index[v]
        adj_mask[index[v]] |= 1 << index[u]

    inside = [0] * (1 << n)
    best = 0
    for subset in range(1, 1 << n):
        low = subset & -subset
        v = low.bit_length() - 1
        rest = subset ^ low
        inside[subset] = inside[rest] + bin(adj_mask[v] & rest).count('1')
        size = bin(subset).count('1')
        if size > 1 and inside[subset]:
            best = max(best, -(-inside[subset] // (size - 1)))
    return best


def arboricity_bound(graph: SimpleGraph) -> int:
    """Exact arboricity when enumeration is affordable, else the degeneracy."""
    try:
        return exact_arboricity(graph)
    except UsageError:
        return degeneracy_order(graph).degeneracy


def min_free_colour(used_a: Iterable[int], used_b: Iterable[int]) -> int:
    """Smallest positive colour in neither set."""
    taken = set(used_a) | set(used_b)
    colour = 1
    while colour in taken:
        colour += 1
    return colour


# ----------------------------------------------------------------------
# structural audits
# ----------------------------------------------------------------------

def check_adjacency(adj: LevelledAdjacency, report: Optional[AuditReport] = None) -> AuditReport:
    """Bucket placement, handle soundness and cached sizes, recomputed."""
    report = report if report is not None else AuditReport()
    levels = adj.levels()

    def expected(owner: int, other: int) -> int:
        return OUT if levels[other] >= levels[owner] else levels[other]

    for a, b in adj.edges():
        for owner, other in ((a, b), (b, a)):
            found = adj.locate(owner, other)
            want = expected(owner, other)
            if found is None or found < 0:
                report.fail('handle', (a, b), f"no entry for {other} at {owner}")
            elif found != want:
                report.fail('bucket', (a, b), f"{other} in bucket {found} at {owner}, want {want}")
            else:
                report.passed('bucket')

    for v in range(adj.capacity):
        entries = 0
        for bucket, members in adj.buckets(v).items():
            entries += len(members)
            if adj.cached_size(v, bucket) != len(members):
                report.fail('size-cache', v, f"bucket {bucket}: cached "
                            f"{adj.cached_size(v, bucket)} != {len(members)}")
            if bucket != OUT and bucket >= levels[v]:
                report.fail('bucket', v, f"down bucket {bucket} at level {levels[v]}")
            for u in members:
                if not adj.has_edge(u, v):
                    report.fail('handle', v, f"stale entry {u} in bucket {bucket}")
                elif expected(v, u) != bucket:
                    report.fail('bucket', v, f"{u} in bucket {bucket}, want {expected(v, u)}")
        if entries != adj.degree(v):
            report.fail('degree-cache', v, f"{entries} entries, degree {adj.degree(v)}")
        else:
            report.passed('size-cache')
    return report


def _expected_palettes(engine) -> Dict[int, Dict[int, Edge]]:
    at: Dict[int, Dict[int, Edge]] = {}
    for edge, colour in engine.colours.items():
        for w in edge:
            at.setdefault(w, {})[colour] = edge
    return at


def check_palettes(engine, report: Optional[AuditReport] = None) -> AuditReport:
    """Full (and, when kept, out-) palettes against the actual edge colours."""
    report = report if report is not None else AuditReport()
    expected = _expected_palettes(engine)
    graph = engine.graph
    has_out = hasattr(engine, 'out_palette') and isinstance(graph, LevelledAdjacency)

    for v in range(len(engine.state.full)):
        want = expected.get(v, {})
        palette = engine.palette(v)
        if not palette.check_tree():
            report.fail('palette-tree', v, "sum tree out of date")
        got = palette.marked()
        if set(got) != set(want) or any(palette.owner_of(c) != e for c, e in want.items()):
            report.fail('palette-mismatch', v, f"marked {sorted(got)} vs edges {sorted(want)}")
        else:
            report.passed('palette')

        if has_out:
            out_want = {}
            for u in graph.out_neighbours(v):
                key = edge_key(u, v)
                if key in engine.colours:
                    out_want[engine.colours[key]] = key
            out = engine.out_palette(v)
            out_got = out.marked()
            if set(out_got) != set(out_want) or any(
                out.owner_of(c) != e for c, e in out_want.items()
            ):
                report.fail('out-palette-mismatch', v,
                            f"marked {sorted(out_got)} vs out-edges {sorted(out_want)}")
            else:
                report.passed('out-palette')
    return report


def check_invariants(engine, report: Optional[AuditReport] = None) -> AuditReport:
    """Out-degree caps and down-degree floors at every vertex."""
    report = report if report is not None else AuditReport()
    graph = engine.graph
    for v in range(graph.capacity):
        out = graph.out_degree(v)
        if out > engine.upper_bound(v):
            report.fail('invariant-1', v,
                        f"deg+ {out} > {engine.upper_bound(v)} at level {graph.level(v)}")
        else:
            report.passed('invariant-1')
        if graph.level(v) > 1:
            down = graph.down_degree(v)
            if down < engine.lower_bound(v):
                report.fail('invariant-2', v,
                            f"{down} neighbours below < {engine.lower_bound(v)} "
                            f"at level {graph.level(v)}")
            else:
                report.passed('invariant-2')
    return report


def check_colour_bounds(engine, report: Optional[AuditReport] = None) -> AuditReport:
    report = report if report is not None else AuditReport()
    for edge, colour in engine.colours.items():
        limit = engine.colour_limit(edge)
        if colour > limit:
            report.fail('colour-bound', edge, f"colour {colour} > {limit}")
        else:
            report.passed('colour-bound')
    return report


def audit_engine(engine) -> AuditReport:
    """Recompute everything the engine claims and list every disagreement."""
    report = verify_proper(engine.graph, engine.colours)
    check_palettes(engine, report)
    check_colour_bounds(engine, report)
    if isinstance(engine.graph, LevelledAdjacency):
        check_adjacency(engine.graph, report)
        check_invariants(engine, report)
        dirty = engine.dirty_vertices()
        if dirty:
            report.fail('dirty', tuple(dirty), f"{len(dirty)} vertices left dirty")
        else:
            report.passed('dirty')
    return report
