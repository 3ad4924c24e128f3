"""
Benchmark Harness

Replays an UpdateStream through one algorithm, audits it at checkpoints
and collects one metrics row per checkpoint.

Algorithms:
- static-degeneracy / static-hpartition: insert-only streams, coloured once
- dynamic-max: fixed thresholds from the declared alpha_max
- dynamic-adaptive: level groups, bound follows the current graph
- greedy-baseline: 2*Delta(uv) - 1 comparison point

CSV columns (one header row):
step, live_edges, current_delta, alpha_declared, alpha_measured,
max_colour, palette_searches, cascade_recolours, level_moves, wall_time
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from .adaptive import AdaptiveEngine
from .colouring import GreedyColourer
from .config import GroupedConfig, PartitionConfig
from .dynamic_max import DynamicMaxEngine
from .errors import UsageError
from .graph import SimpleGraph
from .oracle import AuditReport, arboricity_bound, audit_engine, exact_arboricity, verify_proper
from .static import (
    build_hpartition, colour_by_order, colour_by_partition, degeneracy_order,
)
from .streams import INSERT, UpdateStream

logger = logging.getLogger(__name__)

ALGORITHMS = (
    'static-degeneracy',
    'static-hpartition',
    'dynamic-max',
    'dynamic-adaptive',
    'greedy-baseline',
)
STATIC_ALGORITHMS = ('static-degeneracy', 'static-hpartition')

COLUMNS = [
    'step', 'live_edges', 'current_delta', 'alpha_declared', 'alpha_measured',
    'max_colour', 'palette_searches', 'cascade_recolours', 'level_moves', 'wall_time',
]

EXACT_ALPHA_CAPACITY = 12


@dataclass
class RunOptions:
    """Knobs shared by every run; None means derive from the stream."""
    alpha_max: Optional[int] = None
    delta_max: Optional[int] = None
    beta: Optional[float] = None
    epsilon: Optional[float] = None
    debug: bool = False


@dataclass
class MetricsRow:
    step: int
    live_edges: int
    current_delta: int
    alpha_declared: Optional[int]
    alpha_measured: int
    max_colour: int
    palette_searches: int
    cascade_recolours: int
    level_moves: int
    wall_time: float            # seconds spent in updates so far


@dataclass
class RunMetrics:
    algo: str
    label: str
    capacity: int
    events: int = 0
    rows: List[MetricsRow] = field(default_factory=list)
    report: AuditReport = field(default_factory=AuditReport)
    failed_checkpoints: List[int] = field(default_factory=list)
    peak_colour: int = 0
    stats: Dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.report.ok

    @property
    def recourse(self) -> int:
        return self.stats.get('recourse', 0)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(r) for r in self.rows], columns=COLUMNS)

    def write_csv(self, path: str) -> None:
        self.to_frame().to_csv(path, index=False)
        logger.info("metrics written to %s", path)

    def format_report(self) -> str:
        status = "✅ PASS" if self.ok else "❌ FAIL"
        last = self.rows[-1] if self.rows else None
        lines = [
            "═" * 60,
            f"🎨 {self.algo.upper()}",
            f"   {self.label or 'stream'} (n={self.capacity}, {self.events:,} events)",
            "═" * 60,
            "",
            f"Result: {status}",
            "",
            "─" * 60,
            "COLOURS",
            "─" * 60,
            f"  Peak colour:        {self.peak_colour}",
        ]
        if last:
            lines.extend([
                f"  Colours in use:     {last.max_colour}",
                f"  Current Δ:          {last.current_delta}",
                f"  α declared:         {last.alpha_declared if last.alpha_declared is not None else '-'}",
                f"  α measured:         {last.alpha_measured}",
                f"  Live edges:         {last.live_edges:,}",
            ])
        lines.extend([
            "",
            "─" * 60,
            "WORK",
            "─" * 60,
            f"  Palette searches:   {self.stats.get('palette_searches', 0):,}",
            f"  Cascade recolours:  {self.stats.get('cascade_steps', 0):,}",
            f"  Level moves:        {self.stats.get('level_moves', 0):,}",
            f"  Adaptation recolours: {self.stats.get('adaptation_recolours', 0):,}",
            f"  Recourse / update:  {self.recourse / max(1, self.events):.3f}",
            f"  Wall time:          {self.wall_time:.3f}s",
            "",
            self.report.format_report(),
        ])
        if self.failed_checkpoints:
            shown = ", ".join(str(s) for s in self.failed_checkpoints[:10])
            lines.append(f"  Failing checkpoints: {shown}")
        return "\n".join(lines)


def _stream_profile(stream: UpdateStream) -> Tuple[int, SimpleGraph]:
    """Maximum degree over the whole stream and the union of all its edges."""
    degree = [0] * stream.capacity
    union = SimpleGraph(stream.capacity)
    delta = 0
    for event in stream:
        step = 1 if event.op == INSERT else -1
        degree[event.u] += step
        degree[event.v] += step
        delta = max(delta, degree[event.u], degree[event.v])
        if event.op == INSERT and not union.has_edge(event.u, event.v):
            union.add_edge(event.u, event.v)
    return delta, union


def declared_alpha(stream: UpdateStream, options: RunOptions) -> Optional[int]:
    if options.alpha_max is not None:
        return options.alpha_max
    return stream.alpha


def build_engine(algo: str, stream: UpdateStream, options: Optional[RunOptions] = None):
    """Instantiate a dynamic colourer for this stream."""
    options = options or RunOptions()
    n = stream.capacity
    if algo == 'greedy-baseline':
        return GreedyColourer(n)
    if algo == 'dynamic-adaptive':
        config = GroupedConfig.for_capacity(n, epsilon=options.epsilon, beta=options.beta)
        return AdaptiveEngine(config, debug=options.debug)
    if algo == 'dynamic-max':
        delta_max, union = _stream_profile(stream)
        alpha_max = declared_alpha(stream, options)
        if alpha_max is None:
            # every snapshot is a subgraph of the union, so this bounds alpha_max
            alpha_max = max(1, arboricity_bound(union))
            logger.info("alpha_max not declared; using %d from the edge union", alpha_max)
        config = PartitionConfig.for_alpha(
            n, alpha_max,
            delta_max=options.delta_max if options.delta_max is not None else delta_max,
            epsilon=options.epsilon,
            beta=options.beta,
        )
        return DynamicMaxEngine(config, debug=options.debug)
    raise UsageError(f"unknown dynamic algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


def _measure_alpha(graph: SimpleGraph) -> int:
    if graph.n <= EXACT_ALPHA_CAPACITY:
        return exact_arboricity(graph)
    return degeneracy_order(graph).degeneracy


def _run_static(algo: str, stream: UpdateStream, options: RunOptions) -> RunMetrics:
    if stream.has_deletes:
        raise UsageError(f"{algo} needs an insert-only stream")
    metrics = RunMetrics(algo=algo, label=stream.label, capacity=stream.capacity,
                         events=len(stream))
    graph = SimpleGraph(stream.capacity)
    for event in stream:
        graph.add_edge(event.u, event.v)

    started = time.perf_counter()
    if algo == 'static-degeneracy':
        order = degeneracy_order(graph)
        state = colour_by_order(graph, order)
        slack = order.degeneracy - 1
    else:
        alpha = declared_alpha(stream, options) or max(1, arboricity_bound(graph))
        partition = build_hpartition(graph, alpha, epsilon=options.epsilon)
        state = colour_by_partition(graph, partition)
        slack = partition.d - 1
    metrics.wall_time = time.perf_counter() - started

    report = verify_proper(graph, state.colours)
    for (u, v), colour in state.colours.items():
        limit = max(graph.degree(u), graph.degree(v)) + slack
        if colour > limit:
            report.fail('colour-bound', (u, v), f"colour {colour} > {limit}")
        else:
            report.passed('colour-bound')
    metrics.report = report
    if not report.ok:
        metrics.failed_checkpoints.append(len(stream))

    m = graph.num_edges()
    metrics.peak_colour = state.peak
    metrics.stats = {'palette_searches': m, 'recolours': m, 'cascade_steps': 0,
                     'level_moves': 0, 'recourse': 0}
    metrics.rows.append(MetricsRow(
        step=len(stream),
        live_edges=m,
        current_delta=graph.max_degree(),
        alpha_declared=declared_alpha(stream, options),
        alpha_measured=_measure_alpha(graph),
        max_colour=state.max_colour(),
        palette_searches=m,
        cascade_recolours=0,
        level_moves=0,
        wall_time=metrics.wall_time,
    ))
    return metrics


def _checkpoint(engine, step: int, alpha_declared, wall: float) -> Tuple[MetricsRow, AuditReport]:
    report = audit_engine(engine)
    snapshot = SimpleGraph.from_edges(len(engine.state.full), engine.graph.edges())
    stats = engine.stats
    row = MetricsRow(
        step=step,
        live_edges=snapshot.num_edges(),
        current_delta=snapshot.max_degree(),
        alpha_declared=alpha_declared,
        alpha_measured=_measure_alpha(snapshot),
        max_colour=engine.max_colour(),
        palette_searches=stats.palette_searches,
        cascade_recolours=stats.cascade_steps,
        level_moves=stats.level_moves,
        wall_time=wall,
    )
    return row, report


def run(
    algo: str,
    stream: UpdateStream,
    verify_every: int = 100,
    metrics_out: Optional[str] = None,
    options: Optional[RunOptions] = None,
) -> RunMetrics:
    """
    Replay `stream` through `algo`.

    Audits every `verify_every` steps (0 disables mid-run audits) and
    always once at the end. Violations are collected, not raised.
    """
    if algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
    if verify_every < 0:
        raise UsageError(f"verify_every must be >= 0, got {verify_every}")
    options = options or RunOptions()
    stream.validate()

    if algo in STATIC_ALGORITHMS:
        metrics = _run_static(algo, stream, options)
    else:
        metrics = _run_dynamic(algo, stream, verify_every, options)

    logger.info("%s on %s: peak colour %d, %s", algo, stream.label or 'stream',
                metrics.peak_colour, "clean" if metrics.ok else "violations")
    if metrics_out:
        metrics.write_csv(metrics_out)
    return metrics


def _run_dynamic(algo: str, stream: UpdateStream, verify_every: int,
                 options: RunOptions) -> RunMetrics:
    engine = build_engine(algo, stream, options)
    alpha = declared_alpha(stream, options)
    if alpha is None and algo == 'dynamic-max':
        alpha = engine.config.alpha_max

    metrics = RunMetrics(algo=algo, label=stream.label, capacity=stream.capacity,
                         events=len(stream))
    wall = 0.0
    last_audited = -1
    for step, event in enumerate(stream, 1):
        started = time.perf_counter()
        if event.op == INSERT:
            engine.insert(event.u, event.v)
        else:
            engine.delete(event.u, event.v)
        wall += time.perf_counter() - started

        if verify_every and step % verify_every == 0:
            row, report = _checkpoint(engine, step, alpha, wall)
            metrics.rows.append(row)
            metrics.report.merge(report)
            if not report.ok:
                metrics.failed_checkpoints.append(step)
            last_audited = step

    if last_audited != len(stream):
        row, report = _checkpoint(engine, len(stream), alpha, wall)
        metrics.rows.append(row)
        metrics.report.merge(report)
        if not report.ok:
            metrics.failed_checkpoints.append(len(stream))

    metrics.wall_time = wall
    metrics.peak_colour = engine.state.peak
    metrics.stats = engine.stats.as_dict()
    return metrics


def _run_job(job: Tuple[str, UpdateStream, int, RunOptions]) -> RunMetrics:
    algo, stream, verify_every, options = job
    return run(algo, stream, verify_every=verify_every, options=options)


def run_batch(
    jobs: Sequence[Tuple[str, UpdateStream]],
    verify_every: int = 100,
    options: Optional[RunOptions] = None,
    workers: Optional[int] = None,
) -> List[RunMetrics]:
    """Run independent (algo, stream) pairs, in parallel when workers > 1."""
    options = options or RunOptions()
    packed = [(algo, stream, verify_every, options) for algo, stream in jobs]
    if workers == 1 or len(packed) <= 1:
        return [_run_job(job) for job in packed]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, packed))
