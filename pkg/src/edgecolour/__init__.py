"""
Edge Colouring Lab

Dynamic and static edge colouring with Delta + O(alpha) colours on
graphs of bounded arboricity, plus oracles and a benchmark harness.
"""

from .adaptive import AdaptiveEngine
from .colouring import ColouringState, EngineStats, GreedyColourer
from .config import GroupedConfig, PartitionConfig, RunSettings, load_settings
from .dynamic_max import DynamicMaxEngine
from .errors import EdgeColouringError, StreamError
from .graph import LevelledAdjacency, SimpleGraph, edge_key
from .harness import ALGORITHMS, RunMetrics, RunOptions, run, run_batch
from .oracle import AuditReport, audit_engine, exact_arboricity, min_free_colour, verify_proper
from .palette import Palette, find_joint_free
from .static import build_hpartition, colour_by_order, colour_by_partition, degeneracy_order
from .streams import Event, UpdateStream, generate_stream, load_stream, parse_stream
