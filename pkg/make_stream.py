#!/usr/bin/env python3
"""
Stream Generator - Write a reproducible update stream to a file.

Usage:
    python make_stream.py forest --n 64 --steps 500 -o streams/forest.txt
    python make_stream.py "forests(3)" --n 12 --delete-prob 0.3 -o streams/f3.txt
    python make_stream.py "clique-burst(12)" --n 200 -o streams/burst.txt
"""

import argparse
import os
import sys

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from edgecolour.errors import EdgeColouringError
from edgecolour.streams import generate_stream, save_stream


def main() -> int:
    parser = argparse.ArgumentParser(description='Generate an edge update stream')
    parser.add_argument('kind', help='Stream kind, e.g. forest, "forests(3)", "erdos-renyi(0.1)"')
    parser.add_argument('--n', type=int, default=64, help='Vertex capacity')
    parser.add_argument('--steps', type=int, help='Number of events (default 10*n)')
    parser.add_argument('--seed', type=int, default=0, help='Generator seed')
    parser.add_argument('--delete-prob', type=float, default=0.0, help='Deletion chance per step')
    parser.add_argument('-o', '--output', help='Output file (default: stdout)')

    args = parser.parse_args()

    try:
        stream = generate_stream(args.kind, args.n, args.steps,
                                 seed=args.seed, delete_prob=args.delete_prob)
    except EdgeColouringError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2

    if args.output:
        save_stream(stream, args.output)
        print(f"✅ {len(stream):,} events written to {args.output}")
    else:
        sys.stdout.write(stream.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
