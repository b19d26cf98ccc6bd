#!/usr/bin/env python3
"""Time the flip-graph enumeration for growing n.

n = 8 (1,232,944 tilings) is a stretch benchmark, not a supported target;
pass --max-n 8 explicitly to include it.
"""

import argparse
import time

from zonotiling import enumerate_tilings, standard_config


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=7)
    args = parser.parse_args()

    for n in range(3, args.max_n + 1):
        start = time.monotonic()
        graph = enumerate_tilings(standard_config(n), cap=max(8, args.max_n))
        elapsed = time.monotonic() - start
        print(
            f"n={n}: {len(graph):>9} tilings  {graph.edge_count():>9} edges  "
            f"{elapsed:8.2f}s"
        )


if __name__ == "__main__":
    main()
