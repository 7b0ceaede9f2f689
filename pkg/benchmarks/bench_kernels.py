"""Time the numba kernels against the pure-Python fallback.

Each backend runs in its own interpreter because the backend is fixed at
import time by PARACC_DISABLE_NUMBA. The jitted side is warmed up once before
timing so compilation (or cache loading) is excluded.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import textwrap
from pathlib import Path

WORKER = textwrap.dedent("""
    import json, sys, time
    from paracc import _accel, matching, partial_vertex_cover, cluster_editing, cut_connected, embed
    from paracc.coloring import family_params, verify_family
    from paracc.graph import Graph, PatternSpec, build_pattern, cycle_graph

    repeat = int(sys.argv[1])
    late = Graph.from_edges(40, [(1, 2), (20, 21), (39, 40)])
    ring = cycle_graph(7)
    h, td = build_pattern(PatternSpec("paths", k=1, l=4))
    cases = {
        "verify_family n=12 k=3 c=3": lambda: verify_family(family_params(12, 3, 3)),
        "matching k=3, 40 vertices": lambda: matching(late, 3),
        "embed P4 into C7": lambda: embed(h, td, ring),
        "pvc k=2 t=4 C7": lambda: partial_vertex_cover(ring, 2, 4, prefilter=False),
        "cluster k=2 l=2 C7 (no)": lambda: cluster_editing(ring, 2, 2),
        "cut k=1 l=3 C7 (no)": lambda: cut_connected(ring, 1, 3),
    }
    out = {"backend": _accel.backend(), "cases": {}}
    for name, fn in cases.items():
        fn()
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out["cases"][name] = best
    print(json.dumps(out))
""")


def run_backend(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("PARACC_DISABLE_NUMBA", None)
    if disable:
        env["PARACC_DISABLE_NUMBA"] = "1"
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jit = run_backend(False, args.repeat)
    plain = run_backend(True, args.repeat)
    print(f"{'case':<28} {jit['backend']:>10} {plain['backend']:>10} {'speedup':>8}")
    for name, fast in jit["cases"].items():
        slow = plain["cases"][name]
        print(f"{name:<28} {fast * 1e3:>8.1f}ms {slow * 1e3:>8.1f}ms {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
