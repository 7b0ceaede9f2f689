"""The numba kernels and the pure-Python fallback must give identical results."""
import json
import os
import subprocess
import sys
import textwrap
from pathlib import Path

import pytest

SUITE = textwrap.dedent("""
    import json
    from paracc import *
    from paracc import _accel
    from paracc.graph import cycle_graph, complete_graph, path_graph, k2, k3

    def w(x):
        if x is None:
            return None
        if hasattr(x, "assignment"):
            return sorted(x.assignment.items())
        if hasattr(x, "vertices"):
            return sorted(x.vertices)
        if hasattr(x, "clusters"):
            return [list(c) for c in x.clusters]
        if hasattr(x, "X"):
            return [sorted(x.X), sorted(x.S)]
        if hasattr(x, "centers"):
            return x.centers
        return [sorted(x.additions), sorted(x.deletions)]

    g = Graph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 1), (4, 5), (5, 6), (6, 7), (5, 7)])
    h, td = build_pattern(PatternSpec("paths", k=1, l=4))
    out = {
        "backend": _accel.backend(),
        "embed": w(embed(h, td, g)),
        "matching": matching(g, 3),
        "pack": w(pack(g, [k3(), k2()])),
        "pvc": w(partial_vertex_cover(g, 2, 5, prefilter=False)),
        "pvc_no": w(partial_vertex_cover(path_graph(4), 1, 3, prefilter=False)),
        "epvc": w(exact_partial_vertex_cover(g, 5)),
        "cluster": w(cluster_editing(g, 3, 2)),
        "multipartite": w(multipartite_cluster_editing(g, 2, (2, 3))),
        "cut": w(cut_connected(g, 1, 3)),
        "cut_atmost": w(cut_at_most(g, 2, 3, terminal=1)),
        "balls": w(scattered_balls(cycle_graph(8), 2, 1, lambda b, c: True)),
        "threshold": threshold("0110100", 3),
    }
    print(json.dumps(out, sort_keys=True))
""")


def _run(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop("PARACC_DISABLE_NUMBA", None)
    if disable:
        env["PARACC_DISABLE_NUMBA"] = "1"
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run([sys.executable, "-c", SUITE], capture_output=True, text=True, env=env, timeout=600)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


@pytest.fixture(scope="module")
def results():
    return _run(False), _run(True)


def test_fallback_is_selected(results):
    jit, plain = results
    assert plain["backend"] == "python"
    assert jit["backend"] in ("numba", "python")


def test_same_answers_and_witnesses(results):
    jit, plain = results
    jit.pop("backend")
    plain.pop("backend")
    assert jit == plain
