"""Regenerate connected8.g6: every connected graph on 8 vertices, one per isomorphism class.

A connected graph always has a non-cut vertex (a leaf of any spanning tree), so
each one arises from a connected 7-vertex graph by adding a vertex joined to a
nonempty subset. Candidates are bucketed by Weisfeiler-Lehman hash and
deduplicated with an exact isomorphism test.
"""
import itertools
import pathlib

import networkx as nx


def main() -> None:
    base = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 7 and nx.is_connected(g)]
    buckets: dict[str, list[nx.Graph]] = {}
    for g in base:
        for size in range(1, 8):
            for nbrs in itertools.combinations(range(7), size):
                h = g.copy()
                h.add_edges_from((7, v) for v in nbrs)
                key = nx.weisfeiler_lehman_graph_hash(h, iterations=4) + f"/{h.number_of_edges()}"
                group = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, other) for other in group):
                    group.append(h)
    graphs = [h for group in buckets.values() for h in group]
    lines = sorted(nx.to_graph6_bytes(h, header=False).decode().strip() for h in graphs)
    out = pathlib.Path(__file__).with_name("connected8.g6")
    out.write_text("\n".join(lines) + "\n")
    print(len(lines))


if __name__ == "__main__":
    main()
