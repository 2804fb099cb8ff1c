#!/usr/bin/env python3
"""Writes the fixture corpus and its golden values.

Golden values come from brute force written independently of the C++ code:
flow counts by recursive splitting, lattice points by scanning boxes, and
linear extensions by checking permutations.
"""

import itertools
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent / "corpus"
PROVENANCE = "DERIVED: brute force in tools/make_corpus.py"


def network(name, vertices, edges, netflow, tags=()):
    return {"name": name, "vertices": vertices, "edges": [list(e) for e in edges],
            "netflow": [str(a) for a in netflow], "tags": list(tags)}


def complete(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def ladder(n):
    return [(i, j) for i in range(n) for j in (i + 1, i + 2) if j < n]


NETWORKS = [
    network("triangle", 3, complete(3), [1, 0, -1], ["triangle"]),
    network("triangle_2", 3, complete(3), [2, 0, -2]),
    network("two_into_one", 3, [(0, 2), (0, 2), (1, 2)], [1, 1, -2]),
    network("k4", 4, complete(4), [1, 0, 0, -1]),
    network("k4_2", 4, complete(4), [2, 0, 0, -2]),
    network("k5", 5, complete(5), [1, 0, 0, 0, -1], ["complete_graph"]),
    network("double_path", 3, [(0, 1), (0, 1), (1, 2), (1, 2)], [1, 0, -1]),
    network("kite", 4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], [2, 0, 0, -2]),
    network("two_sources", 4, [(0, 2), (1, 2), (0, 3), (2, 3), (1, 3)], [1, 2, 0, -3]),
    network("ladder5", 5, ladder(5), [1, 0, 0, 0, -1]),
    network("ladder5_3", 5, ladder(5), [3, 0, 0, 0, -3]),
    network("ladder6", 6, ladder(6), [1, 0, 0, 0, 0, -1]),
    network("ladder6_2", 6, ladder(6), [2, 0, 0, 0, 0, -2]),
    network("sources_diamond", 5, [(0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)], [1, 1, 0, 0, -2]),
    network("sources_diamond_b", 5, [(0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)], [2, 1, 0, 0, -3]),
    network("triple_path", 3, [(0, 1)] * 3 + [(1, 2)] * 3, [1, 0, -1]),
    network("doubled_triangle", 3, [(0, 1), (0, 1), (0, 2), (1, 2), (1, 2)], [2, 0, -2]),
    network("doubled_k4", 4, [(0, 1), (0, 1), (0, 2), (0, 3), (1, 2), (1, 2), (1, 3), (2, 3), (2, 3)],
            [1, 0, 0, -1]),
    network("three_sources", 6, [(0, 3), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5), (1, 4)], [1, 1, 1, 0, 0, -3]),
    network("fan", 5, [(0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (1, 3)], [2, 1, 0, 0, -3]),
    network("long_kite", 5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (0, 4)], [1, 0, 0, 0, -1]),
    network("wide", 4, [(0, 1), (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 3)], [3, 0, 0, -3]),
]

COMPLETE = [network("k6", 6, complete(6), [1, 0, 0, 0, 0, -1], ["complete_graph"])]


def poset(elements, covers, marking=None):
    return {"elements": elements, "covers": [list(c) for c in covers],
            "marked": {k: str(v) for k, v in (marking or {}).items()}}


def gt_fixture(lam):
    n = len(lam)
    ids, covers, marking, coords = [], [], {}, {}
    for r in range(1, n + 1):
        for k in range(1, n - r + 2):
            ids.append(f"y{r}_{k}")
            coords[f"y{r}_{k}"] = [-r, -(r + 2 * k)]
            if r == 1:
                marking[f"y1_{k}"] = lam[k - 1]
    for r in range(1, n):
        for k in range(1, n - r + 1):
            covers.append((f"y{r + 1}_{k}", f"y{r}_{k}"))
            covers.append((f"y{r}_{k + 1}", f"y{r + 1}_{k}"))
    return {"poset": poset(ids, covers, marking), "coordinates": coords}


def embedding(name, elements, covers, coords, marking=None, tags=()):
    return {"name": name, "tags": list(tags),
            "embedding": {"poset": poset(elements, covers, marking), "coordinates": coords}}


EMBEDDINGS = [
    embedding("chain3", ["a", "b", "c"], [("a", "b"), ("b", "c")],
              {"a": [0, 0], "b": [0, 1], "c": [0, 2]}),
    embedding("antichain2", ["a", "b"], [], {"a": [0, 0], "b": [1, 0]}),
    embedding("antichain3", ["a", "b", "c"], [], {"a": [0, 0], "b": [1, 0], "c": [2, 0]}),
    embedding("diamond", ["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
              {"a": [1, 0], "b": [0, 1], "c": [2, 1], "d": [1, 2]}),
    embedding("n_poset", ["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")],
              {"a": [0, 0], "b": [1, 0], "c": [0, 1], "d": [1, 1]}),
    embedding("vee", ["a", "b", "c"], [("a", "b"), ("a", "c")],
              {"a": [1, 0], "b": [0, 1], "c": [2, 1]}),
    embedding("fence6", ["a", "b", "c", "d", "e", "f"],
              [("a", "b"), ("c", "b"), ("c", "d"), ("e", "d"), ("e", "f")],
              {"a": [0, 0], "b": [1, 1], "c": [2, 0], "d": [3, 1], "e": [4, 0], "f": [5, 1]}),
    embedding("grid2x3", ["g11", "g12", "g13", "g21", "g22", "g23"],
              [("g11", "g12"), ("g12", "g13"), ("g21", "g22"), ("g22", "g23"),
               ("g11", "g21"), ("g12", "g22"), ("g13", "g23")],
              {"g11": [0, 0], "g12": [-1, 1], "g13": [-2, 2], "g21": [1, 1], "g22": [0, 2], "g23": [-1, 3]}),
    {"name": "gt_2_1_0", "tags": ["gt", "single_sink", "worked_example"], "embedding": gt_fixture([2, 1, 0])},
    {"name": "gt_3_1_0", "tags": ["gt", "single_sink"], "embedding": gt_fixture([3, 1, 0])},
    {"name": "gt_4_2_0", "tags": ["gt", "single_sink"], "embedding": gt_fixture([4, 2, 0])},
    {"name": "gt_3_1", "tags": ["gt", "single_sink"], "embedding": gt_fixture([3, 1])},
    embedding("marked_chain", ["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")],
              {"a": [0, 0], "b": [0, 1], "c": [0, 2], "d": [0, 3]}, {"a": 0, "d": 3}, ["single_sink"]),
    embedding("deep_face", ["t", "m", "b", "x", "y", "z1", "z2"],
              [("x", "t"), ("m", "x"), ("y", "m"), ("b", "y"), ("z1", "x"), ("z2", "z1"), ("y", "z2")],
              {"t": [2, 6], "m": [2, 3], "b": [2, 0], "x": [1, 5], "y": [1, 1], "z1": [0, 4], "z2": [0, 2]},
              {"t": 4, "m": 2, "b": 0}, ["single_sink", "deep"]),
    embedding("twin_faces", ["t", "m", "b", "x", "y", "z", "w"],
              [("x", "t"), ("m", "x"), ("y", "m"), ("b", "y"), ("z", "x"), ("y", "z"), ("w", "x"), ("y", "w")],
              {"t": [2, 6], "m": [2, 3], "b": [2, 0], "x": [1, 5], "y": [1, 1], "z": [-1, 3], "w": [0, 3]},
              {"t": 3, "m": 1, "b": 0}, ["single_sink"]),
    embedding("side_pocket", ["t", "m", "b", "p", "q", "r", "s"],
              [("m", "t"), ("b", "m"), ("b", "q"), ("q", "r"), ("r", "p"), ("q", "s"), ("s", "p"), ("p", "t")],
              {"t": [2, 6], "m": [2, 3], "b": [2, 0], "p": [1, 5], "q": [1, 1], "r": [0, 3], "s": [1, 3]},
              {"t": 4, "b": 0}, ["overlay"]),
    embedding("marked_diamond", ["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
              {"a": [1, 0], "b": [0, 1], "c": [2, 1], "d": [1, 2]}, {"a": 0, "d": 2}),
    embedding("split_middle", ["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
              {"a": [1, 0], "b": [0, 1], "c": [2, 1], "d": [1, 2]}, {"a": 0, "c": 2, "d": 4}),
]


# --- brute force -------------------------------------------------------------

def count_flows(vertices, edges, netflow):
    """Integer flows by pushing each vertex's inflow plus netflow out along its edges."""
    out_edges = [[k for k, e in enumerate(edges) if e[0] == v] for v in range(vertices)]
    flow = [0] * len(edges)

    def splits(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in splits(total - first, parts - 1):
                yield (first,) + rest

    def rec(v):
        if v == vertices - 1:
            inflow = sum(flow[k] for k, e in enumerate(edges) if e[1] == v)
            return 1 if inflow + netflow[v] == 0 else 0
        inflow = sum(flow[k] for k, e in enumerate(edges) if e[1] == v)
        total = inflow + netflow[v]
        if total < 0:
            return 0
        if not out_edges[v]:
            return rec(v + 1) if total == 0 else 0
        count = 0
        for split in splits(total, len(out_edges[v])):
            for k, x in zip(out_edges[v], split):
                flow[k] = x
            count += rec(v + 1)
        for k in out_edges[v]:
            flow[k] = 0
        return count

    return rec(0)


def catalan(i):
    c = 1
    for k in range(i):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def less_relation(elements, covers):
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    less = [[False] * n for _ in range(n)]
    for a, b in covers:
        less[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if less[i][k] and less[k][j]:
                    less[i][j] = True
    return less


def count_lattice_points(p):
    elements, covers = p["elements"], p["covers"]
    marking = {k: int(v) for k, v in p["marked"].items()}
    idx = {e: i for i, e in enumerate(elements)}
    if marking:
        lo, hi = min(marking.values()), max(marking.values())
    else:
        lo, hi = 0, 1
    free = [e for e in elements if e not in marking]
    count = 0
    for values in itertools.product(range(lo, hi + 1), repeat=len(free)):
        x = dict(marking)
        x.update(zip(free, values))
        if all(x[a] <= x[b] for a, b in covers):
            count += 1
    return count


def count_linear_extensions(p):
    less = less_relation(p["elements"], p["covers"])
    n = len(p["elements"])
    count = 0
    for perm in itertools.permutations(range(n)):
        pos = {v: i for i, v in enumerate(perm)}
        if all(pos[i] < pos[j] for i in range(n) for j in range(n) if less[i][j]):
            count += 1
    return count


def main():
    ROOT.mkdir(exist_ok=True)
    goldens = {"provenance": PROVENANCE, "networks": {}, "embeddings": {}}
    for net in NETWORKS + COMPLETE:
        a = [int(x) for x in net["netflow"]]
        entry = {"flows": str(count_flows(net["vertices"], net["edges"], a))}
        if len(net["edges"]) <= 10:
            entry["flows_dilated_2"] = str(count_flows(net["vertices"], net["edges"], [2 * x for x in a]))
        goldens["networks"][net["name"]] = entry
    for net in COMPLETE + [n for n in NETWORKS if "complete_graph" in n["tags"]]:
        # netflow (1,0,...,0,-1) on a complete DAG: every leaf is a unimodular
        # simplex, so the leaf count is the normalized volume prod C_1..C_{V-3}
        leaves = 1
        for i in range(1, net["vertices"] - 2):
            leaves *= catalan(i)
        goldens["networks"][net["name"]]["reduction_leaves"] = str(leaves)
    for fx in EMBEDDINGS:
        p = fx["embedding"]["poset"]
        entry = {"lattice_points": str(count_lattice_points(p))}
        if not p["marked"]:
            entry["linear_extensions"] = str(count_linear_extensions(p))
        goldens["embeddings"][fx["name"]] = entry
    (ROOT / "networks.json").write_text(json.dumps({"networks": NETWORKS}, indent=1) + "\n")
    (ROOT / "complete_graphs.json").write_text(json.dumps({"networks": COMPLETE}, indent=1) + "\n")
    (ROOT / "embeddings.json").write_text(json.dumps({"embeddings": EMBEDDINGS}, indent=1) + "\n")
    (ROOT / "goldens.json").write_text(json.dumps(goldens, indent=1, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
