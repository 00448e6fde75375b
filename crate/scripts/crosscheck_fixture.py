#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Recompute a `citefield report` run with numpy/networkx and compare.

usage: crosscheck_fixture.py FIXTURE_DIR REPORT_DIR SEED[,SEED...]

Reads edges.csv, citable.csv (fixture) and report.json, map.net (report),
and exits non-zero on the first disagreement beyond 1e-9.
"""
import csv
import json
import math
import sys

import networkx as nx
import numpy as np

TOL = 1e-9


def key(abbrev):
    return abbrev.strip().lower()


def load_edges(path):
    cells = {}
    names = {}
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            a, b = row["citing"].strip(), row["cited"].strip()
            names.setdefault(key(a), a)
            names.setdefault(key(b), b)
            cells[(key(a), key(b))] = cells.get((key(a), key(b)), 0) + int(row["count"])
    return cells, names


def environment(cells, seeds, share=0.01):
    members = set(seeds)
    for s in seeds:
        column = {a: c for (a, b), c in cells.items() if b == s and c > 0}
        total = sum(column.values())
        members |= {a for a, c in column.items() if a != s and c > share * total}
    return members


def cosine_graph(cells, members, threshold=0.2):
    order = sorted(members)
    vec = {
        j: np.array([0.0 if i == j else float(cells.get((i, j), 0)) for i in order])
        for j in order
    }
    g = nx.Graph()
    g.add_nodes_from(order)
    for x in range(len(order)):
        for y in range(x + 1, len(order)):
            a, b = vec[order[x]], vec[order[y]]
            na, nb = np.linalg.norm(a), np.linalg.norm(b)
            if na == 0 or nb == 0:
                continue
            c = float(a @ b / (na * nb))
            if c >= threshold:
                g.add_edge(order[x], order[y], weight=c)
    return g


def impact_factors(path, year=2006, window=2):
    items, cites, selfc = {}, {}, {}
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            j, y, age = key(row["journal"]), int(row["year"]), int(row["age"])
            items[(j, y)] = int(row["citable_items"])
            cites[(j, y, age)] = int(row["cites"])
            selfc[(j, y, age)] = int(row["self_cites"])
    out = {}
    for j in {k[0] for k in items}:
        years = [(year - k, k) for k in range(1, window + 1)]
        if all((j, y) in items for y, _ in years):
            num = sum(cites.get((j, y, k), 0) for y, k in years)
            den = sum(items[(j, y)] for y, _ in years)
            own = sum(selfc.get((j, y, k), 0) for y, k in years)
            out[j] = (num / den, (num - own) / den)
    return out


def eigenvector(g):
    comp = max(nx.connected_components(g), key=len)
    nodes = sorted(comp)
    a = nx.to_numpy_array(g, nodelist=nodes, weight="weight")
    w, v = np.linalg.eigh(a)
    vec = np.abs(v[:, np.argmax(w)])
    vec /= vec.max()
    out = {n: 0.0 for n in g}
    out.update(dict(zip(nodes, vec)))
    return out


def close(a, b, what):
    if abs(a - b) > TOL:
        sys.exit(f"mismatch in {what}: report {a!r}, oracle {b!r}")


def main():
    fixture, report_dir, seeds = sys.argv[1], sys.argv[2], [key(s) for s in sys.argv[3].split(",")]
    cells, names = load_edges(f"{fixture}/edges.csv")
    members = environment(cells, seeds)
    g = cosine_graph(cells, members)
    report = json.load(open(f"{report_dir}/report.json"))

    got_members = {key(m["journal"]) for m in report["environment"]["members"]}
    if got_members != members:
        sys.exit(f"environment differs: {sorted(got_members ^ members)}")
    got_edges = {frozenset((key(e["source"]), key(e["target"]))): e["weight"] for e in report["similarity"]["edges"]}
    want_edges = {frozenset(e): d["weight"] for *e, d in g.edges(data=True)}
    if set(got_edges) != set(want_edges):
        sys.exit("edge sets differ")
    for e, w in want_edges.items():
        close(got_edges[e], w, f"cosine {sorted(e)}")

    betweenness = nx.betweenness_centrality(g, normalized=True)
    closeness = nx.closeness_centrality(g, wf_improved=True)
    degree = nx.degree_centrality(g)
    eig = eigenvector(g)
    for m in report["centrality"]["members"]:
        j = key(m["journal"])
        close(m["betweenness"], betweenness[j], f"betweenness {j}")
        close(m["closeness"], closeness[j], f"closeness {j}")
        close(m["degree"], degree[j], f"degree {j}")
        close(m["eigenvector"], eig[j], f"eigenvector {j}")

    ifs = impact_factors(f"{fixture}/citable.csv")
    for row in report["table"]:
        j = key(row["journal"])
        close(row["betweenness_pct"], 100 * betweenness[j], f"table betweenness {j}")
        close(row["closeness_pct"], 100 * closeness[j], f"table closeness {j}")
        if j in ifs:
            close(row["impact_factor"], ifs[j][0], f"impact factor {j}")
    for ind in report["indicators"]:
        j = key(ind["journal"])
        column = sorted((c for (a, b), c in cells.items() if b == j and a != j), reverse=True)
        h = sum(1 for i, c in enumerate(column) if c >= i + 1)
        if ind["h_index"] != h:
            sys.exit(f"h-index {j}: report {ind['h_index']}, oracle {h}")
        if j in ifs:
            close(ind["impact_factor"], ifs[j][0], f"impact factor {j}")
            close(ind["quasi_impact_factor"], ifs[j][1], f"quasi impact factor {j}")
        total = sum(c for (a, b), c in cells.items() if b == j)
        if ind["total_cited"] != total:
            sys.exit(f"total cited {j}")

    vertices, edges = 0, set()
    section = None
    with open(f"{report_dir}/map.net") as f:
        for line in f:
            if line.startswith("%") or not line.strip():
                continue
            if line.startswith("*"):
                section = line.split()[0].lower()
                continue
            if section == "*vertices":
                vertices += 1
            elif section == "*edges":
                edges.add(tuple(line.split()[:2]))
    if vertices != len(members) or len(edges) != len(want_edges):
        sys.exit("pajek counts differ")
    print(f"ok: {len(members)} members, {len(want_edges)} edges")


if __name__ == "__main__":
    main()
