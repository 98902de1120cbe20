#!/usr/bin/env python3
"""Regenerate the bundled strongly regular graph families under data/.

Small families are built directly from their classical constructions. The
(26,10,3,4) and (25,12,5,6) families are recovered by Seidel switching: every
SRG(26,10,3,4) lies in the switching class of a regular two-graph on 26
vertices, and the descendants of those two-graphs are the SRG(25,12,5,6).
Seeds (Paley(25), Latin-square graphs of order 5, Steiner triple system block
graphs and their complements) are closed under switching and de-duplicated by
nauty canonical labelling.

Requires: networkx, numba, numpy, pynauty.
"""

import itertools
import random
import sys
from pathlib import Path

import networkx as nx
import numba
import numpy as np
import pynauty


def canon(g: nx.Graph) -> bytes:
    n = g.number_of_nodes()
    nodes = sorted(g.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    adj = {i: [idx[w] for w in g[v]] for v, i in idx.items()}
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


def srg_params(g: nx.Graph):
    a = nx.to_numpy_array(g, nodelist=sorted(g.nodes()), dtype=np.int64)
    n = a.shape[0]
    deg = a.sum(axis=1)
    if not (deg == deg[0]).all():
        return None
    a2 = a @ a
    lam = {int(a2[i, j]) for i in range(n) for j in range(n) if i != j and a[i, j]}
    mu = {int(a2[i, j]) for i in range(n) for j in range(n) if i != j and not a[i, j]}
    if len(lam) != 1 or len(mu) != 1:
        return None
    return (n, int(deg[0]), lam.pop(), mu.pop())


def dedupe(graphs):
    seen = {}
    for g in graphs:
        c = canon(g)
        if c not in seen:
            seen[c] = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return list(seen.values())


def paley(q: int, p: int, poly):
    """Paley graph on GF(q), q = p^2, built from x^2 = poly[0] + poly[1] x."""
    elems = [(a, b) for a in range(p) for b in range(p)]

    def mul(x, y):
        a, b = x
        c, d = y
        # (a + b x)(c + d x) with x^2 = r0 + r1 x
        r0, r1 = poly
        return ((a * c + b * d * r0) % p, (a * d + b * c + b * d * r1) % p)

    squares = {mul(x, x) for x in elems if x != (0, 0)}
    g = nx.Graph()
    g.add_nodes_from(range(q))
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if i < j and ((x[0] - y[0]) % p, (x[1] - y[1]) % p) in squares:
                g.add_edge(i, j)
    return g


def latin_square_graph(sq):
    n = len(sq)
    g = nx.Graph()
    cells = [(r, c) for r in range(n) for c in range(n)]
    g.add_nodes_from(range(n * n))
    for i, (r1, c1) in enumerate(cells):
        for j, (r2, c2) in enumerate(cells):
            if i < j and (r1 == r2 or c1 == c2 or sq[r1][c1] == sq[r2][c2]):
                g.add_edge(i, j)
    return g


def latin_squares(n):
    """All reduced Latin squares of order n (first row and column in order)."""
    out = []
    rows = [list(range(n))]

    def rec(rows):
        r = len(rows)
        if r == n:
            out.append([row[:] for row in rows])
            return
        for perm in itertools.permutations(range(n)):
            if perm[0] != r:
                continue
            if all(perm[c] != rows[k][c] for k in range(r) for c in range(n)):
                rows.append(list(perm))
                rec(rows)
                rows.pop()

    rec(rows)
    return out


def random_sts(v, rng):
    """Stinson's hill-climbing construction of a Steiner triple system."""
    live = {x: set(range(v)) - {x} for x in range(v)}
    other = {}
    blocks = set()
    while len(blocks) < v * (v - 1) // 6:
        x = rng.choice([y for y in range(v) if live[y]])
        y, z = rng.sample(sorted(live[x]), 2)
        if z in live[y]:
            pass
        else:
            w = other[(y, z)]
            old = tuple(sorted((w, y, z)))
            blocks.discard(old)
            for a, b in itertools.permutations(old, 2):
                other.pop((a, b), None)
            live[w].add(y); live[y].add(w)
            live[w].add(z); live[z].add(w)
            live[y].add(z); live[z].add(y)
        blk = tuple(sorted((x, y, z)))
        blocks.add(blk)
        for a, b in itertools.permutations(blk, 2):
            live[a].discard(b)
        for a, b, c in itertools.permutations(blk, 3):
            other[(a, b)] = c
    return sorted(blocks)


def sts13_block_graph(blocks):
    assert len(blocks) == 26
    g = nx.Graph()
    g.add_nodes_from(range(26))
    for i, j in itertools.combinations(range(26), 2):
        if set(blocks[i]) & set(blocks[j]):
            g.add_edge(i, j)
    return g


@numba.njit(cache=True)
def _regular_switchings(rows, n, k, limit):
    """Gray-code walk over switching sets that avoid vertex n-1.

    rows[v] is the adjacency bitmask of v. Returns switching masks whose
    switched graph is k-regular.
    """
    cur = rows.copy()
    full = (np.int64(1) << n) - 1
    hits = np.zeros(limit, dtype=np.int64)
    nhits = 0
    s = np.int64(0)
    total = np.int64(1) << (n - 1)
    for step in range(1, total):
        # bit that flips between gray(step-1) and gray(step)
        u = 0
        t = step
        while (t & 1) == 0:
            t >>= 1
            u += 1
        s ^= np.int64(1) << u
        cur[u] ^= full ^ (np.int64(1) << u)
        for w in range(n):
            if w != u:
                cur[w] ^= np.int64(1) << u
        ok = True
        for w in range(n):
            c = 0
            x = cur[w]
            while x:
                x &= x - 1
                c += 1
            if c != k:
                ok = False
                break
        if ok and nhits < limit:
            hits[nhits] = s
            nhits += 1
    return hits[:nhits]


def switch(g: nx.Graph, subset):
    n = g.number_of_nodes()
    s = set(subset)
    h = nx.Graph()
    h.add_nodes_from(range(n))
    for i, j in itertools.combinations(range(n), 2):
        e = g.has_edge(i, j)
        if (i in s) != (j in s):
            e = not e
        if e:
            h.add_edge(i, j)
    return h


def add_isolated(g25: nx.Graph):
    g = nx.Graph(g25)
    g.add_node(25)
    return g


def regular_members(g26: nx.Graph, k: int):
    n = 26
    rows = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for w in g26[v]:
            rows[v] |= 1 << w
    hits = _regular_switchings(rows, n, k, 1 << 20)
    members = []
    for mask in hits:
        subset = [v for v in range(n) if (int(mask) >> v) & 1]
        members.append(switch(g26, subset))
    return dedupe(members)


def descendants(g26: nx.Graph):
    out = []
    for v in range(26):
        h = switch(g26, list(g26[v]))
        h.remove_node(v)
        out.append(nx.convert_node_labels_to_integers(h, ordering="sorted"))
    return out


def write_family(path: Path, graphs):
    lines = [nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs]
    lines.sort()
    path.write_text("".join(l + "\n" for l in lines))


def main(out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)

    write_family(out_dir / "srg_10_3_0_1.g6", [nx.petersen_graph()])

    shrikhande = nx.Graph()
    for a, b in itertools.product(range(4), repeat=2):
        for da, db in [(0, 1), (1, 0), (1, 1)]:
            shrikhande.add_edge(4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4)
            shrikhande.add_edge(4 * a + b, 4 * ((a - da) % 4) + (b - db) % 4)
    rook = nx.cartesian_product(nx.complete_graph(4), nx.complete_graph(4))
    fam16 = dedupe([shrikhande, rook])
    write_family(out_dir / "srg_16_6_2_2.g6", fam16)
    write_family(out_dir / "srg_16_9_4_6.g6", dedupe([nx.complement(g) for g in fam16]))

    write_family(out_dir / "srg_13_6_2_3.g6", [nx.paley_graph(13).to_undirected()])
    clebsch = nx.Graph()
    for i, j in itertools.combinations(range(16), 2):
        if bin(i ^ j).count("1") in (1, 4):
            clebsch.add_edge(i, j)
    write_family(out_dir / "srg_16_5_0_2.g6", [clebsch])

    # T(8) and the three Chang graphs: switch T(8) on the edge sets of
    # 4 disjoint edges, C3+C5, and C8 in K8.
    t8 = nx.line_graph(nx.complete_graph(8))
    t8 = nx.convert_node_labels_to_integers(t8, ordering="sorted", label_attribute="pair")
    pair_of = {v: frozenset(t8.nodes[v]["pair"]) for v in t8}
    switch_sets = [
        [],
        [frozenset(p) for p in [(0, 1), (2, 3), (4, 5), (6, 7)]],
        [frozenset(p) for p in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3)]],
        [frozenset((i, (i + 1) % 8)) for i in range(8)],
    ]
    fam28 = []
    for sw in switch_sets:
        h = switch(t8, [v for v in t8 if pair_of[v] in sw])
        fam28.append(h)
    fam28 = dedupe(fam28)
    assert len(fam28) == 4 and all(srg_params(g) == (28, 12, 6, 4) for g in fam28)
    write_family(out_dir / "srg_28_12_6_4.g6", fam28)

    # (25,12,5,6) seeds.
    seeds25 = [paley(25, 5, (2, 0))]
    seeds25 += dedupe(latin_square_graph(sq) for sq in latin_squares(5))
    seeds25 = [g for g in seeds25 if srg_params(g) == (25, 12, 5, 6)]
    rng = random.Random(1)
    seeds26 = dedupe(nx.complement(sts13_block_graph(random_sts(13, rng))) for _ in range(200))

    fam25, fam26 = {}, {}
    pending = [add_isolated(g) for g in seeds25] + seeds26
    pending += [add_isolated(nx.complement(g)) for g in seeds25]
    for g in seeds26:
        if srg_params(g) == (26, 10, 3, 4):
            fam26.setdefault(canon(g), g)
    visited_classes = set()
    while pending:
        g26 = pending.pop()
        desc = descendants(g26)
        key = min(canon(d) for d in desc)
        if key in visited_classes:
            continue
        visited_classes.add(key)
        for d in desc:
            if srg_params(d) == (25, 12, 5, 6):
                fam25.setdefault(canon(d), d)
                pending.append(add_isolated(nx.complement(d)))
        for m in regular_members(g26, 10):
            if srg_params(m) == (26, 10, 3, 4):
                fam26.setdefault(canon(m), m)
        print(f"two-graphs: {len(visited_classes)}, (25,12,5,6): {len(fam25)}, "
              f"(26,10,3,4): {len(fam26)}", file=sys.stderr)

    write_family(out_dir / "srg_25_12_5_6.g6", list(fam25.values()))
    write_family(out_dir / "srg_26_10_3_4.g6", list(fam26.values()))


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")
