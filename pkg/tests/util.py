"""Shared graph builders and rescan checkers for the test suite."""

from __future__ import annotations

import random
from itertools import combinations

from fastmis.graph import Graph, load


def path_graph(n: int) -> Graph:
    return load([(i, i + 1) for i in range(n - 1)], n)


def cycle_graph(n: int) -> Graph:
    return load([(i, (i + 1) % n) for i in range(n)], n)


def star_graph(leaves: int) -> Graph:
    return load([(0, i) for i in range(1, leaves + 1)], leaves + 1)


def complete_graph(n: int) -> Graph:
    return load(list(combinations(range(n), 2)), n)


def complete_bipartite(a: int, b: int) -> Graph:
    return load([(i, a + j) for i in range(a) for j in range(b)], a + b)


def empty_graph(n: int) -> Graph:
    return load([], n)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return load(outer + spokes + inner, 10)


def er_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return load(edges, n)


def random_tree(rng: random.Random, n: int) -> Graph:
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return load(edges, n)


def ba_graph(rng: random.Random, n: int, attach=3) -> Graph:
    """Preferential attachment: each new vertex wires to degree-weighted
    targets. ``attach`` is a link count or a tuple sampled per vertex;
    mixed counts give the degree-1 and degree-2 mass real complex
    networks carry alongside their hubs."""
    choices = attach if isinstance(attach, tuple) else (attach,)
    edges = [(0, 1)]
    pool = [0, 1]
    for v in range(2, n):
        want = rng.choice(choices)
        targets = set()
        tries = 0
        while len(targets) < want and tries < 20 * want:
            targets.add(pool[rng.randrange(len(pool))])
            tries += 1
        for t in targets:
            edges.append((v, t))
            pool.append(v)
            pool.append(t)
    return load(edges, n)


def brute_mis_size(g: Graph) -> int:
    """Independent ground truth by subset enumeration over alive vertices."""
    vertices = g.alive_vertices()
    assert len(vertices) <= 16, "enumeration oracle capped at 16 vertices"
    nbr_mask = {v: 0 for v in vertices}
    index = {v: i for i, v in enumerate(vertices)}
    for v in vertices:
        for u in g.neighbors_live(v):
            nbr_mask[v] |= 1 << index[u]
    best = 0
    for mask in range(1 << len(vertices)):
        chosen = [v for v in vertices if mask >> index[v] & 1]
        if len(chosen) <= best:
            continue
        if all(mask & nbr_mask[v] == 0 for v in chosen):
            best = len(chosen)
    return best


def brute_lp_optima(g: Graph):
    """All optimal half-integral assignments, by enumeration over {0,.5,1}."""
    vertices = g.alive_vertices()
    assert len(vertices) <= 9
    edges = [(u, v) for u, v in g.edges()]
    best_value = -1.0
    best: list[dict[int, float]] = []
    levels = (0.0, 0.5, 1.0)

    def walk(i, assignment):
        nonlocal best_value, best
        if i == len(vertices):
            value = sum(assignment.values())
            if value > best_value + 1e-9:
                best_value = value
                best = [dict(assignment)]
            elif abs(value - best_value) <= 1e-9:
                best.append(dict(assignment))
            return
        v = vertices[i]
        for x in levels:
            ok = all(
                assignment.get(u, 0.0) + x <= 1.0 + 1e-9
                for u in g.neighbors_live(v)
                if u in assignment
            )
            if ok:
                assignment[v] = x
                walk(i + 1, assignment)
                del assignment[v]

    walk(0, {})
    for u, v in edges:
        for sol in best:
            assert sol[u] + sol[v] <= 1.0 + 1e-9
    return best_value, best


def is_independent(g: Graph, solution) -> bool:
    members = set(solution)
    for v in members:
        for u in g.adjacency[v]:
            if u in members:
                return False
    return True


def check_solution_state(sol) -> None:
    """Full rescan of the incremental search structures."""
    g = sol.graph
    members = sol.vertices()
    assert sol.size == len(members)
    for v in members:
        if g.alive[v]:
            for u in g.neighbors_live(v):
                assert not sol.in_solution[u], f"adjacent pair {v},{u} in solution"
    for v in g.alive_vertices():
        want = sum(1 for u in g.neighbors_live(v) if sol.in_solution[u])
        assert sol.tightness[v] == want, f"tightness[{v}]={sol.tightness[v]} want {want}"
        should_free = not sol.in_solution[v] and want == 0
        assert (v in sol.free) == should_free, f"free flag wrong at {v}"
        assert (v in sol.non_solution) == (not sol.in_solution[v])
