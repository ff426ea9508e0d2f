"""Connectivity and global minimum cut over small weighted graphs.

Graphs are adjacency maps: vertex -> {neighbor: positive integer weight}.
The entry point is stability_cut_ok, which answers "is the graph connected
with min cut >= tau" while dodging the full Stoer-Wagner computation in
the common cases (tau 1, all edges heavy, tau 2 via bridge search).
"""

from __future__ import annotations


def connected(adj: dict) -> bool:
    if len(adj) <= 1:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(adj)


def _has_light_bridge(adj: dict, tau: int) -> bool:
    """True if some bridge edge weighs less than tau. Assumes connected."""
    disc = {}
    low = {}
    counter = 0
    root = next(iter(adj))
    disc[root] = low[root] = counter
    counter += 1
    stack = [(root, None, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        pushed = False
        for u in it:
            if u == parent:
                continue
            if u in disc:
                if disc[u] < low[v]:
                    low[v] = disc[u]
            else:
                disc[u] = low[u] = counter
                counter += 1
                stack.append((u, v, iter(adj[u])))
                pushed = True
                break
        if not pushed:
            stack.pop()
            if parent is not None:
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] > disc[parent] and adj[parent][v] < tau:
                    return True
    return False


def stoer_wagner(adj: dict) -> int:
    """Weight of a global minimum cut (0 when disconnected).

    Deterministic: vertices are merged in maximum-adjacency order with ties
    broken by original sort position.
    """
    if len(adj) < 2:
        raise ValueError("a cut needs at least two vertices")
    if not connected(adj):
        return 0
    names = sorted(adj)
    index = {v: i for i, v in enumerate(names)}
    graph = {i: {} for i in range(len(names))}
    for v, nbrs in adj.items():
        for u, w in nbrs.items():
            graph[index[v]][index[u]] = w
    nodes = list(range(len(names)))
    best = None
    while len(nodes) > 1:
        a0 = nodes[0]
        grown = [a0]
        conn = {v: graph[a0].get(v, 0) for v in nodes if v != a0}
        while conn:
            v = min(conn, key=lambda u: (-conn[u], u))
            phase_cut = conn[v]
            grown.append(v)
            del conn[v]
            for u, w in graph[v].items():
                if u in conn:
                    conn[u] += w
        if best is None or phase_cut < best:
            best = phase_cut
        t = grown[-1]
        s = grown[-2]
        for u, w in graph[t].items():
            if u == s:
                continue
            graph[s][u] = graph[s].get(u, 0) + w
            graph[u][s] = graph[s][u]
            del graph[u][t]
        graph[s].pop(t, None)
        del graph[t]
        nodes.remove(t)
    return best


def stability_cut_ok(adj: dict, tau: int) -> bool:
    """Connected and every cut weighs at least tau."""
    if len(adj) <= 1:
        return True
    if not connected(adj):
        return False
    if tau <= 1:
        return True
    lightest = min(min(nbrs.values()) for nbrs in adj.values())
    if lightest >= tau:
        return True
    if tau == 2:
        return not _has_light_bridge(adj, tau)
    return stoer_wagner(adj) >= tau
