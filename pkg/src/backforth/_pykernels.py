"""Pure-Python kernels over CSR integer arrays.

Reference implementation for ``_ckernels.pyx``; both must return identical
results for identical input.  Edge ids index ``heads``/``tails``; ``alive``
is a per-edge 0/1 bytearray.
"""

import sys

FOUND, NONE_POSSIBLE, BUDGET_EXHAUSTED = 0, 1, 2


def reach(n, out_start, heads, src, alive):
    seen = bytearray(n)
    seen[src] = 1
    queue = [src]
    for u in queue:
        for e in range(out_start[u], out_start[u + 1]):
            if alive[e]:
                w = heads[e]
                if not seen[w]:
                    seen[w] = 1
                    queue.append(w)
    return seen


def reach_reverse(n, in_start, in_edges, tails, src, alive):
    seen = bytearray(n)
    seen[src] = 1
    queue = [src]
    for u in queue:
        for j in range(in_start[u], in_start[u + 1]):
            e = in_edges[j]
            if alive[e]:
                w = tails[e]
                if not seen[w]:
                    seen[w] = 1
                    queue.append(w)
    return seen


def reaches(n, out_start, heads, src, dst, alive):
    if src == dst:
        return True
    seen = bytearray(n)
    seen[src] = 1
    queue = [src]
    for u in queue:
        for e in range(out_start[u], out_start[u + 1]):
            if alive[e]:
                w = heads[e]
                if not seen[w]:
                    if w == dst:
                        return True
                    seen[w] = 1
                    queue.append(w)
    return False


def bfs_path(n, out_start, heads, src, dst, alive):
    """Edge ids of a shortest src -> dst path, first-found in edge order."""
    if src == dst:
        return []
    parent_edge = [-1] * n
    parent = [-1] * n
    parent[src] = src
    queue = [src]
    for u in queue:
        for e in range(out_start[u], out_start[u + 1]):
            if alive[e]:
                w = heads[e]
                if parent[w] < 0:
                    parent[w] = u
                    parent_edge[w] = e
                    if w == dst:
                        path = []
                        while w != src:
                            path.append(parent_edge[w])
                            w = parent[w]
                        path.reverse()
                        return path
                    queue.append(w)
    return None


def max_flow(n, out_start, heads, in_start, in_edges, tails, src, dst):
    """Unit-capacity max flow by shortest augmenting paths.

    Returns ``(value, flow, side)`` where ``flow[e]`` is 0/1 and ``side`` marks
    the vertices residual-reachable from ``src`` after the last search.
    """
    flow = bytearray(len(heads))
    value = 0
    while True:
        seen = bytearray(n)
        seen[src] = 1
        parent = [0] * n
        queue = [src]
        for u in queue:
            for e in range(out_start[u], out_start[u + 1]):
                if not flow[e]:
                    w = heads[e]
                    if not seen[w]:
                        seen[w] = 1
                        parent[w] = e
                        queue.append(w)
            for j in range(in_start[u], in_start[u + 1]):
                e = in_edges[j]
                if flow[e]:
                    w = tails[e]
                    if not seen[w]:
                        seen[w] = 1
                        parent[w] = ~e
                        queue.append(w)
            if seen[dst]:
                break
        if not seen[dst]:
            return value, flow, seen
        w = dst
        while w != src:
            p = parent[w]
            if p >= 0:
                flow[p] = 1
                w = tails[p]
            else:
                flow[~p] = 0
                w = heads[~p]
        value += 1


def _dist(n, out_start, heads, src, dst, blocked):
    # BFS distance src -> dst through vertices not marked in ``blocked``
    if src == dst:
        return 0
    dist = [-1] * n
    dist[src] = 0
    queue = [src]
    for u in queue:
        du = dist[u] + 1
        for e in range(out_start[u], out_start[u + 1]):
            w = heads[e]
            if dist[w] < 0 and not blocked[w]:
                if w == dst:
                    return du
                dist[w] = du
                queue.append(w)
    return -1


def pair_search(n, out_start, heads, src, dst, budget):
    """Search for edge-disjoint src -> dst and dst -> src paths.

    src -> dst simple paths are enumerated by iterative deepening on exact
    length, children in edge order, one representative per parallel bundle.
    A prefix is abandoned once dst can no longer reach src without its
    edges, since extending it only removes more edges.

    Returns ``(status, p_edges, q_edges, explored, tested)``.
    """
    if sys.getrecursionlimit() < n + 100:
        sys.setrecursionlimit(n + 100)
    alive = bytearray(b"\x01") * len(heads)
    on_path = bytearray(n)
    on_path[src] = 1
    path = []
    state = {"explored": 0, "tested": 0, "truncated": False}

    def visit(x, depth, limit):
        state["explored"] += 1
        if state["explored"] > budget:
            return BUDGET_EXHAUSTED
        if x == dst:
            if depth != limit:
                return NONE_POSSIBLE
            state["tested"] += 1
            return FOUND if reaches(n, out_start, heads, dst, src, alive) else NONE_POSSIBLE
        if not reaches(n, out_start, heads, dst, src, alive):
            return NONE_POSSIBLE
        d = _dist(n, out_start, heads, x, dst, on_path)
        if d < 0:
            return NONE_POSSIBLE
        if depth + d > limit:
            state["truncated"] = True
            return NONE_POSSIBLE
        prev = -1
        for e in range(out_start[x], out_start[x + 1]):
            y = heads[e]
            if y == prev:
                continue
            prev = y
            if on_path[y]:
                continue
            on_path[y] = 1
            alive[e] = 0
            path.append(e)
            r = visit(y, depth + 1, limit)
            if r != NONE_POSSIBLE:
                return r
            path.pop()
            alive[e] = 1
            on_path[y] = 0
        return NONE_POSSIBLE

    limit = 1
    while True:
        state["truncated"] = False
        r = visit(src, 0, limit)
        if r == FOUND:
            q = bfs_path(n, out_start, heads, dst, src, alive)
            return FOUND, list(path), q, state["explored"], state["tested"]
        if r == BUDGET_EXHAUSTED:
            return BUDGET_EXHAUSTED, [], [], state["explored"], state["tested"]
        if not state["truncated"]:
            return NONE_POSSIBLE, [], [], state["explored"], state["tested"]
        limit += 1
