# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels; same algorithms and outputs as ``_pykernels``."""

from libc.stdlib cimport malloc, free

DEF FOUND = 0
DEF NONE_POSSIBLE = 1
DEF BUDGET_EXHAUSTED = 2


def reach(int n, const int[:] out_start, const int[:] heads, int src, const unsigned char[:] alive):
    seen = bytearray(n)
    cdef unsigned char[:] s = seen
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int qh = 0, qt = 0, u, e, w
    s[src] = 1
    queue[qt] = src
    qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for e in range(out_start[u], out_start[u + 1]):
            if alive[e]:
                w = heads[e]
                if not s[w]:
                    s[w] = 1
                    queue[qt] = w
                    qt += 1
    free(queue)
    return seen


def reach_reverse(int n, const int[:] in_start, const int[:] in_edges, const int[:] tails, int src,
                  const unsigned char[:] alive):
    seen = bytearray(n)
    cdef unsigned char[:] s = seen
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int qh = 0, qt = 0, u, j, e, w
    s[src] = 1
    queue[qt] = src
    qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for j in range(in_start[u], in_start[u + 1]):
            e = in_edges[j]
            if alive[e]:
                w = tails[e]
                if not s[w]:
                    s[w] = 1
                    queue[qt] = w
                    qt += 1
    free(queue)
    return seen


cdef bint _reaches(int n, const int[:] out_start, const int[:] heads, int src, int dst,
                   const unsigned char[:] alive, unsigned char* seen, int* queue) nogil:
    cdef int qh = 0, qt = 0, u, e, w, i
    if src == dst:
        return True
    for i in range(n):
        seen[i] = 0
    seen[src] = 1
    queue[qt] = src
    qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for e in range(out_start[u], out_start[u + 1]):
            if alive[e]:
                w = heads[e]
                if not seen[w]:
                    if w == dst:
                        return True
                    seen[w] = 1
                    queue[qt] = w
                    qt += 1
    return False


def reaches(int n, const int[:] out_start, const int[:] heads, int src, int dst, const unsigned char[:] alive):
    cdef unsigned char* seen = <unsigned char*>malloc(n)
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef bint r = _reaches(n, out_start, heads, src, dst, alive, seen, queue)
    free(seen)
    free(queue)
    return r


def bfs_path(int n, const int[:] out_start, const int[:] heads, int src, int dst, const unsigned char[:] alive):
    if src == dst:
        return []
    cdef int* parent = <int*>malloc(n * sizeof(int))
    cdef int* parent_edge = <int*>malloc(n * sizeof(int))
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int qh = 0, qt = 0, u, e, w, i
    cdef bint found = False
    for i in range(n):
        parent[i] = -1
    parent[src] = src
    queue[qt] = src
    qt += 1
    while qh < qt and not found:
        u = queue[qh]
        qh += 1
        for e in range(out_start[u], out_start[u + 1]):
            if alive[e]:
                w = heads[e]
                if parent[w] < 0:
                    parent[w] = u
                    parent_edge[w] = e
                    if w == dst:
                        found = True
                        break
                    queue[qt] = w
                    qt += 1
    result = None
    if found:
        result = []
        w = dst
        while w != src:
            result.append(parent_edge[w])
            w = parent[w]
        result.reverse()
    free(parent)
    free(parent_edge)
    free(queue)
    return result


def max_flow(int n, const int[:] out_start, const int[:] heads, const int[:] in_start, const int[:] in_edges,
             const int[:] tails, int src, int dst):
    cdef int m = heads.shape[0]
    flow = bytearray(m)
    cdef unsigned char[:] f = flow
    cdef int* parent = <int*>malloc(n * sizeof(int))
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int qh, qt, u, e, j, w, p, value = 0
    seen = None
    cdef unsigned char[:] s
    while True:
        seen = bytearray(n)
        s = seen
        s[src] = 1
        qh = 0
        qt = 0
        queue[qt] = src
        qt += 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            for e in range(out_start[u], out_start[u + 1]):
                if not f[e]:
                    w = heads[e]
                    if not s[w]:
                        s[w] = 1
                        parent[w] = e
                        queue[qt] = w
                        qt += 1
            for j in range(in_start[u], in_start[u + 1]):
                e = in_edges[j]
                if f[e]:
                    w = tails[e]
                    if not s[w]:
                        s[w] = 1
                        parent[w] = ~e
                        queue[qt] = w
                        qt += 1
            if s[dst]:
                break
        if not s[dst]:
            break
        w = dst
        while w != src:
            p = parent[w]
            if p >= 0:
                f[p] = 1
                w = tails[p]
            else:
                f[~p] = 0
                w = heads[~p]
        value += 1
    free(parent)
    free(queue)
    return value, flow, seen


cdef class _PairSearch:
    cdef int n, src, dst
    cdef long long budget, explored, tested
    cdef bint truncated
    cdef const int[:] out_start
    cdef const int[:] heads
    cdef unsigned char[:] alive
    cdef unsigned char* on_path
    cdef unsigned char* seen
    cdef int* queue
    cdef int* dist
    cdef int* path
    cdef int path_len

    def __cinit__(self, int n, const int[:] out_start, const int[:] heads, int src, int dst, long long budget):
        self.n = n
        self.src = src
        self.dst = dst
        self.budget = budget
        self.out_start = out_start
        self.heads = heads
        self.alive = bytearray(b"\x01") * heads.shape[0]
        self.on_path = <unsigned char*>malloc(n)
        self.seen = <unsigned char*>malloc(n)
        self.queue = <int*>malloc(n * sizeof(int))
        self.dist = <int*>malloc(n * sizeof(int))
        self.path = <int*>malloc((n + 1) * sizeof(int))
        for i in range(n):
            self.on_path[i] = 0
        self.on_path[src] = 1
        self.path_len = 0

    def __dealloc__(self):
        free(self.on_path)
        free(self.seen)
        free(self.queue)
        free(self.dist)
        free(self.path)

    cdef int _distance(self, int x) nogil:
        cdef int qh = 0, qt = 0, u, e, w, du, i
        if x == self.dst:
            return 0
        for i in range(self.n):
            self.dist[i] = -1
        self.dist[x] = 0
        self.queue[qt] = x
        qt += 1
        while qh < qt:
            u = self.queue[qh]
            qh += 1
            du = self.dist[u] + 1
            for e in range(self.out_start[u], self.out_start[u + 1]):
                w = self.heads[e]
                if self.dist[w] < 0 and not self.on_path[w]:
                    if w == self.dst:
                        return du
                    self.dist[w] = du
                    self.queue[qt] = w
                    qt += 1
        return -1

    cdef int visit(self, int x, int depth, int limit):
        cdef int d, e, y, prev, r
        self.explored += 1
        if self.explored > self.budget:
            return BUDGET_EXHAUSTED
        if x == self.dst:
            if depth != limit:
                return NONE_POSSIBLE
            self.tested += 1
            if _reaches(self.n, self.out_start, self.heads, self.dst, self.src, self.alive, self.seen, self.queue):
                return FOUND
            return NONE_POSSIBLE
        if not _reaches(self.n, self.out_start, self.heads, self.dst, self.src, self.alive, self.seen, self.queue):
            return NONE_POSSIBLE
        d = self._distance(x)
        if d < 0:
            return NONE_POSSIBLE
        if depth + d > limit:
            self.truncated = True
            return NONE_POSSIBLE
        prev = -1
        for e in range(self.out_start[x], self.out_start[x + 1]):
            y = self.heads[e]
            if y == prev:
                continue
            prev = y
            if self.on_path[y]:
                continue
            self.on_path[y] = 1
            self.alive[e] = 0
            self.path[self.path_len] = e
            self.path_len += 1
            r = self.visit(y, depth + 1, limit)
            if r != NONE_POSSIBLE:
                return r
            self.path_len -= 1
            self.alive[e] = 1
            self.on_path[y] = 0
        return NONE_POSSIBLE

    def run(self):
        cdef int limit = 1, r
        while True:
            self.truncated = False
            r = self.visit(self.src, 0, limit)
            if r == FOUND:
                p = [self.path[i] for i in range(self.path_len)]
                q = bfs_path(self.n, self.out_start, self.heads, self.dst, self.src, self.alive)
                return FOUND, p, q, self.explored, self.tested
            if r == BUDGET_EXHAUSTED:
                return BUDGET_EXHAUSTED, [], [], self.explored, self.tested
            if not self.truncated:
                return NONE_POSSIBLE, [], [], self.explored, self.tested
            limit += 1


def pair_search(int n, const int[:] out_start, const int[:] heads, int src, int dst, long long budget):
    return _PairSearch(n, out_start, heads, src, dst, budget).run()
