# distutils: language = c++
"""Compiled kernels for the hot loops.

Mirrors :mod:`citegraph._kernels_py` exactly, including the splitmix64
stream consumed by the swap kernel; the parity suite asserts equality.
Edge ids are positions in the forward CSR arrays.
"""

from libc.stdlib cimport free, malloc, realloc
from libcpp.unordered_set cimport unordered_set

import numpy as np

ctypedef long long i64
ctypedef unsigned long long u64


cdef inline u64 _mix64(u64 z) nogil:
    z = (z ^ (z >> 30)) * <u64>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <u64>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline u64 _next_u64(u64* state) nogil:
    state[0] = state[0] + <u64>0x9E3779B97F4A7C15
    return _mix64(state[0])


def bfs_halved_fill(const i64[::1] s_indptr, const int[::1] s_indices,
                    const i64[::1] t_indptr, const int[::1] t_indices,
                    int origin, int[::1] dist):
    """Level BFS from one source; halved distances into prefilled dist."""
    cdef Py_ssize_t n_sources = s_indptr.shape[0] - 1
    cdef Py_ssize_t n_targets = t_indptr.shape[0] - 1
    frontier_arr = np.empty(n_sources, dtype=np.int32)
    next_arr = np.empty(n_sources, dtype=np.int32)
    tfront_arr = np.empty(n_targets, dtype=np.int32)
    seen_arr = np.zeros(n_targets, dtype=np.uint8)
    cdef int[::1] frontier = frontier_arr
    cdef int[::1] nxt = next_arr
    cdef int[::1] tfront = tfront_arr
    cdef unsigned char[::1] t_seen = seen_arr
    cdef Py_ssize_t fsize = 1, tsize, nsize, i
    cdef i64 j
    cdef int s, t, level = 0
    frontier[0] = origin
    dist[origin] = 0
    with nogil:
        while fsize > 0:
            tsize = 0
            for i in range(fsize):
                s = frontier[i]
                for j in range(s_indptr[s], s_indptr[s + 1]):
                    t = s_indices[j]
                    if t_seen[t] == 0:
                        t_seen[t] = 1
                        tfront[tsize] = t
                        tsize += 1
            nsize = 0
            for i in range(tsize):
                t = tfront[i]
                for j in range(t_indptr[t], t_indptr[t + 1]):
                    s = t_indices[j]
                    if dist[s] < 0:
                        dist[s] = level + 1
                        nxt[nsize] = s
                        nsize += 1
            level += 1
            for i in range(nsize):
                frontier[i] = nxt[i]
            fsize = nsize


cdef struct _Heap:
    double* key
    int* node
    Py_ssize_t size
    Py_ssize_t cap


cdef inline bint _heap_less(_Heap* h, Py_ssize_t a, Py_ssize_t b) nogil:
    if h.key[a] != h.key[b]:
        return h.key[a] < h.key[b]
    return h.node[a] < h.node[b]


cdef inline int _heap_push(_Heap* h, double key, int node) nogil:
    cdef Py_ssize_t i, parent
    cdef double tk
    cdef int tn
    if h.size == h.cap:
        h.cap = h.cap * 2
        h.key = <double*>realloc(h.key, h.cap * sizeof(double))
        h.node = <int*>realloc(h.node, h.cap * sizeof(int))
        if h.key == NULL or h.node == NULL:
            return -1
    h.key[h.size] = key
    h.node[h.size] = node
    i = h.size
    h.size += 1
    while i > 0:
        parent = (i - 1) >> 1
        if _heap_less(h, i, parent):
            tk = h.key[i]; h.key[i] = h.key[parent]; h.key[parent] = tk
            tn = h.node[i]; h.node[i] = h.node[parent]; h.node[parent] = tn
            i = parent
        else:
            break
    return 0


cdef inline void _heap_pop(_Heap* h, double* key, int* node) nogil:
    cdef Py_ssize_t i = 0, left, right, best
    cdef double tk
    cdef int tn
    key[0] = h.key[0]
    node[0] = h.node[0]
    h.size -= 1
    h.key[0] = h.key[h.size]
    h.node[0] = h.node[h.size]
    while True:
        left = 2 * i + 1
        right = left + 1
        best = i
        if left < h.size and _heap_less(h, left, best):
            best = left
        if right < h.size and _heap_less(h, right, best):
            best = right
        if best == i:
            return
        tk = h.key[i]; h.key[i] = h.key[best]; h.key[best] = tk
        tn = h.node[i]; h.node[i] = h.node[best]; h.node[best] = tn
        i = best


def overlap_dijkstra_fill(const i64[::1] s_indptr, const int[::1] s_indices,
                          const i64[::1] t_indptr, const int[::1] t_indices,
                          int origin, double[::1] dist):
    """Lazy Dijkstra over the co-reference projection (weight 1/shared)."""
    cdef Py_ssize_t n_sources = s_indptr.shape[0] - 1
    done_arr = np.zeros(n_sources, dtype=np.uint8)
    count_arr = np.zeros(n_sources, dtype=np.int32)
    touched_arr = np.empty(n_sources, dtype=np.int32)
    cdef unsigned char[::1] done = done_arr
    cdef int[::1] shared = count_arr
    cdef int[::1] touched = touched_arr
    cdef _Heap heap
    heap.size = 0
    heap.cap = 1024
    heap.key = <double*>malloc(heap.cap * sizeof(double))
    heap.node = <int*>malloc(heap.cap * sizeof(int))
    if heap.key == NULL or heap.node == NULL:
        free(heap.key); free(heap.node)
        raise MemoryError()
    cdef double d, nd
    cdef int u, v, t
    cdef i64 j, l
    cdef Py_ssize_t ntouched, i
    cdef int failed = 0
    dist[origin] = 0.0
    with nogil:
        if _heap_push(&heap, 0.0, origin) != 0:
            failed = 1
        while heap.size > 0 and not failed:
            _heap_pop(&heap, &d, &u)
            if done[u] or d > dist[u]:
                continue
            done[u] = 1
            ntouched = 0
            for j in range(s_indptr[u], s_indptr[u + 1]):
                t = s_indices[j]
                for l in range(t_indptr[t], t_indptr[t + 1]):
                    v = t_indices[l]
                    if shared[v] == 0:
                        touched[ntouched] = v
                        ntouched += 1
                    shared[v] += 1
            for i in range(ntouched):
                v = touched[i]
                if v != u and done[v] == 0:
                    nd = d + 1.0 / shared[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        if _heap_push(&heap, nd, v) != 0:
                            failed = 1
                            break
                shared[v] = 0
            if failed:
                for i in range(ntouched):
                    shared[touched[i]] = 0
    free(heap.key)
    free(heap.node)
    if failed:
        raise MemoryError()


def double_edge_swap(int[::1] e_src, int[::1] e_tgt, i64 n_targets,
                     i64 n_attempts, u64 seed):
    """In-place degree-preserving swaps; returns accepted count."""
    cdef Py_ssize_t m = e_src.shape[0]
    cdef unordered_set[i64] edges
    edges.reserve(<size_t>(2 * m))
    cdef Py_ssize_t idx
    for idx in range(m):
        edges.insert(<i64>e_src[idx] * n_targets + e_tgt[idx])
    cdef u64 state = seed
    cdef i64 accepted = 0, a
    cdef Py_ssize_t i, j
    cdef int s1, t1, s2, t2
    cdef i64 k1, k2
    with nogil:
        for a in range(n_attempts):
            i = <Py_ssize_t>(_next_u64(&state) % <u64>m)
            j = <Py_ssize_t>(_next_u64(&state) % <u64>m)
            if i == j:
                continue
            s1 = e_src[i]; t1 = e_tgt[i]
            s2 = e_src[j]; t2 = e_tgt[j]
            if s1 == s2 or t1 == t2:
                continue
            k1 = <i64>s1 * n_targets + t2
            k2 = <i64>s2 * n_targets + t1
            if edges.count(k1) or edges.count(k2):
                continue
            edges.erase(<i64>s1 * n_targets + t1)
            edges.erase(<i64>s2 * n_targets + t2)
            edges.insert(k1)
            edges.insert(k2)
            e_tgt[i] = t2
            e_tgt[j] = t1
            accepted += 1
    return accepted


def edge_clustering_observed(const i64[::1] s_indptr, const int[::1] s_indices,
                             const i64[::1] t_indptr, const int[::1] t_indices,
                             i64[::1] observed):
    """Citations between the neighborhoods of every edge, CSR order."""
    cdef Py_ssize_t n_sources = s_indptr.shape[0] - 1
    cdef Py_ssize_t n_targets = t_indptr.shape[0] - 1
    mark_arr = np.zeros(n_targets, dtype=np.uint8)
    cdef unsigned char[::1] tmark = mark_arr
    cdef Py_ssize_t s
    cdef i64 e, j, l, p, count, n_others
    cdef int t, s2, t2
    with nogil:
        for s in range(n_sources):
            for e in range(s_indptr[s], s_indptr[s + 1]):
                tmark[s_indices[e]] = 1
            for e in range(s_indptr[s], s_indptr[s + 1]):
                t = s_indices[e]
                count = 0
                n_others = 0
                for j in range(t_indptr[t], t_indptr[t + 1]):
                    s2 = t_indices[j]
                    if s2 == s:
                        continue
                    n_others += 1
                    for l in range(s_indptr[s2], s_indptr[s2 + 1]):
                        t2 = s_indices[l]
                        if tmark[t2]:
                            count += 1
                # each co-citing source hits t itself exactly once
                observed[e] = count - n_others
            for e in range(s_indptr[s], s_indptr[s + 1]):
                tmark[s_indices[e]] = 0
