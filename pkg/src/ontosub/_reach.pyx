# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS reachability over a CSR adjacency (the closure hot kernel).

Same contract as ontosub._reach_py; ontosub.hierarchy picks whichever
imports. Start node is included in the result only if re-reached through a
cycle (second element of the returned tuple flags that).
"""

import numpy as np

cimport numpy as cnp


def reach(cnp.int32_t[::1] indptr, cnp.int32_t[::1] indices, int start):
    """BFS over CSR arrays; returns (reached int32 array, start_rereached)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    if start < 0 or start >= n:
        raise IndexError("start node out of range")

    cdef cnp.uint8_t[::1] visited = np.zeros(n, dtype=np.uint8)
    cdef cnp.int32_t[::1] queue = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] out = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 0, count = 0
    cdef int node, nxt
    cdef Py_ssize_t i
    cdef bint rereached = False

    queue[tail] = start
    tail += 1
    visited[start] = 1
    while head < tail:
        node = queue[head]
        head += 1
        for i in range(indptr[node], indptr[node + 1]):
            nxt = indices[i]
            if nxt == start:
                rereached = True
                continue
            if not visited[nxt]:
                visited[nxt] = 1
                queue[tail] = nxt
                tail += 1
                out[count] = nxt
                count += 1
    return np.asarray(out[:count]).copy(), rereached
