"""Pure-Python fallback for the BFS reachability kernel.

Mirrors the compiled ontosub._reach contract exactly; selected at import by
ontosub.hierarchy when the extension is unavailable or ONTOSUB_PURE_PYTHON
is set.
"""

from __future__ import annotations

import numpy as np


def reach(indptr, indices, start: int):
    """BFS over CSR arrays; returns (reached int32 array, start_rereached)."""
    n = len(indptr) - 1
    if start < 0 or start >= n:
        raise IndexError("start node out of range")

    visited = bytearray(n)
    visited[start] = 1
    queue = [start]
    out: list[int] = []
    rereached = False
    head = 0
    while head < len(queue):
        node = queue[head]
        head += 1
        for i in range(indptr[node], indptr[node + 1]):
            nxt = int(indices[i])
            if nxt == start:
                rereached = True
                continue
            if not visited[nxt]:
                visited[nxt] = 1
                queue.append(nxt)
                out.append(nxt)
    return np.asarray(out, dtype=np.int32), rereached
