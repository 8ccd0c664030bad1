"""Class hierarchy over declared subsumptions: closure reasoning and
neighborhood queries used by sampling and the context templates.

The hierarchy is immutable after construction and safe for concurrent reads.
Adjacency lists are duplicate-free and kept in lexicographic IRI order so
every traversal under a fixed seed is reproducible regardless of the
insertion order of edges.
"""

from __future__ import annotations

import logging
import os
import random
from typing import Iterable

import numpy as np

from . import vocab
from .ontology import ClassRef, Iri, Ontology, Restriction

logger = logging.getLogger(__name__)

if os.environ.get("ONTOSUB_PURE_PYTHON"):
    from . import _reach_py as _reach

    COMPILED_KERNEL = False
else:
    try:
        from . import _reach  # type: ignore[attr-defined]

        COMPILED_KERNEL = True
    except ImportError:
        from . import _reach_py as _reach

        COMPILED_KERNEL = False

DOWN = "down"
UP = "up"


def _csr(n: int, adjacency: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(n + 1, dtype=np.int32)
    for i, nbrs in enumerate(adjacency):
        indptr[i + 1] = indptr[i] + len(nbrs)
    indices = np.empty(int(indptr[-1]), dtype=np.int32)
    pos = 0
    for nbrs in adjacency:
        indices[pos : pos + len(nbrs)] = nbrs
        pos += len(nbrs)
    return indptr, indices


class ClassHierarchy:
    """Up/down adjacency over named classes plus the restriction index."""

    def __init__(
        self,
        edges: Iterable[tuple[Iri, Iri]],
        restriction_axioms: Iterable[tuple[Iri, Restriction]] = (),
        classes: Iterable[Iri] = (),
    ):
        edge_set = {
            (c, p)
            for c, p in edges
            if c != p and vocab.OWL_THING not in (c, p) and vocab.OWL_NOTHING not in (c, p)
        }
        restriction_axioms = set(restriction_axioms)
        nodes = set(classes) | {c for c, _ in edge_set} | {p for _, p in edge_set}
        nodes.update(c for c, _ in restriction_axioms)
        nodes.update(f for _, r in restriction_axioms for f in r.fillers)
        nodes.discard(vocab.OWL_THING)
        nodes.discard(vocab.OWL_NOTHING)
        self._nodes: list[Iri] = sorted(nodes)
        self._index: dict[Iri, int] = {iri: i for i, iri in enumerate(self._nodes)}

        parents_adj: list[list[int]] = [[] for _ in self._nodes]
        children_adj: list[list[int]] = [[] for _ in self._nodes]
        for child, parent in sorted(edge_set):
            parents_adj[self._index[child]].append(self._index[parent])
            children_adj[self._index[parent]].append(self._index[child])
        for adj in (parents_adj, children_adj):
            for nbrs in adj:
                nbrs.sort()
        self._up_indptr, self._up_indices = _csr(len(self._nodes), parents_adj)
        self._down_indptr, self._down_indices = _csr(len(self._nodes), children_adj)

        self._edges = edge_set
        self.restriction_index: dict[Iri, list[Restriction]] = {}
        self.by_property: dict[Iri, set[Restriction]] = {}
        self.by_filler: dict[Iri, set[Restriction]] = {}
        self._restriction_axioms = restriction_axioms
        for child, r in sorted(self._restriction_axioms, key=lambda a: (a[0],) + a[1].sort_key()):
            self.restriction_index.setdefault(child, []).append(r)
            self.by_property.setdefault(r.property, set()).add(r)
            for filler in r.fillers:
                self.by_filler.setdefault(filler, set()).add(r)
        self.restrictions: list[Restriction] = sorted(
            {r for _, r in self._restriction_axioms}, key=Restriction.sort_key
        )
        self._warned_cycles: set[Iri] = set()

    @classmethod
    def from_ontology(cls, onto: Ontology) -> "ClassHierarchy":
        return cls(onto.named_subsumptions, onto.restriction_axioms, onto.classes)

    # -- basic views ---------------------------------------------------------

    @property
    def nodes(self) -> list[Iri]:
        return self._nodes

    def __contains__(self, iri: Iri) -> bool:
        return iri in self._index

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def edges(self) -> set[tuple[Iri, Iri]]:
        return set(self._edges)

    def parents_of(self, c: Iri) -> tuple[Iri, ...]:
        i = self._index[c]
        return tuple(self._nodes[j] for j in self._up_indices[self._up_indptr[i] : self._up_indptr[i + 1]])

    def children_of(self, c: Iri) -> tuple[Iri, ...]:
        i = self._index[c]
        return tuple(
            self._nodes[j] for j in self._down_indices[self._down_indptr[i] : self._down_indptr[i + 1]]
        )

    def restrictions_of(self, c: Iri) -> list[Restriction]:
        return self.restriction_index.get(c, [])

    def without(
        self,
        named_edges: Iterable[tuple[Iri, Iri]] = (),
        restriction_axioms: Iterable[tuple[Iri, Restriction]] = (),
    ) -> "ClassHierarchy":
        """Copy with the given axioms removed (node set unchanged).

        This is how held-out splits are masked: the edges vanish from every
        traversal, so path/breadth contexts cannot leak them.
        """
        dropped_edges = set(named_edges)
        dropped_restrictions = set(restriction_axioms)
        return ClassHierarchy(
            self._edges - dropped_edges,
            self._restriction_axioms - dropped_restrictions,
            self._nodes,
        )

    # -- inheritance (transitive-closure) reasoning --------------------------

    def _closure(self, c: Iri, indptr: np.ndarray, indices: np.ndarray) -> set[Iri]:
        start = self._index[c]
        reached, rereached = _reach.reach(indptr, indices, start)
        result = {self._nodes[i] for i in reached}
        if rereached:
            result.add(c)
            if c not in self._warned_cycles:
                self._warned_cycles.add(c)
                logger.warning("cycle detected through %s: %s", c, " -> ".join(self._cycle_path(c)))
        return result

    def _cycle_path(self, c: Iri) -> list[Iri]:
        """Reconstruct one declared-edge cycle through c (diagnostics only)."""
        prev: dict[Iri, Iri] = {}
        queue = [c]
        head = 0
        while head < len(queue):
            node = queue[head]
            head += 1
            for parent in self.parents_of(node):
                if parent == c:
                    path = [c, node]
                    while path[-1] != c and path[-1] in prev:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                if parent not in prev:
                    prev[parent] = node
                    queue.append(parent)
        return [c]

    def entailed_ancestors(self, c: Iri) -> set[Iri]:
        """All classes reachable by one or more parent steps (c excluded
        unless the declared graph cycles back through it)."""
        return self._closure(c, self._up_indptr, self._up_indices)

    def entailed_descendants(self, c: Iri) -> set[Iri]:
        return self._closure(c, self._down_indptr, self._down_indices)

    def is_entailed_subsumption(self, child: Iri, parent: ClassRef) -> bool:
        """True when the (child, parent) subsumption is declared or follows
        from transitivity; restriction parents are entailed through any
        entailed named ancestor that declares them."""
        if isinstance(parent, Restriction):
            return parent in self.entailed_restriction_subsumers(child)
        if child == parent:
            return True
        return parent in self.entailed_ancestors(child)

    def entailed_restriction_subsumers(self, c: Iri) -> set[Restriction]:
        holders = {c} | (self.entailed_ancestors(c) if c in self._index else set())
        out: set[Restriction] = set()
        for holder in holders:
            out.update(self.restriction_index.get(holder, ()))
        return out

    # -- neighborhood for evaluation negatives -------------------------------

    def neighborhood(self, c: Iri, m: int, h: int, rng: random.Random) -> set[Iri]:
        """Hop-limited neighborhood used for challenging evaluation negatives.

        Hop 1 is the direct parents and children of c. Each further hop picks
        at most m seeds uniformly (without replacement) from the previous hop
        and unions their one-hop neighborhoods. c itself is never returned.
        """
        if m < 1 or h < 1:
            raise ValueError("m and h must be >= 1")
        if c not in self._index:
            raise KeyError(c)
        current = set(self.parents_of(c)) | set(self.children_of(c))
        result = set(current)
        for _ in range(2, h + 1):
            if not current:
                break
            pool = sorted(current)
            seeds = pool if len(pool) <= m else rng.sample(pool, m)
            nxt: set[Iri] = set()
            for seed in sorted(seeds):
                nxt.update(self.parents_of(seed))
                nxt.update(self.children_of(seed))
            result |= nxt
            current = nxt
        result.discard(c)
        return result
