"""Cycles of K_n, disjoint cycle pairs, and signed edge-incidence vectors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Iterator

import numpy as np


@dataclass(frozen=True)
class OrientedCycle:
    """A cycle of K_n given by its vertex sequence (any rotation or direction)."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(int(v) for v in self.vertices)
        if len(verts) < 3:
            raise ValueError(f"a cycle needs at least 3 vertices, got {verts}")
        if len(set(verts)) != len(verts):
            raise ValueError(f"cycle vertices must be distinct, got {verts}")
        object.__setattr__(self, "vertices", verts)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __str__(self):
        return "(" + ",".join(map(str, self.vertices)) + ")"

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edges(self) -> list:
        """Directed edges in traversal order."""
        v = self.vertices
        return [(v[t], v[(t + 1) % len(v)]) for t in range(len(v))]

    def reversed(self) -> "OrientedCycle":
        return OrientedCycle(self.vertices[::-1])

    def canonical(self) -> "OrientedCycle":
        """Rotate the smallest vertex to the front, then pick the direction
        whose second vertex is smaller."""
        v = self.vertices
        k = v.index(min(v))
        rot = v[k:] + v[:k]
        if rot[-1] < rot[1]:
            rot = (rot[0],) + rot[:0:-1]
        return OrientedCycle(rot)

    def is_canonical(self) -> bool:
        return self.canonical().vertices == self.vertices

    def same_orientation(self, other: "OrientedCycle") -> bool:
        """True if ``other`` is a rotation of this cycle (not a reflection)."""
        v = self.vertices
        if len(v) != len(other.vertices) or set(v) != set(other.vertices):
            return False
        k = other.vertices.index(v[0])
        return other.vertices[k:] + other.vertices[:k] == v

    def contains_edge(self, i: int, j: int) -> bool:
        v = self.vertices
        if i not in v or j not in v:
            return False
        k = v.index(i)
        return v[(k + 1) % len(v)] == j or v[k - 1] == j

    def neighbours(self, m: int) -> frozenset:
        v = self.vertices
        k = v.index(m)
        return frozenset((v[k - 1], v[(k + 1) % len(v)]))

    def contains_path(self, i: int, m: int, j: int) -> bool:
        """True if the cycle traverses the path i-m-j (in either direction)."""
        return m in self.vertices and self.neighbours(m) == frozenset((i, j))


@dataclass(frozen=True)
class CyclePair:
    first: OrientedCycle
    second: OrientedCycle

    @property
    def p(self) -> int:
        return len(self.first)

    @property
    def q(self) -> int:
        return len(self.second)

    def __str__(self):
        return f"{self.first}|{self.second}"


def make_pair(a: OrientedCycle, b: OrientedCycle) -> CyclePair:
    """Normalised unordered pair: shorter cycle first; ties by canonical sequence."""
    if a.vertex_set & b.vertex_set:
        raise ValueError(f"cycles {a} and {b} share a vertex")
    a, b = a.canonical(), b.canonical()
    if (len(a), a.vertices) > (len(b), b.vertices):
        a, b = b, a
    return CyclePair(a, b)


def count_cycles(n: int, p: int) -> int:
    return comb(n, p) * factorial(p - 1) // 2


def count_disjoint_pairs(n: int, p: int, q: int) -> int:
    total = comb(n, p) * comb(n - p, q) * (factorial(p - 1) // 2) * (factorial(q - 1) // 2)
    return total // 2 if p == q else total


def _check_cycle_length(n: int, p: int) -> None:
    if p < 3 or p > n:
        raise ValueError(f"cycle length must satisfy 3 <= p <= n, got p={p}, n={n}")


@lru_cache(maxsize=None)
def cycle_templates(p: int) -> np.ndarray:
    """Canonical cycles on positions 0..p-1 as an int array of shape ((p-1)!/2, p).

    Mapping position k to the k-th smallest vertex of a vertex set yields that
    set's canonical cycles in lexicographic order.
    """
    rows = [(0,) + perm for perm in permutations(range(1, p)) if perm[0] < perm[-1]]
    arr = np.array(rows, dtype=np.intp).reshape(len(rows), p)
    arr.setflags(write=False)
    return arr


def cycles_on(vertex_set: Iterable[int]) -> Iterator[OrientedCycle]:
    """Canonical Hamiltonian cycles of the complete graph on ``vertex_set``."""
    verts = sorted(vertex_set)
    first, rest = verts[0], verts[1:]
    for perm in permutations(rest):
        if perm[0] < perm[-1]:
            yield OrientedCycle((first,) + perm)


def enumerate_cycles(n: int, p: int) -> Iterator[OrientedCycle]:
    """All canonical p-cycles of K_n, ordered by (vertex set, sequence)."""
    _check_cycle_length(n, p)
    return subgraph_cycles(n, (), p)


def subgraph_cycles(n: int, removed: Iterable[int], p: int) -> Iterator[OrientedCycle]:
    """p-cycles of K_n that avoid every vertex in ``removed``."""
    removed = set(removed)
    keep = [v for v in range(1, n + 1) if v not in removed]
    if p < 3 or p > len(keep):
        raise ValueError(f"cycle length must satisfy 3 <= p <= {len(keep)}, got p={p}")
    for vs in combinations(keep, p):
        yield from cycles_on(vs)


def enumerate_disjoint_pairs(n: int, p: int, q: int) -> Iterator[CyclePair]:
    """Stream the unordered disjoint (p,q) cycle pairs of K_n, each once."""
    if p < 3 or q < 3 or p + q > n:
        raise ValueError(f"need p, q >= 3 and p + q <= n, got p={p}, q={q}, n={n}")
    if p > q:
        p, q = q, p
    vertices = range(1, n + 1)
    for s in combinations(vertices, p):
        rest = [v for v in vertices if v not in s]
        firsts = list(cycles_on(s))
        for t in combinations(rest, q):
            if p == q and t[0] < s[0]:
                continue
            for a in firsts:
                for b in cycles_on(t):
                    yield CyclePair(a, b)


class CycleSpaceVector:
    """Integer combination of edges of K_n, edge (i, j) oriented i -> j with i < j."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        self._coeffs = {}
        for (i, j), c in dict(coeffs or {}).items():
            if i == j:
                raise ValueError("loops are not edges of K_n")
            if i > j:
                i, j, c = j, i, -c
            self._coeffs[(i, j)] = self._coeffs.get((i, j), 0) + int(c)
        self._coeffs = {e: c for e, c in sorted(self._coeffs.items()) if c}

    @classmethod
    def of_cycle(cls, cycle: OrientedCycle) -> "CycleSpaceVector":
        return cls({e: 1 for e in cycle.edges()})

    def __getitem__(self, edge) -> int:
        i, j = edge
        if i > j:
            return -self._coeffs.get((j, i), 0)
        return self._coeffs.get((i, j), 0)

    def items(self):
        return self._coeffs.items()

    def support(self) -> list:
        return list(self._coeffs)

    def __add__(self, other: "CycleSpaceVector") -> "CycleSpaceVector":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return CycleSpaceVector(out)

    def __neg__(self) -> "CycleSpaceVector":
        return CycleSpaceVector({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "CycleSpaceVector") -> "CycleSpaceVector":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, CycleSpaceVector):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        body = ", ".join(f"{i}{j}:{c:+d}" for (i, j), c in self._coeffs.items())
        return f"CycleSpaceVector({{{body}}})"

    def boundary(self) -> dict:
        """Net flow (in minus out) at each vertex; all zero for a cycle."""
        flow = {}
        for (i, j), c in self._coeffs.items():
            flow[i] = flow.get(i, 0) - c
            flow[j] = flow.get(j, 0) + c
        return flow

    def is_closed(self) -> bool:
        return all(v == 0 for v in self.boundary().values())


def cycle_space_vector(cycle: OrientedCycle) -> CycleSpaceVector:
    return CycleSpaceVector.of_cycle(cycle)


def subdivision_edges(n: int, i: int, j: int, m: int) -> frozenset:
    """Edge set of K_n with edge ij and every edge at m except mi, mj removed."""
    if not (i < j and m not in (i, j)):
        raise ValueError(f"need i < j and m not in (i, j), got i={i}, j={j}, m={m}")
    keep = set()
    for a, b in combinations(range(1, n + 1), 2):
        if (a, b) == (i, j):
            continue
        if m in (a, b) and ({a, b} - {m}).pop() not in (i, j):
            continue
        keep.add((a, b))
    return frozenset(keep)


def subdivision_cycles(n: int, i: int, j: int, m: int, p: int) -> Iterator[OrientedCycle]:
    """p-cycles of the subgraph of K_n in which edge ij is rerouted through m.

    The subgraph keeps every edge of K_n except ij and the edges mk, k != i, j.
    """
    edges = subdivision_edges(n, i, j, m)
    _check_cycle_length(n, p)
    for c in enumerate_cycles(n, p):
        if all((min(a, b), max(a, b)) in edges for a, b in c.edges()):
            yield c


__all__ = [
    "OrientedCycle",
    "CyclePair",
    "CycleSpaceVector",
    "make_pair",
    "count_cycles",
    "count_disjoint_pairs",
    "cycle_templates",
    "cycles_on",
    "enumerate_cycles",
    "subgraph_cycles",
    "enumerate_disjoint_pairs",
    "cycle_space_vector",
    "subdivision_edges",
    "subdivision_cycles",
]
