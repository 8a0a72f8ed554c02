"""Sums of squared linking numbers and exact checks of the CGS-type identities.

Every verifier evaluates both sides of its identity from scratch over the
relevant cycle families and returns a :class:`VerificationReport` holding the
two exact integers.
"""
from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial

import numpy as np

from .cycles import (
    CyclePair,
    cycles_on,
    enumerate_cycles,
    subdivision_cycles,
    subgraph_cycles,
)
from .linking import CrossingTable, as_table, cycle_array_lk, cycle_lk_values
from .rng import SplitMix64

log = logging.getLogger(__name__)


def kronecker_delta(p: int, q: int) -> int:
    return 1 if p == q else 0


@dataclass
class VerificationReport:
    """Outcome of one identity check.

    ``relation`` is ``"="`` (lhs == rhs), ``"mod"`` (lhs % modulus == rhs) or
    ``"!="`` (lhs != rhs, used for existence witnesses).
    """

    identity: str
    params: dict
    lhs: int
    rhs: int
    relation: str = "="
    modulus: int | None = None
    witnesses: list = field(default_factory=list)
    ms: float = 0.0

    @property
    def passed(self) -> bool:
        if self.relation == "=":
            return self.lhs == self.rhs
        if self.relation == "mod":
            return self.lhs % self.modulus == self.rhs
        if self.relation == "!=":
            return self.lhs != self.rhs
        raise ValueError(f"unknown relation {self.relation!r}")

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "params": dict(self.params),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "relation": self.relation,
            "pass": self.passed,
            "ms": round(self.ms, 3),
        }
        if self.modulus is not None:
            out["modulus"] = str(self.modulus)
        if self.witnesses:
            out["witnesses"] = [str(w) for w in self.witnesses]
        return out

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        rel = f"mod {self.modulus}" if self.relation == "mod" else self.relation
        return f"[{verdict}] {self.identity}({params}): lhs={self.lhs} {rel} rhs={self.rhs}"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.ms = (time.perf_counter() - t0) * 1000.0
        log.debug("%s", report)
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _check_pair_params(n: int, p: int, q: int) -> None:
    if p < 3 or q < 3 or p + q > n:
        raise ValueError(f"need p, q >= 3 and p + q <= n, got p={p}, q={q}, n={n}")


def _pair_groups(table: CrossingTable, p: int, q: int):
    """Yield (p-cycle, q-vertex set, lk array) covering each unordered pair once."""
    if p > q:
        p, q = q, p
    n = table.n
    vertices = range(1, n + 1)
    for s in combinations(vertices, p):
        rest = [v for v in vertices if v not in s]
        sets = [t for t in combinations(rest, q) if not (p == q and t[0] < s[0])]
        if not sets:
            continue
        for a in cycles_on(s):
            w = table.cycle_over_weights(a)
            for t in sets:
                yield a, t, cycle_lk_values(w, t)


def sum_lk_squared(scene, p: int, q: int) -> int:
    """Sum of lk^2 over all disjoint (p,q) cycle pairs."""
    table = as_table(scene)
    _check_pair_params(table.n, p, q)
    return int(sum(int(np.dot(v, v)) for _, _, v in _pair_groups(table, p, q)))


def sum_lk(scene, p: int, q: int) -> int:
    """Signed sum of lk over disjoint (p,q) pairs with canonically oriented cycles."""
    table = as_table(scene)
    _check_pair_params(table.n, p, q)
    return int(sum(int(v.sum()) for _, _, v in _pair_groups(table, p, q)))


def partitions(n: int):
    """Unordered partitions n = p + q with 3 <= p <= q."""
    return [(p, n - p) for p in range(3, n // 2 + 1)]


def _loop_weights(table: CrossingTable, loop_id: int) -> np.ndarray:
    if not 0 <= loop_id < len(table.scene.loops):
        raise ValueError(f"scene has no loop {loop_id}")
    return table.loop_over[loop_id]


def _loop_sq(weights: np.ndarray, cycles) -> int:
    by_len = {}
    for c in cycles:
        by_len.setdefault(len(c), []).append(c)
    total = 0
    for group in by_len.values():
        v = cycle_array_lk(weights, group)
        total += int(np.dot(v, v))
    return total


def sum_lk_squared_loop(scene, loop_id: int, p: int, removed=()) -> int:
    """Sum of lk(loop, gamma)^2 over p-cycles gamma of K_n avoiding ``removed``."""
    table = as_table(scene)
    n = table.n
    removed = set(removed)
    keep = [v for v in range(1, n + 1) if v not in removed]
    if p < 3 or p > len(keep):
        raise ValueError(f"need 3 <= p <= {len(keep)}, got p={p}")
    w = _loop_weights(table, loop_id)
    total = 0
    for s in combinations(keep, p):
        v = cycle_lk_values(w, s)
        total += int(np.dot(v, v))
    return total


@_timed
def verify_theorem_1(scene, p: int, q: int) -> VerificationReport:
    """Sum over (p,q) pairs equals (2 - delta_pq) (n-6)! times the (3,3) sum."""
    table = as_table(scene)
    n = table.n
    if n < 6 or p < 3 or q < 3 or p + q != n:
        raise ValueError(f"need n >= 6, p, q >= 3, p + q = n; got n={n}, p={p}, q={q}")
    lhs = sum_lk_squared(table, p, q)
    rhs = (2 - kronecker_delta(p, q)) * factorial(n - 6) * sum_lk_squared(table, 3, 3)
    return VerificationReport("theorem_1", {"n": n, "p": p, "q": q}, lhs, rhs)


@_timed
def verify_partition_sum(scene) -> VerificationReport:
    """Sum over unordered partitions p + q = n equals (n-5)! times the (3,3) sum."""
    table = as_table(scene)
    n = table.n
    if n < 6:
        raise ValueError(f"need n >= 6, got n={n}")
    lhs = sum(sum_lk_squared(table, p, q) for p, q in partitions(n))
    rhs = factorial(n - 5) * sum_lk_squared(table, 3, 3)
    return VerificationReport("partition_sum", {"n": n}, lhs, rhs)


@_timed
def verify_congruence(scene) -> VerificationReport:
    """Hamiltonian lk^2 sum modulo 2 (n-5)!: (n-5)! if n = 6, 7 mod 8, else 0."""
    table = as_table(scene)
    n = table.n
    if n < 6:
        raise ValueError(f"need n >= 6, got n={n}")
    total = sum(sum_lk_squared(table, p, q) for p, q in partitions(n))
    residue = factorial(n - 5) if n % 8 in (6, 7) else 0
    return VerificationReport("congruence", {"n": n}, total, residue, relation="mod", modulus=2 * factorial(n - 5))


@_timed
def verify_cg_parity(scene) -> VerificationReport:
    """Signed (3,3) lk sum has the parity of C(n, 6); odd for K_6."""
    table = as_table(scene)
    n = table.n
    if n < 6:
        raise ValueError(f"need n >= 6, got n={n}")
    total = sum_lk(table, 3, 3)
    return VerificationReport("cg_parity", {"n": n}, total, comb(n, 6) % 2, relation="mod", modulus=2)


@_timed
def verify_hamiltonian_parity(scene) -> VerificationReport:
    """Signed lk sum over all Hamiltonian pairs is even (n >= 7)."""
    table = as_table(scene)
    n = table.n
    if n < 7:
        raise ValueError(f"need n >= 7, got n={n}")
    total = sum(sum_lk(table, p, q) for p, q in partitions(n))
    return VerificationReport("hamiltonian_parity", {"n": n}, total, 0, relation="mod", modulus=2)


class WitnessNotFound(RuntimeError):
    """No linked pair exists where one is guaranteed; indicates a bug."""


def find_nonsplit_witness(scene, p: int, q: int):
    """First (p,q) pair in enumeration order with nonzero lk, as (CyclePair, lk)."""
    table = as_table(scene)
    _check_pair_params(table.n, p, q)
    for a, t, values in _pair_groups(table, p, q):
        hits = np.flatnonzero(values)
        if hits.size:
            k = int(hits[0])
            b = list(cycles_on(t))[k]
            return CyclePair(a, b), int(values[k])
    raise WitnessNotFound(f"no linked ({p},{q}) pair on this K_{table.n}")


@_timed
def verify_nonsplit_witness(scene, p: int, q: int) -> VerificationReport:
    table = as_table(scene)
    n = table.n
    if n < 6 or p + q != n:
        raise ValueError(f"need n >= 6 and p + q = n; got n={n}, p={p}, q={q}")
    pair, lk = find_nonsplit_witness(table, p, q)
    return VerificationReport("nonsplit_witness", {"n": n, "p": p, "q": q}, lk, 0, relation="!=", witnesses=[pair])


@_timed
def verify_loop_lemma(scene, loop_id: int = 0) -> VerificationReport:
    """Hamiltonian and (n-1)-cycle lk^2 sums against a loop agree."""
    table = as_table(scene)
    n = table.n
    if n < 4:
        raise ValueError(f"need n >= 4, got n={n}")
    lhs = sum_lk_squared_loop(table, loop_id, n)
    rhs = sum_lk_squared_loop(table, loop_id, n - 1)
    return VerificationReport("loop_lemma", {"n": n, "loop": loop_id}, lhs, rhs)


@_timed
def verify_factorial_chain(scene, loop_id: int, k: int) -> VerificationReport:
    """Hamiltonian loop sum equals k! times the (n-k)-cycle loop sum."""
    table = as_table(scene)
    n = table.n
    if n < 4 or not 1 <= k <= n - 3:
        raise ValueError(f"need n >= 4 and 1 <= k <= n - 3; got n={n}, k={k}")
    lhs = sum_lk_squared_loop(table, loop_id, n)
    rhs = factorial(k) * sum_lk_squared_loop(table, loop_id, n - k)
    return VerificationReport("factorial_chain", {"n": n, "loop": loop_id, "k": k}, lhs, rhs)


@_timed
def verify_filtration_identity(scene, loop_id: int, m: int) -> VerificationReport:
    """Hamiltonian loop sum splits by whether an (n-1)-cycle passes through m."""
    table = as_table(scene)
    n = table.n
    if n < 5 or not 1 <= m <= n:
        raise ValueError(f"need n >= 5 and 1 <= m <= n; got n={n}, m={m}")
    w = _loop_weights(table, loop_id)
    lhs = _loop_sq(w, enumerate_cycles(n, n))
    through_m = _loop_sq(w, (c for c in enumerate_cycles(n, n - 1) if m in c.vertex_set))
    avoiding_m = _loop_sq(w, subgraph_cycles(n, {m}, n - 1))
    return VerificationReport("filtration", {"n": n, "loop": loop_id, "m": m}, lhs, through_m + avoiding_m)


@_timed
def verify_subdivision_identity(scene, loop_id: int, i: int, j: int, m: int) -> VerificationReport:
    """Loop lemma applied to K_{n-1} with edge ij subdivided through m."""
    table = as_table(scene)
    n = table.n
    if n < 5 or not (1 <= i < j <= n) or m in (i, j) or not 1 <= m <= n:
        raise ValueError(f"need n >= 5, 1 <= i < j <= n, m != i, j; got n={n}, i={i}, j={j}, m={m}")
    w = _loop_weights(table, loop_id)
    lhs = _loop_sq(w, subdivision_cycles(n, i, j, m, n))
    lhs += _loop_sq(w, (c for c in subgraph_cycles(n, {m}, n - 1) if not c.contains_edge(i, j)))
    rhs = _loop_sq(w, (c for c in subdivision_cycles(n, i, j, m, n - 1) if c.contains_path(i, m, j)))
    rhs += _loop_sq(w, (c for c in subgraph_cycles(n, {m}, n - 2) if not c.contains_edge(i, j)))
    return VerificationReport("subdivision", {"n": n, "loop": loop_id, "i": i, "j": j, "m": m}, lhs, rhs)


@_timed
def verify_pairing_decomposition(scene, p: int, q: int) -> VerificationReport:
    """(1 + delta_pq) times the (p,q) sum equals the ordered double sum over
    p-cycles and the q-cycles of their complements."""
    table = as_table(scene)
    n = table.n
    _check_pair_params(n, p, q)
    lhs = (1 + kronecker_delta(p, q)) * sum_lk_squared(table, p, q)
    rhs = 0
    vertices = range(1, n + 1)
    for gamma in enumerate_cycles(n, p):
        w = table.cycle_over_weights(gamma)
        rest = [v for v in vertices if v not in gamma.vertex_set]
        for t in combinations(rest, q):
            v = cycle_lk_values(w, t)
            rhs += int(np.dot(v, v))
    return VerificationReport("pairing_decomposition", {"n": n, "p": p, "q": q}, lhs, rhs)


def subdivision_family_counts(n: int, m: int) -> dict:
    """How often each cycle appears in the four subdivision families summed over i < j.

    Returns a dict of Counters keyed ``"hamiltonian_F"``, ``"avoid_m_n-1"``,
    ``"path_F"``, ``"avoid_m_n-2"``.
    """
    counts = {key: Counter() for key in ("hamiltonian_F", "avoid_m_n-1", "path_F", "avoid_m_n-2")}
    others = [v for v in range(1, n + 1) if v != m]
    for i, j in combinations(others, 2):
        counts["hamiltonian_F"].update(subdivision_cycles(n, i, j, m, n))
        counts["avoid_m_n-1"].update(c for c in subgraph_cycles(n, {m}, n - 1) if not c.contains_edge(i, j))
        counts["path_F"].update(c for c in subdivision_cycles(n, i, j, m, n - 1) if c.contains_path(i, m, j))
        counts["avoid_m_n-2"].update(c for c in subgraph_cycles(n, {m}, n - 2) if not c.contains_edge(i, j))
    return counts


def host_multiplicities(n: int, p: int) -> set:
    """Distinct counts of p-vertex hosts containing a triangle, over all disjoint triangle pairs.

    For a triangle gamma' and a triangle gamma in its complement, counts the
    p-subsets of the complement of gamma' that contain gamma.
    """
    vertices = range(1, n + 1)
    seen = set()
    for tri in combinations(vertices, 3):
        rest = [v for v in vertices if v not in tri]
        hosts = [frozenset(h) for h in combinations(rest, p)]
        for other in combinations(rest, 3):
            o = frozenset(other)
            seen.add(sum(1 for h in hosts if o <= h))
    return seen


def subdivision_samples(n: int, count: int, rng) -> list:
    """``count`` distinct (i, j, m) triples drawn with ``rng.randbelow`` (all if fewer exist)."""
    triples = [(i, j, m) for i, j in combinations(range(1, n + 1), 2) for m in range(1, n + 1) if m not in (i, j)]
    if count >= len(triples):
        return triples
    picked = []
    pool = list(triples)
    for _ in range(count):
        picked.append(pool.pop(rng.randbelow(len(pool))))
    return sorted(picked)


SUITES = ("theorem1", "partition", "congruence", "parity", "lemmas", "all")


def applicable_reports(table: CrossingTable, suite: str, sample: int = 10, rng=None) -> list:
    """Run every verifier of ``suite`` that applies to the scene behind ``table``.

    Raises ValueError when ``suite`` is ``"lemmas"`` and the scene has no loop.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    n = table.n
    reports = []
    want = (lambda s: True) if suite == "all" else (lambda s: s == suite)
    if n >= 6:
        if want("theorem1"):
            for p, q in partitions(n):
                reports.append(verify_theorem_1(table, p, q))
                reports.append(verify_pairing_decomposition(table, p, q))
                reports.append(verify_nonsplit_witness(table, p, q))
        if want("partition"):
            reports.append(verify_partition_sum(table))
        if want("congruence"):
            reports.append(verify_congruence(table))
        if want("parity"):
            reports.append(verify_cg_parity(table))
            if n >= 7:
                reports.append(verify_hamiltonian_parity(table))
    if want("lemmas"):
        n_loops = len(table.scene.loops)
        if suite == "lemmas" and n_loops == 0:
            raise ValueError("the lemma suite needs a scene with at least one loop")
        rng = rng or SplitMix64(0)
        for loop_id in range(n_loops):
            if n < 4:
                continue
            reports.append(verify_loop_lemma(table, loop_id))
            for k in range(1, n - 2):
                reports.append(verify_factorial_chain(table, loop_id, k))
            if n >= 5:
                for m in range(1, n + 1):
                    reports.append(verify_filtration_identity(table, loop_id, m))
                for i, j, m in subdivision_samples(n, sample, rng):
                    reports.append(verify_subdivision_identity(table, loop_id, i, j, m))
    return reports


__all__ = [
    "VerificationReport",
    "WitnessNotFound",
    "kronecker_delta",
    "partitions",
    "sum_lk_squared",
    "sum_lk",
    "sum_lk_squared_loop",
    "verify_theorem_1",
    "verify_partition_sum",
    "verify_congruence",
    "verify_cg_parity",
    "verify_hamiltonian_parity",
    "find_nonsplit_witness",
    "verify_nonsplit_witness",
    "verify_loop_lemma",
    "verify_factorial_chain",
    "verify_filtration_identity",
    "verify_subdivision_identity",
    "verify_pairing_decomposition",
    "subdivision_family_counts",
    "host_multiplicities",
    "subdivision_samples",
    "applicable_reports",
    "SUITES",
]
