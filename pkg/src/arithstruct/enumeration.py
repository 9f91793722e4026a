"""Enumeration of all arithmetical structures on a graph.

Three engines:

* ``brute_force``: every primitive ``r`` in ``[1, r_max]^n`` passing the
  divisibility test ``r_v | sum(m_uv r_u)``; works on any multigraph.
* ``enumerate_star``: unit-fraction sums over the leaves; terminates
  without any budget.
* ``enumerate_tree``: search over subtree contributions ``r_v / r_parent``;
  complete for every structure with ``max(r) <= r_max``.

Outputs are sorted by ``d`` in the graph's vertex order, so results do not
depend on the number of worker threads.
"""

from __future__ import annotations

import logging
import threading
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import ceil, floor, gcd, lcm
from typing import Iterator

from .graph import GraphError, Multigraph, star_graph
from .structures import ArithmeticalStructure, d_from_r

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumerationBudget:
    r_max: int = 100
    node_limit: int = 50_000_000

    def __post_init__(self):
        if self.r_max < 1 or self.node_limit < 1:
            raise ValueError("budget entries must be positive")

    def to_json(self) -> dict:
        return {"r_max": self.r_max, "node_limit": self.node_limit}


class BudgetExceeded(RuntimeError):
    """The node limit ran out; ``partial`` holds what was found so far."""

    def __init__(self, partial: list[ArithmeticalStructure], nodes: int):
        super().__init__(f"node limit exhausted after {nodes} nodes ({len(partial)} structures found)")
        self.partial = partial
        self.nodes = nodes


class _NodeCounter:
    def __init__(self, limit: int):
        self.limit = limit
        self.count = 0
        self.exhausted = False
        self._lock = threading.Lock()

    def tick(self, k: int = 1) -> None:
        with self._lock:
            self.count += k
            if self.count > self.limit:
                self.exhausted = True
        if self.exhausted:
            raise _Stop


class _Stop(Exception):
    pass


def canonical_sort(structures) -> list[ArithmeticalStructure]:
    return sorted(set(structures), key=lambda s: (s.d, s.r))


def _run_parallel(tasks, threads: int, counter: _NodeCounter) -> list:
    """Run zero-argument generator factories, collecting whatever they yield."""
    results: list = []
    lock = threading.Lock()

    def drain(task):
        local = []
        try:
            for item in task():
                local.append(item)
        except _Stop:
            pass
        with lock:
            results.extend(local)

    if threads <= 1:
        for task in tasks:
            drain(task)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(drain, tasks))
    return results


def _finish(found, counter: _NodeCounter) -> list[ArithmeticalStructure]:
    out = canonical_sort(found)
    if counter.exhausted:
        raise BudgetExceeded(out, counter.count)
    return out


# -- brute force over r ------------------------------------------------------

def _search_order(G: Multigraph) -> list[str]:
    start = max(G, key=lambda v: (G.degree(v), -G.index(v)))
    order, seen = [], {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        order.append(u)
        for w in G.neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return order


def brute_force(G: Multigraph, budget: EnumerationBudget, threads: int = 1) -> list[ArithmeticalStructure]:
    """All structures on ``G`` whose ``r`` entries are at most ``budget.r_max``.

    Depth-first over ``r`` in breadth-first vertex order.  As soon as a
    vertex and all its neighbours carry values, its divisibility condition
    is checked; when the vertex just placed is the last neighbour of such a
    vertex, its candidates are stepped through the matching residue class
    instead of scanned one by one.
    """
    if not G.is_connected():
        raise GraphError("enumeration needs a connected graph")
    n = len(G)
    if n < 2:
        return []
    R = budget.r_max
    order = _search_order(G)
    pos = {v: k for k, v in enumerate(order)}
    nbrs = [[(pos[u], m) for u, m in G.neighbors(v).items()] for v in order]
    close_at = [[] for _ in range(n)]
    for k in range(n):
        last = max([k] + [j for j, _ in nbrs[k]])
        close_at[last].append(k)
    # congruence used to generate candidates for position k
    step_rule = []
    for k in range(n):
        rule = None
        for c in close_at[k]:
            if c != k:
                m = next(mm for j, mm in nbrs[c] if j == k)
                rule = (c, m)
                break
        step_rule.append(rule)

    counter = _NodeCounter(budget.node_limit)
    graph_pos = [G.index(v) for v in order]

    def candidates(k: int, r: list[int]) -> range:
        rule = step_rule[k]
        if rule is None:
            return range(1, R + 1)
        c, m = rule
        rc = r[c]
        rest = sum(mm * r[j] for j, mm in nbrs[c] if j != k)
        # m * x = -rest (mod rc)
        g = gcd(m, rc)
        if rest % g:
            return range(0)
        mod = rc // g
        if mod == 1:
            return range(1, R + 1)
        x0 = (-(rest // g) * pow(m // g, -1, mod)) % mod
        return range(x0 if x0 else mod, R + 1, mod)

    def ok(k: int, r: list[int]) -> bool:
        for c in close_at[k]:
            if sum(mm * r[j] for j, mm in nbrs[c]) % r[c]:
                return False
        return True

    def dfs(k: int, r: list[int]) -> Iterator[ArithmeticalStructure]:
        for x in candidates(k, r):
            counter.tick()
            r[k] = x
            if not ok(k, r):
                continue
            if k + 1 < n:
                yield from dfs(k + 1, r)
            elif reduce(gcd, r, 0) == 1:
                rv = [0] * n
                for kk, gp in enumerate(graph_pos):
                    rv[gp] = r[kk]
                d = d_from_r(G, rv)
                if d is not None:
                    yield ArithmeticalStructure(d, tuple(rv))
        r[k] = 0

    def task_for(first_values):
        def run():
            r = [0] * n
            for x in first_values:
                counter.tick()
                r[0] = x
                if ok(0, r):
                    yield from dfs(1, r)
        return run

    threads = max(1, threads)
    tasks = [task_for(range(1 + t, R + 1, threads)) for t in range(threads)]
    return _finish(_run_parallel(tasks, threads, counter), counter)


# -- stars -----------------------------------------------------------------

def unit_fraction_multisets(m: int, target: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing ``(a_1, ..., a_m)`` with ``sum(1/a_i) == target``."""

    def rec(k: int, t: Fraction, prev: int, acc: tuple):
        if k == 1:
            if t.numerator == 1 and t.denominator >= prev:
                yield acc + (t.denominator,)
            return
        lo = max(prev, ceil(1 / t))
        hi = floor(k / t)
        for a in range(lo, hi + 1):
            rest = t - Fraction(1, a)
            if rest > 0:
                yield from rec(k - 1, rest, a, acc + (a,))

    if m < 1 or target < 1:
        return
    yield from rec(m, Fraction(target), 1, ())


def distinct_permutations(items) -> Iterator[tuple]:
    counts = Counter(items)
    keys = sorted(counts)
    n = len(items)

    def rec(acc):
        if len(acc) == n:
            yield tuple(acc)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                acc.append(k)
                yield from rec(acc)
                acc.pop()
                counts[k] += 1

    yield from rec([])


def star_center(G: Multigraph) -> str | None:
    """Center of ``G`` if it is a simple star with at least one leaf."""
    if len(G) < 2 or not G.is_tree():
        return None
    for v in G:
        if G.degree(v) == len(G) - 1:
            return v
    return None


def _star_structures(G: Multigraph, center: str, d_cap: int | None = None) -> list[ArithmeticalStructure]:
    leaves = [v for v in G if v != center]
    m = len(leaves)
    ic = G.index(center)
    il = [G.index(v) for v in leaves]
    top = m if d_cap is None else min(m, d_cap)
    out = []
    for dv in range(1, top + 1):
        for ms in unit_fraction_multisets(m, dv):
            rv = reduce(lcm, ms, 1)
            for perm in distinct_permutations(ms):
                d = [0] * len(G)
                r = [0] * len(G)
                d[ic], r[ic] = dv, rv
                for i, a in zip(il, perm):
                    d[i], r[i] = a, rv // a
                out.append(ArithmeticalStructure(tuple(d), tuple(r)))
    return canonical_sort(out)


def enumerate_star(m: int, d_cap: int | None = None) -> list[ArithmeticalStructure]:
    """Every structure on the star with ``m`` leaves (center first).

    ``d_cap`` optionally bounds the center value.  No budget is needed:
    with ``k`` leaves left and remaining target ``t`` the next leaf value is
    confined to ``[ceil(1/t), floor(k/t)]``.
    """
    if m < 1:
        raise ValueError("a star needs at least one leaf")
    return _star_structures(star_graph(m), "c", d_cap)


# -- trees -----------------------------------------------------------------

@dataclass(frozen=True)
class _Option:
    """One assignment on a rooted subtree, in canonical traversal order.

    ``c`` is ``r_root / r_parent``; ``ratios`` are ``r_w / r_root``;
    ``den`` and ``top`` are the lcm of denominators and the maximum of the
    ratios taken relative to the parent, which bound the smallest feasible
    ``max(r)`` from below.
    """

    c: Fraction
    d: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    den: int
    top: Fraction


class _RootedTree:
    def __init__(self, T: Multigraph):
        self.root = max(T, key=lambda v: (T.degree(v), -T.index(v)))
        children: dict[str, list[str]] = {v: [] for v in T}
        parent = {self.root: None}
        queue = deque([self.root])
        bfs = []
        while queue:
            u = queue.popleft()
            bfs.append(u)
            for w in T.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    children[u].append(w)
                    queue.append(w)
        shape: dict[str, str] = {}
        for u in reversed(bfs):
            shape[u] = "(" + "".join(sorted(shape[c] for c in children[u])) + ")"
        for u in T:
            children[u].sort(key=lambda c: (shape[c], T.index(c)))
        self.children = children
        self.shape = shape
        self.traversal = self._traverse(self.root)
        self.child_shapes = {shape[u]: [shape[c] for c in children[u]] for u in T}
        self.generators = self._swap_generators()

    def _traverse(self, u: str) -> list[str]:
        out = [u]
        for c in self.children[u]:
            out.extend(self._traverse(c))
        return out

    def _swap_generators(self) -> list[list[int]]:
        """Swaps of adjacent isomorphic sibling subtrees, as position maps."""
        where = {v: i for i, v in enumerate(self.traversal)}
        gens = []
        for u in self.traversal:
            kids = self.children[u]
            for a, b in zip(kids, kids[1:]):
                if self.shape[a] != self.shape[b]:
                    continue
                ta, tb = self._traverse(a), self._traverse(b)
                perm = list(range(len(self.traversal)))
                for x, y in zip(ta, tb):
                    perm[where[x]], perm[where[y]] = where[y], where[x]
                gens.append(perm)
        return gens


def enumerate_tree(T: Multigraph, budget: EnumerationBudget, threads: int = 1) -> list[ArithmeticalStructure]:
    """All structures on the tree ``T`` with ``max(r) <= budget.r_max``.

    The tree is rooted at a vertex of maximum degree.  For a non-root
    vertex ``v`` whose children contribute ``s = sum(r_child / r_v)``, any
    integer ``d_v > s`` gives the contribution ``r_v / r_parent = 1 / (d_v -
    s)``; at the root the children's contributions must add up to the
    integer ``d_root``.  Subtree options are computed once per isomorphism
    class of rooted subtree, isomorphic siblings take options in
    nondecreasing order, and the remaining labelled structures are
    recovered by swapping isomorphic sibling subtrees.  A branch is dropped
    once the ratios it fixes force some ``r`` entry above ``r_max``.
    """
    if not T.is_tree():
        raise GraphError("enumerate_tree needs a tree")
    if len(T) < 2:
        return []
    R = budget.r_max
    rt = _RootedTree(T)
    counter = _NodeCounter(budget.node_limit)
    memo: dict[str, list[_Option]] = {}

    def combos(slots: list[str], first_range=None, integral=False):
        """Children assignments as (s, den, top, chosen options).

        With ``integral`` the options of the last slot are looked up by
        fractional part so that ``s`` comes out an integer.
        """
        lists = [options(sh) for sh in slots]
        last = len(slots) - 1

        def rec(j, lo, s, den, top, chosen):
            if j > last:
                yield s, den, top, chosen
                return
            start = lo if j > 0 and slots[j] == slots[j - 1] else 0
            if j == 0 and first_range is not None:
                idx = first_range
            else:
                idx = range(start, len(lists[j]))
            if integral and j == last:
                want = -s - floor(-s)
                hits = by_fraction(slots[j]).get(want, ())
                idx = [i for i in hits if i >= start and (j > 0 or first_range is None or i in first_range)]
            for i in idx:
                counter.tick()
                opt = lists[j][i]
                den2 = lcm(den, opt.den)
                top2 = opt.top if opt.top > top else top
                if den2 * top2 > R:
                    continue
                yield from rec(j + 1, i, s + opt.c, den2, top2, chosen + (opt,))

        yield from rec(0, 0, Fraction(0), 1, Fraction(1), ())

    def flatten(chosen):
        d, ratios = [], []
        for opt in chosen:
            d.extend(opt.d)
            ratios.extend(opt.c * q for q in opt.ratios)
        return d, ratios

    frac_memo: dict[str, dict[Fraction, list[int]]] = {}

    def by_fraction(sh: str) -> dict[Fraction, list[int]]:
        if sh not in frac_memo:
            table: dict[Fraction, list[int]] = {}
            for i, opt in enumerate(options(sh)):
                table.setdefault(opt.c - floor(opt.c), []).append(i)
            frac_memo[sh] = table
        return frac_memo[sh]

    def options(sh: str) -> list[_Option]:
        if sh in memo:
            return memo[sh]
        out = []
        for s, den, top, chosen in combos(rt.child_shapes[sh]):
            ratios = None
            dv = floor(s) + 1
            while True:
                counter.tick()
                x = dv - s  # r_parent / r_v
                if den * x > R:
                    break
                den2 = lcm(den, x.denominator)
                if den2 * max(top, x) <= R:
                    if ratios is None:
                        d, ratios = flatten(chosen)
                    c = 1 / x
                    rel = [c] + [c * q for q in ratios]
                    out.append(_Option(
                        c, (dv, *d), (Fraction(1), *ratios),
                        reduce(lcm, (q.denominator for q in rel), 1), max(rel),
                    ))
                dv += 1
        memo[sh] = out
        return out

    root_slots = rt.child_shapes[rt.shape[rt.root]]
    # Build every subtree option list up front so workers only read memo.
    try:
        for sh in set(root_slots):
            options(sh)
            by_fraction(sh)
    except _Stop:
        raise BudgetExceeded([], counter.count) from None

    index = {v: T.index(v) for v in T}

    def emit(s, chosen):
        d, ratios = flatten(chosen)
        full = [Fraction(1)] + ratios
        den = reduce(lcm, (q.denominator for q in full), 1)
        ints = [q.numerator * (den // q.denominator) for q in full]
        g = reduce(gcd, ints, 0)
        ints = [a // g for a in ints]
        if max(ints) > R:
            return None
        return (s.numerator, *d), tuple(ints)

    def task_for(first_range):
        def run():
            for s, _, _, chosen in combos(root_slots, first_range, integral=True):
                rep = emit(s, chosen)
                if rep is not None:
                    yield rep
        return run

    threads = max(1, threads)
    n_first = len(options(root_slots[0]))
    tasks = [task_for(range(t, n_first, threads)) for t in range(threads)]
    reps = _run_parallel(tasks, threads, counter)

    found = []
    for rep in reps:
        for dt, rt_ in _orbit(rep, rt.generators):
            dv = [0] * len(T)
            rv = [0] * len(T)
            for v, a, b in zip(rt.traversal, dt, rt_):
                dv[index[v]] = a
                rv[index[v]] = b
            found.append(ArithmeticalStructure(tuple(dv), tuple(rv)))
    return _finish(found, counter)


def _orbit(rep, generators) -> set:
    seen = {rep}
    queue = deque([rep])
    while queue:
        d, r = queue.popleft()
        for perm in generators:
            img = (tuple(d[p] for p in perm), tuple(r[p] for p in perm))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return seen


# -- dispatch ----------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationResult:
    structures: list
    engine: str
    complete: bool
    budget: EnumerationBudget

    @property
    def count(self) -> int:
        return len(self.structures)

    def summary(self) -> dict:
        return {"count": self.count, "complete": self.complete, "engine": self.engine, "budget": self.budget.to_json()}


ENGINES = ("auto", "brute", "star", "tree")


def enumerate_structures(
    G: Multigraph,
    budget: EnumerationBudget | None = None,
    engine: str = "auto",
    threads: int = 1,
) -> EnumerationResult:
    """Run the most specific applicable engine (or the one requested).

    ``complete`` is True only for the star engine, which needs no budget;
    the other engines are complete up to ``budget.r_max``.
    """
    budget = budget or EnumerationBudget()
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if not G.is_connected():
        raise GraphError("enumeration needs a connected graph")
    center = star_center(G)
    if engine == "auto":
        engine = "star" if center is not None else "tree" if G.is_tree() else "brute"
    log.info("enumerating %d-vertex graph with %s engine, r_max=%d", len(G), engine, budget.r_max)
    if engine == "star":
        if center is None:
            raise GraphError("star engine needs a star")
        return EnumerationResult(_star_structures(G, center), "star", True, budget)
    if engine == "tree":
        return EnumerationResult(enumerate_tree(G, budget, threads), "tree", False, budget)
    return EnumerationResult(brute_force(G, budget, threads), "brute", False, budget)


def count(G: Multigraph, budget: EnumerationBudget | None = None) -> tuple[int, bool]:
    """Number of structures found and whether that count is unconditional."""
    res = enumerate_structures(G, budget)
    return res.count, res.complete
