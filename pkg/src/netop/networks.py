"""Immutable network values: graphs, multigraphs, hypergraphs, partitions, edge labelings.

Every value carries its vertex count ``n`` and stores its structure in a
canonical form (sorted, unit-free), so ``==`` is structural equality.
Vertices are ``1..n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping

from .monoid import Monoid


def _check_n(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"vertex count must be a natural number, got {n!r}")
    return n


def _vertex(v: Any, n: int) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
        raise ValueError(f"vertex {v!r} outside 1..{n}")
    return v


def _undirected(e: Iterable[int], n: int) -> tuple[int, int]:
    i, j = e
    i, j = _vertex(i, n), _vertex(j, n)
    if i == j:
        raise ValueError(f"loop at vertex {i} is not an edge")
    return (i, j) if i < j else (j, i)


def _directed(e: Iterable[int], n: int) -> tuple[int, int]:
    i, j = e
    i, j = _vertex(i, n), _vertex(j, n)
    if i == j:
        raise ValueError(f"loop at vertex {i} is not an edge")
    return (i, j)


def _items(data: Mapping | Iterable) -> Iterator[tuple[Any, Any]]:
    return iter(data.items()) if isinstance(data, Mapping) else iter(data)


def _sparse(n: int, data: Mapping | Iterable, key, keep) -> tuple:
    out: dict = {}
    for k, v in _items(data):
        k = key(k, n)
        if k in out:
            raise ValueError(f"edge {k} listed twice")
        out[k] = v
    return tuple(sorted((k, v) for k, v in out.items() if keep(v)))


def complete_edges(n: int) -> list[tuple[int, int]]:
    """E(n): the 2-element subsets of 1..n, as sorted pairs."""
    return list(combinations(range(1, n + 1), 2))


def _fmt_pairs(pairs: Iterable[tuple[int, int]], sep: str) -> str:
    return ",".join(f"{i}{sep}{j}" for i, j in pairs)


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self) -> None:
        _check_n(self.n)
        object.__setattr__(self, "edges", frozenset(_undirected(e, self.n) for e in self.edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def __repr__(self) -> str:
        return f"sg({self.n}){{{_fmt_pairs(self.sorted_edges(), '-')}}}"


@dataclass(frozen=True)
class DirectedGraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self) -> None:
        _check_n(self.n)
        object.__setattr__(self, "edges", frozenset(_directed(e, self.n) for e in self.edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        return f"dg({self.n}){{{_fmt_pairs(self.sorted_edges(), '>')}}}"


@dataclass(frozen=True)
class Multigraph:
    """Edge multiplicities; pairs that are absent have multiplicity 0."""

    n: int
    mult: tuple = ()

    directed = False

    def __post_init__(self) -> None:
        _check_n(self.n)
        key = _directed if self.directed else _undirected
        for _, m in _items(self.mult):
            if isinstance(m, bool) or not isinstance(m, int) or m < 0:
                raise ValueError(f"multiplicity must be a natural number, got {m!r}")
        object.__setattr__(self, "mult", _sparse(self.n, self.mult, key, lambda m: m > 0))

    def get(self, i: int, j: int) -> int:
        if not self.directed and i > j:
            i, j = j, i
        return self.as_dict().get((i, j), 0)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.mult)

    def __repr__(self) -> str:
        sep = ">" if self.directed else "-"
        body = ",".join(f"{i}{sep}{j}:{m}" for (i, j), m in self.mult)
        return f"{'dmg' if self.directed else 'mg'}({self.n}){{{body}}}"


@dataclass(frozen=True, repr=False)
class DirectedMultigraph(Multigraph):
    directed = True


@dataclass(frozen=True)
class Hypergraph:
    n: int
    hyperedges: frozenset = frozenset()

    def __post_init__(self) -> None:
        _check_n(self.n)
        canon = set()
        for h in self.hyperedges:
            members = tuple(sorted({_vertex(v, self.n) for v in h}))
            if not members:
                raise ValueError("hyperedges must be nonempty")
            canon.add(members)
        object.__setattr__(self, "hyperedges", frozenset(canon))

    def sorted_hyperedges(self) -> list[tuple[int, ...]]:
        return sorted(self.hyperedges)

    def __repr__(self) -> str:
        body = ",".join("-".join(map(str, h)) for h in self.sorted_hyperedges())
        return f"hg({self.n}){{{body}}}"


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: frozenset = frozenset()

    def __post_init__(self) -> None:
        _check_n(self.n)
        canon = set()
        seen: set[int] = set()
        for b in self.blocks:
            members = tuple(sorted(_vertex(v, self.n) for v in b))
            if not members:
                raise ValueError("partition blocks must be nonempty")
            if seen.intersection(members) or len(set(members)) != len(members):
                raise ValueError(f"blocks overlap at {sorted(seen.intersection(members))}")
            seen.update(members)
            canon.add(members)
        if seen != set(range(1, self.n + 1)):
            raise ValueError(f"blocks do not cover 1..{self.n}")
        object.__setattr__(self, "blocks", frozenset(canon))

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(n, frozenset((i,) for i in range(1, n + 1)))

    @classmethod
    def indiscrete(cls, n: int) -> Partition:
        return cls(n, frozenset([tuple(range(1, n + 1))]) if n else frozenset())

    def sorted_blocks(self) -> list[tuple[int, ...]]:
        return sorted(self.blocks)

    def block_of(self) -> dict[int, tuple[int, ...]]:
        return {v: b for b in self.blocks for v in b}

    def refines(self, other: Partition) -> bool:
        """True when every block of ``self`` sits inside a block of ``other``."""
        where = other.block_of()
        return all(len({where[v] for v in b}) == 1 for b in self.blocks)

    def __repr__(self) -> str:
        body = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.sorted_blocks())
        return f"part({self.n}){{{body}}}"


@dataclass(frozen=True)
class EdgeLabeling:
    """A function E(n) -> M, stored sparsely: unlisted edges carry the unit."""

    n: int
    monoid: Monoid
    labels: tuple = ()

    def __post_init__(self) -> None:
        _check_n(self.n)
        for _, v in _items(self.labels):
            self.monoid.check(v)
        unit = self.monoid.unit
        object.__setattr__(self, "labels",
                           _sparse(self.n, self.labels, _undirected, lambda v: v != unit))

    def __call__(self, i: int, j: int) -> Any:
        return self.as_dict().get(_undirected((i, j), self.n), self.monoid.unit)

    def as_dict(self) -> dict[tuple[int, int], Any]:
        return dict(self.labels)

    def __repr__(self) -> str:
        body = ",".join(f"{i}-{j}:{self.monoid.format(v)}" for (i, j), v in self.labels)
        return f"gamma[{self.monoid.name}]({self.n}){{{body}}}"


def sg(n: int, edges: Iterable = ()) -> SimpleGraph:
    return SimpleGraph(n, frozenset(tuple(e) for e in edges))


def dg(n: int, edges: Iterable = ()) -> DirectedGraph:
    return DirectedGraph(n, frozenset(tuple(e) for e in edges))


def mg(n: int, mult: Mapping | Iterable = ()) -> Multigraph:
    return Multigraph(n, tuple(_items(mult)))


def dmg(n: int, mult: Mapping | Iterable = ()) -> DirectedMultigraph:
    return DirectedMultigraph(n, tuple(_items(mult)))


def hg(n: int, hyperedges: Iterable = ()) -> Hypergraph:
    return Hypergraph(n, frozenset(tuple(h) for h in hyperedges))


def partition(n: int, blocks: Iterable) -> Partition:
    return Partition(n, frozenset(tuple(b) for b in blocks))


def labeling(n: int, monoid: Monoid, labels: Mapping | Iterable = ()) -> EdgeLabeling:
    return EdgeLabeling(n, monoid, tuple(_items(labels)))
