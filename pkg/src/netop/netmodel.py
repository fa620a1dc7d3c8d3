"""One-colored network models and the morphisms between them.

A model supplies, for every vertex count ``n``, a monoid of networks
(``unit`` and ``overlay``), an action of S_n (``act``) and a disjoint union
``djunion`` from arities ``m`` and ``n`` to ``m + n``.  The public methods
validate their operands and then call the ``_``-prefixed hooks, which
subclasses implement assuming valid input.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from . import monoid as mon
from .errors import ArityError, ModelMismatch
from .monoid import Monoid, MonoidHom
from .networks import (DirectedGraph, DirectedMultigraph, EdgeLabeling, Hypergraph,
                       Multigraph, Partition, SimpleGraph)
from .perm import Permutation


class NetworkModel(ABC):
    """The five pieces of data of a one-colored network model."""

    colored = False
    empty_type: Any = 0

    @property
    @abstractmethod
    def name(self) -> str: ...

    @abstractmethod
    def contains(self, g: Any) -> bool: ...

    @abstractmethod
    def unit(self, n: int) -> Any: ...

    @abstractmethod
    def _overlay(self, g: Any, h: Any) -> Any: ...

    @abstractmethod
    def _act(self, sigma: Permutation, g: Any) -> Any: ...

    @abstractmethod
    def _djunion(self, g: Any, h: Any) -> Any: ...

    def arity(self, g: Any) -> int:
        return g.n

    def check(self, g: Any) -> Any:
        if not self.contains(g):
            raise ModelMismatch(f"{g!r} is not a network of model {self.name}")
        return g

    def overlay(self, g: Any, h: Any) -> Any:
        self.check(g), self.check(h)
        if self.arity(g) != self.arity(h):
            raise ArityError(f"cannot overlay networks on {self.arity(g)} and "
                             f"{self.arity(h)} vertices")
        return self._overlay(g, h)

    def act(self, sigma: Permutation, g: Any) -> Any:
        self.check(g)
        if sigma.n != self.arity(g):
            raise ArityError(f"permutation of degree {sigma.n} cannot act on "
                             f"{self.arity(g)} vertices")
        return self._act(sigma, g)

    def djunion(self, g: Any, h: Any) -> Any:
        return self._djunion(self.check(g), self.check(h))

    def __repr__(self) -> str:
        return f"<model {self.name}>"


def unit(model: NetworkModel, n: int) -> Any:
    return model.unit(n)


def overlay(model: NetworkModel, g: Any, h: Any) -> Any:
    return model.overlay(g, h)


def act(model: NetworkModel, sigma: Permutation, g: Any) -> Any:
    return model.act(sigma, g)


def djunion(model: NetworkModel, g: Any, h: Any) -> Any:
    return model.djunion(g, h)


def _move(sigma: Permutation, e: tuple[int, int]) -> tuple[int, int]:
    i, j = sigma(e[0]), sigma(e[1])
    return (i, j) if i < j else (j, i)


def _shift(e: tuple[int, ...], m: int) -> tuple[int, ...]:
    return tuple(v + m for v in e)


@dataclass(frozen=True, repr=False)
class SimpleGraphModel(NetworkModel):
    """SG: simple graphs, overlaid by union of edge sets."""

    @property
    def name(self) -> str:
        return "sg"

    def contains(self, g: Any) -> bool:
        return type(g) is SimpleGraph

    def unit(self, n: int) -> SimpleGraph:
        return SimpleGraph(n)

    def _overlay(self, g, h):
        return SimpleGraph(g.n, g.edges | h.edges)

    def _act(self, sigma, g):
        return SimpleGraph(g.n, frozenset(_move(sigma, e) for e in g.edges))

    def _djunion(self, g, h):
        return SimpleGraph(g.n + h.n, g.edges | {_shift(e, g.n) for e in h.edges})


@dataclass(frozen=True, repr=False)
class DirectedGraphModel(NetworkModel):
    """DG: directed graphs without loops, overlaid by union."""

    @property
    def name(self) -> str:
        return "dg"

    def contains(self, g: Any) -> bool:
        return type(g) is DirectedGraph

    def unit(self, n: int) -> DirectedGraph:
        return DirectedGraph(n)

    def _overlay(self, g, h):
        return DirectedGraph(g.n, g.edges | h.edges)

    def _act(self, sigma, g):
        return DirectedGraph(g.n, frozenset((sigma(i), sigma(j)) for i, j in g.edges))

    def _djunion(self, g, h):
        return DirectedGraph(g.n + h.n, g.edges | {_shift(e, g.n) for e in h.edges})


@dataclass(frozen=True, repr=False)
class MultigraphModel(NetworkModel):
    """Multigraphs, directed or not, overlaid by pointwise ``max`` or ``sum``."""

    combine: str = "max"
    directed: bool = False

    def __post_init__(self) -> None:
        if self.combine not in ("max", "sum"):
            raise ValueError(f"multigraph overlay must be 'max' or 'sum', not {self.combine!r}")

    @property
    def name(self) -> str:
        base = "dmg" if self.directed else "mg"
        return base + ("plus" if self.combine == "sum" else "")

    @property
    def _type(self) -> type:
        return DirectedMultigraph if self.directed else Multigraph

    def contains(self, g: Any) -> bool:
        return type(g) is self._type

    def unit(self, n: int) -> Multigraph:
        return self._type(n)

    def _overlay(self, g, h):
        op = max if self.combine == "max" else (lambda a, b: a + b)
        a, b = g.as_dict(), h.as_dict()
        return self._type(g.n, tuple((e, op(a.get(e, 0), b.get(e, 0))) for e in a.keys() | b.keys()))

    def _act(self, sigma, g):
        if self.directed:
            moved = tuple(((sigma(i), sigma(j)), m) for (i, j), m in g.mult)
        else:
            moved = tuple((_move(sigma, e), m) for e, m in g.mult)
        return self._type(g.n, moved)

    def _djunion(self, g, h):
        return self._type(g.n + h.n, g.mult + tuple((_shift(e, g.n), m) for e, m in h.mult))


@dataclass(frozen=True, repr=False)
class HypergraphModel(NetworkModel):
    """HG: sets of nonempty vertex subsets, overlaid by union."""

    @property
    def name(self) -> str:
        return "hg"

    def contains(self, g: Any) -> bool:
        return type(g) is Hypergraph

    def unit(self, n: int) -> Hypergraph:
        return Hypergraph(n)

    def _overlay(self, g, h):
        return Hypergraph(g.n, g.hyperedges | h.hyperedges)

    def _act(self, sigma, g):
        return Hypergraph(g.n, frozenset(tuple(sigma(v) for v in e) for e in g.hyperedges))

    def _djunion(self, g, h):
        return Hypergraph(g.n + h.n, g.hyperedges | {_shift(e, g.n) for e in h.hyperedges})


def partition_join(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening: union-find over the blocks of both."""
    parent = list(range(p.n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for block in (*p.blocks, *q.blocks):
        root = find(block[0])
        for v in block[1:]:
            parent[find(v)] = root
    groups: dict[int, list[int]] = {}
    for v in range(1, p.n + 1):
        groups.setdefault(find(v), []).append(v)
    return Partition(p.n, frozenset(tuple(g) for g in groups.values()))


def partition_meet(p: Partition, q: Partition) -> Partition:
    """Coarsest common refinement: nonempty intersections of block pairs."""
    cells = (set(a) & set(b) for a in p.blocks for b in q.blocks)
    return Partition(p.n, frozenset(tuple(c) for c in cells if c))


@dataclass(frozen=True, repr=False)
class PartitionModel(NetworkModel):
    """Partitions of 1..n under lattice join (unit: singletons) or meet (unit: one block)."""

    lattice: str = "join"

    def __post_init__(self) -> None:
        if self.lattice not in ("join", "meet"):
            raise ValueError(f"partition overlay must be 'join' or 'meet', not {self.lattice!r}")

    @property
    def name(self) -> str:
        return f"part-{self.lattice}"

    def contains(self, g: Any) -> bool:
        return type(g) is Partition

    def unit(self, n: int) -> Partition:
        return Partition.discrete(n) if self.lattice == "join" else Partition.indiscrete(n)

    def _overlay(self, g, h):
        return partition_join(g, h) if self.lattice == "join" else partition_meet(g, h)

    def _act(self, sigma, g):
        return Partition(g.n, frozenset(tuple(sigma(v) for v in b) for b in g.blocks))

    def _djunion(self, g, h):
        return Partition(g.n + h.n, g.blocks | {_shift(b, g.n) for b in h.blocks})


@dataclass(frozen=True, repr=False)
class GammaModel(NetworkModel):
    """Labelings of the complete graph's edges by a monoid, combined pointwise."""

    monoid: Monoid

    @property
    def name(self) -> str:
        return f"gamma:{self.monoid.name}"

    def contains(self, g: Any) -> bool:
        return type(g) is EdgeLabeling and g.monoid == self.monoid

    def unit(self, n: int) -> EdgeLabeling:
        return EdgeLabeling(n, self.monoid)

    def _overlay(self, g, h):
        a, b = g.as_dict(), h.as_dict()
        e_m, op = self.monoid.unit, self.monoid.op
        # key order matters only for non-commutative monoids: g's label on the left
        return EdgeLabeling(g.n, self.monoid,
                            tuple((e, op(a.get(e, e_m), b.get(e, e_m))) for e in a.keys() | b.keys()))

    def _act(self, sigma, g):
        # sigma(g)(e) = g(sigma^-1(e)): the label of e travels to sigma(e)
        return EdgeLabeling(g.n, self.monoid, tuple((_move(sigma, e), v) for e, v in g.labels))

    def _djunion(self, g, h):
        return EdgeLabeling(g.n + h.n, self.monoid,
                            g.labels + tuple((_shift(e, g.n), v) for e, v in h.labels))


def gamma_model(m: Monoid) -> GammaModel:
    return GammaModel(m)


@dataclass(frozen=True, repr=False)
class TensorModel(NetworkModel):
    """Pointwise product of models: a network is one network from each factor."""

    factors: tuple

    @property
    def name(self) -> str:
        return "*".join(f.name for f in self.factors)

    def contains(self, g: Any) -> bool:
        return (isinstance(g, tuple) and len(g) == len(self.factors)
                and all(f.contains(x) for f, x in zip(self.factors, g))
                and len({f.arity(x) for f, x in zip(self.factors, g)}) <= 1)

    def arity(self, g: Any) -> int:
        if not self.factors:
            raise ArityError("the empty tensor product has no arity")
        return self.factors[0].arity(g[0])

    def unit(self, n: int) -> tuple:
        return tuple(f.unit(n) for f in self.factors)

    def _overlay(self, g, h):
        return tuple(f._overlay(x, y) for f, x, y in zip(self.factors, g, h))

    def _act(self, sigma, g):
        return tuple(f._act(sigma, x) for f, x in zip(self.factors, g))

    def _djunion(self, g, h):
        return tuple(f._djunion(x, y) for f, x, y in zip(self.factors, g, h))


def tensor_models(*models: NetworkModel) -> TensorModel:
    if not models:
        raise ValueError("tensor product needs at least one model")
    return TensorModel(tuple(models))


def tensor_power(model: NetworkModel, k: int) -> TensorModel:
    """``model`` tensored with itself ``k`` times (networks with ``k`` edge colors)."""
    return tensor_models(*[model] * k)


SG = SimpleGraphModel()
DG = DirectedGraphModel()
MG = MultigraphModel("max")
MGPLUS = MultigraphModel("sum")
DMG = MultigraphModel("max", directed=True)
DMGPLUS = MultigraphModel("sum", directed=True)
HG = HypergraphModel()
PJOIN = PartitionModel("join")
PMEET = PartitionModel("meet")

CATALOG = {m.name: m for m in (SG, DG, MG, MGPLUS, DMG, DMGPLUS, HG, PJOIN, PMEET)}


def model_from_id(ident: str):
    """Resolve a model identifier.

    One-colored: ``sg dg mg mgplus dmg dmgplus hg part-join part-meet``,
    ``gamma:<monoid-id>`` and tensor products written ``a*b``.  ``petri`` is
    the two-colored Petri net model.
    """
    ident = ident.strip()
    if "*" in ident:
        return tensor_models(*(model_from_id(part) for part in ident.split("*")))
    if ident in CATALOG:
        return CATALOG[ident]
    if ident.startswith("gamma:"):
        return GammaModel(mon.monoid_from_id(ident[len("gamma:"):]))
    if ident == "petri":
        from .colored import PETRI
        return PETRI
    raise ValueError(f"unknown model {ident!r}")


# -- morphisms ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ModelMorphism:
    """A family of arity-preserving maps between two models."""

    source: Any
    target: Any
    component: Callable[[Any], Any]
    name: str = "morphism"

    def __call__(self, g: Any) -> Any:
        if not self.source.contains(g):
            raise ModelMismatch(f"{self.name} expects a network of {self.source.name}, got {g!r}")
        return self.target.check(self.component(g))

    def then(self, other: ModelMorphism) -> ModelMorphism:
        """``other ∘ self``."""
        if other.source != self.target:
            raise ModelMismatch(f"cannot follow a morphism into {self.target.name} "
                                f"by one out of {other.source.name}")
        first, second = self.component, other.component
        return ModelMorphism(self.source, other.target, lambda g: second(first(g)),
                             f"{other.name}∘{self.name}")

    def __repr__(self) -> str:
        return f"ModelMorphism({self.name}: {self.source.name} -> {self.target.name})"


def morphism_apply(phi: ModelMorphism, g: Any) -> Any:
    return phi(g)


def identity_morphism(model) -> ModelMorphism:
    return ModelMorphism(model, model, lambda g: g, f"id[{model.name}]")


def gamma_hom(f: MonoidHom) -> ModelMorphism:
    """Apply ``f`` to every edge label: Gamma_M -> Gamma_M'."""
    target = f.target

    def component(g: EdgeLabeling) -> EdgeLabeling:
        return EdgeLabeling(g.n, target, tuple((e, f.fn(v)) for e, v in g.labels))

    return ModelMorphism(GammaModel(f.source), GammaModel(target), component, f"Γ[{f.name}]")


def _sg_to_labels(g: SimpleGraph) -> EdgeLabeling:
    return EdgeLabeling(g.n, mon.BOOL, tuple((e, True) for e in g.edges))


def _labels_to_sg(g: EdgeLabeling) -> SimpleGraph:
    return SimpleGraph(g.n, frozenset(e for e, v in g.labels if v))


SG_TO_GAMMA_BOOL = ModelMorphism(SG, GammaModel(mon.BOOL), _sg_to_labels, "sg->gamma:bool")
GAMMA_BOOL_TO_SG = ModelMorphism(GammaModel(mon.BOOL), SG, _labels_to_sg, "gamma:bool->sg")


def multigraph_to_gamma(model: MultigraphModel) -> ModelMorphism:
    """MG ≅ Gamma_(N,max) and MG+ ≅ Gamma_(N,+) (undirected only)."""
    if model.directed:
        raise ModelMismatch("directed multigraphs are not edge labelings of E(n)")
    m = mon.NAT_PLUS if model.combine == "sum" else mon.NAT_MAX
    return ModelMorphism(model, GammaModel(m), lambda g: EdgeLabeling(g.n, m, g.mult),
                         f"{model.name}->gamma:{m.name}")


def gamma_to_multigraph(model: MultigraphModel) -> ModelMorphism:
    forward = multigraph_to_gamma(model)
    return ModelMorphism(forward.target, model, lambda g: Multigraph(g.n, g.labels),
                         f"gamma:{forward.target.monoid.name}->{model.name}")


def cutoff_morphism(k: int) -> ModelMorphism:
    """MG+ -> Gamma_{B_k}: keep at most ``k`` parallel edges."""
    return multigraph_to_gamma(MGPLUS).then(gamma_hom(mon.cutoff(k)))


def support_morphism() -> ModelMorphism:
    """MG+ -> SG: the cutoff at 1, read as a simple graph."""
    return cutoff_morphism(1).then(gamma_hom(mon.BK1_TO_BOOL)).then(GAMMA_BOOL_TO_SG)


def djunion_all(model, gs: Sequence[Any]) -> Any:
    """Left-nested disjoint union of several networks, starting from the empty network."""
    out = model.unit(model.empty_type)
    for g in gs:
        out = model.djunion(out, g)
    return out


__all__ = [
    "NetworkModel", "SimpleGraphModel", "DirectedGraphModel", "MultigraphModel",
    "HypergraphModel", "PartitionModel", "GammaModel", "TensorModel",
    "SG", "DG", "MG", "MGPLUS", "DMG", "DMGPLUS", "HG", "PJOIN", "PMEET", "CATALOG",
    "unit", "overlay", "act", "djunion", "djunion_all", "gamma_model", "tensor_models",
    "tensor_power", "partition_join", "partition_meet", "model_from_id",
    "ModelMorphism", "morphism_apply", "identity_morphism", "gamma_hom",
    "SG_TO_GAMMA_BOOL", "GAMMA_BOOL_TO_SG", "multigraph_to_gamma", "gamma_to_multigraph",
    "cutoff_morphism", "support_morphism",
]
