"""Algebras of network operads.

An algebra assigns a set of elements to every type and lets an operation
with ``k`` inputs turn ``k`` elements into one.  Provided here: networks
themselves, networks with vertex attributes, attributed simple graphs whose
edges obey a rule, attributed multigraphs with capped multiplicities, and
simple graphs with port capacities driven by sequences of connection
attempts.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .errors import ArityError, ConstraintError, ModelMismatch
from .netmodel import MGPLUS, SG, NetworkModel, djunion_all
from .networks import Multigraph, SimpleGraph, _check_n
from .operad import Operation
from .perm import Permutation


@dataclass(frozen=True)
class Attributed:
    """A network with one attribute per vertex."""

    net: Any
    attrs: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "attrs", tuple(self.attrs))

    def __repr__(self) -> str:
        return f"{self.net!r}@{list(self.attrs)}"


def vertex_count(model, net: Any) -> int:
    t = model.arity(net)
    return len(t) if model.colored else t


def hom_forget(a: Attributed) -> Any:
    return a.net


def underlying_perm(perm: Any) -> Permutation:
    return perm.perm if hasattr(perm, "perm") else perm


def permute_attrs(sigma: Permutation, attrs: Sequence[Any]) -> tuple:
    """``x'(sigma(i)) = x(i)``: the attribute follows its vertex."""
    if sigma.n != len(attrs):
        raise ArityError(f"permutation of degree {sigma.n} cannot move {len(attrs)} attributes")
    out: list[Any] = [None] * len(attrs)
    for i, x in enumerate(attrs, start=1):
        out[sigma(i) - 1] = x
    return tuple(out)


def _check_inputs(op: Operation, arities: Sequence[Any]) -> None:
    if len(arities) != op.arity:
        raise ArityError(f"operation with {op.arity} inputs applied to {len(arities)} elements")
    for slot, (want, got) in enumerate(zip(op.inputs, arities), start=1):
        if want != got:
            raise ArityError(f"input {slot}: expected type {want}, got {got}")


def act_canonical(op: Operation, hs: Sequence[Any]) -> Any:
    """``g ∪ sigma(h_1 ⊔ ... ⊔ h_k)``."""
    model = op.model
    _check_inputs(op, [model.arity(model.check(h)) for h in hs])
    return model.overlay(op.net, model.act(op.perm, djunion_all(model, hs)))


def act_attributes(op: Operation, items: Sequence[Attributed]) -> Attributed:
    net = act_canonical(op, [a.net for a in items])
    attrs = [x for a in items for x in a.attrs]
    return Attributed(net, permute_attrs(underlying_perm(op.perm), attrs))


# -- planar points and edge rules --------------------------------------------

def to_fraction(x: Any) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (read via its repr)."""
    if isinstance(x, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def point(x: Any, y: Any) -> tuple[Fraction, Fraction]:
    return (to_fraction(x), to_fraction(y))


def squared_distance(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


@dataclass(frozen=True, eq=False)
class EdgePredicate:
    """A symmetric yes/no rule on pairs of attributes."""

    fn: Callable[[Any, Any], bool]
    name: str = "predicate"

    def __call__(self, a: Any, b: Any) -> bool:
        return bool(self.fn(a, b))


def range_predicate(limit: Any) -> EdgePredicate:
    """Allow an edge only between points at distance at most ``limit``."""
    bound = to_fraction(limit)
    if bound < 0:
        raise ValueError("range must be nonnegative")
    return EdgePredicate(lambda a, b: squared_distance(a, b) <= bound * bound, f"range:{bound}")


@dataclass(frozen=True, eq=False)
class EdgeBound:
    """A symmetric cap on edge multiplicity between two attributes."""

    fn: Callable[[Any, Any], int]
    name: str = "bound"

    def __call__(self, a: Any, b: Any) -> int:
        return self.fn(a, b)


def constant_bound(k: int) -> EdgeBound:
    return EdgeBound(lambda a, b: k, f"const:{k}")


def two_range_bound(long_range: Any, short_range: Any) -> EdgeBound:
    """Two parallel edges within ``short_range``, one within ``long_range``, none beyond."""
    far, near = to_fraction(long_range), to_fraction(short_range)
    if not 0 <= near < far:
        raise ValueError("need 0 <= short range < long range")

    def fn(a, b):
        d2 = squared_distance(a, b)
        if d2 > far * far:
            return 0
        return 1 if d2 > near * near else 2

    return EdgeBound(fn, f"two-range:{far},{near}")


def predicate_holds(p: EdgePredicate, a: Attributed) -> bool:
    x = a.attrs
    return all(p(x[i - 1], x[j - 1]) for i, j in a.net.edges)


def enforce_predicate(p: EdgePredicate, a: Attributed) -> Attributed:
    """Drop exactly the edges whose endpoints fail ``p``."""
    x = a.attrs
    kept = frozenset(e for e in a.net.edges if p(x[e[0] - 1], x[e[1] - 1]))
    return Attributed(SimpleGraph(a.net.n, kept), x)


def act_predicate(p: EdgePredicate, op: Operation, items: Sequence[Attributed]) -> Attributed:
    for slot, a in enumerate(items, start=1):
        if not predicate_holds(p, a):
            raise ConstraintError(f"input {slot} has an edge that breaks {p.name}")
    return enforce_predicate(p, act_attributes(op, items))


def bound_holds(b: EdgeBound, a: Attributed) -> bool:
    x = a.attrs
    return all(m <= b(x[i - 1], x[j - 1]) for (i, j), m in a.net.mult)


def enforce_bound(b: EdgeBound, a: Attributed) -> Attributed:
    """Clamp every multiplicity to the bound of its endpoints."""
    x = a.attrs
    clamped = tuple((e, min(m, b(x[e[0] - 1], x[e[1] - 1]))) for e, m in a.net.mult)
    return Attributed(Multigraph(a.net.n, clamped), x)


def act_bounded(b: EdgeBound, op: Operation, items: Sequence[Attributed]) -> Attributed:
    for slot, a in enumerate(items, start=1):
        if not bound_holds(b, a):
            raise ConstraintError(f"input {slot} has more edges than {b.name} allows")
    return enforce_bound(b, act_attributes(op, items))


# -- degree-limited networks -------------------------------------------------

@dataclass(frozen=True)
class PortedNetwork:
    """A simple graph whose vertex ``i`` has at most ``ports[i]`` edges."""

    graph: SimpleGraph
    ports: tuple

    def __post_init__(self) -> None:
        ports = tuple(self.ports)
        if len(ports) != self.graph.n:
            raise ArityError(f"{len(ports)} port counts for {self.graph.n} vertices")
        for v, cap in enumerate(ports, start=1):
            _check_n(cap)
            if self.graph.degree(v) > cap:
                raise ConstraintError(f"vertex {v} has degree {self.graph.degree(v)} "
                                      f"but only {cap} ports")
        object.__setattr__(self, "ports", ports)

    @property
    def n(self) -> int:
        return self.graph.n

    def __repr__(self) -> str:
        return f"{self.graph!r}#{list(self.ports)}"


@dataclass(frozen=True)
class AttemptSequence:
    """An ordered list of connection attempts between vertices ``1..n``; repeats allowed."""

    n: int
    attempts: tuple = ()

    def __post_init__(self) -> None:
        _check_n(self.n)
        canon = []
        for pair in self.attempts:
            i, j = pair
            for v in (i, j):
                if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= self.n:
                    raise ValueError(f"attempt {pair} names a vertex outside 1..{self.n}")
            if i == j:
                raise ValueError(f"attempt {pair} joins a vertex to itself")
            canon.append((min(i, j), max(i, j)))
        object.__setattr__(self, "attempts", tuple(canon))

    def __len__(self) -> int:
        return len(self.attempts)

    def __repr__(self) -> str:
        return f"attempts({self.n})[{','.join(f'{i}-{j}' for i, j in self.attempts)}]"


class AttemptModel(NetworkModel):
    """Attempt sequences, combined so that ``g ∪ h`` tries ``h`` first and ``g`` afterwards.

    Sequences are compared literally, so this carries the operad that acts on
    ported networks; the identities that make it a model hold only after
    acting (see :func:`run_attempts`).
    """

    @property
    def name(self) -> str:
        return "attempts"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AttemptModel)

    def __hash__(self) -> int:
        return hash("attempts")

    def contains(self, g: Any) -> bool:
        return type(g) is AttemptSequence

    def unit(self, n: int) -> AttemptSequence:
        return AttemptSequence(n)

    def _overlay(self, g, h):
        return AttemptSequence(g.n, h.attempts + g.attempts)

    def _act(self, sigma, g):
        return AttemptSequence(g.n, tuple((sigma(i), sigma(j)) for i, j in g.attempts))

    def _djunion(self, g, h):
        return AttemptSequence(g.n + h.n,
                               g.attempts + tuple((i + g.n, j + g.n) for i, j in h.attempts))


ATTEMPTS = AttemptModel()


def run_attempts(start: PortedNetwork, attempts: Sequence[tuple[int, int]]) -> PortedNetwork:
    """Try each edge in order; it is added iff absent and both endpoints have a free port."""
    edges = set(start.graph.edges)
    degree = [0] * (start.n + 1)
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    ports = start.ports
    for i, j in attempts:
        e = (min(i, j), max(i, j))
        if not 1 <= e[0] < e[1] <= start.n:
            raise ValueError(f"attempt {i}-{j} outside 1..{start.n}")
        if e not in edges and degree[i] < ports[i - 1] and degree[j] < ports[j - 1]:
            edges.add(e)
            degree[i] += 1
            degree[j] += 1
    return PortedNetwork(SimpleGraph(start.n, frozenset(edges)), ports)


def act_degree_limited(op: Operation, items: Sequence[PortedNetwork]) -> PortedNetwork:
    """Permute the side-by-side inputs, then run the operation's attempts."""
    _check_inputs(op, [p.n for p in items])
    sigma = underlying_perm(op.perm)
    graph = SG.act(sigma, djunion_all(SG, [p.graph for p in items]))
    ports = permute_attrs(sigma, [c for p in items for c in p.ports])
    return run_attempts(PortedNetwork(graph, ports), op.net.attempts)


# -- algebra objects ---------------------------------------------------------

class Algebra(ABC):
    """An algebra of the operad of ``model``."""

    model: Any
    name: str

    @abstractmethod
    def contains(self, x: Any) -> bool: ...

    @abstractmethod
    def arity(self, x: Any) -> Any: ...

    @abstractmethod
    def _act(self, op: Operation, items: Sequence[Any]) -> Any: ...

    def check(self, x: Any) -> Any:
        if not self.contains(x):
            raise ConstraintError(f"{x!r} is not an element of the {self.name} algebra")
        return x

    def act(self, op: Operation, items: Sequence[Any]) -> Any:
        if op.model != self.model:
            raise ModelMismatch(f"{self.name} algebra is acted on by operations of "
                                f"{self.model.name}, not {op.model.name}")
        for x in items:
            self.check(x)
        _check_inputs(op, [self.arity(x) for x in items])
        return self._act(op, items)

    def __repr__(self) -> str:
        return f"<algebra {self.name}>"


class CanonicalAlgebra(Algebra):
    def __init__(self, model):
        self.model = model
        self.name = f"canonical[{model.name}]"

    def contains(self, x):
        return self.model.contains(x)

    def arity(self, x):
        return self.model.arity(x)

    def _act(self, op, items):
        return act_canonical(op, items)


class AttributeAlgebra(Algebra):
    """Networks of ``model`` with attributes accepted by ``is_attr``."""

    def __init__(self, model, is_attr: Callable[[Any], bool] = lambda x: True,
                 label: str = "any"):
        self.model = model
        self.is_attr = is_attr
        self.name = f"attributes[{model.name},{label}]"

    def contains(self, x):
        return (isinstance(x, Attributed) and self.model.contains(x.net)
                and len(x.attrs) == vertex_count(self.model, x.net)
                and all(self.is_attr(a) for a in x.attrs))

    def arity(self, x):
        return self.model.arity(x.net)

    def _act(self, op, items):
        return act_attributes(op, items)


def _is_point(x: Any) -> bool:
    return (isinstance(x, tuple) and len(x) == 2
            and all(isinstance(c, Fraction) for c in x))


class PredicateAlgebra(AttributeAlgebra):
    """Attributed simple graphs in which every edge satisfies ``predicate``."""

    def __init__(self, predicate: EdgePredicate, is_attr: Callable[[Any], bool] = _is_point):
        super().__init__(SG, is_attr, "points")
        self.predicate = predicate
        self.name = f"predicate[{predicate.name}]"

    def contains(self, x):
        return super().contains(x) and predicate_holds(self.predicate, x)

    def _act(self, op, items):
        return enforce_predicate(self.predicate, act_attributes(op, items))


class BoundedAlgebra(AttributeAlgebra):
    """Attributed multigraphs (additive overlay) whose multiplicities respect ``bound``."""

    def __init__(self, bound: EdgeBound, is_attr: Callable[[Any], bool] = _is_point):
        super().__init__(MGPLUS, is_attr, "points")
        self.bound = bound
        self.name = f"bounded[{bound.name}]"

    def contains(self, x):
        return super().contains(x) and bound_holds(self.bound, x)

    def _act(self, op, items):
        return enforce_bound(self.bound, act_attributes(op, items))


class DegreeLimitedAlgebra(Algebra):
    """Ported simple graphs, acted on by operations whose networks are attempt sequences."""

    model = ATTEMPTS
    name = "degree-limited"

    def contains(self, x):
        return isinstance(x, PortedNetwork)

    def arity(self, x):
        return x.n

    def _act(self, op, items):
        return act_degree_limited(op, items)


ALGEBRA_KINDS = ("canonical", "attributes", "range", "two-range", "degree")


def algebra_from_id(kind: str, model=None, params: dict | None = None) -> Algebra:
    """Build an algebra from a CLI identifier and ``key=value`` parameters.

    ``range`` takes ``L``; ``two-range`` takes ``L1`` and ``L2``.
    """
    params = params or {}
    if kind == "canonical":
        return CanonicalAlgebra(model if model is not None else SG)
    if kind == "attributes":
        return AttributeAlgebra(model if model is not None else SG)
    if kind == "range":
        _fixed_model(kind, model, SG)
        return PredicateAlgebra(range_predicate(_param(params, "L")))
    if kind == "two-range":
        _fixed_model(kind, model, MGPLUS)
        return BoundedAlgebra(two_range_bound(_param(params, "L1"), _param(params, "L2")))
    if kind == "degree":
        _fixed_model(kind, model, ATTEMPTS)
        return DegreeLimitedAlgebra()
    raise ValueError(f"unknown algebra {kind!r}; expected one of {', '.join(ALGEBRA_KINDS)}")


def _fixed_model(kind: str, model, expected) -> None:
    if model is not None and model != expected:
        raise ValueError(f"the {kind} algebra lives over {expected.name}, not {model.name}")


def _param(params: dict, key: str) -> Fraction:
    if key not in params:
        raise ValueError(f"missing parameter {key}")
    try:
        return to_fraction(params[key])
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"parameter {key}={params[key]!r} is not a number") from exc
