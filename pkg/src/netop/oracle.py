"""Brute-force law checking.

Everything here is deliberately independent of the closed-form code in
:mod:`netop.operad`: composites are rebuilt as a tensor product followed by
one binary composition of (permutation, network) pairs, and block
permutations are rebuilt from position labels.  Agreement between the two
paths is therefore evidence, not tautology.

Checks return :class:`LawReport` values.  Random cases come from a
``random.Random`` seeded with a string derived from the user seed, the model
and the law, so the same seed reproduces the same reports byte for byte.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from itertools import combinations, product
from typing import Any, Callable, Iterable, Iterator, Sequence

import numpy as np

from . import operad as O
from .algebra import (AttemptModel, AttemptSequence, AttributeAlgebra, Attributed, BoundedAlgebra,
                      CanonicalAlgebra, DegreeLimitedAlgebra, PortedNetwork, PredicateAlgebra,
                      act_attributes, enforce_bound, enforce_predicate, hom_forget, run_attempts)
from .colored import (Colored, ColoredPermutation, ColorWord, OneColored,
                      PercolorProduct, PetriModel, PetriNet, PulledBackModel, RecoloredModel)
from .errors import BudgetExceeded, NetopError
from .netmodel import (DirectedGraphModel, GammaModel, HypergraphModel, ModelMorphism,
                       MultigraphModel, PartitionModel, SimpleGraphModel, TensorModel)
from .networks import (DirectedGraph, DirectedMultigraph, EdgeLabeling, Hypergraph, Multigraph,
                       Partition, SimpleGraph, complete_edges)
from .operad import Operation, Profile
from .perm import Permutation, all_permutations

DEFAULT_BUDGET = 100_000


# -- reports -----------------------------------------------------------------

@dataclass
class LawReport:
    law: str
    subject: str
    mode: str
    seed: int | None
    cases: int = 0
    passed: bool = True
    counterexample: dict | None = None
    detail: str = ""

    def fail(self, inputs: dict, lhs: Any, rhs: Any) -> None:
        self.passed = False
        self.counterexample = {"inputs": {k: repr(v) for k, v in inputs.items()},
                               "lhs": repr(lhs), "rhs": repr(rhs)}

    def to_dict(self) -> dict:
        out = {"law": self.law, "subject": self.subject, "mode": self.mode, "seed": self.seed,
               "cases": self.cases, "passed": self.passed,
               "counterexample": self.counterexample}
        if self.detail:
            out["detail"] = self.detail
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


def reports_to_jsonl(reports: Iterable[LawReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)


def _rng(seed: int | None, *parts: str) -> random.Random:
    return random.Random("/".join([str(seed), *parts]))


def _run_cases(report: LawReport, cases: Iterable[dict], law: Callable[[dict], tuple]) -> LawReport:
    """Evaluate ``law`` on each case until the first disagreement."""
    for env in cases:
        report.cases += 1
        try:
            lhs, rhs = law(env)
        except (NetopError, ValueError, IndexError) as exc:
            report.fail(env, f"raised {type(exc).__name__}: {exc}", "no error")
            return report
        if lhs != rhs:
            report.fail(env, lhs, rhs)
            return report
    return report


# -- types and permutations, one-colored or colored ---------------------------

def all_types(model, max_n: int) -> list:
    if not model.colored:
        return list(range(max_n + 1))
    return [ColorWord(w) for k in range(max_n + 1) for w in product(model.colors, repeat=k)]


def random_type(model, rng: random.Random, max_n: int) -> Any:
    k = rng.randint(0, max_n)
    if not model.colored:
        return k
    return ColorWord(tuple(rng.choice(model.colors) for _ in range(k)))


def type_size(model, t: Any) -> int:
    return len(t) if model.colored else t


def _perm_from(model, t: Any, sigma: Permutation) -> Any:
    if not model.colored:
        return sigma
    target = [None] * len(t)
    for i, c in enumerate(t, start=1):
        target[sigma(i) - 1] = c
    return ColoredPermutation(t, ColorWord(tuple(target)), sigma)


def all_perms_from(model, t: Any) -> list:
    return [_perm_from(model, t, s) for s in all_permutations(type_size(model, t))]


def random_perm_from(model, t: Any, rng: random.Random) -> Any:
    images = list(range(1, type_size(model, t) + 1))
    rng.shuffle(images)
    return _perm_from(model, t, Permutation(tuple(images)))


def perm_target(model, sigma: Any) -> Any:
    return sigma.target if model.colored else sigma.n


def _raw(sigma: Any) -> Permutation:
    return sigma.perm if isinstance(sigma, ColoredPermutation) else sigma


def oracle_identity(model, t: Any) -> Any:
    images = tuple(range(1, type_size(model, t) + 1))
    return ColoredPermutation(t, t, Permutation(images)) if model.colored else Permutation(images)


def oracle_perm_sum(model, a: Any, b: Any) -> Any:
    """Side-by-side permutations, rebuilt pointwise."""
    ra, rb = _raw(a), _raw(b)
    images = [ra(i) for i in range(1, ra.n + 1)] + [ra.n + rb(i) for i in range(1, rb.n + 1)]
    raw = Permutation(tuple(images))
    if not model.colored:
        return raw
    return ColoredPermutation(a.source + b.source, a.target + b.target, raw)


def oracle_perm_compose(model, a: Any, b: Any) -> Any:
    """``a`` after ``b``, rebuilt pointwise."""
    ra, rb = _raw(a), _raw(b)
    raw = Permutation(tuple(ra(rb(i)) for i in range(1, rb.n + 1)))
    if not model.colored:
        return raw
    return ColoredPermutation(b.source, a.target, raw)


def oracle_block_swap(model, v: Any, w: Any) -> Any:
    """The braiding ``v + w -> w + v`` from position labels."""
    m, n = type_size(model, v), type_size(model, w)
    labels = [(0, r) for r in range(m)] + [(1, r) for r in range(n)]
    target = [(1, r) for r in range(n)] + [(0, r) for r in range(m)]
    where = {lab: pos for pos, lab in enumerate(target, start=1)}
    raw = Permutation(tuple(where[lab] for lab in labels))
    if not model.colored:
        return raw
    return ColoredPermutation(v + w, w + v, raw)


def oracle_block_permutation(model, tau: Permutation, types: Sequence[Any]) -> Any:
    """Reordered blocks ``types[tau(1)], ..., types[tau(k)]`` carried home, from position labels."""
    source = [(tau(j), r) for j in range(1, tau.n + 1) for r in range(type_size(model, types[tau(j) - 1]))]
    target = [(b, r) for b in range(1, len(types) + 1) for r in range(type_size(model, types[b - 1]))]
    where = {lab: pos for pos, lab in enumerate(target, start=1)}
    raw = Permutation(tuple(where[lab] for lab in source))
    if not model.colored:
        return raw
    src = ColorWord(tuple(c for j in range(1, tau.n + 1) for c in types[tau(j) - 1]))
    tgt = ColorWord(tuple(c for t in types for c in t))
    return ColoredPermutation(src, tgt, raw)


def _concat(model, types: Sequence[Any]) -> Any:
    if not model.colored:
        return sum(types)
    return ColorWord(tuple(c for t in types for c in t))


# -- enumeration and random elements ------------------------------------------

def _subsets(items: Sequence[Any]) -> Iterator[tuple]:
    for mask in range(1 << len(items)):
        yield tuple(x for b, x in enumerate(items) if mask >> b & 1)


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """Restricted-growth enumeration of the partitions of 1..n."""
    def grow(i: int, blocks: list[list[int]]):
        if i > n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from grow(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from grow(i + 1, blocks)
        blocks.pop()

    yield from grow(1, [])


def _bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def _ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


@singledispatch
def count_networks(model, t: Any, cap: int) -> int:
    raise NotImplementedError(f"no enumerator for model {model.name}")


@singledispatch
def iter_networks(model, t: Any, cap: int) -> Iterator[Any]:
    raise NotImplementedError(f"no enumerator for model {model.name}")


@singledispatch
def random_network(model, t: Any, rng: random.Random, cap: int) -> Any:
    raise NotImplementedError(f"no sampler for model {model.name}")


@count_networks.register
def _(model: SimpleGraphModel, n, cap):
    return 2 ** math.comb(n, 2)


@iter_networks.register
def _(model: SimpleGraphModel, n, cap):
    for es in _subsets(complete_edges(n)):
        yield SimpleGraph(n, frozenset(es))


@random_network.register
def _(model: SimpleGraphModel, n, rng, cap):
    return SimpleGraph(n, frozenset(e for e in complete_edges(n) if rng.random() < 0.5))


@count_networks.register
def _(model: DirectedGraphModel, n, cap):
    return 2 ** (n * (n - 1))


@iter_networks.register
def _(model: DirectedGraphModel, n, cap):
    for es in _subsets(_ordered_pairs(n)):
        yield DirectedGraph(n, frozenset(es))


@random_network.register
def _(model: DirectedGraphModel, n, rng, cap):
    return DirectedGraph(n, frozenset(e for e in _ordered_pairs(n) if rng.random() < 0.4))


def _mg_pairs(model: MultigraphModel, n: int) -> list:
    return _ordered_pairs(n) if model.directed else complete_edges(n)


@count_networks.register
def _(model: MultigraphModel, n, cap):
    return (cap + 1) ** len(_mg_pairs(model, n))


@iter_networks.register
def _(model: MultigraphModel, n, cap):
    pairs = _mg_pairs(model, n)
    cls = DirectedMultigraph if model.directed else Multigraph
    for ms in product(range(cap + 1), repeat=len(pairs)):
        yield cls(n, tuple(zip(pairs, ms)))


@random_network.register
def _(model: MultigraphModel, n, rng, cap):
    cls = DirectedMultigraph if model.directed else Multigraph
    return cls(n, tuple((e, rng.randint(1, cap)) for e in _mg_pairs(model, n)
                        if cap and rng.random() < 0.5))


def _nonempty_subsets(n: int) -> list[tuple[int, ...]]:
    return [s for s in _subsets(range(1, n + 1)) if s]


@count_networks.register
def _(model: HypergraphModel, n, cap):
    return 2 ** (2 ** n - 1)


@iter_networks.register
def _(model: HypergraphModel, n, cap):
    for hs in _subsets(_nonempty_subsets(n)):
        yield Hypergraph(n, frozenset(hs))


@random_network.register
def _(model: HypergraphModel, n, rng, cap):
    if n == 0:
        return Hypergraph(0)
    edges = set()
    for _ in range(rng.randint(0, n + 1)):
        members = tuple(v for v in range(1, n + 1) if rng.random() < 0.4)
        edges.add(members or (rng.randint(1, n),))
    return Hypergraph(n, frozenset(edges))


@count_networks.register
def _(model: PartitionModel, n, cap):
    return _bell(n)


@iter_networks.register
def _(model: PartitionModel, n, cap):
    for blocks in set_partitions(n):
        yield Partition(n, frozenset(tuple(b) for b in blocks))


@random_network.register
def _(model: PartitionModel, n, rng, cap):
    groups: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        groups.setdefault(rng.randrange(n), []).append(v)
    return Partition(n, frozenset(tuple(b) for b in groups.values()))


def _label_values(model: GammaModel, cap: int) -> tuple:
    m = model.monoid
    return m.elements if m.elements is not None else tuple(range(cap + 1))


@count_networks.register
def _(model: GammaModel, n, cap):
    return len(_label_values(model, cap)) ** math.comb(n, 2)


@iter_networks.register
def _(model: GammaModel, n, cap):
    edges = complete_edges(n)
    for vs in product(_label_values(model, cap), repeat=len(edges)):
        yield EdgeLabeling(n, model.monoid, tuple(zip(edges, vs)))


@random_network.register
def _(model: GammaModel, n, rng, cap):
    values = _label_values(model, cap)
    return EdgeLabeling(n, model.monoid,
                        tuple((e, rng.choice(values)) for e in complete_edges(n)))


@random_network.register
def _(model: AttemptModel, n, rng, cap):
    if n < 2:
        return AttemptSequence(n)
    return AttemptSequence(n, tuple(rng.choice(complete_edges(n))
                                    for _ in range(rng.randint(0, cap + 1))))


@count_networks.register
def _(model: TensorModel, n, cap):
    return math.prod(count_networks(f, n, cap) for f in model.factors)


@iter_networks.register
def _(model: TensorModel, n, cap):
    yield from product(*(list(iter_networks(f, n, cap)) for f in model.factors))


@random_network.register
def _(model: TensorModel, n, rng, cap):
    return tuple(random_network(f, n, rng, cap) for f in model.factors)


# colored models: ``t`` is a ColorWord and the raw (unwrapped) network is produced

def _petri_shape(w: ColorWord) -> tuple[int, int]:
    return w.count("p"), w.count("t")


@count_networks.register
def _(model: PetriModel, w, cap):
    m, n = _petri_shape(w)
    return (cap + 1) ** (2 * m * n)


@iter_networks.register
def _(model: PetriModel, w, cap):
    m, n = _petri_shape(w)
    for vals in product(range(cap + 1), repeat=2 * m * n):
        i = [vals[r * n:(r + 1) * n] for r in range(m)]
        o = [vals[m * n + r * n:m * n + (r + 1) * n] for r in range(m)]
        yield PetriNet(m, n, i, o)


@random_network.register
def _(model: PetriModel, w, rng, cap):
    m, n = _petri_shape(w)

    def mat():
        return [[rng.randint(0, cap) if rng.random() < 0.5 else 0 for _ in range(n)]
                for _ in range(m)]

    return PetriNet(m, n, mat(), mat())


@count_networks.register(RecoloredModel)
@count_networks.register(OneColored)
def _(model, w, cap):
    return count_networks(model.base, len(w), cap)


@iter_networks.register(RecoloredModel)
@iter_networks.register(OneColored)
def _(model, w, cap):
    return iter_networks(model.base, len(w), cap)


@random_network.register(RecoloredModel)
@random_network.register(OneColored)
def _(model, w, rng, cap):
    return random_network(model.base, len(w), rng, cap)


@count_networks.register
def _(model: PercolorProduct, w, cap):
    return math.prod(count_networks(model.models[c], w.count(c), cap) for c in model.colors)


@iter_networks.register
def _(model: PercolorProduct, w, cap):
    yield from product(*(list(iter_networks(model.models[c], w.count(c), cap))
                         for c in model.colors))


@random_network.register
def _(model: PercolorProduct, w, rng, cap):
    return tuple(random_network(model.models[c], w.count(c), rng, cap) for c in model.colors)


@count_networks.register
def _(model: PulledBackModel, w, cap):
    return count_networks(model.base, model.push(w), cap)


@iter_networks.register
def _(model: PulledBackModel, w, cap):
    return iter_networks(model.base, model.push(w), cap)


@random_network.register
def _(model: PulledBackModel, w, rng, cap):
    return random_network(model.base, model.push(w), rng, cap)


def enumerate_networks(model, t: Any, budget: int = DEFAULT_BUDGET, cap: int = 2) -> list:
    """Every network of type ``t`` (multiplicities and unbounded labels up to ``cap``).

    Refuses with :class:`BudgetExceeded` instead of truncating.
    """
    size = count_networks(model, t, cap)
    if size > budget:
        raise BudgetExceeded(f"{model.name} has {size} networks of type {t}, over the budget "
                             f"of {budget}")
    nets = iter_networks(model, t, cap)
    if model.colored:
        return [Colored(t, g) for g in nets]
    return list(nets)


def enumerate_permutations(n: int, budget: int = DEFAULT_BUDGET) -> list[Permutation]:
    if math.factorial(n) > budget:
        raise BudgetExceeded(f"S_{n} has {math.factorial(n)} elements, over the budget of {budget}")
    return list(all_permutations(n))


def random_element(model, t: Any, rng: random.Random, cap: int = 3) -> Any:
    g = random_network(model, t, rng, cap)
    return Colored(t, g) if model.colored else g


# -- the equations of a network model ----------------------------------------

class _Cases:
    """Draws the variables of a law, exhaustively or at random.

    A law's signature is a list of ``(name, kind, depends_on)``: ``type``,
    ``el`` (a network of the type named by ``depends_on``), ``perm`` (a
    permutation out of that type) or ``after`` (a permutation out of the
    target of the permutation named by ``depends_on``).
    """

    def __init__(self, model, max_n: int, cap: int, budget: int):
        self.model, self.max_n, self.cap, self.budget = model, max_n, cap, budget
        self._pools: dict = {}

    def pool(self, kind: str, t: Any) -> list:
        key = (kind, t)
        if key not in self._pools:
            if kind == "el":
                self._pools[key] = enumerate_networks(self.model, t, self.budget, self.cap)
            else:
                if math.factorial(type_size(self.model, t)) > self.budget:
                    raise BudgetExceeded(f"too many permutations of {t}")
                self._pools[key] = all_perms_from(self.model, t)
        return self._pools[key]

    def count(self, sig: Sequence[tuple]) -> int:
        """Number of cases ``exhaustive`` would produce, without producing them."""
        types = all_types(self.model, self.max_n)

        def walk(i: int, env: dict) -> int:
            if i == len(sig):
                return 1
            name, kind, dep = sig[i]
            if kind == "type":
                return sum(walk(i + 1, {**env, name: t}) for t in types)
            if kind == "el":
                size = count_networks(self.model, env[dep], self.cap)
                return size * walk(i + 1, env)
            # ``after`` follows a permutation whose target has the same length as its source
            length = type_size(self.model, env[dep]) if kind == "perm" else env[dep]
            return math.factorial(length) * walk(i + 1, {**env, name: length})

        return walk(0, {})

    def exhaustive(self, sig: Sequence[tuple]) -> Iterator[dict]:
        types = all_types(self.model, self.max_n)

        def walk(i: int, env: dict):
            if i == len(sig):
                yield dict(env)
                return
            name, kind, dep = sig[i]
            if kind == "type":
                choices = types
            elif kind == "el":
                choices = self.pool("el", env[dep])
            elif kind == "perm":
                choices = self.pool("perm", env[dep])
            else:
                choices = self.pool("perm", perm_target(self.model, env[dep]))
            for c in choices:
                env[name] = c
                yield from walk(i + 1, env)
            env.pop(name, None)

        yield from walk(0, {})

    def random(self, sig: Sequence[tuple], rng: random.Random, samples: int) -> Iterator[dict]:
        for _ in range(samples):
            env: dict = {}
            for name, kind, dep in sig:
                if kind == "type":
                    env[name] = random_type(self.model, rng, self.max_n)
                elif kind == "el":
                    env[name] = random_element(self.model, env[dep], rng, self.cap)
                elif kind == "perm":
                    env[name] = random_perm_from(self.model, env[dep], rng)
                else:
                    env[name] = random_perm_from(self.model, perm_target(self.model, env[dep]), rng)
            yield env


def _model_laws(F) -> list[tuple[str, list, Callable[[dict], tuple]]]:
    """The twelve equations, as (identifier, signature, env -> (lhs, rhs))."""
    ov, act, dj, unit = F.overlay, F.act, F.djunion, F.unit
    e0 = F.empty_type
    return [
        ("overlay-unit", [("n", "type", None), ("g", "el", "n")],
         lambda v: ((ov(unit(v["n"]), v["g"]), ov(v["g"], unit(v["n"]))), (v["g"], v["g"]))),
        ("overlay-assoc", [("n", "type", None), ("g1", "el", "n"), ("g2", "el", "n"),
                           ("g3", "el", "n")],
         lambda v: (ov(v["g1"], ov(v["g2"], v["g3"])), ov(ov(v["g1"], v["g2"]), v["g3"]))),
        ("act-overlay", [("n", "type", None), ("s", "perm", "n"), ("g1", "el", "n"),
                         ("g2", "el", "n")],
         lambda v: (act(v["s"], ov(v["g1"], v["g2"])), ov(act(v["s"], v["g1"]), act(v["s"], v["g2"])))),
        ("act-unit", [("n", "type", None), ("s", "perm", "n")],
         lambda v: (act(v["s"], unit(v["n"])), unit(perm_target(F, v["s"])))),
        ("act-compose", [("n", "type", None), ("s1", "perm", "n"), ("s2", "after", "s1"),
                         ("g", "el", "n")],
         lambda v: (act(oracle_perm_compose(F, v["s2"], v["s1"]), v["g"]),
                    act(v["s2"], act(v["s1"], v["g"])))),
        ("act-identity", [("n", "type", None), ("g", "el", "n")],
         lambda v: (act(oracle_identity(F, v["n"]), v["g"]), v["g"])),
        ("interchange", [("n", "type", None), ("m", "type", None), ("g1", "el", "n"),
                         ("g2", "el", "n"), ("h1", "el", "m"), ("h2", "el", "m")],
         lambda v: (dj(ov(v["g1"], v["g2"]), ov(v["h1"], v["h2"])),
                    ov(dj(v["g1"], v["h1"]), dj(v["g2"], v["h2"])))),
        ("djunion-of-units", [("m", "type", None), ("n", "type", None)],
         lambda v: (dj(unit(v["m"]), unit(v["n"])), unit(_concat(F, [v["m"], v["n"]])))),
        ("djunion-natural", [("n", "type", None), ("m", "type", None), ("s", "perm", "n"),
                             ("g", "el", "n"), ("t", "perm", "m"), ("h", "el", "m")],
         lambda v: (dj(act(v["s"], v["g"]), act(v["t"], v["h"])),
                    act(oracle_perm_sum(F, v["s"], v["t"]), dj(v["g"], v["h"])))),
        ("djunion-assoc", [("a", "type", None), ("b", "type", None), ("c", "type", None),
                           ("g1", "el", "a"), ("g2", "el", "b"), ("g3", "el", "c")],
         lambda v: (dj(v["g1"], dj(v["g2"], v["g3"])), dj(dj(v["g1"], v["g2"]), v["g3"]))),
        ("djunion-unit", [("n", "type", None), ("g", "el", "n")],
         lambda v: ((dj(unit(e0), v["g"]), dj(v["g"], unit(e0))), (v["g"], v["g"]))),
        ("djunion-symmetry", [("m", "type", None), ("n", "type", None), ("h", "el", "m"),
                              ("g", "el", "n")],
         lambda v: (act(oracle_block_swap(F, v["m"], v["n"]), dj(v["h"], v["g"])),
                    dj(v["g"], v["h"]))),
    ]


MODEL_LAWS = ("overlay-unit", "overlay-assoc", "act-overlay", "act-unit", "act-compose",
              "act-identity", "interchange", "djunion-of-units", "djunion-natural",
              "djunion-assoc", "djunion-unit", "djunion-symmetry")


def check_model(model, max_n: int = 3, mode: str = "random", seed: int | None = 0,
                samples: int = 1000, cap: int = 3, budget: int = DEFAULT_BUDGET,
                laws: Sequence[str] | None = None) -> list[LawReport]:
    """One report per model equation.

    ``exhaustive`` mode checks every assignment of every variable with types
    up to ``max_n`` and refuses (BudgetExceeded) when a law would need more
    than ``budget`` cases; ``random`` mode draws ``samples`` cases per law.
    """
    if mode not in ("random", "exhaustive"):
        raise ValueError(f"mode must be 'random' or 'exhaustive', not {mode!r}")
    cases = _Cases(model, max_n, cap, budget)
    out = []
    for name, sig, law in _model_laws(model):
        if laws is not None and name not in laws:
            continue
        report = LawReport(name, model.name, mode, seed if mode == "random" else None)
        if mode == "exhaustive":
            total = cases.count(sig)
            if total > budget:
                raise BudgetExceeded(f"law {name} needs {total} cases at max_n={max_n}, "
                                     f"over the budget of {budget}")
            stream = cases.exhaustive(sig)
        else:
            stream = cases.random(sig, _rng(seed, model.name, name), samples)
        out.append(_run_cases(report, stream, law))
    return out


# -- the operad ----------------------------------------------------------------

def category_compose(model, outer: tuple, inner: tuple) -> tuple:
    """``(s, g) ∘ (p, h) = (s p, g ∪ s(h))`` for (permutation, network) pairs."""
    s, g = outer
    p, h = inner
    return oracle_perm_compose(model, s, p), model.overlay(g, model.act(s, h))


def category_tensor(model, a: tuple, b: tuple) -> tuple:
    """``(s, g) ⊗ (s', g') = (s + s', g ⊔ g')``."""
    return oracle_perm_sum(model, a[0], b[0]), model.djunion(a[1], b[1])


def compose_via_category(f: Operation, gs: Sequence[Operation]) -> Operation:
    """``f ∘ (g_1 ⊗ ... ⊗ g_k)`` computed in the category of (permutation, network) pairs."""
    model = f.model
    if len(gs) != f.arity or any(g.output != t for g, t in zip(gs, f.inputs)):
        raise ValueError("operations do not match the input profile")
    acc = (oracle_identity(model, model.empty_type), model.unit(model.empty_type))
    for g in gs:
        acc = category_tensor(model, acc, (g.perm, g.net))
    perm, net = category_compose(model, (f.perm, f.net), acc)
    return Operation(model, Profile(tuple(t for g in gs for t in g.inputs), f.output), perm, net)


def right_action_via_category(f: Operation, tau: Permutation) -> Operation:
    """Precompose with the block permutation of ``tau`` paired with the unit network."""
    model = f.model
    beta = oracle_block_permutation(model, tau, f.inputs)
    # the network of a morphism lives at its codomain
    perm, net = category_compose(model, (f.perm, f.net), (beta, model.unit(_concat(model, f.inputs))))
    inputs = tuple(f.inputs[tau(j) - 1] for j in range(1, tau.n + 1))
    return Operation(model, Profile(inputs, f.output), perm, net)


def random_operation(model, inputs: Sequence[Any], rng: random.Random, cap: int = 3,
                     output: Any = None) -> Operation:
    """A random operation with the given inputs; its output is random unless given."""
    source = _concat(model, inputs)
    if output is None:
        sigma = random_perm_from(model, source, rng)
        output = perm_target(model, sigma)
    elif model.colored:
        sigma = ColoredPermutation(source, output, _color_matching(source, output, rng))
    else:
        sigma = random_perm_from(model, source, rng)
    return Operation(model, Profile(tuple(inputs), output), sigma,
                     random_element(model, output, rng, cap))


def _color_matching(src: ColorWord, tgt: ColorWord, rng: random.Random) -> Permutation:
    """A random color-preserving bijection from ``src`` onto ``tgt``."""
    slots = {c: tgt.positions(c) for c in sorted(set(tgt))}
    for c in sorted(slots):
        rng.shuffle(slots[c])
    used: dict = {}
    images = []
    for c in src:
        images.append(slots[c][used.get(c, 0)])
        used[c] = used.get(c, 0) + 1
    return Permutation(tuple(images))


def _random_split(model, t: Any, rng: random.Random, k: int | None = None) -> list:
    """``k`` random input types that, concatenated, rearrange to ``t``."""
    if k is None:
        k = rng.randint(0, 3) if type_size(model, t) == 0 else rng.randint(1, 3)
    if k == 0:
        return []
    items = list(t) if model.colored else [None] * t
    rng.shuffle(items)
    cuts = sorted(rng.randint(0, len(items)) for _ in range(k - 1))
    bounds = [0, *cuts, len(items)]
    parts = [items[a:b] for a, b in zip(bounds, bounds[1:])]
    return [ColorWord(tuple(p)) for p in parts] if model.colored else [len(p) for p in parts]


def _random_profile(model, rng: random.Random, max_n: int) -> list:
    k = rng.randint(0, 3)
    total = random_type(model, rng, max_n) if k else model.empty_type
    return _random_split(model, total, rng, k)


def _random_layer(model, f: Operation, rng: random.Random, cap: int,
                  make: Callable | None = None) -> list[Operation]:
    """Operations whose outputs are exactly the inputs of ``f``."""
    make = make or (lambda inputs, t: random_operation(model, inputs, rng, cap, output=t))
    return [make(_random_split(model, t, rng), t) for t in f.inputs]


def _slices(items: Sequence[Any], gs: Sequence[Operation]) -> list[list]:
    out, i = [], 0
    for g in gs:
        out.append(list(items[i:i + g.arity]))
        i += g.arity
    return out


def check_operad(model, max_n: int = 6, seed: int | None = 0, samples: int = 1000,
                 cap: int = 3, compose: Callable = O.compose,
                 right_action: Callable = O.right_action) -> list[LawReport]:
    """Closed form versus category path, associativity, units, right action, equivariance.

    ``max_n`` bounds the output type of every sampled operation.
    """
    name = model.name
    reports = []

    def stream(law: str, make: Callable[[random.Random], dict]):
        rng = _rng(seed, name, "operad", law)
        return (make(rng) for _ in range(samples))

    def top(rng):
        return random_operation(model, _random_profile(model, rng, max_n), rng, cap)

    def two_path(rng):
        f = top(rng)
        return {"f": f, "gs": _random_layer(model, f, rng, cap)}

    reports.append(_run_cases(LawReport("closed-form-vs-category", name, "random", seed),
                              stream("two-path", two_path),
                              lambda v: (compose(v["f"], v["gs"]),
                                         compose_via_category(v["f"], v["gs"]))))

    def assoc(rng):
        f = top(rng)
        gs = _random_layer(model, f, rng, cap)
        hss = [_random_layer(model, g, rng, cap) for g in gs]
        return {"f": f, "gs": gs, "hs": hss}

    reports.append(_run_cases(
        LawReport("associativity", name, "random", seed), stream("assoc", assoc),
        lambda v: (compose(v["f"], [compose(g, hs) for g, hs in zip(v["gs"], v["hs"])]),
                   compose(compose(v["f"], v["gs"]), [h for hs in v["hs"] for h in hs]))))

    reports.append(_run_cases(
        LawReport("unit-left", name, "random", seed), stream("unit-left", lambda r: {"f": top(r)}),
        lambda v: (compose(O.identity_op(model, v["f"].output), [v["f"]]), v["f"])))
    reports.append(_run_cases(
        LawReport("unit-right", name, "random", seed), stream("unit-right", lambda r: {"f": top(r)}),
        lambda v: (compose(v["f"], [O.identity_op(model, t) for t in v["f"].inputs]), v["f"])))

    reports.append(_run_cases(
        LawReport("right-action-identity", name, "random", seed),
        stream("ra-id", lambda r: {"f": top(r)}),
        lambda v: (right_action(v["f"], Permutation.identity(v["f"].arity)), v["f"])))

    reports.append(_right_action_exhaustive(model, seed, cap, right_action))

    def ra_pair(rng):
        f = top(rng)
        tau = Permutation(tuple(rng.sample(range(1, f.arity + 1), f.arity)))
        return {"f": f, "tau": tau}

    reports.append(_run_cases(
        LawReport("right-action-vs-category", name, "random", seed), stream("ra-cat", ra_pair),
        lambda v: (right_action(v["f"], v["tau"]), right_action_via_category(v["f"], v["tau"]))))

    def equi(rng):
        case = two_path(rng)
        k = case["f"].arity
        case["tau"] = Permutation(tuple(rng.sample(range(1, k + 1), k)))
        return case

    def equivariance(v):
        f, gs, tau = v["f"], v["gs"], v["tau"]
        moved = [gs[tau(j) - 1] for j in range(1, tau.n + 1)]
        lhs = compose(right_action(f, tau), moved)
        # the induced reordering of the concatenated input list, built from labels
        labels = [(tau(j), r) for j in range(1, tau.n + 1) for r in range(gs[tau(j) - 1].arity)]
        home = {lab: pos for pos, lab in enumerate(
            [(b, r) for b in range(1, len(gs) + 1) for r in range(gs[b - 1].arity)], start=1)}
        rho = Permutation(tuple(home[lab] for lab in labels))
        return lhs, right_action(compose(f, gs), rho)

    reports.append(_run_cases(LawReport("equivariance", name, "random", seed),
                              stream("equivariance", equi), equivariance))
    return reports


def _right_action_exhaustive(model, seed, cap, right_action) -> LawReport:
    """``(f τ) τ' = f (τ τ')`` for every ``τ, τ'`` in S_k, k <= 3, and input sizes <= 2."""
    report = LawReport("right-action-compose", model.name, "exhaustive", seed)
    rng = _rng(seed, model.name, "operad", "ra-compose")
    small = all_types(model, 2)

    def cases():
        for k in range(4):
            for inputs in product(small, repeat=k):
                f = random_operation(model, inputs, rng, cap)
                for tau in all_permutations(k):
                    for tau2 in all_permutations(k):
                        yield {"f": f, "tau": tau, "tau2": tau2}

    return _run_cases(report, cases(), lambda v: (
        right_action(right_action(v["f"], v["tau"]), v["tau2"]),
        right_action(v["f"], Permutation(tuple(v["tau"](v["tau2"](i))
                                               for i in range(1, v["tau"].n + 1))))))


# -- algebras ------------------------------------------------------------------

def random_point(rng: random.Random, extent: int = 3, denominator: int = 4):
    return (Fraction(rng.randint(0, extent * denominator), denominator),
            Fraction(rng.randint(0, extent * denominator), denominator))


def _random_ported(n: int, rng: random.Random, max_port: int = 2) -> PortedNetwork:
    ports = tuple(rng.randint(0, max_port) for _ in range(n))
    start = PortedNetwork(SimpleGraph(n), ports)
    tries = [rng.choice(complete_edges(n)) for _ in range(rng.randint(0, 2 * n))] if n > 1 else []
    return run_attempts(start, tries)




class _AlgebraSampler:
    def __init__(self, algebra, cap: int):
        self.algebra, self.cap = algebra, cap
        self.model = algebra.model

    def raw_item(self, t, rng):
        """An element of the underlying attribute algebra, possibly breaking the constraint."""
        a = self.algebra
        if isinstance(a, DegreeLimitedAlgebra):
            return _random_ported(t, rng)
        net = random_element(self.model, t, rng, self.cap)
        if isinstance(a, (PredicateAlgebra, BoundedAlgebra)):
            return Attributed(net, tuple(random_point(rng) for _ in range(t)))
        if isinstance(a, AttributeAlgebra):
            return Attributed(net, tuple(rng.choice("abc") for _ in range(type_size(self.model, t))))
        return net

    def item(self, t, rng):
        x = self.raw_item(t, rng)
        if isinstance(self.algebra, PredicateAlgebra):
            return enforce_predicate(self.algebra.predicate, x)
        if isinstance(self.algebra, BoundedAlgebra):
            return enforce_bound(self.algebra.bound, x)
        return x

    def operation(self, inputs, rng, output=None):
        return random_operation(self.model, inputs, rng, self.cap, output=output)

    def layer(self, f, rng):
        return _random_layer(self.model, f, rng, self.cap,
                             lambda inputs, t: self.operation(inputs, rng, t))


def safety_violation(algebra, x: Any) -> str | None:
    """Independent re-check of the algebra's constraint on ``x``; ``None`` when safe."""
    if isinstance(algebra, PredicateAlgebra):
        for i, j in sorted(x.net.edges):
            if not algebra.predicate(x.attrs[i - 1], x.attrs[j - 1]):
                return f"edge {i}-{j} breaks {algebra.predicate.name}"
    elif isinstance(algebra, BoundedAlgebra):
        for (i, j), m in x.net.mult:
            cap = algebra.bound(x.attrs[i - 1], x.attrs[j - 1])
            if m > cap:
                return f"edge {i}-{j} has multiplicity {m} over the bound {cap}"
    elif isinstance(algebra, DegreeLimitedAlgebra):
        for v in range(1, x.n + 1):
            d = sum(v in e for e in x.graph.edges)
            if d > x.ports[v - 1]:
                return f"vertex {v} has degree {d} over its {x.ports[v - 1]} ports"
    return None


def check_algebra(algebra, max_n: int = 6, seed: int | None = 0, samples: int = 500,
                  cap: int = 3) -> list[LawReport]:
    """Unit and composition laws, equivariance, homomorphism squares and safety."""
    sampler = _AlgebraSampler(algebra, cap)
    model = algebra.model
    name = algebra.name
    reports = []

    def stream(law, make):
        rng = _rng(seed, name, "algebra", law)
        return (make(rng) for _ in range(samples))

    def top(rng):
        return sampler.operation(_random_profile(model, rng, max_n), rng)

    def unit_case(rng):
        t = random_type(model, rng, max_n)
        return {"x": sampler.item(t, rng)}

    reports.append(_run_cases(
        LawReport("unit", name, "random", seed), stream("unit", unit_case),
        lambda v: (algebra.act(O.identity_op(model, algebra.arity(v["x"])), [v["x"]]), v["x"])))

    def comp_case(rng):
        f = top(rng)
        gs = sampler.layer(f, rng)
        items = [sampler.item(t, rng) for g in gs for t in g.inputs]
        return {"f": f, "gs": gs, "items": items}

    outputs: list = []

    def composition(v):
        f, gs, items = v["f"], v["gs"], v["items"]
        lhs = algebra.act(O.compose(f, gs), items)
        inner = [algebra.act(g, part) for g, part in zip(gs, _slices(items, gs))]
        outputs.append(lhs)
        return lhs, algebra.act(f, inner)

    reports.append(_run_cases(LawReport("composition", name, "random", seed),
                              stream("composition", comp_case), composition))

    def equi_case(rng):
        f = top(rng)
        items = [sampler.item(t, rng) for t in f.inputs]
        tau = Permutation(tuple(rng.sample(range(1, f.arity + 1), f.arity)))
        return {"f": f, "items": items, "tau": tau}

    reports.append(_run_cases(
        LawReport("equivariance", name, "random", seed), stream("equivariance", equi_case),
        lambda v: (algebra.act(O.right_action(v["f"], v["tau"]),
                               [v["items"][v["tau"](j) - 1] for j in range(1, v["tau"].n + 1)]),
                   algebra.act(v["f"], v["items"]))))

    def raw_case(rng):
        f = top(rng)
        return {"f": f, "items": [sampler.raw_item(t, rng) for t in f.inputs]}

    if type(algebra) is AttributeAlgebra:
        canonical = CanonicalAlgebra(model)
        reports.append(_run_cases(
            LawReport("forget-square", name, "random", seed), stream("forget", raw_case),
            lambda v: (hom_forget(algebra.act(v["f"], v["items"])),
                       canonical.act(v["f"], [hom_forget(x) for x in v["items"]]))))
    elif isinstance(algebra, PredicateAlgebra):
        reports.append(_run_cases(
            LawReport("enforce-square", name, "random", seed), stream("enforce", raw_case),
            lambda v: (enforce_predicate(algebra.predicate, act_attributes(v["f"], v["items"])),
                       algebra.act(v["f"], [enforce_predicate(algebra.predicate, x)
                                            for x in v["items"]]))))
    elif isinstance(algebra, BoundedAlgebra):
        reports.append(_run_cases(
            LawReport("clamp-square", name, "random", seed), stream("clamp", raw_case),
            lambda v: (enforce_bound(algebra.bound, act_attributes(v["f"], v["items"])),
                       algebra.act(v["f"], [enforce_bound(algebra.bound, x) for x in v["items"]]))))

    if isinstance(algebra, (PredicateAlgebra, BoundedAlgebra, DegreeLimitedAlgebra)):
        report = LawReport("safety", name, "random", seed)
        for i, x in enumerate(outputs):
            report.cases += 1
            problem = safety_violation(algebra, x)
            if problem:
                report.fail({"output": i}, x, problem)
                break
        if report.passed and not reports[1].passed:
            report.detail = "composition failed early; safety checked on the outputs produced"
        reports.append(report)
    if isinstance(algebra, DegreeLimitedAlgebra):
        reports.extend(check_graphic(max_n=min(max_n, 4)))
    return reports


# -- attempts: the graphic identity at the action level ------------------------

def _attempt_states(n: int, max_port: int) -> tuple[list, dict]:
    edges = complete_edges(n)
    states, index = [], {}
    for ports in product(range(max_port + 1), repeat=n):
        for mask in range(1 << len(edges)):
            deg = [0] * (n + 1)
            for b, (i, j) in enumerate(edges):
                if mask >> b & 1:
                    deg[i] += 1
                    deg[j] += 1
            if all(deg[v] <= ports[v - 1] for v in range(1, n + 1)):
                index[ports, mask] = len(states)
                states.append((ports, mask))
    return states, index


def _attempt_generators(n: int, states: list, index: dict) -> dict:
    edges = complete_edges(n)
    gens = {}
    for b, e in enumerate(edges):
        images = []
        for ports, mask in states:
            graph = SimpleGraph(n, frozenset(edges[c] for c in range(len(edges)) if mask >> c & 1))
            after = run_attempts(PortedNetwork(graph, ports), [e])
            new_mask = sum(1 << edges.index(x) for x in after.graph.edges)
            images.append(index[ports, new_mask])
        gens[e] = np.array(images, dtype=np.int32)
    return gens


def _describe_state(n: int, state: tuple) -> str:
    ports, mask = state
    edges = complete_edges(n)
    graph = SimpleGraph(n, frozenset(edges[c] for c in range(len(edges)) if mask >> c & 1))
    return repr(PortedNetwork(graph, ports))


def check_graphic(max_n: int = 4, max_len: int = 4, max_port: int = 2) -> list[LawReport]:
    """``aba = ab`` and commutation of vertex-disjoint attempts, as maps on ported networks.

    Every start state with ``n <= max_n`` vertices and ports ``<= max_port`` is
    covered; words range over all attempt sequences of length ``<= max_len``.
    A word is turned into the map it induces on the finite state space, so
    each pair of distinct maps is compared once for all the word pairs that
    produce it.
    """
    aba = LawReport("graphic-aba", "degree-limited", "exhaustive", None)
    comm = LawReport("disjoint-commute", "degree-limited", "exhaustive", None)
    pairs = distinct = 0
    for n in range(max_n + 1):
        states, index = _attempt_states(n, max_port)
        gens = _attempt_generators(n, states, index)
        edges = complete_edges(n)
        words: list[tuple] = [()]
        maps = [np.arange(len(states), dtype=np.int32)]
        frontier = [((), maps[0])]
        for _ in range(max_len):
            nxt = []
            for w, m in frontier:
                for e in edges:
                    nm = gens[e][m]  # run w, then e
                    nxt.append((w + (e,), nm))
            words.extend(w for w, _ in nxt)
            maps.extend(m for _, m in nxt)
            frontier = nxt
        seen: dict[bytes, int] = {}
        reps: list[int] = []
        for i, m in enumerate(maps):
            key = m.tobytes()
            if key not in seen:
                seen[key] = len(reps)
                reps.append(i)
        table = np.stack([maps[i] for i in reps]) if states else np.zeros((len(reps), 0), np.int32)
        pairs += len(words) ** 2
        distinct += len(reps) ** 2
        aba.cases += len(words) ** 2 * len(states)
        if aba.passed:
            for ai, a_idx in enumerate(reps):
                a = maps[a_idx]
                then_b = table[:, a]          # row b: run a, then b
                again = a[then_b]             # ... then a again
                bad = np.nonzero((again != then_b).any(axis=1))[0]
                if bad.size:
                    b_idx = reps[int(bad[0])]
                    s = int(np.nonzero(again[bad[0]] != then_b[bad[0]])[0][0])
                    aba.fail({"n": n, "a": list(words[a_idx]), "b": list(words[b_idx]),
                              "start": _describe_state(n, states[s])},
                             _describe_state(n, states[int(again[bad[0], s])]),
                             _describe_state(n, states[int(then_b[bad[0], s])]))
                    break
        for e, f in combinations(edges, 2):
            if set(e) & set(f):
                continue
            comm.cases += len(states)
            ef, fe = gens[f][gens[e]], gens[e][gens[f]]
            if comm.passed and not np.array_equal(ef, fe):
                s = int(np.nonzero(ef != fe)[0][0])
                comm.fail({"n": n, "first": e, "second": f, "start": _describe_state(n, states[s])},
                          _describe_state(n, states[int(ef[s])]),
                          _describe_state(n, states[int(fe[s])]))
    aba.detail = f"{pairs} word pairs reduced to {distinct} pairs of distinct state maps"
    return [aba, comm]


# -- morphisms -----------------------------------------------------------------

def check_morphism(phi: ModelMorphism, max_n: int = 4, mode: str = "random",
                   seed: int | None = 0, samples: int = 500, cap: int = 3,
                   pair_max_n: int = 3, inverse: ModelMorphism | None = None,
                   expected: Callable[[Any], Any] | None = None,
                   budget: int = DEFAULT_BUDGET) -> list[LawReport]:
    """Structure preservation by ``phi`` and by the operad map it induces.

    In ``exhaustive`` mode unary laws cover every network of type ``<= max_n``
    and binary laws every pair with types ``<= pair_max_n``.  ``inverse``
    adds round-trip checks; ``expected`` compares ``phi`` with an
    independently computed image.
    """
    src, tgt = phi.source, phi.target
    name = phi.name
    cases = _Cases(src, max_n, cap, budget)
    pair_cases = _Cases(src, min(pair_max_n, max_n), cap, budget)
    reports = []

    laws = [
        ("unit", cases, [("n", "type", None)],
         lambda v: (phi(src.unit(v["n"])), tgt.unit(v["n"]))),
        ("act", cases, [("n", "type", None), ("s", "perm", "n"), ("g", "el", "n")],
         lambda v: (phi(src.act(v["s"], v["g"])), tgt.act(v["s"], phi(v["g"])))),
        ("overlay", pair_cases, [("n", "type", None), ("g", "el", "n"), ("h", "el", "n")],
         lambda v: (phi(src.overlay(v["g"], v["h"])), tgt.overlay(phi(v["g"]), phi(v["h"])))),
        ("djunion", pair_cases, [("m", "type", None), ("n", "type", None), ("g", "el", "m"),
                                 ("h", "el", "n")],
         lambda v: (phi(src.djunion(v["g"], v["h"])), tgt.djunion(phi(v["g"]), phi(v["h"])))),
    ]
    if inverse is not None:
        back = _Cases(tgt, max_n, cap, budget)
        laws.append(("inverse-left", cases, [("n", "type", None), ("g", "el", "n")],
                     lambda v: (inverse(phi(v["g"])), v["g"])))
        laws.append(("inverse-right", back, [("n", "type", None), ("g", "el", "n")],
                     lambda v: (phi(inverse(v["g"])), v["g"])))
    if expected is not None:
        laws.append(("expected-image", cases, [("n", "type", None), ("g", "el", "n")],
                     lambda v: (phi(v["g"]), expected(v["g"]))))

    for law, pool, sig, fn in laws:
        report = LawReport(law, name, mode, seed if mode == "random" else None)
        if mode == "exhaustive":
            total = pool.count(sig)
            if total > budget:
                raise BudgetExceeded(f"law {law} needs {total} cases, over the budget of {budget}")
            stream = pool.exhaustive(sig)
        else:
            stream = pool.random(sig, _rng(seed, name, law), samples)
        reports.append(_run_cases(report, stream, fn))

    # the induced map of operads
    def op_stream(law, make):
        rng = _rng(seed, name, "operad", law)
        return (make(rng) for _ in range(samples))

    def top(rng):
        return random_operation(src, _random_profile(src, rng, max_n + 2), rng, cap)

    def comp_case(rng):
        f = top(rng)
        return {"f": f, "gs": _random_layer(src, f, rng, cap)}

    push = O.operad_morphism_apply
    reports.append(_run_cases(
        LawReport("operad-composition", name, "random", seed), op_stream("compose", comp_case),
        lambda v: (push(phi, O.compose(v["f"], v["gs"])),
                   O.compose(push(phi, v["f"]), [push(phi, g) for g in v["gs"]]))))
    reports.append(_run_cases(
        LawReport("operad-identity", name, "random", seed),
        op_stream("identity", lambda r: {"t": random_type(src, r, max_n + 2)}),
        lambda v: (push(phi, O.identity_op(src, v["t"])), O.identity_op(tgt, v["t"]))))

    def ra_case(rng):
        f = top(rng)
        return {"f": f, "tau": Permutation(tuple(rng.sample(range(1, f.arity + 1), f.arity)))}

    reports.append(_run_cases(
        LawReport("operad-right-action", name, "random", seed), op_stream("right-action", ra_case),
        lambda v: (push(phi, O.right_action(v["f"], v["tau"])),
                   O.right_action(push(phi, v["f"]), v["tau"]))))
    return reports


__all__ = [
    "LawReport", "reports_to_jsonl", "MODEL_LAWS", "check_model", "check_operad",
    "check_algebra", "check_graphic", "check_morphism", "compose_via_category",
    "right_action_via_category", "enumerate_networks", "enumerate_permutations",
    "random_element", "random_operation", "set_partitions", "safety_violation",
    "oracle_block_permutation", "oracle_block_swap", "oracle_perm_sum", "oracle_perm_compose",
]
