"""Canonical JSON for networks, operations and algebra elements.

Encoders return plain ``dict``/``list`` trees with 1-based vertices and
lexicographically sorted arrays; :func:`dumps` renders them with sorted keys,
so equal values always produce identical bytes.  Rational coordinates are
written as integers when whole and as ``"p/q"`` strings otherwise.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import ATTEMPTS, AttemptSequence, Attributed, PortedNetwork
from .colored import Colored, ColoredPermutation, ColorWord, PetriModel, PetriNet
from .netmodel import (SG, GammaModel, HypergraphModel, MultigraphModel, PartitionModel,
                       TensorModel, model_from_id)
from .networks import (DirectedGraph, EdgeLabeling, Hypergraph, Multigraph, Partition,
                       SimpleGraph)
from .operad import Operation, make_operation
from .perm import Permutation


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def loads(text: str) -> Any:
    """Parse JSON, reading decimal literals as exact fractions."""
    return json.loads(text, parse_float=Fraction)


def resolve_model(ident: str):
    return ATTEMPTS if ident == "attempts" else model_from_id(ident)


# -- numbers -----------------------------------------------------------------

def encode_number(x: Fraction | int) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decode_number(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def encode_attr(a: Any) -> Any:
    if isinstance(a, tuple):
        return [encode_number(c) for c in a]
    return a


def decode_attr(a: Any) -> Any:
    if isinstance(a, list):
        return tuple(decode_number(c) for c in a)
    return a


# -- networks ----------------------------------------------------------------

def encode_network(model, g: Any) -> dict:
    """Canonical JSON object for a network ``g`` of ``model``."""
    name = model.name
    if isinstance(g, Colored):
        if not isinstance(model, PetriModel):
            raise ValueError(f"no JSON form for networks of {name}")
        p = g.net
        return {"model": name, "word": str(g.word), "places": p.places,
                "transitions": p.transitions, "input": [list(r) for r in p.input],
                "output": [list(r) for r in p.output]}
    if isinstance(model, TensorModel):
        return {"model": name, "n": model.arity(g),
                "factors": [encode_network(f, x) for f, x in zip(model.factors, g)]}
    if isinstance(g, AttemptSequence):
        return {"model": name, "n": g.n, "attempts": [list(e) for e in g.attempts]}
    if isinstance(g, (SimpleGraph, DirectedGraph)):
        return {"model": name, "n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if isinstance(g, Multigraph):
        return {"model": name, "n": g.n, "edges": [[i, j, m] for (i, j), m in g.mult]}
    if isinstance(g, Hypergraph):
        return {"model": name, "n": g.n, "hyperedges": [list(h) for h in g.sorted_hyperedges()]}
    if isinstance(g, Partition):
        return {"model": name, "n": g.n, "blocks": [list(b) for b in g.sorted_blocks()]}
    if isinstance(g, EdgeLabeling):
        return {"model": name, "n": g.n,
                "labels": [[i, j, g.monoid.format(v)] for (i, j), v in g.labels]}
    raise ValueError(f"no JSON form for {g!r}")


def decode_network(data: dict, model=None) -> tuple[Any, Any]:
    """Inverse of :func:`encode_network`; returns ``(model, network)``."""
    model = model or resolve_model(data["model"])
    if isinstance(model, PetriModel):
        word = ColorWord.parse(data.get("word", ",".join(["p"] * data["places"]
                                                           + ["t"] * data["transitions"])))
        net = PetriNet(data["places"], data["transitions"], data["input"], data["output"])
        return model, model.check(Colored(word, net))
    n = data["n"]
    if isinstance(model, TensorModel):
        parts = tuple(decode_network(d, f)[1] for d, f in zip(data["factors"], model.factors))
        return model, model.check(parts)
    if model == ATTEMPTS:
        return model, AttemptSequence(n, tuple(tuple(e) for e in data.get("attempts", [])))
    if isinstance(model, MultigraphModel):
        net = model._type(n, tuple(((i, j), m) for i, j, m in data.get("edges", [])))
    elif isinstance(model, HypergraphModel):
        net = Hypergraph(n, frozenset(tuple(h) for h in data.get("hyperedges", [])))
    elif isinstance(model, PartitionModel):
        blocks = data.get("blocks")
        net = (model.unit(n) if blocks is None
               else Partition(n, frozenset(tuple(b) for b in blocks)))
    elif isinstance(model, GammaModel):
        m = model.monoid
        net = EdgeLabeling(n, m, tuple(((i, j), m.parse_element(str(v)))
                                       for i, j, v in data.get("labels", [])))
    else:
        net = type(model.unit(0))(n, frozenset(tuple(e) for e in data.get("edges", [])))
    return model, model.check(net)


# -- algebra elements --------------------------------------------------------

def encode_element(model, x: Any) -> dict:
    if isinstance(x, Attributed):
        out = encode_network(model, x.net)
        out["attrs"] = [encode_attr(a) for a in x.attrs]
        return out
    if isinstance(x, PortedNetwork):
        out = encode_network(SG, x.graph)
        out["ports"] = list(x.ports)
        return out
    return encode_network(model, x)


def decode_element(data: dict, model=None) -> tuple[Any, Any]:
    model, net = decode_network(data, model)
    if "ports" in data:
        return model, PortedNetwork(net, tuple(data["ports"]))
    if "attrs" in data:
        return model, Attributed(net, tuple(decode_attr(a) for a in data["attrs"]))
    return model, net


# -- operations --------------------------------------------------------------

def _encode_type(t: Any) -> Any:
    return str(t) if isinstance(t, ColorWord) else t


def _decode_type(model, t: Any) -> Any:
    return ColorWord.parse(t) if model.colored else t


def encode_operation(op: Operation) -> dict:
    raw = op.perm.perm if isinstance(op.perm, ColoredPermutation) else op.perm
    return {"profile": {"in": [_encode_type(t) for t in op.inputs],
                        "out": _encode_type(op.output)},
            "perm": list(raw.images), "net": encode_network(op.model, op.net)}


def decode_operation(data: dict) -> Operation:
    model, net = decode_network(data["net"])
    inputs = [_decode_type(model, t) for t in data["profile"]["in"]]
    output = _decode_type(model, data["profile"]["out"])
    return make_operation(model, inputs, output, Permutation(tuple(data["perm"])), net)


def dumps_element(model, x: Any) -> str:
    return dumps(encode_element(model, x))


def dumps_operation(op: Operation) -> str:
    return dumps(encode_operation(op))


__all__ = [
    "dumps", "loads", "encode_network", "decode_network", "encode_element", "decode_element",
    "encode_operation", "decode_operation", "dumps_element", "dumps_operation",
    "encode_number", "decode_number", "resolve_model",
]
