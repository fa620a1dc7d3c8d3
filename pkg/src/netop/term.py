"""A small s-expression language for assembling networks out of operations.

::

    term   := netlit | "(" "compose" opspec term* ")"
    opspec := "(" "op" "(" type* "->" type ")" perm netlit ")"
    perm   := "id" | "(" "perm" nat* ")"
    netlit := "(" "net" model type body extra* ")"
    body   := "{" [item ("," item)*] "}" | netlit+          ; netlit+ for tensor models
    item   := nat (sep nat)* [":" value]                    ; sep is "-", ">" or "<"
    extra  := "(" "at" attr* ")" | "(" "ports" nat* ")"
    type   := nat | word | "~"                              ; "~" is the empty color word
    word   := symbol ("," symbol)*

How an item reads depends on the model: ``i-j`` for undirected edges,
``i>j`` for directed ones, ``:m`` for a multiplicity or label, chains
``1-2-3`` for hyperedges and partition blocks, ``s>t:k`` / ``s<t:k`` for
arcs from place ``s`` into transition ``t`` and back out, and ``i-j`` pairs
kept in order for attempt sequences.  ``;`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

from .algebra import (ATTEMPTS, AttemptSequence, AttributeAlgebra, Attributed,
                      DegreeLimitedAlgebra,
                      PortedNetwork, algebra_from_id)
from .colored import Colored, ColoredPermutation, ColorWord, PetriModel, PetriNet
from .errors import NetopError, TermError
from .netmodel import (SG, DirectedGraphModel, GammaModel, HypergraphModel, MultigraphModel,
                       PartitionModel, SimpleGraphModel, TensorModel)
from .networks import (DirectedGraph, EdgeLabeling, Hypergraph, Multigraph, Partition,
                       SimpleGraph)
from .operad import Operation, compose, identity_op, make_operation
from .perm import Permutation
from .serialize import resolve_model

# -- syntax tree -------------------------------------------------------------


@dataclass(frozen=True)
class NetLit:
    """A literal network, optionally with vertex attributes or port capacities."""

    model: str
    net: Any
    attrs: tuple | None = None
    ports: tuple | None = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class OpSpec:
    inputs: tuple
    output: Any
    perm: tuple | None
    net: NetLit
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Compose:
    op: OpSpec
    children: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Term = NetLit | Compose


# -- tokens ------------------------------------------------------------------

_TOKENS = re.compile(r"""
    (?P<ws>\s+|;[^\n]*)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<lbrace>\{)
  | (?P<rbrace>\})
  | (?P<arrow>->)
  | (?P<num>\d+(?:/\d+|\.\d+)?)
  | (?P<str>"[^"\n]*")
  | (?P<sym>[A-Za-z_][A-Za-z0-9_]*(?:[:*.+\-][A-Za-z0-9_]+)*)
  | (?P<punct>[,:<>~-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise TermError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        else:
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def fail(self, message: str, tok: Token | None = None) -> TermError:
        tok = tok or self.tok
        return TermError(message, tok.line, tok.column)

    def take(self, kind: str, what: str | None = None) -> Token:
        tok = self.tok
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.fail(f"expected {what or repr(kind)}, found {found}")
        self.i += 1
        return tok

    def keyword(self, word: str) -> Token:
        tok = self.tok
        if tok.kind != "sym" or tok.text != word:
            raise self.fail(f"expected {word!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def at_keyword(self, word: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind == "sym" and tok.text == word

    # grammar ---------------------------------------------------------------

    def term(self) -> Term:
        start = self.tok
        if self.tok.kind == "lparen" and self.at_keyword("compose", 1):
            self.take("lparen")
            self.keyword("compose")
            op = self.opspec()
            children = []
            while self.tok.kind != "rparen":
                children.append(self.term())
            self.take("rparen", "')'")
            return Compose(op, tuple(children), start.line, start.column)
        if self.tok.kind == "lparen" and self.at_keyword("net", 1):
            return self.netlit()
        raise self.fail("expected '(compose' or '(net'")

    def opspec(self) -> OpSpec:
        start = self.take("lparen", "'(op'")
        self.keyword("op")
        self.take("lparen", "'(' opening a profile")
        inputs = []
        while self.tok.kind != "arrow":
            if self.tok.kind == "eof" or self.tok.kind == "rparen":
                raise self.fail("expected '->' in profile")
            inputs.append(self.type_())
        self.take("arrow")
        output = self.type_()
        self.take("rparen", "')' closing a profile")
        perm = self.perm()
        net = self.netlit()
        self.take("rparen", "')' closing an op")
        return OpSpec(tuple(inputs), output, perm, net, start.line, start.column)

    def perm(self) -> tuple | None:
        if self.at_keyword("id"):
            self.i += 1
            return None
        self.take("lparen", "'id' or '(perm'")
        self.keyword("perm")
        images = []
        while self.tok.kind == "num":
            images.append(self.nat())
        self.take("rparen", "')' closing a permutation")
        return tuple(images)

    def nat(self) -> int:
        tok = self.take("num", "a natural number")
        if not tok.text.isdigit():
            raise self.fail(f"expected a natural number, found {tok.text!r}", tok)
        return int(tok.text)

    def type_(self) -> Any:
        tok = self.tok
        if tok.kind == "num":
            return self.nat()
        if tok.kind == "~":
            self.i += 1
            return ColorWord(())
        colors = [self.take("sym", "a vertex count or color word").text]
        while self.tok.kind == ",":
            self.i += 1
            colors.append(self.take("sym", "a color").text)
        return ColorWord(tuple(colors))

    def model_id(self) -> tuple[str, Any]:
        tok = self.tok
        if tok.kind == "str":
            ident = tok.text[1:-1]
        elif tok.kind == "sym":
            ident = tok.text
        else:
            raise self.fail("expected a model identifier")
        self.i += 1
        try:
            return ident, resolve_model(ident)
        except (NetopError, ValueError, OSError) as exc:
            raise self.fail(str(exc), tok) from exc

    def netlit(self) -> NetLit:
        start = self.take("lparen", "'(net'")
        self.keyword("net")
        ident, model = self.model_id()
        type_tok = self.tok
        t = self.type_()
        if isinstance(model, TensorModel):
            factors = []
            while self.tok.kind == "lparen" and self.at_keyword("net", 1):
                factors.append(self.netlit())
            net = self._build(lambda: _tensor_net(model, t, factors), type_tok)
        else:
            body_tok = self.take("lbrace", "'{'")
            items = []
            if self.tok.kind != "rbrace":
                items.append(self.item())
                while self.tok.kind == ",":
                    self.i += 1
                    items.append(self.item())
            self.take("rbrace", "'}' or ','")
            net = self._build(lambda: build_network(model, t, items), body_tok)
        attrs = ports = None
        while self.tok.kind == "lparen":
            if self.at_keyword("at", 1) and attrs is None:
                self.i += 2
                attrs = []
                while self.tok.kind != "rparen":
                    attrs.append(self.attr())
                self.take("rparen")
                attrs = tuple(attrs)
            elif self.at_keyword("ports", 1) and ports is None:
                self.i += 2
                ports = []
                while self.tok.kind == "num":
                    ports.append(self.nat())
                self.take("rparen", "')' closing ports")
                ports = tuple(ports)
            else:
                raise self.fail("expected '(at' or '(ports'")
        self.take("rparen", "')' closing a network")
        return NetLit(ident, net, attrs, ports, start.line, start.column)

    def _build(self, thunk, tok: Token) -> Any:
        try:
            return thunk()
        except (NetopError, ValueError, TypeError) as exc:
            raise self.fail(str(exc), tok) from exc

    def item(self) -> tuple[tuple[int, ...], str, str | None, Token]:
        tok = self.tok
        vertices = [self.nat()]
        sep = ""
        while self.tok.kind in ("-", ">", "<"):
            if sep and self.tok.kind != sep:
                raise self.fail("mixed separators in one item")
            sep = self.take(self.tok.kind).kind
            vertices.append(self.nat())
        value = None
        if self.tok.kind == ":":
            self.i += 1
            if self.tok.kind not in ("num", "sym", "str"):
                raise self.fail("expected a value after ':'")
            value = self.tok.text.strip('"')
            self.i += 1
        return tuple(vertices), sep, value, tok

    def signed(self) -> Fraction:
        negative = self.tok.kind == "-"
        if negative:
            self.i += 1
        tok = self.take("num", "a number")
        value = Fraction(tok.text)
        return -value if negative else value

    def attr(self) -> Any:
        tok = self.tok
        if tok.kind == "lparen":
            self.i += 1
            x, y = self.signed(), self.signed()
            self.take("rparen", "')' closing a point")
            return (x, y)
        if tok.kind in ("sym", "str"):
            self.i += 1
            return tok.text.strip('"') if tok.kind == "str" else tok.text
        if tok.kind in ("num", "-"):
            return self.signed()
        raise self.fail("expected an attribute")


def parse_term(text: str) -> Term:
    """Parse one term; raises :class:`TermError` carrying line and column."""
    parser = _Parser(text)
    term = parser.term()
    if parser.tok.kind != "eof":
        raise parser.fail(f"unexpected {parser.tok.text!r} after the term")
    return term


# -- literal bodies ----------------------------------------------------------

def _pairs(items, seps: str, model_name: str) -> Iterator[tuple[tuple[int, int], str | None]]:
    for vertices, sep, value, _ in items:
        if len(vertices) != 2 or sep not in seps:
            shown = " or ".join(f"i{s}j" for s in seps)
            raise ValueError(f"{model_name} items are written {shown}")
        yield vertices, value


def _no_values(items, model_name: str) -> None:
    if any(value is not None for _, _, value, _ in items):
        raise ValueError(f"{model_name} items carry no ':' value")


def _unique(keys: list, what: str) -> None:
    seen = set()
    for k in keys:
        if k in seen:
            raise ValueError(f"{what} {k} listed twice")
        seen.add(k)


def build_network(model, t: Any, items: list) -> Any:
    """Network of ``model`` at type ``t`` from parsed body items."""
    name = model.name
    if isinstance(model, PetriModel):
        if not isinstance(t, ColorWord):
            raise ValueError("petri networks are typed by color words")
        model.check_word(t)
        m, n = t.count("p"), t.count("t")
        mats = {">": [[0] * n for _ in range(m)], "<": [[0] * n for _ in range(m)]}
        for vertices, sep, value, _ in items:
            if len(vertices) != 2 or sep not in "><" or not sep:
                raise ValueError("petri arcs are written s>t:k (into a transition) "
                                 "or s<t:k (out of one)")
            s, tr = vertices
            if not (1 <= s <= m and 1 <= tr <= n):
                raise ValueError(f"arc {s}{sep}{tr} names a place or transition out of range")
            if mats[sep][s - 1][tr - 1]:
                raise ValueError(f"arc {s}{sep}{tr} listed twice")
            mats[sep][s - 1][tr - 1] = _natural(value)
        return Colored(t, PetriNet(m, n, mats[">"], mats["<"]))
    if isinstance(t, ColorWord):
        raise ValueError(f"{name} networks are typed by vertex counts, not color words")
    if model == ATTEMPTS:
        _no_values(items, name)
        return AttemptSequence(t, tuple(v for v, _ in _pairs(items, "-", name)))
    if isinstance(model, SimpleGraphModel):
        _no_values(items, name)
        edges = [tuple(sorted(v)) for v, _ in _pairs(items, "-", name)]
        _unique(edges, "edge")
        return SimpleGraph(t, frozenset(edges))
    if isinstance(model, DirectedGraphModel):
        _no_values(items, name)
        edges = [v for v, _ in _pairs(items, ">", name)]
        _unique(edges, "edge")
        return DirectedGraph(t, frozenset(edges))
    if isinstance(model, MultigraphModel):
        sep = ">" if model.directed else "-"
        mult = [(v if model.directed else tuple(sorted(v)), _natural(value))
                for v, value in _pairs(items, sep, name)]
        _unique([e for e, _ in mult], "edge")
        return model._type(t, tuple(mult))
    if isinstance(model, GammaModel):
        labels = [(tuple(sorted(v)), model.monoid.parse_element(value or "1"))
                  for v, value in _pairs(items, "-", name)]
        _unique([e for e, _ in labels], "edge")
        return EdgeLabeling(t, model.monoid, tuple(labels))
    if isinstance(model, (HypergraphModel, PartitionModel)):
        _no_values(items, name)
        if any(sep not in ("", "-") for _, sep, _, _ in items):
            raise ValueError(f"{name} items are written 1-2-3")
        groups = [tuple(sorted(v)) for v, _, _, _ in items]
        _unique(groups, "group")
        if isinstance(model, HypergraphModel):
            return Hypergraph(t, frozenset(groups))
        listed = {v for g in groups for v in g}
        singles = [(v,) for v in range(1, t + 1) if v not in listed]
        return Partition(t, frozenset(groups + singles))
    raise ValueError(f"no literal syntax for {name}")


def _natural(value: str | None) -> int:
    if value is None:
        return 1
    if not value.isdigit():
        raise ValueError(f"multiplicity {value!r} is not a natural number")
    return int(value)


def _tensor_net(model: TensorModel, t: Any, factors: list[NetLit]) -> tuple:
    if len(factors) != len(model.factors):
        raise ValueError(f"{model.name} needs {len(model.factors)} factor networks, "
                         f"got {len(factors)}")
    for lit, f in zip(factors, model.factors):
        if resolve_model(lit.model) != f:
            raise ValueError(f"factor {lit.model} where {f.name} was expected")
        if f.arity(lit.net) != t:
            raise ValueError(f"factor of type {f.arity(lit.net)} inside a tensor of type {t}")
    return tuple(lit.net for lit in factors)


# -- printing ----------------------------------------------------------------

def format_type(t: Any) -> str:
    if isinstance(t, ColorWord):
        return str(t) if len(t) else "~"
    return str(t)


def _format_number(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _format_attr(a: Any) -> str:
    if isinstance(a, tuple):
        return "(" + " ".join(_format_number(Fraction(c)) for c in a) + ")"
    if isinstance(a, (int, Fraction)):
        return _format_number(Fraction(a))
    text = str(a)
    return text if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", text) else f'"{text}"'


def network_body(model, net: Any) -> str:
    """The ``{...}`` body (or factor list) that :func:`build_network` reads back."""
    if isinstance(model, TensorModel):
        return " ".join(format_netlit(NetLit(f.name, x)) for f, x in zip(model.factors, net))
    if isinstance(net, Colored):
        p = net.net
        arcs = [f"{s + 1}>{t + 1}:{k}" for s, row in enumerate(p.input)
                for t, k in enumerate(row) if k]
        arcs += [f"{s + 1}<{t + 1}:{k}" for s, row in enumerate(p.output)
                 for t, k in enumerate(row) if k]
        items = arcs
    elif isinstance(net, AttemptSequence):
        items = [f"{i}-{j}" for i, j in net.attempts]
    elif isinstance(net, SimpleGraph):
        items = [f"{i}-{j}" for i, j in net.sorted_edges()]
    elif isinstance(net, DirectedGraph):
        items = [f"{i}>{j}" for i, j in net.sorted_edges()]
    elif isinstance(net, Multigraph):
        sep = ">" if net.directed else "-"
        items = [f"{i}{sep}{j}:{m}" for (i, j), m in net.mult]
    elif isinstance(net, EdgeLabeling):
        items = [f"{i}-{j}:{net.monoid.format(v)}" for (i, j), v in net.labels]
    elif isinstance(net, Hypergraph):
        items = ["-".join(map(str, h)) for h in net.sorted_hyperedges()]
    elif isinstance(net, Partition):
        items = ["-".join(map(str, b)) for b in net.sorted_blocks() if len(b) > 1]
    else:
        raise ValueError(f"no literal syntax for {net!r}")
    return "{" + ",".join(items) + "}"


def format_netlit(lit: NetLit) -> str:
    model = resolve_model(lit.model)
    out = f"(net {lit.model} {format_type(model.arity(lit.net))} {network_body(model, lit.net)}"
    if lit.attrs is not None:
        out += " (at" + "".join(" " + _format_attr(a) for a in lit.attrs) + ")"
    if lit.ports is not None:
        out += " (ports" + "".join(f" {c}" for c in lit.ports) + ")"
    return out + ")"


def format_opspec(op: OpSpec) -> str:
    profile = " ".join([format_type(t) for t in op.inputs] + ["->", format_type(op.output)])
    perm = "id" if op.perm is None else "(perm" + "".join(f" {i}" for i in op.perm) + ")"
    return f"(op ({profile}) {perm} {format_netlit(op.net)})"


def format_term(term: Term) -> str:
    """Canonical one-line text of ``term``; :func:`parse_term` reads it back unchanged."""
    if isinstance(term, NetLit):
        return format_netlit(term)
    parts = [format_opspec(term.op)] + [format_term(c) for c in term.children]
    return "(compose " + " ".join(parts) + ")"


# -- typing ------------------------------------------------------------------

def term_models(term: Term, op_model=None) -> tuple[Any, Any]:
    """The operad model and the model of leaf literals."""
    if op_model is None:
        node = term
        op_model = resolve_model(node.op.net.model if isinstance(node, Compose) else node.model)
    return op_model, (SG if op_model == ATTEMPTS else op_model)


def operation_of(spec: OpSpec, model, path: str = "root") -> Operation:
    if resolve_model(spec.net.model) != model:
        raise TermError(f"operation over {spec.net.model} in a term over {model.name}",
                        spec.line, spec.column, path)
    try:
        perm = None if spec.perm is None else Permutation(spec.perm)
        return make_operation(model, spec.inputs, spec.output, perm, spec.net.net)
    except (NetopError, ValueError) as exc:
        raise TermError(str(exc), spec.line, spec.column, path) from exc


def typecheck(term: Term, op_model=None) -> Any:
    """Check arities and types throughout ``term``; returns its output type."""
    op_model, leaf_model = term_models(term, op_model)
    return _typecheck(term, op_model, leaf_model, "root")


def _typecheck(term: Term, op_model, leaf_model, path: str) -> Any:
    if isinstance(term, NetLit):
        if resolve_model(term.model) != leaf_model:
            raise TermError(f"literal over {term.model} where {leaf_model.name} was expected",
                            term.line, term.column, path)
        return leaf_model.arity(term.net)
    op = operation_of(term.op, op_model, path)
    if len(term.children) != op.arity:
        raise TermError(f"operation with {op.arity} inputs applied to {len(term.children)} terms",
                        term.line, term.column, path)
    for slot, (expected, child) in enumerate(zip(op.inputs, term.children), start=1):
        got = _typecheck(child, op_model, leaf_model, f"{path}/{slot}")
        if got != expected:
            raise TermError(f"input {slot} expects type {format_type(expected)}, "
                            f"got {format_type(got)}", child.line, child.column,
                            f"{path}/{slot}")
    return op.output


# -- evaluation --------------------------------------------------------------

@dataclass
class Config:
    """What ``eval`` evaluates against: a model id, an algebra id and its parameters."""

    model: str | None = None
    algebra: str = "canonical"
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build_algebra(self):
        model = None if self.model is None else resolve_model(self.model)
        if self.algebra == "degree" and model == SG:
            model = ATTEMPTS
        if model is None and self.algebra in ("canonical", "attributes"):
            raise ValueError(f"the {self.algebra} algebra needs a model")
        return algebra_from_id(self.algebra, model, self.params)


def leaf_element(algebra, lit: NetLit, path: str = "root") -> Any:
    def fail(message: str) -> TermError:
        return TermError(message, lit.line, lit.column, path)

    if isinstance(algebra, DegreeLimitedAlgebra):
        if lit.ports is None:
            raise fail("the degree-limited algebra needs '(ports ...)' on every literal")
        try:
            return PortedNetwork(lit.net, lit.ports)
        except (NetopError, ValueError) as exc:
            raise fail(str(exc)) from exc
    if isinstance(algebra, AttributeAlgebra):
        if lit.attrs is None:
            raise fail(f"the {algebra.name} algebra needs '(at ...)' on every literal")
        x = Attributed(lit.net, lit.attrs)
    else:
        x = lit.net
    if not algebra.contains(x):
        raise fail(f"literal is not an element of the {algebra.name} algebra")
    return x


def eval_term(term: Term, cfg: Config | Any) -> Any:
    """Evaluate bottom-up; ``cfg`` is a :class:`Config` or an algebra object."""
    algebra = cfg.build_algebra() if isinstance(cfg, Config) else cfg
    typecheck(term, algebra.model)
    return _eval(term, algebra, "root")


def _eval(term: Term, algebra, path: str) -> Any:
    if isinstance(term, NetLit):
        return leaf_element(algebra, term, path)
    op = operation_of(term.op, algebra.model, path)
    items = [_eval(c, algebra, f"{path}/{i}") for i, c in enumerate(term.children, start=1)]
    try:
        return algebra.act(op, items)
    except (NetopError, ValueError) as exc:
        raise TermError(str(exc), term.line, term.column, path) from exc


# -- rewriting ---------------------------------------------------------------

def opspec_of(op: Operation) -> OpSpec:
    raw = op.perm.perm if isinstance(op.perm, ColoredPermutation) else op.perm
    return OpSpec(op.inputs, op.output, raw.images, NetLit(op.model.name, op.net))


def flatten(term: Term, op_model=None) -> Term:
    """Merge the root operation with its children's operations (one step).

    Leaf children are kept and fed through an identity operation, so the
    result evaluates to the same element in every algebra.
    """
    if isinstance(term, NetLit):
        return term
    op_model, leaf_model = term_models(term, op_model)
    f = operation_of(term.op, op_model)
    inner, children = [], []
    for child in term.children:
        if isinstance(child, Compose):
            inner.append(operation_of(child.op, op_model))
            children.extend(child.children)
        else:
            inner.append(identity_op(op_model, leaf_model.arity(child.net)))
            children.append(child)
    return Compose(opspec_of(compose(f, inner)), tuple(children))


__all__ = [
    "NetLit", "OpSpec", "Compose", "Term", "Token", "tokenize", "parse_term", "format_term",
    "format_netlit", "format_type", "build_network", "network_body", "typecheck",
    "operation_of", "term_models", "Config", "eval_term", "leaf_element", "flatten", "opspec_of",
]
