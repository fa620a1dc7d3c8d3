"""Networks whose vertices carry colors.

Types are color words; a morphism ``w -> w'`` is a permutation that carries
each position to a position of the same color.  Colored models expose the
same ``unit / overlay / act / djunion`` interface as one-colored ones, with
elements wrapped as :class:`Colored` so they remember their word.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from . import perm as P
from .errors import ArityError, ModelMismatch
from .netmodel import ModelMorphism, NetworkModel
from .perm import Permutation


@dataclass(frozen=True)
class ColorWord:
    colors: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(self.colors))

    @classmethod
    def parse(cls, text: str) -> ColorWord:
        text = text.strip()
        return cls(tuple(c.strip() for c in text.split(",")) if text else ())

    def __len__(self) -> int:
        return len(self.colors)

    def __iter__(self):
        return iter(self.colors)

    def __getitem__(self, i: int) -> str:
        """1-based position lookup."""
        if not 1 <= i <= len(self.colors):
            raise IndexError(f"position {i} outside 1..{len(self.colors)}")
        return self.colors[i - 1]

    def __add__(self, other: ColorWord) -> ColorWord:
        return ColorWord(self.colors + other.colors)

    def count(self, c: str) -> int:
        return self.colors.count(c)

    def positions(self, c: str) -> list[int]:
        """1-based positions holding color ``c``, in order of occurrence."""
        return [i for i, x in enumerate(self.colors, start=1) if x == c]

    def recolor(self, f: Mapping[str, str] | Callable[[str], str]) -> ColorWord:
        fn = f.__getitem__ if isinstance(f, Mapping) else f
        return ColorWord(tuple(fn(c) for c in self.colors))

    def __str__(self) -> str:
        return ",".join(self.colors)

    def __repr__(self) -> str:
        return f"ColorWord({str(self)!r})"


def concat(words: Iterable[ColorWord]) -> ColorWord:
    out: tuple = ()
    for w in words:
        out += w.colors
    return ColorWord(out)


@dataclass(frozen=True)
class ColoredPermutation:
    """A color-preserving bijection ``source -> target``."""

    source: ColorWord
    target: ColorWord
    perm: Permutation

    def __post_init__(self) -> None:
        n = self.perm.n
        if len(self.source) != n or len(self.target) != n:
            raise ArityError(f"permutation of degree {n} between words of length "
                             f"{len(self.source)} and {len(self.target)}")
        for i in range(1, n + 1):
            if self.target[self.perm(i)] != self.source[i]:
                raise ValueError(f"position {i} ({self.source[i]}) is sent to "
                                 f"position {self.perm(i)} ({self.target[self.perm(i)]})")

    @property
    def n(self) -> int:
        return self.perm.n

    @classmethod
    def identity(cls, w: ColorWord) -> ColoredPermutation:
        return cls(w, w, P.identity(len(w)))

    def compose(self, other: ColoredPermutation) -> ColoredPermutation:
        """``self ∘ other``; ``other`` is applied first."""
        if other.target != self.source:
            raise ArityError(f"cannot compose: {other.target} is not {self.source}")
        return ColoredPermutation(other.source, self.target, P.compose(self.perm, other.perm))

    def __mul__(self, other: ColoredPermutation) -> ColoredPermutation:
        return self.compose(other)

    def inverse(self) -> ColoredPermutation:
        return ColoredPermutation(self.target, self.source, self.perm.inverse())

    def __repr__(self) -> str:
        return f"ColoredPermutation({self.source} -> {self.target}, {self.perm})"


def colored_block_sum(perms: Sequence[ColoredPermutation]) -> ColoredPermutation:
    return ColoredPermutation(concat(p.source for p in perms), concat(p.target for p in perms),
                              P.block_sum_all(p.perm for p in perms))


def colored_block_swap(v: ColorWord, w: ColorWord) -> ColoredPermutation:
    return ColoredPermutation(v + w, w + v, P.block_swap(len(v), len(w)))


def colored_block_induced(tau: Permutation, words: Sequence[ColorWord]) -> ColoredPermutation:
    """Block permutation moving block ``words[i]`` of ``concat(words)`` to slot ``tau(i)``."""
    base = P.block_induced(tau, [len(w) for w in words])
    inverse = tau.inverse()
    return ColoredPermutation(concat(words),
                              concat(words[inverse(s) - 1] for s in range(1, tau.n + 1)), base)


def restrict(cp: ColoredPermutation, color: str) -> Permutation:
    """The permutation of the ``color``-vertices, numbered by order of occurrence."""
    src, tgt = cp.source.positions(color), cp.target.positions(color)
    rank = {p: j for j, p in enumerate(tgt, start=1)}
    return Permutation(tuple(rank[cp.perm(p)] for p in src))


@dataclass(frozen=True)
class Colored:
    """A network living over the color word ``word``."""

    word: ColorWord
    net: Any

    def __repr__(self) -> str:
        return f"{self.net!r}@[{self.word}]"


class ColoredModel(ABC):
    """Same interface as :class:`~netop.netmodel.NetworkModel`, typed by color words."""

    colored = True
    empty_type = ColorWord(())

    @property
    @abstractmethod
    def name(self) -> str: ...

    @property
    @abstractmethod
    def colors(self) -> tuple: ...

    @abstractmethod
    def _contains_net(self, word: ColorWord, net: Any) -> bool: ...

    @abstractmethod
    def _unit(self, word: ColorWord) -> Any: ...

    @abstractmethod
    def _overlay(self, word: ColorWord, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def _act(self, cp: ColoredPermutation, net: Any) -> Any: ...

    @abstractmethod
    def _djunion(self, v: ColorWord, a: Any, w: ColorWord, b: Any) -> Any: ...

    def check_word(self, word: ColorWord) -> ColorWord:
        bad = [c for c in word if c not in self.colors]
        if bad:
            raise ModelMismatch(f"colors {bad} are not colors of {self.name} {list(self.colors)}")
        return word

    def contains(self, x: Any) -> bool:
        return (isinstance(x, Colored) and all(c in self.colors for c in x.word)
                and self._contains_net(x.word, x.net))

    def check(self, x: Any) -> Any:
        if not self.contains(x):
            raise ModelMismatch(f"{x!r} is not a network of model {self.name}")
        return x

    def arity(self, x: Colored) -> ColorWord:
        return x.word

    def unit(self, word: ColorWord) -> Colored:
        return Colored(word, self._unit(self.check_word(word)))

    def overlay(self, x: Colored, y: Colored) -> Colored:
        self.check(x), self.check(y)
        if x.word != y.word:
            raise ArityError(f"cannot overlay networks over {x.word} and {y.word}")
        return Colored(x.word, self._overlay(x.word, x.net, y.net))

    def act(self, cp: ColoredPermutation, x: Colored) -> Colored:
        self.check(x)
        if cp.source != x.word:
            raise ArityError(f"permutation from {cp.source} cannot act over {x.word}")
        return Colored(cp.target, self._act(cp, x.net))

    def djunion(self, x: Colored, y: Colored) -> Colored:
        self.check(x), self.check(y)
        return Colored(x.word + y.word, self._djunion(x.word, x.net, y.word, y.net))

    def __repr__(self) -> str:
        return f"<colored model {self.name}>"


class RecoloredModel(ColoredModel):
    """A one-colored model with colors attached to vertices and then ignored."""

    def __init__(self, base: NetworkModel, colors: Iterable[str]):
        self.base = base
        self._colors = tuple(colors)

    @property
    def name(self) -> str:
        return f"color[{','.join(self._colors)}]:{self.base.name}"

    @property
    def colors(self) -> tuple:
        return self._colors

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RecoloredModel) and other.base == self.base
                and other._colors == self._colors)

    def __hash__(self) -> int:
        return hash(("recolor", self.base, self._colors))

    def _contains_net(self, word, net):
        return self.base.contains(net) and self.base.arity(net) == len(word)

    def _unit(self, word):
        return self.base.unit(len(word))

    def _overlay(self, word, a, b):
        return self.base._overlay(a, b)

    def _act(self, cp, net):
        return self.base._act(cp.perm, net)

    def _djunion(self, v, a, w, b):
        return self.base._djunion(a, b)


def recolor_model(base: NetworkModel, colors: Iterable[str]) -> RecoloredModel:
    return RecoloredModel(base, colors)


class PercolorProduct(ColoredModel):
    """One model per color; vertices of color ``c`` form a network of ``models[c]``.

    The network over ``w`` is a tuple indexed by the sorted colors, whose
    ``c``-component lives on the ``c``-vertices of ``w`` numbered by order of
    occurrence.
    """

    def __init__(self, models: Mapping[str, NetworkModel]):
        self.models = dict(models)
        self._colors = tuple(sorted(self.models))

    @property
    def name(self) -> str:
        return "percolor[" + ",".join(f"{c}:{self.models[c].name}" for c in self._colors) + "]"

    @property
    def colors(self) -> tuple:
        return self._colors

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PercolorProduct) and other.models == self.models

    def __hash__(self) -> int:
        return hash(("percolor", tuple((c, self.models[c]) for c in self._colors)))

    def component(self, x: Colored, c: str) -> Any:
        return x.net[self._colors.index(c)]

    def _contains_net(self, word, net):
        return (isinstance(net, tuple) and len(net) == len(self._colors)
                and all(self.models[c].contains(g) and self.models[c].arity(g) == word.count(c)
                        for c, g in zip(self._colors, net)))

    def _unit(self, word):
        return tuple(self.models[c].unit(word.count(c)) for c in self._colors)

    def _overlay(self, word, a, b):
        return tuple(self.models[c]._overlay(x, y) for c, x, y in zip(self._colors, a, b))

    def _act(self, cp, net):
        return tuple(self.models[c]._act(restrict(cp, c), g) for c, g in zip(self._colors, net))

    def _djunion(self, v, a, w, b):
        return tuple(self.models[c]._djunion(x, y) for c, x, y in zip(self._colors, a, b))


def percolor_product(models: Mapping[str, NetworkModel]) -> PercolorProduct:
    return PercolorProduct(models)


# -- Petri nets --------------------------------------------------------------

Matrix = tuple  # tuple of row tuples


def _zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


@dataclass(frozen=True)
class PetriNet:
    """``places`` x ``transitions`` arc-count matrices ``input`` and ``output``."""

    places: int
    transitions: int
    input: Matrix = None
    output: Matrix = None

    def __post_init__(self) -> None:
        m, n = self.places, self.transitions
        for label in ("input", "output"):
            mat = getattr(self, label)
            mat = _zeros(m, n) if mat is None else tuple(tuple(row) for row in mat)
            if len(mat) != m or any(len(row) != n for row in mat):
                raise ArityError(f"{label} matrix is not {m}x{n}")
            if any(isinstance(x, bool) or not isinstance(x, int) or x < 0
                   for row in mat for x in row):
                raise ValueError(f"{label} entries must be natural numbers")
            object.__setattr__(self, label, mat)

    def __repr__(self) -> str:
        return f"petri({self.places},{self.transitions},i={self.input},o={self.output})"


def petri_overlay(p: PetriNet, q: PetriNet) -> PetriNet:
    if (p.places, p.transitions) != (q.places, q.transitions):
        raise ArityError(f"cannot overlay a {p.places}x{p.transitions} net with a "
                         f"{q.places}x{q.transitions} net")

    def add(a, b):
        return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))

    return PetriNet(p.places, p.transitions, add(p.input, q.input), add(p.output, q.output))


def petri_djunion(p: PetriNet, q: PetriNet) -> PetriNet:
    def diag(a, b):
        return (tuple(row + (0,) * q.transitions for row in a)
                + tuple((0,) * p.transitions + row for row in b))

    return PetriNet(p.places + q.places, p.transitions + q.transitions,
                    diag(p.input, q.input), diag(p.output, q.output))


def petri_act(sigma: Permutation, tau: Permutation, p: PetriNet) -> PetriNet:
    """``i'(sigma(s), tau(t)) = i(s, t)`` and likewise for ``o``."""
    if sigma.n != p.places or tau.n != p.transitions:
        raise ArityError(f"S_{sigma.n} x S_{tau.n} cannot act on a {p.places}x{p.transitions} net")

    def move(a):
        out = [[0] * p.transitions for _ in range(p.places)]
        for s, row in enumerate(a, start=1):
            for t, x in enumerate(row, start=1):
                out[sigma(s) - 1][tau(t) - 1] = x
        return out

    return PetriNet(p.places, p.transitions, move(p.input), move(p.output))


PLACE, TRANSITION = "p", "t"


class PetriModel(ColoredModel):
    """Petri nets over words in places ``p`` and transitions ``t``."""

    @property
    def name(self) -> str:
        return "petri"

    @property
    def colors(self) -> tuple:
        return (PLACE, TRANSITION)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PetriModel)

    def __hash__(self) -> int:
        return hash("petri")

    def _contains_net(self, word, net):
        return (isinstance(net, PetriNet) and net.places == word.count(PLACE)
                and net.transitions == word.count(TRANSITION))

    def _unit(self, word):
        return PetriNet(word.count(PLACE), word.count(TRANSITION))

    def _overlay(self, word, a, b):
        return petri_overlay(a, b)

    def _act(self, cp, net):
        return petri_act(restrict(cp, PLACE), restrict(cp, TRANSITION), net)

    def _djunion(self, v, a, w, b):
        return petri_djunion(a, b)


PETRI = PetriModel()


# -- changing colors ---------------------------------------------------------

class OneColored(ColoredModel):
    """A one-colored model seen as a colored model over the single color ``*``."""

    COLOR = "*"

    def __init__(self, base: NetworkModel):
        self.base = base

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def colors(self) -> tuple:
        return (self.COLOR,)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OneColored) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("one-colored", self.base))

    def _contains_net(self, word, net):
        return self.base.contains(net) and self.base.arity(net) == len(word)

    def _unit(self, word):
        return self.base.unit(len(word))

    def _overlay(self, word, a, b):
        return self.base._overlay(a, b)

    def _act(self, cp, net):
        return self.base._act(cp.perm, net)

    def _djunion(self, v, a, w, b):
        return self.base._djunion(a, b)


class PulledBackModel(ColoredModel):
    """``base ∘ f_*``: a network over ``w`` is a ``base``-network over ``f(w)``."""

    def __init__(self, f: Mapping[str, str], base: ColoredModel):
        self.f = dict(f)
        self.base = base
        missing = [c for c in self.f.values() if c not in base.colors]
        if missing:
            raise ModelMismatch(f"colors {missing} are not colors of {base.name}")

    @property
    def name(self) -> str:
        mapping = ",".join(f"{c}>{d}" for c, d in sorted(self.f.items()))
        return f"pull[{mapping}]:{self.base.name}"

    @property
    def colors(self) -> tuple:
        return tuple(sorted(self.f))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PulledBackModel) and other.f == self.f and other.base == self.base

    def __hash__(self) -> int:
        return hash(("pull", tuple(sorted(self.f.items())), self.base))

    def push(self, word: ColorWord) -> ColorWord:
        return word.recolor(self.f)

    def _contains_net(self, word, net):
        return self.base._contains_net(self.push(word), net)

    def _unit(self, word):
        return self.base._unit(self.push(word))

    def _overlay(self, word, a, b):
        return self.base._overlay(self.push(word), a, b)

    def _act(self, cp, net):
        pushed = ColoredPermutation(self.push(cp.source), self.push(cp.target), cp.perm)
        return self.base._act(pushed, net)

    def _djunion(self, v, a, w, b):
        return self.base._djunion(self.push(v), a, self.push(w), b)


@dataclass(frozen=True, eq=False)
class ColoredMorphism(ModelMorphism):
    """A morphism that also changes colors: words are pushed forward by ``color_map``."""

    color_map: Mapping[str, str] | None = None

    def push(self, word: ColorWord) -> ColorWord:
        return word if self.color_map is None else word.recolor(self.color_map)


def color_change(f: Mapping[str, str], base: ColoredModel) -> tuple[PulledBackModel, ColoredMorphism]:
    """Pull ``base`` back along ``f`` and return it with the identity-component morphism into ``base``."""
    pulled = PulledBackModel(f, base)
    morphism = ColoredMorphism(pulled, base, lambda x: Colored(pulled.push(x.word), x.net),
                               f"relabel[{pulled.name}]", color_map=dict(f))
    return pulled, morphism


def forget_colors(base: NetworkModel, colors: Iterable[str]) -> tuple[PulledBackModel, ColoredMorphism]:
    """``color_change`` along the unique map to a single color."""
    return color_change({c: OneColored.COLOR for c in colors}, OneColored(base))
