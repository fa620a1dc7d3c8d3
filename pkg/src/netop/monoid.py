"""Monoids that label edges, and homomorphisms between them.

The catalog covers the Boolean monoid (``or``), the naturals under ``+`` and
under ``max``, the truncated monoids ``B_k`` and finite monoids given by an
explicit multiplication table.  Naturals are Python ints, so there is no
overflow bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from .errors import CarrierError


def _is_nat(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


@dataclass(frozen=True, eq=False)
class Monoid:
    """A monoid with a membership test and text codecs for its elements.

    Equality and hashing go by ``name``; two monoids with the same catalog
    identifier are the same monoid.
    """

    name: str
    op: Callable[[Any, Any], Any]
    unit: Any
    contains: Callable[[Any], bool]
    commutative: bool = False
    idempotent: bool = False
    elements: tuple | None = None
    format: Callable[[Any], str] = str
    parse: Callable[[str], Any] = field(default=int)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monoid) and other.name == self.name

    def __hash__(self) -> int:
        return hash(("Monoid", self.name))

    def __repr__(self) -> str:
        return f"Monoid({self.name!r})"

    def check(self, x: Any) -> Any:
        if not self.contains(x):
            raise CarrierError(f"{x!r} is not an element of {self.name}")
        return x

    def combine(self, x: Any, y: Any) -> Any:
        return self.op(self.check(x), self.check(y))

    def parse_element(self, text: str) -> Any:
        try:
            value = self.parse(text)
        except (TypeError, ValueError) as exc:
            raise CarrierError(f"cannot read {text!r} as an element of {self.name}") from exc
        return self.check(value)


def combine(monoid: Monoid, x: Any, y: Any) -> Any:
    return monoid.combine(x, y)


def _parse_bool(text: str) -> bool:
    text = str(text).strip().upper()
    if text in ("T", "TRUE", "1"):
        return True
    if text in ("F", "FALSE", "0"):
        return False
    raise ValueError(text)


BOOL = Monoid(
    name="bool",
    op=lambda x, y: x or y,
    unit=False,
    contains=lambda x: isinstance(x, bool),
    commutative=True,
    idempotent=True,
    elements=(False, True),
    format=lambda x: "T" if x else "F",
    parse=_parse_bool,
)

NAT_PLUS = Monoid(
    name="nat-plus",
    op=lambda x, y: x + y,
    unit=0,
    contains=_is_nat,
    commutative=True,
)

NAT_MAX = Monoid(
    name="nat-max",
    op=max,
    unit=0,
    contains=_is_nat,
    commutative=True,
    idempotent=True,
)


def bk(k: int) -> Monoid:
    """``{0..k}`` under addition truncated at ``k``."""
    if not _is_nat(k):
        raise ValueError(f"B_k needs a natural k, got {k!r}")
    return Monoid(
        name=f"bk:{k}",
        op=lambda x, y: min(x + y, k),
        unit=0,
        contains=lambda x: _is_nat(x) and x <= k,
        commutative=True,
        idempotent=k <= 1,
        elements=tuple(range(k + 1)),
    )


def table_monoid(name: str, elements: Sequence[str], table: Sequence[Sequence[str]],
                 unit: str) -> Monoid:
    """A finite monoid from its multiplication table; ``table[i][j] = e_i * e_j``.

    Unit and associativity are verified exhaustively before returning.
    """
    elements = tuple(str(e) for e in elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("duplicate elements in monoid table")
    if unit not in index:
        raise ValueError(f"unit {unit!r} is not among the elements")
    if len(table) != len(elements) or any(len(row) != len(elements) for row in table):
        raise ValueError("monoid table must be square over the element list")
    products = {}
    for x, row in zip(elements, table):
        for y, z in zip(elements, row):
            if str(z) not in index:
                raise ValueError(f"table entry {z!r} is not an element")
            products[x, y] = str(z)
    for x in elements:
        if products[unit, x] != x or products[x, unit] != x:
            raise ValueError(f"{unit!r} is not a two-sided unit (fails at {x!r})")
    for x in elements:
        for y in elements:
            for z in elements:
                if products[products[x, y], z] != products[x, products[y, z]]:
                    raise ValueError(f"table is not associative at ({x}, {y}, {z})")
    return Monoid(
        name=f"table:{name}",
        op=lambda x, y: products[x, y],
        unit=unit,
        contains=lambda x: x in index,
        commutative=all(products[x, y] == products[y, x] for x in elements for y in elements),
        idempotent=all(products[x, x] == x for x in elements),
        elements=elements,
        parse=str,
    )


def load_table_monoid(path: str | Path) -> Monoid:
    """Read ``{"name", "elements", "unit", "table"}`` JSON from ``path``."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return table_monoid(data.get("name", Path(path).stem), data["elements"],
                        data["table"], data["unit"])


def monoid_from_id(ident: str) -> Monoid:
    """Resolve a catalog identifier: ``bool``, ``nat-plus``, ``nat-max``, ``bk:<k>``, ``table:<file>``."""
    if ident == "bool":
        return BOOL
    if ident == "nat-plus":
        return NAT_PLUS
    if ident == "nat-max":
        return NAT_MAX
    if ident.startswith("bk:"):
        try:
            k = int(ident[3:])
        except ValueError:
            raise ValueError(f"bad B_k identifier {ident!r}") from None
        return bk(k)
    if ident.startswith("table:"):
        return load_table_monoid(ident[len("table:"):])
    raise ValueError(f"unknown monoid {ident!r}")


@dataclass(frozen=True, eq=False)
class MonoidHom:
    source: Monoid
    target: Monoid
    fn: Callable[[Any], Any]
    name: str = "hom"

    def __call__(self, x: Any) -> Any:
        return self.target.check(self.fn(self.source.check(x)))

    def then(self, other: MonoidHom) -> MonoidHom:
        """``other ∘ self``."""
        if other.source != self.target:
            raise CarrierError(f"cannot follow a hom into {self.target.name} "
                               f"by one out of {other.source.name}")
        return MonoidHom(self.source, other.target, lambda x: other.fn(self.fn(x)),
                         f"{other.name}∘{self.name}")

    def __repr__(self) -> str:
        return f"MonoidHom({self.name}: {self.source.name} -> {self.target.name})"


def hom_apply(f: MonoidHom, x: Any) -> Any:
    return f(x)


def identity_hom(monoid: Monoid) -> MonoidHom:
    return MonoidHom(monoid, monoid, lambda x: x, f"id[{monoid.name}]")


def cutoff(k: int) -> MonoidHom:
    """``(N, +) -> B_k``, ``n ↦ min(n, k)``."""
    return MonoidHom(NAT_PLUS, bk(k), lambda x: min(x, k), f"cutoff{k}")


# B_1 and the Boolean monoid are isomorphic; these two maps witness it.
BK1_TO_BOOL = MonoidHom(bk(1), BOOL, lambda x: x == 1, "bk1->bool")
BOOL_TO_BK1 = MonoidHom(BOOL, bk(1), lambda x: 1 if x else 0, "bool->bk1")
