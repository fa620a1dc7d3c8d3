"""Deliberately broken variants, used to show that each checker can fail.

* :class:`BrokenOverlayModel` overlays multiplicities non-associatively.
* :func:`compose_without_perm` forgets to move the inner networks by the
  outer permutation.
* :class:`UnclampedBoundedAlgebra` skips the clamp that enforces edge bounds.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import BoundedAlgebra, EdgeBound, act_attributes
from .netmodel import MultigraphModel, djunion_all
from .operad import Operation, Profile, sum_perms


class BrokenOverlayModel(MultigraphModel):
    """Additive multigraphs, except that two nonzero multiplicities give ``a + 2b``.

    Units, the symmetric action and disjoint union are untouched, so only
    associativity of overlay breaks.
    """

    def __init__(self):
        super().__init__("sum", False)

    @property
    def name(self) -> str:
        return "broken-overlay"

    def _overlay(self, g, h):
        a, b = g.as_dict(), h.as_dict()
        merged = []
        for e in a.keys() | b.keys():
            x, y = a.get(e, 0), b.get(e, 0)
            merged.append((e, x + 2 * y if x and y else x + y))
        return self._type(g.n, tuple(merged))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BrokenOverlayModel)

    def __hash__(self) -> int:
        return hash("broken-overlay")


def compose_without_perm(f: Operation, gs: Sequence[Operation]) -> Operation:
    """Operad composition that overlays ``h_1 ⊔ ... ⊔ h_k`` without permuting it."""
    model = f.model
    perm = f.perm * sum_perms(model, [g.perm for g in gs])
    net = model.overlay(f.net, djunion_all(model, [g.net for g in gs]))
    return Operation(model, Profile(tuple(t for g in gs for t in g.inputs), f.output), perm, net)


class UnclampedBoundedAlgebra(BoundedAlgebra):
    """Bounded multigraphs whose action forgets to clamp."""

    def __init__(self, bound: EdgeBound):
        super().__init__(bound)
        self.name = f"unclamped[{bound.name}]"

    def contains(self, x):
        return super(BoundedAlgebra, self).contains(x)

    def _act(self, op, items):
        return act_attributes(op, items)


MUTANTS = ("broken-overlay", "drop-perm", "unclamped-bound")

__all__ = ["BrokenOverlayModel", "compose_without_perm", "UnclampedBoundedAlgebra", "MUTANTS"]
