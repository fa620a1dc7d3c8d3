"""The network operad of a model.

An operation of profile ``(t_1, ..., t_k; t)`` is a pair ``(sigma, g)``: a
bijection from the concatenated input type onto ``t`` and a network of type
``t``.  Types are vertex counts for one-colored models and color words for
colored ones; the helpers at the top of the module hide the difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from . import perm as P
from .colored import (ColoredPermutation, ColorWord, colored_block_induced, colored_block_sum,
                      concat)
from .errors import ArityError, ModelMismatch, ProfileError
from .netmodel import ModelMorphism, djunion_all
from .perm import Permutation


# -- type-level helpers shared by one-colored and colored models -------------

def concat_types(model, types: Sequence[Any]) -> Any:
    return concat(types) if model.colored else sum(types)


def identity_perm(model, t: Any) -> Any:
    return ColoredPermutation.identity(t) if model.colored else P.identity(t)


def sum_perms(model, perms: Sequence[Any]) -> Any:
    return colored_block_sum(perms) if model.colored else P.block_sum_all(perms)


def induced_perm(model, tau: Permutation, types: Sequence[Any]) -> Any:
    """Block permutation sending block ``i`` of ``concat(types)`` to slot ``tau(i)``."""
    if model.colored:
        return colored_block_induced(tau, types)
    return P.block_induced(tau, types)


def perm_source(model, sigma: Any) -> Any:
    return sigma.source if model.colored else sigma.n


def perm_target(model, sigma: Any) -> Any:
    return sigma.target if model.colored else sigma.n


def _coerce_type(model, t: Any) -> Any:
    if model.colored:
        return t if isinstance(t, ColorWord) else ColorWord(tuple(t))
    if isinstance(t, bool) or not isinstance(t, int) or t < 0:
        raise ProfileError(f"{t!r} is not a vertex count")
    return t


# -- operations --------------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    inputs: tuple
    output: Any

    def __str__(self) -> str:
        return f"({' '.join(map(str, self.inputs))} -> {self.output})"


@dataclass(frozen=True)
class Operation:
    """``(perm, net)`` in the operad of ``model`` at ``profile``."""

    model: Any
    profile: Profile
    perm: Any
    net: Any

    @property
    def inputs(self) -> tuple:
        return self.profile.inputs

    @property
    def output(self) -> Any:
        return self.profile.output

    @property
    def arity(self) -> int:
        return len(self.profile.inputs)

    def __repr__(self) -> str:
        return f"Operation{self.profile}[{self.perm}, {self.net!r}]"


def make_operation(model, inputs: Sequence[Any], output: Any, perm: Any = None,
                   net: Any = None) -> Operation:
    """Validate and build an operation; ``perm=None`` means the identity, ``net=None`` the unit."""
    inputs = tuple(_coerce_type(model, t) for t in inputs)
    output = _coerce_type(model, output)
    source = concat_types(model, inputs)
    if model.colored:
        model.check_word(output)
        if sorted(source) != sorted(output):
            raise ProfileError(f"no color-preserving bijection from {source} to {output}: "
                               f"the operation set is empty")
        if perm is None:
            perm = ColoredPermutation(source, output, _matching_perm(source, output))
        elif isinstance(perm, Permutation):
            try:
                perm = ColoredPermutation(source, output, perm)
            except ValueError as exc:
                raise ProfileError(str(exc)) from exc
        elif perm.source != source or perm.target != output:
            raise ProfileError(f"permutation {perm} does not go from {source} to {output}")
    else:
        if source != output:
            raise ProfileError(f"inputs sum to {source}, not {output}: the operation set is empty")
        perm = P.identity(output) if perm is None else perm
        if perm.n != output:
            raise ArityError(f"permutation of degree {perm.n} in an operation of arity {output}")
    net = model.unit(output) if net is None else model.check(net)
    if model.arity(net) != output:
        raise ArityError(f"network of type {model.arity(net)} in an operation of type {output}")
    return Operation(model, Profile(inputs, output), perm, net)


def _matching_perm(source: ColorWord, target: ColorWord) -> Permutation:
    """The color-preserving bijection that keeps each color's occurrences in order."""
    slots: dict[str, list[int]] = {c: target.positions(c) for c in set(target)}
    used: dict[str, int] = {}
    images = []
    for c in source:
        images.append(slots[c][used.get(c, 0)])
        used[c] = used.get(c, 0) + 1
    return Permutation(tuple(images))


def identity_op(model, t: Any) -> Operation:
    t = _coerce_type(model, t)
    return Operation(model, Profile((t,), t), identity_perm(model, t), model.unit(t))


def compose(f: Operation, gs: Sequence[Operation]) -> Operation:
    """``(sigma ∘ (tau_1 + ... + tau_k), g ∪ sigma(h_1 ⊔ ... ⊔ h_k))``."""
    model = f.model
    if len(gs) != f.arity:
        raise ArityError(f"operation with {f.arity} inputs given {len(gs)} operations")
    for slot, (t, g) in enumerate(zip(f.inputs, gs), start=1):
        if g.model != model:
            raise ModelMismatch(f"slot {slot}: operation of {g.model.name}, expected {model.name}")
        if g.output != t:
            raise ProfileError(f"slot {slot}: expected output {t}, got {g.output}")
    perm = f.perm * sum_perms(model, [g.perm for g in gs])
    net = model.overlay(f.net, model.act(f.perm, djunion_all(model, [g.net for g in gs])))
    inputs = tuple(t for g in gs for t in g.inputs)
    return Operation(model, Profile(inputs, f.output), perm, net)


def right_action(f: Operation, tau: Permutation) -> Operation:
    """Reorder the inputs of ``f``: new input ``j`` is old input ``tau(j)``."""
    if tau.n != f.arity:
        raise ArityError(f"permutation of degree {tau.n} acting on {f.arity} inputs")
    inputs = tuple(f.inputs[tau(j) - 1] for j in range(1, tau.n + 1))
    perm = f.perm * induced_perm(f.model, tau, inputs)
    return Operation(f.model, Profile(inputs, f.output), perm, f.net)


def operad_morphism_apply(phi: ModelMorphism, f: Operation) -> Operation:
    """Push ``f`` along a model morphism; the permutation and profile are kept."""
    if f.model != phi.source:
        raise ModelMismatch(f"{phi.name} applies to operations of {phi.source.name}, "
                            f"not {f.model.name}")
    return Operation(phi.target, f.profile, f.perm, phi(f.net))


__all__ = [
    "Profile", "Operation", "make_operation", "identity_op", "compose", "right_action",
    "operad_morphism_apply", "concat_types", "identity_perm", "sum_perms", "induced_perm",
    "perm_source", "perm_target",
]
