"""Finite variable sets and bijections between them.

A bijection is read contravariantly: ``[u->x, v->y]`` sends the new name
``u`` to the old name ``x``.  Its domain holds the new names, its codomain
the old ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_#']*\Z")


class BijectionError(ValueError):
    """Raised when a bijection operation's precondition fails."""


def check_var(name: str) -> str:
    if not isinstance(name, str) or not _IDENT.match(name):
        raise BijectionError(f"invalid variable name {name!r}")
    return name


def fmt_set(names) -> str:
    return "{" + ",".join(sorted(names)) + "}"


@dataclass(frozen=True)
class Bijection:
    pairs: tuple = ()
    _map: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        pairs = tuple(sorted((check_var(a), check_var(b)) for a, b in self.pairs))
        m = dict(pairs)
        if len(m) != len(pairs):
            raise BijectionError("bijection has a repeated domain element")
        if len(set(m.values())) != len(m):
            raise BijectionError("bijection is not injective")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_map", m)

    @classmethod
    def from_dict(cls, m) -> "Bijection":
        return cls(tuple(m.items()))

    @classmethod
    def identity(cls, names) -> "Bijection":
        return cls(tuple((n, n) for n in names))

    @property
    def dom(self) -> frozenset:
        return frozenset(self._map)

    @property
    def cod(self) -> frozenset:
        return frozenset(self._map.values())

    def __call__(self, name: str) -> str:
        try:
            return self._map[name]
        except KeyError:
            raise BijectionError(f"{name} is not in the domain {fmt_set(self.dom)}") from None

    def as_dict(self) -> dict:
        return dict(self._map)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def inverse(self) -> "Bijection":
        return Bijection(tuple((b, a) for a, b in self.pairs))

    def preimage(self, names) -> frozenset:
        names = set(names)
        return frozenset(a for a, b in self.pairs if b in names)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        return "[" + ", ".join(f"{a}->{b}" for a, b in self.pairs) + "]"


def compose(sigma: Bijection, tau: Bijection) -> Bijection:
    """sigma after tau: first tau, then sigma (needs cod tau = dom sigma)."""
    if tau.cod != sigma.dom:
        raise BijectionError(
            f"cannot compose: codomain {fmt_set(tau.cod)} differs from domain {fmt_set(sigma.dom)}"
        )
    return Bijection(tuple((a, sigma(b)) for a, b in tau.pairs))


def restrict_core(sigma: Bijection, ys) -> Bijection:
    """Corestriction of sigma to the preimage of ys."""
    ys = frozenset(ys)
    if not ys <= sigma.cod:
        raise BijectionError(f"{fmt_set(ys - sigma.cod)} not in codomain {fmt_set(sigma.cod)}")
    return Bijection(tuple((a, b) for a, b in sigma.pairs if b in ys))


def rename(xs, old: str, new: str) -> Bijection:
    """The bijection X\\{old} + {new} -> X sending new to old."""
    xs = frozenset(xs)
    if old not in xs:
        raise BijectionError(f"{old} not in {fmt_set(xs)}")
    if new != old and new in xs:
        raise BijectionError(f"{new} already occurs in {fmt_set(xs)}")
    return Bijection(tuple((new if v == old else v, v) for v in xs))


def disjoint_union(sigma: Bijection, tau: Bijection) -> Bijection:
    if sigma.dom & tau.dom or sigma.cod & tau.cod:
        raise BijectionError(f"bijections {sigma} and {tau} overlap")
    return Bijection(sigma.pairs + tau.pairs)


def base_name(name: str) -> str:
    return name.split("#", 1)[0]


def fresh_name(base: str, avoid) -> str:
    """Least ``base#k`` (k >= 1) not in ``avoid``; any existing suffix is dropped."""
    stem = base_name(base)
    k = 1
    while f"{stem}#{k}" in avoid:
        k += 1
    return f"{stem}#{k}"
