"""Finite abelian groups in direct-product-of-cyclic form.

Elements are plain tuples of residues, one coordinate per cyclic factor.
The group operation is written additively: ``compose`` adds coordinatewise.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

Element = tuple[int, ...]


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """The group Z_{d_1} x ... x Z_{d_k}."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(d) for d in self.moduli)
        if any(d < 1 for d in moduli):
            raise GroupError(f"moduli must be >= 1, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def parse(cls, literal: str) -> "FiniteAbelianGroup":
        """Parse ``"Z4"``, ``"Z2xZ2"``, ``"Z2xZ3xZ4"``; ``"1"`` or ``""`` is trivial."""
        text = literal.strip().replace(" ", "")
        if text in ("", "1", "Z1", "trivial"):
            return cls(())
        parts = re.split(r"[x*]", text)
        moduli = []
        for part in parts:
            m = re.fullmatch(r"Z_?(\d+)", part)
            if m is None:
                raise GroupError(f"malformed group literal {literal!r}")
            moduli.append(int(m.group(1)))
        return cls(tuple(moduli))

    def __str__(self):
        if not self.moduli:
            return "1"
        return "x".join(f"Z{d}" for d in self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        """All elements, in canonical (lexicographic) order."""
        return tuple(itertools.product(*(range(d) for d in self.moduli)))

    def element(self, coords: Sequence[int] | int | str) -> Element:
        """Coerce coordinates (or an ``"1,0,3"`` literal) into a reduced element."""
        if isinstance(coords, str):
            text = coords.strip().strip("()[]")
            coords = [int(c) for c in text.split(",")] if text else []
        elif isinstance(coords, int):
            coords = [coords]
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise GroupError(
                f"element {coords} has {len(coords)} coordinates, group {self} needs {self.rank}"
            )
        return tuple(int(c) % d for c, d in zip(coords, self.moduli))

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == self.rank
            and all(isinstance(c, int) and 0 <= c < d for c, d in zip(g, self.moduli))
        )

    def _check(self, *gs):
        for g in gs:
            if len(g) != self.rank:
                raise GroupError(f"element {g} does not belong to {self}")

    def add(self, g: Element, h: Element) -> Element:
        self._check(g, h)
        return tuple((a + b) % d for a, b, d in zip(g, h, self.moduli))

    def neg(self, g: Element) -> Element:
        self._check(g)
        return tuple((-a) % d for a, d in zip(g, self.moduli))

    def scale(self, k: int, g: Element) -> Element:
        self._check(g)
        return tuple((k * a) % d for a, d in zip(g, self.moduli))

    def sum(self, gs) -> Element:
        total = self.identity
        for g in gs:
            total = self.add(total, g)
        return total

    def order_of(self, g: Element) -> int:
        self._check(g)
        m = 1
        for a, d in zip(g, self.moduli):
            m = math.lcm(m, d // math.gcd(a, d))
        return m

    def involutions(self) -> list[Element]:
        return [g for g in self.elements if self.order_of(g) == 2]

    def format(self, g: Element) -> str:
        return ",".join(str(c) for c in g)

    def product(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.moduli + other.moduli)


# Module-level spellings of the group operations.

def compose(G: FiniteAbelianGroup, g: Element, h: Element) -> Element:
    return G.add(g, h)


def element_order(G: FiniteAbelianGroup, g: Element) -> int:
    return G.order_of(g)


def involutions(G: FiniteAbelianGroup) -> list[Element]:
    return G.involutions()


def canonical_compare(G: FiniteAbelianGroup, g: Element, h: Element) -> int:
    """-1, 0 or 1 according to the lexicographic order of coordinates."""
    G._check(g, h)
    return (g > h) - (g < h)


@dataclass(frozen=True)
class GroupHom:
    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    images: tuple[Element, ...]

    def __post_init__(self):
        images = tuple(self.target.element(im) for im in self.images)
        if len(images) != self.source.rank:
            raise GroupError("one image per source generator is required")
        for d, im in zip(self.source.moduli, images):
            if self.target.scale(d, im) != self.target.identity:
                raise GroupError(f"image {im} is incompatible with a generator of order {d}")
        object.__setattr__(self, "images", images)

    def __call__(self, g: Element) -> Element:
        self.source._check(g)
        out = self.target.identity
        for c, im in zip(g, self.images):
            out = self.target.add(out, self.target.scale(c, im))
        return out

    @classmethod
    def identity_map(cls, G: FiniteAbelianGroup) -> "GroupHom":
        return cls(G, G, tuple(tuple(int(i == j) for j in range(G.rank)) for i in range(G.rank)))

    @classmethod
    def trivial(cls, G: FiniteAbelianGroup, H: FiniteAbelianGroup) -> "GroupHom":
        return cls(G, H, (H.identity,) * G.rank)


def _smith_columns(rows: list[list[int]], ncols: int):
    """Diagonalize an integer relation matrix.

    Returns (diagonal, V) where V is the unimodular column transform, so that
    x -> x V followed by reduction mod the diagonal realizes Z^k / rowspace.
    """
    A = [list(r) for r in rows]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    nrows = len(A)

    def col_op(j, k, c):  # col_j += c * col_k
        for r in A:
            r[j] += c * r[k]
        for r in V:
            r[j] += c * r[k]

    def col_swap(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    diag = []
    t = 0
    while t < min(nrows, ncols):
        entries = [(abs(A[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        col_swap(t, pj)
        while True:
            p = A[t][t]
            dirty = False
            for j in range(t + 1, ncols):
                q = A[t][j] // p
                if q:
                    col_op(j, t, -q)
                if A[t][j]:
                    dirty = True
            for i in range(t + 1, nrows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            if not dirty:
                bad = [
                    (i, j)
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if A[i][j] % p
                ]
                if not bad:
                    break
                i, _ = bad[0]
                A[t] = [a + b for a, b in zip(A[t], A[i])]
                continue
            entries = [(abs(A[i][t]), i, t) for i in range(t, nrows) if A[i][t]]
            entries += [(abs(A[t][j]), t, j) for j in range(t, ncols) if A[t][j]]
            _, pi, pj = min(entries)
            A[t], A[pi] = A[pi], A[t]
            col_swap(t, pj)
        diag.append(abs(A[t][t]))
        t += 1
    diag += [0] * (ncols - len(diag))
    return diag, V


@dataclass(frozen=True)
class Quotient:
    """G / <t> together with the projection and a coset-minimum section."""

    group: FiniteAbelianGroup
    projection: GroupHom
    t: Element

    @cached_property
    def _section(self) -> dict[Element, Element]:
        reps: dict[Element, Element] = {}
        for g in self.projection.source.elements:  # ascending, so first hit is the minimum
            reps.setdefault(self.projection(g), g)
        return reps

    def section(self, x: Element) -> Element:
        return self._section[x]

    def __iter__(self):
        # unpacks as (quotient group, projection, section)
        return iter((self.group, self.projection, self.section))

    def rep(self, g: Element) -> Element:
        """Canonical representative of the coset g + <t>."""
        return self._section[self.projection(g)]


def quotient_mod_involution(G: FiniteAbelianGroup, t: Element) -> Quotient:
    t = G.element(t)
    if G.order_of(t) != 2:
        raise GroupError(f"{t} is not of order 2 in {G}")
    rows = [[d * int(i == j) for j in range(G.rank)] for i, d in enumerate(G.moduli)]
    rows.append(list(t))
    diag, V = _smith_columns(rows, G.rank)
    keep = [j for j, d in enumerate(diag) if d != 1]
    Q = FiniteAbelianGroup(tuple(diag[j] for j in keep))
    images = tuple(tuple(V[i][j] for j in keep) for i in range(G.rank))
    return Quotient(Q, GroupHom(G, Q, images), t)


def coset_rep(G: FiniteAbelianGroup, g: Element, t: Element) -> Element:
    """min(g, g + t): canonical representative of g modulo <t>."""
    return min(g, G.add(g, t))

