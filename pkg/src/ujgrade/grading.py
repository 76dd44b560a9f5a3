"""Group gradings on UJ_n: verification, standard constructions, transports."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .group import Element, FiniteAbelianGroup, GroupHom
from .jordan import (
    JordanError,
    Subspace,
    UTMatrix,
    ambient_dim,
    mirror_map,
    mirror_unit,
    rref,
    slots,
    unit,
)


@dataclass(frozen=True)
class Violation:
    """First failed grading axiom.

    ``kind`` is one of ``not-direct-sum``, ``dimension-deficit``, ``closure``,
    ``duplicate-degree``, ``empty-component``, ``bad-degree``, ``size-mismatch``.
    """

    kind: str
    detail: str
    degrees: tuple = ()
    witness: tuple = ()


class GradingError(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(f"{violation.kind}: {violation.detail}")
        self.violation = violation


@dataclass(frozen=True, eq=False)
class Grading:
    """A verified decomposition of UJ_n into homogeneous components.

    Build instances through :func:`verify_grading` or the constructors below.
    """

    group: FiniteAbelianGroup
    n: int
    components: tuple[tuple[Element, Subspace], ...]
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        return (
            isinstance(other, Grading)
            and self.group == other.group
            and self.n == other.n
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.group, self.n, self.components))

    @cached_property
    def _by_degree(self) -> dict[Element, Subspace]:
        return dict(self.components)

    @property
    def support(self) -> list[Element]:
        return [g for g, _ in self.components]

    def component(self, g: Element) -> Subspace:
        return self._by_degree.get(tuple(g), Subspace.zero(self.n))

    def dimension_profile(self) -> list[tuple[Element, int]]:
        return [(g, S.dim) for g, S in self.components]

    @cached_property
    def _coordinate_solver(self):
        # rows of the inverse of the joint-basis matrix, tagged by degree
        N = ambient_dim(self.n)
        tags, cols = [], []
        for g, S in self.components:
            for r in S.rows:
                tags.append(g)
                cols.append(r)
        aug = [[cols[k][r] for k in range(N)] + [Fraction(int(r == c)) for c in range(N)] for r in range(N)]
        R, _ = rref(aug)
        inv = [row[N:] for row in R]
        return tags, inv

    def decompose(self, x: UTMatrix) -> dict[Element, UTMatrix]:
        """Split x into its homogeneous parts."""
        tags, inv = self._coordinate_solver
        v = x.vector()
        parts: dict[Element, UTMatrix] = {}
        k = 0
        for g, S in self.components:
            part = UTMatrix.zero(self.n)
            for b in S.basis:
                c = sum((a * b_ for a, b_ in zip(inv[k], v) if a and b_), Fraction(0))
                if c:
                    part = part + c * b
                k += 1
            if not part.is_zero():
                parts[g] = part
        return parts

    def degree_of(self, x: UTMatrix) -> Element | None:
        """Degree of a nonzero homogeneous x; None if x is not homogeneous."""
        for g, S in self.components:
            if S.contains(x):
                return None if x.is_zero() else g
        return None

    def is_graded_subspace(self, V: Subspace) -> bool:
        return sum(V.intersect(S).dim for _, S in self.components) == V.dim

    def graded_parts(self, V: Subspace) -> list[tuple[Element, Subspace]]:
        """(g, V intersect A_g) for the nonzero intersections."""
        out = []
        for g, S in self.components:
            W = V.intersect(S)
            if W.dim:
                out.append((g, W))
        return out

    def to_dict(self) -> dict:
        return {
            "group": str(self.group),
            "n": self.n,
            "components": [
                {"degree": list(g), "basis": [list(map(list, b.to_sparse())) for b in S.basis]}
                for g, S in self.components
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Grading":
        G = FiniteAbelianGroup.parse(str(data["group"]))
        n = int(data["n"])
        comps = []
        for c in data["components"]:
            deg = c["degree"]
            deg = G.element(deg if not isinstance(deg, list) else tuple(deg))
            comps.append((deg, [UTMatrix.from_sparse(n, b) for b in c["basis"]]))
        return verify_grading(G, n, comps)


def check_grading(
    group: FiniteAbelianGroup, n: int, components: Iterable[tuple[Element, Sequence[UTMatrix]]]
) -> tuple[Violation | None, tuple]:
    """Check the grading axioms; returns (violation or None, echelonized components)."""
    comps = []
    seen = set()
    for deg, basis in components:
        deg = tuple(deg)
        if not group.contains(deg):
            return Violation("bad-degree", f"{deg} is not an element of {group}", (deg,)), ()
        if deg in seen:
            return Violation("duplicate-degree", f"degree {deg} listed twice", (deg,)), ()
        seen.add(deg)
        basis = list(basis.basis if isinstance(basis, Subspace) else basis)
        if not basis:
            return Violation("empty-component", f"component of degree {deg} is empty", (deg,)), ()
        for b in basis:
            if b.n != n:
                return Violation("size-mismatch", f"matrix of size {b.n} in UJ_{n}", (deg,)), ()
        S = Subspace.span(n, basis)
        if S.dim < len(basis):
            return Violation("not-direct-sum", f"basis of degree {deg} is linearly dependent", (deg,)), ()
        comps.append((deg, S))
    comps.sort(key=lambda c: c[0])
    total = sum(S.dim for _, S in comps)
    joint = rref(r for _, S in comps for r in S.rows)[0]
    if len(joint) < total:
        return Violation("not-direct-sum", "components are not independent"), ()
    N = ambient_dim(n)
    if total < N:
        return Violation("dimension-deficit", f"components span {total} of {N} dimensions"), ()
    by_deg = dict(comps)
    for (g, A), (h, B) in itertools.combinations_with_replacement(comps, 2):
        gh = group.add(g, h)
        target = by_deg.get(gh)
        for a in A.basis:
            for b in B.basis:
                p = a.circ(b)
                if p.is_zero():
                    continue
                if target is None or not target.contains(p):
                    return (
                        Violation(
                            "closure",
                            f"A_{g} o A_{h} is not inside A_{gh}",
                            (g, h),
                            (a, b),
                        ),
                        (),
                    )
    return None, tuple(comps)


def verify_grading(
    group: FiniteAbelianGroup, n: int, components: Iterable[tuple[Element, Sequence[UTMatrix]]]
) -> Grading:
    violation, comps = check_grading(group, n, components)
    if violation is not None:
        raise GradingError(violation)
    return Grading(group, n, comps)


def _from_homogeneous(group, n, pairs: Iterable[tuple[Element, UTMatrix]]) -> Grading:
    buckets: dict[Element, list[UTMatrix]] = {}
    for g, x in pairs:
        if not x.is_zero():
            buckets.setdefault(g, []).append(x)
    return verify_grading(group, n, ((g, Subspace.span(n, xs).basis) for g, xs in buckets.items()))


# ---------------------------------------------------------------------------
# labels


def _fmt(G: FiniteAbelianGroup, g: Element) -> str:
    return str(g[0]) if G.rank == 1 else "[" + ",".join(map(str, g)) + "]"


@dataclass(frozen=True)
class Elementary:
    """Label of the elementary grading with deg e_{i,i+1} = eta[i-1]."""

    group: FiniteAbelianGroup
    eta: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(self.group.element(g) for g in self.eta))

    @property
    def n(self) -> int:
        return len(self.eta) + 1

    def grading(self) -> Grading:
        return elementary_grading(self.group, self.eta)

    def __str__(self):
        return "Elementary(" + ",".join(_fmt(self.group, g) for g in self.eta) + ")"


@dataclass(frozen=True)
class MT:
    """Label of the mirror-type grading (t, eta) on UJ_n."""

    group: FiniteAbelianGroup
    n: int
    t: Element
    eta: tuple[Element, ...]

    def __post_init__(self):
        G = self.group
        object.__setattr__(self, "t", G.element(self.t))
        object.__setattr__(self, "eta", tuple(G.element(g) for g in self.eta))
        if G.order_of(self.t) != 2:
            raise GradingError(Violation("bad-degree", f"t={self.t} does not have order 2"))
        if self.n < 2:
            raise GradingError(Violation("size-mismatch", "mirror-type gradings need n >= 2"))
        if len(self.eta) != mt_length(self.n):
            raise GradingError(
                Violation("size-mismatch", f"eta must have length {mt_length(self.n)} for n={self.n}")
            )

    def grading(self) -> Grading:
        return mt_grading(self.group, self.t, self.eta, self.n)

    def __str__(self):
        G = self.group
        return f"MT({_fmt(G, self.t)},(" + ",".join(_fmt(G, g) for g in self.eta) + "))"


GradingLabel = Elementary | MT


def mt_length(n: int) -> int:
    """q = ceil((n - 1) / 2)."""
    return n // 2


# ---------------------------------------------------------------------------
# constructors


def elementary_degree(G: FiniteAbelianGroup, eta: Sequence[Element], i: int, j: int) -> Element:
    return G.sum(eta[i - 1 : j - 1])


def elementary_grading(G: FiniteAbelianGroup, eta: Sequence) -> Grading:
    eta = tuple(G.element(g) for g in eta)
    n = len(eta) + 1
    return _from_homogeneous(G, n, ((elementary_degree(G, eta, i, j), unit(n, i, j)) for i, j in slots(n)))


def mirror_index_set(n: int):
    """(i, m) with 1 <= i <= ceil((n - m) / 2), 0 <= m <= n - 1."""
    for m in range(n):
        for i in range(1, (n - m + 1) // 2 + 1):
            yield i, m


def is_middle(n: int, i: int, m: int) -> bool:
    """True when Y_{i:m}^- vanishes (the slot is its own mirror)."""
    return (n - m) % 2 == 1 and 2 * i == n - m + 1


def mt_step_degree(n: int, eta: Sequence[Element], k: int) -> Element:
    """Degree of the superdiagonal mirror pair through e_{k,k+1}."""
    return eta[min(k, n - k) - 1]


def mt_degree(G: FiniteAbelianGroup, n: int, t: Element, eta: Sequence[Element], i: int, m: int, sign: int) -> Element:
    plus = G.sum(mt_step_degree(n, eta, k) for k in range(i, i + m))
    return plus if sign > 0 else G.add(plus, t)


def mt_grading(G: FiniteAbelianGroup, t, eta: Sequence, n: int) -> Grading:
    t = G.element(t)
    eta = tuple(G.element(g) for g in eta)
    if G.order_of(t) != 2:
        raise GradingError(Violation("bad-degree", f"t={t} does not have order 2"))
    if len(eta) != mt_length(n):
        raise GradingError(Violation("size-mismatch", f"eta must have length {mt_length(n)} for n={n}"))
    pairs = []
    for i, m in mirror_index_set(n):
        pairs.append((mt_degree(G, n, t, eta, i, m, +1), mirror_unit(n, i, m, +1)))
        if not is_middle(n, i, m):
            pairs.append((mt_degree(G, n, t, eta, i, m, -1), mirror_unit(n, i, m, -1)))
    return _from_homogeneous(G, n, pairs)


def standard_grading(label: GradingLabel) -> Grading:
    return label.grading()


def grading_from_involution(H: FiniteAbelianGroup, eta: Sequence) -> Grading:
    """Symmetric/skew split of the elementary grading under the mirror involution.

    Degrees live in H x Z2: symmetric parts get (h, 0), skew parts (h, 1).
    """
    eta = tuple(H.element(g) for g in eta)
    if eta != eta[::-1]:
        raise GradingError(Violation("bad-degree", "the mirror map is a graded involution only for palindromic eta"))
    n = len(eta) + 1
    G = H.product(FiniteAbelianGroup((2,)))
    pairs = []
    for i, j in slots(n):
        a = mirror_map(unit(n, i, j))
        h = elementary_degree(H, eta, i, j)
        e = unit(n, i, j)
        pairs.append((h + (0,), e + a))
        pairs.append((h + (1,), e - a))
    return _from_homogeneous(G, n, pairs)


def induced_grading(grading: Grading, phi: GroupHom) -> Grading:
    """Coarsening along phi: components with the same image are merged."""
    if phi.source != grading.group:
        raise GradingError(Violation("bad-degree", "homomorphism is not defined on the grading group"))
    merged: dict[Element, list[UTMatrix]] = {}
    for g, S in grading.components:
        merged.setdefault(phi(g), []).extend(S.basis)
    return verify_grading(phi.target, grading.n, merged.items())


def apply_automorphism(grading: Grading, P: UTMatrix, flip: bool = False) -> Grading:
    """Transport along x -> P (flip ? psi(x) : x) P^-1."""
    iso = GradedIso(P, flip)
    return verify_grading(
        grading.group, grading.n, ((g, [iso.apply(b) for b in S.basis]) for g, S in grading.components)
    )


@dataclass(frozen=True)
class GradedIso:
    """The automorphism x -> P (flip ? psi(x) : x) P^-1 of UJ_n, psi the mirror map."""

    P: UTMatrix
    flip: bool = False
    target_label: object = None

    @cached_property
    def P_inv(self) -> UTMatrix:
        return self.P.inverse()

    def apply(self, x: UTMatrix) -> UTMatrix:
        if self.flip:
            x = mirror_map(x)
        return self.P @ x @ self.P_inv

    def validate(self, source: Grading, target: Grading) -> bool:
        """Every source basis vector lands in the target component of equal degree."""
        if source.group != target.group or source.n != target.n:
            return False
        for g, S in source.components:
            T = target.component(g)
            for b in S.basis:
                if not T.contains(self.apply(b)):
                    return False
        return True

    def then(self, other: "GradedIso") -> "GradedIso":
        """Composite 'self first, then other'."""
        P = other.P @ mirror_map(self.P.inverse()) if other.flip else other.P @ self.P
        return GradedIso(P, self.flip != other.flip, other.target_label)


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True, eq=False)
class QuotientGrading:
    """Grading of UJ_n / T, presented on the matrix units outside T's leading slots."""

    group: FiniteAbelianGroup
    n: int
    ideal: Subspace
    basis_slots: tuple[tuple[int, int], ...]
    components: tuple[tuple[Element, tuple[tuple[Fraction, ...], ...]], ...]

    @property
    def dim(self) -> int:
        return len(self.basis_slots)

    def lift(self, coords: Sequence) -> UTMatrix:
        return UTMatrix(self.n, {s: c for s, c in zip(self.basis_slots, coords)})

    def project(self, x: UTMatrix) -> tuple[Fraction, ...]:
        r = self.ideal.reduce(x)
        return tuple(r[s] for s in self.basis_slots)

    def product(self, a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
        return self.project(self.lift(a).circ(self.lift(b)))

    def block(self) -> tuple[int, int] | None:
        """(lo, hi) when the complement units are exactly those of a diagonal block."""
        if not self.basis_slots:
            return None
        lo = min(i for i, _ in self.basis_slots)
        hi = max(j for _, j in self.basis_slots)
        block = [(i, j) for i, j in slots(self.n) if lo <= i <= j <= hi]
        return (lo, hi) if list(self.basis_slots) == block else None

    def as_block_grading(self) -> Grading:
        """Identify the quotient with UJ_m when it is a diagonal block, checking products."""
        blk = self.block()
        if blk is None:
            raise JordanError("quotient complement is not a diagonal block")
        lo, hi = blk
        m = hi - lo + 1

        def shift(coords):
            return UTMatrix(m, {(i - lo + 1, j - lo + 1): c for (i, j), c in zip(self.basis_slots, coords)})

        units = [tuple(Fraction(int(k == r)) for k in range(self.dim)) for r in range(self.dim)]
        for a in units:
            for b in units:
                if shift(self.product(a, b)) != shift(a).circ(shift(b)):
                    raise JordanError("quotient product does not match UJ_m on the block")
        return verify_grading(self.group, m, ((g, [shift(c) for c in basis]) for g, basis in self.components))


def quotient_grading(grading: Grading, T: Subspace) -> QuotientGrading:
    n = grading.n
    full = Subspace.full(n)
    for x in full.basis:
        for t in T.basis:
            if not T.contains(x.circ(t)):
                raise GradingError(Violation("closure", "subspace is not an ideal", witness=(x, t)))
    if not grading.is_graded_subspace(T):
        raise GradingError(Violation("not-direct-sum", "ideal is not a graded subspace"))
    lead = set(T.leading_slots())
    basis_slots = tuple(s for s in slots(n) if s not in lead)
    comps = []
    for g, S in grading.components:
        vecs = []
        for b in S.basis:
            r = T.reduce(b)
            vecs.append([r[s] for s in basis_slots])
        rows, _ = rref(vecs)
        if rows:
            comps.append((g, tuple(tuple(r) for r in rows)))
    return QuotientGrading(grading.group, n, T, basis_slots, tuple(comps))
