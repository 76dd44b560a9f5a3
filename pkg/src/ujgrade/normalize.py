"""Normal forms for arbitrary gradings of UJ_n.

Given any verified grading, :func:`canonicalize` finds an automorphism of UJ_n
carrying it onto the standard elementary or MT grading of a canonical label.
The construction peels off the outer corner (rows/columns 1 and n), recurses on
the middle block UJ_{n-2}, and then reads the label off homogeneous matrix
units.  Every intermediate subspace is computed from the grading alone, so the
procedure works on scrambled inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classify import canonical, explicit_isomorphism
from .grading import (
    Elementary,
    GradedIso,
    Grading,
    GradingLabel,
    MT,
    apply_automorphism,
    verify_grading,
)
from .group import Element
from .jordan import (
    Subspace,
    UTMatrix,
    annihilator_mod,
    power_span,
    product_span,
    slots,
    unipotent_conjugator,
    unit,
)


class NormalizationError(ValueError):
    """The input does not behave like a grading of UJ_n."""


def _require(cond: bool, what: str):
    if not cond:
        raise NormalizationError(what)


@dataclass(frozen=True)
class UpperChain:
    J: Subspace
    e1n_span: Subspace
    B: Subspace
    C: Subspace
    U1: Subspace
    T1: Subspace


def _border(n: int) -> Subspace:
    """First row plus last column."""
    return Subspace.span(n, (unit(n, i, j) for i, j in slots(n) if i == 1 or j == n))


def _associator_span(grading: Grading) -> Subspace:
    n = grading.n
    target = n * (n - 1) // 2
    basis = [b for _, S in grading.components for b in S.basis]
    found: list[UTMatrix] = []
    span = Subspace.zero(n)
    prod = [[a.circ(b) for b in basis] for a in basis]
    for ia, a in enumerate(basis):
        for ib in range(len(basis)):
            ab = prod[ia][ib]
            for ic, c in enumerate(basis):
                x = ab.circ(c) - a.circ(prod[ib][ic])
                if not x.is_zero() and not span.contains(x):
                    found.append(x)
                    span = Subspace.span(n, found)
                    if span.dim == target:
                        return span
    return span


def strictly_upper_chain(grading: Grading) -> UpperChain:
    """The ideal chain that locates the outer corner, with shape checks."""
    n = grading.n
    _require(n >= 2, "the strictly upper chain needs n >= 2")
    full = Subspace.full(n)
    J = _associator_span(grading)
    _require(J == Subspace.strictly_upper(n), f"associators span {J.dim} dims, expected {n * (n - 1) // 2}")
    top = power_span(J, n - 1)
    _require(top.dim == 1 and top.contains(unit(n, 1, n)), "J^(n-1) is not spanned by e_1n")
    B = annihilator_mod(full, top, Subspace.zero(n))
    C = B.intersect(product_span(B, B))
    U1 = annihilator_mod(full, C, J)
    T1 = power_span(U1, n)
    _require(T1 == _border(n), f"T1 has dimension {T1.dim}, expected first row and last column")
    for name, S in (("J", J), ("e1n", top), ("B", B), ("C", C), ("U1", U1), ("T1", T1)):
        _require(grading.is_graded_subspace(S), f"{name} is not a graded subspace")
    return UpperChain(J, top, B, C, U1, T1)


@dataclass(frozen=True)
class CornerFrame:
    """After conjugating by P: e1 = e_11 + e_nn and e2 = e_11 - e_nn, both homogeneous."""

    e1: UTMatrix
    e2: UTMatrix
    P: UTMatrix
    degree_e2: Element


def _corner_values(x: UTMatrix) -> tuple[Fraction, Fraction]:
    return x[(1, 1)], x[(x.n, x.n)]


def _find_e2(grading: Grading, T1: Subspace) -> tuple[UTMatrix, Element]:
    """Homogeneous element of T1 congruent to e_11 - e_nn modulo T1 cap J."""
    G = grading.group
    parts = grading.graded_parts(T1)
    for g, S in parts:
        if g != G.identity:
            continue
        vals = [(b, _corner_values(b)) for b in S.basis]
        # images in T1 / (T1 cap J) = K e_11 + K e_nn; need two independent ones
        for (x, (a, b)), (y, (c, d)) in ((p, q) for p in vals for q in vals):
            det = a * d - b * c
            if det:
                # solve s (a, b) + r (c, d) = (1, -1)
                s = (d + c) / det
                r = -(b + a) / det
                return s * x + r * y, g
    for g, S in parts:
        if g == G.identity or G.add(g, g) != G.identity:
            continue
        for x in S.basis:
            a, b = _corner_values(x)
            if a != b:
                _require(b == -a, "homogeneous corner element is not a multiple of e_11 - e_nn")
                return x / a, g
    raise NormalizationError("no homogeneous element of T1 separates e_11 from e_nn")


def corner_frame(grading: Grading, chain: UpperChain | None = None) -> CornerFrame:
    n = grading.n
    if chain is None:
        chain = strictly_upper_chain(grading)
    e2, g = _find_e2(grading, chain.T1)
    e1 = e2.circ(e2) / 2
    _require(grading.degree_of(e1) == grading.group.identity, "e1 is not of identity degree")
    corners = unit(n, 1, 1) + unit(n, n, n)
    signs = unit(n, 1, 1) - unit(n, n, n)
    P = unipotent_conjugator([(e1, corners)])
    _require(P is not None, "e1 is not conjugate to e_11 + e_nn")
    P_inv = P.inverse()
    e1, e2 = P @ e1 @ P_inv, P @ e2 @ P_inv
    r2 = e2.circ(e1) - e2
    Q = unipotent_conjugator([(e1, corners), (r2, signs)])
    _require(Q is not None, "e1 and e2 are not simultaneously diagonalizable")
    return CornerFrame(corners, signs, Q @ P, g)


def _middle_block(grading: Grading) -> Grading:
    """Grading of the middle block, once the corner frame is standard, as UJ_{n-2}."""
    n = grading.n

    def shift(x: UTMatrix) -> UTMatrix:
        return UTMatrix(n - 2, {(i - 1, j - 1): c for (i, j), c in x.items() if 1 < i and j < n})

    comps = []
    for g, S in grading.components:
        xs = [y for y in (shift(b) for b in S.basis) if not y.is_zero()]
        if xs:
            comps.append((g, Subspace.span(n - 2, xs).basis))
    return verify_grading(grading.group, n - 2, comps)


def _embed(M: UTMatrix, n: int) -> UTMatrix:
    """diag(1, M, 1)."""
    entries = {(i + 1, j + 1): c for (i, j), c in M.items()}
    entries[(1, 1)] = Fraction(1)
    entries[(n, n)] = Fraction(1)
    return UTMatrix(n, entries)


def _homogeneous_with_entry(grading: Grading, V: Subspace, slot: tuple[int, int]) -> UTMatrix:
    for _, S in grading.graded_parts(V):
        for b in S.basis:
            if b[slot]:
                return b
    raise NormalizationError(f"no homogeneous element with a nonzero {slot} entry")


def _normalize(grading: Grading) -> tuple[GradingLabel, UTMatrix]:
    """A raw label L and P such that x -> P x P^-1 maps the grading onto standard(L)."""
    G, n = grading.group, grading.n
    if n == 1:
        return Elementary(G, ()), UTMatrix.identity(1)
    chain = strictly_upper_chain(grading)
    frame = corner_frame(grading, chain)
    P = frame.P
    cur = apply_automorphism(grading, P)
    t = frame.degree_e2
    identity = G.identity
    if n == 2:
        g = cur.degree_of(unit(2, 1, 2))
        label = Elementary(G, (g,)) if t == identity else MT(G, 2, t, (g,))
        return label, P

    inner, M = _normalize(_middle_block(cur))
    step = _embed(M, n)
    cur = apply_automorphism(cur, step)
    P = step @ P
    if n >= 4:
        u2 = unit(n, 2, 2) - unit(n, n - 1, n - 1)
        _require(cur.degree_of(u2) == t, "corner and middle frames have different degrees")

    J = Subspace.strictly_upper(n)
    if t == identity:
        _require(isinstance(inner, Elementary), "middle block is not elementary")
        e11, enn = unit(n, 1, 1), unit(n, n, n)
        z = _homogeneous_with_entry(cur, J, (1, 2))
        first = z.circ(e11).circ(unit(n, 2, 2))
        z = _homogeneous_with_entry(cur, J, (n - 1, n))
        last = z.circ(enn).circ(unit(n, n - 1, n - 1))
        eta = (cur.degree_of(first),) + inner.eta + (cur.degree_of(last),)
        _require(None not in eta, "outer matrix units are not homogeneous")
        return Elementary(G, eta), P

    if n >= 4:
        _require(isinstance(inner, MT) and inner.t == t, "middle block is not MT with the same involution")
    u1 = unit(n, 2, 2) + unit(n, n - 1, n - 1)
    u2 = unit(n, 2, 2) - unit(n, n - 1, n - 1)
    e2 = unit(n, 1, 1) - unit(n, n, n)
    zz = _homogeneous_with_entry(cur, J.intersect(_border(n)), (1, 2))
    z1 = zz.circ(u1)
    z = (z1.circ(u2) + z1.circ(e2)) / 2
    _require(z[(1, 2)] != 0, "lost the e_12 coefficient")
    z = z / z[(1, 2)]
    a = z[(n - 1, n)]
    _require(a != 0, "e_12 and e_(n-1)n are not tied together by a homogeneous element")
    D = UTMatrix.diag([1] * (n - 1) + [a])
    cur = apply_automorphism(cur, D)
    P = D @ P
    g = cur.degree_of(unit(n, 1, 2) + unit(n, n - 1, n))
    _require(g is not None, "Y+ at the corner is not homogeneous")
    eta = (g,) + (inner.eta if n >= 4 else ())
    return MT(G, n, t, eta), P


def canonicalize(grading: Grading) -> tuple[GradingLabel, GradedIso]:
    """Canonical label of the grading and a verified graded isomorphism onto its standard form."""
    raw, P = _normalize(grading)
    label = canonical(raw)
    iso = GradedIso(P, False, raw).then(explicit_isomorphism(raw, label))
    iso = GradedIso(iso.P, iso.flip, label)
    if not iso.validate(grading, label.grading()):
        raise NormalizationError(f"normal form {label} failed validation")
    return label, iso
