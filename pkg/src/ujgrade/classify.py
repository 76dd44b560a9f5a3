"""Canonical labels, isomorphism decisions and certificates, class enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .group import Element, FiniteAbelianGroup, coset_rep
from .grading import Elementary, GradedIso, GradingLabel, MT, mt_length
from .jordan import UTMatrix


class LabelError(ValueError):
    pass


def elementary_canonical(label: Elementary) -> Elementary:
    eta = min(label.eta, label.eta[::-1])
    return Elementary(label.group, eta)


def mt_canonical(label: MT) -> MT:
    """Coset representatives mod <t> in the first floor((n-1)/2) slots; the
    middle slot of an even n is kept exactly."""
    G, n, t = label.group, label.n, label.t
    p = (n - 1) // 2
    eta = tuple(coset_rep(G, g, t) if k < p else g for k, g in enumerate(label.eta))
    return MT(G, n, t, eta)


def canonical(label: GradingLabel) -> GradingLabel:
    if isinstance(label, Elementary):
        return elementary_canonical(label)
    return mt_canonical(label)


def _check_pair(L1: GradingLabel, L2: GradingLabel):
    if L1.group != L2.group:
        raise LabelError(f"labels over different groups: {L1.group} vs {L2.group}")
    if L1.n != L2.n:
        raise LabelError(f"labels for different sizes: {L1.n} vs {L2.n}")


def labels_isomorphic(L1: GradingLabel, L2: GradingLabel) -> bool:
    _check_pair(L1, L2)
    if type(L1) is not type(L2):
        return False
    if isinstance(L1, MT) and L1.t != L2.t:
        return False
    return canonical(L1) == canonical(L2)


def mt_sign_matrix(L1: MT, L2: MT) -> UTMatrix:
    """Diagonal +-1 matrix A with x -> A x A^-1 carrying (t, eta) onto (t, eta').

    With eps_i = 1 when g_i = g'_i and -1 otherwise (i <= p = floor((n-1)/2)),
    A = diag(eps, ..., eps, eps_{p-1}...eps_1, ..., eps_1, 1), eps = eps_1...eps_p.
    Conjugation by A multiplies e_{n-k,n-k+1} by eps_k and fixes the first half.
    """
    n, p = L1.n, (L1.n - 1) // 2
    eps = [1 if a == b else -1 for a, b in zip(L1.eta[:p], L2.eta[:p])]
    d = [1] * n
    for k in range(1, p + 1):
        d[n - k - 1] = d[n - k] * eps[k - 1]
    for k in range(n - p - 1):
        d[k] = d[n - p - 1]
    return UTMatrix.diag(d)


def explicit_isomorphism(L1: GradingLabel, L2: GradingLabel) -> GradedIso:
    """A verified GradedIso from the standard grading of L1 onto that of L2."""
    if not labels_isomorphic(L1, L2):
        raise LabelError(f"{L1} and {L2} are not isomorphic")
    n = L1.n
    if isinstance(L1, Elementary):
        flip = L1.eta != L2.eta
        iso = GradedIso(UTMatrix.identity(n), flip, L2)
    else:
        iso = GradedIso(mt_sign_matrix(L1, L2), False, L2)
    if not iso.validate(L1.grading(), L2.grading()):
        raise AssertionError(f"certificate for {L1} -> {L2} failed to validate")
    return iso


def count_elementary(order: int, n: int) -> int:
    return (order ** (n - 1) + order ** (n // 2)) // 2


def count_mt(G: FiniteAbelianGroup, n: int) -> int:
    if n < 2:
        return 0
    per_t = (G.order // 2) ** ((n - 1) // 2) * (G.order if n % 2 == 0 else 1)
    return per_t * len(G.involutions())


def enumerate_classes(G: FiniteAbelianGroup, n: int) -> list[GradingLabel]:
    """One canonical label per isomorphism class of G-gradings on UJ_n.

    Elementary classes come first in lexicographic eta order, then MT classes
    ordered by (t, eta).
    """
    if n < 1:
        raise LabelError("n must be >= 1")
    out: list[GradingLabel] = []
    for eta in itertools.product(G.elements, repeat=n - 1):
        if eta <= eta[::-1]:
            out.append(Elementary(G, eta))
    if n >= 2:
        p = (n - 1) // 2
        for t in G.involutions():
            reps = sorted({coset_rep(G, g, t) for g in G.elements})
            slots_ = [reps] * p + ([list(G.elements)] if n % 2 == 0 else [])
            for eta in itertools.product(*slots_):
                out.append(MT(G, n, t, eta))
    return out


@dataclass(frozen=True)
class CensusLine:
    variant: str
    label: GradingLabel
    profile: tuple[tuple[Element, int], ...]

    def format(self) -> str:
        prof = " ".join(f"{','.join(map(str, g))}:{d}" for g, d in self.profile)
        return f"{self.variant}\t{self.label}\t{prof}"

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "label": str(self.label),
            "profile": [[list(g), d] for g, d in self.profile],
        }


def census(G: FiniteAbelianGroup, n: int) -> list[CensusLine]:
    lines = []
    for L in enumerate_classes(G, n):
        variant = "elementary" if isinstance(L, Elementary) else "MT"
        lines.append(CensusLine(variant, L, tuple(L.grading().dimension_profile())))
    return lines


def parse_label(text: str, G: FiniteAbelianGroup, n: int | None = None) -> GradingLabel:
    """Parse ``Elementary(1,0,1)`` / ``E(...)`` or ``MT(t,(g1,...,gq))``.

    Elements of multi-factor groups are written in brackets: ``MT([1,1],([0,1]))``.
    For MT labels n defaults to 2q.
    """
    import re

    s = text.replace(" ", "")
    m = re.fullmatch(r"(Elementary|E|MT)\((.*)\)", s)
    if m is None:
        raise LabelError(f"malformed label {text!r}")
    kind, body = m.groups()

    def elements(chunk: str) -> list[Element]:
        if chunk == "":
            return []
        if "[" in chunk:
            items = re.findall(r"\[([^\]]*)\]", chunk)
            if re.sub(r"\[[^\]]*\]", "", chunk).replace(",", ""):
                raise LabelError(f"malformed element list {chunk!r}")
        else:
            items = chunk.split(",")
        try:
            return [G.element(it) for it in items]
        except ValueError as exc:
            raise LabelError(str(exc)) from exc

    if kind in ("Elementary", "E"):
        eta = elements(body)
        if n is not None and len(eta) != n - 1:
            raise LabelError(f"elementary label needs {n - 1} entries, got {len(eta)}")
        return Elementary(G, tuple(eta))
    m = re.fullmatch(r"(\[[^\]]*\]|[^,(]+),\((.*)\)", body)
    if m is None:
        raise LabelError(f"malformed MT label {text!r}")
    t = elements(m.group(1))[0]
    eta = elements(m.group(2))
    if n is None:
        n = 2 * len(eta)
    if len(eta) != mt_length(n):
        raise LabelError(f"MT label needs {mt_length(n)} entries for n={n}")
    try:
        return MT(G, n, t, tuple(eta))
    except ValueError as exc:
        raise LabelError(str(exc)) from exc
