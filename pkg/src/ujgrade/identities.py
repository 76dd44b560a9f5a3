"""Graded Jordan polynomials and exact identity checking on graded UJ_n.

A :class:`Term` is a formal rational combination of binary product trees whose
leaves are degree-tagged variables.  Associators are expanded on construction,
so evaluation only ever multiplies.

Identity checking is exact for two shapes: terms in which no variable repeats
inside a monomial, and single-variable powers.  For the first shape the check
works on spans: for a set of trees sharing the same top-level split, the span
of joint values is the span of products of the spans of the two halves, so the
cost is driven by component dimensions rather than by the number of basis
substitutions.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .group import Element, FiniteAbelianGroup, GroupError
from .jordan import Subspace, UTMatrix, ambient_dim, slots


class TermError(ValueError):
    pass


class UnsupportedTermError(TermError):
    pass


# ---------------------------------------------------------------------------
# trees and terms


@dataclass(frozen=True)
class Var:
    id: int
    degree: Element


@dataclass(frozen=True)
class Prod:
    left: "Var | Prod"
    right: "Var | Prod"


Tree = Var | Prod


@lru_cache(maxsize=None)
def leaves(tree: Tree) -> tuple[Var, ...]:
    if isinstance(tree, Var):
        return (tree,)
    return leaves(tree.left) + leaves(tree.right)


def _fmt_degree(g: Element) -> str:
    return str(g[0]) if len(g) == 1 else "(" + ",".join(map(str, g)) + ")"


def tree_str(tree: Tree) -> str:
    if isinstance(tree, Var):
        return f"x{tree.id}:{_fmt_degree(tree.degree)}"
    # print left-normed chains flat
    chain = []
    while isinstance(tree, Prod):
        chain.append(tree.right)
        tree = tree.left
    chain.append(tree)
    return "(" + " o ".join(tree_str(t) for t in reversed(chain)) + ")"


class Term:
    """Formal linear combination {tree: coefficient}."""

    __slots__ = ("monomials",)

    def __init__(self, monomials: Mapping[Tree, Fraction] | None = None):
        self.monomials = {t: Fraction(c) for t, c in (monomials or {}).items() if c}

    @classmethod
    def var(cls, id: int, degree: Element) -> "Term":
        return cls({Var(id, tuple(degree)): 1})

    @classmethod
    def zero(cls) -> "Term":
        return cls()

    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: "Term") -> "Term":
        out = dict(self.monomials)
        for t, c in other.monomials.items():
            out[t] = out.get(t, 0) + c
        return Term(out)

    def __neg__(self) -> "Term":
        return Term({t: -c for t, c in self.monomials.items()})

    def __sub__(self, other: "Term") -> "Term":
        return self + (-other)

    def __mul__(self, c) -> "Term":
        return Term({t: c * v for t, v in self.monomials.items()})

    __rmul__ = __mul__

    def circ(self, other: "Term") -> "Term":
        out: dict = {}
        for a, ca in self.monomials.items():
            for b, cb in other.monomials.items():
                p = Prod(a, b)
                out[p] = out.get(p, 0) + ca * cb
        return Term(out)

    def __eq__(self, other):
        return isinstance(other, Term) and self.monomials == other.monomials

    def __hash__(self):
        return hash(frozenset(self.monomials.items()))

    def variables(self) -> dict[int, Element]:
        out: dict[int, Element] = {}
        for t in self.monomials:
            for v in leaves(t):
                if out.setdefault(v.id, v.degree) != v.degree:
                    raise TermError(f"variable x{v.id} used with two different degrees")
        return out

    def is_multilinear(self) -> bool:
        """Every variable occurs exactly once in every monomial."""
        ids = None
        for t in self.monomials:
            ls = [v.id for v in leaves(t)]
            if len(set(ls)) != len(ls) or (ids is not None and set(ls) != ids):
                return False
            ids = set(ls)
        return True

    def power_shape(self) -> tuple[Var, int, Fraction] | None:
        """(x, k, c) when the term equals c * x^k (associative power), else None."""
        var, k, total = None, None, Fraction(0)
        for t, c in self.monomials.items():
            ls = leaves(t)
            if len(set(ls)) != 1 or len(ls) < 2:
                return None
            if var is None:
                var, k = ls[0], len(ls)
            elif ls[0] != var or len(ls) != k:
                return None
            total += c * 2 ** (k - 1)
        return None if var is None else (var, k, total)

    def substitute(self, mapping: Mapping[int, "Term"]) -> "Term":
        """Replace variables by terms and expand bilinearly."""

        def sub(tree):
            if isinstance(tree, Var):
                return mapping.get(tree.id, Term({tree: 1}))
            return sub(tree.left).circ(sub(tree.right))

        out = Term()
        for t, c in self.monomials.items():
            out = out + c * sub(t)
        return out

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for t, c in sorted(self.monomials.items(), key=lambda kv: tree_str(kv[0])):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coef = "" if a == 1 else f"{a}*"
            parts.append((sign, coef + tree_str(t)))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Term({self})"


def var(id: int, degree: Element) -> Term:
    return Term.var(id, degree)


def left_normed(*factors: Term) -> Term:
    out = factors[0]
    for f in factors[1:]:
        out = out.circ(f)
    return out


def assoc(a: Term, b: Term, c: Term) -> Term:
    """(a, b, c) = (a o b) o c - a o (b o c)."""
    return a.circ(b).circ(c) - a.circ(b.circ(c))


def power(x: Term, k: int) -> Term:
    if k < 1:
        raise TermError("power must be >= 1")
    return left_normed(*([x] * k))


# ---------------------------------------------------------------------------
# evaluation


def _eval_tree(tree: Tree, sub: Mapping[int, UTMatrix], memo: dict) -> UTMatrix | None:
    """Value of a tree; None stands for zero."""
    if tree in memo:
        return memo[tree]
    if isinstance(tree, Var):
        val = sub.get(tree.id)
    else:
        a = _eval_tree(tree.left, sub, memo)
        val = None
        if a is not None:
            b = _eval_tree(tree.right, sub, memo)
            if b is not None:
                val = a.circ(b)
                if val.is_zero():
                    val = None
    memo[tree] = val
    return val


def evaluate(term: Term, sub: Mapping[int, UTMatrix], grading=None) -> UTMatrix:
    """Exact value of ``term`` under ``sub`` (variable id -> matrix).

    When a grading is given, every substituted matrix must be homogeneous of
    its variable's degree.
    """
    variables = term.variables()
    n = None
    for vid, deg in variables.items():
        if vid not in sub:
            raise TermError(f"no value for x{vid}")
        x = sub[vid]
        n = x.n
        if grading is not None and not grading.component(deg).contains(x):
            raise TermError(f"value of x{vid} is not homogeneous of degree {deg}")
    if n is None:
        if grading is not None:
            n = grading.n
        elif sub:
            n = next(iter(sub.values())).n
        else:
            raise TermError("matrix size unknown: no variables and no grading")
    memo: dict = {}
    out = UTMatrix.zero(n)
    for t, c in term.monomials.items():
        v = _eval_tree(t, sub, memo)
        if v is not None:
            out = out + c * v
    return out


# ---------------------------------------------------------------------------
# sparse echelon spans (vectors are {index: Fraction})


class _Echelon:
    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def add(self, v: dict[int, Fraction]) -> bool:
        v = dict(v)
        for p in [p for p in v if p in self.rows]:
            c = v.get(p)
            if c:
                for k, x in self.rows[p].items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    y = row.get(k, 0) - c * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def basis(self) -> list[dict[int, Fraction]]:
        return [self.rows[p] for p in sorted(self.rows)]


def _to_sparse(vals: Sequence[UTMatrix | None], n: int) -> dict[int, Fraction]:
    idx = {s: k for k, s in enumerate(slots(n))}
    N = ambient_dim(n)
    out = {}
    for pos, v in enumerate(vals):
        if v is None:
            continue
        for s, c in v.items():
            out[pos * N + idx[s]] = c
    return out


def _split(vec: dict[int, Fraction], k: int, n: int) -> list[UTMatrix | None]:
    N = ambient_dim(n)
    sl = slots(n)
    parts: list[dict] = [{} for _ in range(k)]
    for key, c in vec.items():
        parts[key // N][sl[key % N]] = c
    return [UTMatrix(n, p) if p else None for p in parts]


def _relabel(trees: Sequence[Tree], block_of: Mapping[int, int]):
    """Rename variables and blocks by first appearance; gives a cache key."""
    vmap: dict[int, int] = {}
    bmap: dict[int, int] = {}

    def rl(t):
        if isinstance(t, Var):
            if t.id not in vmap:
                vmap[t.id] = len(vmap)
                bmap.setdefault(block_of[t.id], len(bmap))
            return Var(vmap[t.id], t.degree)
        return Prod(rl(t.left), rl(t.right))

    new = tuple(rl(t) for t in trees)
    new_block = {vmap[v]: bmap[b] for v, b in block_of.items() if v in vmap}
    return new, new_block


def _blockset(tree: Tree, block_of: Mapping[int, int]) -> frozenset:
    return frozenset(block_of[v.id] for v in leaves(tree))


def _joint_span(grading, trees: tuple[Tree, ...], block_of: dict[int, int]) -> list[dict]:
    """Basis of span{(T_1(x), ..., T_K(x))} over block-basis substitutions x."""
    key = ("span",) + _relabel(trees, block_of)
    key = (key[0], key[1], tuple(sorted(key[2].items())))
    cache = grading.cache
    if key in cache:
        return cache[key]
    n = grading.n
    K = len(trees)
    result: list[dict]
    splits = []
    for t in trees:
        if isinstance(t, Var):
            splits = None
            break
        a, b = _blockset(t.left, block_of), _blockset(t.right, block_of)
        splits.append((a, b))
    uniform = None
    if splits:
        first = splits[0]
        if all({s[0], s[1]} == {first[0], first[1]} for s in splits):
            uniform = first
    if uniform is not None:
        left_set = uniform[0]
        halves = []
        for t in trees:
            if _blockset(t.left, block_of) == left_set:
                halves.append((t.left, t.right))
            else:
                halves.append((t.right, t.left))
        L = tuple(dict.fromkeys(h[0] for h in halves))
        R = tuple(dict.fromkeys(h[1] for h in halves))
        li = {t: k for k, t in enumerate(L)}
        ri = {t: k for k, t in enumerate(R)}
        WL = [_split(w, len(L), n) for w in _joint_span(grading, L, block_of)]
        WR = [_split(w, len(R), n) for w in _joint_span(grading, R, block_of)]
        ech = _Echelon()
        for wl in WL:
            for wr in WR:
                vals = []
                for a, b in halves:
                    x, y = wl[li[a]], wr[ri[b]]
                    p = None if x is None or y is None else x.circ(y)
                    vals.append(None if p is None or p.is_zero() else p)
                ech.add(_to_sparse(vals, n))
        result = ech.basis()
    else:
        result = _brute_span(grading, trees, block_of)
    cache[key] = result
    return result


def _space(grading, deg) -> Subspace:
    """Substitution space of a variable; a tuple of degrees stands for their sum."""
    if deg and isinstance(deg[0], tuple):
        key = ("space", deg)
        if key not in grading.cache:
            S = Subspace.zero(grading.n)
            for g in deg:
                S = S + grading.component(g)
            grading.cache[key] = S
        return grading.cache[key]
    return grading.component(deg)


def _collapse(term: Term, block_of: dict[int, int]) -> tuple[Term, dict[int, int]] | None:
    """Merge the variables of each block into one variable over the sum of their components.

    Valid when the term is the full expansion of a smaller term under
    x -> x^(g1) + ... + x^(gr) blockwise, which is checked exactly.
    """
    members: dict[int, dict[int, Element]] = {}
    for t in term.monomials:
        for v in leaves(t):
            members.setdefault(block_of[v.id], {})[v.id] = v.degree
    if all(len(m) == 1 for m in members.values()):
        return None
    rename: dict[int, Var] = {}
    size: dict[int, int] = {}
    for b, m in members.items():
        degs = tuple(sorted(set(m.values())))
        if len(degs) != len(m):
            return None
        rep = Var(min(m), degs if len(degs) > 1 else degs[0])
        for vid in m:
            rename[vid] = rep
        size[b] = len(m)

    def rn(t):
        if isinstance(t, Var):
            return rename[t.id]
        return Prod(rn(t.left), rn(t.right))

    merged: dict[Tree, list[Fraction]] = {}
    for t, c in term.monomials.items():
        merged.setdefault(rn(t), []).append(c)
    out = {}
    for t, cs in merged.items():
        expected = math.prod(size[block_of[v.id]] for v in leaves(t))
        if len(cs) != expected or len(set(cs)) != 1:
            return None
        out[t] = cs[0]
    return Term(out), {rename[v].id: b for v, b in block_of.items() if v in rename}


def _brute_span(grading, trees, block_of) -> list[dict]:
    n = grading.n
    members: dict[int, dict[int, Element]] = {}
    for t in trees:
        for v in leaves(t):
            members.setdefault(block_of[v.id], {})[v.id] = v.degree
    choices = []
    for b in sorted(members):
        opts = []
        for vid, deg in sorted(members[b].items()):
            for x in _space(grading, deg).basis:
                opts.append((vid, x))
        if not opts:
            return []
        choices.append(opts)
    ech = _Echelon()
    for combo in itertools.product(*choices):
        sub = dict(combo)
        memo: dict = {}
        vals = [_eval_tree(t, sub, memo) for t in trees]
        if any(v is not None for v in vals):
            ech.add(_to_sparse(vals, n))
    return ech.basis()


def _position_blocks(term: Term) -> dict[int, int] | None:
    """Blocks = leaf positions, when every monomial hits each block exactly once."""
    width = None
    at: dict[int, set] = {}
    for t in term.monomials:
        ls = leaves(t)
        if width is None:
            width = len(ls)
        elif len(ls) != width:
            return None
        if len({v.id for v in ls}) != len(ls):
            return None
        for p, v in enumerate(ls):
            at.setdefault(p, set()).add(v.id)
    block_of: dict[int, int] = {}
    for p, ids in at.items():
        for i in ids:
            if block_of.setdefault(i, p) != p:
                return None
    return block_of


def _linear_identity(grading, term: Term, block_of: dict[int, int]) -> bool:
    trees = tuple(term.monomials)
    coeffs = [term.monomials[t] for t in trees]
    n = grading.n
    # Trees in one call must share a block set; group by it.
    groups: dict[frozenset, list[int]] = {}
    for k, t in enumerate(trees):
        groups.setdefault(_blockset(t, block_of), []).append(k)
    if len(groups) > 1:
        raise UnsupportedTermError("monomials do not share a common set of variable blocks")
    for w in _joint_span(grading, trees, block_of):
        parts = _split(w, len(trees), n)
        total = UTMatrix.zero(n)
        for c, p in zip(coeffs, parts):
            if p is not None:
                total = total + c * p
        if not total.is_zero():
            return False
    return True


def _power_identity(grading, x: Var, k: int, c: Fraction) -> bool:
    if c == 0:
        return True
    A = grading.component(x.degree)
    if k >= grading.n:
        # x^k = 0 for every x in A exactly when A has no diagonal part
        return all(b.is_strictly_upper() for b in A.basis)
    # below nilpotency index: polarize the associative power
    for combo in itertools.combinations_with_replacement(A.basis, k):
        total = UTMatrix.zero(grading.n)
        for perm in set(itertools.permutations(range(k))):
            p = combo[perm[0]]
            for q in perm[1:]:
                p = p @ combo[q]
            total = total + p
        if not total.is_zero():
            return False
    return True


def is_graded_identity(grading, term: Term) -> bool:
    """Exact decision whether ``term`` vanishes on every degree-respecting substitution."""
    if term.is_zero():
        return True
    variables = term.variables()
    for deg in variables.values():
        if len(deg) != grading.group.rank:
            raise TermError(f"degree {deg} is not an element of {grading.group}")
    shape = term.power_shape()
    if shape is not None:
        return _power_identity(grading, *shape)
    blocks = _position_blocks(term)
    if blocks is not None:
        collapsed = _collapse(term, blocks)
        if collapsed is not None:
            term, blocks = collapsed
        try:
            return _linear_identity(grading, term, blocks)
        except UnsupportedTermError:
            pass
    # fall back to multihomogeneous components, one block per variable
    groups: dict[frozenset, dict] = {}
    for t, c in term.monomials.items():
        ids = [v.id for v in leaves(t)]
        if len(set(ids)) != len(ids):
            raise UnsupportedTermError("term is neither multilinear nor a single-variable power")
        groups.setdefault(frozenset(ids), {})[t] = c
    for ids, mons in groups.items():
        if not _linear_identity(grading, Term(mons), {i: i for i in ids}):
            return False
    return True


# ---------------------------------------------------------------------------
# combinatorics of sequences


def tau_set(m: int) -> list[tuple[int, ...]]:
    """Permutations (as images sigma(1..m)) that descend to 1 and then ascend.

    Each is fixed by the set of values placed before the 1, so there are 2^(m-1).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    out = []
    rest = range(2, m + 1)
    for r in range(m):
        for before in itertools.combinations(rest, r):
            after = sorted(set(rest) - set(before))
            out.append(tuple(sorted(before, reverse=True)) + (1,) + tuple(after))
    return sorted(out)


def in_tau(sigma: Sequence[int]) -> bool:
    """Direct test of the defining pattern."""
    t = list(sigma).index(1)
    down = all(sigma[k] > sigma[k + 1] for k in range(t))
    up = all(sigma[k] < sigma[k + 1] for k in range(t + 1, len(sigma) - 1))
    return down and up


def act(sigma: Sequence[int], s: Sequence) -> tuple:
    """Left action sigma s = (s_{sigma^-1(1)}, ..., s_{sigma^-1(m)})."""
    inv = [0] * len(sigma)
    for k, v in enumerate(sigma):
        inv[v - 1] = k
    return tuple(s[inv[k]] for k in range(len(sigma)))


def rev_equivalent(s: Sequence, s2: Sequence) -> bool:
    if len(s) != len(s2):
        raise ValueError("sequences must have equal length")
    return tuple(s) == tuple(s2) or tuple(s) == tuple(s2)[::-1]


def tau_orbit_condition(s: Sequence, s2: Sequence) -> bool:
    """For every sigma, tau' in T there are sigma', tau in T with
    sigma s = sigma' s' and tau s = tau' s'."""
    T = tau_set(len(s))
    forward = all(any(act(a, s) == act(b, s2) for b in T) for a in T)
    backward = all(any(act(a, s) == act(b, s2) for a in T) for b in T)
    return forward and backward


def _strict_units_by_degree(G: FiniteAbelianGroup, eta: Sequence[Element]):
    n = len(eta) + 1
    out: dict[Element, list[tuple[int, int]]] = {}
    for i, j in slots(n):
        if i < j:
            out.setdefault(G.sum(eta[i - 1 : j - 1]), []).append((i, j))
    return out


def _unit_circ(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int] | None:
    """e_a o e_b for strictly upper units: at most one of ab, ba survives."""
    if a[1] == b[0]:
        return (a[0], b[1])
    if b[1] == a[0]:
        return (b[0], a[1])
    return None


def is_jordan_good(G: FiniteAbelianGroup, eta: Sequence, mu: Sequence) -> bool:
    """Search for strictly upper units r_i of degree mu_i with r_1 o ... o r_m != 0."""
    eta = tuple(G.element(g) for g in eta)
    mu = tuple(G.element(g) for g in mu)
    if not mu:
        return True
    units = _strict_units_by_degree(G, eta)

    @lru_cache(maxsize=None)
    def reach(pos: int, cur: tuple[int, int]) -> bool:
        if pos == len(mu):
            return True
        for r in units.get(mu[pos], ()):
            nxt = _unit_circ(cur, r)
            if nxt is not None and reach(pos + 1, nxt):
                return True
        return False

    return any(reach(1, r) for r in units.get(mu[0], ()))


def jordan_good_sequences_by_tau(eta: Sequence) -> set[tuple]:
    """{sigma eta : sigma in T_{n-1}}."""
    return {act(s, tuple(eta)) for s in tau_set(len(eta))}


# ---------------------------------------------------------------------------
# the polynomials f_mu


def f_mu(G: FiniteAbelianGroup, mu: Sequence) -> Term:
    """Left-normed product of one factor per entry of mu.

    Identity entries become associators (x_{3h-2}, x_{3h-1}, x_{3h}) of
    degree-identity variables; any other entry a becomes the single variable
    x_{3h-2} of degree a, so ids never collide.
    """
    mu = tuple(G.element(g) for g in mu)
    if not mu:
        raise TermError("mu must be nonempty")
    e = G.identity
    factors = []
    for h, a in enumerate(mu, start=1):
        if a == e:
            factors.append(assoc(var(3 * h - 2, e), var(3 * h - 1, e), var(3 * h, e)))
        else:
            factors.append(var(3 * h - 2, a))
    return left_normed(*factors)


def power_identity(t: Element, n: int) -> Term:
    """(x_1^{(t)})^{o n}."""
    return power(var(1, t), n)


def mirror_chain(G: FiniteAbelianGroup, n: int, t: Element, eta: Sequence[Element]) -> Term:
    """Left-normed chain of n - 1 associators following the mirror pattern of eta.

    Factor j is (x, y, w) with deg w = g_i, i = min(j, n - j).  Off the middle
    x, y have the identity degree; in the middle slot of an even n they have
    degree t, since symmetric diagonal elements act on e_{q,q+1} by scalars and
    would make every associator there vanish.
    """
    e = G.identity
    factors = []
    for j in range(1, n):
        i = min(j, n - j)
        d = t if 2 * j == n else e
        factors.append(assoc(var(3 * j - 2, d), var(3 * j - 1, d), var(3 * j, eta[i - 1])))
    return left_normed(*factors)


def lift_term(term: Term, quotient, t: Element) -> Term:
    """Replace each x^{(g0)} over G/<t> by x^{(g)} + x^{(g t)} over G."""
    G = quotient.projection.source
    mapping = {}
    for vid, deg in term.variables().items():
        g = quotient.section(deg)
        mapping[vid] = var(2 * vid - 1, g) + var(2 * vid, G.add(g, t))
    return term.substitute(mapping)


# ---------------------------------------------------------------------------
# term literal syntax


_TOKEN = re.compile(
    r"\s*(?:(?P<var>x(?P<vid>\d+):(?P<deg>\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)|-?\d+))"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<kw>assoc|pow)|(?P<op>[()+\-*,o]))"
)


def parse_term(text: str, G: FiniteAbelianGroup) -> Term:
    """Parse e.g. ``assoc(x1:0, x2:0, x3:1)``, ``(x1:1 o x2:(0,1) o x3:0)``,
    ``pow(x1:1, 4)``, ``2*(x1:1 o x2:1) - (x2:1 o x1:1)``."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise TermError(f"cannot parse term at {text[pos:]!r}")
        pos = m.end()
        if m.group("var"):
            try:
                deg = G.element(m.group("deg"))
            except GroupError as exc:
                raise TermError(f"bad degree in {m.group(0)!r}: {exc}") from exc
            tokens.append(("var", (int(m.group("vid")), deg)))
        elif m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("kw"):
            tokens.append(("kw", m.group("kw")))
        else:
            tokens.append(("op", m.group("op")))
    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else (None, None)

    def take(kind=None, val=None):
        nonlocal k
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise TermError(f"unexpected token {tok[1]!r} in term")
        k += 1
        return tok

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        out = sign * item()
        while peek() in (("op", "+"), ("op", "-")):
            s = take()[1]
            nxt = item()
            out = out + nxt if s == "+" else out - nxt
        return out

    def item():
        if peek()[0] == "num":
            c = take()[1]
            take("op", "*")
            return c * atom()
        return atom()

    def atom():
        kind, val = peek()
        if kind == "var":
            take()
            return var(*val)
        if kind == "kw" and val == "assoc":
            take()
            take("op", "(")
            a = expr()
            take("op", ",")
            b = expr()
            take("op", ",")
            c = expr()
            take("op", ")")
            return assoc(a, b, c)
        if kind == "kw" and val == "pow":
            take()
            take("op", "(")
            base = expr()
            take("op", ",")
            e = take("num")[1]
            take("op", ")")
            if e.denominator != 1:
                raise TermError("power exponent must be an integer")
            return power(base, int(e))
        if (kind, val) == ("op", "("):
            take()
            parts = [expr()]
            while peek() == ("op", "o"):
                take()
                parts.append(expr())
            take("op", ")")
            return left_normed(*parts)
        raise TermError(f"unexpected token {val!r} in term")

    out = expr()
    if k != len(tokens):
        raise TermError(f"trailing input in term: {tokens[k:]}")
    return out


# ---------------------------------------------------------------------------
# separating identities


@dataclass(frozen=True)
class Separator:
    """A graded identity of ``holds_in`` that fails in ``fails_in``."""

    term: Term
    holds_in: object
    fails_in: object
    kind: str  # "sequence", "power", "lifted" or "chain"

    def verify(self) -> bool:
        return is_graded_identity(self.holds_in.grading(), self.term) and not is_graded_identity(
            self.fails_in.grading(), self.term
        )


def separating_sequence(G: FiniteAbelianGroup, eta1: Sequence, eta2: Sequence) -> tuple[tuple, int]:
    """A sequence Jordan-good for exactly one of eta1, eta2, and which one (1 or 2)."""
    orbit1 = jordan_good_sequences_by_tau(eta1)
    orbit2 = jordan_good_sequences_by_tau(eta2)
    if orbit1 - orbit2:
        return min(orbit1 - orbit2), 1
    if orbit2 - orbit1:
        return min(orbit2 - orbit1), 2
    raise ValueError("sequences are reversal-equivalent; no separating sequence exists")


def _mt_induced_eta(label, quotient) -> tuple:
    n = label.n
    return tuple(quotient.projection(label.eta[min(k, n - k) - 1]) for k in range(1, n))


def separating_identity(L1, L2) -> Separator:
    """A certificate that the standard gradings of L1 and L2 are not isomorphic."""
    from .classify import canonical, labels_isomorphic
    from .grading import MT, Elementary
    from .group import quotient_mod_involution

    if labels_isomorphic(L1, L2):
        raise ValueError(f"{L1} and {L2} are isomorphic; they satisfy the same graded identities")
    G, n = L1.group, L1.n
    pair = {1: L1, 2: L2}

    def make(term, holds, kind):
        sep = Separator(term, pair[holds], pair[3 - holds], kind)
        if not sep.verify():
            raise AssertionError(f"{kind} separator for {L1} / {L2} failed verification")
        return sep

    if isinstance(L1, Elementary) and isinstance(L2, Elementary):
        mu, good_in = separating_sequence(G, L1.eta, L2.eta)
        return make(f_mu(G, mu), 3 - good_in, "sequence")
    if isinstance(L1, MT) and (isinstance(L2, Elementary) or L2.t != L1.t):
        return make(power_identity(L1.t, n), 2, "power")
    if isinstance(L2, MT) and isinstance(L1, Elementary):
        return make(power_identity(L2.t, n), 1, "power")

    t = L1.t
    Q = quotient_mod_involution(G, t)
    eta0_1, eta0_2 = _mt_induced_eta(L1, Q), _mt_induced_eta(L2, Q)
    if eta0_1 != eta0_2:
        mu, good_in = separating_sequence(Q.group, eta0_1, eta0_2)
        return make(lift_term(f_mu(Q.group, mu), Q, t), 3 - good_in, "lifted")
    # only the exact middle entry differs (n even)
    C1 = canonical(L1)
    return make(mirror_chain(G, n, t, C1.eta), 2, "chain")
