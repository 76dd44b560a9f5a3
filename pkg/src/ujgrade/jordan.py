"""Exact arithmetic in UJ_n, the upper triangular n x n matrices under a o b = ab + ba.

Scalars are ``fractions.Fraction``.  Coordinates of the ambient space are the
pairs (i, j), 1 <= i <= j <= n, in row-major order; every echelon form in the
package is taken with respect to that ordering.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class JordanError(ValueError):
    pass


@lru_cache(maxsize=None)
def slots(n: int) -> tuple[tuple[int, int], ...]:
    """The coordinate ordering e_11, e_12, ..., e_1n, e_22, ..., e_nn."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def slot_index(n: int) -> dict[tuple[int, int], int]:
    return {s: k for k, s in enumerate(slots(n))}


def ambient_dim(n: int) -> int:
    return n * (n + 1) // 2


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class UTMatrix:
    """Immutable upper triangular matrix with exact rational entries.

    Entries are kept sparsely as ``{(i, j): Fraction}`` with 1-based indices.
    """

    __slots__ = ("n", "_e", "_hash")

    def __init__(self, n: int, entries: dict | None = None):
        self.n = n
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (1 <= i <= j <= n):
                raise JordanError(f"entry ({i},{j}) is not upper triangular in size {n}")
            if v:
                clean[(i, j)] = _frac(v)
        self._e = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, n: int) -> "UTMatrix":
        return cls(n)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "UTMatrix":
        return cls(n, {(i, j): 1})

    @classmethod
    def identity(cls, n: int) -> "UTMatrix":
        return cls(n, {(i, i): 1 for i in range(1, n + 1)})

    @classmethod
    def diag(cls, values: Sequence) -> "UTMatrix":
        return cls(len(values), {(i + 1, i + 1): v for i, v in enumerate(values)})

    @classmethod
    def from_vector(cls, n: int, vec: Sequence) -> "UTMatrix":
        return cls(n, {s: v for s, v in zip(slots(n), vec) if v})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "UTMatrix":
        n = len(rows)
        for i in range(n):
            for j in range(i):
                if rows[i][j]:
                    raise JordanError("matrix is not upper triangular")
        return cls(n, {(i + 1, j + 1): rows[i][j] for i in range(n) for j in range(i, n)})

    @classmethod
    def from_sparse(cls, n: int, triples: Iterable) -> "UTMatrix":
        """Inverse of :meth:`to_sparse`; accepts (i, j, num) or (i, j, num, den)."""
        entries: dict = {}
        for t in triples:
            i, j, num = int(t[0]), int(t[1]), t[2]
            den = t[3] if len(t) > 3 else 1
            entries[(i, j)] = entries.get((i, j), 0) + Fraction(int(num), int(den))
        return cls(n, entries)

    def to_sparse(self) -> list[tuple[int, int, int, int]]:
        return [(i, j, v.numerator, v.denominator) for (i, j), v in sorted(self._e.items())]

    # access
    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self._e.get(ij, Fraction(0))

    def items(self):
        return self._e.items()

    def vector(self) -> list[Fraction]:
        return [self._e.get(s, Fraction(0)) for s in slots(self.n)]

    def dense(self) -> list[list[Fraction]]:
        return [[self[(i, j)] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def is_zero(self) -> bool:
        return not self._e

    def is_strictly_upper(self) -> bool:
        return all(i < j for i, j in self._e)

    def diagonal(self) -> list[Fraction]:
        return [self[(i, i)] for i in range(1, self.n + 1)]

    # arithmetic
    def _same(self, other: "UTMatrix"):
        if not isinstance(other, UTMatrix):
            raise TypeError(f"expected UTMatrix, got {type(other).__name__}")
        if other.n != self.n:
            raise JordanError(f"size mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "UTMatrix") -> "UTMatrix":
        self._same(other)
        e = dict(self._e)
        for k, v in other._e.items():
            e[k] = e.get(k, 0) + v
        return UTMatrix(self.n, e)

    def __sub__(self, other: "UTMatrix") -> "UTMatrix":
        return self + (-other)

    def __neg__(self) -> "UTMatrix":
        return UTMatrix(self.n, {k: -v for k, v in self._e.items()})

    def __mul__(self, c) -> "UTMatrix":
        if isinstance(c, UTMatrix):
            raise TypeError("use @ for the associative product, circ() for the Jordan product")
        c = _frac(c)
        return UTMatrix(self.n, {k: c * v for k, v in self._e.items()} if c else {})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "UTMatrix":
        return self * (1 / _frac(c))

    def __matmul__(self, other: "UTMatrix") -> "UTMatrix":
        self._same(other)
        rows: dict[int, list] = {}
        for (k, j), v in other._e.items():
            rows.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self._e.items():
            for j, b in rows.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return UTMatrix(self.n, out)

    def circ(self, other: "UTMatrix") -> "UTMatrix":
        return self @ other + other @ self

    def inverse(self) -> "UTMatrix":
        d = self.diagonal()
        if any(x == 0 for x in d):
            raise JordanError("matrix is singular")
        n = self.n
        inv: dict = {}
        # back substitution column by column
        for j in range(1, n + 1):
            inv[(j, j)] = 1 / d[j - 1]
            for i in range(j - 1, 0, -1):
                s = sum((self[(i, k)] * inv.get((k, j), 0) for k in range(i + 1, j + 1)), Fraction(0))
                inv[(i, j)] = -s / d[i - 1]
        return UTMatrix(n, inv)

    def __eq__(self, other):
        return isinstance(other, UTMatrix) and self.n == other.n and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._e.items())))
        return self._hash

    def __repr__(self):
        if not self._e:
            return f"UTMatrix({self.n}, 0)"
        terms = []
        for (i, j), v in sorted(self._e.items()):
            c = "" if v == 1 else "-" if v == -1 else f"{v}*"
            terms.append(f"{c}e{i}{j}" if self.n < 10 else f"{c}e({i},{j})")
        return f"UTMatrix({self.n}, {' + '.join(terms)})"


def unit(n: int, i: int, j: int) -> UTMatrix:
    return UTMatrix.unit(n, i, j)


def jordan_product(a: UTMatrix, b: UTMatrix) -> UTMatrix:
    return a.circ(b)


def associator(a: UTMatrix, b: UTMatrix, c: UTMatrix) -> UTMatrix:
    """(a, b, c) = (a o b) o c - a o (b o c)."""
    return a.circ(b).circ(c) - a.circ(b.circ(c))


def circle_power(a: UTMatrix, k: int) -> UTMatrix:
    """Left-normed Jordan power a o a o ... o a (k factors)."""
    if k < 1:
        raise JordanError("power must be >= 1")
    out = a
    assoc = a
    for _ in range(k - 1):
        out = out.circ(a)
        assoc = assoc @ a
    if out != assoc * 2 ** (k - 1):
        raise AssertionError("Jordan power disagrees with 2^(k-1) a^k")
    return out


def mirror_slot(n: int, i: int, m: int) -> tuple[int, int]:
    """Position of e_{-i:m} = e_{n-i-m+1, n-i+1}."""
    return (n - i - m + 1, n - i + 1)


def mirror_unit(n: int, i: int, m: int, sign: int | str) -> UTMatrix:
    """Y_{i:m}^+ = e_{i,i+m} + e_{-i:m} or Y_{i:m}^- = e_{i,i+m} - e_{-i:m}."""
    if not (1 <= i and 0 <= m and i + m <= n):
        raise JordanError(f"mirror unit index (i={i}, m={m}) out of range for n={n}")
    s = 1 if sign in (1, "+") else -1 if sign in (-1, "-") else None
    if s is None:
        raise JordanError(f"sign must be + or -, got {sign!r}")
    return unit(n, i, i + m) + s * unit(n, *mirror_slot(n, i, m))


def mirror_map(x: UTMatrix) -> UTMatrix:
    """Reflection in the anti-diagonal, e_ij -> e_{n-j+1, n-i+1}."""
    n = x.n
    return UTMatrix(n, {(n - j + 1, n - i + 1): v for (i, j), v in x.items()})


def conjugate(x: UTMatrix, P: UTMatrix, P_inv: UTMatrix | None = None) -> UTMatrix:
    """P x P^-1."""
    if P_inv is None:
        P_inv = P.inverse()
    return P @ x @ P_inv


# ---------------------------------------------------------------------------
# exact linear algebra on coordinate vectors


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for r in rows:
        v = [_frac(x) for x in r]
        for b, p in zip(basis, pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, b)]
        p = next((k for k, x in enumerate(v) if x), None)
        if p is None:
            continue
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for k, b in enumerate(basis):
            c = b[p]
            if c:
                basis[k] = [x - c * y for x, y in zip(b, v)]
        basis.append(v)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[k] for k in order], [pivots[k] for k in order]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {c : rows . c = 0}."""
    R, piv = rref(rows)
    free = [k for k in range(ncols) if k not in set(piv)]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(R, piv):
            v[p] = -r[f]
        out.append(v)
    return out


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One solution of rows . c = rhs (free variables set to 0), or None."""
    R, piv = rref([list(r) + [b] for r, b in zip(rows, rhs)])
    if ncols in piv:
        return None
    sol = [Fraction(0)] * ncols
    for r, p in zip(R, piv):
        sol[p] = r[ncols]
    return sol


class Subspace:
    """Linear subspace of UJ_n stored by its unique reduced echelon basis."""

    __slots__ = ("n", "rows", "pivots", "_basis")

    def __init__(self, n: int, rows, pivots):
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)
        self._basis = None

    @classmethod
    def span(cls, n: int, mats: Iterable[UTMatrix]) -> "Subspace":
        vecs = []
        for m in mats:
            if m.n != n:
                raise JordanError(f"size mismatch: {m.n} vs {n}")
            vecs.append(m.vector())
        return cls(n, *rref(vecs))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(n, (unit(n, i, j) for i, j in slots(n)))

    @classmethod
    def strictly_upper(cls, n: int) -> "Subspace":
        return cls.span(n, (unit(n, i, j) for i, j in slots(n) if i < j))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple[UTMatrix, ...]:
        if self._basis is None:
            self._basis = tuple(UTMatrix.from_vector(self.n, r) for r in self.rows)
        return self._basis

    def reduce_vector(self, v: Sequence[Fraction]) -> list[Fraction]:
        v = list(v)
        for r, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, r)]
        return v

    def reduce(self, x: UTMatrix) -> UTMatrix:
        """Normal form of x modulo this subspace."""
        return UTMatrix.from_vector(self.n, self.reduce_vector(x.vector()))

    def contains(self, x: UTMatrix) -> bool:
        self._check(x.n)
        return not any(self.reduce_vector(x.vector()))

    __contains__ = contains

    def coordinates(self, x: UTMatrix) -> list[Fraction]:
        """Coefficients of x in the echelon basis; x must lie in the subspace."""
        if not self.contains(x):
            raise JordanError("element is not in the subspace")
        v = x.vector()
        return [v[p] for p in self.pivots]

    def _check(self, n):
        if n != self.n:
            raise JordanError(f"size mismatch: {n} vs {self.n}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other.n)
        return Subspace(self.n, *rref(list(self.rows) + list(other.rows)))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other.n)
        if not self.rows or not other.rows:
            return Subspace.zero(self.n)
        # c . rows(self) reduced mod other must vanish
        reduced = [other.reduce_vector(r) for r in self.rows]
        N = len(self.rows[0])
        eqs = [[reduced[k][c] for k in range(len(reduced))] for c in range(N)]
        coeffs = nullspace(eqs, len(reduced))
        vecs = [[sum((c[k] * self.rows[k][col] for k in range(len(c))), Fraction(0)) for col in range(N)] for c in coeffs]
        return Subspace(self.n, *rref(vecs))

    __and__ = intersect

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"

    def image(self, f) -> "Subspace":
        """Span of f(b) over the basis; f must be linear."""
        return Subspace.span(self.n, (f(b) for b in self.basis))

    def leading_slots(self) -> list[tuple[int, int]]:
        return [slots(self.n)[p] for p in self.pivots]


def product_span(U: Subspace, V: Subspace) -> Subspace:
    """Span of u o v over basis pairs."""
    U._check(V.n)
    return Subspace.span(U.n, (u.circ(v) for u in U.basis for v in V.basis))


def power_span(S: Subspace, k: int) -> Subspace:
    """Left-normed power S^{o k} = (...(S o S) o ...) o S."""
    out = S
    for _ in range(k - 1):
        out = product_span(out, S)
    return out


def annihilator_mod(S: Subspace, target: Subspace, W: Subspace) -> Subspace:
    """{x in S : x o t in W for every t in target}, as one linear solve."""
    S._check(target.n)
    S._check(W.n)
    if not target.rows or not S.rows:
        return S
    cols = []  # one column per basis vector of S: stacked residues of s o t mod W
    for s in S.basis:
        col = []
        for t in target.basis:
            col.extend(W.reduce_vector(s.circ(t).vector()))
        cols.append(col)
    eqs = [[col[r] for col in cols] for r in range(len(cols[0]))]
    coeffs = nullspace(eqs, len(cols))
    basis = S.basis
    out = []
    for c in coeffs:
        x = UTMatrix.zero(S.n)
        for ck, b in zip(c, basis):
            if ck:
                x = x + ck * b
        out.append(x)
    return Subspace.span(S.n, out)


def unipotent_conjugator(pairs: Sequence[tuple[UTMatrix, UTMatrix]]) -> UTMatrix | None:
    """Unit upper triangular P with P A = D P for every (A, D) in ``pairs``.

    Used to diagonalize commuting idempotent-like elements inside the upper
    triangular group.  Returns None when no such P exists.
    """
    n = pairs[0][0].n
    unknowns = [(i, j) for i, j in slots(n) if i < j]
    index = {s: k for k, s in enumerate(unknowns)}
    rows, rhs = [], []
    for A, D in pairs:
        # (P A - D P)_{ij} = sum_k P_ik A_kj - sum_k D_ik P_kj
        for i, j in slots(n):
            row = [Fraction(0)] * len(unknowns)
            const = Fraction(0)
            for k in range(i, j + 1):
                a = A[(k, j)]
                if a:
                    if k == i:
                        const += a
                    else:
                        row[index[(i, k)]] += a
                d = D[(i, k)]
                if d:
                    if k == j:
                        const -= d
                    else:
                        row[index[(k, j)]] -= d
            rows.append(row)
            rhs.append(-const)
    sol = solve(rows, rhs, len(unknowns))
    if sol is None:
        return None
    P = UTMatrix(n, {(i, i): 1 for i in range(1, n + 1)} | {s: v for s, v in zip(unknowns, sol)})
    for A, D in pairs:
        if P @ A != D @ P:
            raise AssertionError("conjugator solve produced an inconsistent matrix")
    return P
