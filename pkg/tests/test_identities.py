import itertools
import random
from fractions import Fraction

import pytest

from ujgrade.classify import enumerate_classes
from ujgrade.grading import MT, Elementary, elementary_grading, mt_grading
from ujgrade.group import FiniteAbelianGroup, quotient_mod_involution
from ujgrade.identities import (
    Separator,
    Term,
    TermError,
    UnsupportedTermError,
    act,
    assoc,
    evaluate,
    f_mu,
    in_tau,
    is_graded_identity,
    is_jordan_good,
    jordan_good_sequences_by_tau,
    left_normed,
    lift_term,
    mirror_chain,
    parse_term,
    power,
    power_identity,
    rev_equivalent,
    separating_identity,
    separating_sequence,
    tau_orbit_condition,
    tau_set,
    var,
)
from ujgrade.jordan import UTMatrix, associator, unit

Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))
Z4 = FiniteAbelianGroup((4,))
Z2Z2 = FiniteAbelianGroup((2, 2))
TRIVIAL = FiniteAbelianGroup(())


def basis_oracle(grading, term):
    """A term of degree at most one in each variable vanishes identically iff it
    vanishes whenever every variable is zero or a homogeneous basis vector."""
    variables = term.variables()
    ids = sorted(variables)
    zero = UTMatrix.zero(grading.n)
    choices = [(zero,) + tuple(grading.component(variables[i]).basis) for i in ids]
    for combo in itertools.product(*choices):
        if not evaluate(term, dict(zip(ids, combo)), grading).is_zero():
            return False
    return True


# the set T_m


@pytest.mark.parametrize("m", range(1, 8))
def test_tau_set_matches_pattern_filter(m):
    brute = sorted(s for s in itertools.permutations(range(1, m + 1)) if in_tau(s))
    assert tau_set(m) == brute
    assert len(brute) == 2 ** (m - 1)


def test_tau_set_small():
    assert tau_set(3) == [(1, 2, 3), (2, 1, 3), (3, 1, 2), (3, 2, 1)]
    assert not in_tau((1, 3, 2))
    with pytest.raises(ValueError):
        tau_set(0)


def test_act_is_a_left_action():
    s = ("a", "b", "c", "d")
    for sigma, rho in itertools.product(itertools.permutations(range(1, 5)), repeat=2):
        composed = tuple(sigma[rho[k] - 1] for k in range(4))
        assert act(sigma, act(rho, s)) == act(composed, s)
    assert act((2, 3, 1), "xyz") == ("z", "x", "y")


def test_rev_equivalent_examples():
    assert rev_equivalent("abc", "cba")
    assert rev_equivalent("aba", "aba")
    assert not rev_equivalent("abc", "bac")
    with pytest.raises(ValueError):
        rev_equivalent("ab", "abc")


@pytest.mark.parametrize("length", range(1, 5))
def test_reversal_matches_orbit_condition(length):
    for s, s2 in itertools.product(itertools.product("ab", repeat=length), repeat=2):
        assert rev_equivalent(s, s2) == tau_orbit_condition(s, s2)


# evaluation


def test_evaluate_examples():
    term = assoc(var(1, (0,)), var(2, (0,)), var(3, (1,)))
    e11, e12 = unit(2, 1, 1), unit(2, 1, 2)
    assert evaluate(term, {1: e11, 2: e11, 3: e12}) == associator(e11, e11, e12)
    assert evaluate(Term.zero(), {1: e11}).is_zero()
    with pytest.raises(TermError):
        evaluate(Term.zero(), {})
    sq = power(var(1, (0,)), 3)
    x = UTMatrix.from_rows([[1, 2], [0, 3]])
    assert evaluate(sq, {1: x}) == x.circ(x).circ(x)


def test_evaluate_errors():
    g = elementary_grading(Z2, [(1,)])
    term = var(1, (1,)).circ(var(2, (0,)))
    with pytest.raises(TermError):
        evaluate(term, {1: unit(2, 1, 2)})
    with pytest.raises(TermError):
        evaluate(term, {1: unit(2, 1, 1), 2: unit(2, 1, 1)}, grading=g)


# graded identity decisions


def test_power_identity_decisions():
    # degree-t elements of an elementary grading are strictly upper, hence nilpotent;
    # an MT grading puts a non-nilpotent diagonal element in degree t
    for n in (2, 3, 4):
        assert not is_graded_identity(mt_grading(Z2, (1,), [(0,)] * (n // 2), n), power_identity((1,), n))
        assert is_graded_identity(elementary_grading(Z2, [(1,)] * (n - 1)), power_identity((1,), n))
        assert not is_graded_identity(elementary_grading(Z2, [(1,)] * (n - 1)), power_identity((1,), n - 1))


def test_identity_trivialities():
    g = elementary_grading(Z3, [(1,), (2,)])
    assert is_graded_identity(g, Term.zero())
    x, y = var(1, (1,)), var(2, (0,))
    assert is_graded_identity(g, x.circ(y) - y.circ(x))
    assert not is_graded_identity(g, x.circ(y))
    # no nonzero element of degree 2 squares to a nonzero element in this grading
    assert is_graded_identity(g, var(1, (2,)).circ(var(2, (2,))))
    with pytest.raises(TermError):
        is_graded_identity(g, var(1, (0, 0)))


def test_unsupported_terms_are_reported():
    g = elementary_grading(Z2, [(1,)])
    x, y = var(1, (0,)), var(2, (0,))
    with pytest.raises(UnsupportedTermError):
        is_graded_identity(g, x.circ(x).circ(y))


def _random_multilinear(G, rng, size):
    degs = [rng.choice(G.elements) for _ in range(size)]
    xs = [var(k + 1, d) for k, d in enumerate(degs)]
    out = Term.zero()
    for _ in range(rng.randint(1, 3)):
        perm = rng.sample(xs, size)
        if size >= 3 and rng.random() < 0.5:
            mono = assoc(*perm[:3])
            for extra in perm[3:]:
                mono = mono.circ(extra)
        else:
            mono = left_normed(*perm)
        out = out + mono * Fraction(rng.choice([1, -1, 2]))
    return out


@pytest.mark.parametrize("seed", range(12))
def test_decision_matches_basis_oracle(seed):
    rng = random.Random(seed)
    labels = enumerate_classes(Z2, 3) + enumerate_classes(Z3, 3)
    for _ in range(8):
        L = rng.choice(labels)
        term = _random_multilinear(L.group, rng, rng.randint(2, 4))
        grading = L.grading()
        assert is_graded_identity(grading, term) == basis_oracle(grading, term), (L, term)


def test_collapsed_lifted_term_matches_oracle():
    # lifted terms expand each variable into two; the collapsed check must agree with brute force
    Q = quotient_mod_involution(Z4, (2,))
    for L in enumerate_classes(Z4, 3):
        if not isinstance(L, MT):
            continue
        for mu in [((1,),), ((0,), (1,)), ((1,), (1,))]:
            term = lift_term(f_mu(Q.group, mu), Q, (2,))
            grading = L.grading()
            assert is_graded_identity(grading, term) == basis_oracle(grading, term)


# sequences and f_mu


def test_f_mu_shapes():
    x1 = var(1, (2,))
    assert f_mu(Z3, [(2,)]) == x1
    e = (0,)
    assert f_mu(Z3, [e]) == assoc(var(1, e), var(2, e), var(3, e))
    assert f_mu(Z3, [(2,), e]) == x1.circ(assoc(var(4, e), var(5, e), var(6, e)))
    with pytest.raises(TermError):
        f_mu(Z3, [])


def test_jordan_good_examples():
    eta = [(1,), (2,)]
    assert is_jordan_good(Z3, eta, [(1,), (2,)])
    assert is_jordan_good(Z3, eta, [(2,), (1,)])
    assert is_jordan_good(Z3, eta, [(0,)])  # a diagonal idempotent
    assert not is_jordan_good(Z3, eta, [(1,), (1,)])
    assert is_jordan_good(Z3, eta, [])
    assert jordan_good_sequences_by_tau([(1,), (2,)]) == {((1,), (2,)), ((2,), (1,))}


@pytest.mark.parametrize("G", [TRIVIAL, Z2, Z3])
@pytest.mark.parametrize("n", [2, 3])
def test_f_mu_is_identity_iff_sequence_bad(G, n):
    for eta in itertools.product(G.elements, repeat=n - 1):
        grading = elementary_grading(G, eta)
        for m in range(1, n):
            for mu in itertools.product(G.elements, repeat=m):
                assert is_graded_identity(grading, f_mu(G, mu)) != is_jordan_good(G, eta, mu)


def test_separating_sequence():
    mu, which = separating_sequence(Z3, [(1,), (1,)], [(1,), (2,)])
    assert is_jordan_good(Z3, [(1,), (1,)] if which == 1 else [(1,), (2,)], mu)
    assert not is_jordan_good(Z3, [(1,), (2,)] if which == 1 else [(1,), (1,)], mu)
    with pytest.raises(ValueError):
        separating_sequence(Z3, [(1,), (2,)], [(2,), (1,)])


# separators


def test_separator_kinds():
    trivial, classical = Elementary(Z2, [(0,)]), Elementary(Z2, [(1,)])
    sep = separating_identity(trivial, classical)
    assert sep.kind == "sequence" and sep.verify()
    assert separating_identity(Elementary(Z2, [(0,)]), MT(Z2, 2, (1,), ((0,),))).kind == "power"
    assert separating_identity(MT(Z2Z2, 2, (1, 0), ((0, 0),)), MT(Z2Z2, 2, (0, 1), ((0, 0),))).kind == "power"
    lifted = separating_identity(MT(Z4, 3, (2,), ((0,),)), MT(Z4, 3, (2,), ((1,),)))
    assert lifted.kind == "lifted" and lifted.verify()
    chain = separating_identity(MT(Z2, 2, (1,), ((0,),)), MT(Z2, 2, (1,), ((1,),)))
    assert chain.kind == "chain" and chain.verify()
    with pytest.raises(ValueError):
        separating_identity(classical, Elementary(Z2, [(1,)]))


def test_chain_separates_middle_entries_at_n4():
    a, b = MT(Z4, 4, (2,), ((1,), (0,))), MT(Z4, 4, (2,), ((1,), (2,)))
    sep = separating_identity(a, b)
    assert sep.kind == "chain"
    assert isinstance(sep, Separator)
    assert {str(sep.holds_in), str(sep.fails_in)} == {str(a), str(b)}
    assert sep.verify()


def test_mirror_chain_shape():
    term = mirror_chain(Z2, 2, (1,), [(1,)])
    assert term == assoc(var(1, (1,)), var(2, (1,)), var(3, (1,)))
    assert len(mirror_chain(Z2, 4, (1,), [(0,), (1,)]).variables()) == 9


# term literals


def test_parse_term_forms():
    x1, x2, x3 = var(1, (0,)), var(2, (0,)), var(3, (1,))
    assert parse_term("assoc(x1:0, x2:0, x3:1)", Z2) == assoc(x1, x2, x3)
    assert parse_term("(x1:0 o x2:0 o x3:1)", Z2) == left_normed(x1, x2, x3)
    assert parse_term("pow(x3:1, 3)", Z2) == power(x3, 3)
    assert parse_term("2*(x1:0 o x3:1) - (x3:1 o x1:0)", Z2) == x1.circ(x3) * 2 - x3.circ(x1)
    assert parse_term("x1:(1,0)", Z2Z2) == var(1, (1, 0))
    assert parse_term("-x1:0 + x1:0", Z2).is_zero()


@pytest.mark.parametrize("text", ["", "x1", "assoc(x1:0, x2:0)", "pow(x1:0, 1/2)", "(x1:0 o", "x1:(1,0)", "x1:0 x2:0"])
def test_parse_term_errors(text):
    with pytest.raises(TermError):
        parse_term(text, Z2)
