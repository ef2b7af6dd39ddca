import itertools
import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gtorsion.oracle import (element_order_in_h1, finite_quotient_search, h1_invariants,
                             is_identity_perm, permutation_eval, smith_normal_form, todd_coxeter)
from gtorsion.oracle.fox import alexander_polynomial
from gtorsion.oracle.quotients import compose, evaluate, invert, is_nonabelian
from gtorsion.oracle.smith import vector_order
from gtorsion.presentation import (Presentation, Slope, dehn_fill, figure_eight_diagram,
                                   lin_presentation, torus_presentation, trefoil_diagram,
                                   wirtinger)
from gtorsion.word import Alphabet, Word

from conftest import random_word

matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def determinantal_divisors(M):
    """d_k = gcd of all k x k minors, computed independently with sympy."""
    A = sympy.Matrix(M)
    out = []
    for k in range(1, min(A.shape) + 1):
        g = 0
        for rows in itertools.combinations(range(A.rows), k):
            for cols in itertools.combinations(range(A.cols), k):
                g = math.gcd(g, int(A.extract(list(rows), list(cols)).det()))
        out.append(g)
    return out


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(M):
    snf = smith_normal_form(M)
    f = [abs(d) for d in snf.factors]
    dd = determinantal_divisors(M)
    prods = list(itertools.accumulate(f, lambda a, b: a * b))
    assert prods == dd
    nz = [d for d in f if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert f == sorted(f, key=lambda d: (d == 0, d))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_transforms_are_valid(M):
    snf = smith_normal_form(M)
    U, V = sympy.Matrix(snf.U), sympy.Matrix(snf.V)
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    D = U * sympy.Matrix(M) * V
    for i in range(D.rows):
        for j in range(D.cols):
            want = snf.factors[i] if i == j and i < len(snf.factors) else 0
            assert D[i, j] == want


@settings(max_examples=100, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_snf_invariant_under_unimodular_changes(M, rnd):
    """Row and column operations over Z never change the invariant factors."""
    A = [list(r) for r in M]
    for _ in range(8):
        op = rnd.randrange(4)
        if op == 0 and len(A) > 1:
            i, j = rnd.sample(range(len(A)), 2)
            k = rnd.randint(-3, 3)
            A[i] = [a + k * b for a, b in zip(A[i], A[j])]
        elif op == 1 and len(A[0]) > 1:
            i, j = rnd.sample(range(len(A[0])), 2)
            k = rnd.randint(-3, 3)
            for r in A:
                r[i] += k * r[j]
        elif op == 2:
            i = rnd.randrange(len(A))
            A[i] = [-a for a in A[i]]
        else:
            rnd.shuffle(A)
    assert [abs(d) for d in smith_normal_form(A).factors] == \
        [abs(d) for d in smith_normal_form(M).factors]


@pytest.mark.parametrize("M,inv", [
    ([[2, 0], [0, 3]], [6]),
    ([[2, 4], [6, 8]], [2, 4]),
    ([[0, 0]], [0, 0]),
    ([[5]], [5]),
    ([[1, 1, 1]], [0, 0]),
    ([[4, 6]], [2, 0]),
])
def test_snf_examples(M, inv):
    assert smith_normal_form(M).invariants() == inv


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.randoms(use_true_random=False))
def test_element_order_against_rational_solve(v, rnd):
    """For a full-rank square M, k v lies in the row lattice iff k (v M^-1) is
    integral, so the order is the lcm of the denominators of v M^-1."""
    rows = [[rnd.randint(-4, 4) for _ in range(3)] for _ in range(3)]
    M = sympy.Matrix(rows)
    if M.det() == 0:
        # singular: v has infinite order exactly when it leaves the rational span
        leaves = sympy.Matrix(rows + [v]).rank() > M.rank()
        assert (vector_order(smith_normal_form(rows), v) == 0) == leaves
        return
    coords = sympy.Matrix([v]) * M.inv()
    want = math.lcm(*(int(sympy.fraction(c)[1]) for c in coords))
    assert vector_order(smith_normal_form(rows), v) == want


def test_element_order_in_filled_group():
    F = dehn_fill(lin_presentation(1, 1), Slope(6, 1))
    a, b, t = F.alphabet.gens()
    assert h1_invariants(F) == [6]
    assert element_order_in_h1(F, t) == 6
    assert element_order_in_h1(F, t ** 2) == 3
    assert element_order_in_h1(F, a) == 1


# --------------------------------------------------------------------------
# coset enumeration

def _group(gens, rels):
    A = Alphabet(gens)
    return Presentation(A, tuple(Word.parse(A, r) for r in rels))


@pytest.mark.parametrize("gens,rels,order", [
    (("x",), ["x"], 1),
    (("x",), ["x^7"], 7),
    (("x", "y"), ["x^2", "y^3", "x y x y x y"], 12),
    (("x", "y"), ["x^2", "y^3", "x y x y x y x y"], 24),
    (("x", "y"), ["x^2", "y^3", "x y x y x y x y x y"], 60),
    (("x", "y"), ["x^2", "y^2", "x y x y x y"], 6),
    (("x", "y"), ["x y x^-1 y^-1", "x^3", "y^4"], 12),
])
def test_todd_coxeter_known_orders(gens, rels, order):
    t = todd_coxeter(_group(gens, rels), cap=2000)
    assert t.complete and t.index == order


def test_todd_coxeter_subgroup_index():
    P = _group(("x", "y"), ["x^2", "y^3", "x y x y x y x y x y"])
    t = todd_coxeter(P, [P.word("x")], cap=2000)
    assert t.index == 30


def test_todd_coxeter_overflow_on_infinite_group():
    t = todd_coxeter(_group(("x", "y"), ["x y x^-1 y^-1"]), cap=500)
    assert t.status == "overflow" and t.index is None
    with pytest.raises(ValueError):
        permutation_eval(t, Word.parse(Alphabet(("x", "y")), "x"))


def test_coset_action_is_a_homomorphism():
    P = dehn_fill(torus_presentation(2, 3), Slope(1, 1))
    t = todd_coxeter(P, cap=10_000)
    assert t.index == 120
    rng = random.Random(2)
    for _ in range(50):
        u, v = random_word(rng, P.alphabet), random_word(rng, P.alphabet)
        pu, pv, puv = (permutation_eval(t, w) for w in (u, v, u * v))
        # right action: k . (uv) = (k . u) . v
        assert puv == tuple(pv[pu[k]] for k in range(len(pu)))
    for r in P.relators:
        assert is_identity_perm(permutation_eval(t, r))


def test_figure_eight_filling_overflows():
    P = dehn_fill(wirtinger(figure_eight_diagram())[0], Slope(1, 1))
    assert todd_coxeter(P, cap=10_000).status == "overflow"


def test_todd_coxeter_is_deterministic():
    P = dehn_fill(torus_presentation(2, 3), Slope(1, 1))
    assert todd_coxeter(P).table == todd_coxeter(P).table


# --------------------------------------------------------------------------
# permutation quotients

def test_permutation_helpers():
    a, b = (1, 0, 2), (0, 2, 1)
    assert compose(a, invert(a)) == (0, 1, 2)
    assert is_nonabelian((a, b))
    assert not is_nonabelian((a, a))


@pytest.mark.parametrize("P", [
    torus_presentation(2, 3),
    lin_presentation(1, 1),
    dehn_fill(torus_presentation(2, 5), Slope(3, 1)),
])
def test_quotient_search_always_finds_trivial_and_respects_relators(P):
    qs = finite_quotient_search(P, degree=3)
    ident = (0, 1, 2)
    assert tuple(ident for _ in P.generators) in qs.homomorphisms
    assert qs.exhaustive
    for im in qs.homomorphisms:
        for r in P.relators:
            assert evaluate(im, r) == ident


def test_poincare_sphere_group_has_a5_quotient():
    P = dehn_fill(torus_presentation(2, 3), Slope(1, 1))
    qs = finite_quotient_search(P, degree=5)
    assert any(is_nonabelian(im) for im in qs.homomorphisms)


def test_trefoil_has_s3_quotient():
    qs = finite_quotient_search(wirtinger(trefoil_diagram())[0], degree=3)
    assert any(is_nonabelian(im) for im in qs.homomorphisms)


def test_sampled_search_is_seeded():
    P = torus_presentation(2, 3)
    a = finite_quotient_search(P, degree=6, samples=300, seed=3)
    b = finite_quotient_search(P, degree=6, samples=300, seed=3)
    assert a.homomorphisms == b.homomorphisms and not a.exhaustive


# --------------------------------------------------------------------------
# Fox calculus

@pytest.mark.parametrize("P,poly", [
    (wirtinger(trefoil_diagram())[0], (1, -1, 1)),
    (wirtinger(figure_eight_diagram())[0], (-1, 3, -1)),
    (torus_presentation(2, 3), (1, -1, 1)),
    (torus_presentation(2, 5), (1, -1, 1, -1, 1)),
    (lin_presentation(1, 1), (-1, 3, -1)),
    (lin_presentation(1, -1), (1, -1, 1)),
])
def test_alexander_polynomials(P, poly):
    assert alexander_polynomial(P) == poly


@pytest.mark.parametrize("p,q", [(1, 1), (2, 3), (3, -2), (1, -4)])
def test_lin_alexander_middle_coefficient(p, q):
    c = alexander_polynomial(lin_presentation(p, q))
    assert c == (-p * q, 2 * p * q + 1, -p * q)
