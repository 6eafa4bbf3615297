import itertools
import random

import pytest

from ffkakeya.errors import ZeroPolynomial
from ffkakeya.ffield import make_field
from ffkakeya.mpoly import SparsePoly, compose, compositions, hasse_derivative
from ffkakeya.multiplicity import (
    INFINITE,
    corollary_zero_check,
    mult_at,
    schwartz_zippel_audit,
    vanishes_with_mult,
)

from .test_mpoly import random_poly


def test_double_zero(F5):
    P = SparsePoly.from_int_terms(F5, 2, {(2, 0): 1})
    assert mult_at(P, (0, 0)).mult == 2


def test_triple_zero_witness(F5):
    P = SparsePoly.from_int_terms(F5, 2, {(2, 1): 1})
    report = mult_at(P, (0, 0))
    assert report.mult == 3
    assert report.witness == (2, 1)


def test_zero_poly_infinite(F5):
    assert mult_at(SparsePoly.zero(F5, 2), (1, 2)).mult is INFINITE


def test_mult_positive_iff_root(F7):
    rng = random.Random(21)
    for _ in range(100):
        n = rng.randint(1, 3)
        P = random_poly(rng, F7, n, 4)
        a = tuple(rng.randrange(7) for _ in range(n))
        if P.is_zero():
            continue
        assert (mult_at(P, a).mult >= 1) == (P.eval_codes(a) == 0)


def test_vanishes_with_mult_parabola(F7):
    par = SparsePoly.from_int_terms(F7, 2, {(0, 1): 1, (2, 0): -1})
    P = par * par
    A = [(l, l * l % 7) for l in range(7)]
    assert vanishes_with_mult(P, A, 2).ok
    bad = vanishes_with_mult(P, A, 3)
    assert not bad.ok and bad.point is not None and bad.beta is not None


def test_vacuous_empty_set(F3):
    P = SparsePoly.from_int_terms(F3, 2, {(1, 0): 1})
    assert vanishes_with_mult(P, [], 5).ok


def test_audit_equality_case(F3):
    rep = schwartz_zippel_audit(SparsePoly.from_int_terms(F3, 2, {(1, 1): 1}), range(3))
    assert (rep.total_mult, rep.bound, rep.ok) == (6, 6, True)


def test_audit_linear_f2(F2):
    rep = schwartz_zippel_audit(SparsePoly.from_int_terms(F2, 2, {(1, 0): 1}), range(2))
    assert (rep.total_mult, rep.bound, rep.ok) == (2, 2, True)


def test_audit_constant(F5):
    rep = schwartz_zippel_audit(SparsePoly.from_int_terms(F5, 2, {(0, 0): 1}), range(5))
    assert (rep.total_mult, rep.bound, rep.ok) == (0, 0, True)


def test_audit_zero_poly_rejected(F5):
    with pytest.raises(ZeroPolynomial):
        schwartz_zippel_audit(SparsePoly.zero(F5, 2), range(5))


def test_audit_random_never_exceeds():
    rng = random.Random(22)
    for q in (3, 5, 7):
        spec = make_field(q)
        for _ in range(40):
            n = rng.randint(1, 3)
            P = random_poly(rng, spec, n, 4)
            if P.is_zero():
                continue
            assert schwartz_zippel_audit(P, range(q)).ok


def test_derivative_mult_lower_bound():
    rng = random.Random(23)
    for _ in range(150):
        spec = make_field(rng.choice([2, 3, 5]))
        n = rng.randint(1, 2)
        P = random_poly(rng, spec, n, 3)
        a = tuple(rng.randrange(spec.q) for _ in range(n))
        # seed extra multiplicity at a
        for _ in range(rng.randint(0, 2)):
            i = rng.randrange(n)
            lin = SparsePoly.variable(spec, n, i) - SparsePoly.constant(spec, n, a[i])
            P = P * lin
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        base = mult_at(P, a).mult
        d = mult_at(hasse_derivative(P, beta), a).mult
        if base is INFINITE or d is INFINITE:
            continue
        assert d >= base - sum(beta)


def test_composition_mult_lower_bound():
    rng = random.Random(24)
    for _ in range(150):
        spec = make_field(rng.choice([3, 5]))
        n = rng.randint(1, 3)
        P = random_poly(rng, spec, n, 3)
        h = [random_poly(rng, spec, 1, 2) for _ in range(n)]
        lam = rng.randrange(spec.q)
        lhs = mult_at(compose(P, h), (lam,)).mult
        rhs = mult_at(P, tuple(hi.eval_codes((lam,)) for hi in h)).mult
        if lhs is INFINITE:
            continue
        assert rhs is not INFINITE and lhs >= rhs


def test_corollary_vacuous_high_degree(F3):
    # x^q - x vanishes everywhere with mult 1, but deg = q so no hypothesis
    P = SparsePoly.from_int_terms(F3, 1, {(3,): 1, (1,): -1})
    assert corollary_zero_check(P, 1)


def test_corollary_zero_poly(F3):
    assert corollary_zero_check(SparsePoly.zero(F3, 2), 3)


def test_corollary_random_low_degree():
    rng = random.Random(25)
    for _ in range(100):
        spec = make_field(rng.choice([2, 3]))
        n = rng.randint(1, 2)
        M = rng.randint(1, 2)
        P = random_poly(rng, spec, n, M * spec.q - 1)
        if P.is_zero():
            continue
        assert corollary_zero_check(P, M)
