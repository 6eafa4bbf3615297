"""Sparse multivariate polynomials over F_q.

Terms are held in a dict mapping exponent tuples to nonzero coefficient
codes, so the zero polynomial is exactly the empty dict.  Exponent vectors
are plain tuples of nonnegative ints; lexicographic order compares the
first differing coordinate.
"""

from __future__ import annotations

import math

from .errors import ArityMismatch, BadEll, MixedFields, ZeroPolynomial
from .ffield import FieldElement, FieldSpec

_EXP_GUARD = 1 << 20


class _NegInfinity:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return not isinstance(other, _NegInfinity)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInfinity)

    def __neg__(self):
        raise TypeError("cannot negate -infinity degree sentinel")

    def __add__(self, other):
        return self

    def __sub__(self, other):
        return self

    def __repr__(self):
        return "NEG_INFINITY"


NEG_INFINITY = _NegInfinity()


# --- multi-index utilities ---


def lex_compare(a, b) -> int:
    """-1, 0 or 1 according to the lexicographic order on exponent tuples."""
    if len(a) != len(b):
        raise ArityMismatch(f"arity {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return 0


def binom_multi(a, b) -> int:
    """Product of componentwise binomials, 0 if any b_i > a_i. Exact integer."""
    if len(a) != len(b):
        raise ArityMismatch(f"arity {len(a)} vs {len(b)}")
    out = 1
    for x, y in zip(a, b):
        if y > x:
            return 0
        if x >= _EXP_GUARD:
            raise OverflowError(f"exponent {x} exceeds guard {_EXP_GUARD}")
        out *= math.comb(x, y)
    return out


def weighted_degree(alpha, ell: int) -> int:
    """alpha_1 + ... + alpha_{n-1} + ell * alpha_n."""
    if ell < 2:
        raise BadEll(f"ell = {ell} must be >= 2")
    if len(alpha) < 2:
        raise ArityMismatch("weighted degree needs arity >= 2")
    return sum(alpha[:-1]) + ell * alpha[-1]


def compositions(n: int, total: int):
    """All tuples in Z_{>=0}^n summing to `total`, in lex order."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(n - 1, total - first):
            yield (first,) + rest


def monomials_upto(n: int, max_degree: int):
    """Exponent tuples of total degree <= max_degree, degree-then-lex order."""
    out = []
    for d in range(max_degree + 1):
        out.extend(compositions(n, d))
    return out


# --- the polynomial type ---


class SparsePoly:
    """Immutable sparse polynomial; coefficients stored as field codes."""

    __slots__ = ("spec", "arity", "terms")

    def __init__(self, spec: FieldSpec, arity: int, terms: dict):
        self.spec = spec
        self.arity = arity
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors --

    @classmethod
    def zero(cls, spec, arity):
        return cls(spec, arity, {})

    @classmethod
    def constant(cls, spec, arity, code):
        return cls(spec, arity, {(0,) * arity: code})

    @classmethod
    def one(cls, spec, arity):
        return cls.constant(spec, arity, spec.one)

    @classmethod
    def variable(cls, spec, arity, index):
        exp = tuple(1 if i == index else 0 for i in range(arity))
        return cls(spec, arity, {exp: spec.one})

    @classmethod
    def from_int_terms(cls, spec, arity, int_terms: dict):
        """Build from {exponent tuple: integer}; integers reduced into F_q."""
        return cls(spec, arity, {e: spec.from_int(c) for e, c in int_terms.items()})

    # -- basic queries --

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(sum(e) for e in self.terms)

    def coeff(self, exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.spec == other.spec
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, self.arity, frozenset(self.terms.items())))

    def _check(self, other: "SparsePoly"):
        if self.spec != other.spec:
            raise MixedFields("polynomials over different fields")
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    # -- arithmetic --

    def __add__(self, other):
        self._check(other)
        add = self.spec.add
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = add(terms.get(e, 0), c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return SparsePoly(self.spec, self.arity, terms)

    def __neg__(self):
        neg = self.spec.neg
        return SparsePoly(self.spec, self.arity, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        add, mul = self.spec.add, self.spec.mul
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = add(terms.get(e, 0), mul(c1, c2))
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return SparsePoly(self.spec, self.arity, terms)

    def scale(self, code: int) -> "SparsePoly":
        mul = self.spec.mul
        return SparsePoly(self.spec, self.arity, {e: mul(c, code) for e, c in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = SparsePoly.one(self.spec, self.arity)
        for _ in range(e):
            result = result * self
        return result

    # -- evaluation --

    def eval_codes(self, point) -> int:
        """Evaluate at a point given as a tuple of element codes."""
        if len(point) != self.arity:
            raise ArityMismatch(f"point arity {len(point)} vs {self.arity}")
        spec = self.spec
        powers = {}
        acc = 0
        for exp, c in self.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    w = powers.get(key)
                    if w is None:
                        w = spec.pow_(point[i], e)
                        powers[key] = w
                    v = spec.mul(v, w)
            acc = spec.add(acc, v)
        return acc

    def evaluate(self, point) -> FieldElement:
        codes = tuple(
            c.code if isinstance(c, FieldElement) else c for c in point
        )
        return FieldElement(self.spec, self.eval_codes(codes))

    def __repr__(self):
        if not self.terms:
            return "SparsePoly(0)"
        parts = [f"{self.spec.element_to_json(c)}*x^{e}" for e, c in sorted(self.terms.items())]
        return "SparsePoly(" + " + ".join(parts) + ")"


# --- operations from the build contract ---


def min_lex_exponent(f: SparsePoly):
    """Lex-least exponent of a nonzero polynomial, with its coefficient."""
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial has no least exponent")
    best = None
    for e in f.terms:
        if best is None or lex_compare(e, best) < 0:
            best = e
    return best, FieldElement(f.spec, f.terms[best])


def hasse_derivative(P: SparsePoly, beta) -> SparsePoly:
    """Termwise Hasse derivative: c_a * C(a, beta) * x^(a - beta)."""
    beta = tuple(beta)
    if len(beta) != P.arity:
        raise ArityMismatch(f"beta arity {len(beta)} vs {P.arity}")
    spec = P.spec
    add, mul = spec.add, spec.mul
    terms = {}
    for alpha, c in P.terms.items():
        bc = binom_multi(alpha, beta)
        if bc == 0:
            continue
        bc_code = spec.from_int(bc)
        if bc_code == 0:
            continue
        e = tuple(a - b for a, b in zip(alpha, beta))
        s = add(terms.get(e, 0), mul(c, bc_code))
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    return SparsePoly(spec, P.arity, terms)


def compose(P: SparsePoly, h) -> SparsePoly:
    """Exact substitution P(h_1, ..., h_n); powers of each h_i are memoized."""
    h = list(h)
    if len(h) != P.arity:
        raise ArityMismatch(f"{len(h)} substituents for arity {P.arity}")
    if not h:
        raise ArityMismatch("empty substitution")
    spec = P.spec
    out_arity = h[0].arity
    for hi in h:
        if hi.spec != spec:
            raise MixedFields("substituents over a different field")
        if hi.arity != out_arity:
            raise ArityMismatch("substituents with mixed arity")
    powers = [[SparsePoly.one(spec, out_arity)] for _ in h]
    result = SparsePoly.zero(spec, out_arity)
    for exp, c in P.terms.items():
        term = SparsePoly.constant(spec, out_arity, c)
        for i, e in enumerate(exp):
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * h[i])
            term = term * cache[e]
        result = result + term
    return result


def expand_shift(P: SparsePoly) -> dict:
    """Hasse-derivative table by brute-force expansion of P(x+y).

    Substitutes x_i + y_i in 2n variables via generic composition and
    collects coefficients of y^beta.  Independent oracle for
    `hasse_derivative`: no binomial coefficients are used here.
    """
    n = P.arity
    spec = P.spec
    shifted_vars = []
    for i in range(n):
        xi = SparsePoly.variable(spec, 2 * n, i)
        yi = SparsePoly.variable(spec, 2 * n, n + i)
        shifted_vars.append(xi + yi)
    big = compose(P, shifted_vars)
    table = {}
    for exp, c in big.terms.items():
        x_part, y_part = exp[:n], exp[n:]
        bucket = table.setdefault(y_part, {})
        bucket[x_part] = spec.add(bucket.get(x_part, 0), c)
    out = {}
    for beta, terms in table.items():
        poly = SparsePoly(spec, n, terms)
        if not poly.is_zero():
            out[beta] = poly
    return out


# --- serialization ---


def poly_to_json(P: SparsePoly) -> dict:
    terms = [
        {"exp": list(e), "coeff": P.spec.element_to_json(c)}
        for e, c in sorted(P.terms.items())
    ]
    return {"field": P.spec.to_json(), "arity": P.arity, "terms": terms}


def poly_from_json(doc: dict, spec: FieldSpec = None) -> SparsePoly:
    from .ffield import field_from_json

    if spec is None:
        spec = field_from_json(doc["field"])
    arity = doc["arity"]
    terms = {}
    for t in doc["terms"]:
        exp = tuple(t["exp"])
        if len(exp) != arity:
            raise ArityMismatch(f"term exponent {exp} has wrong arity")
        terms[exp] = spec.element_from_json(t["coeff"])
    return SparsePoly(spec, arity, terms)
