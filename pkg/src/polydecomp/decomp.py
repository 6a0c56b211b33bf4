"""Deciding and constructing functional decompositions f = g(h(x)).

The monic case over any Q-algebra is solved by a coefficient recursion:
the coefficient of x^(N-k) in h^n is n*h_{m-k} plus a polynomial in the
higher coefficients of h, so the top half of f determines a unique monic
candidate h with h(0) = 0, and the h-adic digits of f then decide the
question.  Field decomposition reduces to the monic case by a linear
change; quartics additionally get a closed form and, over Z and the
imaginary-quadratic orders, an exact over-the-ring decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from .poly import MINUS_INFINITY, Polynomial, compose, derivative, hadic_digits
from .domains import (CapabilityError, SubringDescriptor, Tier,
                      descend_element, embed_element, embed_poly, hull_of,
                      require_tier)


class Decomposition:
    """A verified pair g, h with deg g, deg h >= 2.

    The recomposition compose(g, h) is retained so consumers can audit the
    claim without recomputing it.
    """

    __slots__ = ("g", "h", "certificate")

    def __init__(self, g: Polynomial, h: Polynomial):
        if g.degree is MINUS_INFINITY or g.degree < 2:
            raise ValueError("outer factor must have degree at least 2")
        if h.degree is MINUS_INFINITY or h.degree < 2:
            raise ValueError("inner factor must have degree at least 2")
        self.g = g
        self.h = h
        self.certificate = compose(g, h)

    def __iter__(self):
        return iter((self.g, self.h))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.g == other.g and self.h == other.h

    def __hash__(self) -> int:
        return hash((self.g, self.h))

    def __repr__(self) -> str:
        return f"Decomposition(g={self.g!s}, h={self.h!s})"


@dataclass(frozen=True)
class NormalizationParams:
    """Record of the linear change absorbed while making a pair monic.

    u and v are the leading coefficients of the original outer and inner
    factors; the inserted linear map is x -> v*x + H(0), and constant_shift
    is the value f(0) moved out of the outer factor.
    """

    u: Any
    v: Any
    constant_shift: Any


class RingDecideStatus(str, Enum):
    DECOMPOSABLE_OVER_RING = "decomposable_over_ring"
    INDECOMPOSABLE_OVER_RING = "indecomposable_over_ring"
    INDECOMPOSABLE_OVER_FIELD = "indecomposable_over_field"


@dataclass(frozen=True)
class CandidateCheck:
    """How one candidate leading coefficient u fared in the ring decision."""

    u: Any
    square_divides_lead: bool
    divides_linear: bool
    inner_stays_in_ring: bool

    @property
    def passed(self) -> bool:
        return (self.square_divides_lead and self.divides_linear
                and self.inner_stays_in_ring)


@dataclass(frozen=True)
class RingDecideOutcome:
    """Result of the over-the-ring quartic decision.

    Exactly one of three situations holds, named by ``status``.  When the
    polynomial decomposes over the fraction field, ``field_evidence`` holds
    that decomposition; when it also decomposes over the ring,
    ``decomposition`` holds a pair with all coefficients in the ring.
    ``candidates`` records every leading coefficient tried, for audit.
    """

    status: RingDecideStatus
    decomposition: Optional[Decomposition]
    field_evidence: Optional[Decomposition]
    candidates: tuple


def proper_inner_degrees(n: int) -> list[int]:
    """Divisors m of n with 1 < m < n, ascending."""
    return [m for m in range(2, n) if n % m == 0]


def monic_decompose(f: Polynomial, m: int) -> Optional[Decomposition]:
    """The unique monic h (deg m, h(0)=0) with f = g(h), if one exists.

    Works over any domain that divides exactly by nonzero integers.  The
    recursion solves for the coefficients of h from the top of f down:
    with n = deg(f)/m and h = x^m + ... only partially known, the
    coefficient of x^(deg f - k) in h^n differs from the true one by
    exactly n times the unknown h_{m-k}.  Once h is fixed, f decomposes
    through it iff all h-adic digits of f are constants, and those
    constants are the coefficients of g.
    """
    require_tier(f.domain, Tier.QALGEBRA, "monic decomposition")
    N = f.degree
    if N is MINUS_INFINITY or N < 4:
        raise ValueError("degree must be at least 4")
    if not f.is_monic():
        raise ValueError("polynomial must be monic")
    if not (1 < m < N) or N % m != 0:
        raise ValueError(f"inner degree {m} is not a proper divisor of {N}")
    dom = f.domain
    n = N // m

    hc = [dom.zero] * m + [dom.one]
    for k in range(1, m):
        partial = Polynomial(dom, hc, f.var) ** n
        delta = f.coefficient(N - k) - partial.coefficient(N - k)
        hc[m - k] = dom.div_int(delta, n)
    h = Polynomial(dom, hc, f.var)

    digits = hadic_digits(f, h)
    if any(not d.is_constant() for d in digits):
        return None
    g = Polynomial(dom, [d.constant_term for d in digits], f.var)
    dec = Decomposition(g, h)
    if dec.certificate != f:
        return None
    return dec


def coefficients_in_QR(dec: Decomposition, sub: SubringDescriptor) -> bool:
    """Do all coefficients of both factors pass the subring membership?"""
    return all(sub.membership(c) for c in dec.g.coeffs + dec.h.coeffs)


def normalize_monic_decomposition(
        f: Polynomial, G: Polynomial, H: Polynomial,
) -> tuple[Decomposition, NormalizationParams]:
    """Turn an arbitrary decomposition of a monic f into the normal form.

    Given f = G(H) with f monic, returns monic g, h with g(0) = h(0) = 0
    and g(h) = f - f(0), by inserting the linear map x -> v*x + H(0)
    between the factors:

        g = G(v*x + H(0)) - f(0),    h = u * v^(deg G - 1) * (H - H(0)),

    where u, v are the leading coefficients of G, H (so u*v^(deg G) = 1).
    """
    if G.degree is MINUS_INFINITY or G.degree < 2 \
            or H.degree is MINUS_INFINITY or H.degree < 2:
        raise ValueError("both factors must have degree at least 2")
    if compose(G, H) != f:
        raise ValueError("composition mismatch: f is not G(H)")
    if not f.is_monic():
        raise ValueError("f must be monic")
    dom = f.domain
    u = G.leading_coefficient
    v = H.leading_coefficient
    if u * v ** G.degree != dom.one:
        raise ValueError("leading coefficients violate u * v^(deg G) = 1")
    H0 = H.constant_term
    f0 = f.constant_term
    lam = Polynomial(dom, [H0, v], f.var)
    g = compose(G, lam) - f0
    h = (H - H0).scale(u * v ** (G.degree - 1))
    dec = Decomposition(g, h)
    if not (g.is_monic() and h.is_monic()
            and g.constant_term == dom.zero and h.constant_term == dom.zero
            and dec.certificate == f - f0):
        raise ValueError("normalization failed to reach the monic normal form")
    return dec, NormalizationParams(u=u, v=v, constant_shift=f0)


def decompose_over_field(f: Polynomial, m: int) -> Optional[Decomposition]:
    """Decompose f with inner degree m, allowing any leading coefficient.

    Reduces to the monic case via f~ = (f - f(0)) / lc(f) and conjugates
    the answer back, so compose(g, h) = f exactly.  Monic input needs only
    a Q-algebra; a non-monic leading coefficient requires a field.
    """
    N = f.degree
    if N is MINUS_INFINITY or N < 4:
        raise ValueError("degree must be at least 4")
    if f.is_monic():
        return monic_decompose(f, m)
    require_tier(f.domain, Tier.FIELD, "non-monic decomposition")
    dom = f.domain
    lc = f.leading_coefficient
    ftilde = f.map_coefficients(lambda c: dom.div(c, lc))
    inner = monic_decompose(ftilde - ftilde.constant_term, m)
    if inner is None:
        return None
    g = inner.g.scale(lc) + f.constant_term
    return Decomposition(g, inner.h)


def quartic_field_decompose(f: Polynomial) -> Optional[Decomposition]:
    """Closed-form degree-4 test over a field.

    With f = a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0, set c = a3/(2 a4) and
    e = a2 - a4 c^2.  Then f decomposes (necessarily with inner degree 2)
    iff a1 = e*c, in which case f = (a4 x^2 + e x + a0) o (x^2 + c x).
    """
    if f.degree != 4:
        raise ValueError("quartic test needs degree exactly 4")
    require_tier(f.domain, Tier.FIELD, "the quartic closed form")
    dom = f.domain
    a4 = f.coefficient(4)
    c = dom.div(f.coefficient(3), a4 * 2)
    e = f.coefficient(2) - a4 * c * c
    if f.coefficient(1) != e * c:
        return None
    g = Polynomial(dom, [f.constant_term, e, a4], f.var)
    h = Polynomial(dom, [dom.zero, c, dom.one], f.var)
    return Decomposition(g, h)


def quartic_ring_decide(f: Polynomial, bound: int = 10 ** 6) -> RingDecideOutcome:
    """Decide degree-4 decomposability over the coefficient ring itself.

    The fraction field K sees at most one decomposition shape,
    (D x^2 + E x) o (x^2 + C x) after dropping f(0), and every other
    K-decomposition arises from it by a linear insertion, so it has inner
    factor u x^2 + u C x - u v.  Chasing which u, v keep all coefficients
    in the ring R reduces to three conditions on u alone:

        (i) u^2 divides D in R, (ii) u divides E in R, (iii) u*C lies in R,

    and when they hold v = 0 already works, giving

        g = (D/u^2) x^2 + (E/u) x + f(0),   h = u x^2 + u C x.

    (Necessity of (ii): if (2Dv + E)/u lies in R, subtract 2*(uv)*(D/u^2).)
    Candidates u run over divisors of D up to associates, ascending norm.
    The constant f(0) only ever shifts g's constant term, so it changes
    nothing about decomposability over R.
    """
    ring = f.domain
    if not hasattr(ring, "divisors_up_to_associates"):
        raise CapabilityError(
            f"{ring.name} has no divisor enumeration; the over-ring quartic "
            "decision needs one")
    if f.degree != 4:
        raise ValueError("quartic decision needs degree exactly 4")

    field = hull_of(ring)
    dec = quartic_field_decompose(embed_poly(f, field))
    if dec is None:
        return RingDecideOutcome(RingDecideStatus.INDECOMPOSABLE_OVER_FIELD,
                                 None, None, ())

    E = dec.g.coefficient(1)
    C = dec.h.coefficient(1)
    lead = f.leading_coefficient

    candidates = []
    witness_u = None
    for u in ring.divisors_up_to_associates(lead, bound=bound):
        uK = embed_element(u, ring, field)
        cond_i = ring.divides_exact(u * u, lead) is not None
        cond_ii = descend_element(field.div(E, uK), ring) is not None
        cond_iii = descend_element(uK * C, ring) is not None
        check = CandidateCheck(u, cond_i, cond_ii, cond_iii)
        candidates.append(check)
        if check.passed and witness_u is None:
            witness_u = u

    if witness_u is None:
        return RingDecideOutcome(RingDecideStatus.INDECOMPOSABLE_OVER_RING,
                                 None, dec, tuple(candidates))

    u = witness_u
    uK = embed_element(u, ring, field)
    g_ring = Polynomial(ring, [
        f.constant_term,
        descend_element(field.div(E, uK), ring),
        ring.divides_exact(u * u, lead),
    ], f.var)
    h_ring = Polynomial(ring, [
        ring.zero,
        descend_element(uK * C, ring),
        u,
    ], f.var)
    found = Decomposition(g_ring, h_ring)
    if found.certificate != f:
        raise AssertionError("ring decision produced a non-recomposing pair")
    return RingDecideOutcome(RingDecideStatus.DECOMPOSABLE_OVER_RING,
                             found, dec, tuple(candidates))


def linear_relate(h: Polynomial, H: Polynomial) -> Optional[tuple]:
    """Find (a, b) with H = a*h + b, if the two differ by that little.

    In characteristic zero, whenever g(h) = G(H) with deg h = deg H this
    relation must hold, which is what makes the inner factor of a
    decomposition essentially unique.
    """
    if h.degree != H.degree or h.degree is MINUS_INFINITY or h.degree < 1:
        raise ValueError("both polynomials must share a degree >= 1")
    require_tier(h.domain, Tier.FIELD, "relating inner factors")
    dom = h.domain
    a = dom.div(H.leading_coefficient, h.leading_coefficient)
    diff = H - h.scale(a)
    if not diff.is_constant():
        return None
    return (a, diff.constant_term)


def verify_taylor_expansion(G: Polynomial, h: Polynomial, h0: Polynomial,
                            a: Any) -> bool:
    """Check G(a*h + h0) = sum_i G^(i)(h0) * (a*h)^i / i! up to i = deg G.

    Always true over a Q-algebra; exposed so the identity (which drives
    the uniqueness argument for equal-degree inner factors) can be
    exercised directly by tests and from the command line.
    """
    require_tier(G.domain, Tier.QALGEBRA, "Taylor expansion")
    dom = G.domain
    a = dom.coerce(a)
    ah = h.scale(a)
    lhs = compose(G, ah + h0)

    rhs = Polynomial.zero(dom, G.var)
    gi = G
    power = Polynomial.constant(dom, dom.one, G.var)
    factorial = 1
    i = 0
    while True:
        term = compose(gi, h0) * power
        rhs = rhs + term.map_coefficients(lambda cc: dom.div_int(cc, factorial))
        if gi.is_constant():
            break
        gi = derivative(gi)
        power = power * ah
        i += 1
        factorial *= i
    return lhs == rhs


def decompose_fully(f: Polynomial) -> list[Polynomial]:
    """A complete decomposition chain c1 o c2 o ... o ck = f.

    Tries inner degrees in increasing order and recurses on both factors,
    so every returned factor is indecomposable.  Deterministic, but not
    canonical: equivalent chains related by linear insertions exist.
    """
    N = f.degree
    if N is MINUS_INFINITY or N < 2:
        raise ValueError("degree must be at least 2")
    if N < 4:
        return [f]
    for m in proper_inner_degrees(N):
        dec = decompose_over_field(f, m)
        if dec is not None:
            return decompose_fully(dec.g) + decompose_fully(dec.h)
    return [f]
