"""Degree-4 polynomials that decompose over the fraction field but not
over the ring, built from a failure of unique factorization.

Starting from two genuinely different irreducible factorizations of the
same element, one extracts a triple (ell, a, p_s) with ell | a*p_s but
ell dividing neither factor.  Then c = a/ell lies outside the ring while
d = p_s^2 makes every coefficient of

    f = (d x^2 + ell x) o (x^2 + c x)
      = d x^4 + 2dc x^3 + (dc^2 + ell) x^2 + ell*c x

land back inside it, and f is the desired example: the field sees the
displayed decomposition, the ring provably sees none.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .poly import Polynomial, compose
from .domains import (QuadraticInt, QuadraticIntRing,
                      descend_poly, embed_element, embed_poly, hull_of)
from .decomp import (Decomposition, RingDecideOutcome, RingDecideStatus,
                     quartic_field_decompose, quartic_ring_decide)


@dataclass(frozen=True)
class FactorizationPair:
    """One element with two factorizations into irreducibles.

    The ring is carried explicitly so plain integers work as factors
    alongside quadratic integers.
    """

    ring: Any
    element: Any
    first: tuple
    second: tuple

    def __post_init__(self):
        object.__setattr__(self, "element", self.ring.coerce(self.element))
        object.__setattr__(self, "first",
                           tuple(self.ring.coerce(x) for x in self.first))
        object.__setattr__(self, "second",
                           tuple(self.ring.coerce(x) for x in self.second))
        _check_pair(self)


def _product(ring: Any, factors: tuple) -> Any:
    out = ring.one
    for x in factors:
        out = out * x
    return out


def _check_pair(pair: FactorizationPair) -> None:
    """Raise unless both lists are irreducible factorizations of element."""
    ring = pair.ring
    if not pair.first or not pair.second:
        raise ValueError("both factor lists must be nonempty")
    for side, factors in (("first", pair.first), ("second", pair.second)):
        for x in factors:
            if ring.norm(x) == 0 or ring.is_unit(x):
                raise ValueError(f"{side} list contains a unit or zero: {x}")
            if not ring.is_irreducible(x):
                raise ValueError(f"{side} list contains a reducible factor: {x}")
        if not ring.are_associates(_product(ring, factors), pair.element):
            raise ValueError(
                f"the {side} list does not multiply to the element")


def _max_matching(ring: Any, first: tuple, second: tuple) -> int:
    """Size of a maximum matching of first against second by associateness."""
    adjacency = [[j for j, q in enumerate(second) if ring.are_associates(p, q)]
                 for p in first]
    match_of = [-1] * len(second)

    def augment(i: int, seen: set) -> bool:
        for j in adjacency[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_of[j] == -1 or augment(match_of[j], seen):
                match_of[j] = i
                return True
        return False

    return sum(1 for i in range(len(first)) if augment(i, set()))


def validate_inequivalent(pair: FactorizationPair) -> bool:
    """True iff no bijection matches the two lists up to associates."""
    _check_pair(pair)
    if len(pair.first) != len(pair.second):
        return True
    return _max_matching(pair.ring, pair.first, pair.second) < len(pair.first)


def strip_common_associates(pair: FactorizationPair) -> FactorizationPair:
    """Cancel matched associate factors until the lists share none.

    The remaining element is the product of the surviving first list; it
    is neither zero nor a unit.  Raises when cancellation empties a list,
    which means the factorizations were equivalent all along.
    """
    _check_pair(pair)
    ring = pair.ring
    first = list(pair.first)
    second = list(pair.second)
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(first):
            j = next((j for j, q in enumerate(second)
                      if ring.are_associates(p, q)), None)
            if j is not None:
                del first[i]
                del second[j]
                changed = True
                break
    if not first or not second:
        raise ValueError("the factorizations are equivalent; nothing remains "
                         "after cancelling associates")
    return FactorizationPair(ring, _product(ring, first),
                             tuple(first), tuple(second))


def derive_witness_params(pair: FactorizationPair) -> tuple:
    """Extract (ell, a, p_s) with ell | a*p_s, ell ∤ a, ell ∤ p_s.

    ell is the first factor of the first list; s is the least index such
    that ell divides p_1 * ... * p_s taken from the second list; a is the
    product of the first s-1 of those (so 1 when s = 1).
    """
    ring = pair.ring
    ell = pair.first[0]
    prefix = ring.one
    for s, p in enumerate(pair.second, start=1):
        if ring.divides_exact(ell, prefix * p) is not None:
            a = prefix
            if ring.divides_exact(ell, a) is not None:
                raise ValueError("internal: minimality of s violated")
            if ring.divides_exact(ell, p) is not None:
                raise ValueError(
                    "ell divides a single factor of the other list; the "
                    "factorizations were not stripped of common associates")
            return (ell, a, p)
        prefix = prefix * p
    raise ValueError("ell does not divide the opposite product; the input "
                     "is not a factorization pair")


@dataclass(frozen=True)
class WitnessData:
    """A constructed example with all the ingredients kept for audit."""

    ring: Any
    ell: Any
    a: Any
    p_s: Any
    c: Any              # a/ell, in the fraction field, outside the ring
    d: Any              # p_s^2, in the ring
    f: Polynomial       # over the ring


def build_witness_poly(ell: Any, a: Any, p_s: Any,
                       ring: Any = None) -> WitnessData:
    """Assemble the quartic from a triple satisfying the divisibility facts.

    Checks ell | a*p_s, ell ∤ a, ell ∤ p_s, then forms c = a/ell and
    d = p_s^2 and expands (d x^2 + ell x) o (x^2 + c x).  Every
    coefficient must land in the ring; a coefficient escaping means the
    preconditions were violated.
    """
    if ring is None:
        for v in (ell, a, p_s):
            if isinstance(v, QuadraticInt):
                ring = v.ring
                break
        else:
            raise ValueError("pass ring= explicitly for plain integers")
    ell = ring.coerce(ell)
    a = ring.coerce(a)
    p_s = ring.coerce(p_s)

    if ring.norm(ell) == 0 or ring.is_unit(ell):
        raise ValueError("ell must be a nonzero nonunit")
    if ring.divides_exact(ell, a * p_s) is None:
        raise ValueError("ell must divide a * p_s")
    if ring.divides_exact(ell, a) is not None:
        raise ValueError("ell must not divide a")
    if ring.divides_exact(ell, p_s) is not None:
        raise ValueError("ell must not divide p_s")

    field = hull_of(ring)
    ellK = embed_element(ell, ring, field)
    aK = embed_element(a, ring, field)
    c = field.div(aK, ellK)
    d = p_s * p_s

    dK = embed_element(d, ring, field)
    outer = Polynomial(field, [field.zero, ellK, dK], "x")
    inner = Polynomial(field, [field.zero, c, field.one], "x")
    fK = compose(outer, inner)
    f = descend_poly(fK, ring)
    if f is None:
        raise ValueError("a coefficient of the quartic escaped the ring; "
                         "the divisibility preconditions do not hold")
    return WitnessData(ring=ring, ell=ell, a=a, p_s=p_s, c=c, d=d, f=f)


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class WitnessReport:
    clauses: tuple
    field_decomposition: Optional[Decomposition]
    ring_outcome: Optional[RingDecideOutcome]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)


def verify_witness(w: WitnessData) -> WitnessReport:
    """Re-derive everything the construction promises and report per clause.

    Clause 1: the quartic decomposes over the field with inner x^2 + c x.
    Clause 2: the over-ring decision returns indecomposable-over-ring.
    Clause 3: the stored ingredients satisfy their divisibility relations
    and f really is the expansion of (d x^2 + ell x) o (x^2 + c x).
    Failures are reported, never raised.
    """
    ring = w.ring
    field = hull_of(ring)
    clauses = []

    fK = embed_poly(w.f, field)
    dec = None
    try:
        dec = quartic_field_decompose(fK)
    except ValueError as exc:
        clauses.append(Clause("field_decomposition", False, str(exc)))
    if dec is not None:
        inner_ok = dec.h.coefficient(1) == w.c
        clauses.append(Clause(
            "field_decomposition", inner_ok,
            f"inner factor {dec.h} {'matches' if inner_ok else 'differs from'}"
            f" x^2 + c*x"))
    elif not clauses:
        clauses.append(Clause("field_decomposition", False,
                              "the quartic does not decompose over the field"))

    outcome = None
    try:
        outcome = quartic_ring_decide(w.f)
        ring_ok = outcome.status is RingDecideStatus.INDECOMPOSABLE_OVER_RING
        clauses.append(Clause("ring_indecomposability", ring_ok,
                              f"over-ring decision: {outcome.status.value}"))
    except (ValueError, TypeError) as exc:
        clauses.append(Clause("ring_indecomposability", False, str(exc)))

    relations_ok = True
    details = []
    if ring.divides_exact(w.ell, w.a * w.p_s) is None:
        relations_ok = False
        details.append("ell does not divide a*p_s")
    if ring.divides_exact(w.ell, w.a) is not None:
        relations_ok = False
        details.append("ell divides a")
    if ring.divides_exact(w.ell, w.p_s) is not None:
        relations_ok = False
        details.append("ell divides p_s")
    try:
        if not (ring.is_irreducible(w.ell) and ring.is_irreducible(w.p_s)):
            relations_ok = False
            details.append("ell or p_s is reducible")
        elif ring.are_associates(w.ell, w.p_s):
            relations_ok = False
            details.append("ell and p_s are associates")
    except ValueError as exc:
        relations_ok = False
        details.append(str(exc))
    if w.d != w.p_s * w.p_s:
        relations_ok = False
        details.append("d is not p_s^2")
    ellK = embed_element(w.ell, ring, field)
    dK = embed_element(w.d, ring, field)
    expansion = compose(Polynomial(field, [field.zero, ellK, dK], "x"),
                        Polynomial(field, [field.zero, w.c, field.one], "x"))
    if embed_poly(w.f, field) != expansion:
        relations_ok = False
        details.append("f is not the expansion of (d x^2 + ell x) o (x^2 + c x)")
    clauses.append(Clause("ingredient_relations", relations_ok,
                          "; ".join(details) if details else "all relations hold"))

    return WitnessReport(tuple(clauses), dec, outcome)


def builtin_examples() -> list[FactorizationPair]:
    """Classic non-unique factorizations, smallest rings first.

    Each entry passes validate_inequivalent; the first is the standard
    6 = 2*3 = (1+sqrt(-5))(1-sqrt(-5)).
    """
    r5 = QuadraticIntRing(-5)
    r6 = QuadraticIntRing(-6)
    r15 = QuadraticIntRing(-15)
    w5 = r5.element(0, 1)
    w6 = r6.element(0, 1)
    omega = r15.element(0, 1)
    return [
        FactorizationPair(r5, 6, (2, 3), (1 + w5, 1 - w5)),
        FactorizationPair(r6, 6, (2, 3), (w6, -w6)),
        FactorizationPair(r15, 4, (2, 2), (omega, 1 - omega)),
    ]


def run_pipeline(pair: FactorizationPair) -> tuple:
    """strip -> derive -> build -> verify, returning every stage's output."""
    stripped = strip_common_associates(pair)
    if not validate_inequivalent(stripped):
        raise ValueError("the factorizations are equivalent; no witness exists")
    ell, a, p_s = derive_witness_params(stripped)
    data = build_witness_poly(ell, a, p_s, ring=stripped.ring)
    report = verify_witness(data)
    return stripped, data, report
