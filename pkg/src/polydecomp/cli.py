"""Command-line front-end.

Subcommands: compose, decompose, quartic, witness, check-subring,
demo-q1, demo-q2.  Polynomials are written in a small expression grammar

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := int | int '/' uint | 'x' | 't' | 'w' | '(' expr ')'

over a ring chosen by a descriptor string: "Z", "Q", "Z[sqrt(-5)]",
"Q(sqrt(-5))", "O(-15)", "Z[t]", "Q[t]", "Z[t2,t3]".  The symbol w is the
quadratic generator of the ambient ring (sqrt(d), or (1+sqrt(d))/2 for the
O(d) rings); t is the polynomial indeterminate of the t-rings.  Expressions
are evaluated exactly over the rational hull of the ring and then checked
coefficient by coefficient for membership, so "4/2" is a fine integer and
"1/2+1/2*w" names the half-basis generator of O(-15).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from .poly import MINUS_INFINITY, Polynomial
from .poly import compose as poly_compose
from .domains import (CapabilityError, QuadraticInt, QuadraticIntRing,
                      QuadraticRat, QuadraticField, SubringDescriptor,
                      QQ, QT, ZT, ZZ, ZT23_IN_ZT, QZT23_IN_QT,
                      descend_element, descend_poly, embed_poly, hull_of)
from .decomp import (RingDecideStatus, coefficients_in_QR, decompose_fully,
                     decompose_over_field, monic_decompose,
                     proper_inner_degrees, quartic_field_decompose,
                     quartic_ring_decide)
from .witness import (FactorizationPair, builtin_examples, run_pipeline,
                      validate_inequivalent)


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"syntax error at position {pos}: {message}")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "ExprAST"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ExprAST"
    right: "ExprAST"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "ExprAST"
    exponent: int
    pos: int


ExprAST = Union[Num, Sym, Neg, BinOp, Pow]


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("num", text[i:j], i))
            i = j
            continue
        if ch in "xtw":
            nxt = text[i + 1] if i + 1 < len(text) else ""
            if nxt.isalnum() or nxt == "_":
                raise ParseError(f"unknown symbol starting with {ch!r}", i)
            tokens.append(Token("name", ch, i))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", len(text)))
    return tokens


class _ExprParser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> ExprAST:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError("unexpected trailing input", tok.pos)
        return node

    def expr(self) -> ExprAST:
        tok = self.peek()
        if tok.kind == "-":
            self.take()
            node: ExprAST = Neg(self.term(), tok.pos)
        else:
            node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take()
            node = BinOp(op.kind, node, self.term(), op.pos)
        return node

    def term(self) -> ExprAST:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.take()
                node = BinOp("*", node, self.factor(), tok.pos)
            elif tok.kind in ("num", "name", "("):
                raise ParseError(
                    "implicit multiplication is not allowed; insert '*'",
                    tok.pos)
            else:
                return node

    def factor(self) -> ExprAST:
        node = self.base()
        tok = self.peek()
        if tok.kind == "^":
            self.take()
            etok = self.peek()
            if etok.kind != "num":
                raise ParseError(
                    "exponent must be a nonnegative integer literal", etok.pos)
            self.take()
            node = Pow(node, int(etok.text), tok.pos)
        return node

    def base(self) -> ExprAST:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            if self.peek().kind == "/":
                self.take()
                dtok = self.peek()
                if dtok.kind != "num":
                    raise ParseError(
                        "denominator must be an unsigned integer", dtok.pos)
                self.take()
                if int(dtok.text) == 0:
                    raise ParseError("denominator is zero", dtok.pos)
                return Num(Fraction(int(tok.text), int(dtok.text)), tok.pos)
            return Num(Fraction(int(tok.text)), tok.pos)
        if tok.kind == "name":
            self.take()
            return Sym(tok.text, tok.pos)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            closing = self.peek()
            if closing.kind != ")":
                raise ParseError("expected ')'", closing.pos)
            self.take()
            return node
        raise ParseError("expected a number, a symbol, or '('", tok.pos)


def parse_expression(text: str) -> ExprAST:
    return _ExprParser(tokenize(text)).parse()


# ---------------------------------------------------------------------------
# ring descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingContext:
    """Everything the CLI needs to know about a --ring descriptor."""

    descriptor: str
    domain: Any                      # where inputs and answers live
    hull: Any                        # Q-algebra used for parsing and algorithms
    is_field: bool
    w_value: Any                     # hull element the symbol w denotes, or None
    has_t: bool
    restriction: Optional[SubringDescriptor]  # extra membership inside domain


_SQRT_RING_RE = re.compile(r"^Z\[sqrt\((-?\d+)\)\]$")
_SQRT_FIELD_RE = re.compile(r"^Q\(sqrt\((-?\d+)\)\)$")
_ORDER_RE = re.compile(r"^O\((-?\d+)\)$")

_SUPPORTED = ('"Z", "Q", "Z[sqrt(d)]", "Q(sqrt(d))", "O(d)", '
              '"Z[t]", "Q[t]", "Z[t2,t3]"')


def resolve_ring(descriptor: str) -> RingContext:
    """Turn a descriptor string into domains, hull, and symbol bindings."""
    text = "".join(descriptor.split())
    if text == "Z":
        return RingContext("Z", ZZ, QQ, False, None, False, None)
    if text == "Q":
        return RingContext("Q", QQ, QQ, True, None, False, None)
    if text == "Z[t]":
        return RingContext("Z[t]", ZT, QT, False, None, True, None)
    if text == "Q[t]":
        return RingContext("Q[t]", QT, QT, False, None, True, None)
    if text == "Z[t2,t3]":
        return RingContext("Z[t2,t3]", ZT, QT, False, None, True, ZT23_IN_ZT)
    m = _SQRT_RING_RE.match(text)
    if m:
        d = int(m.group(1))
        if d % 4 == 1:
            raise ValueError(
                f"Z[sqrt({d})] is not supported for d = 1 (mod 4); "
                f"use O({d}), whose integral basis includes (1+sqrt({d}))/2")
        ring = QuadraticIntRing(d)
        field = ring.fraction_field()
        return RingContext(ring.name, ring, field, False,
                           field.element(0, 1), False, None)
    m = _ORDER_RE.match(text)
    if m:
        d = int(m.group(1))
        ring = QuadraticIntRing(d)
        field = ring.fraction_field()
        w = (field.element(Fraction(1, 2), Fraction(1, 2))
             if ring.half_basis else field.element(0, 1))
        return RingContext(ring.name, ring, field, False, w, False, None)
    m = _SQRT_FIELD_RE.match(text)
    if m:
        d = int(m.group(1))
        field = QuadraticField(d)
        return RingContext(field.name, field, field, True,
                           field.element(0, 1), False, None)
    raise ValueError(f"unknown ring descriptor {descriptor!r}; "
                     f"supported: {_SUPPORTED}")


def _lower(node: ExprAST, ctx: RingContext) -> Polynomial:
    dom = ctx.hull
    if isinstance(node, Num):
        return Polynomial.constant(dom, dom.coerce(node.value), "x")
    if isinstance(node, Sym):
        if node.name == "x":
            return Polynomial.identity(dom, "x")
        if node.name == "t":
            if not ctx.has_t:
                raise ParseError(
                    f"symbol t is not defined over {ctx.descriptor}", node.pos)
            t = Polynomial.identity(dom.base, dom.var)
            return Polynomial.constant(dom, t, "x")
        if ctx.w_value is None:
            raise ParseError(
                f"symbol w is not defined over {ctx.descriptor}", node.pos)
        return Polynomial.constant(dom, ctx.w_value, "x")
    if isinstance(node, Neg):
        return -_lower(node.operand, ctx)
    if isinstance(node, BinOp):
        left = _lower(node.left, ctx)
        right = _lower(node.right, ctx)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Pow):
        return _lower(node.base, ctx) ** node.exponent
    raise TypeError(f"unknown AST node {node!r}")


def parse_poly(text: str, ring: Union[str, RingContext]) -> Polynomial:
    """Parse an expression into an exact Polynomial over the descriptor.

    Evaluation happens over the rational hull; afterwards every coefficient
    must descend into the named ring (and pass any extra membership, for
    the Z[t2,t3] descriptor), otherwise the parse is rejected.
    """
    ctx = resolve_ring(ring) if isinstance(ring, str) else ring
    p = _lower(parse_expression(text), ctx)
    if ctx.domain == ctx.hull:
        result = p
    else:
        result = descend_poly(p, ctx.domain)
        if result is None:
            for k in range(len(p.coeffs)):
                if descend_element(p.coeffs[k], ctx.domain) is None:
                    raise ValueError(
                        f"coefficient {ctx.hull.format_element(p.coeffs[k])} "
                        f"of x^{k} does not lie in {ctx.descriptor}")
            raise ValueError(f"polynomial does not lie over {ctx.descriptor}")
    if ctx.restriction is not None:
        for k, c in enumerate(result.coeffs):
            if not ctx.restriction.membership(c):
                raise ValueError(
                    f"coefficient {ctx.domain.format_element(c)} of x^{k} "
                    f"is not in {ctx.descriptor}")
    return result


def _parse_ring_element(text: str, ctx: RingContext) -> Any:
    p = parse_poly(text, ctx)
    if not p.is_constant():
        raise ValueError(f"expected a ring element, got a polynomial in x: {text!r}")
    return p.constant_term


# ---------------------------------------------------------------------------
# result rendering
# ---------------------------------------------------------------------------

def coeff_pair(c: Any) -> list[str]:
    """Serialize one coefficient as an exact [main, w-part] string pair."""
    if isinstance(c, QuadraticInt):
        return [str(c.a), str(c.b)]
    if isinstance(c, QuadraticRat):
        return [str(c.r), str(c.s)]
    return [str(c), "0"]


def poly_pairs(p: Optional[Polynomial]) -> Optional[list]:
    if p is None:
        return None
    return [coeff_pair(c) for c in p.coeffs]


def poly_text(p: Optional[Polynomial]) -> Optional[str]:
    return None if p is None else str(p)


@dataclass
class CommandResult:
    payload: dict
    lines: list
    exit_code: int = 0


def format_result(outcome: CommandResult, as_json: bool) -> str:
    """Deterministic rendering of a command's outcome."""
    if as_json:
        return json.dumps(outcome.payload, sort_keys=True)
    return "\n".join(outcome.lines)


def _payload(command: str, ring: str, status: str,
             g: Optional[Polynomial] = None, h: Optional[Polynomial] = None,
             evidence: Optional[dict] = None) -> dict:
    return {
        "command": command,
        "ring": ring,
        "status": status,
        "g": poly_pairs(g),
        "h": poly_pairs(h),
        "evidence": evidence or {},
    }


def _candidates_json(candidates) -> list:
    return [{
        "u": str(c.u),
        "square_divides_lead": c.square_divides_lead,
        "divides_linear": c.divides_linear,
        "inner_stays_in_ring": c.inner_stays_in_ring,
        "passed": c.passed,
    } for c in candidates]


def _candidate_lines(candidates) -> list[str]:
    lines = ["candidates u (u^2 | lead, u | linear, u*c in ring):"]
    for c in candidates:
        marks = ", ".join("yes" if b else "no" for b in
                          (c.square_divides_lead, c.divides_linear,
                           c.inner_stays_in_ring))
        lines.append(f"  u = {c.u}: {marks}")
    return lines


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_compose(ns) -> CommandResult:
    ctx = resolve_ring(ns.ring)
    G = parse_poly(ns.outer, ctx)
    H = parse_poly(ns.inner, ctx)
    f = poly_compose(G, H)
    evidence = {
        "g_text": str(G),
        "h_text": str(H),
        "composition": poly_pairs(f),
        "composition_text": str(f),
    }
    payload = _payload("compose", ctx.descriptor, "ok", G, H, evidence)
    return CommandResult(payload, [str(f)])


def _unit_inverse(ring: Any, u: Any) -> Any:
    return ring.divides_exact(u, ring.one)


def _decompose_over_ring(ns, ctx: RingContext, f: Polynomial) -> CommandResult:
    ring = ctx.domain
    N = f.degree
    degrees = [ns.inner_degree] if ns.inner_degree else proper_inner_degrees(N)

    unit = None
    work = f
    if not f.is_monic() and hasattr(ring, "is_unit") \
            and ring.is_unit(f.leading_coefficient):
        unit = f.leading_coefficient
        work = f.scale(_unit_inverse(ring, unit))

    if work.is_monic():
        hull = ctx.hull
        fh = embed_poly(work, hull)
        field_dec = None
        for m in degrees:
            dec = monic_decompose(fh, m)
            if dec is None:
                continue
            if field_dec is None:
                field_dec = dec
            g_r = descend_poly(dec.g, ring)
            h_r = descend_poly(dec.h, ring)
            if g_r is None or h_r is None:
                continue
            if ctx.restriction is not None and not all(
                    ctx.restriction.membership(c)
                    for c in g_r.coeffs + h_r.coeffs):
                continue
            if unit is not None:
                g_r = g_r.scale(unit)
            evidence = {"g_text": str(g_r), "h_text": str(h_r),
                        "inner_degree": m}
            payload = _payload("decompose", ctx.descriptor,
                               "decomposable_over_ring", g_r, h_r, evidence)
            lines = [f"decomposable over {ctx.descriptor}:",
                     f"  g = {g_r}", f"  h = {h_r}"]
            return CommandResult(payload, lines)
        if field_dec is not None:
            evidence = {"field_g": poly_pairs(field_dec.g),
                        "field_h": poly_pairs(field_dec.h),
                        "field_g_text": str(field_dec.g),
                        "field_h_text": str(field_dec.h),
                        "field": hull.name}
            payload = _payload("decompose", ctx.descriptor,
                               "indecomposable_over_ring", None, None, evidence)
            lines = [f"indecomposable over {ctx.descriptor}",
                     f"  (decomposable over {hull.name}: "
                     f"g = {field_dec.g}, h = {field_dec.h})"]
            code = 2 if ns.fail_on_indecomposable else 0
            return CommandResult(payload, lines, code)
        payload = _payload("decompose", ctx.descriptor,
                           "indecomposable_over_field", None, None,
                           {"field": ctx.hull.name,
                            "inner_degrees_tried": degrees})
        lines = [f"indecomposable over {ctx.hull.name} "
                 f"(hence over {ctx.descriptor})"]
        code = 2 if ns.fail_on_indecomposable else 0
        return CommandResult(payload, lines, code)

    if N == 4 and hasattr(ring, "divisors_up_to_associates") \
            and ctx.restriction is None:
        if ns.inner_degree not in (None, 2):
            raise ValueError("a quartic only admits inner degree 2")
        return _quartic_ring_result("decompose", ns, ctx, f)

    raise CapabilityError(
        f"no over-ring decision procedure for a non-monic polynomial of "
        f"degree {N} over {ctx.descriptor}; monic polynomials and quartics "
        f"over Z or an imaginary-quadratic order are decidable")


def _quartic_ring_result(command: str, ns, ctx: RingContext,
                         f: Polynomial) -> CommandResult:
    outcome = quartic_ring_decide(f)
    evidence: dict[str, Any] = {
        "candidates": _candidates_json(outcome.candidates),
    }
    lines = []
    if outcome.field_evidence is not None:
        fd = outcome.field_evidence
        evidence.update({
            "field_g": poly_pairs(fd.g), "field_h": poly_pairs(fd.h),
            "field_g_text": str(fd.g), "field_h_text": str(fd.h),
            "field": ctx.hull.name,
        })
        lines.append(f"over {ctx.hull.name}: decomposable, "
                     f"g = {fd.g}, h = {fd.h}")
    else:
        lines.append(f"over {ctx.hull.name}: indecomposable")

    status = outcome.status.value
    g = h = None
    code = 0
    if outcome.status is RingDecideStatus.DECOMPOSABLE_OVER_RING:
        g, h = outcome.decomposition.g, outcome.decomposition.h
        evidence["g_text"] = str(g)
        evidence["h_text"] = str(h)
        lines.append(f"over {ctx.descriptor}: decomposable, g = {g}, h = {h}")
    else:
        lines.append(f"over {ctx.descriptor}: indecomposable")
        code = 2 if getattr(ns, "fail_on_indecomposable", False) else 0
    if outcome.candidates:
        lines.extend(_candidate_lines(outcome.candidates))
    payload = _payload(command, ctx.descriptor, status, g, h, evidence)
    return CommandResult(payload, lines, code)


def _cmd_decompose(ns) -> CommandResult:
    ctx = resolve_ring(ns.ring)
    f = parse_poly(ns.poly, ctx)
    N = f.degree
    if N is MINUS_INFINITY or N < 2:
        raise ValueError("nothing to decompose: degree is below 2")

    over = ns.over
    if over == "ring" and ctx.is_field:
        raise ValueError(f"{ctx.descriptor} is a field; --over ring needs a "
                         f"ring descriptor")
    if ns.full and over == "ring":
        raise ValueError("--full builds chains over the fraction field; "
                         "drop --over ring")
    if over is None:
        over = "field" if (ctx.is_field or ns.full) else "ring"

    if over == "field":
        fh = embed_poly(f, ctx.hull)
        if ns.full:
            chain = decompose_fully(fh)
            if len(chain) > 1:
                status = "decomposable_over_field"
                lines = [f"f = {' o '.join(str(c) for c in chain)}"
                         f"  over {ctx.hull.name}"]
            else:
                status = "indecomposable_over_field"
                lines = [f"indecomposable over {ctx.hull.name}"]
            evidence = {
                "chain": [poly_pairs(c) for c in chain],
                "chain_text": [str(c) for c in chain],
                "field": ctx.hull.name,
            }
            code = 2 if (ns.fail_on_indecomposable
                         and status.startswith("indecomposable")) else 0
            return CommandResult(
                _payload("decompose", ctx.descriptor, status,
                         evidence=evidence), lines, code)
        degrees = [ns.inner_degree] if ns.inner_degree else proper_inner_degrees(N)
        for m in degrees:
            dec = decompose_over_field(fh, m)
            if dec is not None:
                evidence = {"g_text": str(dec.g), "h_text": str(dec.h),
                            "inner_degree": m, "field": ctx.hull.name}
                lines = [f"decomposable over {ctx.hull.name}:",
                         f"  g = {dec.g}", f"  h = {dec.h}"]
                return CommandResult(
                    _payload("decompose", ctx.descriptor,
                             "decomposable_over_field", dec.g, dec.h,
                             evidence), lines)
        lines = [f"indecomposable over {ctx.hull.name}"]
        code = 2 if ns.fail_on_indecomposable else 0
        return CommandResult(
            _payload("decompose", ctx.descriptor, "indecomposable_over_field",
                     evidence={"inner_degrees_tried": degrees,
                               "field": ctx.hull.name}), lines, code)

    return _decompose_over_ring(ns, ctx, f)


def _cmd_quartic(ns) -> CommandResult:
    ctx = resolve_ring(ns.ring)
    f = parse_poly(ns.poly, ctx)
    if ctx.is_field:
        dec = quartic_field_decompose(f)
        if dec is None:
            lines = [f"indecomposable over {ctx.descriptor}"]
            code = 2 if ns.fail_on_indecomposable else 0
            return CommandResult(
                _payload("quartic", ctx.descriptor,
                         "indecomposable_over_field"), lines, code)
        evidence = {"g_text": str(dec.g), "h_text": str(dec.h)}
        lines = [f"decomposable over {ctx.descriptor}:",
                 f"  g = {dec.g}", f"  h = {dec.h}"]
        return CommandResult(
            _payload("quartic", ctx.descriptor, "decomposable_over_field",
                     dec.g, dec.h, evidence), lines)
    return _quartic_ring_result("quartic", ns, ctx, f)


def _cmd_witness(ns) -> CommandResult:
    if ns.builtin is not None:
        ctx = resolve_ring(ns.builtin)
        pair = next((p for p in builtin_examples() if p.ring == ctx.domain),
                    None)
        if pair is None:
            names = ", ".join(p.ring.name for p in builtin_examples())
            raise ValueError(f"no builtin example over {ctx.descriptor}; "
                             f"available: {names}")
    else:
        if not (ns.ring and ns.element and ns.factorization):
            raise ValueError("witness needs --builtin, or --ring with "
                             "--element and two --factorization lists")
        if len(ns.factorization) != 2:
            raise ValueError("exactly two --factorization lists are required")
        ctx = resolve_ring(ns.ring)
        if not hasattr(ctx.domain, "divisors_up_to_associates"):
            raise ValueError(f"{ctx.descriptor} does not support factorization "
                             f"witnesses; use Z or an imaginary-quadratic ring")
        element = _parse_ring_element(ns.element, ctx)
        first = tuple(_parse_ring_element(s, ctx)
                      for s in ns.factorization[0].split(","))
        second = tuple(_parse_ring_element(s, ctx)
                       for s in ns.factorization[1].split(","))
        pair = FactorizationPair(ctx.domain, element, first, second)

    ring = pair.ring
    field = hull_of(ring)
    ring_name = "Z[t2,t3]" if ring == ZT else ring.name
    if not validate_inequivalent(pair):
        lines = ["the two factorizations are equivalent; no witness arises"]
        return CommandResult(
            _payload("witness", ring_name, "equivalent_factorizations",
                     evidence={"element": str(pair.element)}), lines)

    stripped, data, report = run_pipeline(pair)
    dec = report.field_decomposition
    evidence: dict[str, Any] = {
        "element": str(stripped.element),
        "first": [str(x) for x in stripped.first],
        "second": [str(x) for x in stripped.second],
        "ell": str(data.ell),
        "a": str(data.a),
        "p_s": str(data.p_s),
        "c": str(data.c),
        "d": str(data.d),
        "f": poly_pairs(data.f),
        "f_text": str(data.f),
        "field": field.name,
        "clauses": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                    for c in report.clauses],
    }
    if report.ring_outcome is not None:
        evidence["candidates"] = _candidates_json(report.ring_outcome.candidates)

    lines = [
        f"ring: {ring.name},  element: {stripped.element}",
        f"factorizations: ({') * ('.join(str(x) for x in stripped.first)})"
        f" = ({') * ('.join(str(x) for x in stripped.second)})",
        f"derived: ell = {data.ell},  a = {data.a},  p_s = {data.p_s}",
        f"c = a/ell = {data.c}  (outside the ring),  d = p_s^2 = {data.d}",
        f"f = {data.f}",
    ]
    if dec is not None:
        lines.append(f"over {field.name}: f = g o h with "
                     f"g = {dec.g}, h = {dec.h}")
    if report.ring_outcome is not None and report.ring_outcome.candidates:
        lines.extend(_candidate_lines(report.ring_outcome.candidates))
    for c in report.clauses:
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")

    status = "witness_verified" if report.passed else "witness_failed"
    g = dec.g if dec is not None else None
    h = dec.h if dec is not None else None
    code = 0 if report.passed else 1
    return CommandResult(_payload("witness", ring_name, status, g, h,
                                  evidence), lines, code)


def _cmd_check_subring(ns) -> CommandResult:
    ctx = resolve_ring(ns.ring)
    p = _lower(parse_expression(ns.element), ctx)
    if not p.is_constant():
        raise ValueError("check-subring expects a coefficient-ring element, "
                         "not a polynomial in x")
    value = p.constant_term
    detail = ""
    if ctx.is_field:
        member = True
        detail = f"{ctx.descriptor} is the whole ambient field"
    else:
        descended = descend_element(value, ctx.domain)
        if descended is None:
            member = False
            detail = f"not integral over {ctx.hull.name}"
        elif ctx.restriction is not None \
                and not ctx.restriction.membership(descended):
            member = False
            detail = "the coefficient of t^1 is nonzero"
        else:
            member = True
    status = "member" if member else "not_member"
    shown = ns.element.strip()
    evidence = {"element": shown,
                "value": ctx.hull.format_element(value),
                "ambient": ctx.hull.name}
    if detail:
        evidence["detail"] = detail
    line = (f"{shown} is a member of {ctx.descriptor}" if member else
            f"{shown} is not a member of {ctx.descriptor}"
            + (f" ({detail})" if detail else ""))
    return CommandResult(
        _payload("check-subring", ctx.descriptor, status, evidence=evidence),
        [line])


# ---------------------------------------------------------------------------
# demos
# ---------------------------------------------------------------------------

_DEMO_SHAPES = ((2, 2), (2, 3), (3, 2), (2, 4), (4, 2))


def _random_member(rng: random.Random, max_tdeg: int = 3) -> Polynomial:
    """A random element of the no-linear-term subring of Z[t]."""
    coeffs = [rng.randint(-3, 3) for _ in range(max_tdeg + 1)]
    coeffs[1] = 0
    return Polynomial(ZZ, coeffs, "t")


def _random_monic(rng: random.Random, deg: int) -> Polynomial:
    coeffs = [_random_member(rng) for _ in range(deg)] + [ZT.one]
    return Polynomial(ZT, coeffs, "x")


def run_demo_q1(trials: int = 200, seed: int = 0) -> dict:
    """Monic compositions over Z[t2,t3] never need coefficients outside it.

    Draws random monic pairs with every coefficient free of a t-linear
    term, composes them, recovers the normalized decomposition over Q[t],
    and checks the recovered pair still has no t-linear terms (and is the
    expected normalization of the inputs).  Returns a summary dict.
    """
    rng = random.Random(seed)
    failures = 0
    first_failure = ""
    for trial in range(trials):
        dg, dh = _DEMO_SHAPES[rng.randrange(len(_DEMO_SHAPES))]
        g = _random_monic(rng, dg)
        h = _random_monic(rng, dh)
        f = poly_compose(g, h)
        assert all(ZT23_IN_ZT.membership(c) for c in f.coeffs)

        fq = embed_poly(f, QT)
        dec = monic_decompose(fq, dh)
        ok = dec is not None
        if ok:
            ok = coefficients_in_QR(dec, QZT23_IN_QT)
        if ok:
            g_r = descend_poly(dec.g, ZT)
            h_r = descend_poly(dec.h, ZT)
            ok = (g_r is not None and h_r is not None
                  and all(ZT23_IN_ZT.membership(c)
                          for c in g_r.coeffs + h_r.coeffs))
        if ok:
            h0 = h.constant_term
            shift = Polynomial(ZT, [h0, ZT.one], "x")
            ok = (h_r == h - h0 and g_r == poly_compose(g, shift))
        if not ok:
            failures += 1
            if not first_failure:
                first_failure = f"trial {trial}: g = {g}, h = {h}"
    return {
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "detail": first_failure,
    }


def _cmd_demo_q1(ns) -> CommandResult:
    summary = run_demo_q1(ns.trials, ns.seed)
    ok = summary["failures"] == 0
    status = "ok" if ok else "failed"
    lines = [
        f"monic pairs over Z[t2,t3][x], recovered over Q[t]: "
        f"{summary['trials']} trials, {summary['failures']} failures "
        f"(seed {summary['seed']})",
    ]
    if ok:
        lines.append("every recovered decomposition stayed inside Z[t2,t3]")
    else:
        lines.append(f"counterexample: {summary['detail']}")
    return CommandResult(
        _payload("demo-q1", "Z[t2,t3]", status, evidence=summary),
        lines, 0 if ok else 1)


def run_demo_q2() -> tuple:
    """The standard witness pipeline over Z[sqrt(-5)], fully verified."""
    pair = builtin_examples()[0]
    return run_pipeline(pair)


_DEMO_Q2_FINAL = ("indecomposable over Z[sqrt(-5)], "
                  "decomposable over Q(sqrt(-5))")


def _cmd_demo_q2(ns) -> CommandResult:
    stripped, data, report = run_demo_q2()
    ring = stripped.ring
    field = hull_of(ring)
    dec = report.field_decomposition
    evidence: dict[str, Any] = {
        "element": str(stripped.element),
        "first": [str(x) for x in stripped.first],
        "second": [str(x) for x in stripped.second],
        "ell": str(data.ell),
        "a": str(data.a),
        "p_s": str(data.p_s),
        "c": str(data.c),
        "d": str(data.d),
        "f": poly_pairs(data.f),
        "f_text": str(data.f),
        "clauses": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                    for c in report.clauses],
        "final": _DEMO_Q2_FINAL,
    }
    if report.ring_outcome is not None:
        evidence["candidates"] = _candidates_json(report.ring_outcome.candidates)
    lines = [
        f"two factorizations in {ring.name}: "
        f"{stripped.element} = "
        f"({') * ('.join(str(x) for x in stripped.first)}) = "
        f"({') * ('.join(str(x) for x in stripped.second)})",
        f"derived: ell = {data.ell},  a = {data.a},  p_s = {data.p_s}",
        f"c = a/ell = {data.c}  lies outside {ring.name}",
        f"d = p_s^2 = {data.d}",
        f"f = {data.f}",
    ]
    if dec is not None:
        lines.append(f"over {field.name}: f = g o h with g = {dec.g}, "
                     f"h = {dec.h}")
    if report.ring_outcome is not None and report.ring_outcome.candidates:
        lines.extend(_candidate_lines(report.ring_outcome.candidates))
    for c in report.clauses:
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    ok = report.passed
    lines.append(_DEMO_Q2_FINAL if ok else "verification failed; see above")
    status = "witness_verified" if ok else "witness_failed"
    g = dec.g if dec is not None else None
    h = dec.h if dec is not None else None
    return CommandResult(
        _payload("demo-q2", ring.name, status, g, h, evidence),
        lines, 0 if ok else 1)


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="polydecomp",
        description="Exact functional decomposition of polynomials over "
                    "rings and their fraction fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, default_ring=None):
        if default_ring is not None:
            sp.add_argument("--ring", default=default_ring,
                            help=f"ring descriptor (default {default_ring}); "
                                 f"one of {_SUPPORTED}")
        sp.add_argument("--json", action="store_true",
                        help="emit a machine-readable JSON object")

    sp = sub.add_parser("compose", help="compose two polynomials exactly")
    common(sp, "Q")
    sp.add_argument("outer")
    sp.add_argument("inner")

    sp = sub.add_parser("decompose",
                        help="find g, h with f = g(h(x)), or decide none exist")
    common(sp, "Q")
    sp.add_argument("--over", choices=("ring", "field"),
                    help="decide over the ring itself or its fraction field "
                         "(default: the descriptor as given)")
    sp.add_argument("--inner-degree", type=int,
                    help="try only this inner degree")
    sp.add_argument("--full", action="store_true",
                    help="produce a complete chain of indecomposables")
    sp.add_argument("--fail-on-indecomposable", action="store_true",
                    help="exit with status 2 when the answer is indecomposable")
    sp.add_argument("poly")

    sp = sub.add_parser("quartic",
                        help="closed-form degree-4 test, plus the over-ring "
                             "decision when the ring supports it")
    common(sp, "Z")
    sp.add_argument("--fail-on-indecomposable", action="store_true")
    sp.add_argument("poly")

    sp = sub.add_parser("witness",
                        help="build and verify a quartic that decomposes over "
                             "the fraction field but not over the ring")
    common(sp)
    sp.add_argument("--ring", help=f"ring descriptor; one of {_SUPPORTED}")
    sp.add_argument("--element", help="the doubly-factored ring element")
    sp.add_argument("--factorization", action="append", metavar="LIST",
                    help="comma-separated irreducible factors; give twice")
    sp.add_argument("--builtin", nargs="?", const="Z[sqrt(-5)]",
                    help="use a built-in example (default Z[sqrt(-5)])")

    sp = sub.add_parser("check-subring",
                        help="decide membership of an element in the "
                             "descriptor's ring")
    common(sp)
    sp.add_argument("--ring", required=True,
                    help=f"ring descriptor; one of {_SUPPORTED}")
    sp.add_argument("element")

    sp = sub.add_parser("demo-q1",
                        help="monic decompositions over Z[t2,t3] never leave "
                             "the subring: randomized check")
    common(sp)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("demo-q2",
                        help="the Z[sqrt(-5)] witness: decomposable over the "
                             "field, not over the ring")
    common(sp)

    return parser


_HANDLERS = {
    "compose": _cmd_compose,
    "decompose": _cmd_decompose,
    "quartic": _cmd_quartic,
    "witness": _cmd_witness,
    "check-subring": _cmd_check_subring,
    "demo-q1": _cmd_demo_q1,
    "demo-q2": _cmd_demo_q2,
}


def run(ns) -> CommandResult:
    """Dispatch a parsed command; raises ValueError family on bad input."""
    return _HANDLERS[ns.command](ns)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        result = run(ns)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = format_result(result, ns.json)
    if text:
        print(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
