"""Command-line behavior: grammar, ring descriptors, JSON, exit codes."""

import json
import random
from fractions import Fraction

import pytest

from polydecomp import (Polynomial, QuadraticField, QuadraticIntRing, QQ, ZZ,
                        main, parse_expression, parse_poly, resolve_ring)
from polydecomp.cli import ParseError, format_result, run, build_parser

R5 = QuadraticIntRing(-5)
K5 = QuadraticField(-5)


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGrammar:
    def test_basic_forms(self):
        p = parse_poly("x^2 + 2*x + 1", "Q")
        assert p == Polynomial(QQ, [1, 2, 1], "x")

    def test_whitespace_insensitive(self):
        assert parse_poly(" x ^ 2+ 2 * x ", "Q") == parse_poly("x^2+2*x", "Q")

    def test_fractions(self):
        p = parse_poly("1/2*x^2 - 3/4", "Q")
        assert p.coefficient(2) == Fraction(1, 2)
        assert p.coefficient(0) == Fraction(-3, 4)

    def test_leading_minus(self):
        p = parse_poly("-x^2 + 1", "Q")
        assert p.coefficient(2) == -1
        q = parse_poly("(-4-2*w)*x^4 + (1+w)*x", "Z[sqrt(-5)]")
        assert q.coefficient(4) == R5.element(-4, -2)
        assert q.coefficient(1) == R5.element(1, 1)

    def test_minus_binds_to_first_term_only(self):
        assert parse_poly("-2*x + 3", "Q") == Polynomial(QQ, [3, -2], "x")
        assert parse_poly("-(2*x + 3)", "Q") == Polynomial(QQ, [-3, -2], "x")

    def test_power_of_parenthesized(self):
        p = parse_poly("(x+1)^3", "Q")
        assert p == Polynomial(QQ, [1, 3, 3, 1], "x")

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ParseError):
            parse_expression("2x")
        with pytest.raises(ParseError):
            parse_expression("2(x+1)")
        with pytest.raises(ParseError):
            parse_expression("x x")

    def test_bad_exponent_rejected(self):
        with pytest.raises(ParseError) as info:
            parse_expression("x^t")
        assert "exponent" in str(info.value)
        with pytest.raises(ParseError):
            parse_expression("x^-2")
        with pytest.raises(ParseError):
            parse_expression("x^(2)")

    def test_error_position_is_reported(self):
        with pytest.raises(ParseError) as info:
            parse_expression("x + $")
        assert info.value.pos == 4
        assert "position 4" in str(info.value)

    def test_unknown_letters_rejected(self):
        with pytest.raises(ParseError):
            parse_expression("y + 1")
        with pytest.raises(ParseError):
            parse_expression("xx")

    def test_unbalanced_parens(self):
        with pytest.raises(ParseError):
            parse_expression("(x + 1")
        with pytest.raises(ParseError):
            parse_expression("x + 1)")

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_expression("1/0")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_expression("x ^ 2 ^ 3")


class TestRingDescriptors:
    def test_known_descriptors(self):
        assert resolve_ring("Z").domain is ZZ
        assert resolve_ring("Q").is_field
        assert resolve_ring("Z[sqrt(-5)]").domain is R5
        assert resolve_ring("Q(sqrt(-5))").domain is K5
        assert resolve_ring("O(-15)").domain is QuadraticIntRing(-15)
        assert resolve_ring("Z[t2,t3]").restriction is not None

    def test_spaces_tolerated(self):
        assert resolve_ring(" Z[sqrt(-5)] ").domain is R5

    def test_half_basis_needs_order_descriptor(self):
        with pytest.raises(ValueError) as info:
            resolve_ring("Z[sqrt(-15)]")
        assert "O(-15)" in str(info.value)

    def test_unknown_descriptor(self):
        with pytest.raises(ValueError):
            resolve_ring("Z[sqrt(5)]")   # positive d unsupported
        with pytest.raises(ValueError):
            resolve_ring("GF(7)")

    def test_w_meaning_depends_on_ring(self):
        half = parse_poly("w", "O(-15)")
        ring = resolve_ring("O(-15)").domain
        assert half.constant_term == ring.element(0, 1)
        sqrt5 = parse_poly("w", "Z[sqrt(-5)]")
        assert sqrt5.constant_term == R5.element(0, 1)

    def test_w_unavailable_over_plain_rings(self):
        with pytest.raises(ParseError):
            parse_poly("w*x", "Z")

    def test_t_unavailable_outside_t_rings(self):
        with pytest.raises(ParseError):
            parse_poly("t*x", "Z[sqrt(-5)]")

    def test_membership_enforced_at_parse(self):
        with pytest.raises(ValueError):
            parse_poly("1/2*x^2", "Z")
        with pytest.raises(ValueError):
            parse_poly("(1/2+1/2*w)*x", "Z[sqrt(-5)]")
        with pytest.raises(ValueError):
            parse_poly("t*x", "Z[t2,t3]")
        # but the same elements are fine where they belong
        parse_poly("1/2*x^2", "Q")
        parse_poly("(1+w)*x", "O(-15)")   # w itself is integral here
        parse_poly("t*x", "Z[t]")


class TestTextFormatRoundTrip:
    def test_random_polynomials_reparse(self):
        rng = random.Random(71)
        for ring_name in ("Z", "Q", "Z[sqrt(-5)]", "Q(sqrt(-5))", "O(-15)"):
            ctx = resolve_ring(ring_name)
            for _ in range(100):
                coeffs = []
                for _ in range(rng.randint(1, 6)):
                    if ring_name == "Z":
                        coeffs.append(rng.randint(-9, 9))
                    elif ring_name == "Q":
                        coeffs.append(Fraction(rng.randint(-9, 9),
                                               rng.randint(1, 9)))
                    else:
                        coeffs.append(ctx.domain.element(rng.randint(-9, 9),
                                                         rng.randint(-9, 9)))
                p = Polynomial(ctx.domain, coeffs, "x")
                assert parse_poly(str(p), ctx) == p

    def test_t_polynomials_reparse(self):
        rng = random.Random(73)
        ctx = resolve_ring("Z[t]")
        for _ in range(100):
            coeffs = [Polynomial(ZZ, [rng.randint(-5, 5)
                                      for _ in range(rng.randint(0, 4))], "t")
                      for _ in range(rng.randint(1, 5))]
            p = Polynomial(ctx.domain, coeffs, "x")
            assert parse_poly(str(p), ctx) == p


class TestCommands:
    def test_compose(self, capsys):
        code, out, err = run_cli(["compose", "x^2+2*x", "x^2"], capsys)
        assert code == 0
        assert out.strip() == "x^4 + 2*x^2"

    def test_compose_json(self, capsys):
        code, out, err = run_cli(["compose", "--json", "x^2", "x^2"], capsys)
        payload = json.loads(out)
        assert payload["command"] == "compose"
        assert payload["status"] == "ok"
        assert payload["evidence"]["composition_text"] == "x^4"

    def test_decompose_found(self, capsys):
        code, out, err = run_cli(
            ["decompose", "--ring", "Z", "--json", "x^4+2*x^2"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "decomposable_over_ring"
        assert payload["g"] == [["0", "0"], ["2", "0"], ["1", "0"]]
        assert payload["h"] == [["0", "0"], ["0", "0"], ["1", "0"]]

    def test_decompose_indecomposable_exit_codes(self, capsys):
        code, _, _ = run_cli(["decompose", "--ring", "Z", "x^4+x"], capsys)
        assert code == 0
        code, _, _ = run_cli(["decompose", "--ring", "Z",
                              "--fail-on-indecomposable", "x^4+x"], capsys)
        assert code == 2

    def test_decompose_full_chain(self, capsys):
        code, out, _ = run_cli(
            ["decompose", "--ring", "Q", "--full", "--json", "x^8"], capsys)
        payload = json.loads(out)
        assert payload["status"] == "decomposable_over_field"
        assert payload["evidence"]["chain_text"] == ["x^2", "x^2", "x^2"]

    def test_decompose_over_field_flag(self, capsys):
        code, out, _ = run_cli(
            ["decompose", "--ring", "Z", "--over", "field", "--json",
             "2*x^4+x^2"], capsys)
        payload = json.loads(out)
        assert payload["status"] == "decomposable_over_field"

    def test_ring_indecomposable_with_field_evidence(self, capsys):
        f = "(-4-2*w)*x^4 + (6-6*w)*x^3 + 11*x^2 + (1+w)*x"
        code, out, _ = run_cli(
            ["quartic", "--ring", "Z[sqrt(-5)]", "--json", f], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "indecomposable_over_ring"
        assert payload["g"] is None
        assert payload["evidence"]["field_h_text"] == "x^2 + (1/2+1/2*w)*x"
        by_u = {c["u"]: c for c in payload["evidence"]["candidates"]}
        assert by_u["1-w"]["square_divides_lead"] is True
        assert by_u["1-w"]["divides_linear"] is False

    def test_quartic_fail_flag(self, capsys):
        f = "(-4-2*w)*x^4 + (6-6*w)*x^3 + 11*x^2 + (1+w)*x"
        code, _, _ = run_cli(["quartic", "--ring", "Z[sqrt(-5)]",
                              "--fail-on-indecomposable", f], capsys)
        assert code == 2

    def test_witness_builtin_text_matches_build(self, capsys):
        code, out, _ = run_cli(["witness", "--builtin"], capsys)
        assert code == 0
        assert "f = (-4-2*w)*x^4 + (6-6*w)*x^3 + 11*x^2 + (1+w)*x" in out
        assert "PASS ring_indecomposability" in out

    def test_witness_manual_equals_builtin(self, capsys):
        code1, out1, _ = run_cli(
            ["witness", "--ring", "Z[sqrt(-5)]", "--element", "6",
             "--factorization", "2,3", "--factorization", "1+w,1-w",
             "--json"], capsys)
        code2, out2, _ = run_cli(["witness", "--builtin", "--json"], capsys)
        assert code1 == code2 == 0
        p1, p2 = json.loads(out1), json.loads(out2)
        assert p1["evidence"]["f_text"] == p2["evidence"]["f_text"]
        assert p1["status"] == p2["status"] == "witness_verified"

    def test_witness_equivalent_factorizations(self, capsys):
        code, out, _ = run_cli(
            ["witness", "--ring", "Z", "--element", "6",
             "--factorization=2,3", "--factorization=-3,-2", "--json"],
            capsys)
        assert code == 0
        assert json.loads(out)["status"] == "equivalent_factorizations"

    def test_check_subring(self, capsys):
        code, out, _ = run_cli(
            ["check-subring", "--ring", "Z[t2,t3]", "t^3+2"], capsys)
        assert code == 0 and "is a member" in out
        code, out, _ = run_cli(
            ["check-subring", "--ring", "Z[t2,t3]", "--json", "t^3+t"],
            capsys)
        assert json.loads(out)["status"] == "not_member"

    def test_demo_q2_final_line(self, capsys):
        code, out, _ = run_cli(["demo-q2"], capsys)
        assert code == 0
        assert out.rstrip().splitlines()[-1] == \
            "indecomposable over Z[sqrt(-5)], decomposable over Q(sqrt(-5))"

    def test_demo_q1_small(self, capsys):
        code, out, _ = run_cli(["demo-q1", "--trials", "10", "--json"],
                               capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "ok"
        assert payload["evidence"]["failures"] == 0

    def test_json_output_is_byte_stable(self, capsys):
        argv = ["witness", "--builtin", "--json"]
        _, out1, _ = run_cli(argv, capsys)
        _, out2, _ = run_cli(argv, capsys)
        assert out1 == out2
        argv = ["decompose", "--ring", "Z[sqrt(-5)]", "--json",
                "x^4+2*w*x^2+1"]
        _, out1, _ = run_cli(argv, capsys)
        _, out2, _ = run_cli(argv, capsys)
        assert out1 == out2


class TestErrorHandling:
    def test_syntax_error_exits_1(self, capsys):
        code, out, err = run_cli(["compose", "2x", "x"], capsys)
        assert code == 1
        assert "implicit multiplication" in err

    def test_membership_error_exits_1(self, capsys):
        code, _, err = run_cli(["decompose", "--ring", "Z", "1/2*x^4"],
                               capsys)
        assert code == 1
        assert "does not lie in Z" in err

    def test_unknown_ring_exits_1(self, capsys):
        code, _, err = run_cli(["decompose", "--ring", "F_9", "x^4"], capsys)
        assert code == 1

    def test_missing_argument_exits_1(self, capsys):
        code, _, err = run_cli(["decompose"], capsys)
        assert code == 1

    def test_unknown_command_exits_1(self, capsys):
        code, _, err = run_cli(["transmogrify", "x"], capsys)
        assert code == 1

    def test_field_over_ring_conflict(self, capsys):
        code, _, err = run_cli(
            ["decompose", "--ring", "Q", "--over", "ring", "x^4"], capsys)
        assert code == 1

    def test_quartic_on_wrong_degree(self, capsys):
        code, _, err = run_cli(["quartic", "--ring", "Z", "x^6+x"], capsys)
        assert code == 1

    def test_witness_without_enough_flags(self, capsys):
        code, _, err = run_cli(["witness", "--ring", "Z[sqrt(-5)]"], capsys)
        assert code == 1

    def test_internal_capability_error_exits_1(self, capsys):
        code, _, err = run_cli(
            ["quartic", "--ring", "Z[t]", "t*x^4+x^2"], capsys)
        assert code == 1


class TestFormatResult:
    def test_json_and_text_modes(self):
        ns = build_parser().parse_args(["compose", "x^2", "x^2"])
        result = run(ns)
        assert format_result(result, False) == "x^4"
        parsed = json.loads(format_result(result, True))
        assert parsed["ring"] == "Q"

    def test_payload_keys_are_uniform(self):
        for argv in (["compose", "x^2", "x^3"],
                     ["decompose", "--ring", "Z", "x^4+2*x^2"],
                     ["quartic", "--ring", "Z", "x^4+x^2"],
                     ["witness", "--builtin"],
                     ["check-subring", "--ring", "Z", "5"],
                     ["demo-q1", "--trials", "2"],
                     ["demo-q2"]):
            ns = build_parser().parse_args(argv)
            payload = run(ns).payload
            assert set(payload) == {"command", "ring", "status", "g", "h",
                                    "evidence"}
