from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypident.dsl import evaluate, parse, render
from hypident.dsl.ast import BinOp, Name, Num, Poch, QProdInf, Sum
from hypident.dsl.corpus import CORPUS
from hypident.errors import ArityError, ConstraintViolation, DSLError, DSLSyntaxError, UndeclaredSymbol
from hypident.registry import REGISTRY
from hypident.verify import FAIL, PASS, verify_formal

F = Fraction
QBIN = """\
param a = 1/3
param q = 1/2
var z
mode formal 6
sum(l, 0, auto, qpoch(a, l)/qpoch(q, l) * z^l) == qprodinf(a*z)/qprodinf(z)
"""


def test_qbin_tree():
    doc = parse(QBIN)
    l, a, q, z = Name("l"), Name("a"), Name("q"), Name("z")
    left = Sum("l", Num(F(0)), None,
               BinOp("*", BinOp("/", Poch(True, a, l), Poch(True, q, l)), BinOp("^", z, l)))
    right = BinOp("/", QProdInf(BinOp("*", a, z)), QProdInf(z))
    assert doc.sides == (left, right)
    assert doc.param_names() == ["a", "q"]
    assert doc.mode.kind == "formal" and doc.mode.value == 6


def test_qbin_evaluates_like_registry():
    report = evaluate(parse(QBIN))
    assert report.verdict == PASS
    assert verify_formal("qbin", {"a": F(1, 3), "q": F(1, 2)}, 6).verdict == PASS


def test_mutated_qbin_reports_first_mismatch():
    report = evaluate(parse(QBIN.replace("* z^l", "* z^(l + 1)")))
    assert report.verdict == FAIL
    first = report.differences[0]
    assert first["monomial"] == "1"
    # side 1 is the mutated sum, which lost its constant term
    assert first["expected"] == 0 and first["actual"] == 1


def test_vand_document():
    text = "param a = 1/3\nparam c = 5/7\nparam N = 4\nhyp(a, -N; c; 1) == pochhammer(c - a, N)/pochhammer(c, N)\n"
    report = evaluate(parse(text))
    assert report.verdict == PASS and report.differences == []


def test_arity_error():
    with pytest.raises(ArityError) as info:
        parse("param a = 1\npochhammer(a) == 1")
    assert (info.value.line, info.value.column) == (2, 1)


def test_syntax_error_position():
    with pytest.raises(DSLSyntaxError) as info:
        parse("param a = 1\na + * 2 == 1")
    assert info.value.line == 2 and info.value.column == 5
    assert info.value.expected


def test_undeclared_symbol():
    with pytest.raises(UndeclaredSymbol) as info:
        parse("param a = 1\na + b == 1")
    assert info.value.line == 2 and info.value.column == 5


def test_q_function_needs_q():
    with pytest.raises(UndeclaredSymbol):
        parse("param a = 1/2\nqpoch(a, 2) == 1")


def test_predicate_is_checked():
    doc = parse("param c = 0 where c != 0\nc == c")
    with pytest.raises(ConstraintViolation):
        evaluate(doc)


def test_evaluation_error_has_location():
    report = evaluate(parse("param a = -2\nparam b = 0\npochhammer(a, 2) == 1/b"))
    assert report.verdict == "error" and "line 3" in report.error


def test_numeric_document():
    text = "param a = 1/3\nparam q = 1/2\nvar z = 1/4\nmode numeric 1e-12\n" \
           "qhyp(a; ; z) == qprodinf(a*z)/qprodinf(z)"
    report = evaluate(parse(text))
    assert report.verdict == PASS and report.measured["relative error"] < 1e-12


def test_corpus_covers_registry():
    assert set(CORPUS) == set(REGISTRY)


@pytest.mark.parametrize("identity", sorted(CORPUS))
def test_corpus_round_trip(identity):
    doc = parse(CORPUS[identity].text)
    printed = render(doc)
    assert parse(printed) == doc
    assert render(parse(printed)) == printed


@pytest.mark.parametrize("identity", sorted(k for k, e in CORPUS.items() if e.evaluable))
def test_corpus_evaluates(identity):
    entry = CORPUS[identity]
    report = evaluate(parse(entry.text), name=identity)
    assert report.verdict == (PASS if entry.expect == "pass" else FAIL)


ATOMS = ["param", "var", "mode", "formal", "numeric", "where", "and", "auto", "a", "q", "x", "l", "1", "2/3",
         "1e-5", "(", ")", ",", ";", "+", "-", "*", "/", "^", "==", "!=", "<", "sum", "hyp", "qhyp", "qpoch",
         "pochhammer", "qprodinf", "vwp8phi7", "abs", "=", "\n", " ", "#", "$", "1e999"]


def _check_parse(text):
    try:
        doc = parse(text)
    except DSLError as exc:
        assert exc.line >= 1 and exc.column >= 1
        return
    assert parse(render(doc)) == doc


@given(st.text(max_size=80))
def test_fuzz_text(text):
    _check_parse(text)


@given(st.lists(st.sampled_from(ATOMS), max_size=40))
def test_fuzz_tokens(tokens):
    _check_parse(" ".join(tokens))


@given(st.lists(st.sampled_from(ATOMS), max_size=30))
def test_fuzz_tokens_after_prelude(tokens):
    _check_parse("param a = 1/2\nparam q = 1/3\nvar x\n" + " ".join(tokens))


def test_deep_nesting_is_rejected_cleanly():
    _check_parse("(" * 5000 + "1" + ")" * 5000 + " == 1")
    _check_parse("-" * 5000 + "1 == 1")
