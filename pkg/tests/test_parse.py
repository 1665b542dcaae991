"""Parser: grammar coverage, precedence, errors with positions, round trips."""

import pytest

import besmin as bm
from besmin import And, AndSet, Const, Or, OrSet, Var


def test_precedence_and_over_or():
    f = bm.parse_formula("X && Y || Z")
    assert f == Or(And(Var("X"), Var("Y")), Var("Z"))
    f = bm.parse_formula("X || Y && Z")
    assert f == Or(Var("X"), And(Var("Y"), Var("Z")))


def test_chains_left_nest():
    assert bm.parse_formula("A && B && C") == And(And(Var("A"), Var("B")), Var("C"))
    assert bm.parse_formula("A || B || C") == Or(Or(Var("A"), Var("B")), Var("C"))


def test_parentheses_and_constants():
    assert bm.parse_formula("(A || B) && true") == And(
        Or(Var("A"), Var("B")), Const(True)
    )
    assert bm.parse_formula("false") == Const(False)


def test_set_syntax():
    assert bm.parse_formula("AND{X, Y}") == AndSet(frozenset({"X", "Y"}))
    assert bm.parse_formula("OR{Z}") == OrSet(frozenset({"Z"}))


def test_comments_and_primes():
    es = bm.parse_bes("// a comment\nmu X' = X'; // trailing\n")
    assert es.equations[0].lhs == "X'"


def test_empty_input_is_empty_system():
    assert bm.parse_bes("") == bm.EquationSystem(())
    assert bm.parse_bes("  // only a comment\n") == bm.EquationSystem(())


def test_parse_error_positions():
    with pytest.raises(bm.ParseError) as exc:
        bm.parse_bes("mu X = Y\nnu Y = X;")
    assert exc.value.line == 2 and exc.value.column == 1
    with pytest.raises(bm.ParseError) as exc:
        bm.parse_bes("mu X = $;")
    assert exc.value.line == 1 and exc.value.column == 8


def test_parse_rejections():
    with pytest.raises(bm.ParseError):
        bm.parse_bes("X = Y;")  # missing sign
    with pytest.raises(bm.ParseError):
        bm.parse_formula("X &&")
    with pytest.raises(bm.ParseError):
        bm.parse_formula("X Y")  # trailing input
    with pytest.raises(bm.ParseError):
        bm.parse_formula("AND{}")
    with pytest.raises(bm.WellFormednessError):
        bm.parse_bes("mu X = X; nu X = X;")


def test_fixtures_parse_print_round_trip():
    for name in bm.fixture_names():
        es = bm.fixture(name)
        assert bm.parse_bes(bm.print_bes(es)) == es


def test_random_parse_print_round_trip():
    for seed in range(50):
        es = bm.gen_bes(bm.GenConfig(variable_count=5, max_rhs_depth=4, seed=seed))
        assert bm.parse_bes(bm.print_bes(es)) == es
        srf = bm.gen_srf_bes(bm.GenConfig(variable_count=5, seed=seed))
        assert bm.parse_bes(bm.print_bes(srf)) == srf
