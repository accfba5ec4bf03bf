import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitlogic.errors import FormulaSyntaxError, UnknownVariableError
from splitlogic.language import Language
from splitlogic.logic import (
    BOTTOM,
    TOP,
    And,
    Const,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    entails,
    evaluate,
    format_formula,
    formula_of_models,
    models_of,
    parse_formula,
    vars_in_order,
    vars_of,
)
from splitlogic.models import ModelSet

p, q, r = Var("p"), Var("q"), Var("r")


class TestParse:
    def test_and_binds_tighter_than_or(self):
        assert parse_formula("p & q | r") == Or(And(p, q), r)

    def test_iff_is_not_associative(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("p <-> q <-> r")
        assert info.value.position == 8
        assert "parenthesize" in str(info.value)

    def test_negated_implication(self):
        assert parse_formula("!(p -> q)") == Not(Implies(p, q))

    def test_implication_is_right_associative(self):
        assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))

    def test_and_or_left_associative(self):
        assert parse_formula("p & q & r") == And(And(p, q), r)
        assert parse_formula("p | q | r") == Or(Or(p, q), r)

    def test_full_precedence_ladder(self):
        f = parse_formula("!p & q | r -> p <-> q")
        assert f == Iff(Implies(Or(And(Not(p), q), r), p), q)

    def test_constants(self):
        assert parse_formula("T") == TOP
        assert parse_formula("F | p") == Or(BOTTOM, p)

    def test_unicode_aliases(self):
        assert parse_formula("¬p ∧ q ∨ ⊥") == parse_formula("!p & q | F")
        assert parse_formula("p → q ↔ ⊤") == parse_formula("p -> q <-> T")

    def test_primed_identifiers(self):
        assert parse_formula("q' & p") == And(Var("q'"), p)

    @pytest.mark.parametrize(
        "text, position",
        [("p &", 3), ("(p | q", 6), ("p q", 2), ("p $ q", 2), (")", 0), ("p -> ", 5)],
    )
    def test_errors_carry_position(self, text, position):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula(text)
        assert info.value.position == position
        assert "expected" in str(info.value) or "unexpected" in str(info.value)

    def test_empty_text_rejected(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("   ")


def formulas(names=("p", "q", "r"), max_leaves=12):
    leaves = st.one_of(st.sampled_from([Var(n) for n in names]), st.sampled_from([TOP, BOTTOM]))

    def extend(children):
        return st.one_of(
            st.builds(Not, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Iff, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@given(formulas())
def test_print_then_parse_is_identity(f):
    assert parse_formula(format_formula(f)) == f


class TestVars:
    def test_conjunction(self):
        assert vars_of(And(p, q)) == {"p", "q"}

    def test_constant_has_none(self):
        assert vars_of(TOP) == frozenset()

    def test_repeated(self):
        assert vars_of(parse_formula("p | (p & q)")) == {"p", "q"}

    def test_first_occurrence_order(self):
        fs = [parse_formula("r & p"), parse_formula("q | r")]
        assert vars_in_order(fs) == ["r", "p", "q"]


class TestModels:
    def test_conjunction(self):
        assert models_of(And(p, q), Language("p q")).bitstrings() == ["11"]

    def test_bottom(self):
        assert models_of(BOTTOM, Language("p")).bitstrings() == []

    def test_biconditional(self):
        assert models_of(Iff(p, q), Language("p q")).bitstrings() == ["00", "11"]

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            models_of(And(p, r), Language("p q"))

    def test_matches_pointwise_evaluation(self):
        lang = Language("p q r")
        f = parse_formula("(p -> q) <-> !r | p")
        expected = [
            "".join(map(str, bits))
            for bits in itertools.product((0, 1), repeat=3)
            if evaluate(f, dict(zip("pqr", map(bool, bits))))
        ]
        assert models_of(f, lang).bitstrings() == expected


class TestFormulaOfModels:
    def test_single_model(self):
        X = ModelSet.from_bits("p q", ["11"])
        assert formula_of_models(X) == And(p, q)

    def test_empty(self):
        assert formula_of_models(ModelSet(Language("p"))) == BOTTOM

    def test_two_models(self):
        X = ModelSet.from_bits("p q", ["00", "11"])
        assert formula_of_models(X) == Or(And(Not(p), Not(q)), And(p, q))


class TestEntails:
    lang = Language("p q")

    def test_conjunction_entails_conjunct(self):
        assert entails(And(p, q), p, self.lang)

    def test_not_conversely(self):
        assert not entails(p, And(p, q), self.lang)

    def test_bottom_entails_anything(self):
        assert entails(BOTTOM, q, self.lang)
        assert entails(BOTTOM, BOTTOM, self.lang)


LANG3 = Language("p q r")


@settings(max_examples=200)
@given(formulas())
def test_negation_complements(f):
    X = models_of(f, LANG3)
    assert models_of(Not(f), LANG3) == X.complement()


@settings(max_examples=200)
@given(formulas())
def test_dnf_round_trip(f):
    X = models_of(f, LANG3)
    assert models_of(formula_of_models(X), LANG3) == X


NAMES6 = ("a", "b", "c", "d", "e", "f")
LANG6 = Language(NAMES6)


@settings(max_examples=100)
@given(formulas(NAMES6), formulas(NAMES6), formulas(NAMES6))
def test_entails_reflexive_and_transitive(f, g, h):
    assert entails(f, f, LANG6)
    if entails(f, g, LANG6) and entails(g, h, LANG6):
        assert entails(f, h, LANG6)


def test_const_prints():
    assert format_formula(Const(True)) == "T"
    assert format_formula(parse_formula("!(p & q) -> (r -> p) -> q")) == "!(p & q) -> (r -> p) -> q"
