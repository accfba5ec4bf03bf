import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import lang_of, modelsets, random_modelset, random_product
from splitlogic.errors import EmptyModelSetError, FormatError, LanguageMismatchError, LanguageTooLargeError
from splitlogic.factorization import Partition, finest_factorization, is_factorization
from splitlogic.language import Language
from splitlogic.logic import models_of, parse_formula
from splitlogic.models import ModelSet
from splitlogic.recoding import (
    Recoding,
    apply_recoding,
    brute_force_affine,
    gf2_rank,
    recoding_from_json,
    search_factorizing_recoding,
    splits,
)

PQ = Language("p q")
PQR = Language("p q r")


class TestApply:
    def test_biconditional_becomes_a_variable(self):
        X = ModelSet.from_bits(PQ, ["11", "00"])
        R = Recoding.from_matrix(PQ, [[1, 0], [1, 1]], [0, 1], ["p", "q'"])
        image = apply_recoding(X, R)
        assert image.bitstrings() == ["01", "11"]
        assert image == models_of(parse_formula("q'"), image.language)
        assert finest_factorization(image) == Partition.discrete(image.language)

    def test_identity(self):
        X = ModelSet.from_bits(PQR, ["001", "110"])
        assert apply_recoding(X, Recoding.identity(PQR)) == X

    def test_three_variables(self):
        X = ModelSet.from_bits(PQR, ["111", "000"])
        R = Recoding.from_matrix(PQR, [[1, 0, 0], [1, 1, 0], [1, 0, 1]], [0, 1, 1], ["p", "q'", "r'"])
        image = apply_recoding(X, R)
        assert image.bitstrings() == ["011", "111"]
        assert str(finest_factorization(image)) == "[p] [q'] [r']"

    def test_size_mismatch(self):
        with pytest.raises(LanguageMismatchError):
            apply_recoding(ModelSet.full(PQ), Recoding.identity(PQR))

    def test_primed_target_names(self):
        R = Recoding.from_matrix(PQ, [[1, 0], [1, 1]])
        assert R.target.names == ("p", "q'")

    @pytest.mark.parametrize("matrix", [[[1, 1], [1, 1]], [[1, 0]], [[0, 0], [0, 1]]])
    def test_singular_or_malformed_matrix(self, matrix):
        with pytest.raises(ValueError):
            Recoding.from_matrix(PQ, matrix)

    def test_permutation_must_be_bijection(self):
        with pytest.raises(ValueError):
            Recoding.permutation(PQ, [0, 0, 1, 2])


class TestSearch:
    def test_correlated_pair_is_recoded(self):
        X = ModelSet.from_bits(PQ, ["11", "00"])
        R = search_factorizing_recoding(X, "affine")
        assert R.matrix() == [[1, 0], [1, 1]] and R.offset_bits() == [0, 0]
        assert apply_recoding(X, R).bitstrings() == ["00", "10"]
        assert search_factorizing_recoding(X, "full") is not None

    def test_three_models_cannot_split(self):
        X = ModelSet.from_bits(PQ, ["11", "10", "00"])
        assert search_factorizing_recoding(X, "full") is None
        assert search_factorizing_recoding(X, "affine") is None

    def test_full_cube_identity_first(self):
        X = ModelSet.full(PQR)
        for mode in ("full", "affine"):
            R = search_factorizing_recoding(X, mode)
            assert R.table == tuple(range(8))

    def test_three_variable_example(self):
        X = ModelSet.from_bits(PQR, ["111", "000"])
        R = search_factorizing_recoding(X, "affine")
        assert splits(apply_recoding(X, R))
        assert R.rows == brute_force_affine(X).rows

    def test_size_limits(self):
        with pytest.raises(LanguageTooLargeError):
            search_factorizing_recoding(ModelSet.full(lang_of(4)), "full")
        with pytest.raises(LanguageTooLargeError):
            search_factorizing_recoding(ModelSet.full(lang_of(6)), "affine")

    def test_bad_mode_and_empty(self):
        with pytest.raises(ValueError):
            search_factorizing_recoding(ModelSet.full(PQ), "quantum")
        with pytest.raises(EmptyModelSetError):
            search_factorizing_recoding(ModelSet(PQ), "full")

    def test_single_variable_never_splits(self):
        assert search_factorizing_recoding(ModelSet.full(Language("p")), "affine") is None


@pytest.mark.parametrize("mode", ["full", "affine"])
def test_every_two_variable_set(mode):
    # splitting into two singleton blocks forces |X| to be 1, 2 or 4
    for k in range(1, 5):
        for codes in combinations(range(4), k):
            X = ModelSet(PQ, codes)
            R = search_factorizing_recoding(X, mode)
            assert (R is not None) == (k != 3), codes
            if R is not None:
                assert splits(apply_recoding(X, R))


@settings(max_examples=150, deadline=None)
@given(modelsets(min_vars=2, max_vars=3))
def test_affine_search_matches_matrix_walk(X):
    R, B = search_factorizing_recoding(X, "affine"), brute_force_affine(X)
    assert (R is None) == (B is None)
    if R is not None:
        assert R.rows == B.rows


@pytest.mark.parametrize("seed", range(8))
def test_affine_search_matches_matrix_walk_four_vars(seed):
    rng = random.Random(seed)
    X = random_modelset(rng, 4, density=rng.uniform(0.15, 0.6))
    R, B = search_factorizing_recoding(X, "affine"), brute_force_affine(X)
    assert (R is None) == (B is None)
    if R is not None:
        assert R.rows == B.rows


@settings(max_examples=100, deadline=None)
@given(modelsets(min_vars=2, max_vars=3))
def test_full_search_success_splits(X):
    R = search_factorizing_recoding(X, "full")
    if R is not None:
        assert splits(apply_recoding(X, R))
    if splits(X):
        assert R.table == tuple(range(X.language.cube_size))


@settings(max_examples=100, deadline=None)
@given(modelsets(max_vars=5))
def test_inverse_undoes_recoding(X):
    n = X.language.size
    rng = random.Random(len(X) * 31 + n)
    while True:
        rows = [rng.randrange(1, 1 << n) for _ in range(n)]
        if gf2_rank(rows) == n:
            break
    R = Recoding.affine(X.language, rows, rng.randrange(1 << n))
    assert apply_recoding(apply_recoding(X, R), R.inverse()) == X


@pytest.mark.parametrize("seed", range(20))
def test_blockwise_recoding_keeps_factorization(seed):
    rng = random.Random(seed)
    lang = lang_of(4)
    groups = [[0, 1], [2, 3]]
    X = random_product(rng, lang, groups)
    # block-diagonal matrix: each block is recoded on its own
    rows = [lang.bit(0) | lang.bit(1), lang.bit(1), lang.bit(2), lang.bit(2) | lang.bit(3)]
    R = Recoding.affine(lang, rows, rng.randrange(16))
    assert is_factorization(X, Partition(lang, groups))
    assert is_factorization(apply_recoding(X, R), Partition(R.target, groups))


class TestJson:
    def test_affine_round_trip(self):
        R = Recoding.from_matrix(PQ, [[1, 0], [1, 1]], [0, 1], ["p", "q'"])
        assert R.to_json() == {"matrix": [[1, 0], [1, 1]], "offset": [0, 1], "target_vars": ["p", "q'"]}
        assert recoding_from_json(R.to_json(), PQ) == R

    def test_permutation_forms(self):
        R = Recoding.permutation(PQ, [3, 2, 1, 0])
        assert R.to_json() == {"permutation": [3, 2, 1, 0], "target_vars": ["p", "q"]}
        assert recoding_from_json(R.to_json(), PQ).table == R.table
        assert recoding_from_json("[1, 0, 3, 2]", PQ).table == (1, 0, 3, 2)

    @pytest.mark.parametrize("text", ["{", '{"matrix": [[1, 1], [1, 1]]}', "[0, 0, 0, 0]", "{}"])
    def test_bad_json(self, text):
        with pytest.raises(FormatError):
            recoding_from_json(text, PQ)
