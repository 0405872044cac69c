import numpy as np
import pytest

from codes.concat import (
    ConcatCode,
    agreement_list_decoder,
    bounded_decoder,
    brute_force_list_decode,
    bw_decoder,
    concat_decode_naive,
    concat_encode,
    concat_list_decode,
    expected_sampled_agreement,
    inner_symbol_lists,
)
from codes.core import LinearCode, as_symbols, hamming_distance, min_distance_exhaustive
from codes.goldreich_levin import gl_list_decode
from codes.hadamard import BitOracle, HadamardCode, int_to_bits
from codes.reed_solomon import RSCode, rs_list_decode
from errors import EnumerationLimitError, ParameterError, ShapeError
from fields.field import get_field


@pytest.fixture
def small_concat(gf4):
    return ConcatCode(RSCode(gf4, 2, n=4), HadamardCode(2))


@pytest.fixture
def naive_concat():
    return ConcatCode(RSCode(get_field(8), 3, n=7), HadamardCode(3))


@pytest.fixture
def ternary_concat():
    gf3 = get_field(3)
    return ConcatCode(RSCode(get_field(9), 2, n=9), LinearCode.generalized_hadamard(gf3, 2))


# ========================================
# ENCODING
# ========================================

def test_parameters_multiply(small_concat):
    assert str(small_concat.params) == "[16, 4, 6]_2"


def test_alphabet_must_match(gf16):
    with pytest.raises(ParameterError):
        ConcatCode(RSCode(gf16, 2, n=4), HadamardCode(3))


def test_zero_message_gives_zero_word(small_concat):
    assert not concat_encode(small_concat, [0, 0, 0, 0]).any()


def test_hand_computed_codeword(small_concat):
    # outer message (1, alpha): word (1, alpha^2, alpha, 0) over GF(4)
    word = concat_encode(small_concat, [0, 1, 1, 0])
    assert word.tolist() == [0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0]


def test_message_length_checked(small_concat):
    with pytest.raises(ShapeError):
        concat_encode(small_concat, [0, 1, 1])


def test_minimum_distance_at_least_product(small_concat, gf2):
    assert min_distance_exhaustive(small_concat.encode, small_concat.params, gf2) >= 6


def test_symbol_embedding_round_trip(ternary_concat):
    symbols = get_field(9).elements()
    vectors = ternary_concat.symbols_to_vectors(symbols)
    assert vectors.shape == (9, 2)
    assert vectors[3].tolist() == [1, 0]
    assert np.array_equal(ternary_concat.vectors_to_symbols(vectors), symbols)


# ========================================
# NAIVE DECODING
# ========================================

def _flip(word: np.ndarray, block: int, count: int, rng) -> None:
    positions = rng.choice(8, size=count, replace=False)
    word[8 * block + positions] ^= 1


def test_naive_decode_no_errors(naive_concat, gf2, rng):
    message = gf2.random(9, rng)
    word = naive_concat.encode(message)
    result = concat_decode_naive(
        naive_concat, word, bounded_decoder(naive_concat.inner, 1), bw_decoder(naive_concat.outer, 2)
    )
    assert result.success and result.failed_blocks == []
    assert np.array_equal(result.message, message)


def test_naive_decode_planted_errors(naive_concat, gf2, rng):
    inner = bounded_decoder(naive_concat.inner, 1)
    outer = bw_decoder(naive_concat.outer, 2)
    for _ in range(20):
        message = gf2.random(9, rng)
        word = as_symbols(naive_concat.encode(message)).copy()
        bad = rng.choice(7, size=2, replace=False)
        for block in range(7):
            _flip(word, block, 3 if block in bad else 1, rng)
        result = concat_decode_naive(naive_concat, word, inner, outer)
        assert result.success
        assert np.array_equal(result.message, message)


def test_naive_decode_too_many_bad_blocks(naive_concat, gf2, rng):
    inner = bounded_decoder(naive_concat.inner, 1)
    outer = bw_decoder(naive_concat.outer, 2)
    message = gf2.random(9, rng)
    word = as_symbols(naive_concat.encode(message)).copy()
    corrupted = [0, 2, 4, 6]
    for block in corrupted:
        word[8 * block: 8 * block + 8] ^= 1
    result = concat_decode_naive(naive_concat, word, inner, outer)
    assert result.failed_blocks == corrupted
    if result.success:
        # The outer decoder still honours its own radius on the inner output.
        rows = [inner(block) for block in word.reshape(7, 8)]
        decoded = np.stack([as_symbols(r) if r is not None else np.zeros(3, dtype=np.int64) for r in rows])
        outer_word = naive_concat.vectors_to_symbols(decoded)
        outer_message = naive_concat.vectors_to_symbols(result.message)
        assert hamming_distance(naive_concat.outer.encode(outer_message), outer_word) <= 2


# ========================================
# LIST DECODING
# ========================================

def _planted_ternary(cc, rng):
    gf3 = cc.field
    message = gf3.random(4, rng)
    word = as_symbols(cc.encode(message)).copy()
    word[:9] = rng.integers(0, 3, size=9)
    word[12] = (word[12] + 1) % 3
    return message, word


def _outer_list(cc, t):
    return lambda outer_word: rs_list_decode(cc.outer, outer_word, t).messages


def test_noiseless_word_is_listed(ternary_concat):
    gf3 = ternary_concat.field
    message = gf3([2, 0, 1, 1])
    word = ternary_concat.encode(message)
    result = concat_list_decode(
        ternary_concat,
        word,
        agreement_list_decoder(ternary_concat.inner, 5),
        _outer_list(ternary_concat, 7),
        repetitions=3,
        rng=np.random.default_rng(0),
    )
    assert message in result
    assert result.words_tried == 3


def test_randomized_output_within_exhaustive(ternary_concat, rng):
    inner = agreement_list_decoder(ternary_concat.inner, 5)
    outer = _outer_list(ternary_concat, 7)
    for _ in range(5):
        message, word = _planted_ternary(ternary_concat, rng)
        randomized = concat_list_decode(ternary_concat, word, inner, outer, 10, rng)
        exhaustive = concat_list_decode(ternary_concat, word, inner, outer, 0, variant="exhaustive")
        assert message in randomized
        assert set(randomized.messages) <= set(exhaustive.messages)
        for close in brute_force_list_decode(ternary_concat, word, 60):
            assert close in exhaustive


def test_sampled_word_agreement(ternary_concat, rng):
    message, word = _planted_ternary(ternary_concat, rng)
    lists = inner_symbol_lists(ternary_concat, word, agreement_list_decoder(ternary_concat.inner, 5))
    assert all(len(symbols) == 1 for symbols in lists[1:])
    outer_codeword = ternary_concat.outer.encode(ternary_concat.vectors_to_symbols(message))
    assert expected_sampled_agreement(lists, outer_codeword) >= 8


def test_combiner_validation(ternary_concat, rng):
    word = ternary_concat.encode([0, 0, 0, 0])
    inner = agreement_list_decoder(ternary_concat.inner, 5)
    outer = _outer_list(ternary_concat, 7)
    with pytest.raises(ParameterError):
        concat_list_decode(ternary_concat, word, inner, outer, 5)
    with pytest.raises(ParameterError):
        concat_list_decode(ternary_concat, word, inner, outer, 5, rng, variant="greedy")


def test_cross_product_guard(ternary_concat):
    word = ternary_concat.encode([0, 0, 0, 0])
    everything = agreement_list_decoder(ternary_concat.inner, 0)
    with pytest.raises(EnumerationLimitError):
        concat_list_decode(ternary_concat, word, everything, lambda w: [], 0, variant="exhaustive")


def test_rs_hadamard_with_goldreich_levin_inner(gf16, gf2, rng):
    # GL list-decodes every 16-bit Hadamard block; Sudan combines the symbols.
    cc = ConcatCode(RSCode(gf16, 2, n=15), HadamardCode(4))
    message = gf2.random(8, rng)
    word = as_symbols(cc.encode(message)).copy()
    for block in range(15):
        positions = rng.choice(16, size=2, replace=False)
        word[16 * block + positions] ^= 1

    def gl_inner(block):
        found = gl_list_decode(BitOracle(block), 0.3, rng=rng)
        return [gf2(int_to_bits(c, 4)) for c in found.candidates]

    result = concat_list_decode(cc, word, gl_inner, _outer_list(cc, 8), repetitions=5, rng=rng)
    assert message in result
