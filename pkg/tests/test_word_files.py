import numpy as np
import pytest

from errors import InputError
from storage.word_files import detect_format, format_words, load_words, parse_words, save_words


# ========================================
# PARSING
# ========================================

def test_decimal_words_split_on_blank_lines():
    words = parse_words("1\n2\n\n3\n4\n", q=5)
    assert [w.tolist() for w in words] == [[1, 2], [3, 4]]


def test_comments_and_extra_blank_lines_ignored():
    text = "# received words\n1\n0\n\n\n# second\n4\n3\n"
    words = parse_words(text, q=5, n=2)
    assert [w.tolist() for w in words] == [[1, 0], [4, 3]]


def test_hex_words_are_msb_first():
    words = parse_words("8:a5\n3:1\n", q=2)
    assert words[0].tolist() == [1, 0, 1, 0, 0, 1, 0, 1]
    assert words[1].tolist() == [0, 0, 1]


def test_detect_format():
    assert detect_format("# c\n\n4:f\n") == "hex"
    assert detect_format("3\n1\n") == "decimal"
    assert detect_format("") == "decimal"


@pytest.mark.parametrize(
    "text, q, n",
    [
        ("1\nx\n", 5, None),
        ("1\n7\n", 5, None),
        ("1\n2\n3\n", 5, 2),
        ("4:a\n", 3, None),
        ("3:f\n", 2, None),
        ("zz:1\n", 2, None),
    ],
)
def test_bad_input_rejected(text, q, n):
    with pytest.raises(InputError):
        parse_words(text, q, n)


# ========================================
# FORMATTING
# ========================================

def test_format_decimal():
    assert format_words([np.array([1, 2]), [3]]) == "1\n2\n\n3\n\n"


def test_format_hex():
    assert format_words([[1, 0, 1, 0, 0, 1, 0, 1]], "hex") == "8:a5\n"
    assert format_words([[0, 0, 1]], "hex") == "3:1\n"


def test_format_errors():
    with pytest.raises(InputError):
        format_words([[0, 2]], "hex")
    with pytest.raises(InputError):
        format_words([[0, 1]], "octal")


def test_formatted_text_parses_back():
    words = [np.array([0, 10, 15, 3]), np.array([1, 1, 1, 1])]
    parsed = parse_words(format_words(words), q=16, n=4)
    assert all(np.array_equal(a, b) for a, b in zip(parsed, words))


# ========================================
# FILES
# ========================================

def test_save_and_load(tmp_path):
    path = tmp_path / "words.txt"
    save_words(path, [[1, 0, 1, 1]], "hex")
    assert path.read_text() == "4:b\n"
    assert load_words(path, q=2, n=4)[0].tolist() == [1, 0, 1, 1]


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_words(tmp_path / "absent.txt", q=2)
