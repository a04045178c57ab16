import random

import pytest
from hypothesis import given, settings, strategies as st

from codemend.javasyn import detokenize, tokenize
from codemend.javasyn.tokens import TokenKind, literal_close_position

from conftest import random_programs


def kinds_and_lexemes(source):
    return [(t.kind.value, t.lexeme) for t in tokenize(source)]


def test_simple_declaration():
    assert kinds_and_lexemes("int x = 5;") == [
        ("keyword", "int"),
        ("identifier", "x"),
        ("operator", "="),
        ("int_literal", "5"),
        ("separator", ";"),
    ]


def test_empty_source():
    assert tokenize("") == []


def test_unterminated_string_is_error_token_with_position():
    toks = tokenize('String s = "ab')
    last = toks[-1]
    assert last.kind is TokenKind.ERROR
    assert last.reason == "unterminated string literal"
    assert (last.line, last.col) == (1, 12)
    assert last.lexeme == '"ab'


def test_unterminated_char_stops_after_one_character():
    toks = tokenize("if (c == 'a || c == 'e') { }")
    errors = [t for t in toks if t.kind is TokenKind.ERROR]
    assert len(errors) == 1
    assert errors[0].lexeme == "'a"
    # the second quote pair still lexes as a char literal
    assert any(t.kind is TokenKind.CHAR_LITERAL and t.lexeme == "'e'" for t in toks)


def test_char_literal_forms():
    assert kinds_and_lexemes("'a'")[0] == ("char_literal", "'a'")
    assert kinds_and_lexemes(r"'\n'")[0] == ("char_literal", r"'\n'")
    assert kinds_and_lexemes(r"'\''")[0] == ("char_literal", r"'\''")
    assert kinds_and_lexemes("''")[0][0] == "error"


def test_string_escapes():
    toks = tokenize(r'"a\"b" + "c\\"')
    assert toks[0].kind is TokenKind.STRING_LITERAL
    assert toks[0].lexeme == r'"a\"b"'
    assert toks[2].kind is TokenKind.STRING_LITERAL


def test_comments_are_tokens():
    toks = tokenize("// line\nint x; /* block\nstill */ x++;")
    kinds = [t.kind for t in toks]
    assert kinds.count(TokenKind.COMMENT) == 2
    assert toks[0].lexeme == "// line"


def test_unterminated_comment_is_error():
    toks = tokenize("int x; /* never closed")
    assert toks[-1].kind is TokenKind.ERROR
    assert toks[-1].reason == "unterminated comment"


def test_numbers():
    cases = {
        "42": "int_literal",
        "0x1F": "int_literal",
        "0b101": "int_literal",
        "7L": "int_literal",
        "1_000": "int_literal",
        "3.5": "float_literal",
        ".5": "float_literal",
        "1.": "float_literal",
        "2e10": "float_literal",
        "1.5e-3": "float_literal",
        "2.5f": "float_literal",
        "42d": "float_literal",
    }
    for lexeme, kind in cases.items():
        toks = tokenize(lexeme)
        assert [(t.kind.value, t.lexeme) for t in toks] == [(kind, lexeme)], lexeme


def test_maximal_munch_operators():
    assert [t.lexeme for t in tokenize("a>>>=b")] == ["a", ">>>=", "b"]
    assert [t.lexeme for t in tokenize("i++ + ++j")] == ["i", "++", "+", "++", "j"]
    assert [t.lexeme for t in tokenize("x<=y")] == ["x", "<=", "y"]


def test_member_access_vs_float():
    assert [t.lexeme for t in tokenize("nums.length")] == ["nums", ".", "length"]
    assert [t.lexeme for t in tokenize("arr[0].length")] == ["arr", "[", "0", "]", ".", "length"]


def test_line_and_column_tracking():
    toks = tokenize("int x;\n  y = 2;")
    y = next(t for t in toks if t.lexeme == "y")
    assert (y.line, y.col) == (2, 3)


def test_unknown_character_becomes_error_token():
    toks = tokenize("int # x;")
    errors = [t for t in toks if t.kind is TokenKind.ERROR]
    assert len(errors) == 1
    assert errors[0].lexeme == "#"
    assert "unexpected character" in errors[0].reason


def test_every_character_is_covered():
    source = 'int x = 1; // c\nString s = "a b";\n'
    toks = tokenize(source)
    covered = sum(len(t.ws_before) + len(t.lexeme) for t in toks) + len(toks[-1].ws_after)
    assert covered == len(source)


def test_detokenize_round_trip_examples():
    for source in [
        "",
        "int x = 5;",
        "int x = 5;\n",
        "  \t int\tx;\r\n y++;  ",
        'String s = "ab',
        "a >>>= b; /* c */ // d",
        "weird @ # $ stuff",
    ]:
        assert detokenize(tokenize(source)) == source


def test_detokenize_round_trip_seed_corpus(seed_programs):
    for name, source in seed_programs.items():
        assert detokenize(tokenize(source)) == source, name


def test_detokenize_round_trip_random_programs():
    for source in random_programs(200, seed=13, junk=True):
        assert detokenize(tokenize(source)) == source


@settings(max_examples=300)
@given(st.text(alphabet=st.characters(codec="utf-8"), max_size=80))
def test_detokenize_round_trip_arbitrary_text(source):
    # input that is nothing but lexer whitespace has no token to carry
    # its text; every other string round-trips exactly
    toks = tokenize(source)
    if source and all(c in " \t\r\n\f\x0b" for c in source):
        assert toks == []
    else:
        assert detokenize(toks) == source


def test_literal_close_position_prefers_structure_chars():
    tok = tokenize('x = "done);')[2]
    assert tok.kind is TokenKind.ERROR
    # insert before the ')' that the broken literal swallowed
    assert literal_close_position(tok) == 'x = "done);'.index(")")
    tok2 = tokenize('x = "no end')[2]
    assert literal_close_position(tok2) == len('x = "no end')
