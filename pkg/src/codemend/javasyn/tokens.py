"""Lexer for a Java subset, with error recovery.

Any text is accepted: malformed input shows up as ERROR tokens with a
reason attached instead of an exception. Tokens remember their leading
whitespace (and, on the last token, any trailing whitespace), so the
exact source text can be reconstructed with detokenize().
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    INT_LITERAL = "int_literal"
    FLOAT_LITERAL = "float_literal"
    STRING_LITERAL = "string_literal"
    CHAR_LITERAL = "char_literal"
    OPERATOR = "operator"
    SEPARATOR = "separator"
    COMMENT = "comment"
    ERROR = "error"


KEYWORDS = frozenset({
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while",
    # literal words lex as keywords; nothing downstream needs them split out
    "true", "false", "null",
})

SEPARATOR_CHARS = "(){}[];,.@"

# Longest match first.
OPERATORS = (
    ">>>=", ">>>", ">>=", "<<=",
    "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>",
    "+", "-", "*", "/", "%", "=", "<", ">", "!", "&", "|", "^", "~", "?", ":",
)

_WHITESPACE = " \t\r\n\f\x0b"
_HEX_DIGITS = "0123456789abcdefABCDEF_"


@dataclass
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    col: int
    offset: int = 0
    ws_before: str = ""
    ws_after: str = ""
    reason: str | None = None

    @property
    def end(self) -> int:
        return self.offset + len(self.lexeme)

    def __repr__(self) -> str:  # compact, for test failure output
        extra = f" reason={self.reason!r}" if self.reason else ""
        return f"<{self.kind.value} {self.lexeme!r} @{self.line}:{self.col}{extra}>"


def tokenize(source: str) -> list[Token]:
    """Lex source into tokens; never raises.

    Every character of the input belongs to exactly one token lexeme or
    to inter-token whitespace (kept in ws_before / trailing ws_after).
    """
    tokens: list[Token] = []
    i = 0
    n = len(source)
    line = 1
    col = 1
    ws_start = 0

    def advance(count: int) -> None:
        nonlocal i, line, col
        for _ in range(count):
            if source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    def emit(kind: TokenKind, start: int, start_line: int, start_col: int,
             reason: str | None = None) -> None:
        tokens.append(Token(
            kind=kind,
            lexeme=source[start:i],
            line=start_line,
            col=start_col,
            offset=start,
            ws_before=source[ws_start:start],
            reason=reason,
        ))

    while i < n:
        ch = source[i]
        if ch in _WHITESPACE:
            advance(1)
            continue

        start, start_line, start_col = i, line, col

        # comments
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                advance(1)
            emit(TokenKind.COMMENT, start, start_line, start_col)
        elif ch == "/" and i + 1 < n and source[i + 1] == "*":
            advance(2)
            closed = False
            while i < n:
                if source[i] == "*" and i + 1 < n and source[i + 1] == "/":
                    advance(2)
                    closed = True
                    break
                advance(1)
            if closed:
                emit(TokenKind.COMMENT, start, start_line, start_col)
            else:
                emit(TokenKind.ERROR, start, start_line, start_col,
                     reason="unterminated comment")

        # string literals (single line, like Java)
        elif ch == '"':
            advance(1)
            closed = False
            while i < n and source[i] != "\n":
                if source[i] == "\\" and i + 1 < n and source[i + 1] != "\n":
                    advance(2)
                    continue
                if source[i] == '"':
                    advance(1)
                    closed = True
                    break
                advance(1)
            if closed:
                emit(TokenKind.STRING_LITERAL, start, start_line, start_col)
            else:
                emit(TokenKind.ERROR, start, start_line, start_col,
                     reason="unterminated string literal")

        # char literals hold exactly one character or escape, so an
        # unclosed quote is detected immediately instead of swallowing
        # the rest of the line
        elif ch == "'":
            advance(1)
            if i < n and source[i] == "'":
                advance(1)
                emit(TokenKind.ERROR, start, start_line, start_col,
                     reason="empty char literal")
            else:
                if i < n and source[i] == "\\" and i + 1 < n and source[i + 1] != "\n":
                    advance(2)
                elif i < n and source[i] != "\n":
                    advance(1)
                if i < n and source[i] == "'":
                    advance(1)
                    emit(TokenKind.CHAR_LITERAL, start, start_line, start_col)
                else:
                    emit(TokenKind.ERROR, start, start_line, start_col,
                         reason="unterminated char literal")

        # numbers
        elif ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            advance(_scan_number_end(source, i) - i)
            emit(_number_kind(source[start:i]), start, start_line, start_col)

        # identifiers / keywords
        elif ch.isalpha() or ch in "_$":
            while i < n and (source[i].isalnum() or source[i] in "_$"):
                advance(1)
            word = source[start:i]
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENTIFIER
            emit(kind, start, start_line, start_col)

        elif ch in SEPARATOR_CHARS:
            advance(1)
            emit(TokenKind.SEPARATOR, start, start_line, start_col)

        else:
            matched = False
            for op in OPERATORS:
                if source.startswith(op, i):
                    advance(len(op))
                    emit(TokenKind.OPERATOR, start, start_line, start_col)
                    matched = True
                    break
            if not matched:
                advance(1)
                emit(TokenKind.ERROR, start, start_line, start_col,
                     reason=f"unexpected character {ch!r}")

        ws_start = i

    if tokens and ws_start < n:
        tokens[-1].ws_after = source[ws_start:]
    return tokens


def _scan_number_end(source: str, start: int) -> int:
    """End index of the numeric literal beginning at start."""
    i = start
    n = len(source)

    if source[i] == "0" and i + 1 < n and source[i + 1] in "xX":
        i += 2
        while i < n and source[i] in _HEX_DIGITS:
            i += 1
        if i < n and source[i] in "lL":
            i += 1
        return i
    if source[i] == "0" and i + 1 < n and source[i + 1] in "bB":
        i += 2
        while i < n and source[i] in "01_":
            i += 1
        if i < n and source[i] in "lL":
            i += 1
        return i

    is_float = False
    if source[i] == ".":
        is_float = True
        i += 1
    while i < n and (source[i].isdigit() or source[i] == "_" or
                     (source[i] == "." and not is_float)):
        if source[i] == ".":
            is_float = True
        i += 1
    if i < n and source[i] in "eE":
        j = i + 1
        if j < n and source[j] in "+-":
            j += 1
        if j < n and source[j].isdigit():
            is_float = True
            i = j
            while i < n and source[i].isdigit():
                i += 1
    if i < n and source[i] in "fFdD":
        i += 1
    elif i < n and source[i] in "lL" and not is_float:
        i += 1
    return i


def _number_kind(lexeme: str) -> TokenKind:
    if lexeme[:2].lower() in ("0x", "0b"):
        return TokenKind.INT_LITERAL
    if any(c in lexeme for c in ".eEfFdD") and not lexeme[:2].lower() == "0x":
        # 'e'/'f'/'d' only mean float in decimal literals
        return TokenKind.FLOAT_LITERAL
    return TokenKind.INT_LITERAL


def detokenize(tokens: Sequence[Token]) -> str:
    """Reassemble the exact source text a token list was produced from."""
    if not tokens:
        return ""
    return "".join(t.ws_before + t.lexeme for t in tokens) + tokens[-1].ws_after


def code_tokens(tokens: Sequence[Token]) -> list[Token]:
    """Tokens that matter to the grammar: comments dropped."""
    return [t for t in tokens if t.kind is not TokenKind.COMMENT]


def literal_close_position(tok: Token) -> int:
    """Where to insert the terminating quote of an unterminated literal.

    Statement and block structure characters almost never appear inside
    CS1 literals but very often follow them, so the quote goes right
    before the first ')', ';' or '}' swallowed into the error lexeme;
    with none present, at the end of the lexeme (end of line).
    """
    body = tok.lexeme[1:]
    cut = len(body)
    for ch in (")", ";", "}"):
        pos = body.find(ch)
        if pos != -1:
            cut = min(cut, pos)
    return tok.offset + 1 + cut
