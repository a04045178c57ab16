"""Delimiter balance checking over token streams.

Defect detection is a plain stack simulation over ( ) { } [ ] separator
tokens; delimiters inside strings, chars and comments never show up as
separators, so they are naturally ignored. Suggested insertion points
for missing closers are refined with the parser's recovery hints, which
know about statement structure (a ')' goes before the ';' that ends the
call, a '}' goes before the 'else' it strands, and so on); the fallback
is the token that exposed the mismatch, else end of input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .parse import parse_tokens
from .tokens import Token, TokenKind, literal_close_position

OPENERS = "([{"
CLOSERS = ")]}"
_CLOSER_FOR = {"(": ")", "[": "]", "{": "}"}
_OPENER_FOR = {")": "(", "]": "[", "}": "{"}


@dataclass(frozen=True)
class BalanceDefect:
    kind: str  # missing_close | missing_open | mismatched_pair | unterminated_literal
    delimiter: str
    line: int
    col: int
    suggested_insert_position: int
    insert_text: str


@dataclass
class BalanceReport:
    defects: list[BalanceDefect] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.defects


def check_balance(tokens: Sequence[Token]) -> BalanceReport:
    """Report unmatched delimiters and unterminated literals."""
    tokens = list(tokens)
    src_len = tokens[-1].end + len(tokens[-1].ws_after) if tokens else 0

    # Parser recovery hints refine where missing closers should go.
    hints = [h for h in parse_tokens(tokens, src_len).hints
             if h.kind == "close_delimiter"]
    hint_used = [False] * len(hints)

    def take_hint(closer: str, fallback: int) -> int:
        for idx, h in enumerate(hints):
            if not hint_used[idx] and h.text == closer:
                hint_used[idx] = True
                return h.offset
        return fallback

    defects: list[BalanceDefect] = []
    stack: list[Token] = []
    for tok in tokens:
        if tok.kind is TokenKind.ERROR and tok.reason and tok.reason.startswith("unterminated"):
            if "literal" in tok.reason:
                quote = '"' if "string" in tok.reason else "'"
                position = literal_close_position(tok) if quote == '"' else tok.end
                defects.append(BalanceDefect(
                    kind="unterminated_literal",
                    delimiter=quote,
                    line=tok.line,
                    col=tok.col,
                    suggested_insert_position=position,
                    insert_text=quote,
                ))
            continue
        if tok.kind is not TokenKind.SEPARATOR or tok.lexeme not in OPENERS + CLOSERS:
            continue
        if tok.lexeme in OPENERS:
            stack.append(tok)
            continue
        want = _OPENER_FOR[tok.lexeme]
        if stack and stack[-1].lexeme == want:
            stack.pop()
        elif any(t.lexeme == want for t in stack):
            # closers exist deeper in the stack: everything above the
            # match was left unclosed, evident at this token
            while stack and stack[-1].lexeme != want:
                open_tok = stack.pop()
                closer = _CLOSER_FOR[open_tok.lexeme]
                defects.append(BalanceDefect(
                    kind="missing_close",
                    delimiter=closer,
                    line=open_tok.line,
                    col=open_tok.col,
                    suggested_insert_position=take_hint(closer, tok.offset),
                    insert_text=closer,
                ))
            stack.pop()
        elif stack:
            defects.append(BalanceDefect(
                kind="mismatched_pair",
                delimiter=tok.lexeme,
                line=tok.line,
                col=tok.col,
                suggested_insert_position=tok.offset,
                insert_text=_CLOSER_FOR[stack[-1].lexeme],
            ))
        else:
            defects.append(BalanceDefect(
                kind="missing_open",
                delimiter=want,
                line=tok.line,
                col=tok.col,
                suggested_insert_position=tok.offset,
                insert_text=want,
            ))
    for open_tok in reversed(stack):
        closer = _CLOSER_FOR[open_tok.lexeme]
        defects.append(BalanceDefect(
            kind="missing_close",
            delimiter=closer,
            line=open_tok.line,
            col=open_tok.col,
            suggested_insert_position=take_hint(closer, src_len),
            insert_text=closer,
        ))
    return BalanceReport(defects=defects)
