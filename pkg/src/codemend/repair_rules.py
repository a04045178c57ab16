"""Deterministic syntax-only repair.

Five ordered rules, each a pure insertion or a single-token case fix,
never a deletion of student text:

1. terminate unterminated string/char literals at end of line;
2. insert missing close delimiters where the parser says the group
   must have ended;
3. insert missing open delimiters in front of a lone closer;
4. insert ';' at statement boundaries that lack one;
5. lowercase control keywords written capitalized (If, While, For,
   Switch) when followed by '('.

The whole pipeline runs up to three passes, re-checking the parse in
between; already-parseable input is returned untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .javasyn import check_balance, parse_check, parse_tokens, tokenize
from .javasyn.tokens import TokenKind, literal_close_position

MAX_PASSES = 3
KEYWORD_CASE_TARGETS = frozenset({"if", "while", "for", "switch"})

RULE_TERMINATE_LITERAL = "terminate-literal"
RULE_INSERT_CLOSE = "insert-close-delimiter"
RULE_INSERT_OPEN = "insert-open-delimiter"
RULE_INSERT_SEMICOLON = "insert-semicolon"
RULE_KEYWORD_CASE = "keyword-case"


@dataclass(frozen=True)
class AppliedFix:
    rule: str
    line: int
    col: int
    text: str
    offset: int
    replaced: str = ""  # empty for pure insertions

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "line": self.line,
            "col": self.col,
            "text": self.text,
            "offset": self.offset,
            "replaced": self.replaced,
        }


@dataclass
class RuleRepairOutcome:
    repaired_source: str
    applied_fixes: list[AppliedFix] = field(default_factory=list)
    parse_ok_after: bool = False


# An edit is (offset, length_removed, inserted_text, rule). Insertions
# have length_removed == 0.
_Edit = tuple[int, int, str, str]


def repair(source: str) -> RuleRepairOutcome:
    cur = source
    fixes: list[AppliedFix] = []
    for _ in range(MAX_PASSES):
        if parse_check(cur).ok:
            break
        before = cur
        cur = _apply(cur, _literal_edits(cur), fixes)
        cur = _apply(cur, _delimiter_edits(cur), fixes)
        cur = _apply(cur, _semicolon_edits(cur), fixes)
        cur = _apply(cur, _keyword_case_edits(cur), fixes)
        if cur == before:
            break  # nothing left this engine knows how to fix
    return RuleRepairOutcome(
        repaired_source=cur,
        applied_fixes=fixes,
        parse_ok_after=parse_check(cur).ok,
    )


def _literal_edits(source: str) -> list[_Edit]:
    edits: list[_Edit] = []
    for tok in tokenize(source):
        if tok.kind is not TokenKind.ERROR or not tok.reason:
            continue
        if tok.reason.startswith("unterminated string"):
            edits.append((literal_close_position(tok), 0, '"', RULE_TERMINATE_LITERAL))
        elif tok.reason.startswith("unterminated char"):
            edits.append((tok.end, 0, "'", RULE_TERMINATE_LITERAL))
    return edits


def _delimiter_edits(source: str) -> list[_Edit]:
    edits: list[_Edit] = []
    for defect in check_balance(tokenize(source)).defects:
        if defect.kind in ("missing_close", "mismatched_pair"):
            edits.append((defect.suggested_insert_position, 0,
                          defect.insert_text, RULE_INSERT_CLOSE))
        elif defect.kind == "missing_open":
            edits.append((defect.suggested_insert_position, 0,
                          defect.insert_text, RULE_INSERT_OPEN))
    return edits


def _semicolon_edits(source: str) -> list[_Edit]:
    outcome = parse_tokens(tokenize(source), len(source))
    seen: set[int] = set()
    edits: list[_Edit] = []
    for h in outcome.semicolon_hints():
        if h.offset in seen:
            continue
        seen.add(h.offset)
        edits.append((h.offset, 0, ";", RULE_INSERT_SEMICOLON))
    return edits


def _keyword_case_edits(source: str) -> list[_Edit]:
    toks = [t for t in tokenize(source) if t.kind is not TokenKind.COMMENT]
    edits: list[_Edit] = []
    for tok, nxt in zip(toks, toks[1:]):
        if (tok.kind is TokenKind.IDENTIFIER
                and tok.lexeme.lower() in KEYWORD_CASE_TARGETS
                and tok.lexeme != tok.lexeme.lower()
                and nxt.kind is TokenKind.SEPARATOR and nxt.lexeme == "("):
            edits.append((tok.offset, len(tok.lexeme), tok.lexeme.lower(),
                          RULE_KEYWORD_CASE))
    return edits


def _apply(source: str, edits: list[_Edit], fixes: list[AppliedFix]) -> str:
    """Apply edits computed against source, recording them as fixes.

    Edits are applied in offset order with a running shift, so offsets
    recorded in the fix log refer to the text as it stood when that fix
    landed; replaying the log against the original input reproduces the
    repaired text exactly.
    """
    if not edits:
        return source
    pieces: list[str] = []
    pos = 0
    shift = 0
    for offset, removed, text, rule in sorted(edits, key=lambda e: e[0]):
        line, col = _line_col(source, offset)
        fixes.append(AppliedFix(
            rule=rule,
            line=line,
            col=col,
            text=text,
            offset=offset + shift,
            replaced=source[offset:offset + removed],
        ))
        pieces.append(source[pos:offset])
        pieces.append(text)
        pos = offset + removed
        shift += len(text) - removed
    pieces.append(source[pos:])
    return "".join(pieces)


def _line_col(source: str, offset: int) -> tuple[int, int]:
    prefix = source[:offset]
    line = prefix.count("\n") + 1
    col = offset - (prefix.rfind("\n") + 1) + 1
    return line, col


def replay_fixes(original: str, fixes: list[AppliedFix]) -> str:
    """Re-apply a fix log to the original text (integrity checking)."""
    cur = original
    for fix in fixes:
        cur = cur[:fix.offset] + fix.text + cur[fix.offset + len(fix.replaced):]
    return cur
