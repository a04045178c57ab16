"""Edit-distance measures and automated structure/logic pre-screens.

The pre-screens populate suggested labels in the annotation workflow;
human judgments, where present, always override them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .javasyn import SkeletonError, extract_skeleton, tokenize
from .javasyn.tokens import Token, TokenKind


class SpAuto(str, Enum):
    PRESERVED = "preserved"
    CHANGED = "changed"
    UNDECIDABLE = "undecidable"


class LpAuto(str, Enum):
    SYNTACTIC_ONLY = "syntactic_only"
    SEMANTIC_CHANGE = "semantic_change"
    UNDECIDABLE = "undecidable"


@dataclass(frozen=True)
class RepairMetrics:
    raw_levenshtein: int
    normalized_levenshtein: float
    token_edit_count: int
    sp_auto: SpAuto
    lp_auto: LpAuto
    compiled: bool

    def to_dict(self) -> dict:
        return {
            "raw_levenshtein": self.raw_levenshtein,
            "normalized_levenshtein": self.normalized_levenshtein,
            "token_edit_count": self.token_edit_count,
            "sp_auto": self.sp_auto.value,
            "lp_auto": self.lp_auto.value,
            "compiled": self.compiled,
        }


def levenshtein(a: str, b: str) -> int:
    """Minimum single-character insertions, deletions and substitutions."""
    # strip common prefix/suffix: repairs touch code locally, so this
    # turns near-identical large inputs into tiny DP problems
    lo = 0
    hi_a, hi_b = len(a), len(b)
    while lo < hi_a and lo < hi_b and a[lo] == b[lo]:
        lo += 1
    while hi_a > lo and hi_b > lo and a[hi_a - 1] == b[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1
    a = a[lo:hi_a]
    b = b[lo:hi_b]
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(b) < len(a):
        a, b = b, a
    prev = list(range(len(a) + 1))
    for j, cb in enumerate(b, start=1):
        cur = [j] + [0] * len(a)
        for i, ca in enumerate(a, start=1):
            cost = 0 if ca == cb else 1
            cur[i] = min(prev[i] + 1, cur[i - 1] + 1, prev[i - 1] + cost)
        prev = cur
    return prev[-1]


def normalized_levenshtein(a: str, b: str) -> float:
    """levenshtein(a, b) / max(len); 0.0 when both strings are empty."""
    denom = max(len(a), len(b))
    if denom == 0:
        return 0.0
    return levenshtein(a, b) / denom


# ---------------------------------------------------------------------------
# Token-level edit scripts
# ---------------------------------------------------------------------------

# (op, original_token, repaired_token); exactly one side is None for
# insert/delete.
EditOp = tuple[str, Token | None, Token | None]


def _related(a: Token, b: Token) -> bool:
    # token pairs a substitution may sensibly align: same kind, a keyword
    # case fix, or a terminated form of a broken literal
    if a.kind is b.kind:
        return True
    if {a.kind, b.kind} == {TokenKind.IDENTIFIER, TokenKind.KEYWORD}:
        return True
    if (a.kind is TokenKind.ERROR
            and b.kind in (TokenKind.STRING_LITERAL, TokenKind.CHAR_LITERAL)):
        return True
    return False


def token_edit_script(a_toks: list[Token], b_toks: list[Token]) -> list[EditOp]:
    """Minimal edit script between token streams, compared by (kind, lexeme).

    Substitutions between unrelated token kinds cost the same as a
    delete plus insert, so the alignment never pairs, say, a broken
    literal with a semicolon when a better pairing exists.
    """
    def key(t: Token):
        return (t.kind, t.lexeme)

    # common prefix/suffix strip, then full DP with backtrace on the core
    lo = 0
    hi_a, hi_b = len(a_toks), len(b_toks)
    while lo < hi_a and lo < hi_b and key(a_toks[lo]) == key(b_toks[lo]):
        lo += 1
    while hi_a > lo and hi_b > lo and key(a_toks[hi_a - 1]) == key(b_toks[hi_b - 1]):
        hi_a -= 1
        hi_b -= 1
    a = a_toks[lo:hi_a]
    b = b_toks[lo:hi_b]
    n, m = len(a), len(b)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dist[i][0] = i
    for j in range(m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        ta = a[i - 1]
        ka = key(ta)
        row = dist[i]
        prow = dist[i - 1]
        for j in range(1, m + 1):
            tb = b[j - 1]
            if ka == key(tb):
                cost = 0
            elif _related(ta, tb):
                cost = 1
            else:
                cost = 2
            row[j] = min(prow[j] + 1, row[j - 1] + 1, prow[j - 1] + cost)
    ops: list[EditOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] and key(a[i - 1]) == key(b[j - 1]):
            ops.append(("equal", a[i - 1], b[j - 1]))
            i -= 1
            j -= 1
        elif (i > 0 and j > 0 and _related(a[i - 1], b[j - 1])
                and dist[i][j] == dist[i - 1][j - 1] + 1):
            ops.append(("replace", a[i - 1], b[j - 1]))
            i -= 1
            j -= 1
        elif j > 0 and dist[i][j] == dist[i][j - 1] + 1:
            ops.append(("insert", None, b[j - 1]))
            j -= 1
        else:
            ops.append(("delete", a[i - 1], None))
            i -= 1
    ops.reverse()
    return ops


def token_edit_count(original: str, repaired: str) -> int:
    a = _code_tokens(original)
    b = _code_tokens(repaired)
    return sum(1 for op, _, _ in token_edit_script(a, b) if op != "equal")


def _code_tokens(source: str) -> list[Token]:
    return [t for t in tokenize(source) if t.kind is not TokenKind.COMMENT]


_PRIMITIVE_TYPES = frozenset({
    "int", "long", "short", "byte", "char", "boolean", "float", "double",
})


def declared_identifiers(source: str) -> set[str]:
    """Identifiers appearing in declaration position (type name before them)."""
    toks = _code_tokens(source)
    declared: set[str] = set()
    for prev, tok in zip(toks, toks[1:]):
        if tok.kind is not TokenKind.IDENTIFIER:
            continue
        if prev.kind is TokenKind.KEYWORD and prev.lexeme in _PRIMITIVE_TYPES:
            declared.add(tok.lexeme)
        elif prev.kind is TokenKind.SEPARATOR and prev.lexeme == "]":
            declared.add(tok.lexeme)
        elif prev.kind is TokenKind.IDENTIFIER and prev.lexeme[:1].isupper():
            declared.add(tok.lexeme)
    return declared


def classify_edits(original: str, repaired: str) -> LpAuto:
    """Pre-screen for logic preservation over the token edit script.

    syntactic_only requires every edit to be one of: an inserted
    separator or ';', a keyword case fix, a literal termination fix, or
    an identifier respelled (distance <= 2) to something declared in the
    original. Everything else, including any deletion, operator or
    literal change, or inserted keyword, counts as a semantic change.
    Comments are excluded from the comparison, like whitespace.
    """
    try:
        a = _code_tokens(original)
        b = _code_tokens(repaired)
        script = token_edit_script(a, b)
        declared: set[str] | None = None
        for op, at, bt in script:
            if op == "equal":
                continue
            if op == "insert":
                assert bt is not None
                if bt.kind is TokenKind.SEPARATOR:
                    continue
                return LpAuto.SEMANTIC_CHANGE
            if op == "delete":
                return LpAuto.SEMANTIC_CHANGE
            assert at is not None and bt is not None
            if (at.kind is TokenKind.IDENTIFIER and bt.kind is TokenKind.KEYWORD
                    and at.lexeme.lower() == bt.lexeme):
                continue  # keyword case fix
            if (at.kind is TokenKind.ERROR
                    and bt.kind in (TokenKind.STRING_LITERAL, TokenKind.CHAR_LITERAL)
                    and len(bt.lexeme) >= 2
                    and bt.lexeme[-1] in ('"', "'")
                    and bt.lexeme[-1] == at.lexeme[0]
                    and at.lexeme.startswith(bt.lexeme[:-1])):
                continue  # literal termination fix (possibly mid-lexeme)
            if at.kind is TokenKind.IDENTIFIER and bt.kind is TokenKind.IDENTIFIER:
                if declared is None:
                    declared = declared_identifiers(original)
                if bt.lexeme in declared and levenshtein(at.lexeme, bt.lexeme) <= 2:
                    continue  # variable name correction
            return LpAuto.SEMANTIC_CHANGE
        return LpAuto.SYNTACTIC_ONLY
    except Exception:
        return LpAuto.UNDECIDABLE


def sp_check(original: str, repaired: str) -> SpAuto:
    """Pre-screen for structural preservation via skeleton comparison."""
    try:
        skel_a = extract_skeleton(original)
    except SkeletonError:
        return SpAuto.UNDECIDABLE
    try:
        skel_b = extract_skeleton(repaired)
    except SkeletonError:
        return SpAuto.UNDECIDABLE
    return SpAuto.PRESERVED if skel_a == skel_b else SpAuto.CHANGED


def compute_repair_metrics(original: str, repaired: str, compiled: bool) -> RepairMetrics:
    return RepairMetrics(
        raw_levenshtein=levenshtein(original, repaired),
        normalized_levenshtein=normalized_levenshtein(original, repaired),
        token_edit_count=token_edit_count(original, repaired),
        sp_auto=sp_check(original, repaired),
        lp_auto=classify_edits(original, repaired),
        compiled=compiled,
    )
