"""Best-effort statement parser for the Java subset.

One walk over the token stream produces three things:

* a control-flow skeleton: the nested tree of control constructs with
  identifiers, literals and straight-line statements abstracted away;
* strict diagnostics, the internal stand-in for compiler errors;
* insertion hints: the exact offsets where a missing ';' or close
  delimiter would let the parse proceed. The repair engine applies
  these verbatim.

The parser never gives up on missing close delimiters or semicolons
(it records a hint and carries on), so a program and its delimiter-
repaired form yield the same skeleton. It does give up on stray or
crossed closers, where the intended nesting is unknowable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import CodemendError
from .tokens import Token, TokenKind, tokenize

NODE_KINDS = (
    "METHOD", "IF", "ELSE", "FOR", "WHILE", "DO", "SWITCH", "CASE",
    "RETURN", "BREAK", "CONTINUE", "TRY", "CATCH", "BLOCK",
)

_SEP = TokenKind.SEPARATOR
_KW = TokenKind.KEYWORD
_IDENT = TokenKind.IDENTIFIER
_OP = TokenKind.OPERATOR

_MATCHING_CLOSER = {"(": ")", "[": "]", "{": "}"}
_MATCHING_OPENER = {")": "(", "]": "[", "}": "{"}

# Keywords that terminate a statement run when found mid-run.
_RUN_BREAKERS = frozenset({
    "if", "for", "while", "do", "switch", "try", "return", "break",
    "continue", "else", "case", "default", "catch", "finally",
})

# Condition keywords the parser also accepts with wrong capitalization
# (when followed by '('), mirroring the keyword-case repair rule.
_CASE_FIXABLE = frozenset({"if", "while", "for", "switch"})

_ENDER_KEYWORDS = frozenset({"true", "false", "null", "this"})
_STARTER_KEYWORDS = frozenset({
    "if", "for", "while", "do", "switch", "try", "return", "break",
    "continue", "throw", "assert", "int", "long", "short", "byte", "char",
    "boolean", "float", "double", "void", "final", "public", "private",
    "protected", "static", "new", "this", "class",
})

_MAX_DEPTH = 200


class SkeletonError(CodemendError):
    """Control-flow extraction failed: the nesting cannot be recovered."""


@dataclass
class Skeleton:
    node: str
    children: list["Skeleton"] = field(default_factory=list)

    def render(self) -> str:
        """Indented tree, one node per line; the format golden tests pin."""
        lines: list[str] = []
        self._render_into(lines, 0)
        return "\n".join(lines)

    def _render_into(self, lines: list[str], depth: int) -> None:
        lines.append("  " * depth + self.node)
        for child in self.children:
            child._render_into(lines, depth + 1)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


@dataclass(frozen=True)
class ParseMessage:
    line: int
    col: int
    text: str
    code: str


@dataclass(frozen=True)
class InsertHint:
    offset: int
    text: str
    kind: str  # "semicolon" | "close_delimiter"
    line: int
    col: int


@dataclass
class ParseOutcome:
    root: Skeleton
    errors: list[ParseMessage]
    hints: list[InsertHint]
    unrecoverable: str | None = None

    @property
    def ok(self) -> bool:
        return not self.errors and self.unrecoverable is None

    def semicolon_hints(self) -> list[InsertHint]:
        return [h for h in self.hints if h.kind == "semicolon"]

    def close_hints(self) -> list[InsertHint]:
        return [h for h in self.hints if h.kind == "close_delimiter"]


def parse_tokens(tokens: list[Token], src_len: int) -> ParseOutcome:
    """Parse a token stream (comments are ignored)."""
    return _Parser(tokens, src_len).run()


def parse_check(source: str) -> ParseOutcome:
    """Tokenize and parse; lexical errors are folded into the outcome."""
    tokens = tokenize(source)
    outcome = parse_tokens(tokens, len(source))
    lexical = [
        ParseMessage(t.line, t.col, t.reason or "bad token", "lexical")
        for t in tokens
        if t.kind is TokenKind.ERROR
    ]
    outcome.errors = lexical + outcome.errors
    return outcome


def extract_skeleton(source: str) -> Skeleton:
    """Control-flow skeleton of source, METHOD-rooted.

    Raises SkeletonError when the nesting is unrecoverable (stray or
    crossed close delimiters). Missing closers and missing semicolons
    are recovered from and do not raise.
    """
    outcome = parse_tokens(tokenize(source), len(source))
    if outcome.unrecoverable is not None:
        raise SkeletonError(outcome.unrecoverable)
    return outcome.root


class _Parser:
    def __init__(self, tokens: list[Token], src_len: int):
        # comments are trivia, including the broken kind: an unterminated
        # comment is a lexical error, not statement content
        self.toks = [t for t in tokens
                     if t.kind is not TokenKind.COMMENT
                     and not (t.kind is TokenKind.ERROR
                              and t.reason == "unterminated comment")]
        self.i = 0
        self.src_len = src_len
        self.errors: list[ParseMessage] = []
        self.hints: list[InsertHint] = []
        self.unrecoverable: str | None = None
        self.depth = 0

    # -- stream helpers ---------------------------------------------------

    def peek(self, ahead: int = 0) -> Token | None:
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def advance(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.toks)

    def _is(self, tok: Token | None, kind: TokenKind, lexeme: str | None = None) -> bool:
        return tok is not None and tok.kind is kind and (lexeme is None or tok.lexeme == lexeme)

    def _sep(self, tok: Token | None, ch: str) -> bool:
        return self._is(tok, _SEP, ch)

    def _kw(self, tok: Token | None, word: str) -> bool:
        return self._is(tok, _KW, word)

    def _eof_pos(self) -> tuple[int, int]:
        if self.toks:
            last = self.toks[-1]
            return last.line, last.col + len(last.lexeme)
        return 1, 1

    def error(self, tok: Token | None, text: str, code: str) -> None:
        if tok is None:
            line, col = self._eof_pos()
        else:
            line, col = tok.line, tok.col
        self.errors.append(ParseMessage(line, col, text, code))

    def fail(self, tok: Token | None, reason: str) -> None:
        if self.unrecoverable is None:
            self.unrecoverable = reason
        self.error(tok, reason, "structure")

    def hint(self, offset: int, text: str, kind: str, tok: Token | None) -> None:
        if tok is None:
            line, col = self._eof_pos()
        else:
            line, col = tok.line, tok.col
        self.hints.append(InsertHint(offset, text, kind, line, col))

    def hint_semicolon_after(self, prev: Token) -> None:
        self.hints.append(InsertHint(prev.end, ";", "semicolon",
                                     prev.line, prev.col + len(prev.lexeme)))

    # -- entry point --------------------------------------------------------

    def run(self) -> ParseOutcome:
        children: list[Skeleton] = []
        while not self.at_end():
            tok = self.peek()
            if self._sep(tok, "}"):
                self.fail(tok, "unmatched '}'")
                self.advance()
                continue
            before = self.i
            self.parse_statement(children, "top")
            if self.i == before:  # defensive: never loop in place
                self.advance()
        return ParseOutcome(Skeleton("METHOD", children), self.errors, self.hints,
                            self.unrecoverable)

    # -- statements ---------------------------------------------------------

    def parse_statement(self, out: list[Skeleton], owner: str) -> None:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                self.fail(self.peek(), "nesting too deep")
                self.i = len(self.toks)
                return
            tok = self.peek()
            if tok is None:
                return
            if self._sep(tok, ";"):
                self.advance()
                return
            if self._sep(tok, "{"):
                self.advance()
                out.append(Skeleton("BLOCK", self.parse_block("block")))
                return
            if tok.kind is _KW:
                self._keyword_statement(tok, out, owner)
                return
            if (tok.kind is _IDENT and tok.lexeme.lower() in _CASE_FIXABLE
                    and self._sep(self.peek(1), "(")):
                self.error(tok, f"control keyword written as {tok.lexeme!r}", "keyword-case")
                self._dispatch_control(tok.lexeme.lower(), out)
                return
            self.parse_run(out, owner)
        finally:
            self.depth -= 1

    def _keyword_statement(self, tok: Token, out: list[Skeleton], owner: str) -> None:
        w = tok.lexeme
        if w in _CASE_FIXABLE:
            self._dispatch_control(w, out)
        elif w == "do":
            self._parse_do(out)
        elif w == "try":
            self._parse_try(out)
        elif w in ("return", "break", "continue"):
            self._parse_jump(out, w)
        elif w == "else":
            self.error(tok, "'else' without a matching 'if'", "stray-else")
            self.advance()
            out.append(Skeleton("ELSE", self.parse_body("else-body")))
        elif w in ("case", "default"):
            self.error(tok, f"'{w}' outside a switch", "stray-case")
            self.advance()
            self._skip_to_colon()
            out.append(Skeleton("CASE"))
        elif w in ("catch", "finally"):
            self.error(tok, f"'{w}' without a matching 'try'", "stray-catch")
            self.advance()
            if w == "catch":
                self._skip_parens("catch", stop_at_semicolon=True)
                out.append(Skeleton("CATCH", self.parse_body("catch-body")))
            else:
                out.extend(self.parse_body("finally-body"))
        elif w in ("class", "interface", "enum"):
            self._parse_class(out)
        else:
            # modifiers, types, new/this/super, throw, assert, import, ...
            self.parse_run(out, owner)

    def _dispatch_control(self, word: str, out: list[Skeleton]) -> None:
        if word == "if":
            self._parse_if(out)
        elif word == "while":
            self._parse_loop(out, "WHILE", "while")
        elif word == "for":
            self._parse_loop(out, "FOR", "for")
        elif word == "switch":
            self._parse_switch(out)

    def _parse_if(self, out: list[Skeleton]) -> None:
        self.advance()
        self._skip_parens("if", stop_at_semicolon=True)
        out.append(Skeleton("IF", self.parse_body("if-body")))
        if self._kw(self.peek(), "else"):
            self.advance()
            out.append(Skeleton("ELSE", self.parse_body("else-body")))

    def _parse_loop(self, out: list[Skeleton], node: str, word: str) -> None:
        self.advance()
        self._skip_parens(word, stop_at_semicolon=(word != "for"))
        out.append(Skeleton(node, self.parse_body(f"{word}-body")))

    def _parse_do(self, out: list[Skeleton]) -> None:
        self.advance()
        body = self.parse_body("do-body")
        out.append(Skeleton("DO", body))
        if self._kw(self.peek(), "while"):
            self.advance()
            last = self._skip_parens("while", stop_at_semicolon=True)
            if self._sep(self.peek(), ";"):
                self.advance()
            else:
                self.error(self.peek(), "';' expected after do-while", "semicolon-expected")
                if last is not None:
                    self.hint_semicolon_after(last)
        else:
            self.error(self.peek(), "'while' expected after 'do' body", "while-expected")

    def _parse_switch(self, out: list[Skeleton]) -> None:
        self.advance()
        self._skip_parens("switch", stop_at_semicolon=True)
        children: list[Skeleton] = []
        if self._sep(self.peek(), "{"):
            self.advance()
            while True:
                tok = self.peek()
                if tok is None:
                    self.hint(self.src_len, "}", "close_delimiter", None)
                    self.error(None, "'}' expected to close switch", "close-expected")
                    break
                if self._sep(tok, "}"):
                    self.advance()
                    break
                if tok.kind is _KW and tok.lexeme in ("case", "default"):
                    self.advance()
                    if tok.lexeme == "case":
                        self._skip_to_colon()
                    elif self._is(self.peek(), _OP, ":"):
                        self.advance()
                    case_children: list[Skeleton] = []
                    while True:
                        nxt = self.peek()
                        if nxt is None or self._sep(nxt, "}"):
                            break
                        if nxt.kind is _KW and nxt.lexeme in ("case", "default"):
                            break
                        before = self.i
                        self.parse_statement(case_children, "case")
                        if self.i == before:
                            self.advance()
                    children.append(Skeleton("CASE", case_children))
                    continue
                before = self.i
                self.parse_statement(children, "switch-body")
                if self.i == before:
                    self.advance()
        else:
            self.error(self.peek(), "'{' expected after switch", "brace-expected")
        out.append(Skeleton("SWITCH", children))

    def _parse_try(self, out: list[Skeleton]) -> None:
        self.advance()
        out.append(Skeleton("TRY", self.parse_body("try-body")))
        while True:
            tok = self.peek()
            if self._kw(tok, "catch"):
                self.advance()
                self._skip_parens("catch", stop_at_semicolon=True)
                out.append(Skeleton("CATCH", self.parse_body("catch-body")))
            elif self._kw(tok, "finally"):
                self.advance()
                out.extend(self.parse_body("finally-body"))
            else:
                return

    def _parse_jump(self, out: list[Skeleton], word: str) -> None:
        self.advance()
        out.append(Skeleton(word.upper()))
        self._consume_run()

    def _parse_class(self, out: list[Skeleton]) -> None:
        # class declarations are transparent: the body's statements are
        # spliced into the parent so wrapped and bare snippets align
        tok = self.advance()
        while not self.at_end() and not self._sep(self.peek(), "{"):
            nxt = self.peek()
            if self._sep(nxt, ";") or self._sep(nxt, "}"):
                self.error(nxt, "'{' expected in type declaration", "brace-expected")
                return
            self.advance()
        if self.at_end():
            self.error(None, "'{' expected in type declaration", "brace-expected")
            return
        self.advance()  # '{'
        out.extend(self.parse_block("class-body"))

    # -- blocks and bodies ----------------------------------------------------

    def parse_block(self, owner: str) -> list[Skeleton]:
        """Statements up to the matching '}'. Called just after the '{'."""
        children: list[Skeleton] = []
        while True:
            tok = self.peek()
            if tok is None:
                self.hint(self.src_len, "}", "close_delimiter", None)
                self.error(None, "'}' expected", "close-expected")
                return children
            if self._sep(tok, "}"):
                self.advance()
                return children
            if self._block_breaker(tok, owner):
                self.hint(tok.offset, "}", "close_delimiter", tok)
                self.error(tok, f"'}}' expected before '{tok.lexeme}'", "close-expected")
                return children
            before = self.i
            self.parse_statement(children, owner)
            if self.i == before:
                self.advance()

    def _block_breaker(self, tok: Token, owner: str) -> bool:
        # A token that can only belong to the construct owning this block:
        # the block must have been meant to close before it.
        if owner == "if-body" and self._kw(tok, "else"):
            return True
        if owner == "try-body" and tok.kind is _KW and tok.lexeme in ("catch", "finally"):
            return True
        if owner == "do-body" and self._kw(tok, "while") and self._looks_like_do_tail():
            return True
        return False

    def _looks_like_do_tail(self) -> bool:
        # At 'while' inside a do body: a do tail is 'while ( ... ) ;'
        # whereas a nested loop continues with a statement.
        j = self.i + 1
        tok = self.toks[j] if j < len(self.toks) else None
        if not self._sep(tok, "("):
            return False
        depth = 0
        while j < len(self.toks):
            t = self.toks[j]
            if t.kind is _SEP and t.lexeme in "([":
                depth += 1
            elif t.kind is _SEP and t.lexeme in ")]":
                depth -= 1
                if depth == 0:
                    nxt = self.toks[j + 1] if j + 1 < len(self.toks) else None
                    return self._sep(nxt, ";")
            elif self._sep(t, "{"):
                return False
            j += 1
        return False

    def parse_body(self, owner: str) -> list[Skeleton]:
        tok = self.peek()
        if tok is None:
            self.error(None, "statement expected", "statement-expected")
            return []
        if self._sep(tok, "{"):
            self.advance()
            return [Skeleton("BLOCK", self.parse_block(owner))]
        if self._sep(tok, "}"):
            self.error(tok, "statement expected", "statement-expected")
            return []
        children: list[Skeleton] = []
        self.parse_statement(children, owner)
        return children

    # -- statement runs ---------------------------------------------------------

    def parse_run(self, out: list[Skeleton], owner: str) -> None:
        """An opaque declaration/expression statement, or a method header."""
        prev: Token | None = None
        has_paren_group = False
        while True:
            tok = self.peek()
            if tok is None:
                if prev is not None:
                    self.error(None, "';' expected", "semicolon-expected")
                    self.hint_semicolon_after(prev)
                return
            if self._sep(tok, ";"):
                self.advance()
                return
            if self._sep(tok, "}"):
                if prev is not None:
                    self.error(tok, "';' expected before '}'", "semicolon-expected")
                    self.hint_semicolon_after(prev)
                return
            if self._sep(tok, "{"):
                if self._expr_brace(prev):
                    last = self._skip_group(stop_at_semicolon=True)
                    prev = last if last is not None else prev
                    continue
                if has_paren_group:
                    self.advance()
                    out.append(Skeleton("METHOD", self.parse_block("method-body")))
                    return
                if prev is not None:
                    self.error(tok, "';' expected before '{'", "semicolon-expected")
                    self.hint_semicolon_after(prev)
                return
            if tok.kind is _SEP and tok.lexeme in "([":
                last = self._skip_group(stop_at_semicolon=True)
                if tok.lexeme == "(":
                    has_paren_group = True
                prev = last if last is not None else tok
                continue
            if tok.kind is _SEP and tok.lexeme in ")]":
                self.fail(tok, f"unmatched '{tok.lexeme}'")
                self.advance()
                prev = tok
                continue
            if tok.kind is _KW and tok.lexeme in _RUN_BREAKERS:
                if prev is not None:
                    self.error(tok, f"';' expected before '{tok.lexeme}'", "semicolon-expected")
                    self.hint_semicolon_after(prev)
                return
            if tok.kind is _KW and tok.lexeme in ("class", "interface", "enum"):
                self._parse_class(out)
                return
            if (prev is not None and tok.line > prev.line
                    and _ends_statement(prev) and _starts_statement(tok)):
                self.error(tok, "';' expected", "semicolon-expected")
                self.hint_semicolon_after(prev)
                return
            prev = self.advance()

    def _consume_run(self) -> None:
        # Like parse_run but for jump-statement tails: no node production.
        prev: Token | None = self.toks[self.i - 1] if self.i > 0 else None
        while True:
            tok = self.peek()
            if tok is None:
                if prev is not None:
                    self.error(None, "';' expected", "semicolon-expected")
                    self.hint_semicolon_after(prev)
                return
            if self._sep(tok, ";"):
                self.advance()
                return
            if self._sep(tok, "}"):
                self.error(tok, "';' expected before '}'", "semicolon-expected")
                if prev is not None:
                    self.hint_semicolon_after(prev)
                return
            if self._sep(tok, "{"):
                if self._expr_brace(prev):
                    last = self._skip_group(stop_at_semicolon=True)
                    prev = last if last is not None else prev
                    continue
                self.error(tok, "';' expected before '{'", "semicolon-expected")
                if prev is not None:
                    self.hint_semicolon_after(prev)
                return
            if tok.kind is _SEP and tok.lexeme in "([":
                last = self._skip_group(stop_at_semicolon=True)
                prev = last if last is not None else tok
                continue
            if tok.kind is _SEP and tok.lexeme in ")]":
                self.fail(tok, f"unmatched '{tok.lexeme}'")
                self.advance()
                prev = tok
                continue
            if tok.kind is _KW and tok.lexeme in _RUN_BREAKERS:
                self.error(tok, f"';' expected before '{tok.lexeme}'", "semicolon-expected")
                if prev is not None:
                    self.hint_semicolon_after(prev)
                return
            if (prev is not None and tok.line > prev.line
                    and _ends_statement(prev) and _starts_statement(tok)):
                self.error(tok, "';' expected", "semicolon-expected")
                self.hint_semicolon_after(prev)
                return
            prev = self.advance()

    def _expr_brace(self, prev: Token | None) -> bool:
        # '{' continues an expression (array initializer, lambda body)
        # rather than opening a block. prev is the token just before the
        # '{', i.e. the last one consumed.
        if prev is None:
            return False
        if prev.kind is _OP and prev.lexeme in ("=", "->"):
            return True
        if prev.kind is _SEP and prev.lexeme in (",", "(", "[", "{"):
            return True
        if prev.kind is _SEP and prev.lexeme == "]":
            # only an empty bracket pair means an array initializer
            # follows (new int[] {...}); after an index it is a block
            before = self.toks[self.i - 2] if self.i >= 2 else None
            return self._sep(before, "[")
        if prev.kind is _KW and prev.lexeme == "return":
            return True
        return False

    # -- delimiter group skipping -----------------------------------------------

    def _skip_parens(self, construct: str, stop_at_semicolon: bool) -> Token | None:
        """Consume the '( ... )' after a control keyword; returns last token."""
        tok = self.peek()
        if not self._sep(tok, "("):
            self.error(tok, f"'(' expected after '{construct}'", "paren-expected")
            return None
        return self._skip_group(stop_at_semicolon=stop_at_semicolon)

    def _skip_group(self, stop_at_semicolon: bool) -> Token | None:
        """Consume a balanced delimiter group starting at the current opener.

        Stops early (recording close hints) at a block brace, at ';'
        unless inside a for header, or at end of input. Returns the last
        token consumed.
        """
        opener = self.advance()
        stack: list[Token] = [opener]
        last = opener
        while stack:
            tok = self.peek()
            if tok is None:
                for open_tok in reversed(stack):
                    self.hint(self.src_len, _MATCHING_CLOSER[open_tok.lexeme],
                              "close_delimiter", None)
                    self.error(None, f"'{_MATCHING_CLOSER[open_tok.lexeme]}' expected",
                               "close-expected")
                return last
            if tok.kind is _SEP and tok.lexeme in "([":
                stack.append(tok)
                last = self.advance()
                continue
            if self._sep(tok, "{"):
                if self._expr_brace(last):
                    stack.append(tok)
                    last = self.advance()
                    continue
                # a block brace inside an unclosed group: close everything here
                for open_tok in reversed(stack):
                    closer = _MATCHING_CLOSER[open_tok.lexeme]
                    self.hint(tok.offset, closer, "close_delimiter", tok)
                    self.error(tok, f"'{closer}' expected before '{{'", "close-expected")
                return last
            if tok.kind is _SEP and tok.lexeme in ")]}":
                want = _MATCHING_OPENER[tok.lexeme]
                if stack and stack[-1].lexeme == want:
                    stack.pop()
                    last = self.advance()
                    continue
                if any(t.lexeme == want for t in stack):
                    # close every opener skipped over by this closer
                    while stack and stack[-1].lexeme != want:
                        open_tok = stack.pop()
                        closer = _MATCHING_CLOSER[open_tok.lexeme]
                        self.hint(tok.offset, closer, "close_delimiter", tok)
                        self.error(tok, f"'{closer}' expected before '{tok.lexeme}'",
                                   "close-expected")
                    stack.pop()
                    last = self.advance()
                    continue
                if tok.lexeme == "}":
                    # closes an enclosing block: the group must end here.
                    # Leave the '}' for the block parser.
                    for open_tok in reversed(stack):
                        closer = _MATCHING_CLOSER[open_tok.lexeme]
                        self.hint(tok.offset, closer, "close_delimiter", tok)
                        self.error(tok, f"'{closer}' expected before '}}'",
                                   "close-expected")
                    return last
                self.fail(tok, f"unmatched '{tok.lexeme}'")
                last = self.advance()
                continue
            if stop_at_semicolon and self._sep(tok, ";"):
                for open_tok in reversed(stack):
                    closer = _MATCHING_CLOSER[open_tok.lexeme]
                    self.hint(tok.offset, closer, "close_delimiter", tok)
                    self.error(tok, f"'{closer}' expected before ';'", "close-expected")
                return last
            if (tok.kind is _KW and tok.lexeme in _RUN_BREAKERS
                    and not any(t.lexeme == "{" for t in stack)):
                # statement keywords cannot occur inside a delimiter
                # group (outside a lambda block): the group was never
                # closed, so it ends here
                for open_tok in reversed(stack):
                    closer = _MATCHING_CLOSER[open_tok.lexeme]
                    self.hint(tok.offset, closer, "close_delimiter", tok)
                    self.error(tok, f"'{closer}' expected before '{tok.lexeme}'",
                               "close-expected")
                return last
            last = self.advance()
        return last

    def _skip_to_colon(self) -> None:
        while not self.at_end():
            tok = self.peek()
            if self._is(tok, _OP, ":"):
                self.advance()
                return
            if tok.kind is _SEP and tok.lexeme in ";{}":
                self.error(tok, "':' expected after case label", "colon-expected")
                return
            self.advance()


def _ends_statement(tok: Token) -> bool:
    if tok.kind in (TokenKind.IDENTIFIER, TokenKind.INT_LITERAL,
                    TokenKind.FLOAT_LITERAL, TokenKind.STRING_LITERAL,
                    TokenKind.CHAR_LITERAL, TokenKind.ERROR):
        return True
    if tok.kind is _SEP and tok.lexeme in (")", "]"):
        return True
    if tok.kind is _OP and tok.lexeme in ("++", "--"):
        return True
    return tok.kind is _KW and tok.lexeme in _ENDER_KEYWORDS


def _starts_statement(tok: Token) -> bool:
    if tok.kind is TokenKind.IDENTIFIER:
        return True
    if tok.kind is _OP and tok.lexeme in ("++", "--"):
        return True
    return tok.kind is _KW and tok.lexeme in _STARTER_KEYWORDS
