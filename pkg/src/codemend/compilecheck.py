"""Compilability checking through an external Java compiler or the
internal parse check.

Machines without a JDK still run the whole pipeline on the internal
backend; records always say which backend decided.
"""

from __future__ import annotations

import re
import subprocess
import tempfile
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from . import CodemendError
from .javasyn import parse_check, tokenize
from .javasyn.tokens import TokenKind

SHELL_CLASS_NAME = "Snippet"
_SHELL_HEADER = f"public class {SHELL_CLASS_NAME} {{\n"


class Backend(str, Enum):
    EXTERNAL_JAVAC = "external_javac"
    INTERNAL_PARSE = "internal_parse"


class CompileBackendError(CodemendError):
    """The external compiler is missing, unrunnable or timed out."""


@dataclass(frozen=True)
class DiagnosticMessage:
    line: int
    col: int
    severity: str
    text: str

    def to_dict(self) -> dict:
        return {"line": self.line, "col": self.col, "severity": self.severity,
                "text": self.text}


@dataclass
class CompilerDiagnostics:
    ok: bool
    messages: list[DiagnosticMessage] = field(default_factory=list)
    backend: Backend = Backend.INTERNAL_PARSE
    wrapped: bool = False

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "backend": self.backend.value,
            "wrapped": self.wrapped,
            "messages": [m.to_dict() for m in self.messages],
        }

    def render_text(self) -> str:
        if self.ok:
            return "no errors reported"
        return "\n".join(
            f"line {m.line}, col {m.col}: {m.severity}: {m.text}"
            for m in self.messages
        ) or "compilation failed"


def wrap_snippet(source: str) -> tuple[str, int]:
    """Wrap a bare method/statement snippet in a one-line class shell.

    Returns the (possibly unchanged) source and the line offset the
    shell adds, so diagnostics can be mapped back to snippet lines.
    """
    if _has_class_declaration(source):
        return source, 0
    body = source if source.endswith("\n") or not source else source + "\n"
    return _SHELL_HEADER + body + "}\n", 1


def _has_class_declaration(source: str) -> bool:
    return any(
        t.kind is TokenKind.KEYWORD and t.lexeme in ("class", "interface", "enum")
        for t in tokenize(source)
    )


def check(
    source: str,
    backend: Backend | str = Backend.INTERNAL_PARSE,
    compiler: str = "javac",
    timeout: float = 30.0,
) -> CompilerDiagnostics:
    """Decide compilability and collect diagnostics in snippet coordinates."""
    backend = Backend(backend)
    if backend is Backend.INTERNAL_PARSE:
        outcome = parse_check(source)
        messages = [
            DiagnosticMessage(line=m.line, col=m.col, severity="error", text=m.text)
            for m in outcome.errors
        ]
        return CompilerDiagnostics(ok=outcome.ok, messages=messages,
                                   backend=backend, wrapped=False)

    wrapped_source, offset = wrap_snippet(source)
    class_name = _public_class_name(wrapped_source) or SHELL_CLASS_NAME
    with tempfile.TemporaryDirectory(prefix="codemend-javac-") as tmp:
        path = Path(tmp) / f"{class_name}.java"
        path.write_text(wrapped_source, encoding="utf-8")
        try:
            proc = subprocess.run(
                [compiler, "-d", tmp, str(path)],
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except FileNotFoundError as exc:
            raise CompileBackendError(f"compiler executable not found: {compiler}") from exc
        except subprocess.TimeoutExpired as exc:
            raise CompileBackendError(
                f"compiler timed out after {timeout:.0f} s") from exc
    messages = _parse_compiler_output(proc.stderr or proc.stdout or "", offset)
    ok = proc.returncode == 0
    return CompilerDiagnostics(ok=ok, messages=messages,
                               backend=backend, wrapped=offset > 0)


def _public_class_name(source: str) -> str | None:
    toks = [t for t in tokenize(source) if t.kind is not TokenKind.COMMENT]
    for i, t in enumerate(toks):
        if t.kind is TokenKind.KEYWORD and t.lexeme == "class" and i + 1 < len(toks):
            nxt = toks[i + 1]
            if nxt.kind is TokenKind.IDENTIFIER:
                return nxt.lexeme
    return None


_DIAG_RE = re.compile(r"^(?P<path>[^:\n]+\.java):(?P<line>\d+):"
                      r"(?:(?P<col>\d+):)?\s*(?P<sev>error|warning|note):\s*(?P<msg>.*)$")


def _parse_compiler_output(text: str, line_offset: int) -> list[DiagnosticMessage]:
    """Parse `file:line: error: message` diagnostics; columns come from
    the caret line javac prints under the offending source line."""
    messages: list[DiagnosticMessage] = []
    lines = text.splitlines()
    for idx, raw in enumerate(lines):
        m = _DIAG_RE.match(raw.strip())
        if not m:
            continue
        col = int(m.group("col")) if m.group("col") else 0
        if not col:
            for look in lines[idx + 1: idx + 4]:
                stripped = look.rstrip()
                if stripped.lstrip() == "^":
                    col = len(stripped)
                    break
        messages.append(DiagnosticMessage(
            line=max(1, int(m.group("line")) - line_offset),
            col=max(1, col),
            severity=m.group("sev"),
            text=m.group("msg"),
        ))
    return messages


@dataclass
class BackendAgreement:
    total: int
    agreed: int
    disagreements: list[int] = field(default_factory=list)  # indexes into the input

    @property
    def fraction(self) -> float:
        return self.agreed / self.total if self.total else 1.0


def backend_agreement(
    sources: list[str],
    compiler: str = "javac",
    timeout: float = 30.0,
) -> BackendAgreement:
    """How often the two backends agree on ok; tracked, not asserted,
    because the internal parser checks a subset of the language."""
    agreed = 0
    disagreements: list[int] = []
    for i, src in enumerate(sources):
        internal_ok = check(src, Backend.INTERNAL_PARSE).ok
        external_ok = check(src, Backend.EXTERNAL_JAVAC, compiler=compiler,
                            timeout=timeout).ok
        if internal_ok == external_ok:
            agreed += 1
        else:
            disagreements.append(i)
    return BackendAgreement(total=len(sources), agreed=agreed,
                            disagreements=disagreements)
