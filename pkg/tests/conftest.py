"""Shared fixtures and generators for the test suite."""

from __future__ import annotations

import csv
import json
import random
import string
from importlib import resources
from pathlib import Path

import pytest

from codemend.javasyn import tokenize
from codemend.javasyn.tokens import TokenKind
from codemend.seeds import load_seed_programs, mutation_corpus

_NAME_ALPHABET = string.ascii_lowercase
_RESERVED_LOWER = {"if", "while", "for", "switch", "do", "try", "else", "case",
                   "catch", "finally", "return", "break", "continue", "new",
                   "int", "class", "true", "false", "null", "this", "void"}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else ("FAIL" if report.failed else "SKIP")
    print(f"\n[ACCEPTANCE {status}] {name}", flush=True)


@pytest.fixture(scope="session")
def seed_programs() -> dict[str, str]:
    return load_seed_programs()


def make_experiment_workspace(root: Path, n_submissions: int = 100,
                              agents: list[dict] | None = None,
                              contexts: list[str] | None = None,
                              parallelism: int = 4) -> Path:
    """Build a self-contained experiment directory: an uncompilable
    corpus derived from seed mutants, the shipped example problems, and
    a run config. Returns the config path."""
    root.mkdir(parents=True, exist_ok=True)
    mutants = [m for m in mutation_corpus() if m.deleted_char in ";})"]
    step = max(1, len(mutants) // n_submissions)
    picked = [mutants[i * step] for i in range(n_submissions)]
    corpus_path = root / "corpus.csv"
    with corpus_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "student_id", "problem_id", "code", "compile_status"])
        for i, m in enumerate(picked):
            writer.writerow([f"sub{i:03d}", f"stu{i % 17}", "P1" if i % 2 == 0 else "P2",
                             m.mutated, "uncompilable"])
    problems_src = resources.files("codemend.data.examples") / "problems.json"
    problems_path = root / "problems.json"
    problems_path.write_text(problems_src.read_text(encoding="utf-8"), encoding="utf-8")
    config = {
        "corpus": {"path": str(corpus_path), "format": "csv"},
        "problems": str(problems_path),
        "sample": {"n": n_submissions, "seed": 7, "problems": ["P1", "P2"]},
        "agents": agents or [{"id": "rules-mock", "kind": "mock", "behavior": "rule_proxy"}],
        "contexts": contexts or ["low", "high"],
        "compile_backend": "internal_parse",
        "parallelism": parallelism,
        "output_dir": str(root / "out"),
    }
    config_path = root / "config.json"
    config_path.write_text(json.dumps(config, indent=2), encoding="utf-8")
    return config_path


def canonical_records(records) -> list[dict]:
    """Record dicts with run-varying fields (timestamps, latencies)
    removed, for store equality checks."""
    out = []
    for rec in records:
        d = rec.to_dict()
        d.pop("created_at")
        d.pop("latency_ms")
        out.append(d)
    return out


class ProgramGen:
    """Random CS1-flavored Java program generator.

    Output is lexically varied (comments, strings with escapes, floats,
    operators, uneven whitespace) and usually structurally valid; with
    junk=True it also sprinkles lexical junk such as unterminated
    literals and stray characters, which the lexer must survive.
    """

    def __init__(self, rng: random.Random, junk: bool = False):
        self.rng = rng
        self.junk = junk

    def name(self) -> str:
        while True:
            n = "".join(self.rng.choice(_NAME_ALPHABET)
                        for _ in range(self.rng.randint(1, 8)))
            if n not in _RESERVED_LOWER:
                return n

    def ws(self) -> str:
        return "".join(self.rng.choice([" ", " ", " ", "\t", "\n", "\n    "])
                       for _ in range(self.rng.randint(0, 2))) or " "

    def literal(self) -> str:
        kind = self.rng.randrange(5)
        if kind == 0:
            return str(self.rng.randrange(1000))
        if kind == 1:
            return f"{self.rng.randrange(100)}.{self.rng.randrange(100)}"
        if kind == 2:
            body = "".join(self.rng.choice("abc xyz!?.,*+-=<>[]{}()\\n")
                           for _ in range(self.rng.randint(0, 8)))
            body = body.replace("\\", "\\\\")
            return f'"{body}"'
        if kind == 3:
            return f"'{self.rng.choice('abcxyz019+;')}'"
        return self.rng.choice(["true", "false", "null", "0x1F", "12L", "3.5f", "1e3"])

    def expr(self, depth: int = 0) -> str:
        if depth > 2 or self.rng.random() < 0.4:
            return self.rng.choice([self.name(), self.literal()])
        op = self.rng.choice(["+", "-", "*", "/", "%", "<", ">", "<=", ">=",
                              "==", "!=", "&&", "||"])
        left = self.expr(depth + 1)
        right = self.expr(depth + 1)
        if self.rng.random() < 0.2:
            return f"{self.name()}({left}, {right})"
        if self.rng.random() < 0.15:
            return f"({left} {op} {right})"
        return f"{left} {op} {right}"

    def comment(self) -> str:
        if self.rng.random() < 0.5:
            return f"// {self.name()} {self.rng.randrange(100)}\n"
        return f"/* {self.name()} */"

    def statement(self, depth: int) -> str:
        choice = self.rng.random()
        indent = "    " * depth
        if choice < 0.25:
            type_name = self.rng.choice(["int", "double", "boolean", "String", "char", "long"])
            return f"{indent}{type_name} {self.name()} = {self.expr()};\n"
        if choice < 0.45:
            return f"{indent}{self.name()} = {self.expr()};\n"
        if choice < 0.6:
            body = self.statement(depth + 1) if depth < 3 else f"{'    ' * (depth + 1)}{self.name()}++;\n"
            out = f"{indent}if ({self.expr()}) {{\n{body}{indent}}}\n"
            if self.rng.random() < 0.4:
                out += f"{indent}else {{\n{self.statement(depth + 1) if depth < 3 else indent + '    x--;'}{indent}}}\n"
            return out
        if choice < 0.7:
            return (f"{indent}for (int {self.name()} = 0; {self.name()} < "
                    f"{self.rng.randrange(50)}; {self.name()}++) {{\n"
                    f"{self.statement(depth + 1) if depth < 3 else ''}{indent}}}\n")
        if choice < 0.78:
            return (f"{indent}while ({self.expr()}) {{\n"
                    f"{self.statement(depth + 1) if depth < 3 else ''}{indent}}}\n")
        if choice < 0.85:
            return f"{indent}{self.name()}({self.expr()});\n"
        if choice < 0.9:
            return f"{indent}{self.comment()}"
        if choice < 0.95:
            return f"{indent}return {self.expr()};\n"
        return f"{indent}{self.name()}++;\n"

    def junk_line(self) -> str:
        return self.rng.choice([
            'String broken = "no end\n',
            "char c = 'x\n",
            "int ### = 5;\n",
            "y = z @ 3;\n",
            "foo(bar(x);\n",
            "if (a > b { t = 1; }\n",
            "/* never closed\n",
            "int x = 1\n",
        ])

    def program(self) -> str:
        parts = []
        if self.rng.random() < 0.7:
            ret = self.rng.choice(["int", "void", "boolean", "String", "double"])
            params = ", ".join(f"{self.rng.choice(['int', 'String', 'double'])} {self.name()}"
                               for _ in range(self.rng.randint(0, 3)))
            parts.append(f"public {ret} {self.name()}({params}) {{\n")
            for _ in range(self.rng.randint(1, 5)):
                parts.append(self.statement(1))
                if self.junk and self.rng.random() < 0.25:
                    parts.append(self.junk_line())
            parts.append("}\n")
        else:
            for _ in range(self.rng.randint(1, 6)):
                parts.append(self.statement(0))
                if self.junk and self.rng.random() < 0.25:
                    parts.append(self.junk_line())
        text = "".join(parts)
        if self.junk and self.rng.random() < 0.3:
            text += self.rng.choice(["", " ", "\n", "\t "])
        return text


def random_programs(count: int, seed: int, junk: bool = False) -> list[str]:
    rng = random.Random(seed)
    gen = ProgramGen(rng, junk=junk)
    return [gen.program() for _ in range(count)]


def _rebuild(tokens, lexemes: list[str]) -> str:
    if not tokens:
        return ""
    out = []
    for tok, lex in zip(tokens, lexemes):
        out.append(tok.ws_before + lex)
    return "".join(out) + tokens[-1].ws_after


def rename_identifiers(source: str, rng: random.Random) -> str:
    """Consistent identifier renaming; structure untouched."""
    toks = tokenize(source)
    mapping: dict[str, str] = {}
    lexemes = []
    for t in toks:
        lex = t.lexeme
        if t.kind is TokenKind.IDENTIFIER and t.lexeme.lower() not in _RESERVED_LOWER:
            if lex not in mapping:
                mapping[lex] = f"{lex}q{rng.randrange(1000)}"
            lex = mapping[lex]
        lexemes.append(lex)
    return _rebuild(toks, lexemes)


def perturb_literals(source: str, rng: random.Random) -> str:
    """Change literal values; structure untouched."""
    toks = tokenize(source)
    lexemes = []
    for t in toks:
        lex = t.lexeme
        if t.kind is TokenKind.INT_LITERAL and lex.isdigit():
            lex = str(rng.randrange(10000))
        elif t.kind is TokenKind.STRING_LITERAL:
            lex = '"' + "".join(rng.choice("abc xyz") for _ in range(rng.randint(0, 6))) + '"'
        elif t.kind is TokenKind.CHAR_LITERAL and len(lex) == 3:
            lex = f"'{rng.choice('abcxyz')}'"
        lexemes.append(lex)
    return _rebuild(toks, lexemes)


def perturb_layout(source: str, rng: random.Random) -> str:
    """Change whitespace and comments; structure untouched."""
    toks = tokenize(source)
    if not toks:
        return source
    out = []
    prev_line_comment = False
    for i, t in enumerate(toks):
        ws = t.ws_before
        if t.kind is TokenKind.COMMENT:
            lex = "/* replaced */" if t.lexeme.startswith("/*") else "// replaced"
        else:
            lex = t.lexeme
        if ws and i:
            ws = rng.choice([ws, " ", "\n", "  \n\t ", ws + " "])
            if rng.random() < 0.1:
                ws = ws + "/* noise */ "
        elif not ws and rng.random() < 0.1:
            ws = " "
        if prev_line_comment and "\n" not in ws:
            ws = "\n" + ws  # a token after a line comment needs its own line
        out.append((ws if i else t.ws_before) + lex)
        prev_line_comment = lex.startswith("//")
    return "".join(out) + toks[-1].ws_after
