"""Shipped seed corpus of parseable CS1-style Java programs and the
single-deletion mutation generator used to exercise the repair engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .javasyn import tokenize
from .javasyn.tokens import TokenKind

_MUTATION_CHARS = ";})"


@dataclass(frozen=True)
class Mutant:
    name: str
    original: str
    mutated: str
    deleted_char: str
    position: int


def load_seed_programs() -> dict[str, str]:
    """Name to source for every shipped seed program."""
    base = resources.files("codemend.data.seeds")
    out: dict[str, str] = {}
    for entry in sorted(base.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".java"):
            out[entry.name[:-5]] = entry.read_text(encoding="utf-8")
    return out


def closing_quote_positions(source: str) -> list[int]:
    """Offsets of the closing quote of every string and char literal."""
    positions = []
    for tok in tokenize(source):
        if tok.kind in (TokenKind.STRING_LITERAL, TokenKind.CHAR_LITERAL):
            positions.append(tok.end - 1)
    return positions


def single_deletion_mutants(name: str, source: str) -> list[Mutant]:
    """Every variant of source with one ';', '}', ')' or closing quote
    removed."""
    mutants = []
    for i, ch in enumerate(source):
        if ch in _MUTATION_CHARS:
            mutants.append(Mutant(
                name=name,
                original=source,
                mutated=source[:i] + source[i + 1:],
                deleted_char=ch,
                position=i,
            ))
    for i in closing_quote_positions(source):
        mutants.append(Mutant(
            name=name,
            original=source,
            mutated=source[:i] + source[i + 1:],
            deleted_char=source[i],
            position=i,
        ))
    return mutants


def mutation_corpus(limit_per_program: int | None = None) -> list[Mutant]:
    """All single-deletion mutants over the shipped seed set."""
    mutants: list[Mutant] = []
    for name, source in load_seed_programs().items():
        ms = single_deletion_mutants(name, source)
        if limit_per_program is not None:
            ms = ms[:limit_per_program]
        mutants.extend(ms)
    return mutants
