"""Java-subset front end: lexing, delimiter balancing, control-flow skeletons."""

from .tokens import Token, TokenKind, detokenize, tokenize
from .balance import BalanceDefect, BalanceReport, check_balance
from .parse import (
    ParseMessage,
    ParseOutcome,
    Skeleton,
    SkeletonError,
    extract_skeleton,
    parse_check,
    parse_tokens,
)

__all__ = [
    "Token",
    "TokenKind",
    "tokenize",
    "detokenize",
    "BalanceDefect",
    "BalanceReport",
    "check_balance",
    "Skeleton",
    "SkeletonError",
    "ParseMessage",
    "ParseOutcome",
    "parse_tokens",
    "parse_check",
    "extract_skeleton",
]
