"""Pipeline language front end: tokens, syntax tree, parser, formatter."""
from mlguard.dsl.formatter import format_pipeline, format_statement
from mlguard.dsl.parser import parse_pipeline, parse_source, parse_statement
from mlguard.dsl.tokens import LexError, SourceSpan, Token, TokenKind, tokenize

__all__ = [
    "LexError", "SourceSpan", "Token", "TokenKind", "format_pipeline", "format_statement",
    "parse_pipeline", "parse_source", "parse_statement", "tokenize",
]
