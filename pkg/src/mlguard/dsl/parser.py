"""Recursive-descent parser for pipeline programs.

Every statement sits on its own line. On a syntax error the parser reports
what it expected and skips to the start of the next line, so one bad
statement does not hide problems in the rest of the program.
"""
from __future__ import annotations

from mlguard import diagnostics
from mlguard._scan import unquote
from mlguard.diagnostics import Diagnostic
from mlguard.dsl import ast
from mlguard.dsl.tokens import LexError, SourceSpan, Token, TokenKind, tokenize

_LITERAL_KINDS = (TokenKind.TEXT, TokenKind.INT, TokenKind.FLOAT, TokenKind.BOOL)


class _Fail(Exception):
    def __init__(self, token: Token, expected: str) -> None:
        self.token = token
        self.expected = expected


def literal_value(tok: Token):
    if tok.kind is TokenKind.TEXT:
        return unquote(tok.lexeme)
    if tok.kind is TokenKind.INT:
        return int(tok.lexeme)
    if tok.kind is TokenKind.FLOAT:
        return float(tok.lexeme)
    if tok.kind is TokenKind.BOOL:
        return tok.lexeme == "true"
    raise ValueError(f"not a literal token: {tok}")


class Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.toks = tokens
        self.pos = 0
        self.diags: list[Diagnostic] = []
        self.line = tokens[0].span.start_line  # line of the statement being parsed

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def is_(self, lexeme: str, tok: Token | None = None) -> bool:
        tok = tok or self.tok
        return tok.kind in (TokenKind.KEYWORD, TokenKind.PUNCT) and tok.lexeme == lexeme

    def at(self, lexeme: str) -> bool:
        return self.is_(lexeme) and self._same_line()

    def expect(self, lexeme: str) -> Token:
        if not self.at(lexeme):
            raise _Fail(self.tok, f"'{lexeme}'")
        return self.advance()

    def _same_line(self) -> bool:
        return self.tok.kind is not TokenKind.EOF and self.tok.span.start_line == self.line

    def name(self, what: str = "an identifier") -> ast.Name:
        tok = self.tok
        if tok.kind is not TokenKind.IDENTIFIER or not self._same_line():
            raise _Fail(tok, what)
        self.advance()
        return ast.Name(tok.lexeme, tok.span)

    def member_name(self, what: str) -> ast.Name:
        # method/param names after '.' may coincide with keywords (e.g. fit)
        tok = self.tok
        if tok.kind not in (TokenKind.IDENTIFIER, TokenKind.KEYWORD) or not self._same_line():
            raise _Fail(tok, what)
        self.advance()
        return ast.Name(tok.lexeme, tok.span)

    def literal(self, kinds=_LITERAL_KINDS, what: str = "a literal") -> ast.Lit:
        tok = self.tok
        if tok.kind not in kinds or not self._same_line():
            raise _Fail(tok, what)
        self.advance()
        return ast.Lit(literal_value(tok), tok.span)

    def last_span(self) -> SourceSpan:
        return self.toks[self.pos - 1].span

    def error(self, tok: Token, expected: str) -> None:
        prev = self.toks[self.pos - 1] if self.pos > 0 else None
        if tok.kind is TokenKind.EOF:
            span, found = (prev.span.at_end() if prev else tok.span), "end of file"
        elif prev is not None and tok.span.start_line > self.line:
            # the statement on self.line ran out before the expected token
            span, found = prev.span.at_end(), "end of line"
        else:
            span, found = tok.span, tok.describe()
        self.diags.append(diagnostics.make("E-SYN-001", span, f"expected {expected}, found {found}"))

    # -- grammar

    def parse(self) -> ast.Pipeline:
        start = self.tok
        name = ast.Name("", start.span)
        try:
            self.expect("pipeline")
            name = self.name("a pipeline name")
            self.expect("{")
        except _Fail as fail:
            self.error(fail.token, fail.expected)
            self.recover(fail.token, start.span.start_line)
        statements: list[ast.Stmt] = []
        while True:
            tok = self.tok
            if self.is_("}"):
                self.advance()
                break
            if tok.kind is TokenKind.EOF:
                self.error(tok, "'}' to close the pipeline")
                break
            line = tok.span.start_line
            try:
                stmt = self.statement()
                nxt = self.tok
                if nxt.kind is not TokenKind.EOF and not self.is_("}") and nxt.span.start_line == self.last_span().end_line:
                    raise _Fail(nxt, "end of statement")
                statements.append(stmt)
            except _Fail as fail:
                self.error(fail.token, fail.expected)
                self.recover(fail.token, line)
        if self.tok.kind is not TokenKind.EOF:
            self.line = self.tok.span.start_line
            self.error(self.tok, "end of file after the pipeline")
        end = self.last_span() if self.pos > 0 else start.span
        return ast.Pipeline(name, tuple(statements), start.span.cover(end))

    def recover(self, failed: Token, stmt_line: int) -> None:
        # A statement cut short at end of line leaves the next line intact.
        if failed.span.start_line > stmt_line and self.pos > 0 and failed.span.start_line > self.toks[self.pos - 1].span.end_line:
            return
        line = failed.span.start_line
        while self.tok.kind is not TokenKind.EOF and not self.is_("}") and self.tok.span.start_line <= line:
            self.advance()

    def statement(self) -> ast.Stmt:
        start = self.tok
        self.line = start.span.start_line
        if self.is_("set"):
            self.advance()
            return self._set(start)
        if self.is_("fit"):
            self.advance()
            return self._fit(start)
        if self.is_("call"):
            self.advance()
            return self._call(start, None)
        if self.is_("require"):
            self.advance()
            return self._require(start)
        first = self.name("a statement")
        if self.at(","):
            return self._split(start, first)
        self.expect("=")
        tok = self.tok
        if self.at("load"):
            self.advance()
            path = self.literal((TokenKind.TEXT,), "a file path text literal")
            schema = None
            if self.at("schema"):
                self.advance()
                schema = self.literal((TokenKind.TEXT,), "a schema path text literal")
            return ast.Load(first, path, schema, self._span(start))
        if self.at("apply"):
            self.advance()
            transform = self.name("a transform variable")
            dataset = self.name("a dataset variable")
            return ast.Apply(first, transform, dataset, self._span(start))
        if self.at("call"):
            self.advance()
            return self._call(start, first)
        if self.at("evaluate"):
            self.advance()
            metric = self.member_name("a metric name")
            model = self.name("a model variable")
            self.expect("on")
            dataset = self.name("a dataset variable")
            return ast.Evaluate(first, metric, model, dataset, self._span(start))
        if tok.kind is TokenKind.IDENTIFIER and self._same_line():
            entity = self.name()
            args = self._args()
            if self.at("fit"):
                self.advance()
                self.expect("on")
                fit_on = self.name("a dataset variable")
                return ast.TransformDecl(first, entity, args, fit_on, self._span(start))
            return ast.ModelDecl(first, entity, args, self._span(start))
        raise _Fail(tok, "'load', 'apply', 'call', 'evaluate' or an entity instantiation")

    def _span(self, start: Token) -> SourceSpan:
        return start.span.cover(self.last_span())

    def _args(self) -> tuple[ast.Arg, ...]:
        self.expect("(")
        args: list[ast.Arg] = []
        if self.at(")"):
            self.advance()
            return ()
        while True:
            key = self.member_name("an argument name")
            self.expect("=")
            args.append(ast.Arg(key, self.literal()))
            if self.at(")"):
                self.advance()
                return tuple(args)
            if not self.at(","):
                raise _Fail(self.tok, "',' or ')'")
            self.advance()

    def _split(self, start: Token, train: ast.Name) -> ast.Split:
        self.expect(",")
        val = self.name("a variable name")
        self.expect(",")
        test = self.name("a variable name")
        self.expect("=")
        self.expect("split")
        source = self.name("a dataset variable")
        self.expect("ratios")
        self.expect("(")
        ratios = [self.literal((TokenKind.FLOAT,), "a float literal")]
        for _ in range(2):
            self.expect(",")
            ratios.append(self.literal((TokenKind.FLOAT,), "a float literal"))
        self.expect(")")
        stratify = seed = None
        if self.at("stratify"):
            self.advance()
            stratify = self.literal((TokenKind.TEXT,), "a column name text literal")
        if self.at("seed"):
            self.advance()
            seed = self.literal((TokenKind.INT,), "an int literal")
        return ast.Split(train, val, test, source, tuple(ratios), stratify, seed, self._span(start))

    def _set(self, start: Token) -> ast.SetParam:
        model = self.name("a model variable")
        self.expect(".")
        param = self.member_name("a parameter name")
        self.expect("=")
        value = self.literal()
        return ast.SetParam(model, param, value, self._span(start))

    def _fit(self, start: Token) -> ast.Fit:
        model = self.name("a model variable")
        self.expect("on")
        dataset = self.name("a dataset variable")
        self.expect("label")
        label = self.literal((TokenKind.TEXT,), "a label column text literal")
        return ast.Fit(model, dataset, label, self._span(start))

    def _call(self, start: Token, var: ast.Name | None) -> ast.Call:
        model = self.name("a model variable")
        self.expect(".")
        method = self.member_name("a method name")
        dataset = self.name("a dataset variable")
        return ast.Call(var, model, method, dataset, self._span(start))

    def _require(self, start: Token) -> ast.Require:
        metric = self.member_name("a metric name")
        tok = self.tok
        if not (tok.kind is TokenKind.PUNCT and tok.lexeme in (">=", ">") and self._same_line()):
            raise _Fail(tok, "'>=' or '>'")
        self.advance()
        threshold = self.literal((TokenKind.FLOAT, TokenKind.INT), "a number")
        if isinstance(threshold.value, int):
            threshold = ast.Lit(float(threshold.value), threshold.span)
        return ast.Require(metric, tok.lexeme, threshold, self._span(start))


def parse_pipeline(tokens: list[Token]) -> tuple[ast.Pipeline, list[Diagnostic]]:
    parser = Parser(tokens)
    pipeline = parser.parse()
    return pipeline, parser.diags


def parse_source(source: str, file: str = "<input>") -> tuple[ast.Pipeline | None, list[Diagnostic]]:
    """Tokenize and parse; a lexical error yields no tree and one diagnostic."""
    try:
        tokens = tokenize(source, file)
    except LexError as exc:
        return None, [diagnostics.make("E-SYN-002", exc.span, exc.message)]
    return parse_pipeline(tokens)


def parse_statement(source: str, file: str = "<input>") -> ast.Stmt:
    """Parse a single statement (used to check that statement spans re-parse)."""
    parser = Parser(tokenize(source, file))
    try:
        stmt = parser.statement()
    except _Fail as fail:
        raise SyntaxError(f"expected {fail.expected}, found {fail.token.describe()}") from None
    if parser.tok.kind is not TokenKind.EOF:
        raise SyntaxError(f"trailing input {parser.tok.describe()}")
    return stmt
