"""Tokenizer and recursive-descent parser for comparison documents.

Grammar::

    document   := decl* comparison EOF
    decl       := "param" NAME ("=" expr)? ("where" pred ("and" pred)*)?
                | "var" NAME ("=" expr)?
                | "mode" ("formal" NUMBER | "numeric" NUMBER)
    pred       := expr ("!=" | "<" | ">" | "<=" | ">=") expr
    comparison := expr "==" expr ("==" expr)*
    expr       := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := "-" unary | factor
    factor     := atom ("^" unary)?
    atom       := NUMBER | NAME | "(" expr ")" | call

Calls: ``pochhammer(e, n)``, ``qpoch(e, n)``, ``qprodinf(e)``, ``abs(e)``,
``sum(i, lo, hi | auto, body)``, ``hyp(u1, ..; l1, ..; arg)``,
``qhyp(u1, ..; l1, ..; arg)`` and ``vwp8phi7(a; b, c, d, e, f; arg)``.
``q`` is the base of every q-function and must be declared as a parameter
before such a call.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from fractions import Fraction

from hypident.dsl.ast import (
    Abs,
    BinOp,
    Document,
    Hyp,
    ModeDecl,
    Name,
    Neg,
    Num,
    ParamDecl,
    Poch,
    Predicate,
    QProdInf,
    Sum,
    VarDecl,
    Vwp,
)
from hypident.errors import ArityError, DSLSyntaxError, UndeclaredSymbol

KEYWORDS = {"param", "var", "mode", "where", "and", "auto", "formal", "numeric"}
FUNCTIONS = {"pochhammer", "qpoch", "qprodinf", "abs", "sum", "hyp", "qhyp", "vwp8phi7"}
Q_FUNCTIONS = {"qpoch", "qprodinf", "qhyp", "vwp8phi7"}
RELOPS = ("!=", "<=", ">=", "<", ">")
MAX_DEPTH = 150

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>==|!=|<=|>=|[-+*/^(),;=<>])
    """,
    re.VERBOSE,
)


MAX_EXPONENT = 400


def _number(tok) -> Fraction:
    mantissa, _, exp = tok.text.lower().partition("e")
    if exp and abs(int(exp)) > MAX_EXPONENT:
        raise DSLSyntaxError(f"number {tok.text!r} out of range", tok.line, tok.col)
    return Fraction(tok.text)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, ["a token"])
        kind = m.lastgroup
        chunk = m.group()
        col = pos - line_start + 1
        if kind == "name" and chunk in KEYWORDS:
            kind = "keyword"
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.depth = 0
        self.params: list = []
        self.variables: list = []
        self.indices: list = []

    # -- token helpers -------------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind in ("op", "keyword")

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def fail(self, message, expected=()):
        t = self.tok
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise DSLSyntaxError(f"{message} at {what}", t.line, t.col, expected)

    def expect(self, text) -> Token:
        if not self.at(text):
            self.fail("unexpected token", [repr(text)])
        return self.advance()

    def expect_name(self) -> Token:
        if self.tok.kind != "name":
            self.fail("unexpected token", ["a name"])
        return self.advance()

    # -- document ---------------------------------------------------------------------

    def document(self) -> Document:
        params, variables, mode = [], [], None
        while self.tok.kind == "keyword" and self.tok.text in ("param", "var", "mode"):
            kw = self.advance()
            if kw.text == "param":
                params.append(self.param_decl(kw))
            elif kw.text == "var":
                variables.append(self.var_decl(kw))
            else:
                if mode is not None:
                    raise DSLSyntaxError("mode declared twice", kw.line, kw.col)
                mode = self.mode_decl(kw)
        if self.tok.kind == "eof":
            self.fail("missing comparison", ["an expression"])
        sides = [self.expr()]
        if not self.at("=="):
            self.fail("unexpected token", ["'=='"] + (["an operator"] if self.tok.kind != "eof" else []))
        while self.at("=="):
            self.advance()
            sides.append(self.expr())
        if self.tok.kind != "eof":
            self.fail("unexpected token", ["'=='", "an operator", "end of input"])
        return Document(tuple(params), tuple(variables), mode, tuple(sides))

    def _declare(self, tok, kind):
        if tok.text in self.params or tok.text in self.variables:
            raise DSLSyntaxError(f"{tok.text!r} declared twice", tok.line, tok.col)
        (self.params if kind == "param" else self.variables).append(tok.text)

    def param_decl(self, kw) -> ParamDecl:
        name = self.expect_name()
        value = None
        if self.at("="):
            self.advance()
            value = self.expr()
        self._declare(name, "param")
        preds = []
        if self.at("where"):
            self.advance()
            preds.append(self.predicate())
            while self.at("and"):
                self.advance()
                preds.append(self.predicate())
        return ParamDecl(name.text, value, tuple(preds), (kw.line, kw.col))

    def var_decl(self, kw) -> VarDecl:
        name = self.expect_name()
        value = None
        if self.at("="):
            self.advance()
            value = self.expr()
        self._declare(name, "var")
        return VarDecl(name.text, value, (kw.line, kw.col))

    def mode_decl(self, kw) -> ModeDecl:
        if not (self.at("formal") or self.at("numeric")):
            self.fail("unexpected token", ["'formal'", "'numeric'"])
        kind = self.advance().text
        if self.tok.kind != "number":
            self.fail("unexpected token", ["a number"])
        num = self.advance()
        value = _number(num)
        if kind == "formal" and value.denominator != 1:
            raise DSLSyntaxError("truncation order must be an integer", num.line, num.col)
        return ModeDecl(kind, value, (kw.line, kw.col))

    def predicate(self) -> Predicate:
        start = self.tok
        left = self.expr()
        if not any(self.at(r) for r in RELOPS):
            self.fail("unexpected token", [repr(r) for r in RELOPS])
        op = self.advance().text
        right = self.expr()
        return Predicate(op, left, right, (start.line, start.col))

    # -- expressions ----------------------------------------------------------------------

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.fail("expression nested too deeply")

    def expr(self):
        self._enter()
        try:
            node = self.term()
            while self.at("+") or self.at("-"):
                op = self.advance()
                node = BinOp(op.text, node, self.term(), (op.line, op.col))
            return node
        finally:
            self.depth -= 1

    def term(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance()
            node = BinOp(op.text, node, self.unary(), (op.line, op.col))
        return node

    def unary(self):
        if self.at("-"):
            op = self.advance()
            self._enter()
            try:
                return Neg(self.unary(), (op.line, op.col))
            finally:
                self.depth -= 1
        return self.factor()

    def factor(self):
        node = self.atom()
        if self.at("^"):
            op = self.advance()
            self._enter()
            try:
                node = BinOp("^", node, self.unary(), (op.line, op.col))
            finally:
                self.depth -= 1
        return node

    def atom(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Num(_number(t), (t.line, t.col))
        if t.kind == "name":
            self.advance()
            if self.at("("):
                return self.call(t)
            if t.text in FUNCTIONS:
                raise DSLSyntaxError(f"{t.text} must be called", t.line, t.col, ["'('"])
            return Name(t.text, (t.line, t.col))
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("unexpected token", ["a number", "a name", "'('"])

    # -- calls ---------------------------------------------------------------------------

    def _groups(self):
        """Arguments up to the closing parenthesis: a list of ';'-separated groups of ','-separated exprs."""
        groups = [[]]
        if self.at(")"):
            self.advance()
            return [[]]
        while True:
            if self.at(";"):
                groups.append([])
                self.advance()
                continue
            if self.at(")"):
                self.advance()
                return groups
            groups[-1].append(self.expr())
            if self.at(","):
                self.advance()
                if self.at(";") or self.at(")"):
                    self.fail("unexpected token", ["an expression"])
            elif not (self.at(";") or self.at(")")):
                self.fail("unexpected token", ["','", "';'", "')'"])

    def call(self, name: Token):
        fn = name.text
        pos = (name.line, name.col)
        if fn not in FUNCTIONS:
            raise UndeclaredSymbol(fn, name.line, name.col, what="function")
        self.expect("(")
        self._enter()
        try:
            if fn == "sum":
                return self.sum_call(name)
            groups = self._groups()
        finally:
            self.depth -= 1
        flat = [e for g in groups for e in g]
        if fn in ("pochhammer", "qpoch"):
            if len(groups) != 1 or len(flat) != 2:
                raise ArityError(fn, "2 arguments (base, index)", self._count(groups), *pos)
            return Poch(fn == "qpoch", flat[0], flat[1], pos)
        if fn in ("qprodinf", "abs"):
            if len(groups) != 1 or len(flat) != 1:
                raise ArityError(fn, "1 argument", self._count(groups), *pos)
            return (QProdInf if fn == "qprodinf" else Abs)(flat[0], pos)
        if fn in ("hyp", "qhyp"):
            if len(groups) != 3 or len(groups[2]) != 1:
                raise ArityError(fn, "3 groups (upper; lower; argument)", self._count(groups), *pos)
            return Hyp(fn == "qhyp", tuple(groups[0]), tuple(groups[1]), groups[2][0], pos)
        # vwp8phi7
        if len(groups) != 3 or [len(g) for g in groups] != [1, 5, 1]:
            raise ArityError(fn, "groups of 1; 5; 1 (a; b, c, d, e, f; argument)", self._count(groups), *pos)
        return Vwp(groups[0][0], tuple(groups[1]), groups[2][0], pos)

    @staticmethod
    def _count(groups) -> str:
        return "; ".join(str(len(g)) for g in groups) + " argument(s)"

    def sum_call(self, name: Token):
        pos = (name.line, name.col)
        if self.tok.kind != "name":
            if self.at(")"):
                raise ArityError("sum", "4 arguments (index, lower, upper | auto, body)", "0 argument(s)", *pos)
            self.fail("unexpected token", ["an index name"])
        idx = self.advance()
        args = []
        upper_auto = False
        for k in range(2):
            if not self.at(","):
                got = 1 + len(args)
                raise ArityError("sum", "4 arguments (index, lower, upper | auto, body)", f"{got} argument(s)", *pos)
            self.advance()
            if k == 1 and self.at("auto"):
                self.advance()
                upper_auto = True
                args.append(None)
            else:
                args.append(self.expr())
        if not self.at(","):
            raise ArityError("sum", "4 arguments (index, lower, upper | auto, body)", "3 argument(s)", *pos)
        self.advance()
        body = self.expr()
        if not self.at(")"):
            if self.at(",") or self.at(";"):
                raise ArityError("sum", "4 arguments (index, lower, upper | auto, body)", "more than 4", *pos)
            self.fail("unexpected token", ["')'"])
        self.advance()
        return Sum(idx.text, args[0], None if upper_auto else args[1], body, pos)


def _children(node):
    if isinstance(node, (Num, Name)):
        return ()
    if isinstance(node, Neg):
        return (node.operand,)
    if isinstance(node, BinOp):
        return (node.left, node.right)
    if isinstance(node, Poch):
        return (node.base, node.index)
    if isinstance(node, (QProdInf, Abs)):
        return (node.arg,)
    if isinstance(node, Hyp):
        return node.upper + node.lower + (node.arg,)
    if isinstance(node, Vwp):
        return (node.a,) + node.lateral + (node.arg,)
    raise TypeError(node)


def _check(node, scope: set, params: set):
    """Every name is declared (or a bound index) and q is declared where a q-function needs it."""
    if isinstance(node, Name):
        if node.name not in scope:
            raise UndeclaredSymbol(node.name, *node.pos)
        return
    if isinstance(node, Sum):
        if node.index in scope:
            raise DSLSyntaxError(f"index {node.index!r} shadows another name", *node.pos, ["a fresh index name"])
        _check(node.lower, scope, params)
        if node.upper is not None:
            _check(node.upper, scope, params)
        _check(node.body, scope | {node.index}, params)
        return
    q_call = isinstance(node, QProdInf) or (isinstance(node, (Poch, Hyp)) and node.q_analogue) or isinstance(node, Vwp)
    if q_call and "q" not in params:
        raise UndeclaredSymbol("q", *node.pos, what="base parameter")
    for child in _children(node):
        _check(child, scope, params)


def check_symbols(doc: Document) -> None:
    scope: set = set()
    params: set = set()
    for p in doc.params:
        if p.value is not None:
            _check(p.value, scope, params)
        scope.add(p.name)
        params.add(p.name)
        for w in p.where:
            _check(w.left, scope, params)
            _check(w.right, scope, params)
    for v in doc.variables:
        if v.value is not None:
            _check(v.value, scope, params)
    scope |= {v.name for v in doc.variables}
    for side in doc.sides:
        _check(side, scope, params)


def parse(text: str) -> Document:
    """Parse a comparison document; every error carries a line and column."""
    if not isinstance(text, str):
        raise TypeError("parse expects a string")
    doc = Parser(text).document()
    check_symbols(doc)
    return doc
