"""Hand-rolled lexer/parser for the ASCII formula syntax.

Surface syntax (precedence, loosest first):
    ->   cimp   v   cor   &   cand   (~ / quantifiers)
`->` and compound `~` are sugar and expand at parse time, so the resulting AST
is always in negation-normal form.  Operator chains without parentheses become
one n-ary node; explicit grouping is preserved.

Sugar: postfix binary digits on terms (s0 = 0''*s, s1 = (0''*s)'), binary
numeral literals, comparisons (<=, <, >, !=) over the interpreted letter `leq`,
length comparisons |t| <= u / |t| = u / |t| < u / |t| > u / |t| != u over
`len`/`lenof`, Even/Odd as the interpreted letters `even`/`odd`, and
`E cimp F` = ~E cor F (choice implication).
"""

from __future__ import annotations

import re

from .formulas import (
    BlindAll,
    BlindEx,
    BOT,
    ChoAll,
    ChoEx,
    ChoOr,
    ElemAtom,
    Eq,
    Formula,
    GenAtom,
    Not,
    ParAnd,
    ParOr,
    TOP,
    check_free_bound_disjoint,
    cho_and,
    cho_or,
    negate,
    par_and,
    par_or,
)
from .analysis import FRESH_STEM
from .terms import Prod, Succ, Sum, Term, Var, ZERO, bin0, bin1

UNICODE_ALIASES = {
    "¬": " ~ ",      # negation sign
    "∧": " & ",
    "∨": " v ",
    "→": " -> ",
    "⊓": " cand ",
    "⊔": " cor ",
    "⊐": " cimp ",
    "⨅": " call ",
    "⨆": " cex ",
    "∀": " all ",
    "∃": " ex ",
    "⊤": " T ",
    "⊥": " F ",
    "\U0001d51f": " bb ",  # fraktur b
    "′": "'",
    "≤": " <= ",
    "≠": " != ",
    "×": " * ",
    "·": " * ",
}

KEYWORDS = {"T", "F", "v", "cand", "cor", "cimp", "all", "ex", "call", "cex", "Even", "Odd"}

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<num>[01]+)
      | (?P<ident>[A-Za-z]+|_[A-Za-z0-9_]*)
      | (?P<sym>->|<=|>=|!=|[~&().,'+*=<>|])
    )""",
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (at offset {pos}: ...{text[pos:pos + 20]!r})")


class _Lexer:
    def __init__(self, text: str):
        for uni, ascii_ in UNICODE_ALIASES.items():
            text = text.replace(uni, ascii_)
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == m.start():
                if text[pos:].strip() == "":
                    break
                raise ParseError("unexpected character", text, pos)
            if m.lastgroup is not None:
                self.tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()
        self.i = 0

    def peek(self, offset: int = 0) -> tuple[str, str, int] | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return tok

    def accept(self, kind: str, value: str | None = None) -> bool:
        tok = self.peek()
        if tok and tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return True
        return False

    def expect(self, kind: str, value: str) -> None:
        tok = self.peek()
        if not (tok and tok[0] == kind and tok[1] == value):
            pos = tok[2] if tok else len(self.text)
            raise ParseError(f"expected {value!r}", self.text, pos)
        self.i += 1

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, self.text, tok[2] if tok else len(self.text))


def _apply_digits(t: Term, digits: str) -> Term:
    for ch in digits:
        t = bin1(t) if ch == "1" else bin0(t)
    return t


class _Parser:
    def __init__(self, lx: _Lexer):
        self.lx = lx

    # ---- terms -------------------------------------------------------------

    def term(self) -> Term:
        t = self.term_mul()
        while self.lx.accept("sym", "+"):
            t = Sum(t, self.term_mul())
        return t

    def term_mul(self) -> Term:
        t = self.term_post()
        while self.lx.accept("sym", "*"):
            t = Prod(t, self.term_post())
        return t

    def term_post(self) -> Term:
        t = self.term_primary()
        while True:
            tok = self.lx.peek()
            if tok and tok[0] == "sym" and tok[1] == "'":
                self.lx.next()
                t = Succ(t)
            elif tok and tok[0] == "num":
                self.lx.next()
                t = _apply_digits(t, tok[1])
            else:
                return t

    def term_primary(self) -> Term:
        tok = self.lx.peek()
        if tok is None:
            raise self.lx.error("expected a term")
        kind, value, _ = tok
        if kind == "num":
            self.lx.next()
            if value[0] == "0" and len(value) > 1:
                return _apply_digits(ZERO, value[1:])
            if value == "0":
                return ZERO
            return _apply_digits(ZERO, value)
        if kind == "ident":
            if value in KEYWORDS:
                raise self.lx.error(f"{value!r} is a keyword, not a variable")
            self.lx.next()
            return Var(value)
        if kind == "sym" and value == "(":
            self.lx.next()
            t = self.term()
            self.lx.expect("sym", ")")
            return t
        raise self.lx.error("expected a term")

    # ---- formulas ----------------------------------------------------------

    def formula(self) -> Formula:
        return self.impl()

    def impl(self) -> Formula:
        left = self.cimp()
        if self.lx.accept("sym", "->"):
            return ParOr((negate(left), self.impl()))
        return left

    def cimp(self) -> Formula:
        left = self.orlevel()
        tok = self.lx.peek()
        if tok and tok[0] == "ident" and tok[1] == "cimp":
            self.lx.next()
            return ChoOr((negate(left), self.cimp()))
        return left

    def _chain(self, op: str, sub, build) -> Formula:
        parts = [sub()]
        while True:
            tok = self.lx.peek()
            if tok and ((op == "&" and tok[0] == "sym" and tok[1] == "&")
                        or (op != "&" and tok[0] == "ident" and tok[1] == op)):
                self.lx.next()
                parts.append(sub())
            else:
                break
        return build(parts)

    def orlevel(self) -> Formula:
        return self._chain("v", self.corlevel, par_or)

    def corlevel(self) -> Formula:
        return self._chain("cor", self.andlevel, cho_or)

    def andlevel(self) -> Formula:
        return self._chain("&", self.candlevel, par_and)

    def candlevel(self) -> Formula:
        return self._chain("cand", self.unary, cho_and)

    def unary(self) -> Formula:
        tok = self.lx.peek()
        if tok is None:
            raise self.lx.error("expected a formula")
        kind, value, _ = tok
        if kind == "sym" and value == "~":
            self.lx.next()
            return negate(self.unary())
        if kind == "ident" and value in ("all", "ex", "call", "cex"):
            self.lx.next()
            vtok = self.lx.next()
            if vtok[0] != "ident" or vtok[1] in KEYWORDS:
                raise self.lx.error("expected a variable after quantifier")
            if vtok[1].startswith(FRESH_STEM):
                pass  # reserved stem allowed internally; user-facing audit is elsewhere
            self.lx.expect("sym", ".")
            body = self.unary()
            ctor = {"all": BlindAll, "ex": BlindEx, "call": ChoAll, "cex": ChoEx}[value]
            return ctor(vtok[1], body)
        return self.primary()

    def primary(self) -> Formula:
        tok = self.lx.peek()
        if tok is None:
            raise self.lx.error("expected a formula")
        kind, value, _ = tok
        if kind == "ident" and value == "T":
            self.lx.next()
            return TOP
        if kind == "ident" and value == "F":
            self.lx.next()
            return BOT
        if kind == "ident" and value in ("Even", "Odd"):
            self.lx.next()
            self.lx.expect("sym", "(")
            t = self.term()
            self.lx.expect("sym", ")")
            return ElemAtom("even" if value == "Even" else "odd", (t,))
        if kind == "sym" and value == "|":
            return self.length_atom()
        if kind == "sym" and value == "(":
            # Either a grouped formula or a parenthesized term in a comparison.
            mark = self.lx.i
            try:
                self.lx.next()
                f = self.formula()
                self.lx.expect("sym", ")")
                return f
            except ParseError:
                self.lx.i = mark
                return self.comparison()
        if kind == "ident" and value not in KEYWORDS:
            nxt = self.lx.peek(1)
            if nxt and nxt[0] == "sym" and nxt[1] == "(":
                return self.applied_atom()
            mark = self.lx.i
            t = self.term()
            cmp_tok = self.lx.peek()
            if cmp_tok and cmp_tok[0] == "sym" and cmp_tok[1] in ("=", "!=", "<=", "<", ">", ">="):
                return self.comparison_tail(t)
            if isinstance(t, Var):
                self.lx.i = mark
                self.lx.next()
                letter = value
                cls = GenAtom if letter[0].isupper() else ElemAtom
                return cls(letter, ())
            raise self.lx.error("expected a comparison after this term")
        return self.comparison()

    def applied_atom(self) -> Formula:
        letter = self.lx.next()[1]
        self.lx.expect("sym", "(")
        args = [self.term()]
        while self.lx.accept("sym", ","):
            args.append(self.term())
        self.lx.expect("sym", ")")
        cls = GenAtom if letter[0].isupper() else ElemAtom
        return cls(letter, tuple(args))

    def comparison(self) -> Formula:
        t = self.term()
        return self.comparison_tail(t)

    def comparison_tail(self, t: Term) -> Formula:
        tok = self.lx.peek()
        if not (tok and tok[0] == "sym" and tok[1] in ("=", "!=", "<=", "<", ">", ">=")):
            raise self.lx.error("expected a comparison operator")
        op = self.lx.next()[1]
        u = self.term()
        if op == "=":
            return Eq(t, u)
        if op == "!=":
            return Not(Eq(t, u))
        if op == "<=":
            return ElemAtom("leq", (t, u))
        if op == "<":
            return Not(ElemAtom("leq", (u, t)))
        if op == ">":
            return Not(ElemAtom("leq", (t, u)))
        return ElemAtom("leq", (u, t))  # >=

    def length_atom(self) -> Formula:
        self.lx.expect("sym", "|")
        t = self.term()
        self.lx.expect("sym", "|")
        tok = self.lx.peek()
        if not (tok and tok[0] == "sym" and tok[1] in ("=", "!=", "<=", "<", ">")):
            raise self.lx.error("expected a comparison after |t|")
        op = self.lx.next()[1]
        u = self.term()
        if op == "<=":
            return ElemAtom("len", (t, u))
        if op == "=":
            return ElemAtom("lenof", (t, u))
        if op == "!=":
            return Not(ElemAtom("lenof", (t, u)))
        if op == ">":
            return Not(ElemAtom("len", (t, u)))
        # |t| < u: |t| <= u and |t| != u
        return ParAnd((ElemAtom("len", (t, u)), Not(ElemAtom("lenof", (t, u)))))


def parse_formula(text: str) -> Formula:
    lx = _Lexer(text)
    f = _Parser(lx).formula()
    if lx.peek() is not None:
        raise lx.error("trailing input after formula")
    offender = check_free_bound_disjoint(f)
    if offender is not None:
        raise ParseError(
            f"variable {offender!r} occurs both free and bound", lx.text, 0
        )
    return f


def parse_term(text: str) -> Term:
    lx = _Lexer(text)
    t = _Parser(lx).term()
    if lx.peek() is not None:
        raise lx.error("trailing input after term")
    return t


def parse(text: str) -> Formula | Term:
    """Parse a formula, falling back to a bare term."""
    try:
        return parse_formula(text)
    except ParseError as formula_err:
        try:
            return parse_term(text)
        except ParseError:
            raise formula_err from None
