"""Types, abstract syntax, parser and printer.

Concrete syntax::

    term  ::= 'lam' IDENT ':' type '.' term        (also 'λ')
            | atom atom*                           left-associated application
    atom  ::= NUMERAL | IDENT | CONST
            | '(' term ')'
            | '(' 'cert' NUMERAL NUMERAL term ')'  type-1 term with a periodicity
                                                   certificate (threshold, period)
    type  ::= base ('(' type ')')*                 t(r) is the type of maps r -> t
    base  ::= '0' | '1' | '2' | '(' type ')'       1 = 0(0), 2 = 0(0(0))

A trailing ``lam`` may appear as the last argument of an application.
Comments run from ``;`` to the end of the line.
"""

from dataclasses import dataclass
from functools import cached_property

from ..errors import ParseError

# -- types ---------------------------------------------------------------


@dataclass(frozen=True)
class Base:
    def __str__(self):
        return "0"

    @property
    def degree(self):
        return 0


@dataclass(frozen=True)
class Arrow:
    """``Arrow(result, arg)`` is the type written ``result(arg)``."""

    result: object
    arg: object

    def __str__(self):
        return f"{self.result}({self.arg})"

    @property
    def degree(self):
        return max(self.result.degree, self.arg.degree + 1)


N = Base()
T1 = Arrow(N, N)
T2 = Arrow(N, T1)


def fun(*args, result=N):
    """Curried function type taking ``args`` in order."""
    for a in reversed(args):
        result = Arrow(result, a)
    return result


BINARY = ("add", "sub", "mul", "mod", "min", "max", "eq", "lt", "le", "and", "or")

CONST_TYPES = {
    "S": fun(N),
    "rec": fun(N, N, fun(N, N)),
    "U": fun(T1),
    "mu": fun(T1),
    "K": fun(N, T1),
    "not": fun(N),
    "if": fun(N, N, N),
    **{name: fun(N, N) for name in BINARY},
}

ARITY = {
    "S": 1, "rec": 3, "U": 1, "mu": 1, "K": 2, "not": 1, "if": 3,
    **{name: 2 for name in BINARY},
}

KEYWORDS = {"lam", "cert"}

# -- terms ---------------------------------------------------------------


class Term:
    @cached_property
    def free_vars(self):
        return frozenset(_free_vars(self))

    @cached_property
    def key(self):
        """Printed form with bound variables renamed by binding depth."""
        return _alpha(self, {}, 0)

    @cached_property
    def site_key(self):
        """Key of this term used as the argument of ``U``."""
        return set_lambda(self).key

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True, eq=True)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=True)
class Num(Term):
    value: int


@dataclass(frozen=True, eq=True)
class Const(Term):
    name: str


@dataclass(frozen=True, eq=True)
class Lam(Term):
    var: str
    ty: object
    body: Term


@dataclass(frozen=True, eq=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, eq=True)
class Cert(Term):
    threshold: int
    period: int
    body: Term


def app(fn, *args):
    for a in args:
        fn = App(fn, a)
    return fn


def spine(term):
    """``(head, [args])`` of a left-nested application."""
    args = []
    while isinstance(term, App):
        args.append(term.arg)
        term = term.fn
    return term, args[::-1]


def set_lambda(arg):
    """``arg`` as a one-variable lambda, eta-expanding if needed."""
    if isinstance(arg, (Lam, Cert)):
        return arg
    name = "j"
    while name in arg.free_vars:
        name += "'"
    return Lam(name, N, App(arg, Var(name)))


def site_key(arg):
    return arg.site_key


def _free_vars(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Lam):
        return set(t.body.free_vars) - {t.var}
    if isinstance(t, App):
        return set(t.fn.free_vars) | set(t.arg.free_vars)
    if isinstance(t, Cert):
        return set(t.body.free_vars)
    return set()


def _alpha(t, names, depth):
    if isinstance(t, Var):
        return names.get(t.name, t.name)
    if isinstance(t, Lam):
        inner = {**names, t.var: f"%{depth}"}
        return f"(lam %{depth}:{t.ty}. {_alpha(t.body, inner, depth + 1)})"
    if isinstance(t, App):
        head, args = spine(t)
        return "(" + " ".join(_alpha(x, names, depth) for x in [head, *args]) + ")"
    if isinstance(t, Cert):
        return f"(cert {t.threshold} {t.period} {_alpha(t.body, names, depth)})"
    return pretty(t)


def pretty(t):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Lam):
        return f"(lam {t.var}:{t.ty}. {pretty(t.body)})"
    if isinstance(t, App):
        head, args = spine(t)
        return "(" + " ".join(pretty(x) for x in [head, *args]) + ")"
    if isinstance(t, Cert):
        return f"(cert {t.threshold} {t.period} {pretty(t.body)})"
    raise TypeError(f"not a term: {t!r}")


def subterms(t):
    """Post-order traversal."""
    if isinstance(t, Lam):
        yield from subterms(t.body)
    elif isinstance(t, App):
        yield from subterms(t.fn)
        yield from subterms(t.arg)
    elif isinstance(t, Cert):
        yield from subterms(t.body)
    yield t


# -- parser --------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise ParseError(f"{msg} at line {line}, column {col}", line=line, column=col)

    def skip(self):
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == ";":
                end = text.find("\n", self.pos)
                self.pos = len(text) if end < 0 else end
            else:
                break

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self):
        self.skip()
        start = self.pos
        text = self.text
        while self.pos < len(text) and (text[self.pos].isalnum() or text[self.pos] in "_'"):
            self.pos += 1
        return text[start:self.pos], start

    def at_lam(self):
        self.skip()
        if self.text.startswith("λ", self.pos):
            return True
        if self.text.startswith("lam", self.pos):
            nxt = self.text[self.pos + 3 : self.pos + 4]
            return not (nxt.isalnum() or nxt in "_'")
        return False

    def parse(self):
        t = self.term()
        if self.peek():
            self.error("unexpected input")
        return t

    def term(self):
        if self.at_lam():
            return self.lam()
        items = []
        while True:
            ch = self.peek()
            if not ch or ch == ")":
                break
            if self.at_lam():
                items.append(self.lam())
                break
            items.append(self.atom())
        if not items:
            self.error("expected a term")
        return app(*items)

    def lam(self):
        if self.text.startswith("λ", self.pos):
            self.pos += 1
        else:
            self.pos += 3
        name, start = self.word()
        if not name or name[0].isdigit() or name in KEYWORDS or name in CONST_TYPES:
            self.error("expected a variable name", start)
        self.expect(":")
        ty = self.type_()
        self.expect(".")
        return Lam(name, ty, self.term())

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            save = self.pos
            head, _ = self.word()
            if head == "cert":
                t = self.numeral()
                p = self.numeral()
                body = self.term()
                self.expect(")")
                if p < 1:
                    self.error("certificate period must be >= 1", save)
                return Cert(t, p, body)
            self.pos = save
            inner = self.term()
            self.expect(")")
            return inner
        name, start = self.word()
        if not name:
            self.error(f"unexpected character {ch!r}")
        if name.isdigit():
            return Num(int(name))
        if name[0].isdigit():
            self.error(f"bad token {name!r}", start)
        if name in KEYWORDS:
            self.error(f"misplaced keyword {name!r}", start)
        if name in CONST_TYPES:
            return Const(name)
        return Var(name)

    def numeral(self):
        name, start = self.word()
        if not name.isdigit():
            self.error("expected a numeral", start)
        return int(name)

    def type_(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            ty = self.type_()
            self.expect(")")
        elif ch in ("0", "1", "2"):
            self.pos += 1
            ty = {"0": N, "1": T1, "2": T2}[ch]
        else:
            self.error("expected a type")
        while self.peek() == "(":
            self.pos += 1
            arg = self.type_()
            self.expect(")")
            ty = Arrow(ty, arg)
        return ty


def parse(text):
    """Parse a term.

    >>> print(parse("lam x:0. add x 1"))
    (lam x:0. (add x 1))
    """
    return _Parser(text).parse()


def parse_type(text):
    p = _Parser(text)
    ty = p.type_()
    if p.peek():
        p.error("unexpected input after type")
    return ty
