"""Recursive-descent parser for the text syntax of terms."""

from __future__ import annotations

import re

from .bijections import Bijection, BijectionError, disjoint_union, restrict_core
from . import terms as T


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(msg if line is None else f"line {line}, column {col}: {msg}")


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


_TOKEN = re.compile(r"\s*(<>|->|[A-Za-z_][A-Za-z0-9_#']*|[0-9]+|[{}\[\](),;<>^|-])")


def tokenize(text: str, offsets=None) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", *_line_col(text, bad))
        out.append(m.group(1))
        if offsets is not None:
            offsets.append(m.start(1))
        pos = m.end()
    return out


def _is_ident(tok) -> bool:
    return tok is not None and (tok[0].isalpha() or tok[0] == "_")


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.offsets = []
        self.toks = tokenize(text, self.offsets)
        self.i = 0

    def run(self, method):
        try:
            out = method()
            self.done()
            return out
        except (ParseError, BijectionError, T.TermTypeError) as e:
            if getattr(e, "line", None) is not None:
                raise
            j = max(self.i - 1, 0)
            off = self.offsets[j] if j < len(self.offsets) else len(self.text.rstrip())
            raise ParseError(getattr(e, "msg", str(e)), *_line_col(self.text, off)) from None

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")
        return got

    def var(self):
        tok = self.next()
        if not _is_ident(tok):
            raise ParseError(f"expected a variable, got {tok!r}")
        return tok

    def done(self):
        if self.peek() is not None:
            raise ParseError(f"trailing input starting at {self.peek()!r}")

    # sets and bijections

    def varset(self):
        self.expect("{")
        names = []
        if self.peek() != "}":
            names.append(self.var())
            while self.peek() == ",":
                self.next()
                names.append(self.var())
        self.expect("}")
        if len(set(names)) != len(names):
            raise ParseError(f"repeated variable in {{{','.join(names)}}}")
        return frozenset(names)

    def bijection(self):
        self.expect("[")
        pairs = []
        if self.peek() != "]":
            while True:
                a = self.var()
                self.expect("->")
                pairs.append((a, self.var()))
                if self.peek() != ",":
                    break
                self.next()
        self.expect("]")
        try:
            return Bijection(tuple(pairs))
        except BijectionError as e:
            raise ParseError(str(e)) from None

    # objects

    def obj(self):
        W = self.obj_atom()
        while self.peek() == "^":
            self.next()
            W = T.Act(W, self.action(lambda: W.type))
        return W

    def action(self, type_of):
        """A bracketed bijection, or ``id`` for the identity on the current type."""
        if self.peek() == "id":
            self.next()
            return Bijection.identity(type_of())
        return self.bijection()

    def obj_atom(self):
        tok = self.peek()
        if tok == "(":
            self.next()
            left = self.obj()
            x = self.var()
            self.expect("<>")
            y = self.var()
            right = self.obj()
            self.expect(")")
            return T.Comp(left, x, y, right)
        if not _is_ident(tok):
            raise ParseError(f"expected an object term, got {tok!r}")
        name = self.next()
        if name == "id":
            s = self.varset()
            if len(s) != 2:
                raise ParseError("a unit takes exactly two entries")
            return T.Unit(*sorted(s))
        if self.peek() == "{":
            return T.Param(name, self.varset())
        if self.peek() == "[":
            deco = self.bijection()
            return T.Param(name, deco.cod, deco)
        raise ParseError(f"parameter {name} needs an entry set or a decoration")

    def obj_args(self, n):
        self.expect("(")
        out = [self.obj()]
        while self.peek() == ",":
            self.next()
            out.append(self.obj())
        self.expect(")")
        if len(out) != n:
            raise ParseError(f"expected {n} object arguments, got {len(out)}")
        return out

    # arrows

    def arrow_seq(self):
        parts = [self.arrow()]
        while self.peek() == ";":
            self.next()
            parts.append(self.arrow())
        out = parts[0]
        for a in parts[1:]:
            out = T.VComp(a, out)
        return out

    def arrow(self):
        phi = self.arrow_atom()
        while self.peek() == "^":
            self.next()
            phi = T.AAct(phi, self.action(lambda: phi.source.type))
        return phi

    def arrow_atom(self):
        tok = self.peek()
        if tok == "(":
            self.next()
            first = self.arrow()
            if _is_ident(self.peek()) and self.peek(1) == "<>":
                x = self.var()
                self.expect("<>")
                y = self.var()
                right = self.arrow()
                self.expect(")")
                return T.HComp(first, x, y, right)
            out = first
            while self.peek() == ";":
                self.next()
                out = T.VComp(self.arrow(), out)
            self.expect(")")
            return out
        if tok == "1":
            self.next()
            self.expect("(")
            W = self.obj()
            self.expect(")")
            return T.Id(W)
        if not _is_ident(tok):
            raise ParseError(f"expected an arrow term, got {tok!r}")
        name = self.next()
        handler = getattr(self, "gen_" + name, None)
        if handler is None:
            raise ParseError(f"unknown arrow constructor {name!r}")
        return handler(name)

    def _open(self):
        self.expect("<")

    def _close(self):
        self.expect(">")

    def gen_beta(self, name):
        self._open()
        x, _, xb, _ = self.var(), self.expect(","), self.var(), self.expect(";")
        y, _, yb = self.var(), self.expect(","), self.var()
        self._close()
        w1, w2, w3 = self.obj_args(3)
        cls = T.Beta if name == "beta" else T.BetaInv
        return cls(w1, w2, w3, x, xb, y, yb)

    gen_betainv = gen_beta

    def gen_gamma(self, name):
        self._open()
        x, _, y = self.var(), self.expect(","), self.var()
        self._close()
        w1, w2 = self.obj_args(2)
        return T.Gamma(w1, w2, x, y)

    def gen_eps1(self, name):
        self._open()
        sigma = self.bijection()
        self._close()
        (p,) = self.obj_args(1)
        if not isinstance(p, T.Param):
            raise ParseError("eps1 takes a parameter")
        return (T.Eps1 if name == "eps1" else T.Eps1Inv)(p, sigma)

    gen_eps1inv = gen_eps1

    def gen_eps2(self, name):
        (W,) = self.obj_args(1)
        return (T.Eps2 if name == "eps2" else T.Eps2Inv)(W)

    gen_eps2inv = gen_eps2

    def gen_eps3(self, name):
        self._open()
        sigma = self.bijection()
        self.expect(",")
        tau = self.bijection()
        self._close()
        (W,) = self.obj_args(1)
        return (T.Eps3 if name == "eps3" else T.Eps3Inv)(W, sigma, tau)

    gen_eps3inv = gen_eps3

    def gen_eps4(self, name):
        self._open()
        x, _, y, _ = self.var(), self.expect(","), self.var(), self.expect(";")
        x2, _, y2, _ = self.var(), self.expect(","), self.var(), self.expect(";")
        sigma = self.bijection()
        second = None
        if self.peek() == ",":
            self.next()
            second = self.bijection()
        self._close()
        w1, w2 = self.obj_args(2)
        if second is not None:
            # the two-action spelling: recover the action on the composite
            try:
                sigma = disjoint_union(
                    restrict_core(sigma, w1.type - {x}), restrict_core(second, w2.type - {y})
                )
            except (BijectionError, T.TermTypeError) as e:
                raise ParseError(f"inconsistent eps4 actions: {e}") from None
        return (T.Eps4 if name == "eps4" else T.Eps4Inv)(w1, w2, sigma, x, y, x2, y2)

    gen_eps4inv = gen_eps4

    def gen_iota(self, name):
        self._open()
        x, _, y, _, z = self.var(), self.expect(","), self.var(), self.expect(","), self.var()
        self._close()
        (W,) = self.obj_args(1)
        return T.Iota(W, x, y, z)

    def gen_nu(self, name):
        self._open()
        x, _, y, _ = self.var(), self.expect(","), self.var(), self.expect(";")
        u, _, v = self.var(), self.expect(","), self.var()
        self._close()
        return T.Nu(x, y, u, v)


def parse_object(text: str) -> T.Obj:
    p = Parser(text)
    return p.run(p.obj)


def parse_arrow(text: str) -> T.Arrow:
    p = Parser(text)
    return p.run(p.arrow_seq)


def parse_bijection(text: str) -> Bijection:
    p = Parser(text)
    return p.run(p.bijection)


def parse_set(text: str) -> frozenset:
    p = Parser(text)
    return p.run(p.varset)
