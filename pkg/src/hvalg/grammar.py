"""Text grammar for scalars, group literals and algebra elements.

::

    scalar  := sum
    sum     := prod (('+' | '-') prod)*
    prod    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' ['-'] INT)?
    atom    := INT | 'e' INT | '(' sum ')'

    element := ['+' | '-'] term (('+' | '-') term)*
    term    := (unary ('*' | '/'))* basis
    basis   := ('L' | 'I') group | 'CL' | 'CI' | 'CLI' digits | 'CLIP'
    group   := '[' ['-'] INT (',' ['-'] INT)* ']'

    derivation := 'Phi' | 'Psi' | 'Sigma0' | 'SigmaM1' | 'SigmaM2'
                | 'Xi' '(' hom ')' | 'Eta1' '(' hom ')' | 'AdL' group | 'AdI' group
                | 'Lift' '(' derivation ')' | 'PhiBar' | 'Sigma0Bar'
                | 'XiBar' '(' hom ';' scalar ',' scalar ')' | 'PsiBar' '(' scalar ',' scalar ')'
    hom        := scalar (',' scalar)*

    cocycle    := ['+' | '-'] cterm (('+' | '-') cterm)*
    cterm      := (unary '*')* (BUILTIN ['(' INT ')'] | 'cob' '(' element ')')

    params     := [assign (';' assign)*]
    assign     := ('xi' | 'l' | 'l0' | 'l1' | 'l2' | 'l3') '=' scalar
                | ('chi' | 'f') '=' hom | 'M' '=' group (',' group)*
"""

from __future__ import annotations

import re

from .errors import ParseError
from .scalars import MAX_RANK, ONE, Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")
_BASIS = re.compile(r"^(L|I|CL|CI|CLIP|CLI\d+)$")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("INT", m.group(1), start))
        elif m.group(2):
            tokens.append(("NAME", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],;=":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, k=1):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, self.text, tok[2])

    def take(self, kind=None):
        tok = self.tok
        if kind is not None and tok[0] != kind:
            raise self.error(f"expected {kind!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def at(self, *kinds):
        return self.tok[0] in kinds

    def expect_end(self):
        if not self.at("EOF"):
            raise self.error(f"unexpected {self.tok[1]!r}")

    # -- scalars ------------------------------------------------------------

    def scalar_sum(self):
        value = self.scalar_prod()
        while self.at("+", "-"):
            op = self.take()[0]
            rhs = self.scalar_prod()
            value = value + rhs if op == "+" else value - rhs
        return value

    def scalar_prod(self):
        value = self.scalar_unary()
        while self.at("*", "/"):
            op = self.take()
            rhs = self.scalar_unary()
            if op[0] == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise self.error("division by zero", op)
                value = value / rhs
        return value

    def scalar_unary(self):
        if self.at("-"):
            self.take()
            return -self.scalar_unary()
        if self.at("+"):
            self.take()
            return self.scalar_unary()
        return self.scalar_power()

    def scalar_power(self):
        base = self.scalar_atom()
        if self.at("^"):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            exp_tok = self.take("INT")
            if not base and sign < 0:
                raise self.error("zero to a negative power", exp_tok)
            base = base ** (sign * int(exp_tok[1]))
        return base

    def scalar_atom(self):
        tok = self.tok
        if tok[0] == "INT":
            self.take()
            return Scalar(int(tok[1]))
        if tok[0] == "NAME":
            m = re.fullmatch(r"e(\d+)", tok[1])
            if not m or not 2 <= int(m.group(1)) <= MAX_RANK:
                raise self.error(f"unknown name {tok[1]!r}")
            self.take()
            return Scalar.gen(int(m.group(1)))
        if tok[0] == "(":
            self.take()
            value = self.scalar_sum()
            self.take(")")
            return value
        raise self.error(f"expected a number, e<i> or '(', found {tok[1] or 'end of input'!r}")

    # -- group literals and elements ----------------------------------------

    def group(self):
        self.take("[")
        coords = [self.signed_int()]
        while self.at(","):
            self.take()
            coords.append(self.signed_int())
        self.take("]")
        return tuple(coords)

    def signed_int(self):
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        return sign * int(self.take("INT")[1])

    def at_basis(self):
        return self.tok[0] == "NAME" and bool(_BASIS.match(self.tok[1]))

    def basis(self):
        from .algebra import CI, CL, CLIP, CLI, I, L

        tok = self.take("NAME")
        name = tok[1]
        if name in ("L", "I"):
            deg = self.group()
            return L(deg) if name == "L" else I(deg)
        if name == "CL":
            return CL
        if name == "CI":
            return CI
        if name == "CLIP":
            return CLIP
        return CLI(int(name[3:]))

    def coefficient(self, stop, what="a basis element"):
        """Scalar factors joined by '*' (or 'p / q *') up to the point where ``stop()`` holds."""
        coeff = ONE
        while not stop():
            factor = self.scalar_unary()
            if self.at("*"):
                self.take()
                coeff = coeff * factor
            elif self.at("/"):
                op = self.take()
                if stop():
                    raise self.error(f"cannot divide by {what}")
                divisor = self.scalar_unary()
                if not divisor:
                    raise self.error("division by zero", op)
                coeff = coeff * factor / divisor
                if not self.at("*"):
                    raise self.error(f"expected '*' before {what}")
                self.take()
            else:
                raise self.error(f"expected '*' and {what} after the coefficient")
        return coeff

    def term(self):
        coeff = self.coefficient(self.at_basis)
        return coeff, self.basis()

    def element_terms(self):
        terms = []
        sign = ONE
        if self.at("+", "-"):
            sign = -ONE if self.take()[0] == "-" else ONE
        if self.at("INT") and self.tok[1] == "0" and self.peek()[0] == "EOF":
            self.take()
            return terms
        while True:
            coeff, key = self.term()
            terms.append((key, sign * coeff))
            if not self.at("+", "-"):
                break
            sign = -ONE if self.take()[0] == "-" else ONE
        return terms


def parse_scalar(text):
    p = Parser(text)
    if p.at("EOF"):
        raise p.error("empty scalar")
    value = p.scalar_sum()
    p.expect_end()
    return value


def parse_group(text, rank=None):
    from .errors import RankMismatch

    p = Parser(text)
    a = p.group()
    p.expect_end()
    if rank is not None and len(a) != rank:
        raise RankMismatch(f"{text} does not have rank {rank}")
    return a


def parse_element(text, ctx=None):
    """Parse an element; with ``ctx`` every key is validated against it."""
    from .algebra import Element, check_key

    p = Parser(text)
    if p.at("EOF"):
        raise p.error("empty element")
    terms = p.element_terms()
    p.expect_end()
    x = Element(terms)
    if ctx is not None:
        for key, _ in terms:
            check_key(ctx, key)
    return x


# -- derivations, cocycles, automorphism parameters ---------------------------

_SIMPLE_DERIVATIONS = ("Phi", "Psi", "Sigma0", "SigmaM1", "SigmaM2", "PhiBar", "Sigma0Bar")


class _ExtParser(Parser):
    def scalar_list(self):
        values = [self.scalar_sum()]
        while self.at(","):
            self.take()
            values.append(self.scalar_sum())
        return tuple(values)

    def hom(self, rank):
        from .derivations import AddHom

        tok = self.tok
        values = self.scalar_list()
        if len(values) != rank:
            raise self.error(f"expected {rank} values, found {len(values)}", tok)
        return AddHom(values)

    def derivation(self, rank):
        from . import derivations as D

        tok = self.take("NAME")
        name = tok[1]
        if name in _SIMPLE_DERIVATIONS:
            return {"Phi": D.Phi, "Psi": D.Psi, "Sigma0": D.Sigma0, "SigmaM1": D.SigmaM1,
                    "SigmaM2": D.SigmaM2, "PhiBar": D.LiftPhiBar, "Sigma0Bar": D.LiftSigma0Bar}[name]()
        if name in ("AdL", "AdI"):
            start = self.tok
            a = self.group()
            if len(a) != rank:
                raise self.error(f"expected a degree of rank {rank}", start)
            return D.AdL(a) if name == "AdL" else D.AdI(a)
        if name not in ("Xi", "Eta1", "Lift", "XiBar", "PsiBar"):
            raise self.error(f"unknown derivation {name!r}", tok)
        self.take("(")
        if name == "Lift":
            out = D.LiftedTrivial(self.derivation(rank))
        elif name in ("Xi", "Eta1"):
            A = self.hom(rank)
            out = D.Xi(A) if name == "Xi" else D.Eta1(A)
        elif name == "XiBar":
            A = self.hom(rank)
            self.take(";")
            l = self.scalar_sum()
            self.take(",")
            out = D.LiftXiBar(A, l, self.scalar_sum())
        else:
            l = self.scalar_sum()
            self.take(",")
            out = D.LiftPsiBar(l, self.scalar_sum())
        self.take(")")
        return out

    def cocycle_term(self, ctx):
        from .cocycles import BUILTIN_KINDS, Builtin, Coboundary, LinearFunctional

        coeff = self.coefficient(
            lambda: self.at("NAME") and (self.tok[1] in BUILTIN_KINDS or self.tok[1] == "cob"),
            "a cocycle")
        tok = self.take("NAME")
        if tok[1] == "cob":
            self.take("(")
            from .algebra import Element, check_key

            terms = self.element_terms()
            self.take(")")
            for key, _ in terms:
                check_key(ctx, key)
            return coeff, Coboundary(LinearFunctional(dict(Element(terms).items())))
        index = 0
        if tok[1] == "CLIiform":
            self.take("(")
            index = int(self.take("INT")[1])
            self.take(")")
        return coeff, Builtin(tok[1], index)

    def cocycle(self, ctx):
        from .cocycles import CocycleSum

        terms = []
        sign = ONE
        if self.at("+", "-"):
            sign = -ONE if self.take()[0] == "-" else ONE
        while True:
            coeff, c = self.cocycle_term(ctx)
            terms.append((sign * coeff, c))
            if not self.at("+", "-"):
                break
            sign = -ONE if self.take()[0] == "-" else ONE
        if len(terms) == 1 and terms[0][0] == ONE:
            return terms[0][1]
        return CocycleSum(terms)

    def params(self, ctx):
        from .automorphisms import AutParams, Character, ScaleUnit

        slots = {}
        M = None
        while not self.at("EOF"):
            tok = self.take("NAME")
            name = tok[1]
            if name in slots or (name == "M" and M is not None):
                raise self.error(f"{name} given twice", tok)
            self.take("=")
            if name in ("xi", "l", "l0", "l1", "l2", "l3"):
                slots[name] = self.scalar_sum()
            elif name in ("chi", "f"):
                slots[name] = self.hom(ctx.rank)
            elif name == "M":
                rows = [self.group()]
                while self.at(","):
                    self.take()
                    rows.append(self.group())
                M = tuple(rows)
            else:
                raise self.error(f"unknown parameter {name!r}", tok)
            if not self.at("EOF"):
                self.take(";")
        u = slots.pop("xi", ONE)
        if M is None:
            if u not in (ONE, -ONE):
                raise self.error("xi other than +-1 needs an explicit M")
            sign = 1 if u == ONE else -1
            M = tuple(tuple(sign * int(i == j) for j in range(ctx.rank)) for i in range(ctx.rank))
        xi = ScaleUnit(u, M)
        chi = slots.pop("chi", None)
        return AutParams.create(ctx, xi=xi, chi=Character(chi.values) if chi else None, **slots)


def parse_derivation(text, rank):
    p = _ExtParser(text)
    d = p.derivation(rank)
    p.expect_end()
    return d


def parse_cocycle(text, ctx):
    p = _ExtParser(text)
    if p.at("EOF"):
        raise p.error("empty cocycle")
    c = p.cocycle(ctx)
    p.expect_end()
    return c


def parse_params(text, ctx):
    """Automorphism parameters; omitted slots are neutral (``""`` is the identity)."""
    p = _ExtParser(text)
    return p.params(ctx)
