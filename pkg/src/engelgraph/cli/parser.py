"""Group expressions: ``NAME "(" INT { "," INT } ")"`` with free whitespace.

Errors carry the byte offset of the offending token and the set of tokens
that would have been accepted there.
"""

from __future__ import annotations

from ..catalog import FAMILIES, GroupSpecExpr


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ""
        if self.expected:
            exp = ", expected " + " or ".join(sorted(repr(e) for e in self.expected))
        super().__init__(f"{message} at offset {offset}{exp}")


class UnknownFamily(ParseError):
    pass


class ArityError(ParseError):
    pass


def _tokens(data: bytes):
    i = 0
    n = len(data)
    while i < n:
        ch = data[i:i + 1]
        if ch.isspace():
            i += 1
        elif ch.isalpha():
            j = i
            while j < n and (data[j:j + 1].isalnum() or data[j:j + 1] == b"_"):
                j += 1
            yield "NAME", data[i:j].decode(), i
            i = j
        elif ch.isdigit():
            j = i
            while j < n and data[j:j + 1].isdigit():
                j += 1
            yield "INT", int(data[i:j]), i
            i = j
        elif ch in (b"(", b")", b","):
            yield ch.decode(), ch.decode(), i
            i += 1
        else:
            yield "ERROR", data[i:i + 1], i
            i += 1
    yield "EOF", None, n


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text.encode("utf-8")))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def expect(self, *kinds):
        kind, value, off = self.peek()
        if kind not in kinds:
            what = "end of input" if kind == "EOF" else f"unexpected {value!r}" if kind != "ERROR" else f"invalid character {value!r}"
            raise ParseError(f"syntax error: {what}", off, kinds)
        self.pos += 1
        return value, off

    def parse(self) -> GroupSpecExpr:
        name, name_off = self.expect("NAME")
        self.expect("(")
        args = [self.expect("INT")[0]]
        while True:
            value, off = self.expect(")", ",")
            if value == ")":
                break
            args.append(self.expect("INT")[0])
        self.expect("EOF")
        if name not in FAMILIES:
            raise UnknownFamily(f"unknown family {name!r}", name_off, sorted(FAMILIES))
        arity = FAMILIES[name][0]
        if len(args) != arity:
            raise ArityError(f"{name} takes {arity} argument(s), got {len(args)}", name_off)
        return GroupSpecExpr(name, tuple(args))


def parse_group_expr(text: str) -> GroupSpecExpr:
    return _Parser(text).parse()
