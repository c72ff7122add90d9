"""Parser for ring-spec strings such as ``zmod:4``, ``mat:2(gf:2)``, ``sum(gf:2;gf:3)``.

Grammar (ASCII, case-insensitive)::

    spec  := "zmod:" N | "gf:" P ["," R] | "gr:" P "," N "," R
           | "ts:" Q "," N "," SIGMA | "witt:" Q | "double:" Q
           | "mat:" K "(" spec ")" | "ixy:" Q "," N
           | "eis:" P "," N "," R "," K "," S "," T "," SIGMA "[" COEFFS "]"
           | "sum(" spec ";" spec ")" | "file:" PATH
    SIGMA := "id" | "frob^" E
"""
from __future__ import annotations

import re
from pathlib import Path

from . import constructions as C
from .errors import SpecParseError, StructuralError
from .ring import FiniteRing, direct_sum, ring_from_json

_INT = re.compile(r"\d+")
_WORD = re.compile(r"[a-z]+")


class _Parser:
    def __init__(self, text: str, capacity=None):
        self.text = text
        self.src = text.lower()
        self.pos = 0
        self.capacity = capacity

    def fail(self, reason, pos=None):
        raise SpecParseError(self.text, self.pos if pos is None else pos, reason)

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self, token):
        self.skip()
        return self.src.startswith(token, self.pos)

    def expect(self, token):
        if not self.peek(token):
            self.fail(f"expected {token!r}")
        self.pos += len(token)

    def integer(self):
        self.skip()
        match = _INT.match(self.src, self.pos)
        if not match:
            self.fail("expected an integer")
        self.pos = match.end()
        return int(match.group())

    def integers(self, count):
        values = [self.integer()]
        for _ in range(count - 1):
            self.expect(",")
            values.append(self.integer())
        return values

    def sigma(self):
        if self.peek("id"):
            self.pos += 2
            return 0
        if self.peek("frob"):
            self.pos += 4
            if self.peek("^"):
                self.pos += 1
                return self.integer()
            return 1
        self.fail("expected 'id' or 'frob^E'")

    def spec(self) -> FiniteRing:
        self.skip()
        start = self.pos
        if self.peek("sum("):
            self.pos += 4
            left = self.spec()
            self.expect(";")
            right = self.spec()
            self.expect(")")
            return direct_sum(left, right)
        match = _WORD.match(self.src, self.pos)
        if not match:
            self.fail("expected a ring family name")
        family = match.group()
        self.pos = match.end()
        self.expect(":")
        cap = self.capacity
        if family == "zmod":
            return C.zmod(self.integer(), capacity=cap)
        if family == "gf":
            p = self.integer()
            r = 1
            if self.peek(","):
                self.pos += 1
                r = self.integer()
            return C.gf(p, r, capacity=cap)
        if family == "gr":
            return C.galois_ring(*self.integers(3), capacity=cap)
        if family == "ts":
            q, n = self.integers(2)
            self.expect(",")
            return C.trunc_skew(q, n, self.sigma(), capacity=cap)
        if family == "witt":
            return C.witt2(self.integer(), capacity=cap)
        if family == "double":
            return C.double(self.integer(), capacity=cap)
        if family == "mat":
            k = self.integer()
            self.expect("(")
            base = self.spec()
            self.expect(")")
            return C.matrix_ring(base, k, capacity=cap)
        if family == "ixy":
            return C.ixy(*self.integers(2), capacity=cap)
        if family == "eis":
            p, n, r, k, s, t = self.integers(6)
            self.expect(",")
            sigma = self.sigma()
            self.expect("[")
            coeffs = [] if self.peek("]") else [self.integer()]
            while self.peek(","):
                self.pos += 1
                coeffs.append(self.integer())
            self.expect("]")
            return C.eisenstein_chain(p, n, r, k, s, t, sigma, coeffs or [1], capacity=cap)
        if family == "file":
            return self.file()
        self.fail(f"unknown ring family {family!r}", start)

    def file(self):
        self.skip()
        begin = self.pos
        depth = 0
        while self.pos < len(self.src):
            ch = self.src[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif ch == ";" and depth == 0:
                break
            self.pos += 1
        path = self.text[begin:self.pos].strip()
        if not path:
            self.fail("expected a file path", begin)
        try:
            text = Path(path).read_text()
        except OSError as exc:
            self.fail(f"cannot read {path!r}: {exc.strerror}", begin)
        try:
            R = ring_from_json(text)
        except StructuralError as exc:
            self.fail(f"bad ring file {path!r}: {exc}", begin)
        if R.name is None:
            R.name = f"file:{path}"
        return R


def parse_spec(text: str, capacity=None) -> FiniteRing:
    """Build the ring described by a ring-spec string."""
    parser = _Parser(text, capacity)
    R = parser.spec()
    parser.skip()
    if parser.pos != len(parser.src):
        parser.fail("unexpected trailing input")
    return R
