"""Text syntax for field descriptors, form literals and Laurent elements.

Fields::

    field := algclosed | finite(INT) | custom(r=INT,hyp=BOOL)
           | laurent(field) | ratfn(field) | semiglobal(field; model)
    model := { key:value, ... }   keys: tree:BOOL, graph:GRAPH, components:[comp, ...]
    graph := { v:INT, e:[(a,b), ...], kinds:"ccpp" }
    comp  := leaf | ratleaf | model

Forms are bracketed lists of products over 1, s, t1..tr and integers, with
optional ``^k`` exponents, or ``elem{...}`` entries holding a Laurent
polynomial such as ``3*t^-2 + 1*t^3``.  Whitespace is free everywhere.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Tuple

from .descriptors import (
    Base,
    BaseClass,
    Cdvf,
    FieldDescriptor,
    RationalFnField,
    SemiGlobal,
    require_valid,
)
from .errors import DslSyntaxError, FormError, InvalidDescriptor
from .forms import ClassForm, SquareClass, Tower, class_of_element
from .laurent import LaurentElement
from .models import LEAF, RATLEAF, Leaf, Model, Nested, RationalLeaf, ReductionGraph


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: Optional[int] = None):
        return DslSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def mark(self) -> int:
        self.skip()
        return self.pos

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at(self, lit: str) -> bool:
        self.skip()
        return self.text.startswith(lit, self.pos)

    def accept(self, lit: str) -> bool:
        if self.at(lit):
            self.pos += len(lit)
            return True
        return False

    def expect(self, lit: str) -> None:
        if not self.accept(lit):
            found = self.text[self.pos : self.pos + 10] or "end of input"
            raise self.error(f"expected {lit!r}, found {found!r}")

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start : self.pos]
        if digits in ("", "+", "-"):
            self.pos = start
            raise self.error("expected an integer")
        return int(digits)

    def boolean(self) -> bool:
        start = self.mark()
        w = self.word()
        if w == "true":
            return True
        if w == "false":
            return False
        raise self.error("expected true or false", start)

    def end(self) -> None:
        self.skip()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


def read_arg(text: str) -> str:
    """``@path`` reads the text from a file."""
    if text.startswith("@"):
        return Path(text[1:]).read_text(encoding="utf-8")
    return text


def parse_field(text: str, validate: bool = True) -> FieldDescriptor:
    s = _Scanner(read_arg(text))
    f = _field(s)
    s.end()
    if validate:
        require_valid(f)
    return f


def _field(s: _Scanner) -> FieldDescriptor:
    start = s.mark()
    name = s.word()
    if name == "algclosed":
        return Base(BaseClass.algclosed())
    if name == "finite":
        s.expect("(")
        p = s.integer()
        s.expect(")")
        return Base(BaseClass.finite(p))
    if name == "custom":
        s.expect("(")
        s.expect("r")
        s.expect("=")
        r = s.integer()
        s.expect(",")
        s.expect("hyp")
        s.expect("=")
        hyp = s.boolean()
        s.expect(")")
        return Base(BaseClass.custom(r, hyp))
    if name in ("laurent", "ratfn"):
        s.expect("(")
        inner = _field(s)
        s.expect(")")
        return Cdvf(inner) if name == "laurent" else RationalFnField(inner)
    if name == "semiglobal":
        s.expect("(")
        over = _field(s)
        s.expect(";")
        model = _model(s)
        s.expect(")")
        return SemiGlobal(over, model)
    raise s.error(f"unknown field constructor {name!r}" if name else "expected a field", start)


def _keyed(s: _Scanner, parse_value) -> dict:
    """``{key:value, ...}`` with each key at most once."""
    s.expect("{")
    out = {}
    while True:
        start = s.mark()
        key = s.word()
        if not key:
            raise s.error("expected a key")
        if key in out:
            raise s.error(f"duplicate key {key!r}", start)
        s.expect(":")
        out[key] = parse_value(key, start)
        if not s.accept(","):
            break
    s.expect("}")
    return out


def _model(s: _Scanner) -> Model:
    def value(key, start):
        if key == "tree":
            return s.boolean()
        if key == "graph":
            return _graph(s)
        if key == "components":
            return _list(s, lambda: _component(s))
        raise s.error(f"unknown model key {key!r}", start)

    start = s.mark()
    d = _keyed(s, value)
    if "components" not in d:
        raise s.error("model needs components", start)
    if "graph" not in d and "tree" not in d:
        raise s.error("model needs a graph or a tree flag", start)
    return Model(tuple(d["components"]), graph=d.get("graph"), tree_flag=d.get("tree"))


def _graph(s: _Scanner) -> ReductionGraph:
    def value(key, start):
        if key == "v":
            return s.integer()
        if key == "e":
            return _list(s, lambda: _pair(s))
        if key == "kinds":
            return _string(s)
        raise s.error(f"unknown graph key {key!r}", start)

    start = s.mark()
    d = _keyed(s, value)
    if "v" not in d:
        raise s.error("graph needs a vertex count v", start)
    return ReductionGraph(d["v"], tuple(d.get("e", ())), d.get("kinds"))


def _list(s: _Scanner, item) -> list:
    s.expect("[")
    out = []
    if s.accept("]"):
        return out
    out.append(item())
    while s.accept(","):
        out.append(item())
    s.expect("]")
    return out


def _pair(s: _Scanner) -> Tuple[int, int]:
    s.expect("(")
    a = s.integer()
    s.expect(",")
    b = s.integer()
    s.expect(")")
    return (a, b)


def _string(s: _Scanner) -> str:
    s.expect('"')
    end = s.text.find('"', s.pos)
    if end < 0:
        raise s.error("unterminated string")
    out = s.text[s.pos : end]
    s.pos = end + 1
    return out


def _component(s: _Scanner):
    if s.peek() == "{":
        return Nested(_model(s))
    start = s.mark()
    w = s.word()
    if w == "leaf":
        return LEAF
    if w == "ratleaf":
        return RATLEAF
    raise s.error("expected leaf, ratleaf or a nested model", start)


def print_field(f: FieldDescriptor) -> str:
    if isinstance(f, Base):
        b = f.base
        if b.kind == "algclosed":
            return "algclosed"
        if b.kind == "finite":
            return f"finite({b.p})"
        return f"custom(r={b.r},hyp={_bool(b.fnfield_hypothesis)})"
    if isinstance(f, Cdvf):
        return f"laurent({print_field(f.residue)})"
    if isinstance(f, RationalFnField):
        return f"ratfn({print_field(f.over)})"
    if isinstance(f, SemiGlobal):
        return f"semiglobal({print_field(f.over)}; {print_model(f.model)})"
    raise TypeError(f"not a field descriptor: {f!r}")


def print_model(m: Model) -> str:
    parts = []
    if m.tree_flag is not None:
        parts.append(f"tree:{_bool(m.tree_flag)}")
    if m.graph is not None:
        g = m.graph
        gparts = [f"v:{g.vertex_count}", "e:[" + ",".join(f"({a},{b})" for a, b in g.edges) + "]"]
        if g.kinds is not None:
            gparts.append(f'kinds:"{g.kinds}"')
        parts.append("graph:{" + ",".join(gparts) + "}")
    parts.append("components:[" + ",".join(_print_component(c) for c in m.components) + "]")
    return "{" + ",".join(parts) + "}"


def _print_component(c) -> str:
    if isinstance(c, Nested):
        return print_model(c.model)
    if isinstance(c, RationalLeaf):
        return "ratleaf"
    if isinstance(c, Leaf):
        return "leaf"
    raise TypeError(f"not a component: {c!r}")


def _bool(b: bool) -> str:
    return "true" if b else "false"


# ---------------------------------------------------------------------------
# Elements and forms
# ---------------------------------------------------------------------------


def _variable(s: _Scanner, r: int) -> int:
    """Index (0-based) of ``t`` or ``tN``; ``t`` alone is only allowed when r = 1."""
    start = s.mark()
    w = s.word()
    if w == "t":
        if r != 1:
            raise FormError("bare 't' is ambiguous unless there is exactly one variable")
        return 0
    if len(w) > 1 and w[0] == "t" and w[1:].isdigit():
        i = int(w[1:])
        if not 1 <= i <= r:
            raise FormError(f"variable t{i} is outside t1..t{r}")
        return i - 1
    raise s.error(f"expected a variable, found {w!r}", start)


def _exponent(s: _Scanner) -> int:
    return s.integer() if s.accept("^") else 1


def _element_term(s: _Scanner, p: int, r: int) -> LaurentElement:
    coeff = 1
    exps = [0] * r
    if s.peek().isdigit():
        coeff = s.integer()
        if not s.accept("*"):
            return LaurentElement.constant(p, r, coeff)
    while True:
        i = _variable(s, r)
        exps[i] += _exponent(s)
        if not s.accept("*"):
            break
    return LaurentElement.monomial(p, r, exps, coeff)


def _element(s: _Scanner, p: int, r: int) -> LaurentElement:
    sign = -1 if s.accept("-") else 1
    total = _element_term(s, p, r) * sign
    while True:
        if s.accept("+"):
            total = total + _element_term(s, p, r)
        elif s.accept("-"):
            total = total - _element_term(s, p, r)
        else:
            return total


def parse_element(text: str, tower: Tower) -> LaurentElement:
    s = _Scanner(text)
    e = _element(s, tower.p, tower.r)
    s.end()
    return e


def _entry(s: _Scanner, T: Tower) -> SquareClass:
    cls = T.trivial()
    while True:
        start = s.mark()
        if s.accept("elem{"):
            e = _element(s, T.p, T.r)
            s.expect("}")
            if e.is_zero():
                raise FormError("zero entry")
            factor = class_of_element(T, e)
        elif s.peek().isdigit() or s.peek() == "-":
            c = s.integer()
            if c % T.p == 0:
                raise FormError(f"entry {c} is zero mod {T.p}")
            factor = class_of_element(T, LaurentElement.constant(T.p, T.r, c))
            if _exponent(s) % 2 == 0:
                factor = T.trivial()
        elif s.peek() == "s":
            s.expect("s")
            factor = SquareClass(_exponent(s) % 2, (0,) * T.r)
        elif s.peek() == "t":
            i = _variable(s, T.r)
            bits = [0] * T.r
            bits[i] = _exponent(s) % 2
            factor = SquareClass(0, tuple(bits))
        else:
            raise s.error("expected a form entry", start)
        cls = cls * factor
        if not s.accept("*"):
            return cls


def parse_form(text: str, tower: Tower) -> ClassForm:
    s = _Scanner(read_arg(text))
    entries = _list(s, lambda: _entry(s, tower))
    s.end()
    if not entries:
        raise FormError("forms need at least one entry")
    return ClassForm(tuple(entries))


def print_form(q: ClassForm) -> str:
    return str(q)


def parse_tower(text: str) -> Tower:
    """``p,r``"""
    parts = text.split(",")
    if len(parts) != 2:
        raise DslSyntaxError("tower must be written p,r", text, 0)
    try:
        p, r = int(parts[0]), int(parts[1])
    except ValueError:
        raise DslSyntaxError("tower must be written p,r", text, 0) from None
    return Tower(p, r)


def parse_base(text: str) -> BaseClass:
    """``algclosed``, ``finite``, ``finite:p`` or ``custom:r:hyp``; a bare
    ``finite`` means F_3 (only the exponent matters to the calculus)."""
    parts = text.split(":")
    try:
        if parts == ["algclosed"]:
            return BaseClass.algclosed()
        if parts[0] == "finite" and len(parts) <= 2:
            b = BaseClass.finite(int(parts[1]) if len(parts) == 2 else 3)
            if b.violations():
                raise InvalidDescriptor(b.violations())
            return b
        if parts[0] == "custom" and len(parts) == 3 and parts[2] in ("true", "false"):
            return BaseClass.custom(int(parts[1]), parts[2] == "true")
    except ValueError:
        pass
    raise DslSyntaxError(f"unknown base {text!r}; use algclosed, finite[:p] or custom:r:hyp", text, 0)


def print_base(b: BaseClass) -> str:
    if b.kind == "algclosed":
        return "algclosed"
    if b.kind == "finite":
        return f"finite:{b.p}"
    return f"custom:{b.r}:{_bool(b.fnfield_hypothesis)}"


def parse_dims(text: str) -> range:
    """``A..B`` (inclusive) or a single ``A``."""
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise DslSyntaxError("dims must be written A..B", text, 0) from None
    if not 1 <= lo <= hi:
        raise DslSyntaxError("dims need 1 <= A <= B", text, 0)
    return range(lo, hi + 1)


def print_dims(d: range) -> str:
    return f"{d.start}..{d.stop - 1}"
