"""Command-line front end.

Every subcommand prints one JSON document with sorted keys on stdout (or a
key/value table with ``--table``).  Exit codes: 0 success, 1 domain error,
2 usage or syntax error.  Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Union

from .calculus import au_set, possible_m
from .descriptors import (
    INF,
    BaseClass,
    Cdvf,
    FieldDescriptor,
    RationalFnField,
    SemiGlobal,
    cdvf_depth,
    format_value,
    is_ms_us_computable,
    ms_us,
)
from .dsl import (
    parse_base,
    parse_dims,
    parse_field,
    parse_form,
    parse_tower,
    print_base,
    print_dims,
    print_field,
)
from .errors import Contradiction, DslSyntaxError, QuadInvError
from .forms import (
    DEFAULT_MAX_R,
    ClassForm,
    Tower,
    au_enumerate,
    decide_isotropy,
    is_anisotropic_universal,
    is_universal,
    kaplansky_radical,
)
from .layers import (
    as_semiglobal,
    attainable_au,
    field_layer,
    m_from_layer,
    make_layer_example,
)
from .models import canonical_graph, to_dot
from .oracle import DEFAULT_SEARCH_BUDGET, cross_validate, parse_mode

CHECKS = ("isotropic", "universal", "au", "radical")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _tower_text(T: Tower) -> str:
    return f"{T.p},{T.r}"


@dataclass(frozen=True)
class FieldInfo:
    field: FieldDescriptor

    def to_argv(self) -> List[str]:
        return ["field-info", print_field(self.field)]


@dataclass(frozen=True)
class FormCheck:
    tower: Tower
    form: ClassForm
    check: str = "isotropic"

    def to_argv(self) -> List[str]:
        return ["form-check", "--tower", _tower_text(self.tower), "--form", str(self.form), "--check", self.check]


@dataclass(frozen=True)
class AuEnumerate:
    tower: Tower
    max_dim: Optional[int] = None
    max_r: int = DEFAULT_MAX_R

    def to_argv(self) -> List[str]:
        argv = ["au-enumerate", "--tower", _tower_text(self.tower), "--max-r", str(self.max_r)]
        if self.max_dim is not None:
            argv += ["--max-dim", str(self.max_dim)]
        return argv


@dataclass(frozen=True)
class Radical:
    tower: Tower
    max_r: int = DEFAULT_MAX_R

    def to_argv(self) -> List[str]:
        return ["radical", "--tower", _tower_text(self.tower), "--max-r", str(self.max_r)]


@dataclass(frozen=True)
class Attainable:
    n: int
    base: BaseClass

    def to_argv(self) -> List[str]:
        return ["attainable", "--n", str(self.n), "--base", print_base(self.base)]


@dataclass(frozen=True)
class PossibleM:
    n: int
    base: BaseClass

    def to_argv(self) -> List[str]:
        return ["possible-m", "--n", str(self.n), "--base", print_base(self.base)]


@dataclass(frozen=True)
class LayerExample:
    n: int
    j: int
    base: BaseClass

    def to_argv(self) -> List[str]:
        return ["layer-example", "--n", str(self.n), "--j", str(self.j), "--base", print_base(self.base)]


@dataclass(frozen=True)
class Verify:
    tower: Tower
    dims: range
    mode: str = "exhaustive"
    degree_bound: int = 0
    budget: int = DEFAULT_SEARCH_BUDGET
    text: bool = False

    def to_argv(self) -> List[str]:
        argv = [
            "verify",
            "--tower", _tower_text(self.tower),
            "--dims", print_dims(self.dims),
            "--mode", self.mode,
            "--degree-bound", str(self.degree_bound),
            "--budget", str(self.budget),
        ]
        if self.text:
            argv.append("--text")
        return argv


@dataclass(frozen=True)
class ExportGraph:
    field: FieldDescriptor

    def to_argv(self) -> List[str]:
        return ["export-graph", print_field(self.field)]


Command = Union[FieldInfo, FormCheck, AuEnumerate, Radical, Attainable, PossibleM, LayerExample, Verify, ExportGraph]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DslSyntaxError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--table", action="store_true", help="key/value table instead of JSON")
    ap = _Parser(prog="quadinv", description="Quadratic-form invariants of field towers.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    def tower(p):
        p.add_argument("--tower", required=True, help="p,r")

    def base(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--base", default="finite", help="algclosed | finite[:p] | custom:r:hyp")

    p = add("field-info", "m, u, AU and layer of a descriptor")
    p.add_argument("descriptor", help="descriptor text or @path")

    p = add("form-check", "decide a property of a form over a tower")
    tower(p)
    p.add_argument("--form", required=True)
    p.add_argument("--check", choices=CHECKS, default="isotropic")

    p = add("au-enumerate", "AU set of a tower by exhaustive search")
    tower(p)
    p.add_argument("--max-dim", type=int)
    p.add_argument("--max-r", type=int, default=DEFAULT_MAX_R)

    p = add("radical", "Kaplansky radical of a tower")
    tower(p)
    p.add_argument("--max-r", type=int, default=DEFAULT_MAX_R)

    base(add("attainable", "every attainable AU set"))
    base(add("possible-m", "every attainable m-invariant"))

    p = add("layer-example", "semi-global field with a prescribed layer")
    base(p)
    p.add_argument("--j", type=int, required=True)

    p = add("verify", "cross-validate the isotropy decision against oracles")
    tower(p)
    p.add_argument("--dims", required=True, help="A..B")
    p.add_argument("--mode", default="exhaustive", help="exhaustive | random:N:SEED")
    p.add_argument("--degree-bound", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--text", action="store_true", help="line-oriented report")

    p = add("export-graph", "DOT export of a semi-global field's reduction graph")
    p.add_argument("descriptor")
    return ap


def parse_command(argv: List[str]) -> Command:
    return _command(build_parser().parse_args(argv))


def _command(a: argparse.Namespace) -> Command:
    c = a.command
    if c == "field-info":
        return FieldInfo(parse_field(a.descriptor))
    if c == "export-graph":
        return ExportGraph(parse_field(a.descriptor))
    if c == "form-check":
        T = parse_tower(a.tower)
        return FormCheck(T, parse_form(a.form, T), a.check)
    if c == "au-enumerate":
        return AuEnumerate(parse_tower(a.tower), a.max_dim, a.max_r)
    if c == "radical":
        return Radical(parse_tower(a.tower), a.max_r)
    if c == "attainable":
        return Attainable(a.n, parse_base(a.base))
    if c == "possible-m":
        return PossibleM(a.n, parse_base(a.base))
    if c == "layer-example":
        return LayerExample(a.n, a.j, parse_base(a.base))
    if c == "verify":
        try:
            parse_mode(a.mode)
        except ValueError as e:
            raise DslSyntaxError(str(e)) from None
        return Verify(parse_tower(a.tower), parse_dims(a.dims), a.mode, a.degree_bound, a.budget, a.text)
    raise DslSyntaxError(f"unknown command {c!r}")


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------


def _sorted_set(s) -> list:
    return sorted(format_value(v) for v in s)


def field_info(f: FieldDescriptor) -> dict:
    au = au_set(f)
    doc = {
        "field": print_field(f),
        "n": cdvf_depth(f),
        "au": _sorted_set(au),
        "m": format_value(min(au)),
        "u": format_value(max(au)),
    }
    if is_ms_us_computable(f):
        doc["ms_us"] = ms_us(f)
    if isinstance(f, SemiGlobal) or (isinstance(f, RationalFnField) and isinstance(f.over, Cdvf)):
        j = field_layer(f)
        doc["layer"] = format_value(j)
        doc["fully_arboreal"] = j == INF
    return doc


def run(cmd: Command) -> Union[dict, str]:
    """Execute a command; returns a JSON-ready document (or DOT text)."""
    if isinstance(cmd, FieldInfo):
        return field_info(cmd.field)
    if isinstance(cmd, FormCheck):
        T, q = cmd.tower, cmd.form
        iso, depth = decide_isotropy(T, q)
        if cmd.check == "isotropic":
            result = iso
        elif cmd.check == "universal":
            result = is_universal(T, q)
        elif cmd.check == "au":
            result = is_anisotropic_universal(T, q)
        else:
            rad = kaplansky_radical(T)
            result = all(a in rad for a in q.entries)
        return {
            "tower": _tower_text(T),
            "form": str(q),
            "check": cmd.check,
            "result": result,
            "trace_depth": depth,
        }
    if isinstance(cmd, AuEnumerate):
        res = au_enumerate(cmd.tower, cmd.max_dim, cmd.max_r)
        return {"tower": _tower_text(cmd.tower), "au": sorted(res.au), "m": res.m, "u": res.u}
    if isinstance(cmd, Radical):
        rad = kaplansky_radical(cmd.tower, cmd.max_r)
        return {
            "tower": _tower_text(cmd.tower),
            "radical": [str(a) for a in sorted(rad, key=lambda a: a.code)],
            "size": len(rad),
            "class_count": cmd.tower.class_count,
        }
    if isinstance(cmd, Attainable):
        sets = attainable_au(cmd.n, cmd.base)
        return {"n": cmd.n, "base": print_base(cmd.base), "count": len(sets), "sets": [sorted(s) for s in sets]}
    if isinstance(cmd, PossibleM):
        return {"n": cmd.n, "base": print_base(cmd.base), "m": sorted(possible_m(cmd.n, cmd.base))}
    if isinstance(cmd, LayerExample):
        f = make_layer_example(cmd.n, cmd.j, cmd.base)
        au = au_set(f)
        return {
            "field": print_field(f),
            "layer": format_value(field_layer(f)),
            "m": min(au),
            "u": max(au),
            "au": sorted(au),
            "m_from_layer": format_value(m_from_layer(f)),
        }
    if isinstance(cmd, Verify):
        report = cross_validate(cmd.tower, cmd.dims, cmd.mode, cmd.degree_bound, cmd.budget)
        if report.contradictions:
            raise Contradiction(report)
        return report.to_text() if cmd.text else report.to_dict()
    if isinstance(cmd, ExportGraph):
        f = as_semiglobal(cmd.field)
        return to_dot(canonical_graph(f.model))
    raise TypeError(f"not a command: {cmd!r}")


def _table(doc: dict) -> str:
    width = max(len(k) for k in doc)
    lines = []
    for k in sorted(doc):
        v = doc[k]
        lines.append(f"{k.ljust(width)}  {v if isinstance(v, str) else json.dumps(v)}")
    return "\n".join(lines) + "\n"


def render(doc: Union[dict, str], table: bool = False) -> str:
    if isinstance(doc, str):
        return doc
    if table:
        return _table(doc)
    return json.dumps(doc, sort_keys=True) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        cmd = _command(args)
    except DslSyntaxError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except QuadInvError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        out = render(run(cmd), args.table)
    except Contradiction as e:
        print(f"error: {e}", file=sys.stderr)
        sys.stderr.write(e.report.to_text())
        return 1
    except QuadInvError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return 0
