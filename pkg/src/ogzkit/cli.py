"""Command-line front end.

Subcommands cover the main library surfaces: applying operator expressions
to rational functions, relation checking, the classical/divided-difference
comparison, windowed bases with their generator actions, block and socle
reports, window component graphs, value-tuple walks, and the simplicity
probe.  All output is deterministic: rerunning a command byte-for-byte
reproduces its output.

Exit codes: 0 success; 2 input validation (argument, expression, job-spec
errors); 3 domain errors raised by the library.  Errors are reported as a
single JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Tuple

import jsonschema

from . import divdiff, latwalk
from ._ratio import QQ
from .combinat import check_shape
from .errors import JobSpecError, OgzError, ParseError
from .exactalg import RationalFunction, Ring, is_row_symmetric
from .gzmod import (
    EvalPoint,
    build_basis_B,
    component_graph,
    gamma_eigenvalue,
    simplicity_probe,
    singularity_setup_check,
)
from .skewops import Generators, SkewOperator, commutator, invariant_family

# ---------------------------------------------------------------------------
# expression parsing


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<xvar>x\[\d+,\d+\])
      | (?P<zvar>z\[\d+\])
      | (?P<shift>phi\[\d+,\d+\](?:\^-?\d+)?)
      | (?P<opname>gamma\[\d+,\d+\]|partial\[\d+,\d+\]|[EF]\d+)
      | (?P<int>\d+)
      | (?P<sym>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"cannot read expression at ...{text[pos:pos + 12]!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group()))
    out.append(("end", ""))
    return out


class _Parser:
    """Recursive descent over +, -, *, /, ^, parentheses; atoms are cell
    variables, parameters, integers, and (when enabled) operator tokens."""

    def __init__(self, ring: Ring, text: str, allow_ops: bool):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0
        self.allow_ops = allow_ops
        self.gens = Generators(ring) if allow_ops else None

    def peek(self) -> tuple:
        return self.tokens[self.pos]

    def take(self) -> tuple:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, s: str):
        kind, val = self.take()
        if kind != "sym" or val != s:
            raise ParseError(f"expected {s!r}, found {val!r}")

    # values are ("s", RationalFunction) or ("o", SkewOperator)

    def _scalar(self, rf) -> tuple:
        return ("s", RationalFunction.from_any(self.ring, rf))

    def _to_op(self, v) -> SkewOperator:
        if v[0] == "o":
            return v[1]
        return SkewOperator.multiplication(self.ring, v[1])

    def _add(self, a, b, sign: int):
        if a[0] == "s" and b[0] == "s":
            return ("s", a[1] + b[1] if sign > 0 else a[1] - b[1])
        x, y = self._to_op(a), self._to_op(b)
        return ("o", x + y if sign > 0 else x - y)

    def _mul(self, a, b):
        if a[0] == "s" and b[0] == "s":
            return ("s", a[1] * b[1])
        return ("o", self._to_op(a) @ self._to_op(b))

    def _div(self, a, b):
        if a[0] == "s" and b[0] == "s":
            if b[1].is_zero():
                raise ParseError("division by zero in expression")
            return ("s", a[1] / b[1])
        raise ParseError("division involving an operator is not defined")

    def _neg(self, a):
        if a[0] == "s":
            return ("s", -a[1])
        minus = RationalFunction.from_any(self.ring, -1)
        return ("o", minus * a[1])

    def _pow(self, a, n: int):
        if a[0] == "s":
            return ("s", a[1] ** n)
        if n == 0:
            return ("o", SkewOperator.identity(self.ring))
        out = a[1]
        for _ in range(n - 1):
            out = out @ a[1]
        return ("o", out)

    def parse(self):
        v = self.expr()
        kind, val = self.take()
        if kind != "end":
            raise ParseError(f"unexpected trailing {val!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() == ("sym", "+") or self.peek() == ("sym", "-"):
            _, op = self.take()
            v = self._add(v, self.term(), 1 if op == "+" else -1)
        return v

    def term(self):
        v = self.factor()
        while self.peek() == ("sym", "*") or self.peek() == ("sym", "/"):
            _, op = self.take()
            w = self.factor()
            v = self._mul(v, w) if op == "*" else self._div(v, w)
        return v

    def factor(self):
        v = self.base()
        while self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError(
                    "exponent must be a nonnegative integer "
                    "(inverse translations are written phi[i,j]^-1)"
                )
            v = self._pow(v, int(val))
        return v

    def base(self):
        kind, val = self.take()
        if kind == "sym" and val == "(":
            v = self.expr()
            self.expect_sym(")")
            return v
        if kind == "sym" and val == "-":
            return self._neg(self.factor())
        if kind == "sym" and val == "+":
            return self.factor()
        if kind == "int":
            return self._scalar(QQ(val))
        if kind == "xvar":
            i, j = (int(t) for t in val[2:-1].split(","))
            if not (1 <= i <= len(self.ring.shape) and 1 <= j <= self.ring.shape[i - 1]):
                raise NameError(f"unknown variable x[{i},{j}]")
            return self._scalar(self.ring.x(i, j))
        if kind == "zvar":
            t = int(val[2:-1])
            if not 1 <= t <= self.ring.nparams:
                raise NameError(f"unknown parameter z[{t}]")
            return self._scalar(self.ring.z(t))
        if kind in ("shift", "opname"):
            if not self.allow_ops:
                raise ParseError(f"operator token {val!r} in a function expression")
            return ("o", self._op_token(val))
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of expression")

    def _op_token(self, tok: str) -> SkewOperator:
        try:
            if tok.startswith("phi"):
                body, _, exp = tok.partition("^")
                i, j = (int(t) for t in body[4:-1].split(","))
                n = int(exp) if exp else 1
                return self.gens.shift_op((i, j), n)
            if tok.startswith("gamma"):
                i, d = (int(t) for t in tok[6:-1].split(","))
                return self.gens.multiplier(i, d)
            if tok.startswith("partial"):
                i, p = (int(t) for t in tok[8:-1].split(","))
                return divdiff.partial(self.ring, (i, p), (i, p + 1))
            i = int(tok[1:])
            if tok[0] == "E":
                return self.gens.raising(i)
            return self.gens.lowering(i)
        except (ValueError, OgzError) as e:
            raise NameError(f"unknown operator {tok}: {e}") from None


def _max_param(text: str) -> int:
    return max((int(m.group(1)) for m in re.finditer(r"z\[(\d+)\]", text)), default=0)


def parse_expr(ring: Ring, text: str) -> RationalFunction:
    """Parse a rational-function expression over the ring."""
    v = _Parser(ring, text, allow_ops=False).parse()
    return v[1]


def parse_op(ring: Ring, text: str) -> SkewOperator:
    """Parse an operator expression (generators, shifts, divided
    differences, functions) over the ring."""
    v = _Parser(ring, text, allow_ops=True).parse()
    if v[0] == "s":
        return SkewOperator.multiplication(ring, v[1])
    return v[1]


# ---------------------------------------------------------------------------
# job specifications


JOBSPEC_SCHEMA = {
    "type": "object",
    "required": ["lambda", "point", "radius"],
    "additionalProperties": False,
    "properties": {
        "lambda": {
            "type": "array",
            "items": {"type": "integer", "minimum": 1},
            "minItems": 1,
        },
        "point": {
            "type": "object",
            "patternProperties": {
                r"^\d+,\d+$": {
                    "type": "object",
                    "required": ["tag", "offset"],
                    "additionalProperties": False,
                    "properties": {
                        "tag": {"type": "integer", "minimum": 1},
                        "offset": {"type": ["string", "integer"]},
                    },
                }
            },
            "additionalProperties": False,
        },
        "radius": {"type": "integer", "minimum": 1},
        "params": {"type": "integer", "minimum": 0},
    },
}


def load_jobspec(path: str) -> Tuple[EvalPoint, int, int]:
    """Read and validate a window job specification file; everything is
    checked before any computation starts."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise JobSpecError(f"cannot read job spec {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise JobSpecError(f"job spec {path} is not valid JSON: {e}") from None
    try:
        jsonschema.validate(data, JOBSPEC_SCHEMA)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "(root)"
        raise JobSpecError(f"job spec invalid at {where}: {e.message}") from None
    shape = tuple(data["lambda"])
    values = {}
    for key, entry in data["point"].items():
        i, j = (int(t) for t in key.split(","))
        try:
            off = QQ(entry["offset"]) if isinstance(entry["offset"], str) else QQ(entry["offset"])
        except (ValueError, ZeroDivisionError) as e:
            raise JobSpecError(f"bad offset for cell {key}: {e}") from None
        values[(i, j)] = (entry["tag"], off)
    try:
        check_shape(shape)
        point = EvalPoint.make(shape, values)
    except ValueError as e:
        raise JobSpecError(str(e)) from None
    return point, data["radius"], data.get("params", 0)


# ---------------------------------------------------------------------------
# command implementations (each returns the full output text, no trailing
# newline; main() adds exactly one)


def _parse_shape(text: str) -> tuple:
    try:
        shape = tuple(int(t) for t in text.split(","))
        return check_shape(shape)
    except ValueError as e:
        raise ParseError(f"bad shape {text!r}: {e}") from None


def _cmd_apply(args) -> str:
    shape = _parse_shape(args.shape)
    nparams = max(args.params, _max_param(args.op), _max_param(args.expr))
    ring = Ring(shape, nparams)
    op = parse_op(ring, args.op)
    val = parse_expr(ring, args.expr)
    out = op.apply(val)
    return str(out)


def _cmd_check_relations(args) -> str:
    shape = _parse_shape(args.shape)
    ring = Ring(shape, 0)
    gens = Generators(ring)
    k = len(shape)
    lines = [f"shape=({','.join(str(s) for s in shape)})"]
    checks = []
    ladder = list(range(1, k))
    mults = [(i, d) for i in range(1, k + 1) for d in range(1, shape[i - 1] + 1)]
    for pos, (i, d) in enumerate(mults):
        for i2, d2 in mults[pos + 1:]:
            checks.append(
                (f"[gamma[{i},{d}],gamma[{i2},{d2}]]=0",
                 commutator(gens.multiplier(i, d), gens.multiplier(i2, d2)).is_zero())
            )
    for i in ladder:
        for j in ladder:
            if i != j:
                checks.append(
                    (f"[E{i},F{j}]=0", commutator(gens.raising(i), gens.lowering(j)).is_zero())
                )
    for i in ladder:
        for i2, d in mults:
            if i2 != i:
                checks.append(
                    (f"[E{i},gamma[{i2},{d}]]=0",
                     commutator(gens.raising(i), gens.multiplier(i2, d)).is_zero())
                )
                checks.append(
                    (f"[F{i},gamma[{i2},{d}]]=0",
                     commutator(gens.lowering(i), gens.multiplier(i2, d)).is_zero())
                )
    for i in ladder:
        for j in ladder:
            if abs(i - j) >= 2 and i < j:
                checks.append(
                    (f"[E{i},E{j}]=0", commutator(gens.raising(i), gens.raising(j)).is_zero())
                )
                checks.append(
                    (f"[F{i},F{j}]=0", commutator(gens.lowering(i), gens.lowering(j)).is_zero())
                )
    for i in ladder:
        c = commutator(gens.raising(i), gens.lowering(i))
        ok = c.is_multiplication()
        label = f"[E{i},F{i}] is a multiplication"
        if ok:
            val = c.multiplier_value()
            ok = val.is_polynomial() and is_row_symmetric(val.polynomial_part())
            label = f"[E{i},F{i}] is multiplication by an invariant polynomial"
        checks.append((label, ok))
    for i in ladder:
        for j in ladder:
            if abs(i - j) == 1:
                inner = commutator(gens.raising(i), gens.raising(j))
                checks.append(
                    (f"[E{i},[E{i},E{j}]]=0",
                     commutator(gens.raising(i), inner).is_zero())
                )
    for name, ok in checks:
        lines.append(f"{name}: {'ok' if ok else 'FAIL'}")
    nbad = sum(1 for _, ok in checks if not ok)
    lines.append(f"checked={len(checks)} failed={nbad}")
    return "\n".join(lines)


def _cmd_ddiff_compare(args) -> str:
    shape = _parse_shape(args.shape)
    ring = Ring(shape, 0)
    try:
        mu = tuple(int(t) for t in args.mu.split(","))
    except ValueError:
        raise ParseError(f"bad composition {args.mu!r}") from None
    up = not args.down
    classical = Generators(ring).raising(args.row) if up else Generators(ring).lowering(args.row)
    ddiff = divdiff.generators_ddiff_form(ring, args.row, mu, up=up)
    fam = invariant_family(ring, args.degree)
    lines = [
        f"shape=({','.join(str(s) for s in shape)}) row={args.row} "
        f"mu=({','.join(str(m) for m in mu)}) direction={'raising' if up else 'lowering'}"
    ]
    nbad = 0
    for t, f in enumerate(fam):
        a = classical.apply(f)
        b = ddiff.apply(f)
        same = (a - b).is_zero()
        if not same:
            nbad += 1
            lines.append(f"member {t}: MISMATCH on {f}")
    # informational: for a nontrivial composition the forms legitimately
    # differ off the invariant subspace, so normal forms need not coincide
    lines.append(
        f"same_normal_form={'yes' if (classical - ddiff).is_zero() else 'no'}"
    )
    lines.append(
        f"family={len(fam)} mismatches={nbad} verdict={'ok' if nbad == 0 else 'FAIL'}"
    )
    return "\n".join(lines)


def _fmt_char(character) -> str:
    rows = []
    for row in character:
        vals = []
        for tag, off in row:
            s = f"z[{tag}]"
            if off > 0:
                s += f"+{off}"
            elif off < 0:
                s += str(off)
            vals.append(s)
        rows.append("{" + ",".join(vals) + "}")
    return ";".join(rows)


def _cmd_basis(args) -> str:
    point, radius, params = load_jobspec(args.spec)
    report = singularity_setup_check(point, radius)
    lines = [f"point {point}", f"radius {radius}"]
    if not report.ok:
        raise OgzError("; ".join(report.issues()))
    win = build_basis_B(point, radius, nparams=params)
    lines.append(f"window_size {report.window_size}")
    lines.append(f"orbits {len(win.orbits)}")
    lines.append(f"basis {len(win.basis)}")
    lines.append(f"family_degree {win.family_degree}")
    lines.append(f"family_size {len(win.family)}")
    lines.append("rank_history " + ",".join(str(r) for r in win.rank_history))
    for orb in win.orbits:
        lines.append(
            f"orbit {orb.index} rep=({','.join(str(n) for n in orb.rep_offsets)}) "
            f"size={len(orb.coset_reps)} interior={'yes' if orb.interior else 'no'} "
            f"char={_fmt_char(orb.character)}"
        )
    for b, func in enumerate(win.basis):
        oi, w = win.basis_meta[b]
        lines.append(f"b {b} orbit={oi} perm={w.render()} functional={func.render()}")
    return "\n".join(lines)


def _act_line(win, b: int, vec: dict) -> str:
    bits = []
    for tgt in sorted(vec):
        bits.append(f"{tgt}:({vec[tgt]})")
    return f"b {b} -> " + (" ".join(bits) if bits else "0")


def _cmd_action(args) -> str:
    point, radius, params = load_jobspec(args.spec)
    win = build_basis_B(point, radius, nparams=params)
    ring = win.ring
    tok = args.op.strip()
    gen = _generator_key(tok, ring)
    lines = [f"point {point}", f"radius {radius}", f"op {tok}", f"routes {args.routes}"]
    for b in range(len(win.basis)):
        oi, _ = win.basis_meta[b]
        orb = win.orbits[oi]
        if gen[0] != "multiplier" and not orb.interior:
            lines.append(f"b {b} -> boundary(skipped)")
            continue
        if args.routes == "solve":
            lines.append(_act_line(win, b, win.act(gen, b)))
        elif args.routes == "structural":
            lines.append(_act_line(win, b, win.act_structural(gen, b)))
        else:
            vec = win.act(gen, b)
            svec = win.act_structural(gen, b)
            agree = set(vec) == set(svec) and all(
                (vec[t] - svec[t]).is_zero() for t in vec
            )
            lines.append(_act_line(win, b, vec) + f" agree={'yes' if agree else 'NO'}")
    return "\n".join(lines)


def _generator_key(tok: str, ring: Ring) -> tuple:
    m = re.fullmatch(r"E(\d+)", tok)
    if m:
        i = int(m.group(1))
        if not 1 <= i <= len(ring.shape) - 1:
            raise ParseError(f"ladder row {i} out of range for the shape")
        return ("raising", i)
    m = re.fullmatch(r"F(\d+)", tok)
    if m:
        i = int(m.group(1))
        if not 1 <= i <= len(ring.shape) - 1:
            raise ParseError(f"ladder row {i} out of range for the shape")
        return ("lowering", i)
    m = re.fullmatch(r"gamma\[(\d+),(\d+)\]", tok)
    if m:
        i, d = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= len(ring.shape) and 1 <= d <= ring.shape[i - 1]):
            raise ParseError(f"multiplier gamma[{i},{d}] out of range for the shape")
        return ("multiplier", i, d)
    raise ParseError(
        f"operator {tok!r} is not a generator token (E<i>, F<i>, gamma[i,d])"
    )


def _cmd_blocks(args) -> str:
    point, radius, params = load_jobspec(args.spec)
    win = build_basis_B(point, radius, nparams=params)
    decomp = win.block_decompose()
    socle = win.socle_dims()
    lines = [f"point {point}", f"radius {radius}"]
    for entry, sd in zip(decomp, socle):
        orb = win.orbits[entry["orbit"]]
        lines.append(
            f"orbit {orb.index} rep=({','.join(str(n) for n in orb.rep_offsets)}) "
            f"size={len(orb.coset_reps)} socle={sd} "
            f"nilpotent={'ok' if entry['nilpotent_ok'] else 'FAIL'}"
        )
        for g in sorted(entry["matrices"]):
            name = f"gamma[{g[1]},{g[2]}]"
            lines.append(f"  {name} eigenvalue=({entry['eigenvalues'][g]})")
            A = entry["matrices"][g]
            for r, row in enumerate(A):
                lines.append(
                    f"  {name} row {r}: " + " ".join(f"({v})" for v in row)
                )
    lines.append(f"socle_dims {','.join(str(d) for d in socle)}")
    return "\n".join(lines)


def _cmd_graph(args) -> str:
    point, radius, _ = load_jobspec(args.spec)
    g = component_graph(point, radius, edge_rule=args.edge_rule)
    present = sum(1 for e in g.edges if e[3])
    lines = [
        f"point {point}",
        f"radius {radius}",
        f"edge_rule {g.edge_rule}",
        f"vertices {len(g.vertices)}",
        f"edges_present {present}",
        f"edges_absent {len(g.edges) - present}",
        f"components {g.n_components}",
    ]
    if args.dot:
        lines.append(g.to_dot())
    return "\n".join(lines)


def _parse_state_arg(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ParseError(f"bad state {text!r}: comma-separated integers expected") from None


_WALK_TRAILER = re.compile(r"steps \d+ all_ok (?:yes|no)|\(empty walk\)")


def _cmd_walk(args) -> str:
    if args.validate:
        try:
            with open(args.validate, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ParseError(f"cannot read walk file: {e}") from None
        # a file saved from `walk --start/--target --out` carries the report
        # trailer; drop it so saved search results validate directly
        kept = [
            ln for ln in text.splitlines() if not _WALK_TRAILER.fullmatch(ln.strip())
        ]
        states, labels = latwalk.parse_walk("\n".join(kept))
        rep = latwalk.validate_walk(states, labels)
        lines = [rep.render()]
        lines.append(
            f"arrows {len(rep.arrows)} flagged {len(rep.flagged)} "
            f"all_ok {'yes' if rep.all_ok else 'no'}"
        )
        return "\n".join(lines)
    start = _parse_state_arg(args.start)
    target = _parse_state_arg(args.target)
    try:
        walk = latwalk.find_path(start, target)
    except ValueError as e:
        raise ParseError(str(e)) from None
    rep = latwalk.validate_walk(walk)
    out = latwalk.render_walk(walk) if len(walk) > 1 else "(empty walk)"
    return out + f"\nsteps {len(walk) - 1} all_ok {'yes' if rep.all_ok else 'no'}"


def _cmd_probe(args) -> str:
    point, radius, params = load_jobspec(args.spec)
    win = build_basis_B(point, radius, nparams=params)
    rep = simplicity_probe(win, max_visited=args.max_visited)
    lines = [f"point {point}", f"radius {radius}"]
    lines.append(f"hypothesis {'ok' if rep.hypothesis_ok else 'FAIL'}")
    for issue in rep.hypothesis_issues:
        lines.append(f"  issue: {issue}")
    lines.append(f"step1 {'ok' if rep.step1_ok else 'FAIL'}")
    for orbit, kind, row, tgt, nz in rep.step1_records:
        if not nz:
            lines.append(f"  zero projection: orbit {orbit} {kind} row {row} -> orbit {tgt}")
    lines.append(f"cyclicity {'ok' if rep.cyclic_ok else 'FAIL'}")
    for start, reached, steps in rep.cyclic_records:
        lines.append(
            f"  start {start}: {'reached steps=' + str(steps) if reached else 'NOT REACHED'}"
        )
    lines.append(f"probe {'PASS' if rep.ok else 'FAIL'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ogzkit",
        description="Exact computations with row-shift operator algebras "
        "and their windowed evaluation modules.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    sp = add("apply", help="apply an operator expression to a function")
    sp.add_argument("--shape", required=True, help="row lengths, e.g. 2,1")
    sp.add_argument("--op", required=True, help="operator expression, e.g. 'E1*F1'")
    sp.add_argument("--expr", required=True, help="function expression, e.g. 'x[1,1]+x[1,2]'")
    sp.add_argument("--params", type=int, default=0, help="number of z parameters")
    sp.set_defaults(func=_cmd_apply)

    sp = add("check-relations", help="exact operator relation battery")
    sp.add_argument("--shape", required=True)
    sp.set_defaults(func=_cmd_check_relations)

    sp = add(
        "ddiff-compare",
        help="classical ladder operator vs its divided-difference form",
    )
    sp.add_argument("--shape", required=True)
    sp.add_argument("--row", type=int, required=True)
    sp.add_argument("--mu", required=True, help="composition of the row length, e.g. 2,1")
    sp.add_argument("--down", action="store_true", help="compare the lowering form")
    sp.add_argument("--degree", type=int, default=4)
    sp.set_defaults(func=_cmd_ddiff_compare)

    sp = add("basis", help="windowed basis with rank certificate")
    sp.add_argument("--spec", required=True, help="job spec JSON file")
    sp.set_defaults(func=_cmd_basis)

    sp = add("action", help="generator action on the windowed basis")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--op", required=True, help="generator token: E1, F1, gamma[i,d]")
    sp.add_argument(
        "--routes", choices=("solve", "structural", "both"), default="solve"
    )
    sp.set_defaults(func=_cmd_action)

    sp = add("blocks", help="multiplier block matrices and socle")
    sp.add_argument("--spec", required=True)
    sp.set_defaults(func=_cmd_blocks)

    sp = add("graph", help="window component graph")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--edge-rule", choices=("both", "either"), default="both")
    sp.add_argument("--dot", action="store_true", help="append DOT output")
    sp.set_defaults(func=_cmd_graph)

    sp = add("walk", help="value-tuple walks: find or validate")
    sp.add_argument("--start", help="start state, e.g. 0,0,0,0")
    sp.add_argument("--target", help="target state")
    sp.add_argument("--validate", help="walk file to validate instead")
    sp.set_defaults(func=_cmd_walk)

    sp = add("probe", help="simplicity probe on a window")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--max-visited", type=int, default=4000)
    sp.set_defaults(func=_cmd_probe)

    return p


def _emit_error(code: int, exc: BaseException):
    payload = {
        "error": {
            "code": code,
            "message": str(exc),
            "type": type(exc).__name__,
        }
    }
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if not e.code else 2
    if args.command == "walk":
        if args.validate is None and (args.start is None or args.target is None):
            _emit_error(2, ParseError("walk needs --start and --target, or --validate"))
            return 2
    try:
        text = args.func(args)
    except (ParseError, JobSpecError, NameError) as e:
        _emit_error(2, e)
        return 2
    except OgzError as e:
        _emit_error(3, e)
        return 3
    data = text + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)
    return 0


if __name__ == "__main__":
    sys.exit(main())
