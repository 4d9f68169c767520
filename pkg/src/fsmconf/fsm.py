"""Deterministic, completely-specified Mealy machines with mixed outputs.

Outputs are either finite reals (:class:`Real`) or identifiers
(:class:`Symbol`).  Machines are immutable; all operations are pure.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Sequence, Union

__all__ = [
    "Real",
    "Symbol",
    "OutputValue",
    "Transition",
    "Fsm",
    "FsmError",
    "parse_fsm",
    "load_fsm",
    "serialize_fsm",
    "validate",
    "apply",
    "disjoint_union",
    "format_real",
    "format_output",
    "format_inputs",
    "format_outputs",
    "parse_outputs",
    "parse_inputs",
]

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\Z")


class FsmError(ValueError):
    """Malformed machine text or an invalid query against a machine."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Real:
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise FsmError(f"non-finite real output {self.value!r}")

    def __str__(self):
        return format_real(self.value)


@dataclass(frozen=True)
class Symbol:
    name: str

    def __post_init__(self):
        if not IDENT.match(self.name):
            raise FsmError(f"invalid symbol identifier {self.name!r}")

    def __str__(self):
        return self.name


OutputValue = Union[Real, Symbol]


@dataclass(frozen=True)
class Transition:
    src: str
    input: str
    dst: str
    output: OutputValue
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Fsm:
    """A Mealy machine ``(S, s0, X, Y, delta, lambda)``.

    ``states`` and ``inputs`` keep declaration order, which is the tie-breaker
    for every deterministic choice made downstream.  The constructor does not
    reject malformed transition lists so that :func:`validate` can report on
    them; :func:`parse_fsm` refuses anything :func:`validate` complains about.
    """

    name: str
    states: tuple[str, ...]
    initial: str
    inputs: tuple[str, ...]
    transitions: tuple[Transition, ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        table: dict[str, dict[str, tuple[str, OutputValue]]] = {s: {} for s in self.states}
        for t in self.transitions:
            table.setdefault(t.src, {}).setdefault(t.input, (t.dst, t.output))
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_table(cls, name, states, initial, inputs, table) -> "Fsm":
        """Build from ``{state: {input: (dst, output)}}``, ordering transitions canonically."""
        trans = [
            Transition(s, x, *table[s][x])
            for s in states
            for x in inputs
            if x in table.get(s, {})
        ]
        return cls(name, tuple(states), initial, tuple(inputs), tuple(trans))

    @property
    def n(self) -> int:
        return len(self.states)

    def step(self, state: str, x: str) -> tuple[str, OutputValue]:
        try:
            return self._table[state][x]
        except KeyError:
            if state not in self._table:
                raise FsmError(f"unknown state {state!r} in machine {self.name}") from None
            raise FsmError(f"unknown input {x!r} in machine {self.name}") from None

    def delta(self, state: str, x: str) -> str:
        return self.step(state, x)[0]

    def output(self, state: str, x: str) -> OutputValue:
        return self.step(state, x)[1]

    def table(self) -> dict[str, dict[str, tuple[str, OutputValue]]]:
        return {s: dict(row) for s, row in self._table.items()}

    def symbols(self) -> tuple[str, ...]:
        """Output symbols used by the machine, in order of first appearance."""
        seen: dict[str, None] = {}
        for t in self.transitions:
            if isinstance(t.output, Symbol):
                seen.setdefault(t.output.name)
        return tuple(seen)

    def replace(self, **changes) -> "Fsm":
        kw = dict(name=self.name, states=self.states, initial=self.initial,
                  inputs=self.inputs, transitions=self.transitions)
        kw.update(changes)
        return Fsm(**kw)


def apply(m: Fsm, s: str, xs: Sequence[str]) -> tuple[str, tuple[OutputValue, ...]]:
    """Run ``xs`` from state ``s``; return the reached state and the outputs."""
    if s not in m._table:
        raise FsmError(f"unknown state {s!r} in machine {m.name}")
    out = []
    for x in xs:
        s, y = m.step(s, x)
        out.append(y)
    return s, tuple(out)


def validate(m: Fsm) -> list[str]:
    """Return every violation of determinism, completeness and well-formedness."""
    problems: list[str] = []
    states = set(m.states)
    inputs = set(m.inputs)
    for label, items in (("state", m.states), ("input", m.inputs)):
        seen = set()
        for item in items:
            if item in seen:
                problems.append(f"duplicate {label} {item}")
            seen.add(item)
    if m.initial not in states:
        problems.append(f"initial state {m.initial} is not declared")
    defined: dict[tuple[str, str], int] = {}
    for t in m.transitions:
        bad = False
        if t.src not in states:
            problems.append(f"unknown state {t.src} in transition")
            bad = True
        if t.dst not in states:
            problems.append(f"unknown state {t.dst} in transition")
            bad = True
        if t.input not in inputs:
            problems.append(f"unknown input {t.input} in transition")
            bad = True
        if bad:
            continue
        key = (t.src, t.input)
        defined[key] = defined.get(key, 0) + 1
        if defined[key] == 2:
            problems.append(f"nondeterministic at ({t.src}, {t.input})")
    for s in m.states:
        for x in m.inputs:
            if (s, x) not in defined:
                problems.append(f"incomplete at ({s}, {x})")
    return problems


def disjoint_union(a: Fsm, b: Fsm, name: str | None = None) -> Fsm:
    """Place two machines over the same inputs side by side.

    The initial state is ``a``'s.  State names must not clash.
    """
    if set(a.inputs) != set(b.inputs):
        raise FsmError("input alphabets differ")
    clash = set(a.states) & set(b.states)
    if clash:
        raise FsmError(f"state names clash: {', '.join(sorted(clash))}")
    return Fsm(name or f"{a.name}_{b.name}", a.states + b.states, a.initial,
               a.inputs, a.transitions + b.transitions)


# -- text format --------------------------------------------------------------

def format_real(value: float) -> str:
    """Shortest round-trip decimal, positional, always with a fractional part.

    The fractional part keeps dot-joined output sequences unambiguous:
    every real occupies exactly two dot-separated fields.
    """
    text = format(Decimal(repr(float(value))), "f")
    if "." not in text:
        text += ".0"
    if text.startswith("-") and float(value) == 0.0:
        text = text[1:]
    return text


def format_output(y: OutputValue) -> str:
    return str(y)


def format_inputs(xs: Sequence[str]) -> str:
    return ".".join(xs) if xs else "-"


def format_outputs(ys: Sequence[OutputValue]) -> str:
    return ".".join(map(str, ys)) if ys else "-"


def parse_inputs(text: str) -> tuple[str, ...]:
    if text == "-":
        return ()
    xs = tuple(text.split("."))
    for x in xs:
        if not IDENT.match(x):
            raise FsmError(f"invalid input symbol {x!r} in {text!r}")
    return xs


_INT_FIELD = re.compile(r"[+-]?\d+\Z")
_FRAC_FIELD = re.compile(r"\d+([eE][+-]?\d+)?\Z")


def parse_outputs(text: str) -> tuple[OutputValue, ...]:
    """Inverse of :func:`format_outputs`."""
    if text == "-":
        return ()
    fields = text.split(".")
    out: list[OutputValue] = []
    i = 0
    while i < len(fields):
        f = fields[i]
        if IDENT.match(f):
            out.append(Symbol(f))
            i += 1
        elif _INT_FIELD.match(f) and i + 1 < len(fields) and _FRAC_FIELD.match(fields[i + 1]):
            out.append(Real(float(f + "." + fields[i + 1])))
            i += 2
        else:
            raise FsmError(f"cannot parse output sequence {text!r}")
    return tuple(out)


def _parse_real(token: str, line: int, column: int) -> Real:
    if not DECIMAL.match(token):
        raise FsmError(f"invalid real literal {token!r}", line, column)
    value = float(token)
    if not math.isfinite(value):
        raise FsmError(f"non-finite real literal {token!r}", line, column)
    return Real(value)


def parse_fsm(text: str) -> Fsm:
    """Parse the line-based machine format and validate the result.

    ::

        fsm Specification
        input r
        state Off
        initial Off
        trans Off r Off real 19
        trans Off s On sym on
    """
    name = None
    states: list[str] = []
    inputs: list[str] = []
    initial = None
    transitions: list[Transition] = []
    seen: dict[tuple[str, str], int] = {}
    declared_at: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if not tokens:
            continue
        cols = [m.start() + 1 for m in re.finditer(r"\S+", body)]
        kw = tokens[0]

        def ident(i, what):
            if i >= len(tokens):
                raise FsmError(f"missing {what} after {kw!r}", lineno, len(body.rstrip()) + 1)
            if not IDENT.match(tokens[i]):
                raise FsmError(f"invalid {what} {tokens[i]!r}", lineno, cols[i])
            return tokens[i]

        def arity(k):
            if len(tokens) > k:
                raise FsmError(f"unexpected token {tokens[k]!r}", lineno, cols[k])

        if name is None and kw != "fsm":
            raise FsmError("expected 'fsm <name>' as the first declaration", lineno, cols[0])
        if kw == "fsm":
            if name is not None:
                raise FsmError("duplicate 'fsm' declaration", lineno, cols[0])
            name = ident(1, "machine name")
            arity(2)
        elif kw in ("input", "state"):
            item = ident(1, f"{kw} name")
            arity(2)
            bucket = inputs if kw == "input" else states
            if item in bucket:
                raise FsmError(f"duplicate {kw} {item}", lineno, cols[1])
            bucket.append(item)
            declared_at[f"{kw}:{item}"] = lineno
        elif kw == "initial":
            if initial is not None:
                raise FsmError("duplicate 'initial' declaration", lineno, cols[0])
            initial = (ident(1, "state name"), lineno, cols[1])
            arity(2)
        elif kw == "trans":
            src = ident(1, "source state")
            x = ident(2, "input")
            dst = ident(3, "target state")
            kind = ident(4, "output kind")
            if len(tokens) < 6:
                raise FsmError("missing output value", lineno, len(body.rstrip()) + 1)
            arity(6)
            for tok, col, bucket, what in ((src, cols[1], states, "state"),
                                           (x, cols[2], inputs, "input"),
                                           (dst, cols[3], states, "state")):
                if tok not in bucket:
                    raise FsmError(f"unknown {what} {tok}", lineno, col)
            if kind == "real":
                y: OutputValue = _parse_real(tokens[5], lineno, cols[5])
            elif kind == "sym":
                y = Symbol(ident(5, "output symbol"))
            else:
                raise FsmError(f"output kind must be 'real' or 'sym', not {kind!r}", lineno, cols[4])
            if (src, x) in seen:
                raise FsmError(f"duplicate transition for ({src}, {x}); first defined on line "
                               f"{seen[(src, x)]}", lineno, cols[0])
            seen[(src, x)] = lineno
            transitions.append(Transition(src, x, dst, y, lineno))
        else:
            raise FsmError(f"unknown keyword {kw!r}", lineno, cols[0])

    if name is None:
        raise FsmError("empty machine description")
    if initial is None:
        raise FsmError("missing 'initial' declaration")
    init, iline, icol = initial
    if init not in states:
        raise FsmError(f"unknown state {init}", iline, icol)
    for s in states:
        for x in inputs:
            if (s, x) not in seen:
                raise FsmError(f"incomplete: state {s} missing input {x}",
                               declared_at[f"state:{s}"])
    if not states:
        raise FsmError("machine declares no states")
    return Fsm(name, tuple(states), init, tuple(inputs), tuple(transitions))


def serialize_fsm(m: Fsm) -> str:
    """Canonical text: inputs, states, initial, then transitions by state then input."""
    lines = [f"fsm {m.name}"]
    lines += [f"input {x}" for x in m.inputs]
    lines += [f"state {s}" for s in m.states]
    lines.append(f"initial {m.initial}")
    for s in m.states:
        for x in m.inputs:
            dst, y = m.step(s, x)
            kind = "real" if isinstance(y, Real) else "sym"
            lines.append(f"trans {s} {x} {dst} {kind} {y}")
    return "\n".join(lines) + "\n"


def load_fsm(path) -> Fsm:
    with open(path, encoding="utf-8") as fh:
        return parse_fsm(fh.read())
