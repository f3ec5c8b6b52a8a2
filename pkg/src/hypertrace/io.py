"""Text formats for trace sets and witness maps.

Trace files::

    # comment
    vars: a x y z
    trace t1: 0000 0110 ; 1001
    trace fin: 0000 0110

Each token is one valuation, one bit per declared variable in declaration
order. ``;`` separates stem from period; without it the trace is finite.

Witness maps hold one ``NAME -> NAME`` pair per line.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import TraceFileError
from .traces import Trace, TraceSet, parse_valuation
from .witness import WitnessBijection

__all__ = [
    "parse_traces",
    "read_traces",
    "render_traces",
    "write_traces",
    "parse_witness",
    "read_witness",
    "render_witness",
]

_NAME = re.compile(r"[A-Za-z0-9_'.\-]+$")


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _tokens(text: str, offset: int):
    """Whitespace-separated tokens with 1-based columns."""
    return [(m.group(), offset + m.start() + 1) for m in re.finditer(r"\S+", text)]


def parse_traces(text: str, source=None) -> TraceSet:
    order = None
    named = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue

        def fail(msg, col):
            raise TraceFileError(msg, lineno, col, source)

        head = line.lstrip()
        col0 = len(line) - len(head)
        if order is None:
            if not head.startswith("vars:"):
                fail("expected 'vars:' declaration", col0 + 1)
            names = _tokens(line[col0 + 5:], col0 + 5)
            if not names:
                fail("no variables declared", col0 + 6)
            order = []
            for name, col in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                    fail(f"bad variable name {name!r}", col)
                if name in order:
                    fail(f"variable {name!r} declared twice", col)
                order.append(name)
            continue
        m = re.match(r"trace\s+(\S+?)\s*:", head)
        if not m:
            fail("expected 'trace NAME: ...'", col0 + 1)
        name = m.group(1)
        if not _NAME.match(name):
            fail(f"bad trace name {name!r}", col0 + m.start(1) + 1)
        if name in named:
            fail(f"trace {name!r} defined twice", col0 + m.start(1) + 1)
        body_at = col0 + m.end()
        body = line[body_at:]
        parts = body.split(";")
        if len(parts) > 2:
            fail("more than one ';'", body_at + body.index(";", body.index(";") + 1) + 1)
        groups = []
        offset = body_at
        for part in parts:
            vals = []
            for tok, col in _tokens(part, offset):
                if len(tok) != len(order) or set(tok) - {"0", "1"}:
                    fail(f"valuation {tok!r} must be {len(order)} bits", col)
                vals.append(parse_valuation(tok, order))
            groups.append(tuple(vals))
            offset += len(part) + 1
        if len(groups) == 2 and not groups[1]:
            fail("empty period", body_at + len(body) + 1)
        period = groups[1] if len(groups) == 2 else None
        named[name] = Trace(groups[0], period, frozenset(order))
    if order is None:
        raise TraceFileError("missing 'vars:' declaration", 1, 1, source)
    return TraceSet.from_named(order, named)


def read_traces(path) -> TraceSet:
    p = Path(path)
    return parse_traces(p.read_text(), source=str(p))


def render_traces(T: TraceSet) -> str:
    return T.render()


def write_traces(T: TraceSet, path):
    Path(path).write_text(render_traces(T))


def parse_witness(text: str, source: TraceSet, target: TraceSet, origin=None) -> WitnessBijection:
    pairs = []
    src_names, dst_names = source.named(), target.named()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = re.match(r"\s*(\S+)\s*->\s*(\S+)\s*$", line)
        if not m:
            raise TraceFileError("expected 'NAME -> NAME'", lineno, 1, origin)
        a, b = m.group(1), m.group(2)
        if a not in src_names:
            raise TraceFileError(f"unknown source trace {a!r}", lineno, m.start(1) + 1, origin)
        if b not in dst_names:
            raise TraceFileError(f"unknown target trace {b!r}", lineno, m.start(2) + 1, origin)
        pairs.append((a, b))
    return WitnessBijection.from_labels(source, target, pairs)


def read_witness(path, source: TraceSet, target: TraceSet) -> WitnessBijection:
    p = Path(path)
    return parse_witness(p.read_text(), source, target, origin=str(p))


def render_witness(f: WitnessBijection) -> str:
    return "".join(f"{a} -> {b}\n" for a, b in f.pairs())
