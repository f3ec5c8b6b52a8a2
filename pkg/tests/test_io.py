import pytest

from hypertrace.errors import SizeMismatch, TraceFileError
from hypertrace.families import async_family, motivating_example, point_family
from hypertrace.io import parse_traces, parse_witness, read_traces, render_traces, render_witness, write_traces
from hypertrace.traces import bits_trace

SAMPLE = """\
# two traces
vars: a x
trace t1: 00 01 ; 10   # lasso
trace fin: 00 11
"""


def test_parse_sample():
    T = parse_traces(SAMPLE)
    assert T.alphabet == ("a", "x")
    named = T.named()
    assert named["t1"] == bits_trace("ax", "00 01", "10")
    assert named["fin"] == bits_trace("ax", "00 11")
    assert not T.lasso_only


@pytest.mark.parametrize("T", [motivating_example(), async_family(1).primed, point_family(2).original])
def test_round_trip(T, tmp_path):
    p = tmp_path / "t.traces"
    write_traces(T, p)
    back = read_traces(p)
    assert back == T
    assert back.named() == T.named()
    assert render_traces(back) == render_traces(T)


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("trace t: 0\n", 1, 1),
        ("vars: a\ntrace t: 0 01\n", 2, 12),
        ("vars: a a\n", 1, 9),
        ("vars: a\ntrace t: 0 ; 1 ; 0\n", 2, 16),
        ("vars: a\ntrace t: 0\ntrace t: 1\n", 3, 7),
        ("vars: a\ntrace t: 0 ;\n", 2, 13),
        ("vars: a\nnonsense\n", 2, 1),
        ("", 1, 1),
    ],
)
def test_errors_carry_position(text, line, col):
    with pytest.raises(TraceFileError) as exc:
        parse_traces(text, source="f.traces")
    assert (exc.value.line, exc.value.column) == (line, col)
    assert str(exc.value).startswith(f"f.traces:{line}:{col}:")


def test_witness_round_trip():
    F = async_family(0)
    text = render_witness(F.witness)
    assert "t1 -> t1'" in text
    g = parse_witness(text, F.original, F.primed)
    assert g.forward == F.witness.forward


def test_witness_errors():
    F = point_family(1)
    with pytest.raises(TraceFileError) as exc:
        parse_witness("e -> nope\n", F.original, F.primed, origin="w.txt")
    assert exc.value.column == 6
    with pytest.raises(TraceFileError):
        parse_witness("e => e\n", F.original, F.primed)
    with pytest.raises(SizeMismatch):
        parse_witness("e -> e\n", F.original, F.primed)
