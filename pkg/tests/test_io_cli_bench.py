import json
from fractions import Fraction

import jsonschema
import pytest
from conftest import counted
from hypothesis import given, settings
from hypothesis import strategies as st

from realroots.bench import REPORT_SCHEMA, BenchConfig, primitive_part, run_bench, verify_result
from realroots.cli import main
from realroots.dyadic import Dyadic
from realroots.errors import ParseError
from realroots.families import mignotte
from realroots.poly import DecimalOracle, ExactOracle
from realroots.polyio import PolySpec, format_poly, parse_poly

F = Fraction


def values(spec):
    return [c.to_fraction() if isinstance(c, Dyadic) else F(c) for c in spec.coeffs]


@pytest.mark.parametrize(
    "text,expected",
    [
        ("dense highest-first\n1 0 -2\n", [-2, 0, 1]),
        ("1 0 -2", [-2, 0, 1]),
        ("dense lowest-first\n1 0 -2\n", [1, 0, -2]),
        ("sparse\n2:1 0:-2\n", [-2, 0, 1]),
        ("# comment\n\ndense highest-first  # trailing\n3*2^-2 0.5 # more\n  -7\n", [-7, F(1, 2), F(3, 4)]),
    ],
)
def test_parse(text, expected):
    assert values(parse_poly(text)) == expected


@pytest.mark.parametrize(
    "text,line,col",
    [("0 0", 1, 1), ("7", 1, 1), ("dense highest-first\n1 2\n3 abc\n", 3, 3), ("sparse\n1:1 x:2\n", 2, 5),
     ("sparse\n1:1 1:2\n", 2, 5), ("dense lowest-first\n1 2 0\n", 2, 5)],
)
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_decimal_coefficients_go_to_bitstream():
    spec = parse_poly("1 0.1 -2")
    assert not spec.exact and isinstance(spec.oracle(), DecimalOracle)
    assert spec.oracle().enclosure(1, 60).contains(F(1, 10))
    exact = parse_poly("1 0.5 -2")
    assert exact.exact and isinstance(exact.oracle(), ExactOracle)
    assert exact.integer_coeffs() == [-4, 1, 2]


def test_polyspec_invariants():
    with pytest.raises(ValueError):
        PolySpec([Dyadic(1)])
    with pytest.raises(ValueError):
        PolySpec([Dyadic(1), Dyadic(0)])


coef = st.one_of(
    st.integers(-(10**30), 10**30).map(Dyadic),
    st.builds(Dyadic, st.integers(-(1 << 40), 1 << 40), st.integers(-60, 20)),
    st.decimals(-1000, 1000, places=3, allow_nan=False).map(lambda d: format(d, "f")),
)


@pytest.mark.property
@settings(max_examples=300)
@given(st.lists(coef, min_size=2, max_size=12), st.sampled_from(["dense highest-first", "dense lowest-first", "sparse"]))
@counted
def test_format_roundtrip(cs, layout):
    spec_vals = list(cs)
    if (spec_vals[-1].is_zero() if isinstance(spec_vals[-1], Dyadic) else F(spec_vals[-1]) == 0):
        spec_vals[-1] = Dyadic(1)
    # decimals that happen to be dyadic parse back as Dyadic; compare values
    spec = PolySpec(spec_vals)
    back = parse_poly(format_poly(spec, layout))
    assert values(back) == values(spec)


def write(tmp_path, text, name="p.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_cli_isolate_json(tmp_path, capsys):
    path = write(tmp_path, "dense highest-first\n1 0 -2\n")
    assert main(["isolate", "--input", path, "--json", "--seed", "7"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["roots"]) == 2 and out["points"] == []
    for r in out["roots"]:
        assert "*2^" in r["a"] or r["a"].lstrip("-").isdigit()


def test_cli_isolate_text_stats_trace(tmp_path, capsys):
    path = write(tmp_path, "1 0 -2\n")
    trace = tmp_path / "trace.jsonl"
    assert main(["isolate", "--input", path, "--stats", "--trace", str(trace), "--interval", "0", "2"]) == 0
    text = capsys.readouterr().out
    assert "tree_nodes" in text and text.count("~") == 1
    recs = [json.loads(line) for line in trace.read_text().splitlines()]
    assert recs and all({"a", "b", "N", "rho", "outcome", "action"} <= set(r) for r in recs)


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["isolate", "--input", write(tmp_path, "0 0\n")]) == 2
    # double root: precision cap
    assert main(["isolate", "--input", write(tmp_path, "9 -6 1\n", "d.txt"), "--rho-cap", "300"]) == 3
    spec = write(tmp_path, format_poly(PolySpec.from_ints(mignotte(32, 32))), "m.txt")
    assert main(["isolate", "--input", spec, "--mode", "adsc", "--timeout", "0"]) == 4
    assert main(["isolate", "--input", write(tmp_path, "1 0.1 -2\n", "dec.txt"), "--mode", "classic"]) == 2
    capsys.readouterr()


def test_cli_bench(capsys):
    assert main(["bench", "--family", "random-uniform", "--n", "24", "--tau", "16", "--seed", "1",
                 "--modes", "adsc,anewdsc", "--verify", "--json"]) == 0
    recs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(recs) == 2
    for r in recs:
        jsonschema.validate(r, REPORT_SCHEMA)
        assert r["verified"] and r["root_count"] == r["oracle_count"]


def test_bench_random_uniform_64():
    cfg = BenchConfig(families=["random-uniform"], sizes=[(64, 32)], modes=["anewdsc"], seed=1)
    (rec,) = list(run_bench(cfg))
    jsonschema.validate(rec.as_json(), REPORT_SCHEMA)
    assert rec.verified and rec.root_count == rec.oracle_count
    # frozen from the Sturm oracle
    assert rec.oracle_count == 4


def test_bench_timeout_is_a_field():
    cfg = BenchConfig(families=["mignotte"], sizes=[(64, 64)], modes=["adsc"], timeout=0.0)
    (rec,) = list(run_bench(cfg))
    jsonschema.validate(rec.as_json(), REPORT_SCHEMA)
    assert rec.timed_out and not rec.verified and rec.root_count is None


def test_bench_workers_keep_order():
    cfg = BenchConfig(families=["wilkinson", "mignotte"], sizes=[(12, 12)], modes=["classic", "anewdsc"], workers=2)
    recs = list(run_bench(cfg))
    assert [(r.family, r.mode) for r in recs] == [
        ("wilkinson", "classic"), ("wilkinson", "anewdsc"), ("mignotte", "classic"), ("mignotte", "anewdsc")]
    assert all(r.verified for r in recs)


def test_primitive_part_and_verify():
    assert primitive_part([4, -8, 12]) == [1, -2, 3]
    assert primitive_part([-4, 8, -12]) == [1, -2, 3]
    from realroots.solver import isolate

    res = isolate(ExactOracle([-2, 0, 1]))
    assert verify_result([-2, 0, 1], res) == (2, True)
