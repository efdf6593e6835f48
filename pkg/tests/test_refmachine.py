from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from levinlab import refmachine as rm
from levinlab.errors import InvalidOpcode, MissingEnd, TrailingBits, UnbalancedLoop
from levinlab.mixture import enumerate_programs


def test_opcode_table():
    assert [rm.RIGHT, rm.LEFT, rm.INC, rm.DEC, rm.LOOP_OPEN, rm.LOOP_CLOSE, rm.READ, rm.PUT] \
        == list(range(8))
    assert rm.END == 0b1111
    assert rm.assemble("><+-[],.").bits == "".join(format(i, "04b") for i in range(8)) + "1111"


def test_decode_roundtrip_and_mnemonic():
    p = rm.decode("00100111" + "1111")
    assert p.instructions == (rm.INC, rm.PUT)
    assert p.mnemonic == "+."
    assert len(p) == 12
    assert str(p) == "0010 0111 1111"


@pytest.mark.parametrize("bits, err", [
    ("", MissingEnd),
    ("0010", MissingEnd),
    ("10001111", InvalidOpcode),
    ("01001111", UnbalancedLoop),
    ("01011111", UnbalancedLoop),
    ("111100", TrailingBits),
])
def test_decode_errors(bits, err):
    with pytest.raises(err):
        rm.decode(bits)


def test_decode_prefix_reports_consumed():
    p, used = rm.decode_prefix("0111111101")
    assert p.mnemonic == "." and used == 8


def test_parse_program_text_binary_and_hex():
    assert rm.parse_program_text("0010 0111\n1111").mnemonic == "+."
    assert rm.parse_program_text("0x2f").mnemonic == "+"
    with pytest.raises(ValueError):
        rm.parse_program_text("0x27f")


@pytest.mark.parametrize("n, count", [(4, 1), (8, 6), (12, 37), (16, 234), (20, 1514)])
def test_valid_counts_match_brute_force(n, count):
    # counts also frozen from the exhaustive oracle
    assert sum(1 for _ in enumerate_programs(n)) - sum(1 for _ in enumerate_programs(n - 4)) == count
    if n <= 16:
        assert count == sum(oracles.is_valid(s) for s in oracles.all_strings(n) if len(s) == n)
    assert int(rm.valid_mask(n).sum()) == count


def test_valid_mask_matches_oracle_exhaustively():
    for n in range(1, 13):
        mask = rm.valid_mask(n)
        for v in range(1 << n):
            assert bool(mask[v]) == oracles.is_valid(format(v, f"0{n}b"))


def test_brute_force_decode_agrees_with_validity():
    for s in oracles.all_strings(12):
        try:
            rm.decode(s)
            ok = True
        except Exception:
            ok = False
        assert ok == oracles.is_valid(s), s


def test_prefix_free_scan_small():
    counts, violations = rm.prefix_free_scan(16)
    assert counts[4::4] == [1, 6, 37, 234]
    assert violations == 0


def test_hand_traces():
    r = rm.run(rm.assemble("+."))
    assert (r.output, r.status, r.steps) == ("1", rm.Status.HALTED, 2)
    assert r.trace[0] == rm.TraceStep(1, rm.INC, 0, 0, 1, "", "")
    r = rm.run(rm.assemble("+[.]"), budget=9)
    assert r.status is rm.Status.BUDGET_EXHAUSTED and r.output == "1111"
    r = rm.run(rm.assemble("-."))  # wraps to 255, low bit 1
    assert r.output == "1" and r.trace[0].after == 255
    r = rm.run(rm.assemble(",."), "1")
    assert r.output == "1" and r.bits_consumed == 1
    r = rm.run(rm.assemble(",."), "")
    assert r.status is rm.Status.INPUT_BLOCKED and r.steps == 1 and len(r.trace) == 1
    r = rm.run(rm.assemble("[.]."))
    assert r.output == "0" and r.steps == 2
    assert rm.run(rm.assemble(""), budget=0).status is rm.Status.HALTED


def test_prefix_verdicts():
    halted = rm.run(rm.assemble("+."))
    assert rm.prefix_verdict(halted, "1") is rm.Verdict.YES
    assert rm.prefix_verdict(halted, "11") is rm.Verdict.NO
    assert rm.prefix_verdict(halted, "0") is rm.Verdict.NO
    looping = rm.run(rm.assemble("+[.]"), budget=5)
    assert rm.prefix_verdict(looping, "1" * 20) is rm.Verdict.UNKNOWN
    assert rm.outputs_prefix(rm.assemble("+[.]"), "1" * 20, 200) is rm.Verdict.YES


def test_cpdf_encoding():
    assert rm.encode_question("01") == "11001"
    assert rm.dyadic("11") == Fraction(3, 4)
    assert rm.eval_cpdf(rm.assemble("+.."), "0", 100) == Fraction(3, 4)
    assert rm.eval_cpdf(rm.assemble(""), "0", 100) is None
    assert rm.eval_cpdf(rm.assemble("+[]"), "0", 100) is None


def test_interpreter_matches_oracle_exhaustively():
    for p in enumerate_programs(16):
        for inp in ("", "0", "1", "110"):
            r = rm.run(p, inp, 64, trace=False)
            assert (r.output, r.status.value, r.steps) == oracles.interpret(p.bits, inp, 64)


programs = st.sampled_from(list(enumerate_programs(20)))
inputs = st.text("01", max_size=6)


@settings(max_examples=200, deadline=None)
@given(programs, inputs, st.integers(0, 300))
def test_deterministic(p, inp, budget):
    assert rm.run(p, inp, budget) == rm.run(p, inp, budget)


@settings(max_examples=200, deadline=None)
@given(programs, inputs, st.integers(0, 200), st.integers(0, 200))
def test_output_monotone_in_budget(p, inp, a, b):
    lo, hi = sorted((a, b))
    r_lo, r_hi = rm.run(p, inp, lo), rm.run(p, inp, hi)
    assert r_hi.output.startswith(r_lo.output)
    assert r_lo.steps <= r_hi.steps
    if r_lo.status is not rm.Status.BUDGET_EXHAUSTED:
        assert r_hi == r_lo


@settings(max_examples=200, deadline=None)
@given(programs, st.text("01", max_size=4), st.integers(0, 200), st.integers(0, 200))
def test_verdict_monotone_in_budget(p, x, a, b):
    lo, hi = sorted((a, b))
    v_lo = rm.outputs_prefix(p, x, lo)
    v_hi = rm.outputs_prefix(p, x, hi)
    if v_lo is not rm.Verdict.UNKNOWN:
        assert v_hi is v_lo
