import pytest
from hypothesis import given, strategies as st

from plslab.bits import (BitReader, BitWriter, DecodeError, from_hex,
                         gamma_encode, to_hex)

bitstrings = st.text(alphabet="01", max_size=40)


@given(st.lists(st.integers(min_value=0, max_value=10**12), max_size=8))
def test_uint_roundtrip(xs):
    w = BitWriter()
    for x in xs:
        w.uint(x)
    r = BitReader(w.getvalue())
    assert [r.uint() for _ in xs] == xs
    r.expect_done()


@given(st.lists(st.integers(min_value=-(2**62), max_value=2**62),
                max_size=8))
def test_sint_roundtrip(xs):
    w = BitWriter()
    for x in xs:
        w.sint(x)
    r = BitReader(w.getvalue())
    assert [r.sint() for _ in xs] == xs
    r.expect_done()


@given(st.lists(bitstrings, max_size=5))
def test_field_roundtrip(fields):
    w = BitWriter()
    for f in fields:
        w.field(f)
    r = BitReader(w.getvalue())
    assert [r.field() for _ in fields] == fields
    r.expect_done()


@given(bitstrings)
def test_hex_roundtrip(bits):
    assert from_hex(to_hex(bits)) == bits


def test_gamma_known_values():
    assert gamma_encode(1) == "1"
    assert gamma_encode(2) == "010"
    assert gamma_encode(5) == "00101"


def test_truncation_raises():
    w = BitWriter()
    w.uint(1000)
    bits = w.getvalue()
    for cut in range(len(bits)):
        r = BitReader(bits[:cut])
        with pytest.raises(DecodeError):
            r.uint()
            r.expect_done()


def test_trailing_bits_rejected():
    w = BitWriter()
    w.uint(3)
    r = BitReader(w.getvalue() + "0")
    r.uint()
    with pytest.raises(DecodeError):
        r.expect_done()


def test_overlong_prefix_rejected():
    with pytest.raises(DecodeError):
        BitReader("0" * 200 + "1").uint()


def test_sint_range_check():
    w = BitWriter()
    w.uint((1 << 64) * 2)    # zigzag image of a >=2^63 magnitude
    with pytest.raises(DecodeError):
        BitReader(w.getvalue()).sint()
