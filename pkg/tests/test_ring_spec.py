"""
Tests for the ring expression parser and renderer
"""

import random

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.core.exceptions import InvalidDescriptor, ParseError
from src.models.descriptors import Idealize, Product, Quotient, TruncPoly, Zn
from src.services.catalog import default_catalog
from src.utils.ring_spec import parse, render, tokenize


def _idealizations():
    return st.integers(min_value=2, max_value=16).flatmap(
        lambda n: st.sampled_from([m for m in range(1, n + 1) if n % m == 0]).map(
            lambda m: Idealize(n=n, m=m)
        )
    )


_leaves = st.one_of(
    st.builds(Zn, n=st.integers(min_value=2, max_value=99)),
    st.builds(TruncPoly, n=st.integers(min_value=2, max_value=9), k=st.integers(min_value=1, max_value=4)),
    _idealizations(),
)


def _extend(children):
    return st.one_of(
        st.lists(children, min_size=2, max_size=3).map(lambda fs: Product(factors=tuple(fs))),
        st.builds(
            Quotient,
            base=children,
            generators=st.lists(st.integers(min_value=0, max_value=500), min_size=1, max_size=3).map(tuple),
        ),
    )


descriptors = st.recursive(_leaves, _extend, max_leaves=6)


class TestParse:
    @pytest.mark.parametrize("text, expected", [
        ("Z8", Zn(n=8)),
        ("Z4[x]^2", TruncPoly(n=4, k=2)),
        ("Z8(+)Z2", Idealize(n=8, m=2)),
        ("Z8 x Z3", Product(factors=(Zn(n=8), Zn(n=3)))),
        ("Z2 x Z2 x Z4", Product(factors=(Zn(n=2), Zn(n=2), Zn(n=4)))),
        ("(Z2 x Z2) x Z4", Product(factors=(Product(factors=(Zn(n=2), Zn(n=2))), Zn(n=4)))),
        ("Z8/<4>", Quotient(base=Zn(n=8), generators=(4,))),
        ("(Z8 x Z3)/<1>", Quotient(base=Product(factors=(Zn(n=8), Zn(n=3))), generators=(1,))),
        ("Z4[x]^2/<4>", Quotient(base=TruncPoly(n=4, k=2), generators=(4,))),
        ("  Z12 /< 4 , 6 >  ", Quotient(base=Zn(n=12), generators=(4, 6))),
    ])
    def test_parse(self, text, expected):
        assert parse(text) == expected

    @pytest.mark.parametrize("text, rendered", [
        ("Z8 x Z3", "Z8 x Z3"),
        ("(Z2 x Z2) x Z4", "(Z2 x Z2) x Z4"),
        ("(Z8 x Z3)/<1>", "(Z8 x Z3)/<1>"),
        ("Z12/< 4,6 >", "Z12/<4,6>"),
        ("(Z8/<4>)/<2>", "(Z8/<4>)/<2>"),
    ])
    def test_render(self, text, rendered):
        assert render(parse(text)) == rendered

    def test_default_catalog_round_trip(self):
        for descriptor in default_catalog():
            assert parse(render(descriptor)) == descriptor

    @given(descriptors)
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_round_trip(self, descriptor):
        assert parse(render(descriptor)) == descriptor

    def test_tokens_carry_byte_offsets(self):
        tokens = tokenize("Z8 x Z3")
        assert [(t.kind, t.offset) for t in tokens] == [
            ("Z", 0), ("nat", 1), ("x", 3), ("Z", 5), ("nat", 6), ("end", 7),
        ]


class TestErrors:
    @pytest.mark.parametrize("text, offset", [
        ("Z", 1),
        ("Z8/<4", 5),
        ("Z8 x", 4),
        ("", 0),
        ("Q8", 0),
        ("Z8)", 2),
        ("Z8\u00a0x", 5),
        ("Z1234567890", 1),
    ])
    def test_parse_error_offsets(self, text, offset):
        with pytest.raises(ParseError) as exc_info:
            parse(text)
        assert exc_info.value.offset == offset
        assert exc_info.value.expected
        assert exc_info.value.found

    @pytest.mark.parametrize("text, offset", [
        ("Z0", 1),
        ("Z1", 1),
        ("Z4(+)Z3", 6),
        ("Z4[x]^0", 6),
        ("Z4(+)Z0", 6),
    ])
    def test_invalid_descriptor_offsets(self, text, offset):
        with pytest.raises(InvalidDescriptor) as exc_info:
            parse(text)
        assert exc_info.value.offset == offset

    def test_nesting_limit(self):
        with pytest.raises(ParseError):
            parse("(" * 100 + "Z2" + ")" * 100)

    def test_random_input_fails_cleanly(self):
        rng = random.Random(0)
        alphabet = "Z0123456789x()[]^+/<>, "
        for _ in range(100_000):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
            try:
                descriptor = parse(text)
            except (ParseError, InvalidDescriptor):
                continue
            assert parse(render(descriptor)) == descriptor

    def test_random_bytes_fail_cleanly(self):
        rng = random.Random(1)
        grammar = b"Z0123456789x()[]^+/<>, "
        for _ in range(100_000):
            length = rng.randint(0, 12)
            if rng.random() < 0.5:
                data = bytes(rng.randrange(256) for _ in range(length))
            else:
                data = bytes(rng.choice(grammar) if rng.random() < 0.9 else rng.randrange(256) for _ in range(length))
            text = data.decode("utf-8", errors="surrogateescape")
            try:
                descriptor = parse(text)
            except ParseError as e:
                assert 0 <= e.offset <= len(data)
                continue
            except InvalidDescriptor:
                continue
            assert parse(render(descriptor)) == descriptor

    def test_escaped_byte_offset(self):
        text = b"Z8 x \xff".decode("utf-8", errors="surrogateescape")
        with pytest.raises(ParseError) as exc_info:
            parse(text)
        assert exc_info.value.offset == 5
