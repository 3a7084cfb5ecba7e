import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zisieve.core import (
    NORM_CEILING,
    UNITS,
    GaussianInt,
    IdealGen,
    canonicalize,
    congruent,
    divrem,
    format_gaussian,
    gcd,
    norm,
    parse_gaussian,
)

coords = st.integers(min_value=-10_000, max_value=10_000)
gaussians = st.builds(GaussianInt, coords, coords)
nonzero = gaussians.filter(lambda g: not g.is_zero())


class TestNorm:
    def test_examples(self):
        assert norm(GaussianInt(3, 2)) == 13
        assert norm(GaussianInt(0, 0)) == 0
        assert norm(GaussianInt(1, 1)) == 2

    def test_ceiling_enforced(self):
        big = 1 << 31
        with pytest.raises(OverflowError):
            GaussianInt(big, big)

    def test_ceiling_boundary_ok(self):
        g = GaussianInt(2**30, 2**30)
        assert norm(g) <= NORM_CEILING

    @given(gaussians, gaussians)
    def test_multiplicative(self, a, b):
        try:
            ab = a * b
        except OverflowError:
            return
        assert norm(ab) == norm(a) * norm(b)


class TestCanonicalize:
    def test_examples(self):
        assert canonicalize(GaussianInt(-3, 0)) == GaussianInt(3, 0)
        assert canonicalize(GaussianInt(-1, 1)) == GaussianInt(1, 1)
        assert canonicalize(GaussianInt(2, 1)) == GaussianInt(2, 1)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            canonicalize(GaussianInt(0, 0))

    @given(nonzero)
    def test_idempotent_and_orbit_constant(self, a):
        c = canonicalize(a)
        assert c.re > 0 and c.im >= 0
        assert canonicalize(c) == c
        for u in UNITS:
            assert canonicalize(u * a) == c

    @given(nonzero)
    def test_orbit_has_four_members(self, a):
        assert len({u * a for u in UNITS}) == 4


class TestIdealGen:
    @given(nonzero)
    def test_equality_is_ideal_equality(self, a):
        for u in UNITS:
            assert IdealGen(u * a) == IdealGen(a)
            assert hash(IdealGen(u * a)) == hash(IdealGen(a))

    @given(nonzero)
    def test_norm_matches_generator(self, a):
        assert IdealGen(a).norm() == norm(a)

    def test_distinct_ideals_differ(self):
        assert IdealGen(GaussianInt(2, 1)) != IdealGen(GaussianInt(1, 2))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            IdealGen(GaussianInt(0, 0))


class TestDivrem:
    def test_divisor_of_five(self):
        q, r = divrem(GaussianInt(5, 0), GaussianInt(1, 1))
        assert q * GaussianInt(1, 1) + r == GaussianInt(5, 0)
        assert norm(r) <= 1

    def test_unit_divisor(self):
        a = GaussianInt(7, -3)
        q, r = divrem(a, GaussianInt(1, 0))
        assert (q, r) == (a, GaussianInt(0, 0))

    def test_exact_division(self):
        q, r = divrem(GaussianInt(4, 2), GaussianInt(1, 1))
        assert r.is_zero()
        assert q * GaussianInt(1, 1) == GaussianInt(4, 2)

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            divrem(GaussianInt(1, 0), GaussianInt(0, 0))

    @given(gaussians, nonzero)
    def test_contract(self, a, d):
        q, r = divrem(a, d)
        assert q * d + r == a
        assert 2 * norm(r) <= norm(d)


class TestGcd:
    def test_examples(self):
        assert gcd(GaussianInt(1, 1), GaussianInt(3, 0)) == GaussianInt(1, 0)
        assert gcd(GaussianInt(2, 0), GaussianInt(1, 1)) == GaussianInt(1, 1)

    def test_self(self):
        a = GaussianInt(-4, 7)
        assert gcd(a, a) == canonicalize(a)

    def test_zero_zero(self):
        with pytest.raises(ValueError):
            gcd(GaussianInt(0, 0), GaussianInt(0, 0))

    def test_gcd_with_zero(self):
        a = GaussianInt(0, -6)
        assert gcd(a, GaussianInt(0, 0)) == canonicalize(a)

    @given(nonzero, nonzero)
    @settings(max_examples=60)
    def test_divides_both_and_symmetric(self, a, b):
        g = gcd(a, b)
        assert divrem(a, g)[1].is_zero()
        assert divrem(b, g)[1].is_zero()
        assert gcd(b, a) == g

    @given(nonzero, nonzero, nonzero)
    @settings(max_examples=40)
    def test_common_divisor_divides_gcd(self, c, x, y):
        try:
            a, b = c * x, c * y
        except OverflowError:
            return
        assert divrem(gcd(a, b), c)[1].is_zero()


class TestCongruent:
    def test_examples(self):
        two = GaussianInt(2, 0)
        assert congruent(GaussianInt(5, 0), GaussianInt(1, 0), two)
        assert congruent(GaussianInt(1, 1), GaussianInt(0, 0), GaussianInt(1, 1))
        # (3 - i)/(1 + i) = 1 - 2i exactly
        assert congruent(GaussianInt(3, 0), GaussianInt(0, 1), GaussianInt(1, 1))

    def test_zero_modulus(self):
        with pytest.raises(ZeroDivisionError):
            congruent(GaussianInt(1, 0), GaussianInt(0, 0), GaussianInt(0, 0))


class TestTextualForm:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("3-2i", GaussianInt(3, -2)),
            ("3 - 2i", GaussianInt(3, -2)),
            ("-5", GaussianInt(-5, 0)),
            ("i", GaussianInt(0, 1)),
            ("-i", GaussianInt(0, -1)),
            ("2i", GaussianInt(0, 2)),
            ("+7+i", GaussianInt(7, 1)),
            (" 0 ", GaussianInt(0, 0)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_gaussian(text) == expected

    @pytest.mark.parametrize("bad", ["", "x", "3+2j", "1 2", "++i"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_gaussian(bad)

    @given(gaussians)
    def test_roundtrip(self, a):
        assert parse_gaussian(format_gaussian(a)) == a
