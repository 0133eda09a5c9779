import pytest

from ellrig.errors import InversionError, PreconditionError, RingMismatchError
from ellrig.polynomial import ChernPoly, Generators


@pytest.fixture
def xy():
    g = Generators(("x", "y"))
    return g, ChernPoly.generator(g, 2, "x"), ChernPoly.generator(g, 2, "y")


class TestTruncation:
    def test_nilpotent_square_at_cap_one(self):
        g = Generators(("x",))
        x = ChernPoly.generator(g, 1, "x")
        assert not (x * x)

    def test_difference_of_squares(self, xy):
        g, x, y = xy
        p = (1 + x) * (1 - x)
        assert p.coefficient({}) == 1
        assert p.coefficient({"x": 2}) == -1
        assert p.coefficient({"x": 1}) == 0

    def test_nilpotency_above_cap(self, rng):
        g = Generators(("x", "y", "z"))
        for cap in (1, 2, 3):
            coeffs = rng.standard_normal(3)
            p = sum(
                ChernPoly.generator(g, cap, n, complex(c))
                for n, c in zip(g.names, coeffs)
            )
            assert not p ** (cap + 1)

    def test_weighted_degrees(self):
        g = Generators(("y", "T3"), weights=(1, 3), odd=(False, True))
        t3 = ChernPoly.generator(g, 3, "T3")
        y = ChernPoly.generator(g, 3, "y")
        assert t3.coefficient({"T3": 1}) == 1
        assert not y * t3  # weight 4 exceeds the cap


class TestOddGenerators:
    def test_pairwise_product_zero(self):
        g = Generators(("T3", "T5"), weights=(3, 5), odd=(True, True))
        t3 = ChernPoly.generator(g, 8, "T3")
        t5 = ChernPoly.generator(g, 8, "T5")
        assert not t3 * t3
        assert not t3 * t5

    def test_odd_survives_even_products(self):
        g = Generators(("y", "T3"), weights=(1, 3), odd=(False, True))
        y = ChernPoly.generator(g, 4, "y")
        t3 = ChernPoly.generator(g, 4, "T3")
        p = y * t3
        assert p.coefficient({"y": 1, "T3": 1}) == 1


class TestExp:
    def test_truncated_exponential(self):
        g = Generators(("x",))
        x = ChernPoly.generator(g, 2, "x")
        e = x.exp()
        assert e.coefficient({}) == 1
        assert e.coefficient({"x": 1}) == 1
        assert e.coefficient({"x": 2}) == pytest.approx(0.5)

    def test_exp_of_zero(self):
        g = Generators(("x",))
        assert ChernPoly.zero(g, 3).exp() == 1

    def test_two_variables_cap_one(self, xy):
        g, _, _ = xy
        x = ChernPoly.generator(g, 1, "x")
        y = ChernPoly.generator(g, 1, "y")
        e = (x + y).exp()
        assert e == 1 + x + y

    def test_nonzero_constant_rejected(self, xy):
        g, x, _ = xy
        with pytest.raises(PreconditionError):
            (1 + x).exp()

    def test_exp_inverse_pairing_is_exact(self, rng):
        g = Generators(("a", "b"))
        for _ in range(6):
            p = sum(
                ChernPoly.generator(g, 3, n, complex(c))
                for n, c in zip(g.names, rng.standard_normal(2))
            )
            prod = p.exp() * (-p).exp()
            assert (prod - 1).max_abs_coeff() < 1e-15


class TestDegreeParts:
    def test_examples(self, xy):
        g, x, y = xy
        p = 1 + 2 * x + 5 * x * y
        assert p.degree_part(2) == 5 * x * y
        assert p.degree_part(0) == ChernPoly.one(g, 2)
        assert not ChernPoly.generator(g, 2, "x").degree_part(2)


class TestGuards:
    def test_generator_mismatch(self):
        a = ChernPoly.generator(Generators(("x",)), 2, "x")
        b = ChernPoly.generator(Generators(("y",)), 2, "y")
        with pytest.raises(RingMismatchError):
            a * b

    def test_cap_mismatch(self):
        g = Generators(("x",))
        with pytest.raises(RingMismatchError):
            ChernPoly.generator(g, 2, "x") * ChernPoly.generator(g, 3, "x")

    def test_non_finite_coefficients_rejected(self):
        g = Generators(("x",))
        with pytest.raises(PreconditionError):
            ChernPoly(g, 2, {(1,): float("nan")})

    def test_inverse_needs_constant(self):
        g = Generators(("x",))
        with pytest.raises(InversionError):
            ChernPoly.generator(g, 2, "x").inverse()

    def test_inverse_roundtrip(self):
        g = Generators(("x", "y"))
        p = 2 - ChernPoly.generator(g, 3, "x") + 0.5 * ChernPoly.generator(g, 3, "y")
        prod = p * p.inverse()
        assert (prod - 1).max_abs_coeff() < 1e-15
