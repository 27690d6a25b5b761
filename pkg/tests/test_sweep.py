import random
from fractions import Fraction

import pytest

from willmore.catalog import BUILTIN_NAMES, ShapeOperatorSet, builtin
from willmore.exactnum import QuadExt, parse_scalar
from willmore.linalg import Matrix, UniPoly
from willmore.sweep import (
    SweepVerdict,
    normal_shape_operator,
    numeric_sweep,
    symbolic_sweep,
    unit_normal_samples,
)

S = parse_scalar

QUINTIC = UniPoly(
    [QuadExt(0), QuadExt(1), QuadExt(0), QuadExt(Fraction(-10, 3)), QuadExt(0), QuadExt(1)]
)


def single_operator(entries, name="single"):
    m = Matrix.diagonal([S(e) for e in entries])
    return ShapeOperatorSet(name, m.nrows, 1, (m,), ("B1",))


def convolve(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class TestSymbolic:
    def test_m1_M1_constant_quintic(self):
        verdict = symbolic_sweep(builtin("g6_m1_M1"))
        assert verdict.constant
        assert verdict.char_poly == QUINTIC
        assert verdict.witness is None

    def test_m2_M2_constant_squared_quintic(self):
        # expansion oracle: convolve the quintic's rational coefficients
        quintic_rats = [Fraction(0), Fraction(1), Fraction(0), Fraction(-10, 3), Fraction(0), Fraction(1)]
        squared = convolve(quintic_rats, quintic_rats)
        assert squared == [0, 0, 1, 0, Fraction(-20, 3), 0, Fraction(118, 9), 0, Fraction(-20, 3), 0, 1]
        verdict = symbolic_sweep(builtin("g6_m2_M2"))
        assert verdict.constant
        assert verdict.char_poly == UniPoly([QuadExt(c) for c in squared])
        assert verdict.char_poly == QUINTIC * QUINTIC

    def test_single_operator_with_symmetric_spectrum(self):
        verdict = symbolic_sweep(single_operator(["1", "-1"]))
        assert verdict.constant
        assert verdict.char_poly == UniPoly([QuadExt(-1), QuadExt(0), QuadExt(1)])

    def test_single_operator_nonconstant(self):
        verdict = symbolic_sweep(single_operator(["1", "0"]))
        assert not verdict.constant
        assert verdict.char_poly is None
        assert verdict.witness is not None
        assert verdict.witness_power == 1  # the lambda coefficient -t1

    def test_single_operator_criterion_matches_direct_computation(self):
        # p=1 sphere is {1, -1}: constant iff char_poly(A) == char_poly(-A)
        rng = random.Random(13)
        for _ in range(40):
            n = rng.randint(1, 4)
            entries = [str(rng.randint(-2, 2)) for _ in range(n)]
            if sum(int(e) for e in entries) != 0:
                continue
            data = single_operator(entries)
            a = data.operators[0]
            direct = a.char_poly() == (-a).char_poly()
            assert symbolic_sweep(data).constant == direct

    def test_even_dimension_odd_coefficients_phrasing(self):
        # for even n the direct criterion reads: odd-power coefficients vanish
        rng = random.Random(19)
        for _ in range(40):
            n = rng.choice([2, 4])
            entries = [str(rng.randint(-2, 2)) for _ in range(n)]
            data = single_operator(entries)
            poly = data.operators[0].char_poly()
            odd_vanish = all(not poly.coeffs[k] for k in range(1, n, 2))
            assert symbolic_sweep(data).constant == odd_vanish

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_constant_polynomial_factors_with_multiplicity(self, name):
        data = builtin(name)
        m = data.m_tag
        verdict = symbolic_sweep(data)
        assert verdict.constant
        poly = verdict.char_poly
        assert poly.degree() == data.n
        for factor in (
            UniPoly([QuadExt(0), QuadExt(1)]),                      # lambda
            UniPoly([QuadExt(-3), QuadExt(0), QuadExt(1)]),          # lambda^2 - 3
            UniPoly([QuadExt(Fraction(-1, 3)), QuadExt(0), QuadExt(1)]),  # lambda^2 - 1/3
        ):
            for _ in range(m):
                poly, remainder = divmod(poly, factor)
                assert not remainder
        assert poly == UniPoly([QuadExt(1)])

    def test_verdict_fields_must_match_flag(self):
        with pytest.raises(ValueError):
            SweepVerdict(True, None, None, None)


class TestNormalOperator:
    def test_entries_are_linear_forms(self):
        a = normal_shape_operator(builtin("g6_m1_M1"))
        assert a[0, 0].terms == {(1, 0): S("sqrt3")}
        assert a[0, 4].terms == {(0, 1): S("sqrt3")}


class TestNumeric:
    def test_m1_M2_thousand_samples(self):
        deviation = numeric_sweep(builtin("g6_m1_M2"), 1000, 0)
        assert deviation < 1e-9

    def test_zero_operator(self):
        data = ShapeOperatorSet("flat", 3, 1, (Matrix.filled(3, 3, QuadExt(0)),), ("B1",))
        assert numeric_sweep(data, 10, 0) == 0.0

    def test_parity_deviation_of_non_minimal_single_operator(self):
        deviation = numeric_sweep(single_operator(["1", "0"]), 2, 0)
        assert deviation == 2.0

    def test_samples_must_be_positive(self):
        with pytest.raises(ValueError):
            numeric_sweep(builtin("g6_m1_M1"), 0, 0)

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_symbolically_constant_implies_tiny_deviation(self, name):
        assert symbolic_sweep(builtin(name)).constant
        assert numeric_sweep(builtin(name), 1000, 0) < 1e-9

    def test_samples_are_deterministic_and_unit_length(self):
        for p in (1, 2, 3):
            first = unit_normal_samples(p, 50, 7)
            second = unit_normal_samples(p, 50, 7)
            assert first == second
            for point in first:
                assert abs(sum(c * c for c in point) - 1.0) < 1e-12
        assert unit_normal_samples(1, 4, 0) == [(1.0,), (-1.0,), (1.0,), (-1.0,)]
