"""Spectral invariance over the normal sphere.

For a unit normal with coordinates (t1..tp) the shape operator is
A(t) = sum_a t_a A_a.  The symbolic sweep computes its characteristic
polynomial over the polynomial ring and reduces every lambda-coefficient
modulo the unit-sphere relation; the spectrum is direction-independent
exactly when every reduced coefficient is a constant.  The symbolic verdict
is authoritative; the numeric sweep is a seeded floating cross-check meant
to catch implementation bugs, never to decide.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .catalog import ShapeOperatorSet
from .linalg import Matrix, UniPoly
from .polyring import MultiPoly, eval_float, reduce_mod_sphere


@dataclass(frozen=True)
class SweepVerdict:
    constant: bool
    char_poly: UniPoly | None          # over QuadExt, set iff constant
    witness: MultiPoly | None          # first non-constant reduced coefficient
    witness_power: int | None          # lambda-power of the witness

    def __post_init__(self) -> None:
        if self.constant != (self.char_poly is not None) or self.constant != (self.witness is None):
            raise ValueError("verdict fields do not match the constant flag")


def normal_shape_operator(data: ShapeOperatorSet) -> Matrix:
    """The matrix A(t) = sum_a t_a A_a over MultiPoly in p variables."""
    p = data.p
    acc = data.operators[0].map(lambda c: MultiPoly.monomial(p, _unit(p, 0), c))
    for a in range(1, p):
        acc = acc + data.operators[a].map(lambda c, a=a: MultiPoly.monomial(p, _unit(p, a), c))
    return acc


def _unit(p: int, index: int) -> tuple[int, ...]:
    return tuple(1 if i == index else 0 for i in range(p))


def symbolic_sweep(data: ShapeOperatorSet) -> SweepVerdict:
    """Exact verdict: is char_poly(A(t)) the same for every unit normal t?"""
    poly = normal_shape_operator(data).char_poly()
    reduced = [reduce_mod_sphere(c) for c in poly.coeffs]
    for power, coeff in enumerate(reduced):
        if not coeff.is_constant():
            return SweepVerdict(False, None, coeff, power)
    constants = UniPoly(c.constant_value() for c in reduced)
    return SweepVerdict(True, constants, None, None)


def unit_normal_samples(p: int, samples: int, seed: int) -> list[tuple[float, ...]]:
    """Deterministic unit normals: alternating signs (p=1), jittered angles
    (p=2), normalized Gaussian deviates (p>=3)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    points: list[tuple[float, ...]] = []
    if p == 1:
        for i in range(samples):
            points.append((1.0 if i % 2 == 0 else -1.0,))
    elif p == 2:
        step = 2.0 * math.pi / samples
        for i in range(samples):
            theta = i * step + rng.uniform(0.0, step)
            points.append((math.cos(theta), math.sin(theta)))
    else:
        while len(points) < samples:
            coords = [rng.gauss(0.0, 1.0) for _ in range(p)]
            norm = math.sqrt(math.fsum(c * c for c in coords))
            if norm < 1e-9:
                continue
            points.append(tuple(c / norm for c in coords))
    return points


def numeric_sweep(data: ShapeOperatorSet, samples: int, seed: int = 0) -> float:
    """Max absolute drift of any char_poly coefficient across sampled normals."""
    poly = normal_shape_operator(data).char_poly()
    points = unit_normal_samples(data.p, samples, seed)
    baseline = [eval_float(c, points[0]) for c in poly.coeffs]
    deviation = 0.0
    for point in points[1:]:
        for base, coeff in zip(baseline, poly.coeffs):
            deviation = max(deviation, abs(eval_float(coeff, point) - base))
    return deviation
