"""Multivariate polynomials over Q(sqrt(3)) in normal-direction variables t1..tp.

The unit-normal constraint t1^2 + ... + tp^2 = 1 is handled by canonical
reduction modulo the single relation polynomial r = t1^2 + ... + tp^2 - 1
(lex order, t1 highest, leading monomial t1^2).  A polynomial is constant on
the unit sphere exactly when its remainder is a constant: the complex quadric
cut out by r is irreducible and the real sphere is Zariski-dense in it, so no
nonconstant remainder can vanish on every unit normal.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .exactnum import QuadExt, ZERO


class MultiPoly:
    """Polynomial as a map from exponent vectors to nonzero QuadExt coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], QuadExt] | None = None) -> None:
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[tuple[int, ...], QuadExt] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent vector {exps} has wrong length for {nvars} variables")
                if coeff:
                    clean[exps] = coeff
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, value) -> MultiPoly:
        value = QuadExt._coerce(value)
        if value is None:
            raise TypeError("constant must be a QuadExt, int or Fraction")
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> MultiPoly:
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: QuadExt(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Iterable[int], coeff) -> MultiPoly:
        coeff = QuadExt._coerce(coeff)
        if coeff is None:
            raise TypeError("coefficient must be a QuadExt, int or Fraction")
        return cls(nvars, {tuple(exps): coeff})

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        scalar = QuadExt._coerce(other)
        if scalar is None:
            return None
        return MultiPoly.constant(self.nvars, scalar)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        scalar = QuadExt._coerce(other)
        if scalar is None:
            return NotImplemented
        return self == MultiPoly.constant(self.nvars, scalar)

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self})"

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = merged.get(exps)
            acc = coeff if acc is None else acc + coeff
            if acc:
                merged[exps] = acc
            elif exps in merged:
                del merged[exps]
        out = object.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = merged
        return out

    __radd__ = __add__

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            scalar = QuadExt._coerce(other)
            if scalar is None:
                return NotImplemented
            if not scalar:
                return MultiPoly(self.nvars)
            out = object.__new__(MultiPoly)
            out.nvars = self.nvars
            out.terms = {e: c * scalar for e, c in self.terms.items()}
            return out
        other = self._coerce(other)
        product: dict[tuple[int, ...], QuadExt] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                coeff = c1 * c2
                acc = product.get(exps)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    product[exps] = acc
                elif exps in product:
                    del product[exps]
        out = object.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = product
        return out

    __rmul__ = __mul__

    def __truediv__(self, other) -> MultiPoly:
        scalar = QuadExt._coerce(other)
        if scalar is None:
            return NotImplemented
        return self * scalar.inverse()

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def constant_value(self) -> QuadExt:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, ZERO)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            coeff = self.terms[exps]
            negative = coeff.sign() < 0
            mag = -coeff if negative else coeff
            factors = [
                f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}"
                for i, e in enumerate(exps)
                if e
            ]
            text = str(mag)
            if "+" in text or (text.count("-") and not text.startswith("-")):
                text = f"({text})"
            if not factors:
                term = text
            elif mag == 1:
                term = "*".join(factors)
            else:
                term = "*".join([text] + factors)
            if not parts:
                parts.append(f"-{term}" if negative else term)
            else:
                parts.append(f"- {term}" if negative else f"+ {term}")
        return " ".join(parts)


def _accumulate(table: dict, exps: tuple[int, ...], coeff: QuadExt) -> None:
    acc = table.get(exps)
    acc = coeff if acc is None else acc + coeff
    if acc:
        table[exps] = acc
    elif exps in table:
        del table[exps]


def reduce_mod_sphere(f: MultiPoly) -> MultiPoly:
    """Canonical remainder of f modulo t1^2 + ... + tp^2 - 1.

    Substitutes t1^2 -> 1 - t2^2 - ... - tp^2 until no monomial is divisible
    by t1^2; this is the unique lex normal form for the principal ideal, so f
    is constant on the unit sphere iff the result is a constant.
    """
    p = f.nvars
    if p < 1:
        raise ValueError("need at least one variable")
    work = dict(f.terms)
    done: dict[tuple[int, ...], QuadExt] = {}
    while work:
        exps, coeff = work.popitem()
        if exps[0] >= 2:
            base = (exps[0] - 2,) + exps[1:]
            _accumulate(work, base, coeff)
            for j in range(1, p):
                raised = base[:j] + (base[j] + 2,) + base[j + 1 :]
                _accumulate(work, raised, -coeff)
        else:
            _accumulate(done, exps, coeff)
    return MultiPoly(p, done)


def eval_float(f: MultiPoly, point: Iterable[float]) -> float:
    """Floating evaluation, Horner in each variable in turn."""
    point = tuple(point)
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.nvars}")
    return _horner(f.terms, point)


def _horner(terms: Mapping[tuple[int, ...], QuadExt], point: tuple[float, ...]) -> float:
    if not terms:
        return 0.0
    if not point:
        coeff = terms.get(())
        return coeff.to_float() if coeff is not None else 0.0
    groups: dict[int, dict[tuple[int, ...], QuadExt]] = {}
    for exps, coeff in terms.items():
        groups.setdefault(exps[0], {})[exps[1:]] = coeff
    x = point[0]
    rest = point[1:]
    acc = 0.0
    for e in range(max(groups), -1, -1):
        acc *= x
        sub = groups.get(e)
        if sub is not None:
            acc += _horner(sub, rest)
    return acc
