"""Tschirnhausen hypersurfaces, local presentations, and elimination algebras.

A presentation is a separated-variable system: one monic equation per
distinguished variable x_i, with coefficients in the shared base variables.
The elimination algebra of each hypersurface lives on the base alone and its
order, minimized over the hypersurfaces, is the resolution invariant every
arc computation in this package is compared against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    NotCenteredError,
    ValidationError,
)
from .extorder import ExtOrder, ext_min
from .poly import MultiPoly
from .rees import ReesAlgebra, ReesGenerator, diff_closure

# An elimination algebra is a diff-closed Rees algebra over the base variables.
EliminationAlgebra = ReesAlgebra


@dataclass(frozen=True)
class TschirnhausenHypersurface:
    """x^b + B_{b-2} x^{b-2} + ... + B_0 with B_i over the base variables."""

    var: str
    b: int
    base_vars: Tuple[str, ...]
    coeffs: Tuple[MultiPoly, ...]  # B_0 .. B_{b-2}

    def __post_init__(self):
        if self.b < 2:
            raise ValidationError(f"multiplicity must be >= 2, got {self.b}")
        if len(self.coeffs) != self.b - 1:
            raise ValidationError(
                f"expected {self.b - 1} coefficients B_0..B_{self.b - 2}, got {len(self.coeffs)}"
            )
        if self.var in self.base_vars:
            raise ValidationError(f"distinguished variable {self.var!r} also a base variable")
        for i, B in enumerate(self.coeffs):
            if B.vars != self.base_vars:
                raise DimensionMismatchError(
                    f"B_{i} over {B.vars}, expected base variables {self.base_vars}"
                )
            o = B.order_at_origin()
            if not o.is_infinite and o.value < self.b - i:
                raise NotCenteredError(
                    f"not centered at origin: ord(B_{i}) = {o.value} < {self.b - i}"
                )

    @property
    def ambient_vars(self) -> Tuple[str, ...]:
        return (self.var,) + self.base_vars

    def polynomial(self) -> MultiPoly:
        """The defining equation over (var, base variables)."""
        ambient = self.ambient_vars
        x = MultiPoly.variable(ambient, self.var)
        f = x**self.b
        for i, B in enumerate(self.coeffs):
            if not B.is_zero():
                f = f + B.extend_vars(ambient) * x**i
        return f

    def is_cylinder(self) -> bool:
        """True when every coefficient vanishes (the equation is x^b)."""
        return all(B.is_zero() for B in self.coeffs)


def tschirnhausen_normalize(f: MultiPoly, var: str) -> TschirnhausenHypersurface:
    """Bring a monic equation into Tschirnhausen form by x -> x - D_{b-1}/b.

    Accepts a constant leading coefficient (the equation is rescaled), kills
    the degree b-1 term, and checks the centering bounds; base variables are
    everything else in f's variable list.
    """
    b = f.degree_in(var)
    if b < 2:
        raise ValidationError(f"degree in {var!r} is {b}, need >= 2")
    coeffs = f.coefficients_in(var)
    lead = coeffs[b]
    if lead.total_degree() != 0:
        raise ValidationError(f"equation is not monic in {var!r}: leading coefficient {lead}")
    lc = lead.leading_coefficient()
    if lc != 1:
        f = f.scale(Fraction(1) / lc)
        coeffs = f.coefficients_in(var)
    d_top = coeffs.get(b - 1)
    if d_top is not None and not d_top.is_zero():
        x = MultiPoly.variable(f.vars, var)
        f = f.substitute(var, x - d_top.scale(Fraction(1, b)))
        coeffs = f.coefficients_in(var)
        top = coeffs.get(b - 1)
        assert top is None or top.is_zero()
    base_vars = tuple(v for v in f.vars if v != var)
    zero = MultiPoly.zero(base_vars)
    bs = []
    for i in range(b - 1):
        Bi = coeffs.get(i)
        bs.append(zero if Bi is None else Bi.restrict_vars(base_vars))
    return TschirnhausenHypersurface(var, b, base_vars, tuple(bs))


def elimination_algebra(h: TschirnhausenHypersurface) -> EliminationAlgebra:
    """Differential closure of the coefficient generators B_i W^(b-i)."""
    gens = [
        ReesGenerator(B.monic_normalized(), h.b - i)
        for i, B in enumerate(h.coeffs)
        if not B.is_zero()
    ]
    return diff_closure(ReesAlgebra(h.base_vars, gens))


def elimination_order(h: TschirnhausenHypersurface) -> ExtOrder:
    """Closed form min_i ord(B_i)/(b-i); infinite when every B_i vanishes.

    Always >= 1 by centering; derivatives in the closure never achieve a
    smaller quotient, so the closed form equals the algebra order.
    """
    quotients = []
    for i, B in enumerate(h.coeffs):
        o = B.order_at_origin()
        quotients.append(o.divided_by(h.b - i))
    return ext_min(quotients)


@dataclass(frozen=True)
class LocalPresentation:
    d: int
    hypersurfaces: Tuple[TschirnhausenHypersurface, ...]

    def __post_init__(self):
        if not self.hypersurfaces:
            raise ValidationError("a presentation needs at least one hypersurface")
        base = self.hypersurfaces[0].base_vars
        if len(base) != self.d:
            raise ValidationError(
                f"base dimension {self.d} but base variables {base}"
            )
        names = [h.var for h in self.hypersurfaces]
        if len(set(names)) != len(names):
            raise ValidationError(f"distinguished variables not pairwise distinct: {names}")
        for h in self.hypersurfaces:
            if h.base_vars != base:
                raise DimensionMismatchError(
                    f"hypersurfaces disagree on base variables: {h.base_vars} vs {base}"
                )

    @property
    def base_vars(self) -> Tuple[str, ...]:
        return self.hypersurfaces[0].base_vars

    @property
    def ambient_vars(self) -> Tuple[str, ...]:
        return tuple(h.var for h in self.hypersurfaces) + self.base_vars

    def hypersurface_for(self, var: str) -> TschirnhausenHypersurface:
        for h in self.hypersurfaces:
            if h.var == var:
                return h
        raise ValidationError(f"no hypersurface with distinguished variable {var!r}")

    def elimination_algebras(self) -> Dict[str, EliminationAlgebra]:
        return {h.var: elimination_algebra(h) for h in self.hypersurfaces}


def presentation_elimination_order(p: LocalPresentation) -> ExtOrder:
    """Hironaka's order in base dimension: min over hypersurfaces."""
    return ext_min(elimination_order(h) for h in p.hypersurfaces)


def ambient_algebra(p: LocalPresentation) -> ReesAlgebra:
    """Diff-closed algebra representing the top multiplicity stratum.

    Generated by x_i W for every distinguished variable together with all
    elimination generators, everything extended to the joint ambient ring.
    """
    ambient = p.ambient_vars
    gens = [
        ReesGenerator(MultiPoly.variable(ambient, h.var), 1)
        for h in p.hypersurfaces
    ]
    for h in p.hypersurfaces:
        for g in elimination_algebra(h).generators:
            gens.append(ReesGenerator(g.f.extend_vars(ambient), g.weight))
    return ReesAlgebra(ambient, gens, diff_closed=True)


def hypersurface_multiplicity_at(h: TschirnhausenHypersurface, point: Sequence) -> int:
    """Multiplicity of the hypersurface at a rational point on it."""
    f = h.polynomial()
    if f.eval_at(point) != 0:
        raise ValidationError(f"point not on hypersurface: f{tuple(point)} != 0")
    return f.order_at(point).value


def max_mult_contains(p: LocalPresentation, point: Sequence) -> bool:
    """True when every hypersurface has order >= b_i at the point."""
    ambient = p.ambient_vars
    pt = [Fraction(c) for c in point]
    if len(pt) != len(ambient):
        raise DimensionMismatchError(
            f"point has {len(pt)} coordinates, presentation ambient is {ambient}"
        )
    coord = dict(zip(ambient, pt))
    for h in p.hypersurfaces:
        sub = [coord[v] for v in h.ambient_vars]
        o = h.polynomial().order_at(sub)
        if o.value < h.b:
            return False
    return True
