"""Arcs on a presentation and the contact invariants r, r-bar, rho, rho-bar.

An arc is a tuple of power series through the origin, one per ambient
variable.  Validation substitutes the arc into every defining equation and
records an exact-zero or zero-to-precision certificate.  The order of contact
r is the order of the one-dimensional algebra obtained by pushing the full
diff-closed ambient algebra through the arc; rho is its integral part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Dict, Mapping, Optional, Tuple

from .errors import (
    DimensionMismatchError,
    InsufficientPrecisionError,
    MaxMultArcError,
    NotOnVarietyError,
    ValidationError,
)
from .extorder import ExtOrder, ext_min
from .presentation import (
    LocalPresentation,
    ambient_algebra,
    elimination_algebra,
)
from .rees import (
    OneDimAlgebra,
    OneDimGenerator,
    ReesAlgebra,
    ReesGenerator,
    onedim_order_witness,
)
from .series import PowerSeries, poly_compose_series


class Arc:
    """Power-series coordinates through the origin, one per variable."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[str, PowerSeries]):
        if not coords:
            raise ValidationError("an arc needs at least one coordinate")
        for name, s in coords.items():
            o = s.order()
            if o.is_exact and o.value == 0:
                raise ValidationError(
                    f"arc not through the origin: coordinate {name!r} has nonzero constant term"
                )
            if o.is_censored and o.value == 0:
                raise InsufficientPrecisionError(
                    f"coordinate {name!r} has precision 0; nothing is known about it"
                )
        if all(s.is_exactly_zero() for s in coords.values()):
            raise ValidationError("the zero tuple is not an arc")
        self.coords: Dict[str, PowerSeries] = dict(coords)

    @property
    def precision(self) -> int | None:
        precs = [s.precision for s in self.coords.values() if s.precision is not None]
        return min(precs) if precs else None

    def order(self) -> ExtOrder:
        return ext_min(s.order() for s in self.coords.values())

    def restrict(self, variables) -> "Arc":
        missing = [v for v in variables if v not in self.coords]
        if missing:
            raise DimensionMismatchError(f"arc missing coordinates {missing}")
        return Arc({v: self.coords[v] for v in variables})

    def reparametrize(self, e: int) -> "Arc":
        return Arc({v: s.reparametrize(e) for v, s in self.coords.items()})

    def scale_parameter(self, c) -> "Arc":
        return Arc({v: s.scale_parameter(c) for v, s in self.coords.items()})

    def substitute_parameter(self, inner: PowerSeries) -> "Arc":
        """Compose every coordinate with a parameter series of order 1.

        Sends valid arcs to valid arcs: substitution commutes with evaluating
        the defining equations.
        """
        return Arc({v: s.compose(inner) for v, s in self.coords.items()})

    def __str__(self) -> str:
        inner = ", ".join(f"{v}={s}" for v, s in sorted(self.coords.items()))
        return f"({inner})"


def arc_order(a: Arc) -> int:
    """Smallest order among the coordinates; refuses censored answers."""
    return a.order().expect_exact("arc order")


@dataclass(frozen=True)
class VanishingCertificate:
    """How an equation was seen to vanish on the arc."""

    exact: bool
    precision: Optional[int] = None

    def __str__(self) -> str:
        return "exact zero" if self.exact else f"zero below t^{self.precision}"


@dataclass(frozen=True)
class ValidatedArc:
    arc: Arc
    presentation: LocalPresentation
    certificates: Tuple[Tuple[str, VanishingCertificate], ...]
    in_max_mult: bool

    def certificate_for(self, var: str) -> VanishingCertificate:
        for name, cert in self.certificates:
            if name == var:
                return cert
        raise KeyError(var)


def validate_arc(a: Arc, p: LocalPresentation) -> ValidatedArc:
    """Check the arc lies on every hypersurface and classify its contact.

    Rejects any nonzero coefficient in an image phi(f_i); flags the arc as
    inside the top multiplicity stratum when every elimination generator is
    killed exactly (censored-only images raise instead of guessing).
    """
    arc = a.restrict(p.ambient_vars)
    certs = []
    for h in p.hypersurfaces:
        image = poly_compose_series(h.polynomial(), arc.coords)
        if not image.is_zero_to_precision():
            raise NotOnVarietyError(
                f"arc not on variety: phi({h.var}-equation) = {image}"
            )
        if image.is_exact:
            certs.append((h.var, VanishingCertificate(exact=True)))
        else:
            certs.append((h.var, VanishingCertificate(exact=False, precision=image.precision)))

    base = {v: arc.coords[v] for v in p.base_vars}
    all_exact_zero = True
    any_nonzero = False
    for h in p.hypersurfaces:
        for g in elimination_algebra(h).generators:
            img = poly_compose_series(g.f, base)
            if not img.is_zero_to_precision():
                any_nonzero = True
                all_exact_zero = False
            elif not img.is_exactly_zero():
                all_exact_zero = False
    if all_exact_zero:
        flag = True
    elif any_nonzero:
        flag = False
    else:
        raise InsufficientPrecisionError(
            "cannot decide containment in the top multiplicity stratum: "
            "every elimination image is zero to precision but not exactly"
        )
    return ValidatedArc(arc, p, tuple(certs), flag)


def project_arc(va: ValidatedArc, target: str) -> Arc:
    """Coordinate restriction: 'base' or a distinguished variable name."""
    p = va.presentation
    if target == "base":
        return va.arc.restrict(p.base_vars)
    h = p.hypersurface_for(target)
    return va.arc.restrict(h.ambient_vars)


def _image_pairs(a: Arc, algebra: ReesAlgebra) -> list[Tuple[OneDimGenerator, ReesGenerator]]:
    pairs = []
    for g in algebra.generators:
        o = poly_compose_series(g.f, a.coords).order()
        if o.is_infinite:
            continue
        pairs.append((OneDimGenerator(o, g.weight), g))
    return pairs


def image_of_algebra(a: Arc, algebra: ReesAlgebra) -> OneDimAlgebra:
    """Push each generator through the arc: orders of the image series.

    Exact-zero images contribute no finite generator and are dropped;
    censored orders are preserved as censored exponents.
    """
    return OneDimAlgebra([img for img, _ in _image_pairs(a, algebra)])


@dataclass(frozen=True)
class ContactResult:
    r: Fraction
    r_bar: Fraction
    rho: int
    rho_bar: Fraction
    arc_order: int
    witness: str


def contact_order(va: ValidatedArc) -> ContactResult:
    """The contact invariants of the arc with the top multiplicity stratum."""
    if va.in_max_mult:
        raise MaxMultArcError(
            "arc inside Max mult: the Nash multiplicity sequence never drops"
        )
    pairs = _image_pairs(va.arc, ambient_algebra(va.presentation))
    r, idx = onedim_order_witness(OneDimAlgebra([img for img, _ in pairs]))
    order = arc_order(va.arc)
    rho = floor(r)
    return ContactResult(
        r=r,
        r_bar=r / order,
        rho=rho,
        rho_bar=Fraction(rho, order),
        arc_order=order,
        witness=str(pairs[idx][1]),
    )


def contact_order_without_x(va: ValidatedArc) -> Fraction:
    """r computed from the elimination generators alone.

    The x-coordinate images can never undercut the elimination part for an
    arc on the variety, so this must agree with contact_order(...).r.
    """
    if va.in_max_mult:
        raise MaxMultArcError("arc inside Max mult")
    p = va.presentation
    base = va.arc.restrict(p.base_vars)
    gens = []
    for h in p.hypersurfaces:
        onedim = image_of_algebra(base, elimination_algebra(h))
        gens.extend(onedim.generators)
    r, _ = onedim_order_witness(OneDimAlgebra(gens))
    return r


def reparametrize_arc(a: Arc, e: int) -> Arc:
    """Substitute t -> t^e in every coordinate; r scales by e, r-bar is invariant."""
    return a.reparametrize(e)
