"""Closed-form cross-section spectra and cone-admissibility verdicts.

The model operator near a singular point separates into a radial part and a
cross-section operator B on the link.  Admissibility asks that spec B misses
the open interval (-1/2, 1/2); boundary values +/- 1/2 are admissible.  For
circle links the spectra are explicit in the cone angle and the holonomy
angle of each flat line bundle summand; for surface links they are expressed
through the positive spectrum of the Laplacian on functions, for which the
guaranteed lower bound is 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .liecore import validate_curvature

TWO_PI = 2.0 * math.pi

# Values within MERGE_TOL of each other are the same eigenvalue; the same
# slack is applied at the gap boundaries +/- 1/2 (open interval).
MERGE_TOL = 1e-12

GAP_LO, GAP_HI = -0.5, 0.5

CONTEXT_SPHERICAL = "SphericalE"
CONTEXT_HYPERBOLIC = "HyperbolicE"
CONTEXT_TRANSLATIONAL = "EuclideanEtrans"
CONTEXTS = (CONTEXT_SPHERICAL, CONTEXT_HYPERBOLIC, CONTEXT_TRANSLATIONAL)

# Guaranteed lower bound for the smallest positive function-Laplacian
# eigenvalue of an admissible link; possibly not optimal.
LAMBDA1_GUARANTEED = 1.0


@dataclass(frozen=True)
class ConePoint:
    """Cone point of a link: circle length alpha plus the flat bundle data.

    holonomy_angles lists one angle in [0, 2pi) per complex line summand;
    trivial_rank counts the trivial real summands.
    """

    alpha: float
    holonomy_angles: tuple[float, ...]
    trivial_rank: int

    def __post_init__(self):
        if not (0.0 < self.alpha <= TWO_PI):
            raise DomainError(f"cone angle must lie in (0, 2*pi], got {self.alpha}")
        for a in self.holonomy_angles:
            if not (0.0 <= a < TWO_PI):
                raise DomainError(f"holonomy angle must lie in [0, 2*pi), got {a}")
        if self.trivial_rank < 0:
            raise DomainError("trivial_rank must be nonnegative")


TRIANGLE = "triangle"
BIGON = "bigon"
SMOOTH = "smooth"


@dataclass(frozen=True)
class LinkSurface:
    """Spherical link of a singular point: a triangle double, a bigon double,
    or a smooth 2-sphere (no cone points).

    Angles in (0, pi] are the geometric range for trivalent singular loci;
    larger angles up to 2pi are accepted so that admissibility failures can
    be witnessed instead of rejected.
    """

    kind: str
    angles: tuple[float, ...]

    def __post_init__(self):
        if self.kind == TRIANGLE:
            if len(self.angles) != 3:
                raise DomainError("triangle link needs three angles")
        elif self.kind == BIGON:
            if len(self.angles) != 2 or abs(self.angles[0] - self.angles[1]) > MERGE_TOL:
                raise DomainError("bigon link needs two equal angles")
        elif self.kind == SMOOTH:
            if self.angles:
                raise DomainError("smooth link has no cone angles")
        else:
            raise DomainError(f"unknown link kind {self.kind!r}")
        for a in self.angles:
            if not (0.0 < a <= TWO_PI):
                raise DomainError(f"link angle must lie in (0, 2*pi], got {a}")

    @classmethod
    def triangle(cls, a: float, b: float, c: float) -> "LinkSurface":
        return cls(TRIANGLE, (a, b, c))

    @classmethod
    def bigon(cls, a: float) -> "LinkSurface":
        return cls(BIGON, (a, a))

    @property
    def within_model_bounds(self) -> bool:
        return all(a <= math.pi + MERGE_TOL for a in self.angles)


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues in [-W, W] with multiplicity plus the gap verdict.

    gap_ok is decided from the full spectrum, not just the reported window,
    so enlarging the window never changes it.  Witnesses record offending
    (n, holonomy angle, cone angle, value) tuples for circle spectra.
    """

    values: tuple[float, ...]
    gap_ok: bool
    min_abs: float
    window: float
    source: str
    witnesses: tuple[dict, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "values": list(self.values),
            "gap_ok": self.gap_ok,
            "min_abs": self.min_abs,
            "window": self.window,
            "source": self.source,
            "witnesses": list(self.witnesses),
        }


def _in_gap(x: float) -> bool:
    return GAP_LO + MERGE_TOL < x < GAP_HI - MERGE_TOL


def _finish(values: list[float], window: float, source: str, gap_ok: bool, witnesses) -> SpectrumReport:
    vals = tuple(sorted(v for v in values if abs(v) <= window + MERGE_TOL))
    min_abs = min((abs(v) for v in vals), default=math.inf)
    return SpectrumReport(vals, gap_ok, min_abs, window, source, tuple(witnesses))


def circle_dirac_spectrum(alpha: float, a: float, window: float) -> SpectrumReport:
    """Spectrum {+/- |2 pi n - a| / alpha} of the twisted circle operator."""
    if alpha <= 0.0:
        raise DomainError(f"circle length must be positive, got {alpha}")
    if window <= 0.0:
        raise DomainError(f"window must be positive, got {window}")
    values: list[float] = []
    witnesses: list[dict] = []
    gap_ok = True
    n_max = int(math.ceil((abs(a) + (window + 1.0) * alpha) / TWO_PI)) + 1
    for n in range(-n_max, n_max + 1):
        v = abs(TWO_PI * n - a) / alpha
        if v <= MERGE_TOL:
            values.append(0.0)
        else:
            values.extend((v, -v))
        if _in_gap(v):
            gap_ok = False
            witnesses.append({"n": n, "holonomy_angle": a, "alpha": alpha, "value": v})
    return _finish(values, window, f"circle-dirac(alpha={alpha!r}, a={a!r})", gap_ok, witnesses)


def circle_B_spectrum(cp: ConePoint, window: float) -> SpectrumReport:
    """Spectrum of the cross-section operator at a circle link.

    Each complex line summand with holonomy angle a contributes
    -1/2 +/- |2 pi n - a| / alpha; each trivial summand contributes
    -1/2 + 2 pi n / alpha.
    """
    if window <= 0.0:
        raise DomainError(f"window must be positive, got {window}")
    alpha = cp.alpha
    values: list[float] = []
    witnesses: list[dict] = []
    gap_ok = True
    n_max = int(math.ceil((TWO_PI + (window + 2.0) * alpha) / TWO_PI)) + 1
    for a in cp.holonomy_angles:
        for n in range(-n_max, n_max + 1):
            v = abs(TWO_PI * n - a) / alpha
            if v <= MERGE_TOL:
                values.append(-0.5)
            else:
                values.extend((-0.5 + v, -0.5 - v))
            if _in_gap(-0.5 + v):
                gap_ok = False
                witnesses.append({"n": n, "holonomy_angle": a, "alpha": alpha, "value": -0.5 + v})
    for n in range(-n_max, n_max + 1):
        x = -0.5 + TWO_PI * n / alpha
        values.extend([x] * cp.trivial_rank)
        if cp.trivial_rank and _in_gap(x):
            gap_ok = False
            witnesses.append({"n": n, "holonomy_angle": 0.0, "alpha": alpha, "value": x})
    return _finish(
        values,
        window,
        f"circle-B(alpha={alpha!r}, angles={list(cp.holonomy_angles)!r}, trivial={cp.trivial_rank})",
        gap_ok,
        witnesses,
    )


def link_B_spectrum(lambda_list, h0_dim: int, window: float) -> SpectrumReport:
    """Spectrum of the cross-section operator at a surface link.

    Takes the positive function-Laplacian eigenvalues (value, multiplicity)
    of the link; each contributes the four values +/- 1/2 +/- sqrt(1/4 +
    lambda), and the flat sections contribute +/- 1 with multiplicity h0_dim.
    """
    if h0_dim < 0:
        raise DomainError("h0_dim must be nonnegative")
    if window <= 0.0:
        raise DomainError(f"window must be positive, got {window}")
    values: list[float] = []
    witnesses: list[dict] = []
    gap_ok = True
    values.extend([1.0] * h0_dim)
    values.extend([-1.0] * h0_dim)
    pairs = [(lam, 1) if np.isscalar(lam) else tuple(lam) for lam in lambda_list]
    for lam, mult in pairs:
        lam = float(lam)
        mult = int(mult)
        if lam < -MERGE_TOL:
            raise DomainError(f"Laplace eigenvalues must be nonnegative, got {lam}")
        if mult < 1:
            raise DomainError("multiplicity must be positive")
        if lam <= MERGE_TOL:
            # zero modes belong to the flat sections counted by h0_dim
            continue
        s = math.sqrt(0.25 + lam)
        for x in (-0.5 - s, -0.5 + s, 0.5 - s, 0.5 + s):
            values.extend([x] * mult)
            if _in_gap(x):
                gap_ok = False
                witnesses.append({"lambda": lam, "value": x})
    return _finish(
        values, window, f"link-B(h0_dim={h0_dim})", gap_ok, witnesses
    )


def link_bundle_decomposition(link: LinkSurface, context: str) -> list[ConePoint]:
    """Flat-bundle data of the infinitesimal-isometry bundle at each cone point.

    The restriction to a circle of length alpha splits as C(alpha) + R per
    copy of the surface isometry bundle; the full bundle carries two copies,
    the translational subbundle in the Euclidean case one.
    """
    if context not in CONTEXTS:
        raise DomainError(f"unknown context {context!r}")
    copies = 1 if context == CONTEXT_TRANSLATIONAL else 2
    points = []
    for alpha in link.angles:
        a = alpha % TWO_PI
        points.append(
            ConePoint(
                alpha=alpha,
                holonomy_angles=(a,) * copies,
                trivial_rank=copies,
            )
        )
    return points


@dataclass(frozen=True)
class SingularEdge:
    id: int
    angle: float

    def __post_init__(self):
        if self.angle <= 0.0:
            raise DomainError(f"edge angle must be positive, got {self.angle}")


@dataclass(frozen=True)
class SingularVertex:
    incident: tuple[int, int, int]

    def __post_init__(self):
        if len(self.incident) != 3:
            raise DomainError("vertices of the singular graph are trivalent")


def _link_h0_dim(link: LinkSurface, copies: int) -> int:
    """Flat sections of the isometry bundle over the link.

    A bigon link has a single rotation holonomy whose axis is invariant; a
    triangle link has rotations about distinct axes and no invariants.
    """
    if link.kind == SMOOTH:
        return 3 * copies
    if link.kind == BIGON:
        if link.angles[0] % TWO_PI <= MERGE_TOL:
            return 3 * copies
        return copies
    return 0


def _context_for_curvature(kappa: int) -> str:
    if kappa == 1:
        return CONTEXT_SPHERICAL
    if kappa == -1:
        return CONTEXT_HYPERBOLIC
    return CONTEXT_TRANSLATIONAL


@dataclass(frozen=True)
class PointVerdict:
    kind: str
    label: str
    angles: tuple[float, ...]
    circle_gap_ok: bool
    link_gap_ok: bool
    admissible: bool
    witnesses: tuple[dict, ...]
    min_abs_circle: float
    min_abs_link: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "angles": list(self.angles),
            "circle_gap_ok": self.circle_gap_ok,
            "link_gap_ok": self.link_gap_ok,
            "admissible": self.admissible,
            "witnesses": list(self.witnesses),
            "min_abs_circle": self.min_abs_circle,
            "min_abs_link": self.min_abs_link,
        }


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    context: str
    points: tuple[PointVerdict, ...]
    notices: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "context": self.context,
            "points": [p.to_dict() for p in self.points],
            "notices": list(self.notices),
        }


def _check_point(kind: str, label: str, link: LinkSurface, context: str, window: float) -> PointVerdict:
    copies = 1 if context == CONTEXT_TRANSLATIONAL else 2
    witnesses: list[dict] = []
    circle_ok = True
    min_abs_circle = math.inf
    for cp in link_bundle_decomposition(link, context):
        rep = circle_B_spectrum(cp, window)
        circle_ok = circle_ok and rep.gap_ok
        min_abs_circle = min(min_abs_circle, rep.min_abs)
        witnesses.extend(rep.witnesses)
    # With every circle check passed the link carries an admissible
    # orthogonally flat bundle, so its first positive Laplace eigenvalue is
    # at least 1 and the surface-link spectrum stays outside the gap.
    link_rep = link_B_spectrum(
        [(LAMBDA1_GUARANTEED, 1)], _link_h0_dim(link, copies), window
    )
    link_ok = link_rep.gap_ok
    witnesses.extend(link_rep.witnesses)
    return PointVerdict(
        kind=kind,
        label=label,
        angles=link.angles,
        circle_gap_ok=circle_ok,
        link_gap_ok=link_ok,
        admissible=circle_ok and link_ok,
        witnesses=tuple(witnesses),
        min_abs_circle=min_abs_circle,
        min_abs_link=link_rep.min_abs,
    )


def cone_admissibility_verdict(
    edges,
    vertices,
    kappa: int,
    window: float = 3.0,
) -> AdmissibilityVerdict:
    """Cone-admissibility of the infinitesimal-isometry bundle over a
    singular graph (the translational subbundle in the Euclidean case).

    Every edge has bigon links along its interior, every trivalent vertex a
    triangle link of the three incident edge angles.  Angles above pi are
    processed and produce failing subchecks rather than errors; an empty
    graph is vacuously admissible.
    """
    validate_curvature(kappa)
    context = _context_for_curvature(kappa)
    edges = [e if isinstance(e, SingularEdge) else SingularEdge(*e) for e in edges]
    vertices = [v if isinstance(v, SingularVertex) else SingularVertex(tuple(v)) for v in vertices]
    angle_of = {e.id: e.angle for e in edges}
    notices: list[str] = []
    points: list[PointVerdict] = []
    for e in edges:
        if e.angle > TWO_PI:
            raise DomainError(f"edge {e.id}: cone angle {e.angle} exceeds 2*pi")
        points.append(_check_point(BIGON, f"edge {e.id}", LinkSurface.bigon(e.angle), context, window))
    for k, v in enumerate(vertices):
        try:
            angles = tuple(angle_of[i] for i in v.incident)
        except KeyError as exc:
            raise DomainError(f"vertex {k} references unknown edge {exc.args[0]}") from exc
        points.append(
            _check_point(TRIANGLE, f"vertex {k}", LinkSurface.triangle(*angles), context, window)
        )
    if not points:
        notices.append("empty singular locus; admissible vacuously")
    return AdmissibilityVerdict(
        admissible=all(p.admissible for p in points),
        context=context,
        points=tuple(points),
        notices=tuple(notices),
    )
