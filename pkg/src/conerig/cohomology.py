"""Twisted group cohomology and the meridian trace-rank rigidity test.

All spaces are computed over the reals with one SVD path; complex dimensions
for SL(2,C) coefficients are obtained by checking invariance of the computed
kernels under the complex structure and halving.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IllConditioned
from .liecore import (
    AlgebraVector,
    GroupElement,
    SL2C,
    SU2,
    SU2XSU2,
    ad_real_matrix,
    algebra_dim,
    sigma_fields,
)
from .words import (
    Cocycle,
    Presentation,
    Representation,
    check_representation,
    evaluate,
    extend_cocycle,
    parse_word,
    relator_jacobian,
    split_representation,
)

# Singular values below RANK_REL_TOL * sigma_max count as zero; a spectral
# gap of at least RANK_GAP between the smallest kept and the largest dropped
# value is required to certify the decision.
RANK_REL_TOL = 1e-9
RANK_GAP = 10.0
_ABS_FLOOR = 1e-12

VERDICT_RIGID = "LocallyRigid"
VERDICT_DEFICIENT = "RankDeficient"

FLAG_ABELIAN = "AbelianImage"
FLAG_MERIDIAN_ID = "MeridianIdImage"
FLAG_REDUCIBLE = "ReducibleImage"


def _certified_rank(s: np.ndarray, context: str) -> int:
    """Number of singular values certified nonzero at the shared threshold."""
    if s.size == 0:
        return 0
    smax = float(s[0])
    cut = max(RANK_REL_TOL * smax, _ABS_FLOOR)
    kept = s[s > cut]
    dropped = s[s <= cut]
    if kept.size and dropped.size and float(kept[-1]) < RANK_GAP * float(dropped[0]):
        raise IllConditioned(
            f"{context}: singular values cluster at the rank threshold "
            f"(kept {kept[-1]:.3e}, dropped {dropped[0]:.3e})"
        )
    return int(kept.size)


def nullspace(mat: np.ndarray, context: str = "nullspace") -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal kernel basis (columns) and the singular values of mat."""
    n = mat.shape[1]
    if mat.size == 0:
        return np.eye(n), np.zeros(0)
    u, s, vt = np.linalg.svd(mat)
    rank = _certified_rank(s, context)
    return vt[rank:].T.copy(), s


def matrix_rank(mat: np.ndarray, context: str = "rank") -> int:
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    return _certified_rank(s, context)


def _j_matrix(n_generators: int) -> np.ndarray:
    """Complex structure on stacked sl2(C) coordinates."""
    j2 = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(np.eye(3 * n_generators), j2)


def _is_j_invariant(basis: np.ndarray, n_generators: int, tol: float = 1e-9) -> bool:
    if basis.shape[1] == 0:
        return True
    if basis.shape[1] % 2:
        return False
    jmat = _j_matrix(n_generators)
    proj = basis @ basis.T
    defect = jmat @ basis - proj @ (jmat @ basis)
    return float(np.linalg.norm(defect)) < tol * max(1.0, float(np.linalg.norm(basis)))


# ---------------------------------------------------------------------------
# spaces


def _invariance_matrix(rho: Representation) -> np.ndarray:
    """Stacked (I - Ad rho(gen)) blocks; kernel is Z^0, column space is B^1."""
    d = algebra_dim(rho.group)
    blocks = [np.eye(d) - ad_real_matrix(g) for g in rho.images]
    if not blocks:
        return np.zeros((0, d))
    return np.vstack(blocks)


def z0_space(rho: Representation, pres: Presentation) -> list[AlgebraVector]:
    """Basis of the infinitesimal centralizer {v : Ad rho(gamma) v = v}."""
    check_representation(rho, pres)
    basis, _ = nullspace(_invariance_matrix(rho), "Z0")
    return [AlgebraVector.from_coords(rho.group, basis[:, k]) for k in range(basis.shape[1])]


def cocycle_space(rho: Representation, pres: Presentation) -> list[Cocycle]:
    """Orthonormal basis of the kernel of the linearized relations."""
    jac = relator_jacobian(rho, pres)
    basis, _ = nullspace(jac, "Z1")
    n = len(pres.generators)
    return [Cocycle.from_coords(rho.group, basis[:, k], n) for k in range(basis.shape[1])]


def coboundary_space(rho: Representation, pres: Presentation) -> list[Cocycle]:
    """Orthonormal basis of the image of v -> (v - Ad rho(gen) v)."""
    check_representation(rho, pres)
    mat = _invariance_matrix(rho)
    u, s, _ = np.linalg.svd(mat)
    rank = _certified_rank(s, "B1")
    n = len(pres.generators)
    return [Cocycle.from_coords(rho.group, u[:, k], n) for k in range(rank)]


@dataclass(frozen=True, eq=False)
class CohomologyReport:
    """Real dimensions of Z^0, Z^1, B^1, H^1 with an orthonormal H^1 basis.

    Complex dimensions are reported for SL(2,C) coefficients after verifying
    that every kernel is invariant under the complex structure.
    """

    group: str
    dim_Z0: int
    dim_Z1: int
    dim_B1: int
    dim_H1: int
    singular_values: tuple[float, ...]
    basis_H1: tuple[Cocycle, ...]
    dim_Z0_complex: int | None = None
    dim_Z1_complex: int | None = None
    dim_B1_complex: int | None = None
    dim_H1_complex: int | None = None

    def dims_dict(self) -> dict:
        out = {
            "group": self.group,
            "dim_Z0": self.dim_Z0,
            "dim_Z1": self.dim_Z1,
            "dim_B1": self.dim_B1,
            "dim_H1": self.dim_H1,
        }
        if self.dim_H1_complex is not None:
            out.update(
                {
                    "dim_Z0_complex": self.dim_Z0_complex,
                    "dim_Z1_complex": self.dim_Z1_complex,
                    "dim_B1_complex": self.dim_B1_complex,
                    "dim_H1_complex": self.dim_H1_complex,
                }
            )
        return out


def h1_basis(rho: Representation, pres: Presentation) -> CohomologyReport:
    """Cohomology report: H^1 as the orthocomplement of B^1 inside Z^1.

    The Euclidean inner product on stacked coordinates is used for
    orthonormalization (the Killing form is indefinite); only spans matter
    downstream.
    """
    jac = relator_jacobian(rho, pres)
    z1_basis, singvals = nullspace(jac, "Z1")
    inv = _invariance_matrix(rho)
    u, s, vt = np.linalg.svd(inv)
    b1_rank = _certified_rank(s, "B1")
    z0_dim = inv.shape[1] - b1_rank
    b1_basis = u[:, :b1_rank]

    dim_z1 = z1_basis.shape[1]
    dim_h1 = dim_z1 - b1_rank
    if dim_h1 < 0:
        raise IllConditioned(f"dim B1 {b1_rank} exceeds dim Z1 {dim_z1}")

    # Project Z^1 basis off B^1 and re-orthonormalize; in exact arithmetic
    # B^1 is contained in Z^1, so exactly dim_h1 singular values survive.
    w = z1_basis - b1_basis @ (b1_basis.T @ z1_basis)
    h_basis = np.zeros((z1_basis.shape[0], 0))
    if dim_h1 > 0:
        uw, sw, _ = np.linalg.svd(w)
        if sw[dim_h1 - 1] < 0.5 or (sw.size > dim_h1 and sw[dim_h1] > 0.5):
            raise IllConditioned("B1 is not numerically contained in Z1")
        h_basis = uw[:, :dim_h1]

    n = len(pres.generators)
    dims_c = {}
    if rho.group == SL2C:
        ok = (
            _is_j_invariant(z1_basis, n)
            and _is_j_invariant(b1_basis, n)
            and _is_j_invariant(h_basis, n)
        )
        if not ok:
            raise IllConditioned("SL2C kernels are not invariant under the complex structure")
        dims_c = {
            "dim_Z0_complex": z0_dim // 2,
            "dim_Z1_complex": dim_z1 // 2,
            "dim_B1_complex": b1_rank // 2,
            "dim_H1_complex": dim_h1 // 2,
        }

    cocycles = tuple(
        Cocycle.from_coords(rho.group, h_basis[:, k], n) for k in range(dim_h1)
    )
    return CohomologyReport(
        group=rho.group,
        dim_Z0=z0_dim,
        dim_Z1=dim_z1,
        dim_B1=b1_rank,
        dim_H1=dim_h1,
        singular_values=tuple(float(v) for v in singvals),
        basis_H1=cocycles,
        **dims_c,
    )


# ---------------------------------------------------------------------------
# trace differentials


def trace_differential(rho: Representation, z: Cocycle, word):
    """Derivative of the trace along the infinitesimal deformation z.

    Returns tr(z(w) rho(w)): a complex number for SL(2,C), a real number for
    SU(2), and a pair of reals (one per factor) for SU(2)xSU(2).
    """
    if isinstance(word, str):
        raise DomainError("pass a parsed Word, not a string")
    g = evaluate(rho, word)
    v = extend_cocycle(rho, z, word)
    if rho.group == SL2C:
        return complex(np.trace(v.parts[0] @ g.mat))
    if rho.group == SU2:
        return float(np.trace(v.parts[0] @ g.mat).real)
    return (
        float(np.trace(v.parts[0] @ g.left.mat).real),
        float(np.trace(v.parts[1] @ g.right.mat).real),
    )


def _complex_h1_basis(report: CohomologyReport, n_generators: int) -> list[Cocycle]:
    """Pick one representative per complex line of the H^1 basis."""
    mat = np.column_stack([z.coords() for z in report.basis_H1]) if report.basis_H1 else np.zeros(
        (algebra_dim(SL2C) * n_generators, 0)
    )
    jmat = _j_matrix(n_generators)
    chosen: list[np.ndarray] = []
    span = np.zeros((mat.shape[0], 0))
    for k in range(mat.shape[1]):
        v = mat[:, k]
        if span.shape[1]:
            v = v - span @ (span.T @ v)
        if np.linalg.norm(v) < 0.5:
            continue
        v = v / np.linalg.norm(v)
        jv = jmat @ v
        jv = jv - v * (v @ jv)
        jv = jv / np.linalg.norm(jv)
        chosen.append(mat[:, k])
        span = np.column_stack([span, v, jv])
    return [Cocycle.from_coords(SL2C, v, n_generators) for v in chosen]


# ---------------------------------------------------------------------------
# rigidity


@dataclass(frozen=True, eq=False)
class RigidityReport:
    group: str
    meridian_count: int
    dim_h1: int
    rank: int
    verdict: str
    degenerate_flags: tuple[str, ...]
    notes: tuple[str, ...]
    trace_jacobian: np.ndarray | None
    factors: tuple["RigidityReport", ...] = ()

    def to_dict(self) -> dict:
        out = {
            "group": self.group,
            "meridian_count": self.meridian_count,
            "dim_h1": self.dim_h1,
            "rank": self.rank,
            "verdict": self.verdict,
            "degenerate_flags": list(self.degenerate_flags),
            "notes": list(self.notes),
        }
        if self.trace_jacobian is not None:
            out["trace_jacobian"] = self.trace_jacobian
        if self.factors:
            out["factors"] = [f.to_dict() for f in self.factors]
        return out


def _image_is_abelian(rho: Representation, tol: float = 1e-10) -> bool:
    imgs = rho.images
    for i in range(len(imgs)):
        for j in range(i + 1, len(imgs)):
            if imgs[i].mul(imgs[j]).dist(imgs[j].mul(imgs[i])) > tol:
                return False
    return True


def _meridian_image_central(g: GroupElement, tol: float = 1e-10) -> bool:
    if g.dist_to_identity() <= tol:
        return True
    if hasattr(g, "mat"):
        return float(np.linalg.norm(np.asarray(g.mat) + np.eye(2))) <= tol
    return (
        _meridian_image_central(g.left, tol) or _meridian_image_central(g.right, tol)
    )


def _single_group_rigidity(rho: Representation, pres: Presentation) -> RigidityReport:
    report = h1_basis(rho, pres)
    meridians = pres.meridians
    n_mer = len(meridians)
    flags: list[str] = []
    notes: list[str] = []

    if _image_is_abelian(rho):
        flags.append(FLAG_ABELIAN)
        notes.append("image group is abelian; the trace-rank criterion does not certify rigidity")
    if report.dim_Z0 > 0:
        flags.append(FLAG_REDUCIBLE)
        notes.append("nontrivial infinitesimal centralizer; smooth-point hypothesis unverified")
    for m in meridians:
        if _meridian_image_central(evaluate(rho, m.word)):
            flags.append(FLAG_MERIDIAN_ID)
            notes.append(f"meridian {m.text!r} maps to +/- identity; complex length undefined")
            break

    if rho.group == SL2C:
        dim_h1 = report.dim_H1_complex
        basis = _complex_h1_basis(report, len(pres.generators))
        jac = np.array(
            [[trace_differential(rho, z, m.word) for z in basis] for m in meridians],
            dtype=complex,
        ).reshape(n_mer, dim_h1)
    else:
        dim_h1 = report.dim_H1
        basis = list(report.basis_H1)
        jac = np.array(
            [[trace_differential(rho, z, m.word) for z in basis] for m in meridians],
            dtype=float,
        ).reshape(n_mer, dim_h1)

    rank = matrix_rank(jac, "trace jacobian")
    if n_mer != dim_h1:
        notes.append(f"MeridianCountMismatch: {n_mer} meridian(s) vs dim H1 = {dim_h1}")
    rigid = (
        rank == dim_h1
        and n_mer == dim_h1
        and FLAG_ABELIAN not in flags
        and FLAG_MERIDIAN_ID not in flags
    )
    return RigidityReport(
        group=rho.group,
        meridian_count=n_mer,
        dim_h1=dim_h1,
        rank=rank,
        verdict=VERDICT_RIGID if rigid else VERDICT_DEFICIENT,
        degenerate_flags=tuple(flags),
        notes=tuple(notes),
        trace_jacobian=jac,
    )


def rigidity_test(rho: Representation, pres: Presentation) -> RigidityReport:
    """Meridian trace-rank test; per factor for SU(2)xSU(2)."""
    if rho.group != SU2XSU2:
        return _single_group_rigidity(rho, pres)
    left, right = split_representation(rho)
    reports = (_single_group_rigidity(left, pres), _single_group_rigidity(right, pres))
    flags = tuple(dict.fromkeys(reports[0].degenerate_flags + reports[1].degenerate_flags))
    notes = tuple(dict.fromkeys(reports[0].notes + reports[1].notes))
    rigid = all(r.verdict == VERDICT_RIGID for r in reports)
    return RigidityReport(
        group=SU2XSU2,
        meridian_count=len(pres.meridians),
        dim_h1=reports[0].dim_h1 + reports[1].dim_h1,
        rank=reports[0].rank + reports[1].rank,
        verdict=VERDICT_RIGID if rigid else VERDICT_DEFICIENT,
        degenerate_flags=flags,
        notes=notes,
        trace_jacobian=None,
        factors=reports,
    )


# ---------------------------------------------------------------------------
# dimension audit


@dataclass(frozen=True)
class BoundaryComponent:
    genus: int
    generator_words: tuple[str, ...]

    def __post_init__(self):
        if self.genus < 1:
            raise DomainError(f"boundary genus must be >= 1, got {self.genus}")
        if len(self.generator_words) != 2 * self.genus:
            raise DomainError(
                f"genus {self.genus} boundary needs {2 * self.genus} generator words"
            )


def surface_presentation(genus: int) -> Presentation:
    """Standard presentation of a closed orientable surface group."""
    letters = [chr(ord("a") + k) for k in range(2 * genus)]
    relator = "".join(
        letters[2 * i] + letters[2 * i + 1] + letters[2 * i].upper() + letters[2 * i + 1].upper()
        for i in range(genus)
    )
    return Presentation.from_strings(letters, [relator])


def induced_boundary_representation(
    rho: Representation, pres: Presentation, comp: BoundaryComponent
) -> tuple[Representation, Presentation]:
    words = [parse_word(w, pres.generators) for w in comp.generator_words]
    images = tuple(evaluate(rho, w) for w in words)
    sub_pres = surface_presentation(comp.genus)
    return Representation(rho.group, images), sub_pres


@dataclass(frozen=True)
class AuditIdentity:
    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class DimensionAudit:
    skipped: bool
    identities: tuple[AuditIdentity, ...]
    boundary_dims: tuple[dict, ...]
    notices: tuple[str, ...]

    @property
    def all_hold(self) -> bool:
        return not self.skipped and all(i.holds for i in self.identities)

    def to_dict(self) -> dict:
        return {
            "skipped": self.skipped,
            "identities": [
                {"name": i.name, "lhs": i.lhs, "rhs": i.rhs, "holds": i.holds}
                for i in self.identities
            ],
            "boundary": list(self.boundary_dims),
            "notices": list(self.notices),
        }


def _audit_one_group(rho, pres, boundary) -> tuple[list[AuditIdentity], list[dict]]:
    interior = h1_basis(rho, pres)
    use_complex = rho.group == SL2C
    tau = sum(1 for c in boundary if c.genus == 1)
    chi = sum(2 - 2 * c.genus for c in boundary)

    boundary_dims = []
    boundary_h1 = 0
    for comp in boundary:
        sub_rho, sub_pres = induced_boundary_representation(rho, pres, comp)
        rep = h1_basis(sub_rho, sub_pres)
        dim = rep.dim_H1_complex if use_complex else rep.dim_H1
        boundary_h1 += dim
        boundary_dims.append({"genus": comp.genus, "dim_H1": dim})

    h1_m = interior.dim_H1_complex if use_complex else interior.dim_H1
    z1_m = interior.dim_Z1_complex if use_complex else interior.dim_Z1
    identities = [
        AuditIdentity(
            "half_dimension: dim H1(M) = 1/2 sum dim H1(boundary)",
            float(h1_m),
            0.5 * boundary_h1,
            math.isclose(h1_m, 0.5 * boundary_h1),
        ),
        AuditIdentity(
            "cocycle_count: dim Z1(M) = tau + 3 - (3/2) chi(boundary)",
            float(z1_m),
            tau + 3.0 - 1.5 * chi,
            math.isclose(z1_m, tau + 3.0 - 1.5 * chi),
        ),
    ]
    return identities, boundary_dims


def dimension_audit(
    rho: Representation, pres: Presentation, boundary: tuple[BoundaryComponent, ...]
) -> DimensionAudit:
    """Check the half-dimension identity and the cocycle dimension count.

    Dimensions are complex for SL(2,C) and real per factor for SU(2); for
    SU(2)xSU(2) both factors are audited.
    """
    if not boundary:
        return DimensionAudit(
            skipped=True,
            identities=(),
            boundary_dims=(),
            notices=("no boundary components declared; audit skipped",),
        )
    notices: list[str] = []
    identities: list[AuditIdentity] = []
    boundary_dims: list[dict] = []
    if rho.group == SU2XSU2:
        for tag, factor in zip(("left", "right"), split_representation(rho)):
            ids, dims = _audit_one_group(factor, pres, boundary)
            identities.extend(
                AuditIdentity(f"{tag}.{i.name}", i.lhs, i.rhs, i.holds) for i in ids
            )
            boundary_dims.extend({"factor": tag, **d} for d in dims)
    else:
        identities, boundary_dims = _audit_one_group(rho, pres, boundary)
    return DimensionAudit(
        skipped=False,
        identities=tuple(identities),
        boundary_dims=tuple(boundary_dims),
        notices=tuple(notices),
    )


# ---------------------------------------------------------------------------
# standard torus deformation cocycles


def standard_torus_cocycles(
    group: str,
    alpha: float,
    twist: float,
    length: float,
    longitude_index: int = 0,
    meridian_index: int = 1,
    n_generators: int = 2,
) -> dict[str, Cocycle]:
    """The four deformation cocycles of a standard singular tube.

    Values on the meridian are alpha * sigma for the angle and shear
    directions and zero for twist and length; values on the longitude carry
    the twist/length periods.  Assumes the holonomy is in standard position
    (diagonal), where every diagonal-valued assignment is a cocycle.
    """
    sigma_theta, sigma_z = sigma_fields(group)
    zero = AlgebraVector.zero(group)

    def build(long_val: AlgebraVector, mer_val: AlgebraVector) -> Cocycle:
        values = [zero] * n_generators
        values[longitude_index] = long_val
        values[meridian_index] = mer_val
        return Cocycle(group, tuple(values))

    return {
        "ang": build(sigma_theta.scaled(-twist), sigma_theta.scaled(alpha)),
        "shr": build(sigma_z.scaled(-twist), sigma_z.scaled(alpha)),
        "tws": build(sigma_theta.scaled(length), zero),
        "len": build(sigma_z.scaled(length), zero),
    }
