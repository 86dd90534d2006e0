"""Isometry groups of the three constant-curvature model spaces.

Group elements live in SL(2,C), SU(2) or SU(2)xSU(2); unit quaternions back
the SU(2) arithmetic.  The algebra of infinitesimal isometries is modelled as
so(3) + R^3 with a curvature tag; rotations are stored by axis vector so that
antisymmetry is exact.  The matrix Lie algebras (sl2(C), su(2), su(2)+su(2))
are a separate type used for cocycle coefficients; the two pictures are only
converted where a formula demands it.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    CurvatureMismatch,
    DegenerateElement,
    DomainError,
    NotSemisimple,
)

VALID_CURVATURES = (-1, 0, 1)

SL2C = "SL2C"
SU2 = "SU2"
SU2XSU2 = "SU2xSU2"
GROUPS = (SL2C, SU2, SU2XSU2)

# Membership tolerance for det = 1 / unitarity; inputs within it are
# re-projected, inputs beyond it are rejected.
TOL_GROUP = 1e-10

_ID2 = np.eye(2, dtype=complex)


def validate_curvature(kappa: int) -> int:
    if kappa not in VALID_CURVATURES:
        raise DomainError(f"curvature must be one of {VALID_CURVATURES}, got {kappa!r}")
    return int(kappa)


def sn_cs_ct(kappa: int, r: float) -> tuple[float, float, float]:
    """Generalized sine, cosine and cotangent for curvature kappa.

    sn solves f'' + kappa f = 0 with sn(0)=0, sn'(0)=1; cs likewise with
    cs(0)=1, cs'(0)=0.  Returns (sn(r), cs(r), cs(r)/sn(r)).
    """
    validate_curvature(kappa)
    if r <= 0.0:
        raise DomainError(f"radius must be positive, got {r}")
    if kappa == 1 and r >= math.pi:
        raise DomainError(f"radius must be < pi at curvature +1, got {r}")
    if kappa == -1:
        sn, cs = math.sinh(r), math.cosh(r)
    elif kappa == 0:
        sn, cs = r, 1.0
    else:
        sn, cs = math.sin(r), math.cos(r)
    return sn, cs, cs / sn


def hat(w) -> np.ndarray:
    """Axis vector to antisymmetric 3x3 matrix, hat(w) v = w x v."""
    w = np.asarray(w, dtype=float)
    return np.array(
        [
            [0.0, -w[2], w[1]],
            [w[2], 0.0, -w[0]],
            [-w[1], w[0], 0.0],
        ]
    )


def unhat(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=float)
    defect = np.abs(mat + mat.T).max()
    if defect > 1e-12:
        raise DomainError(f"matrix is not antisymmetric (defect {defect:.3e})")
    return np.array([mat[2, 1], mat[0, 2], mat[1, 0]])


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class IsomAlgebraElement:
    """Infinitesimal isometry (A, X) in so(3) + R^3 at curvature kappa.

    ``rot`` may be given as a 3-vector (rotation axis) or a 3x3 antisymmetric
    matrix; it is stored as the 3 independent entries.
    """

    rot_vec: np.ndarray
    trans: np.ndarray
    kappa: int

    def __init__(self, rot, trans, kappa):
        rot = np.asarray(rot, dtype=float)
        if rot.shape == (3, 3):
            rot = unhat(rot)
        elif rot.shape != (3,):
            raise DomainError(f"rotation part has shape {rot.shape}")
        trans = np.asarray(trans, dtype=float)
        if trans.shape != (3,):
            raise DomainError(f"translation part has shape {trans.shape}")
        object.__setattr__(self, "rot_vec", _frozen(rot))
        object.__setattr__(self, "trans", _frozen(trans))
        object.__setattr__(self, "kappa", validate_curvature(kappa))

    @property
    def rot(self) -> np.ndarray:
        """Rotation part as a 3x3 antisymmetric matrix."""
        return hat(self.rot_vec)

    @classmethod
    def zero(cls, kappa: int) -> "IsomAlgebraElement":
        return cls(np.zeros(3), np.zeros(3), kappa)

    def norm(self) -> float:
        return math.sqrt(float(self.rot_vec @ self.rot_vec + self.trans @ self.trans))

    def __add__(self, other: "IsomAlgebraElement") -> "IsomAlgebraElement":
        _check_kappa(self, other)
        return IsomAlgebraElement(self.rot_vec + other.rot_vec, self.trans + other.trans, self.kappa)

    def __sub__(self, other: "IsomAlgebraElement") -> "IsomAlgebraElement":
        _check_kappa(self, other)
        return IsomAlgebraElement(self.rot_vec - other.rot_vec, self.trans - other.trans, self.kappa)

    def __neg__(self) -> "IsomAlgebraElement":
        return IsomAlgebraElement(-self.rot_vec, -self.trans, self.kappa)

    def scaled(self, c: float) -> "IsomAlgebraElement":
        return IsomAlgebraElement(c * self.rot_vec, c * self.trans, self.kappa)


def _check_kappa(x: IsomAlgebraElement, y: IsomAlgebraElement) -> None:
    if x.kappa != y.kappa:
        raise CurvatureMismatch(f"kappa {x.kappa} vs {y.kappa}")


def bracket(x: IsomAlgebraElement, y: IsomAlgebraElement) -> IsomAlgebraElement:
    """Lie bracket [(A,X),(B,Y)] = ([A,B] - R(X,Y), AY - BX).

    The curvature tensor is R(X,Y)Z = kappa(<Y,Z>X - <X,Z>Y); in axis-vector
    form [A,B] - R(X,Y) has axis a x b + kappa (X x Y).
    """
    _check_kappa(x, y)
    a, b = x.rot_vec, y.rot_vec
    X, Y = x.trans, y.trans
    rot = np.cross(a, b) + x.kappa * np.cross(X, Y)
    trans = np.cross(a, Y) - np.cross(b, X)
    return IsomAlgebraElement(rot, trans, x.kappa)


def curvature_tensor(kappa: int, X, Y) -> np.ndarray:
    """R(X,Y) as a 3x3 matrix, R(X,Y)Z = kappa(<Y,Z>X - <X,Z>Y)."""
    validate_curvature(kappa)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    return kappa * (np.outer(X, Y) - np.outer(Y, X))


def ad_matrix(x: IsomAlgebraElement) -> np.ndarray:
    """ad(x) as a 6x6 real matrix in (axis, translation) coordinates."""
    A = hat(x.rot_vec)
    Xh = hat(x.trans)
    out = np.zeros((6, 6))
    out[:3, :3] = A
    out[:3, 3:] = x.kappa * Xh
    out[3:, :3] = Xh
    out[3:, 3:] = A
    return out


def killing_form(x: IsomAlgebraElement, y: IsomAlgebraElement) -> float:
    """Killing form tr(ad(x) ad(y)), computed literally from the 6x6 ads."""
    _check_kappa(x, y)
    return float(np.trace(ad_matrix(x) @ ad_matrix(y)))


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True, eq=False)
class Sl2cElement:
    """Element of SL(2,C); determinant is re-normalized on construction."""

    mat: np.ndarray

    def __init__(self, mat):
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (2, 2):
            raise DomainError(f"expected 2x2 matrix, got shape {mat.shape}")
        det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
        if abs(det - 1.0) > TOL_GROUP:
            raise DomainError(f"determinant {det} is not 1 within {TOL_GROUP}")
        if abs(det - 1.0) > 1e-14:  # re-project, but stay idempotent at rounding level
            mat = mat / cmath.sqrt(det)
        object.__setattr__(self, "mat", _frozen(mat))

    @classmethod
    def identity(cls) -> "Sl2cElement":
        return cls(_ID2)

    def mul(self, other: "Sl2cElement") -> "Sl2cElement":
        return Sl2cElement(self.mat @ other.mat)

    def inv(self) -> "Sl2cElement":
        a, b, c, d = self.mat.ravel()
        return Sl2cElement(np.array([[d, -b], [-c, a]]))

    def trace(self) -> complex:
        return complex(self.mat[0, 0] + self.mat[1, 1])

    def dist_to_identity(self) -> float:
        return float(np.linalg.norm(self.mat - _ID2))

    def dist(self, other: "Sl2cElement") -> float:
        return float(np.linalg.norm(self.mat - other.mat))


@dataclass(frozen=True, eq=False)
class Su2Element:
    """Element of SU(2) stored as a unit quaternion a + bi + cj + dk."""

    q: np.ndarray

    def __init__(self, q):
        q = np.asarray(q, dtype=float)
        if q.shape != (4,):
            raise DomainError(f"expected quaternion of shape (4,), got {q.shape}")
        n2 = float(q @ q)
        if abs(n2 - 1.0) > TOL_GROUP:
            raise DomainError(f"|q|^2 = {n2} is not 1 within {TOL_GROUP}")
        if abs(n2 - 1.0) > 1e-14:  # re-project, but stay idempotent at rounding level
            q = q / math.sqrt(n2)
        object.__setattr__(self, "q", _frozen(q))

    @classmethod
    def identity(cls) -> "Su2Element":
        return cls(np.array([1.0, 0.0, 0.0, 0.0]))

    @classmethod
    def from_matrix(cls, mat) -> "Su2Element":
        """Inverse of the a + bj -> [[a, b], [-conj(b), conj(a)]] embedding."""
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (2, 2):
            raise DomainError(f"expected 2x2 matrix, got shape {mat.shape}")
        a = 0.5 * (mat[0, 0] + np.conj(mat[1, 1]))
        b = 0.5 * (mat[0, 1] - np.conj(mat[1, 0]))
        q = np.array([a.real, a.imag, b.real, b.imag])
        defect = float(np.linalg.norm(mat - _su2_matrix(q / np.linalg.norm(q))))
        if defect > TOL_GROUP:
            raise DomainError(f"matrix is not in SU(2) within {TOL_GROUP} (defect {defect:.3e})")
        return cls(q)

    @property
    def mat(self) -> np.ndarray:
        return _su2_matrix(self.q)

    def mul(self, other: "Su2Element") -> "Su2Element":
        return Su2Element(_quat_mul(self.q, other.q))

    def inv(self) -> "Su2Element":
        a, b, c, d = self.q
        return Su2Element(np.array([a, -b, -c, -d]))

    def trace(self) -> float:
        return 2.0 * float(self.q[0])

    def dist_to_identity(self) -> float:
        return float(np.linalg.norm(self.mat - _ID2))

    def dist(self, other: "Su2Element") -> float:
        return float(np.linalg.norm(self.mat - other.mat))

    def rotation_axis_angle(self) -> tuple[np.ndarray, float]:
        """Unit axis and angle in [0, pi] of the quaternion, q = cos + sin*axis."""
        v = self.q[1:]
        s = float(np.linalg.norm(v))
        if s < TOL_GROUP:
            raise DegenerateElement("no axis at +/- identity")
        return v / s, math.atan2(s, float(self.q[0]))


def _su2_matrix(q: np.ndarray) -> np.ndarray:
    a = q[0] + 1j * q[1]
    b = q[2] + 1j * q[3]
    return np.array([[a, b], [-np.conj(b), np.conj(a)]])


def _quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    p0, p1, p2, p3 = p
    q0, q1, q2, q3 = q
    return np.array(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        ]
    )


@dataclass(frozen=True)
class Su2PairElement:
    """Element of SU(2) x SU(2) with componentwise group law."""

    left: Su2Element
    right: Su2Element

    @classmethod
    def identity(cls) -> "Su2PairElement":
        return cls(Su2Element.identity(), Su2Element.identity())

    def mul(self, other: "Su2PairElement") -> "Su2PairElement":
        return Su2PairElement(self.left.mul(other.left), self.right.mul(other.right))

    def inv(self) -> "Su2PairElement":
        return Su2PairElement(self.left.inv(), self.right.inv())

    def trace(self) -> tuple[float, float]:
        return (self.left.trace(), self.right.trace())

    def dist_to_identity(self) -> float:
        return math.hypot(self.left.dist_to_identity(), self.right.dist_to_identity())

    def dist(self, other: "Su2PairElement") -> float:
        return math.hypot(self.left.dist(other.left), self.right.dist(other.right))


GroupElement = Sl2cElement | Su2Element | Su2PairElement


def group_identity(group: str) -> GroupElement:
    if group == SL2C:
        return Sl2cElement.identity()
    if group == SU2:
        return Su2Element.identity()
    if group == SU2XSU2:
        return Su2PairElement.identity()
    raise DomainError(f"unknown group tag {group!r}")


def group_of(g: GroupElement) -> str:
    if isinstance(g, Sl2cElement):
        return SL2C
    if isinstance(g, Su2Element):
        return SU2
    if isinstance(g, Su2PairElement):
        return SU2XSU2
    raise DomainError(f"not a group element: {g!r}")


# ---------------------------------------------------------------------------
# matrix Lie algebra vectors (cocycle coefficients)


def algebra_dim(group: str) -> int:
    """Real dimension of the coefficient Lie algebra."""
    if group == SL2C:
        return 6
    if group == SU2:
        return 3
    if group == SU2XSU2:
        return 6
    raise DomainError(f"unknown group tag {group!r}")


def _project_traceless(m: np.ndarray, antihermitian: bool) -> np.ndarray:
    tr = m[0, 0] + m[1, 1]
    if abs(tr) > TOL_GROUP:
        raise DomainError(f"trace {tr} is not 0 within {TOL_GROUP}")
    m = m - (tr / 2.0) * _ID2
    if antihermitian:
        defect = float(np.linalg.norm(m + np.conj(m.T)))
        if defect > TOL_GROUP:
            raise DomainError(f"matrix is not anti-hermitian within {TOL_GROUP}")
        m = 0.5 * (m - np.conj(m.T))
    return m


@dataclass(frozen=True, eq=False)
class AlgebraVector:
    """Coefficient algebra vector: sl2(C), su(2), or an su(2)+su(2) pair."""

    group: str
    parts: tuple[np.ndarray, ...]

    def __init__(self, group: str, parts):
        if group not in GROUPS:
            raise DomainError(f"unknown group tag {group!r}")
        if isinstance(parts, np.ndarray):
            parts = (parts,)
        parts = tuple(np.asarray(p, dtype=complex) for p in parts)
        expected = 2 if group == SU2XSU2 else 1
        if len(parts) != expected or any(p.shape != (2, 2) for p in parts):
            raise DomainError(f"expected {expected} 2x2 part(s) for {group}")
        anti = group in (SU2, SU2XSU2)
        parts = tuple(_frozen(_project_traceless(p, anti)) for p in parts)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "parts", parts)

    @classmethod
    def zero(cls, group: str) -> "AlgebraVector":
        n = 2 if group == SU2XSU2 else 1
        return cls(group, tuple(np.zeros((2, 2), dtype=complex) for _ in range(n)))

    @classmethod
    def from_coords(cls, group: str, vec) -> "AlgebraVector":
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (algebra_dim(group),):
            raise DomainError(f"expected {algebra_dim(group)} real coordinates")
        if group == SL2C:
            a = vec[0] + 1j * vec[1]
            b = vec[2] + 1j * vec[3]
            c = vec[4] + 1j * vec[5]
            return cls(group, np.array([[a, b], [c, -a]]))
        if group == SU2:
            return cls(group, _su2_alg(vec))
        return cls(group, (_su2_alg(vec[:3]), _su2_alg(vec[3:])))

    def coords(self) -> np.ndarray:
        if self.group == SL2C:
            m = self.parts[0]
            return np.array(
                [m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag, m[1, 0].real, m[1, 0].imag]
            )
        if self.group == SU2:
            return _su2_alg_coords(self.parts[0])
        return np.concatenate([_su2_alg_coords(p) for p in self.parts])

    def j(self) -> "AlgebraVector":
        """Complex structure: multiply by i (SL2C only)."""
        if self.group != SL2C:
            raise DomainError("complex structure only exists on sl2(C)")
        return AlgebraVector(self.group, 1j * self.parts[0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords()))

    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check(other)
        return AlgebraVector(self.group, tuple(p + q for p, q in zip(self.parts, other.parts)))

    def __sub__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check(other)
        return AlgebraVector(self.group, tuple(p - q for p, q in zip(self.parts, other.parts)))

    def __neg__(self) -> "AlgebraVector":
        return AlgebraVector(self.group, tuple(-p for p in self.parts))

    def scaled(self, c: float) -> "AlgebraVector":
        return AlgebraVector(self.group, tuple(c * p for p in self.parts))

    def _check(self, other: "AlgebraVector") -> None:
        if self.group != other.group:
            raise DomainError(f"group mismatch: {self.group} vs {other.group}")


def _su2_alg(v: np.ndarray) -> np.ndarray:
    x, y, z = v
    return np.array([[1j * x, y + 1j * z], [-y + 1j * z, -1j * x]])


def _su2_alg_coords(m: np.ndarray) -> np.ndarray:
    return np.array([m[0, 0].imag, m[0, 1].real, m[0, 1].imag])


@lru_cache(maxsize=None)
def algebra_basis(group: str) -> tuple[AlgebraVector, ...]:
    d = algebra_dim(group)
    return tuple(AlgebraVector.from_coords(group, np.eye(d)[k]) for k in range(d))


def ad_action(g: GroupElement, v: AlgebraVector) -> AlgebraVector:
    """Adjoint action Ad(g) v = g v g^-1, componentwise on pairs."""
    group = group_of(g)
    if group != v.group:
        raise DomainError(f"group mismatch: {group} vs {v.group}")
    if group == SU2XSU2:
        mats = (g.left.mat, g.right.mat)
        parts = tuple(m @ p @ np.conj(m.T) for m, p in zip(mats, v.parts))
        return AlgebraVector(group, parts)
    m = g.mat
    if group == SU2:
        return AlgebraVector(group, m @ v.parts[0] @ np.conj(m.T))
    mi = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    return AlgebraVector(group, m @ v.parts[0] @ mi)


def ad_real_matrix(g: GroupElement) -> np.ndarray:
    """Ad(g) as a real matrix in the coordinates of `AlgebraVector.coords`."""
    group = group_of(g)
    basis = algebra_basis(group)
    return np.column_stack([ad_action(g, e).coords() for e in basis])


def exp_algebra(v: AlgebraVector) -> GroupElement:
    """Exponential of a coefficient algebra vector into its group."""
    if v.group == SL2C:
        return Sl2cElement(_exp_traceless(v.parts[0]))
    if v.group == SU2:
        return Su2Element.from_matrix(_exp_traceless(v.parts[0]))
    return Su2PairElement(
        Su2Element.from_matrix(_exp_traceless(v.parts[0])),
        Su2Element.from_matrix(_exp_traceless(v.parts[1])),
    )


def _exp_traceless(m: np.ndarray) -> np.ndarray:
    # For traceless 2x2, m^2 = -det(m) I; the series sums to
    # cosh(mu) I + sinh(mu)/mu m with mu^2 = -det(m) (branch-independent).
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    mu = cmath.sqrt(-det)
    if abs(mu) < 1e-8:
        c = 1.0 + mu**2 / 2.0 + mu**4 / 24.0
        s = 1.0 + mu**2 / 6.0 + mu**4 / 120.0
    else:
        c = cmath.cosh(mu)
        s = cmath.sinh(mu) / mu
    return c * _ID2 + s * m


# ---------------------------------------------------------------------------
# complex length and standard deformation directions


def complex_length_sl2c(g: Sl2cElement) -> complex:
    """Complex length L with tr g = +/- 2 cosh(L/2).

    Branch: Im L in [0, pi]; ties at Im in {0, pi} resolved by Re L >= 0.
    """
    t = g.trace()
    if abs(t - 2.0) <= TOL_GROUP or abs(t + 2.0) <= TOL_GROUP:
        if g.dist_to_identity() <= TOL_GROUP or Sl2cElement(-g.mat).dist_to_identity() <= TOL_GROUP:
            raise DegenerateElement("complex length undefined at +/- identity")
        raise NotSemisimple(f"parabolic element (trace {t})")
    lam = (t + cmath.sqrt(t * t - 4.0)) / 2.0
    ell = 2.0 * cmath.log(lam)
    return _normalize_complex_length(ell)


def _normalize_complex_length(ell: complex) -> complex:
    # Rotation angles within snap_tol of 0 or pi are ties between the two
    # sign branches; snapping keeps the choice stable under rounding noise.
    two_pi = 2.0 * math.pi
    snap_tol = 1e-9
    candidates = []
    for cand in (ell, -ell):
        im = cand.imag % two_pi
        if im < snap_tol or two_pi - im < snap_tol:
            im = 0.0
        elif abs(im - math.pi) < snap_tol:
            im = math.pi
        candidates.append(complex(cand.real, im))
    inside = [c for c in candidates if c.imag <= math.pi]
    if len(inside) == 1:
        return inside[0]
    inside.sort(key=lambda c: (-c.real, c.imag))
    return inside[0]


def complex_length_su2pair(g: Su2PairElement) -> tuple[float, float]:
    """Translation lengths (L1, L2) along the invariant pair of axes.

    tr left = +/- 2 cos((L1+L2)/2) and tr right = +/- 2 cos((-L1+L2)/2) with
    a common sign (the windowed representative may differ from the raw angle
    sum by 2 pi, which flips both cosines together).  Signed angles are read
    off when the two factors share an axis; otherwise both angles are taken
    in [0, pi] from the traces.  Normalization: L2 in [0, 2pi), L1 in
    (-pi, pi], and L1 >= 0 when L2 = 0.
    """
    axis_l, x = g.left.rotation_axis_angle()
    axis_r, y = g.right.rotation_axis_angle()
    dot = float(axis_l @ axis_r)
    if dot < -(1.0 - 1e-9):
        y = -y
    ell1 = x - y
    ell2 = x + y
    two_pi = 2.0 * math.pi
    ell2 %= two_pi
    ell1 = _wrap_half_open(ell1)
    if abs(ell2) < 1e-12 and ell1 < 0.0:
        ell1 = -ell1
    return ell1, ell2


def _wrap_half_open(t: float) -> float:
    """Wrap to (-pi, pi]."""
    two_pi = 2.0 * math.pi
    t = t % two_pi
    if t > math.pi:
        t -= two_pi
    return t


def sigma_fields(group: str) -> tuple[AlgebraVector, AlgebraVector]:
    """Standard-position rotational and translational Killing sections.

    Returns (sigma_theta, sigma_z) for the axis in standard position; these
    are the values of the parallel sections generating rotation around and
    translation along the axis.
    """
    half_i = 0.5 * np.array([[1j, 0], [0, -1j]])
    if group == SL2C:
        half_one = 0.5 * np.array([[1, 0], [0, -1]], dtype=complex)
        return AlgebraVector(SL2C, half_i), AlgebraVector(SL2C, half_one)
    if group == SU2XSU2:
        return (
            AlgebraVector(SU2XSU2, (half_i, half_i)),
            AlgebraVector(SU2XSU2, (half_i, -half_i)),
        )
    raise DomainError(f"no standard deformation sections for group {group!r}")
