"""Group presentations, words, representations and the cocycle calculus.

Words are case-sensitive letter strings over the declared generators; an
uppercase letter is the inverse of its lowercase generator.  Evaluation never
free-reduces, so word identity stays traceable in reports.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidRepresentation, UnknownGenerator
from .liecore import (
    AlgebraVector,
    GroupElement,
    SU2,
    SU2XSU2,
    ad_action,
    algebra_basis,
    algebra_dim,
    exp_algebra,
    group_identity,
    group_of,
)

# A word is a sequence of (generator index, exponent) with exponent +/-1.
Word = tuple[tuple[int, int], ...]

IDENTITY_WORD: Word = ()

# Acceptance tolerance for a representation read from a manifest.
TOL_REP = 1e-8


def parse_word(text: str, generators: tuple[str, ...] | list[str]) -> Word:
    """Parse a letter string; parse_word("") is the identity word."""
    index = {g: i for i, g in enumerate(generators)}
    letters = []
    for pos, ch in enumerate(text):
        low = ch.lower()
        if low not in index:
            raise UnknownGenerator(ch, pos)
        letters.append((index[low], 1 if ch == low else -1))
    return tuple(letters)


def word_text(word: Word, generators: tuple[str, ...]) -> str:
    return "".join(generators[i] if e > 0 else generators[i].upper() for i, e in word)


def word_inverse(word: Word) -> Word:
    return tuple((i, -e) for i, e in reversed(word))


def free_reduce(word: Word) -> Word:
    out: list[tuple[int, int]] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class Meridian:
    word: Word
    text: str
    edge_id: int
    cone_angle: float

    def __post_init__(self):
        if not (0.0 < self.cone_angle <= 2.0 * np.pi):
            raise DomainError(f"cone angle must lie in (0, 2*pi], got {self.cone_angle}")


@dataclass(frozen=True)
class Presentation:
    """Finite presentation with tagged meridian words."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    relator_texts: tuple[str, ...]
    meridians: tuple[Meridian, ...]

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if len(g) != 1 or not ("a" <= g <= "z"):
                raise DomainError(f"generators must be single lowercase letters, got {g!r}")
            if g in seen:
                raise DomainError(f"duplicate generator {g!r}")
            seen.add(g)

    @classmethod
    def from_strings(
        cls,
        generators,
        relators,
        meridians=(),
    ) -> "Presentation":
        """Build from letter strings; meridians are (text, edge_id, cone_angle)."""
        gens = tuple(generators)
        rel_words = tuple(parse_word(r, gens) for r in relators)
        mers = tuple(
            Meridian(parse_word(text, gens), text, int(edge_id), float(angle))
            for text, edge_id, angle in meridians
        )
        return cls(gens, rel_words, tuple(relators), mers)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.generators)


@dataclass(frozen=True, eq=False)
class Representation:
    """Group tag plus one image per generator."""

    group: str
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        for g in self.images:
            if group_of(g) != self.group:
                raise DomainError(f"image {g!r} does not live in {self.group}")

    def image(self, index: int, exponent: int) -> GroupElement:
        g = self.images[index]
        return g if exponent > 0 else g.inv()


def evaluate(rho: Representation, word: Word) -> GroupElement:
    """Product of generator images along the word; identity word maps to id."""
    out = group_identity(rho.group)
    for i, e in word:
        out = out.mul(rho.image(i, e))
    return out


def relator_residual(rho: Representation, pres: Presentation) -> float:
    """Max Frobenius distance of relator images from the identity."""
    res = 0.0
    for rel in pres.relators:
        res = max(res, evaluate(rho, rel).dist_to_identity())
    return res


def check_representation(rho: Representation, pres: Presentation, tol: float = TOL_REP) -> None:
    res = relator_residual(rho, pres)
    if res > tol:
        raise InvalidRepresentation(f"relator residual {res:.3e} exceeds {tol:.1e}")


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Assignment of an algebra vector to each generator."""

    group: str
    values: tuple[AlgebraVector, ...]

    def __post_init__(self):
        for v in self.values:
            if v.group != self.group:
                raise DomainError(f"cocycle value group {v.group} != {self.group}")

    @classmethod
    def from_coords(cls, group: str, vec: np.ndarray, n_generators: int) -> "Cocycle":
        d = algebra_dim(group)
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (d * n_generators,):
            raise DomainError(f"expected {d * n_generators} coordinates")
        vals = tuple(
            AlgebraVector.from_coords(group, vec[d * k : d * (k + 1)]) for k in range(n_generators)
        )
        return cls(group, vals)

    def coords(self) -> np.ndarray:
        return np.concatenate([v.coords() for v in self.values])


def coboundary(rho: Representation, v: AlgebraVector) -> Cocycle:
    """The coboundary of v: gamma -> v - Ad(rho(gamma)) v."""
    vals = tuple(v - ad_action(g, v) for g in rho.images)
    return Cocycle(rho.group, vals)


def extend_cocycle(rho: Representation, z: Cocycle, word: Word) -> AlgebraVector:
    """Extend generator values over a word by z(uv) = z(u) + Ad(rho(u)) z(v).

    Inverse letters use z(g^-1) = -Ad(rho(g)^-1) z(g).
    """
    if z.group != rho.group:
        raise DomainError(f"group mismatch: {z.group} vs {rho.group}")
    val = AlgebraVector.zero(rho.group)
    g = group_identity(rho.group)
    for i, e in word:
        if e > 0:
            letter_val = z.values[i]
            letter_img = rho.images[i]
        else:
            letter_img = rho.images[i].inv()
            letter_val = -ad_action(letter_img, z.values[i])
        val = val + ad_action(g, letter_val)
        g = g.mul(letter_img)
    return val


def relator_jacobian(rho: Representation, pres: Presentation) -> np.ndarray:
    """Linearized relations as a real matrix g^n -> g^{#relators}.

    Column (j, k) is the extension over each relator of the formal cocycle
    that places the k-th algebra basis vector on generator j and zero
    elsewhere; the kernel is the cocycle space.
    """
    check_representation(rho, pres)
    group = rho.group
    d = algebra_dim(group)
    n = len(pres.generators)
    basis = algebra_basis(group)
    rows = d * len(pres.relators)
    jac = np.zeros((rows, d * n))
    zero = AlgebraVector.zero(group)
    for j in range(n):
        for k, e in enumerate(basis):
            values = tuple(e if m == j else zero for m in range(n))
            z = Cocycle(group, values)
            col = np.concatenate(
                [extend_cocycle(rho, z, rel).coords() for rel in pres.relators]
            ) if pres.relators else np.zeros(0)
            jac[:, d * j + k] = col
    return jac


def deform(rho: Representation, z: Cocycle, t: float) -> Representation:
    """First-order deformation rho_t(gamma) = exp(t z(gamma)) rho(gamma)."""
    images = tuple(
        exp_algebra(v.scaled(t)).mul(g) for v, g in zip(z.values, rho.images)
    )
    return Representation(rho.group, images)


def split_representation(rho: Representation) -> tuple[Representation, Representation]:
    """Factor representations of an SU(2)xSU(2) representation."""
    if rho.group != SU2XSU2:
        raise DomainError("only SU2xSU2 representations split")
    left = Representation(SU2, tuple(g.left for g in rho.images))
    right = Representation(SU2, tuple(g.right for g in rho.images))
    return left, right


def split_cocycle(z: Cocycle) -> tuple[Cocycle, Cocycle]:
    if z.group != SU2XSU2:
        raise DomainError("only SU2xSU2 cocycles split")
    left = Cocycle(SU2, tuple(AlgebraVector(SU2, v.parts[0]) for v in z.values))
    right = Cocycle(SU2, tuple(AlgebraVector(SU2, v.parts[1]) for v in z.values))
    return left, right


def merge_cocycles(left: Cocycle, right: Cocycle) -> Cocycle:
    if left.group != SU2 or right.group != SU2:
        raise DomainError("expected two SU2 cocycles")
    values = tuple(
        AlgebraVector(SU2XSU2, (a.parts[0], b.parts[0]))
        for a, b in zip(left.values, right.values)
    )
    return Cocycle(SU2XSU2, values)
