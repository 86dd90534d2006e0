import math

import numpy as np
import pytest

from conerig.cohomology import (
    BoundaryComponent,
    FLAG_ABELIAN,
    VERDICT_DEFICIENT,
    VERDICT_RIGID,
    coboundary_space,
    cocycle_space,
    dimension_audit,
    h1_basis,
    rigidity_test,
    standard_torus_cocycles,
    trace_differential,
    z0_space,
)
from conerig.liecore import (
    AlgebraVector,
    Sl2cElement,
    algebra_basis,
    ad_action,
    complex_length_sl2c,
    exp_algebra,
)
from conerig.manifest import fixture_path, load_manifest
from conerig.words import (
    Cocycle,
    Presentation,
    Representation,
    coboundary,
    evaluate,
    parse_word,
    split_representation,
)


def load(name):
    m = load_manifest(fixture_path(name))
    return m.representation, m.presentation, m


@pytest.fixture(scope="module")
def torus():
    return load("torus.json")


@pytest.fixture(scope="module")
def pants():
    return load("pants.json")


@pytest.fixture(scope="module")
def genus2():
    return load("genus2-su2.json")


@pytest.fixture(scope="module")
def cusped():
    return load("cusped.json")


def random_group_element(group, rng):
    d = len(algebra_basis(group))
    return exp_algebra(AlgebraVector.from_coords(group, rng.standard_normal(d) / d))


class TestZ0:
    def test_torus_centralizer(self, torus):
        rho, pres, _ = torus
        assert len(z0_space(rho, pres)) == 2  # the diagonal complex line

    def test_irreducible_surface_group(self, genus2):
        rho, pres, _ = genus2
        assert len(z0_space(rho, pres)) == 0

    def test_trivial_representation(self):
        pres = Presentation.from_strings(["a", "b"], ["abAB"])
        rho = Representation(
            "SL2C", (Sl2cElement(np.eye(2)), Sl2cElement(np.eye(2)))
        )
        assert len(z0_space(rho, pres)) == 6


class TestCocycleSpaces:
    def test_torus_z1(self, torus):
        rho, pres, _ = torus
        assert len(cocycle_space(rho, pres)) == 8  # complex dimension 4

    def test_genus2_z1(self, genus2):
        rho, pres, _ = genus2
        assert len(cocycle_space(rho, pres)) == 9

    def test_pants_z1(self, pants):
        rho, pres, _ = pants
        assert len(cocycle_space(rho, pres)) == 12  # complex dimension 6

    def test_torus_b1(self, torus):
        rho, pres, _ = torus
        assert len(coboundary_space(rho, pres)) == 4  # complex dimension 2

    def test_irreducible_b1_is_full(self, pants):
        rho, pres, _ = pants
        assert len(coboundary_space(rho, pres)) == 6

    def test_trivial_rep_b1_vanishes(self):
        pres = Presentation.from_strings(["a", "b"], ["abAB"])
        rho = Representation("SL2C", (Sl2cElement(np.eye(2)), Sl2cElement(np.eye(2))))
        assert len(coboundary_space(rho, pres)) == 0

    def test_kernel_elements_satisfy_relators(self, cusped):
        from conerig.words import extend_cocycle

        rho, pres, _ = cusped
        for z in cocycle_space(rho, pres):
            for rel in pres.relators:
                assert extend_cocycle(rho, z, rel).norm() < 1e-9


class TestH1:
    def test_torus_dims(self, torus):
        rho, pres, _ = torus
        rep = h1_basis(rho, pres)
        assert (rep.dim_Z0, rep.dim_Z1, rep.dim_B1, rep.dim_H1) == (2, 8, 4, 4)
        assert (
            rep.dim_Z0_complex,
            rep.dim_Z1_complex,
            rep.dim_B1_complex,
            rep.dim_H1_complex,
        ) == (1, 4, 2, 2)

    def test_genus2_dims(self, genus2):
        rho, pres, _ = genus2
        rep = h1_basis(rho, pres)
        assert (rep.dim_Z1, rep.dim_B1, rep.dim_H1) == (9, 3, 6)

    def test_cusped_dims(self, cusped):
        rho, pres, _ = cusped
        rep = h1_basis(rho, pres)
        assert rep.dim_H1_complex == 1

    def test_basis_is_orthonormal_and_off_b1(self, pants):
        rho, pres, _ = pants
        rep = h1_basis(rho, pres)
        basis = np.column_stack([z.coords() for z in rep.basis_H1])
        gram = basis.T @ basis
        assert np.linalg.norm(gram - np.eye(rep.dim_H1)) < 1e-10
        b1 = np.column_stack([z.coords() for z in coboundary_space(rho, pres)])
        assert np.linalg.norm(b1.T @ basis) < 1e-10

    def test_complex_structure_invariance(self, torus):
        # J z stays in the kernel whenever z does
        from conerig.words import relator_jacobian

        rho, pres, _ = torus
        jac = relator_jacobian(rho, pres)
        for z in cocycle_space(rho, pres):
            jz = np.concatenate([v.j().coords() for v in z.values])
            assert np.linalg.norm(jac @ jz) < 1e-10


class TestTraceDifferential:
    def test_torus_closed_forms(self, torus):
        rho, pres, _ = torus
        alpha = pres.meridians[0].cone_angle
        xi = rho.images[1].mat[0, 0]
        ell = complex_length_sl2c(rho.images[0])
        cocs = standard_torus_cocycles("SL2C", alpha, ell.imag, ell.real)
        mu = pres.meridians[0].word
        assert trace_differential(rho, cocs["ang"], mu) == pytest.approx(
            (1j * alpha / 2) * (xi - 1 / xi), abs=1e-12
        )
        assert trace_differential(rho, cocs["shr"], mu) == pytest.approx(
            (alpha / 2) * (xi - 1 / xi), abs=1e-12
        )
        assert abs(trace_differential(rho, cocs["tws"], mu)) < 1e-12
        assert abs(trace_differential(rho, cocs["len"], mu)) < 1e-12

    def test_spherical_pair_closed_forms(self):
        rho, pres, _ = load("spherical-torus.json")
        alpha = pres.meridians[0].cone_angle
        xi = rho.images[1].left.mat[0, 0]
        cocs = standard_torus_cocycles("SU2xSU2", alpha, 0.0, 1.0)
        mu = pres.meridians[0].word
        dT_ang = trace_differential(rho, cocs["ang"], mu)
        dT_shr = trace_differential(rho, cocs["shr"], mu)
        assert dT_ang == pytest.approx((-alpha * xi.imag, -alpha * xi.imag), abs=1e-12)
        assert dT_shr == pytest.approx((-alpha * xi.imag, alpha * xi.imag), abs=1e-12)

    def test_coboundaries_are_killed(self, cusped):
        rho, pres, _ = cusped
        rng = np.random.default_rng(12)
        for _ in range(50):
            v = AlgebraVector.from_coords("SL2C", rng.standard_normal(6))
            z = coboundary(rho, v)
            for text in ("a", "ab", "bAb"):
                w = parse_word(text, pres.generators)
                assert abs(trace_differential(rho, z, w)) < 1e-10


class TestRigidity:
    def test_torus_rank_deficient(self, torus):
        rho, pres, _ = torus
        rep = rigidity_test(rho, pres)
        assert rep.verdict == VERDICT_DEFICIENT
        assert rep.rank == 1
        assert rep.dim_h1 == 2

    def test_pants_locally_rigid(self, pants):
        rho, pres, _ = pants
        rep = rigidity_test(rho, pres)
        assert rep.verdict == VERDICT_RIGID
        assert rep.rank == 3 and rep.meridian_count == 3

    def test_conjugated_pants_identical_integers(self, pants):
        rho, pres, _ = pants
        rho2, pres2, _ = load("pants-conjugated.json")
        a, b = rigidity_test(rho, pres), rigidity_test(rho2, pres2)
        assert (a.rank, a.dim_h1, a.verdict) == (b.rank, b.dim_h1, b.verdict)

    def test_abelian_pair_flagged(self):
        rho, pres, _ = load("abelian-torus.json")
        rep = rigidity_test(rho, pres)
        assert FLAG_ABELIAN in rep.degenerate_flags
        assert rep.verdict == VERDICT_DEFICIENT

    def test_cusped_locally_rigid(self, cusped):
        rho, pres, _ = cusped
        rep = rigidity_test(rho, pres)
        assert rep.verdict == VERDICT_RIGID
        assert rep.meridian_count == 1 and rep.rank == 1


class TestInvariants:
    def test_conjugation_equivariance(self, cusped):
        rho, pres, _ = cusped
        rng = np.random.default_rng(21)
        g = random_group_element("SL2C", rng)
        rho_c = Representation(
            "SL2C", tuple(g.mul(img).mul(g.inv()) for img in rho.images)
        )
        rep = h1_basis(rho, pres)
        rep_c = h1_basis(rho_c, pres)
        assert rep.dims_dict() == rep_c.dims_dict()
        assert rigidity_test(rho, pres).rank == rigidity_test(rho_c, pres).rank
        # transported cocycles give the same trace differentials
        mu = pres.meridians[0].word
        for z in rep.basis_H1[:2]:
            z_c = Cocycle("SL2C", tuple(ad_action(g, v) for v in z.values))
            assert abs(
                trace_differential(rho, z, mu) - trace_differential(rho_c, z_c, mu)
            ) < 1e-9

    def test_rank_stable_under_tiny_perturbation(self, pants):
        rho, pres, _ = pants
        rng = np.random.default_rng(31)
        images = tuple(
            exp_algebra(
                AlgebraVector.from_coords("SL2C", 1e-12 * rng.standard_normal(6))
            ).mul(img)
            for img in rho.images
        )
        rho_p = Representation("SL2C", images)
        a, b = h1_basis(rho, pres), h1_basis(rho_p, pres)
        assert a.dims_dict() == b.dims_dict()
        assert rigidity_test(rho, pres).rank == rigidity_test(rho_p, pres).rank


class TestDimensionAudit:
    def test_cusped_identities(self, cusped):
        rho, pres, man = cusped
        audit = dimension_audit(rho, pres, man.boundary)
        assert audit.all_hold
        by_name = {i.name.split(":")[0]: i for i in audit.identities}
        half = by_name["half_dimension"]
        assert (half.lhs, half.rhs) == (1.0, 1.0)
        count = by_name["cocycle_count"]
        assert (count.lhs, count.rhs) == (4.0, 4.0)

    def test_closed_input_skipped(self, genus2):
        rho, pres, man = genus2
        audit = dimension_audit(rho, pres, man.boundary)
        assert audit.skipped
        assert any("skipped" in n for n in audit.notices)

    def test_boundary_surface_alone_fails_half_dimension(self, torus):
        # the bare boundary torus is not an interior: the identity must fail
        rho, pres, man = torus
        audit = dimension_audit(rho, pres, man.boundary)
        assert not audit.skipped
        half = [i for i in audit.identities if i.name.startswith("half_dimension")][0]
        assert not half.holds

    def test_genus2_boundary_dimension(self, genus2):
        # used as a boundary datum, the genus-2 surface contributes dim 6 over R
        rho, pres, man = genus2
        comp = BoundaryComponent(2, ("a", "b", "c", "d"))
        audit = dimension_audit(rho, pres, (comp,))
        assert audit.boundary_dims[0]["dim_H1"] == 6
        half = [i for i in audit.identities if i.name.startswith("half_dimension")][0]
        assert half.rhs == 3.0  # audit expects a 3-dimensional interior over R
