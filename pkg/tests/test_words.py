import cmath
import math

import numpy as np
import pytest

from conerig.errors import DomainError, InvalidRepresentation, UnknownGenerator
from conerig.liecore import (
    AlgebraVector,
    Sl2cElement,
    Su2Element,
    ad_action,
    algebra_basis,
    exp_algebra,
    sigma_fields,
)
from conerig.words import (
    Cocycle,
    Presentation,
    Representation,
    coboundary,
    deform,
    evaluate,
    extend_cocycle,
    free_reduce,
    parse_word,
    relator_jacobian,
    relator_residual,
    word_inverse,
)

GENS = ("a", "b")


def torus_rep(eta=cmath.exp(0.3 + 0.7j), xi=cmath.exp(1j * math.pi / 4)):
    return Representation(
        "SL2C",
        (Sl2cElement(np.diag([eta, 1 / eta])), Sl2cElement(np.diag([xi, 1 / xi]))),
    )


def torus_pres():
    return Presentation.from_strings(["a", "b"], ["abAB"], [("b", 0, math.pi / 2)])


def random_rep(group, n, rng):
    d = len(algebra_basis(group))
    images = tuple(
        exp_algebra(AlgebraVector.from_coords(group, rng.standard_normal(d) / d))
        for _ in range(n)
    )
    return Representation(group, images)


class TestParseWord:
    def test_commutator(self):
        assert parse_word("abAB", GENS) == ((0, 1), (1, 1), (0, -1), (1, -1))

    def test_empty_is_identity(self):
        assert parse_word("", GENS) == ()

    def test_unknown_generator(self):
        with pytest.raises(UnknownGenerator) as exc:
            parse_word("axB", GENS)
        assert exc.value.char == "x"
        assert exc.value.position == 1

    def test_free_reduce(self):
        w = parse_word("abBAab", GENS)
        assert free_reduce(w) == parse_word("ab", GENS)


class TestPresentation:
    def test_duplicate_generator_rejected(self):
        with pytest.raises(DomainError):
            Presentation.from_strings(["a", "a"], [])

    def test_uppercase_generator_rejected(self):
        with pytest.raises(DomainError):
            Presentation.from_strings(["A"], [])

    def test_meridian_angle_range(self):
        with pytest.raises(DomainError):
            Presentation.from_strings(["a"], [], [("a", 0, 7.0)])


class TestEvaluate:
    def test_commutator_at_torus_rep(self):
        rho = torus_rep()
        pres = torus_pres()
        assert evaluate(rho, pres.relators[0]).dist_to_identity() < 1e-12

    def test_inverse_word(self):
        rng = np.random.default_rng(1)
        rho = random_rep("SL2C", 2, rng)
        w = parse_word("abaBAb", GENS)
        g = evaluate(rho, w).mul(evaluate(rho, word_inverse(w)))
        assert g.dist_to_identity() < 1e-12

    def test_product_of_generators(self):
        rng = np.random.default_rng(2)
        rho = random_rep("SU2", 2, rng)
        g = evaluate(rho, parse_word("ab", GENS))
        assert g.dist(rho.images[0].mul(rho.images[1])) < 1e-14

    def test_homomorphism_on_concatenation(self):
        rng = np.random.default_rng(3)
        for group in ("SL2C", "SU2", "SU2xSU2"):
            rho = random_rep(group, 2, rng)
            u = parse_word("aBab", GENS)
            v = parse_word("bbA", GENS)
            assert evaluate(rho, u + v).dist(evaluate(rho, u).mul(evaluate(rho, v))) < 1e-12


class TestRelatorResidual:
    def test_valid_torus(self):
        assert relator_residual(torus_rep(), torus_pres()) < 1e-12

    def test_perturbed_torus(self):
        xi = cmath.exp(1j * math.pi / 4)
        rho = Representation(
            "SL2C",
            (
                torus_rep().images[0],
                Sl2cElement(np.diag([xi * (1 + 1e-3), 1 / (xi * (1 + 1e-3))])).mul(
                    exp_algebra(AlgebraVector.from_coords("SL2C", [0, 0, 1e-3, 0, 0, 0]))
                ),
            ),
        )
        res = relator_residual(rho, torus_pres())
        assert 1e-5 < res < 1e-1

    def test_free_group_residual_zero(self):
        pres = Presentation.from_strings(["a", "b"], [])
        rng = np.random.default_rng(4)
        assert relator_residual(random_rep("SL2C", 2, rng), pres) == 0.0


class TestExtendCocycle:
    def test_coboundary_formula(self):
        rng = np.random.default_rng(5)
        for group in ("SL2C", "SU2", "SU2xSU2"):
            rho = random_rep(group, 2, rng)
            d = len(algebra_basis(group))
            v = AlgebraVector.from_coords(group, rng.standard_normal(d))
            z = coboundary(rho, v)
            for text in ("a", "ab", "aBBa", "bAbA"):
                w = parse_word(text, GENS)
                expected = v - ad_action(evaluate(rho, w), v)
                assert (extend_cocycle(rho, z, w) - expected).norm() < 1e-12

    def test_identity_word(self):
        rng = np.random.default_rng(6)
        rho = random_rep("SU2", 2, rng)
        z = Cocycle("SU2", tuple(algebra_basis("SU2")[:2]))
        assert extend_cocycle(rho, z, ()).norm() == 0.0

    def test_torus_angle_cocycle_on_meridian(self):
        alpha = math.pi / 2
        rho = torus_rep()
        s_theta, _ = sigma_fields("SL2C")
        z = Cocycle("SL2C", (AlgebraVector.zero("SL2C"), s_theta.scaled(alpha)))
        got = extend_cocycle(rho, z, parse_word("b", GENS))
        assert np.allclose(got.parts[0], (alpha / 2) * np.diag([1j, -1j]))

    def test_additivity(self):
        rng = np.random.default_rng(7)
        for group in ("SL2C", "SU2"):
            rho = random_rep(group, 2, rng)
            d = len(algebra_basis(group))
            z = Cocycle.from_coords(group, rng.standard_normal(2 * d), 2)
            u = parse_word("abA", GENS)
            v = parse_word("Bab", GENS)
            lhs = extend_cocycle(rho, z, u + v)
            rhs = extend_cocycle(rho, z, u) + ad_action(
                evaluate(rho, u), extend_cocycle(rho, z, v)
            )
            assert (lhs - rhs).norm() < 1e-12


class TestRelatorJacobian:
    def test_torus_kernel_dimension(self):
        jac = relator_jacobian(torus_rep(), torus_pres())
        assert jac.shape == (6, 12)
        s = np.linalg.svd(jac, compute_uv=False)
        assert int((s > 1e-9 * s[0]).sum()) == 4  # kernel has real dimension 8

    def test_free_group_empty(self):
        pres = Presentation.from_strings(["a", "b"], [])
        rng = np.random.default_rng(8)
        jac = relator_jacobian(random_rep("SU2", 2, rng), pres)
        assert jac.shape == (0, 6)

    def test_invalid_representation_rejected(self):
        pres = torus_pres()
        rng = np.random.default_rng(9)
        with pytest.raises(InvalidRepresentation):
            relator_jacobian(random_rep("SL2C", 2, rng), pres)


class TestIntegrability:
    @pytest.mark.parametrize(
        "fixture_name", ["torus.json", "pants.json", "genus2-su2.json", "cusped.json"]
    )
    def test_first_order_deformations_are_second_order_flat(self, fixture_name):
        from conerig.cohomology import cocycle_space
        from conerig.manifest import fixture_path, load_manifest

        man = load_manifest(fixture_path(fixture_name))
        rho, pres = man.representation, man.presentation
        base = relator_residual(rho, pres)
        cocycles = cocycle_space(rho, pres)
        ts = (1e-2, 1e-3, 1e-4)
        for z in cocycles[:3]:
            residuals = [max(relator_residual(deform(rho, z, t), pres), base, 1e-300) for t in ts]
            for (t1, r1), (t2, r2) in zip(zip(ts, residuals), list(zip(ts, residuals))[1:]):
                if r2 < 1e-13:  # flat direction, already at rounding noise
                    continue
                slope = math.log(r1 / r2) / math.log(t1 / t2)
                assert slope > 1.9
