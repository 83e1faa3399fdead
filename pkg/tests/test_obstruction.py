"""Obstruction engine: residue classes, invariant images, verdicts, censuses.

Every image computation has two internally independent routes (chart
values vs smooth-point values mod 11, residue formula vs Hensel chart
lifts mod 25); the agreement tests here are the package's strongest
correctness evidence.
"""

import random

import pytest

from dp5brauer.errors import DomainError, FiberInconsistencyError
from dp5brauer.obstruction import (
    CENSUS_11_TOTAL,
    CENSUS_25_TOTAL,
    census_11,
    census_25,
    census_11_smoothpath,
    fifth_power_classes,
    geometrically_irreducible,
    inv_image_11,
    inv_image_11_smoothpath,
    inv_image_25,
    inv_image_25_liftpath,
    locally_soluble,
    path_agreement_check,
    tangent_surjectivity_check,
    transformed_model_mod11,
    unramified_invariant_check,
    verdict,
)

HEADLINE_H = (0, 1, 0, -6, 0, 0)
OBSTRUCTED_25_H = (2, -15, 0, 10, 0, 0)


def test_fifth_power_classes_mod_11():
    group = fifth_power_classes(11)
    assert group.modulus == 11
    assert group.fifth_powers == (1, 10)
    assert len(group.classes) == 5
    assert group.class_of(1) == (1, 10)
    assert group.is_fifth_power(10)
    assert not group.is_fifth_power(2)
    union = sorted(v for cls in group.classes for v in cls)
    assert union == list(range(1, 11))


def test_fifth_power_classes_mod_25():
    group = fifth_power_classes(25)
    assert group.fifth_powers == (1, 7, 18, 24)
    assert len(group.classes) == 5
    assert all(len(cls) == 4 for cls in group.classes)
    assert sorted(group.units) == [v for v in range(1, 25) if v % 5]


def test_fifth_power_classes_degenerate_modulus():
    group = fifth_power_classes(7)
    assert len(group.classes) == 1
    with pytest.raises(DomainError):
        fifth_power_classes(10)
    with pytest.raises(DomainError):
        fifth_power_classes(4)


def test_constant_images_mod_11(m11):
    for lam in range(2, 10):
        image = inv_image_11(m11, (lam, 0, 0, 0, 0, 0))
        assert image.size == 1
        assert not image.contains_zero
    identity = inv_image_11(m11, (1, 0, 0, 0, 0, 0))
    assert identity.size == 1
    assert identity.contains_zero
    assert inv_image_11(m11, (10, 0, 0, 0, 0, 0)).contains_zero


def test_u5_dependence_forces_a_full_image(m11):
    image = inv_image_11(m11, (0, 0, 0, 0, 0, 1))
    assert image.full
    assert image.size == 5
    assert inv_image_11(m11, (3, 1, 4, 1, 5, 9)).full


def test_separable_quadratic_image_has_four_classes(m11):
    image = inv_image_11(m11, (2, 1, 0, 3, 0, 0))
    assert image.size == 4
    assert image.values == (1, 2, 4, 5, 6, 10)


def test_zero_form_is_rejected(m11):
    with pytest.raises(DomainError):
        inv_image_11(m11, (0, 0, 0, 0, 0, 0))
    with pytest.raises(DomainError):
        inv_image_11(m11, (11, 22, 0, 0, 0, 0))


def test_smoothpath_matches_chart_on_named_forms(m11):
    for hbar in ((1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1), HEADLINE_H):
        chart = inv_image_11(m11, hbar)
        smooth = inv_image_11_smoothpath(m11, hbar)
        assert chart.classes == smooth.classes


def test_smoothpath_matches_chart_on_seeded_forms(m11):
    rng = random.Random(1105)
    for _ in range(300):
        hbar = tuple(rng.randrange(11) for _ in range(6))
        if not any(hbar):
            continue
        chart = inv_image_11(m11, hbar)
        smooth = inv_image_11_smoothpath(m11, hbar)
        assert chart.classes == smooth.classes, hbar


def test_path_agreement_sample(m11):
    result = path_agreement_check(m11, sample=20000, seed=5)
    assert result["mode"] == "sampled"
    assert result["checked"] == 20000
    assert result["disagreements"] == ()


def test_path_agreement_exhaustive(m11):
    result = path_agreement_check(m11, sample=None)
    assert result["mode"] == "exhaustive"
    assert result["checked"] == CENSUS_11_TOTAL
    assert result["disagreements"] == ()


def test_obstructed_image_mod_25(m25):
    image = inv_image_25(m25, OBSTRUCTED_25_H)
    assert image.values == (2, 12, 22)
    assert image.size == 3
    assert not image.contains_zero


def test_fifth_power_scalar_is_invisible_mod_25(m25):
    image = inv_image_25(m25, (7, 0, 0, 0, 0, 0))
    assert image.size == 1
    assert image.contains_zero


def test_non_proportional_form_is_full_mod_25(m25):
    image = inv_image_25(m25, (0, 1, 0, 0, 0, 0))
    assert image.full
    assert image.certificate is not None
    assert "tangent_pairing" in image.certificate


def test_imprimitive_form_is_rejected_mod_25(m25):
    with pytest.raises(DomainError):
        inv_image_25(m25, (5, 0, 0, 10, 0, 0))


def test_liftpath_agrees_on_proportional_forms(m25):
    rng = random.Random(2505)
    for _ in range(40):
        lam = rng.choice([v for v in range(1, 25) if v % 5])
        h = (lam,) + tuple(5 * rng.randrange(5) for _ in range(5))
        formula = inv_image_25(m25, h)
        lifted = inv_image_25_liftpath(m25, h)
        assert formula.classes == lifted.classes, h
        assert formula.values == lifted.values, h


def test_liftpath_agrees_on_full_images(m25):
    rng = random.Random(2506)
    checked = 0
    while checked < 25:
        h = tuple(rng.randrange(25) for _ in range(6))
        reduced = tuple(c % 5 for c in h)
        if not any(reduced) or not any(reduced[1:]):
            continue
        checked += 1
        formula = inv_image_25(m25, h)
        lifted = inv_image_25_liftpath(m25, h)
        assert formula.full and lifted.full, h


def test_image_size_law_mod_25(m25):
    # sizes are 1, 3, or 5; full exactly off the u0-proportional locus
    rng = random.Random(2507)
    for _ in range(120):
        h = tuple(rng.randrange(25) for _ in range(6))
        reduced = tuple(c % 5 for c in h)
        if not any(reduced):
            continue
        image = inv_image_25(m25, h)
        assert image.size in (1, 3, 5)
        proportional = not any(reduced[1:])
        assert image.full == (not proportional)


def test_scaling_equivariance_mod_11(m11):
    group = fifth_power_classes(11)
    rng = random.Random(411)
    for _ in range(100):
        hbar = tuple(rng.randrange(11) for _ in range(6))
        if not any(hbar):
            continue
        lam = rng.randrange(1, 11)
        scaled = tuple(lam * c % 11 for c in hbar)
        base = inv_image_11(m11, hbar)
        image = inv_image_11(m11, scaled)
        expected = {
            group.class_of(pow(lam, -1, 11) * v % 11)
            for cls in base.classes
            for v in cls[:1]
        }
        assert set(image.classes) == expected
        assert image.contains_zero == (group.class_of(lam) in base.classes)


def test_scaling_equivariance_mod_25(m25):
    group = fifth_power_classes(25)
    rng = random.Random(425)
    for _ in range(100):
        h = tuple(rng.randrange(25) for _ in range(6))
        if not any(c % 5 for c in h):
            continue
        lam = rng.choice([v for v in range(1, 25) if v % 5])
        scaled = tuple(lam * c % 25 for c in h)
        base = inv_image_25(m25, h)
        image = inv_image_25(m25, scaled)
        expected = {
            group.class_of(pow(lam, -1, 25) * cls[0] % 25) for cls in base.classes
        }
        assert set(image.classes) == expected
        assert image.contains_zero == (group.class_of(lam) in base.classes)


def test_local_solubility(m11, m25):
    cert = locally_soluble(m11, HEADLINE_H)
    assert cert.soluble
    assert cert.failing_place is None
    bad = locally_soluble(m11, (0, 0, 1, 0, 0, 1))
    assert not bad.soluble
    assert bad.failing_place == 2
    assert locally_soluble(m25, OBSTRUCTED_25_H).soluble
    assert not locally_soluble(m25, (0, 0, 1, 1, 0, 0)).soluble


def test_solubility_rejects_imprimitive_forms(m11):
    with pytest.raises(DomainError):
        locally_soluble(m11, (2, 2, 2, 2, 2, 2))


def test_geometric_irreducibility(m11, m25):
    assert not geometrically_irreducible(m11, m11.l1)
    assert not geometrically_irreducible(m11, tuple(-4 * c for c in m11.l2))
    assert not geometrically_irreducible(m25, tuple(3 * c for c in m25.l2))
    assert geometrically_irreducible(m11, HEADLINE_H)


def test_verdict_obstruction_mod_25(m25):
    report = verdict(m25, OBSTRUCTED_25_H)
    assert report.verdict == "obstruction_order_5"
    assert report.solubility.soluble
    assert report.geometrically_irreducible
    assert report.images[5].values == (2, 12, 22)
    doc = report.to_json_dict()
    assert doc["verdict"] == "obstruction_order_5"
    assert doc["images"]["5"]["contains_zero"] is False
    assert "paper_claim_comparison" not in doc


def test_verdict_trivial_class(m11):
    assert verdict(m11, m11.l1).verdict == "trivial_brauer_class"


def test_verdict_insoluble(m25):
    report = verdict(m25, (0, 0, 1, 1, 0, 0))
    assert report.verdict == "no_adelic_points"
    assert report.to_json_dict()["failing_place"] == 2


def test_verdict_simple_obstruction_mod_11(m11):
    report = verdict(m11, (2, 11, 0, 0, 0, 0))
    assert report.verdict == "obstruction_order_5"


def test_headline_verdict_is_computed_not_copied(m11):
    report = verdict(m11, HEADLINE_H)
    assert report.verdict == "no_obstruction"
    cmp = report.claim_comparison
    assert cmp is not None
    assert cmp["published_verdict"] == "obstruction_order_5"
    assert cmp["computed_verdict"] == "no_obstruction"
    assert cmp["status"] == "flagged"
    assert cmp["chart_route_contains_zero"] is True
    assert cmp["smooth_route_contains_zero"] is True
    doc = report.to_json_dict()
    assert doc["paper_claim_comparison"]["status"] == "flagged"


def test_verdict_needs_a_fixture(m11):
    from dp5brauer.model import DelPezzoModel

    stripped = DelPezzoModel.from_json_dict(m11.to_json_dict())
    with pytest.raises(DomainError):
        verdict(stripped, HEADLINE_H)


def test_census_11_counts(m11):
    result = census_11(m11, jobs=1)
    assert result["total"] == CENSUS_11_TOTAL == 1771560
    assert result["obstructing"] == 228
    assert result["breakdown"] == {"constant": 8, "separable_quadratic": 220}
    assert result["formula_breakdown"] == result["breakdown"]
    assert len(result["obstructing_classes"]) == 228
    assert all(h[5] == 0 for h in result["obstructing_classes"])


def test_census_11_is_worker_independent(m11):
    serial = census_11(m11, jobs=1)
    parallel = census_11(m11, jobs=2)
    assert parallel["workers"] == 2
    assert parallel["obstructing"] == serial["obstructing"] == 228
    assert parallel["obstructing_classes"] == serial["obstructing_classes"]


def test_census_25_counts(m25):
    result = census_25(m25)
    assert result["total"] == CENSUS_25_TOTAL == 244125000
    assert result["obstructing"] == 176
    assert result["breakdown"] == {"constant": 16, "image_size_3": 160}
    assert result["kappa_image_sizes"] == {1: 1, 3: 20, 5: 3104}


def test_census_25_sampled_brute_force_agrees(m25):
    result = census_25(m25, sample_check=50, seed=9)
    assert result["sampled_full_agreement"] == 50
    assert result["obstructing"] == 176


def test_tangent_surjectivity(m25):
    result = tangent_surjectivity_check(m25)
    assert result["directions"] == 15620
    assert result["surjective"]
    assert result["failures"] == ()


def test_census_is_coordinate_free(m11):
    rng = random.Random(77)
    from dp5brauer.obstruction import _random_invertible_mod11

    matrix = _random_invertible_mod11(rng)
    moved = transformed_model_mod11(m11, matrix)
    assert moved.name == "zeta11plus+gl6"
    assert census_11_smoothpath(moved)["obstructing"] == 228


def test_unramified_invariants(m11):
    inert = unramified_invariant_check(m11, 7)
    assert inert["splitting"] == "inert"
    assert inert["line_vanishing_points"] == 0
    assert inert["invariant_trivial"]
    split = unramified_invariant_check(m11, 23)
    assert split["splitting"] == "split"
    assert split["invariant_trivial"]
    with pytest.raises(DomainError):
        unramified_invariant_check(m11, 11)
