"""Prime fibers: enumeration, classification, lines, charts.

Counts frozen here were produced by the enumeration itself and are kept as
regression anchors; the cross-cutting checks (Weil counts, line
containment, Jacobian ranks) are the independent part.
"""

import pytest

from dp5brauer.errors import DomainError, FiberInconsistencyError
from dp5brauer.fibers import (
    classify_fiber,
    enumerate_fiber,
    find_lines,
    jacobian_matrix_mod_p,
    minpoly_splitting_mod_p,
    rank_mod_p,
    singular_points,
    verify_chart,
)


def test_five_points_over_f2(m11, m25):
    assert len(enumerate_fiber(m11, 2)) == 5
    assert len(enumerate_fiber(m25, 2)) == 5


def test_f2_points_lie_on_the_insolubility_hyperplane(m11, m25):
    for m in (m11, m25):
        for point in enumerate_fiber(m, 2):
            value = m.hyperplane_value(m.insolubility_class, point)
            assert value % 2 == 0


def test_inert_fibers_are_interesting(m11):
    for p, count in ((2, 5), (3, 10), (7, 50)):
        report = classify_fiber(m11, p)
        assert report.classification == "interesting"
        assert report.point_count == count == p * p + 1
        assert report.lines == ()
        assert report.singular == ()


def test_split_fiber_at_23(m11):
    report = classify_fiber(m11, 23)
    assert report.classification == "split"
    assert report.point_count == 645 == 23 * 23 + 5 * 23 + 1
    assert len(report.lines) == 10
    assert report.singular == ()


def test_singular_fiber_at_the_ramified_prime(m11):
    report = classify_fiber(m11, 11)
    assert report.classification == "singular"
    assert report.point_count == 133
    assert report.singular == ((0, 0, 0, 0, 0, 1),)
    assert len(report.lines) == 1
    assert report.singular[0] in report.lines[0].points
    assert len(report.lines[0].points) == 12


def test_singular_fiber_of_the_second_fixture(m25):
    report = classify_fiber(m25, 5)
    assert report.classification == "singular"
    assert report.point_count == 31
    assert len(report.singular) == 1
    assert len(report.lines) == 1
    assert report.singular[0] in report.lines[0].points
    assert len(report.lines[0].points) == 6


def test_second_fixture_is_singular_at_seven_despite_splitting(m25):
    # the quintic has repeated roots mod 7, so no smooth-fiber prediction
    # applies; the fiber is genuinely singular
    assert minpoly_splitting_mod_p(m25.spec, 7) == "inseparable"
    report = classify_fiber(m25, 7)
    assert report.classification == "singular"
    assert len(report.singular) >= 1


def test_weil_counts_match_splitting(m11, m25):
    for m in (m11, m25):
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
            splitting = minpoly_splitting_mod_p(m.spec, p)
            if splitting == "inseparable":
                continue
            count = len(enumerate_fiber(m, p))
            if splitting == "separable-irreducible":
                assert count == p * p + 1, (m.name, p)
            elif splitting == "separable-split":
                assert count == p * p + 5 * p + 1, (m.name, p)
            else:
                raise AssertionError(f"unexpected splitting {splitting}")


def test_line_points_stay_in_the_fiber(m11):
    fiber = enumerate_fiber(m11, 23)
    fiber_set = set(fiber)
    lines = find_lines(m11, 23, fiber=fiber)
    assert len(lines) == 10
    for line in lines:
        assert len(line.points) == 24
        assert set(line.points) <= fiber_set
        assert set(line.span) <= set(line.points)


def test_smooth_points_have_jacobian_rank_three(m11):
    fiber = enumerate_fiber(m11, 7)
    for point in fiber:
        assert rank_mod_p(jacobian_matrix_mod_p(m11, 7, point), 7) == 3


def test_singular_point_drops_jacobian_rank(m11):
    singular = singular_points(m11, 11)
    assert singular == [(0, 0, 0, 0, 0, 1)]
    rank = rank_mod_p(jacobian_matrix_mod_p(m11, 11, singular[0]), 11)
    assert rank < 3


def test_chart_certificate_zeta11plus(m11):
    cert = verify_chart(m11)
    assert cert.prime == 11
    assert cert.identity_ok
    assert cert.injective
    assert cert.chart_size == 121
    assert len(cert.line_points) == 12
    assert cert.chart_size + len(cert.line_points) == 133
    assert set(cert.off_chart_points) == set(cert.line_points)


def test_chart_certificate_zeta25(m25):
    cert = verify_chart(m25)
    assert cert.prime == 5
    assert cert.identity_ok
    assert cert.injective
    assert cert.chart_size == 25
    assert len(cert.line_points) == 6
    assert set(cert.off_chart_points) == set(cert.line_points)


def test_chart_needs_a_fixture(m11):
    doc = m11.to_json_dict()
    from dp5brauer.model import DelPezzoModel

    stripped = DelPezzoModel.from_json_dict(doc)
    with pytest.raises(DomainError):
        verify_chart(stripped)


def test_enumeration_bound_is_enforced(m11):
    with pytest.raises(DomainError):
        enumerate_fiber(m11, 53)


def test_point_normalization_is_canonical(m11):
    fiber = enumerate_fiber(m11, 3)
    assert fiber == sorted(fiber)
    for point in fiber:
        lead = next(c for c in point if c)
        assert lead == 1
        assert all(0 <= c < 3 for c in point)
