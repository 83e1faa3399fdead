"""Order-5 invariant images, local solubility, verdicts, and the censuses.

The affine surfaces of interest are complements U_h = X minus {h = 0} for a
primitive integral linear form h.  The order-5 class on U_h evaluates at a
local point through the fifth-power residue class of the unit l1/h, so at
every prime where the splitting field is unramified the invariant vanishes
and the whole computation concentrates at the single ramified prime of each
fixture.  There the residue of a local point determines the invariant, and
the image of the invariant map becomes a finite, exact computation over the
chart of the singular fiber.

Two independent routes are kept for the conductor-11 model: the chart route
evaluates the reduced form as a polynomial on the affine plane, while the
smooth-point route works directly from the enumerated fiber.  They must
agree everywhere; ``path_agreement_check`` verifies this wholesale.
"""

from __future__ import annotations

import math
import os
import random
import time
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from itertools import product

import numpy as np

from .errors import DomainError, FiberInconsistencyError
from .fibers import (
    enumerate_fiber,
    jacobian_matrix_mod_p,
    minpoly_splitting_mod_p,
    rank_mod_p,
    singular_points,
)
from .model import U_VARS, DelPezzoModel, fixture
from .multipoly import MultiPoly

U0_FORM = (1, 0, 0, 0, 0, 0)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ResidueClassGroup:
    """Units modulo q, the subgroup of fifth powers, and its cosets.

    The cosets are listed with the identity class first, the rest ordered by
    their least element; every class is an ascending tuple of residues.
    """

    modulus: int
    units: tuple
    fifth_powers: tuple
    classes: tuple

    def class_of(self, value):
        r = value % self.modulus
        if math.gcd(r, self.modulus) != 1:
            raise DomainError(f"{value} is not a unit modulo {self.modulus}")
        for cls in self.classes:
            if r in cls:
                return cls
        raise AssertionError("unit missed every coset")

    def class_index(self, value):
        return self.classes.index(self.class_of(value))

    def is_fifth_power(self, value):
        return value % self.modulus in self.fifth_powers


def fifth_power_classes(q):
    """Coset decomposition of the units mod q by fifth powers, q prime or 25."""
    if q != 25 and not _is_prime(q):
        raise DomainError(f"unsupported modulus {q}: need a prime or 25")
    units = tuple(a for a in range(1, q) if math.gcd(a, q) == 1)
    fifth = tuple(sorted({pow(a, 5, q) for a in units}))
    fifth_set = set(fifth)
    seen = set()
    classes = []
    for u in units:
        if u in seen:
            continue
        cls = tuple(sorted((u * f) % q for f in fifth_set))
        seen.update(cls)
        classes.append(cls)
    classes.sort(key=lambda cls: (1 not in cls, cls[0]))
    return ResidueClassGroup(q, units, fifth, tuple(classes))


@dataclass(frozen=True)
class InvariantImage:
    """Subset of the fifth-power cosets attained by the invariant map.

    ``values`` records the attained unit values of h/l1 when the image was
    computed by evaluation; a full image certified without evaluation keeps
    ``values = None``.  ``certificate`` optionally carries the witness for a
    fullness claim.
    """

    prime: int
    modulus: int
    classes: tuple
    values: tuple = None
    reason: str = ""
    certificate: dict = None

    @property
    def size(self):
        return len(self.classes)

    @property
    def full(self):
        return len(self.classes) == 5

    @property
    def contains_zero(self):
        return any(1 in cls for cls in self.classes)

    def to_json_dict(self):
        doc = {
            "prime": self.prime,
            "modulus": self.modulus,
            "classes": [list(cls) for cls in self.classes],
            "contains_zero": self.contains_zero,
            "size": self.size,
            "full": self.full,
            "reason": self.reason,
        }
        if self.values is not None:
            doc["values"] = list(self.values)
        if self.certificate is not None:
            doc["certificate"] = self.certificate
        return doc


def _reduce_form(h, modulus):
    if len(h) != 6:
        raise DomainError("a hyperplane form needs six coefficients")
    reduced = tuple(int(c) % modulus for c in h)
    if not any(reduced):
        raise DomainError(f"form vanishes identically modulo {modulus}")
    return reduced


def _require_fixture_chart(model, modulus):
    if model.modulus != modulus:
        raise DomainError(
            f"this invariant computation needs the conductor model with modulus {modulus}"
        )
    if tuple(c % modulus for c in model.l1) != U0_FORM:
        raise DomainError(f"chart evaluation needs l1 = u0 modulo {modulus}")


def _classes_subset(group, class_set):
    # keep the group's canonical ordering on any subset
    return tuple(cls for cls in group.classes if cls in class_set)


def _inverted_value_classes(group, values):
    q = group.modulus
    return _classes_subset(group, {group.class_of(pow(v, -1, q)) for v in values})


def inv_image_11(model, hbar):
    """Invariant image at 11 computed through the affine chart.

    A form with nonzero u5 coefficient restricts to a genuinely cubic chart
    polynomial whose values cover every coset, so the image is full without
    evaluation.  Otherwise the values of the reduced form on the chart are
    exactly the unit values of h/l1, and the image is the coset set of their
    inverses.
    """
    group = fifth_power_classes(11)
    _require_fixture_chart(model, 11)
    h = _reduce_form(hbar, 11)
    if h[5]:
        return InvariantImage(
            11, 11, group.classes, None, "u5 coefficient nonzero: chart values cover every coset"
        )
    h0, h1, h2, h3, h4 = h[:5]
    values = set()
    for y in range(11):
        row = (h0 + h1 * y + h3 * y * y) % 11
        step = (h2 + h4 * y) % 11
        for z in range(11):
            values.add((row + step * z) % 11)
    values.discard(0)
    return InvariantImage(
        11, 11, _inverted_value_classes(group, values), tuple(sorted(values)), "chart values"
    )


_FIBER_CACHE = {}


def _model_cache_key(model, p):
    quad = tuple(tuple(int(c) for c in vec) for vec in model.quadric_vectors())
    return (p, quad, tuple(model.l1))


def _ramified_fiber_data(model):
    """Enumerated mod-p fiber with smoothness flags and l1 values, cached."""
    p = model.ramified_prime
    if p is None:
        raise DomainError("model carries no ramified-prime metadata")
    key = _model_cache_key(model, p)
    data = _FIBER_CACHE.get(key)
    if data is None:
        points = enumerate_fiber(model, p)
        singular = set(singular_points(model, p, points))
        smooth = tuple(pt not in singular for pt in points)
        l1_values = tuple(model.hyperplane_value(model.l1, pt) % p for pt in points)
        data = (p, points, smooth, l1_values)
        _FIBER_CACHE[key] = data
    return data


def inv_image_11_smoothpath(model, hbar):
    """Invariant image at 11 from unit values of l1/h at smooth fiber points.

    Independent of the chart route: the fiber is enumerated projectively and
    the values are taken pointwise.  A smooth point where l1 vanishes but h
    does not lifts to local points on which l1/h runs through every residue
    valuation, so such a point certifies a full image.
    """
    group = fifth_power_classes(11)
    if model.modulus != 11:
        raise DomainError("this invariant computation needs a modulus-11 model")
    h = _reduce_form(hbar, 11)
    p, points, smooth, l1_values = _ramified_fiber_data(model)
    values = set()
    for pt, ok, lv in zip(points, smooth, l1_values):
        if not ok:
            continue
        hv = model.hyperplane_value(h, pt) % p
        if lv == 0:
            if hv != 0:
                return InvariantImage(
                    11,
                    11,
                    group.classes,
                    None,
                    "smooth point with l1 = 0 and h a unit",
                    {"point": list(pt)},
                )
        elif hv != 0:
            values.add((hv * pow(lv, -1, p)) % p)
    return InvariantImage(
        11, 11, _inverted_value_classes(group, values), tuple(sorted(values)), "smooth point values"
    )


# ---------------------------------------------------------------------------
# conductor-25 model: invariants modulo 25


def _chart_point_mod5(y, z):
    return (1, y, z, (y * y) % 5, (y * z) % 5, (y ** 3 + z * z) % 5)


def _tangent_gradient(h, y, z):
    # pairings of h with the two chart tangent directions at (y, z)
    gy = (h[1] + 2 * y * h[3] + z * h[4] + 3 * y * y * h[5]) % 5
    gz = (h[2] + y * h[4] + 2 * z * h[5]) % 5
    return gy, gz


def _tangent_certificate(h25):
    for y in range(5):
        for z in range(5):
            gy, gz = _tangent_gradient(h25, y, z)
            if gy or gz:
                return {
                    "point": list(_chart_point_mod5(y, z)),
                    "tangent_pairing": [gy, gz],
                }
    raise FiberInconsistencyError("no chart point certifies tangent surjectivity")


def inv_image_25(model, h):
    """Invariant image of the conductor-25 model, computed modulo 25.

    When h mod 5 is not proportional to u0 the image is full: some chart
    point pairs non-trivially with h on its two-dimensional tangent space,
    so the 25 lifts of that point already realize every value in one unit
    residue class mod 5, one from each coset.  Otherwise h = lam*u0 + 5*k
    with k linear over F5, the value of h/l1 at a local point depends only
    on its residue, and the image is the coset set of the inverses of
    lam + 5*kappa for kappa in the chart image of k.
    """
    group = fifth_power_classes(25)
    _require_fixture_chart(model, 25)
    h25 = tuple(int(c) % 25 for c in h)
    if all(c % 5 == 0 for c in h25):
        raise DomainError("form must be primitive modulo 5")
    if any(h25[i] % 5 for i in range(1, 6)):
        cert = _tangent_certificate(h25)
        return InvariantImage(
            5, 25, group.classes, None, "tangent pairing nonzero at a chart point", cert
        )
    lam = h25[0]
    coeffs = tuple(h25[i] // 5 for i in range(1, 6))
    kappas = set()
    for y in range(5):
        for z in range(5):
            pt = _chart_point_mod5(y, z)
            kappas.add(sum(c * x for c, x in zip(coeffs, pt[1:])) % 5)
    values = tuple(sorted((lam + 5 * k) % 25 for k in kappas))
    return InvariantImage(
        5, 25, _inverted_value_classes(group, values), values, "values determined by the residue"
    )


def _solve_lift_space(jac_rows, rhs):
    """Solutions w in F5^5 of J w = rhs, as (particular, kernel basis)."""
    rows = [[jac_rows[i][j] % 5 for j in range(1, 6)] + [rhs[i] % 5] for i in range(5)]
    pivots = []
    r = 0
    for c in range(5):
        pivot = next((i for i in range(r, 5) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, 5)
        rows[r] = [(x * inv) % 5 for x in rows[r]]
        for i in range(5):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % 5 for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, 5):
        if rows[i][5]:
            return None
    particular = [0] * 5
    for i, c in enumerate(pivots):
        particular[c] = rows[i][5]
    free = [c for c in range(5) if c not in pivots]
    basis = []
    for c in free:
        vec = [0] * 5
        vec[c] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-rows[i][c]) % 5
        basis.append(tuple(vec))
    return tuple(particular), tuple(basis)


_LIFT_CACHE = {}


def _chart_lift_points(model):
    """All points of the model over Z/25 lying above the mod-5 chart, u0 = 1."""
    key = _model_cache_key(model, 25)
    cached = _LIFT_CACHE.get(key)
    if cached is not None:
        return cached
    lifts = []
    for y in range(5):
        for z in range(5):
            x = _chart_point_mod5(y, z)
            qv = model.evaluate_quadrics(x)
            rhs = tuple((-(q % 25) // 5) % 5 for q in qv)
            if any(q % 5 for q in qv):
                raise FiberInconsistencyError("chart point leaves the fiber mod 5")
            jac = jacobian_matrix_mod_p(model, 5, x)
            solved = _solve_lift_space(jac, rhs)
            if solved is None:
                raise FiberInconsistencyError("chart point admits no lift mod 25")
            part, basis = solved
            if len(basis) != 2:
                raise FiberInconsistencyError("lift space at a smooth chart point must be a plane")
            for a in range(5):
                for b in range(5):
                    w = [
                        (part[i] + a * basis[0][i] + b * basis[1][i]) % 5
                        for i in range(5)
                    ]
                    pt = (1,) + tuple((x[i + 1] + 5 * w[i]) % 25 for i in range(5))
                    lifts.append(pt)
    for pt in lifts:
        if any(v % 25 for v in model.evaluate_quadrics(pt)):
            raise FiberInconsistencyError("constructed lift leaves the fiber mod 25")
    result = tuple(lifts)
    _LIFT_CACHE[key] = result
    return result


def inv_image_25_liftpath(model, h):
    """Brute-force cross-check: values of h/l1 over all chart lifts mod 25.

    Enumerates the 625 points of the model over Z/25 sitting above the
    mod-5 chart and collects the unit values of h there (l1 = u0 = 1 on the
    chart).  For forms proportional to u0 modulo 5 every unit point lives
    above the chart, so this reproduces the image exactly; otherwise it
    still certifies fullness honestly.
    """
    group = fifth_power_classes(25)
    _require_fixture_chart(model, 25)
    h25 = tuple(int(c) % 25 for c in h)
    if all(c % 5 == 0 for c in h25):
        raise DomainError("form must be primitive modulo 5")
    values = set()
    for pt in _chart_lift_points(model):
        hv = sum(c * x for c, x in zip(h25, pt)) % 25
        if hv % 5:
            values.add(hv)
    return InvariantImage(
        5, 25, _inverted_value_classes(group, values), tuple(sorted(values)), "chart lift values"
    )


def tangent_surjectivity_check(model):
    """Verify the fullness criterion against every non-u0 direction mod 5.

    For each of the 5^6 - 1 - 4 directions h mod 5 not proportional to u0,
    some chart point must pair non-trivially with h on the tangent plane.
    Vectorized exhaustive check; returns the counts and any failures.
    """
    _require_fixture_chart(model, 25)
    rows = []
    for y in range(5):
        for z in range(5):
            rows.append([0, 1, 0, 2 * y % 5, z, 3 * y * y % 5])
            rows.append([0, 0, 1, 0, y, 2 * z % 5])
    pairing = np.array(rows, dtype=np.int64)
    digits = np.arange(5 ** 6, dtype=np.int64)
    forms = np.empty((6, 5 ** 6), dtype=np.int64)
    tmp = digits.copy()
    for i in range(6):
        forms[i] = tmp % 5
        tmp //= 5
    proportional = np.all(forms[1:] == 0, axis=0)
    candidates = ~proportional & np.any(forms != 0, axis=0)
    hit = np.any(pairing @ forms % 5 != 0, axis=0)
    failures = np.flatnonzero(candidates & ~hit)
    return {
        "directions": int(candidates.sum()),
        "surjective": int((candidates & hit).sum()),
        "failures": tuple(
            tuple(int(forms[i, j]) for i in range(6)) for j in failures
        ),
    }


# ---------------------------------------------------------------------------
# local solubility and the verdict


@dataclass(frozen=True)
class SolubilityCertificate:
    soluble: bool
    failing_place: int = None
    forbidden_class: tuple = None
    mod2_point: tuple = None
    odd_gcd: int = None
    point_values: tuple = None
    real_point: tuple = None

    def to_json_dict(self):
        doc = {"soluble": self.soluble}
        if self.failing_place is not None:
            doc["failing_place"] = self.failing_place
        if self.forbidden_class is not None:
            doc["forbidden_class"] = list(self.forbidden_class)
        if self.mod2_point is not None:
            doc["mod2_point"] = list(self.mod2_point)
        if self.odd_gcd is not None:
            doc["odd_gcd"] = self.odd_gcd
        if self.point_values is not None:
            doc["point_values"] = list(self.point_values)
        if self.real_point is not None:
            doc["real_point"] = list(self.real_point)
        return doc


def _require_primitive(h):
    coeffs = tuple(int(c) for c in h)
    if len(coeffs) != 6:
        raise DomainError("a hyperplane form needs six coefficients")
    if math.gcd(*coeffs) != 1:
        raise DomainError("form must be primitive")
    return coeffs


def locally_soluble(model, h):
    """Everywhere-local solubility of the complement of {h = 0}.

    The answer depends only on h mod 2: the five points of the fiber at 2
    are smooth and lie on a single hyperplane, so solubility fails exactly
    when h cuts that hyperplane.  The certificate for the soluble case
    covers every completion at once: a mod-2 fiber point off {h = 0} with
    full Jacobian rank handles 2-adic lifting, and the stored integral
    points span a sublattice of odd index in the saturation of their span,
    so their h-values have odd part coprime in particular to every odd
    prime; any stored point off {h = 0} is a real point of the complement.
    """
    coeffs = _require_primitive(h)
    if model.insolubility_class is None or model.integral_points is None:
        raise DomainError("solubility analysis needs the stored fixture data")
    mod2 = tuple(c % 2 for c in coeffs)
    if mod2 == tuple(c % 2 for c in model.insolubility_class):
        return SolubilityCertificate(
            False, failing_place=2, forbidden_class=model.insolubility_class
        )
    mod2_point = None
    for pt in enumerate_fiber(model, 2):
        if model.hyperplane_value(mod2, pt) % 2:
            if rank_mod_p(jacobian_matrix_mod_p(model, 2, pt), 2) != 3:
                raise FiberInconsistencyError("mod-2 witness point is not smooth")
            mod2_point = pt
            break
    if mod2_point is None:
        raise FiberInconsistencyError("no mod-2 point off the hyperplane was found")
    values = tuple(model.hyperplane_value(coeffs, pt) for pt in model.integral_points)
    g = 0
    for v in values:
        g = math.gcd(g, v)
    odd = g
    while odd % 2 == 0:
        odd //= 2
    if odd != 1:
        raise FiberInconsistencyError("stored integral points fail the odd-gcd certificate")
    real_point = next(pt for pt, v in zip(model.integral_points, values) if v != 0)
    return SolubilityCertificate(
        True,
        mod2_point=mod2_point,
        odd_gcd=odd,
        point_values=values,
        real_point=real_point,
    )


def _proportional_over_q(a, b):
    return all(a[i] * b[j] == a[j] * b[i] for i in range(6) for j in range(i + 1, 6))


def geometrically_irreducible(model, h):
    """False exactly when h is a rational multiple of l1 or l2."""
    coeffs = tuple(int(c) for c in h)
    if len(coeffs) != 6 or not any(coeffs):
        raise DomainError("need a nonzero six-coefficient form")
    return not (
        _proportional_over_q(coeffs, model.l1) or _proportional_over_q(coeffs, model.l2)
    )


_PUBLISHED_VERDICTS = {
    ("zeta11plus", (0, 1, 0, -6, 0, 0)): "obstruction_order_5",
}


@dataclass(frozen=True)
class ObstructionReport:
    model: str
    h: tuple
    solubility: SolubilityCertificate
    geometrically_irreducible: bool
    images: dict
    verdict: str
    claim_comparison: dict = None

    def to_json_dict(self):
        doc = {
            "model": self.model,
            "h": list(self.h),
            "locally_soluble": self.solubility.soluble,
            "geometrically_irreducible": self.geometrically_irreducible,
            "images": {str(p): img.to_json_dict() for p, img in self.images.items()},
            "verdict": self.verdict,
        }
        if self.solubility.failing_place is not None:
            doc["failing_place"] = self.solubility.failing_place
        doc["solubility_certificate"] = self.solubility.to_json_dict()
        if self.claim_comparison is not None:
            doc["paper_claim_comparison"] = self.claim_comparison
        return doc


def verdict(model, h):
    """Full obstruction verdict for a primitive integral form on a fixture.

    Precedence: a form insoluble somewhere has no adelic points to obstruct;
    a form cutting one of the two split divisors carries a trivial class;
    otherwise the order-5 class obstructs exactly when the invariant image
    at the ramified prime omits the identity coset.
    """
    coeffs = _require_primitive(h)
    if model.modulus not in (11, 25):
        raise DomainError(
            "verdicts need one of the stored fixtures; for other models only "
            "unramified checks are available"
        )
    sol = locally_soluble(model, coeffs)
    irreducible = geometrically_irreducible(model, coeffs)
    comparison = None
    if model.modulus == 11:
        image = inv_image_11(model, coeffs)
        other = inv_image_11_smoothpath(model, coeffs)
        if image.classes != other.classes:
            raise FiberInconsistencyError("chart and smooth-point routes disagree")
        images = {11: image}
    else:
        image = inv_image_25(model, coeffs)
        images = {5: image}
    if not sol.soluble:
        result = "no_adelic_points"
    elif not irreducible:
        result = "trivial_brauer_class"
    elif image.contains_zero:
        result = "no_obstruction"
    else:
        result = "obstruction_order_5"
    published = _PUBLISHED_VERDICTS.get((model.name, coeffs))
    if published is not None:
        comparison = {
            "published_verdict": published,
            "computed_verdict": result,
            "chart_route_contains_zero": image.contains_zero,
            "status": "ok" if published == result else "flagged",
        }
        if model.modulus == 11:
            comparison["smooth_route_contains_zero"] = other.contains_zero
    return ObstructionReport(
        model.name or model.source,
        coeffs,
        sol,
        irreducible,
        images,
        result,
        comparison,
    )


# ---------------------------------------------------------------------------
# census modulo 11

CENSUS_11_TOTAL = 11 ** 6 - 1
_U5FREE_COUNT = 11 ** 5


def _chart_monomials_11():
    rows = []
    for y in range(11):
        for z in range(11):
            rows.append(
                [1, y, z, (y * y) % 11, (y * z) % 11, (y ** 3 + z * z) % 11]
            )
    return np.array(rows, dtype=np.int32)


def _digit_columns(indices, base, length):
    cols = np.empty((length, indices.size), dtype=np.int32)
    tmp = indices.copy()
    for i in range(length):
        cols[i] = tmp % base
        tmp //= base
    return cols


def _census11_value_range(lo, hi):
    """Indices in [lo, hi) of u5-free forms whose chart values avoid {1, 10}."""
    mon = _chart_monomials_11()[:, :5]
    idx = np.arange(lo, hi, dtype=np.int64)
    forms = _digit_columns(idx, 11, 5)
    vals = mon @ forms % 11
    hit = ((vals == 1) | (vals == 10)).any(axis=0)
    return [int(i) for i in idx[~hit] if i != 0]


def _census11_surjectivity_range(lo, hi):
    """Check that forms with index in [lo, hi) and u5 != 0 attain every coset."""
    group = fifth_power_classes(11)
    bits = np.zeros(11, dtype=np.int32)
    for u in range(1, 11):
        bits[u] = 1 << group.class_index(u)
    mon = _chart_monomials_11()
    idx = np.arange(lo, hi, dtype=np.int64)
    forms = _digit_columns(idx, 11, 6)
    live = forms[5] != 0
    vals = mon @ forms % 11
    masks = np.bitwise_or.reduce(bits[vals], axis=0)
    bad = live & (masks != 31)
    return [int(i) for i in idx[bad]]


def _classify_obstructing_11(index):
    digits = []
    n = index
    for _ in range(5):
        digits.append(n % 11)
        n //= 11
    h0, h1, h2, h3, h4 = digits
    if h2 or h4:
        return "other", digits
    if h1 == 0 and h3 == 0:
        return "constant", digits
    if h3 != 0 and (h1 * h1 - 4 * h0 * h3) % 11 != 0:
        return "separable_quadratic", digits
    return "other", digits


def _census_11_formula():
    """Count the obstructing classes from their shape, independently.

    Constant chart values: c not a fifth power, 8 choices.  Separable
    quadratics in y: complete the square to a*s^2 + e with a, e units; the
    value set is a*S + e for S the six squares, translation in y is free.
    """
    squares = sorted({(y * y) % 11 for y in range(11)})
    constant = sum(1 for c in range(1, 11) if c not in (1, 10))
    pairs = 0
    for a in range(1, 11):
        for e in range(1, 11):
            vals = {(a * s + e) % 11 for s in squares}
            if not vals & {1, 10}:
                pairs += 1
    return {"constant": constant, "separable_quadratic": pairs * 11}


def census_11(model=None, jobs=1, validate_surjectivity=False):
    """Count the residues h mod 11 whose invariant image omits the identity.

    Forms with nonzero u5 coefficient have full image and never obstruct;
    the u5-free forms are scanned exhaustively through their chart values.
    ``validate_surjectivity`` additionally verifies the fullness claim for
    every u5-dependent form.  The obstructing classes are re-derived from
    the shape classification as an independent check.
    """
    start = time.monotonic()
    if model is None:
        model = fixture("zeta11plus")
    _require_fixture_chart(model, 11)
    if jobs is None:
        jobs = os.cpu_count() or 1
    jobs = max(1, int(jobs))

    chunk = 100_000
    ranges = [
        (lo, min(lo + chunk, _U5FREE_COUNT)) for lo in range(0, _U5FREE_COUNT, chunk)
    ]
    if jobs == 1:
        parts = [_census11_value_range(lo, hi) for lo, hi in ranges]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_census11_value_range, *zip(*ranges)))
    obstructing_indices = [i for part in parts for i in part]

    breakdown = {"constant": 0, "separable_quadratic": 0}
    classes = []
    for index in obstructing_indices:
        kind, digits = _classify_obstructing_11(index)
        if kind == "other":
            breakdown["other"] = breakdown.get("other", 0) + 1
        else:
            breakdown[kind] += 1
        classes.append(tuple(digits) + (0,))

    surjectivity_failures = None
    if validate_surjectivity:
        full_ranges = [
            (lo, min(lo + chunk, 11 ** 6)) for lo in range(0, 11 ** 6, chunk)
        ]
        if jobs == 1:
            failures = [_census11_surjectivity_range(lo, hi) for lo, hi in full_ranges]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                failures = list(
                    pool.map(_census11_surjectivity_range, *zip(*full_ranges))
                )
        surjectivity_failures = [i for part in failures for i in part]
        if surjectivity_failures:
            raise FiberInconsistencyError(
                "a u5-dependent form failed the fullness claim; the census "
                "shortcut would be unsound"
            )

    result = {
        "model": model.name,
        "modulus": 11,
        "total": CENSUS_11_TOTAL,
        "obstructing": len(obstructing_indices),
        "breakdown": breakdown,
        "formula_breakdown": _census_11_formula(),
        "obstructing_classes": tuple(sorted(classes)),
        "wall_time_ms": int((time.monotonic() - start) * 1000),
        "workers": jobs,
    }
    if validate_surjectivity:
        result["surjectivity_checked"] = 11 ** 6 - _U5FREE_COUNT
    return result


# ---------------------------------------------------------------------------
# census modulo 25

CENSUS_25_TOTAL = 25 ** 6 - 5 ** 6


def _kappa_image(coeffs):
    image = set()
    for y in range(5):
        for z in range(5):
            pt = _chart_point_mod5(y, z)
            image.add(sum(c * x for c, x in zip(coeffs, pt[1:])) % 5)
    return image


def census_25(model=None, sample_check=0, seed=2026):
    """Count the residues h mod 25, primitive mod 5, whose image omits the identity.

    Only forms proportional to u0 modulo 5 can fail fullness, and those
    correspond bijectively to pairs (lam, k) with lam a unit mod 25 and k a
    linear form over F5 in u1..u5; each pair is one residue class mod 25.
    A pair obstructs exactly when the unique fifth power in lam's mod-5
    residue class is missed by the attained values lam + 5*kappa.  With
    ``sample_check > 0`` that many random non-proportional forms are
    verified to have full image along both the tangent and the lift route.
    """
    start = time.monotonic()
    if model is None:
        model = fixture("zeta25")
    _require_fixture_chart(model, 25)
    group = fifth_power_classes(25)
    fifth_by_residue = {f % 5: f for f in group.fifth_powers}

    kappa_sizes = {1: 0, 3: 0, 5: 0}
    obstructing = 0
    breakdown = {"constant": 0, "image_size_3": 0}
    for coeffs in product(range(5), repeat=5):
        image = _kappa_image(coeffs)
        size = len(image)
        assert size in (1, 3, 5), (coeffs, sorted(image))
        kappa_sizes[size] += 1
        misses = []
        for lam in group.units:
            target = fifth_by_residue[lam % 5]
            kstar = ((target - lam) % 25) // 5
            if kstar not in image:
                misses.append(lam)
        if not misses:
            continue
        assert size < 5, coeffs
        # only forms constant in z obstruct: the shape check mirrors the count
        assert coeffs[1] == coeffs[3] == coeffs[4] == 0, coeffs
        obstructing += len(misses)
        if size == 1:
            breakdown["constant"] += len(misses)
        else:
            breakdown["image_size_3"] += len(misses)

    samples = 0
    if sample_check:
        rng = random.Random(seed)
        while samples < sample_check:
            h = tuple(rng.randrange(25) for _ in range(6))
            if all(c % 5 == 0 for c in h):
                continue
            if all(h[i] % 5 == 0 for i in range(1, 6)):
                continue
            fast = inv_image_25(model, h)
            brute = inv_image_25_liftpath(model, h)
            if not (fast.full and brute.full):
                raise FiberInconsistencyError(
                    f"sampled form {h} breaks the fullness agreement"
                )
            samples += 1

    return {
        "model": model.name,
        "modulus": 25,
        "total": CENSUS_25_TOTAL,
        "obstructing": obstructing,
        "breakdown": breakdown,
        "kappa_image_sizes": kappa_sizes,
        "sampled_full_agreement": samples,
        "wall_time_ms": int((time.monotonic() - start) * 1000),
        "workers": 1,
    }


# ---------------------------------------------------------------------------
# wholesale path agreement and census invariance


def path_agreement_check(model, sample=None, seed=0):
    """Compare the chart route and the smooth-point route wholesale.

    Recomputes both invariant images for every nonzero form mod 11 (or for
    a random sample of the given size) with the same data the two public
    functions use: chart polynomial values on one side, values over the
    enumerated fiber on the other.  Returns the number of disagreements,
    which must be zero.
    """
    _require_fixture_chart(model, 11)
    group = fifth_power_classes(11)
    bits = np.zeros(11, dtype=np.int32)
    inverse_bits = np.zeros(11, dtype=np.int32)
    for u in range(1, 11):
        bits[u] = 1 << group.class_index(u)
        inverse_bits[u] = 1 << group.class_index(pow(u, -1, 11))

    p, points, smooth, l1_values = _ramified_fiber_data(model)
    pts = np.array(points, dtype=np.int32)
    l1v = np.array(l1_values, dtype=np.int32)
    ok = np.array(smooth, dtype=bool)
    unit_rows = ok & (l1v != 0)
    line_rows = ok & (l1v == 0)
    l1_inv = np.array(
        [pow(int(v), -1, 11) if v else 0 for v in l1v], dtype=np.int32
    )
    mon = _chart_monomials_11()

    if sample is None:
        all_indices = np.arange(1, 11 ** 6, dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        all_indices = rng.integers(1, 11 ** 6, size=int(sample), dtype=np.int64)

    disagreements = []
    checked = 0
    chunk = 100_000
    for lo in range(0, all_indices.size, chunk):
        idx = all_indices[lo : lo + chunk]
        forms = _digit_columns(idx, 11, 6)
        chart_vals = mon @ forms % 11
        chart_masks = np.bitwise_or.reduce(inverse_bits[chart_vals], axis=0)
        chart_masks = np.where(forms[5] != 0, 31, chart_masks)

        fiber_vals = pts @ forms % 11
        ratios = (fiber_vals[unit_rows] * l1_inv[unit_rows, None]) % 11
        smooth_masks = np.bitwise_or.reduce(inverse_bits[ratios], axis=0)
        triggers = (fiber_vals[line_rows] != 0).any(axis=0)
        smooth_masks = np.where(triggers, 31, smooth_masks)

        bad = chart_masks != smooth_masks
        disagreements.extend(int(i) for i in idx[bad])
        checked += int(idx.size)
    return {
        "checked": checked,
        "mode": "exhaustive" if sample is None else "sampled",
        "disagreements": tuple(disagreements),
    }


def census_11_smoothpath(model):
    """Obstruction count over all h mod 11 using only the smooth-point route.

    Works for any modulus-11 model, including coordinate-changed ones, since
    it never assumes the chart shape of l1.
    """
    if model.modulus != 11:
        raise DomainError("this census needs a modulus-11 model")
    group = fifth_power_classes(11)
    identity_bit = 1
    inverse_bits = np.zeros(11, dtype=np.int32)
    for u in range(1, 11):
        inverse_bits[u] = 1 << group.class_index(pow(u, -1, 11))

    p, points, smooth, l1_values = _ramified_fiber_data(model)
    pts = np.array(points, dtype=np.int32)
    l1v = np.array(l1_values, dtype=np.int32)
    ok = np.array(smooth, dtype=bool)
    unit_rows = ok & (l1v != 0)
    line_rows = ok & (l1v == 0)
    l1_inv = np.array(
        [pow(int(v), -1, 11) if v else 0 for v in l1v], dtype=np.int32
    )

    obstructing = 0
    chunk = 100_000
    for lo in range(1, 11 ** 6, chunk):
        idx = np.arange(lo, min(lo + chunk, 11 ** 6), dtype=np.int64)
        forms = _digit_columns(idx, 11, 6)
        fiber_vals = pts @ forms % 11
        ratios = (fiber_vals[unit_rows] * l1_inv[unit_rows, None]) % 11
        masks = np.bitwise_or.reduce(inverse_bits[ratios], axis=0)
        triggers = (fiber_vals[line_rows] != 0).any(axis=0)
        contains_zero = triggers | ((masks & identity_bit) != 0)
        obstructing += int((~contains_zero).sum())
    return {"model": model.name, "total": CENSUS_11_TOTAL, "obstructing": obstructing}


def _random_invertible_mod11(rng):
    while True:
        rows = [[rng.randrange(11) for _ in range(6)] for _ in range(6)]
        mat = [row[:] for row in rows]
        det = 1
        singular = False
        for c in range(6):
            pivot = next((r for r in range(c, 6) if mat[r][c] % 11), None)
            if pivot is None:
                singular = True
                break
            if pivot != c:
                mat[c], mat[pivot] = mat[pivot], mat[c]
            det = (det * mat[c][c]) % 11
            inv = pow(mat[c][c], -1, 11)
            for r in range(c + 1, 6):
                f = (mat[r][c] * inv) % 11
                for j in range(c, 6):
                    mat[r][j] = (mat[r][j] - f * mat[c][j]) % 11
        if not singular and det % 11:
            return rows


def transformed_model_mod11(model, matrix):
    """The model in new coordinates u = g v, everything reduced mod 11."""
    mapping = {}
    for i, name in enumerate(U_VARS):
        poly = MultiPoly.zero(U_VARS)
        for j, target in enumerate(U_VARS):
            c = matrix[i][j] % 11
            if c:
                poly = poly + MultiPoly.variable(U_VARS, target) * c
        mapping[name] = poly
    quadrics = tuple(q.substitute(mapping).reduce_mod(11) for q in model.quadrics)
    l1 = tuple(
        sum(matrix[i][j] * model.l1[i] for i in range(6)) % 11 for j in range(6)
    )
    l2 = tuple(
        sum(matrix[i][j] * model.l2[i] for i in range(6)) % 11 for j in range(6)
    )
    return DelPezzoModel(
        "transformed",
        model.spec,
        quadrics,
        l1,
        l2,
        name=f"{model.name}+gl6",
        ramified_prime=model.ramified_prime,
        modulus=model.modulus,
    )


def census_invariance_check(model=None, transforms=3, seed=11):
    """The obstruction count must survive random changes of coordinates.

    Applies invertible mod-11 substitutions to the quadrics and both split
    forms simultaneously and recounts with the smooth-point census, which
    never looks at the chart.  All counts must agree with the base count.
    """
    if model is None:
        model = fixture("zeta11plus")
    base = census_11_smoothpath(model)["obstructing"]
    rng = random.Random(seed)
    counts = []
    for _ in range(transforms):
        matrix = _random_invertible_mod11(rng)
        moved = transformed_model_mod11(model, matrix)
        counts.append(census_11_smoothpath(moved)["obstructing"])
    return {
        "base_count": base,
        "transform_counts": tuple(counts),
        "all_match": all(c == base for c in counts),
    }


# ---------------------------------------------------------------------------
# unramified places


def unramified_invariant_check(model, ell):
    """Certify that the invariant vanishes at an unramified prime.

    At an inert prime the value of l1 at any local point is a norm from the
    unramified degree-5 extension once it is a unit, and it is always a
    unit because the fiber meets {l1 = 0} in no rational point; the check
    verifies that emptiness by enumeration.  At a split prime the class
    itself dies locally, so nothing needs enumerating.
    """
    if model.spec is None:
        raise DomainError("unramified checks need the field data on the model")
    splitting = minpoly_splitting_mod_p(model.spec, ell)
    if splitting == "inseparable":
        raise DomainError(f"{ell} ramifies in the splitting field")
    if splitting == "separable-split":
        return {
            "prime": ell,
            "splitting": "split",
            "invariant_trivial": True,
            "note": "the splitting field has a degree-1 completion, so the class dies locally",
        }
    if splitting != "separable-irreducible":
        raise DomainError(
            f"splitting pattern {splitting!r} at {ell} should not occur for a cyclic quintic"
        )
    fiber = enumerate_fiber(model, ell)
    zeros = [
        pt for pt in fiber if model.hyperplane_value(model.l1, pt) % ell == 0
    ]
    return {
        "prime": ell,
        "splitting": "inert",
        "fiber_points": len(fiber),
        "line_vanishing_points": len(zeros),
        "invariant_trivial": not zeros,
    }
