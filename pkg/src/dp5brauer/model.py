"""Integral models of quintic del Pezzo surfaces in P^5.

A model is five integral quadrics in u0..u5 cutting out the surface, plus
the two distinguished hyperplane forms l1, l2 that arise as rational
products of conjugate lines.  Models come from two sources: constructed
from a cyclic quintic field spec, or one of the two stored fixtures.

Construction pipeline: quintics through the conjugate point orbit with
double vanishing (a rank-6 kernel), the quadric relations among them (a
rank-5 kernel), and the two Galois-stable 5-cycles of lines whose products
descend to Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import NamedTuple

from .errors import (
    DegenerateOrbitError,
    DomainError,
    RationalityFailureError,
    UnknownModelError,
)
from .intlinalg import (
    IntMatrix,
    content,
    primitive_part,
    saturated_kernel,
    solve_in_lattice,
)
from .multipoly import MultiPoly, monomials_of_degree
from .numberfield import (
    QuinticFieldSpec,
    galois_conjugates,
    zeta11_plus_field,
)

XYZ_VARS = ("x", "y", "z")
U_VARS = ("u0", "u1", "u2", "u3", "u4", "u5")

DEG5_MONOMIALS = tuple(monomials_of_degree(XYZ_VARS, 5))
DEG10_MONOMIALS = tuple(monomials_of_degree(XYZ_VARS, 10))
U_QUADRIC_MONOMIALS = tuple(monomials_of_degree(U_VARS, 2))


def double_vanishing_matrix(spec):
    """15x21 integer matrix whose kernel is the space of quintics in x, y, z
    vanishing doubly at (a^2, a, 1) for the field generator a.

    Conditions are f = df/dx = df/dy = 0; the z-derivative follows from the
    Euler relation, so it is not a row.  Each field-valued condition expands
    to five integer rows on the power basis.  Columns follow
    DEG5_MONOMIALS.
    """
    table = spec.generator_power_table(10)

    def entry(kind, comp, exps):
        a, b, _ = exps
        if kind == 0:
            return table[2 * a + b][comp]
        if kind == 1:
            return a * table[2 * (a - 1) + b][comp] if a else 0
        return b * table[2 * a + b - 1][comp] if b else 0

    rows = []
    for kind in range(3):
        for comp in range(5):
            rows.append([entry(kind, comp, e) for e in DEG5_MONOMIALS])
    return IntMatrix(rows)


class QuinticSystem(NamedTuple):
    """Rank-6 lattice of quintics through the conjugate orbit, rows in
    Hermite form over DEG5_MONOMIALS."""

    spec: QuinticFieldSpec
    basis: IntMatrix

    def polynomials(self):
        return tuple(
            MultiPoly.from_coefficient_vector(XYZ_VARS, DEG5_MONOMIALS, self.basis.row(i))
            for i in range(self.basis.rows)
        )

    def double_vanishing_holds(self):
        alpha = self.spec.generator()
        point = {"x": alpha * alpha, "y": alpha, "z": self.spec.rational(1)}
        for poly in self.polynomials():
            for probe in (poly, poly.derivative("x"), poly.derivative("y")):
                if probe.evaluate(point):
                    return False
        return True


class LineProducts(NamedTuple):
    l1: tuple
    l2: tuple
    pentagon: tuple
    pentagram: tuple


class DelPezzoModel:
    """Five integral quadrics plus the forms l1, l2; optionally the fixture
    data needed for solubility and invariant work."""

    __slots__ = (
        "source",
        "spec",
        "quadrics",
        "l1",
        "l2",
        "system",
        "name",
        "ramified_prime",
        "modulus",
        "integral_points",
        "insolubility_class",
    )

    def __init__(
        self,
        source,
        spec,
        quadrics,
        l1,
        l2,
        system=None,
        name=None,
        ramified_prime=None,
        modulus=None,
        integral_points=None,
        insolubility_class=None,
    ):
        self.source = source
        self.spec = spec
        self.quadrics = tuple(quadrics)
        if len(self.quadrics) != 5:
            raise DomainError("a model needs exactly five quadrics")
        self.l1 = tuple(int(c) for c in l1)
        self.l2 = tuple(int(c) for c in l2)
        self.system = system
        self.name = name
        self.ramified_prime = ramified_prime
        self.modulus = modulus
        self.integral_points = (
            tuple(tuple(int(c) for c in p) for p in integral_points)
            if integral_points is not None
            else None
        )
        self.insolubility_class = (
            tuple(int(c) for c in insolubility_class)
            if insolubility_class is not None
            else None
        )

    def quadric_vectors(self):
        return [q.coefficient_vector(U_QUADRIC_MONOMIALS) for q in self.quadrics]

    def evaluate_quadrics(self, point):
        values = dict(zip(U_VARS, point))
        return tuple(q.evaluate(values) for q in self.quadrics)

    def check_point(self, point):
        return not any(self.evaluate_quadrics(point))

    def hyperplane_value(self, form, point):
        return sum(int(c) * int(x) for c, x in zip(form, point))

    def to_json_dict(self):
        return {
            "source": self.source,
            "minpoly": list(self.spec.coefficients),
            "quadrics": [
                [int(c) for c in q.coefficient_vector(U_QUADRIC_MONOMIALS)]
                for q in self.quadrics
            ],
            "l1": list(self.l1),
            "l2": list(self.l2),
        }

    @classmethod
    def from_json_dict(cls, doc):
        spec = QuinticFieldSpec(doc["minpoly"])
        quadrics = [
            MultiPoly.from_coefficient_vector(U_VARS, U_QUADRIC_MONOMIALS, vec)
            for vec in doc["quadrics"]
        ]
        return cls(doc["source"], spec, quadrics, doc["l1"], doc["l2"])


def build_model(spec):
    """Construct the integral model attached to a cyclic quintic field."""
    conjugates = galois_conjugates(spec)
    dv = double_vanishing_matrix(spec)
    quintic_basis = saturated_kernel(dv)
    if quintic_basis is None or quintic_basis.rows != 6:
        raise DegenerateOrbitError(
            "degenerate orbit: quintic system has rank "
            f"{0 if quintic_basis is None else quintic_basis.rows}, expected 6"
        )
    system = QuinticSystem(spec, quintic_basis)
    quintics = system.polynomials()

    sub_rows = {e: [0] * len(U_QUADRIC_MONOMIALS) for e in DEG10_MONOMIALS}
    for col, exps in enumerate(U_QUADRIC_MONOMIALS):
        pair = []
        for i, e in enumerate(exps):
            pair.extend([i] * e)
        product = quintics[pair[0]] * quintics[pair[1]]
        for mono, coeff in product.terms.items():
            sub_rows[mono][col] = coeff
    substitution = IntMatrix([sub_rows[e] for e in DEG10_MONOMIALS])
    quad_basis = saturated_kernel(substitution)
    if quad_basis is None or quad_basis.rows != 5:
        raise DegenerateOrbitError(
            "degenerate orbit: quadric relation space has rank "
            f"{0 if quad_basis is None else quad_basis.rows}, expected 5"
        )
    quadrics = []
    for i in range(5):
        vec = primitive_part(quad_basis.row(i))
        quadrics.append(
            MultiPoly.from_coefficient_vector(U_VARS, U_QUADRIC_MONOMIALS, vec)
        )
    lines = find_line_products(spec, system, conjugates)
    return DelPezzoModel(
        "constructed",
        spec,
        quadrics,
        lines.l1,
        lines.l2,
        system=system,
    )


def _five_cycles():
    """The 12 cyclic orderings of five vertices, up to rotation and flip."""
    from itertools import permutations

    seen = set()
    cycles = []
    for tail in permutations((1, 2, 3, 4)):
        cycle = (0,) + tail
        reversed_cycle = (0,) + tail[::-1]
        if reversed_cycle in seen:
            continue
        seen.add(cycle)
        cycles.append(cycle)
    return cycles


def _cycle_edges(cycle):
    return frozenset(
        frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))
    )


def find_line_products(spec, system, conjugates=None):
    """Products of the lines along the two Galois-stable 5-cycles.

    The five conjugate points sit on a conic, so the complete graph on them
    has exactly 12 five-cycles of lines; the two whose edge sets are stable
    under the cyclic shift have products with rational coefficients.  Both
    products are returned as primitive coordinate vectors in the quintic
    basis, pentagon first.
    """
    if conjugates is None:
        conjugates = galois_conjugates(spec)
    alpha = spec.generator()
    generators = (alpha,) + tuple(conjugates)
    one = spec.rational(1)
    points = [(g * g, g, one) for g in generators]

    def cross(p, q):
        return (
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        )

    lines = {}
    for i in range(5):
        for j in range(i + 1, 5):
            c = cross(points[i], points[j])
            if not any(c):
                raise DegenerateOrbitError("degenerate orbit: repeated points")
            lines[frozenset((i, j))] = MultiPoly(
                XYZ_VARS,
                {(1, 0, 0): c[0], (0, 1, 0): c[1], (0, 0, 1): c[2]},
            )

    pentagon_edges = _cycle_edges(tuple(range(5)))
    pentagram_edges = _cycle_edges((0, 2, 4, 1, 3))
    rational = {}
    for cycle in _five_cycles():
        edges = _cycle_edges(cycle)
        product = MultiPoly.constant(XYZ_VARS, one)
        for edge in edges:
            product = product * lines[edge]
        if all(c.is_rational() for c in product.terms.values()):
            rational[edges] = product
    if len(rational) != 2:
        raise RationalityFailureError(
            f"rationality failure: {len(rational)} rational line products, expected 2"
        )
    if set(rational) != {pentagon_edges, pentagram_edges}:
        raise RationalityFailureError(
            "rationality failure: rational products not on the shift-stable cycles"
        )

    def descend(product):
        fractions = [Fraction(0)] * len(DEG5_MONOMIALS)
        index = {e: i for i, e in enumerate(DEG5_MONOMIALS)}
        for mono, coeff in product.terms.items():
            fractions[index[mono]] = coeff.rational_value()
        scale = lcm(*(f.denominator for f in fractions)) if fractions else 1
        ints = [int(f * scale) for f in fractions]
        vec = primitive_part(ints)
        coords = solve_in_lattice(system.basis, vec)
        if coords is None:
            raise DegenerateOrbitError(
                "line product is not integral in the quintic basis"
            )
        if content(coords) != 1:
            raise DegenerateOrbitError("line product coordinates are imprimitive")
        return primitive_part(coords)

    return LineProducts(
        descend(rational[pentagon_edges]),
        descend(rational[pentagram_edges]),
        tuple(range(5)),
        (0, 2, 4, 1, 3),
    )


def chart_substitution():
    """The standard affine chart of both fixtures at their ramified prime:
    (y, z) -> (1, y, z, y^2, y z, y^3 + z^2)."""
    yz = ("y", "z")
    y = MultiPoly.variable(yz, "y")
    z = MultiPoly.variable(yz, "z")
    return {
        "u0": MultiPoly.constant(yz, 1),
        "u1": y,
        "u2": z,
        "u3": y * y,
        "u4": y * z,
        "u5": y * y * y + z * z,
    }


def _pairs_to_poly(pairs):
    terms = {}
    for (i, j), coeff in pairs.items():
        exps = [0] * 6
        exps[i] += 1
        exps[j] += 1
        terms[tuple(exps)] = coeff
    return MultiPoly(U_VARS, terms)


_ZETA11PLUS_QUADRICS = (
    {
        (0, 3): 1, (0, 4): 22, (0, 5): 121, (1, 1): -1, (1, 3): -121,
        (1, 4): 2662, (2, 4): -36355, (2, 5): -9306, (3, 4): 10494,
        (3, 5): -242, (4, 4): -215501, (4, 5): 68123, (5, 5): -13794,
    },
    {
        (0, 4): 1, (0, 5): 11, (1, 2): -1, (1, 3): -11, (1, 4): 242,
        (2, 4): -3223, (2, 5): -847, (3, 4): 902, (3, 5): -11,
        (4, 4): -19272, (4, 5): 6413, (5, 5): -1331,
    },
    {
        (0, 5): 1, (1, 3): -1, (1, 4): 22, (2, 2): -1, (2, 4): -286,
        (2, 5): -77, (3, 4): 77, (4, 4): -1694, (4, 5): 572, (5, 5): -121,
    },
    {
        (1, 4): 1, (2, 3): -1, (2, 4): -11, (4, 4): -77, (4, 5): 55,
        (5, 5): -11,
    },
    {
        (1, 5): 1, (2, 4): -1, (2, 5): -11, (3, 3): -1, (3, 4): 11,
        (4, 4): -44,
    },
)

_ZETA11PLUS_L1 = (1, 22, -363, 165, -1859, 484)
_ZETA11PLUS_L2 = (1, 22, -352, 143, -1595, 363)

_ZETA11PLUS_POINTS = (
    (1, 0, 0, 0, 0, 0),
    (-693, -88, -11, 0, 1, 1),
    (-725, -120, -11, 1, 0, 1),
    (967, 122, 11, -1, 0, 1),
    (-3345, -328, -46, -4, 4, 4),
    (-3497, -331, -34, 1, 1, 0),
    (-6138, -407, -44, 0, 1, 0),
)

# the unique mod-2 hyperplane class through every point of the mod-2 fiber
_ZETA11PLUS_MOD2_CLASS = (0, 0, 1, 0, 0, 1)

_ZETA25_MINPOLY = (1, -20, 100, -125, 50, -5)

_ZETA25_QUADRICS = (
    {
        (0, 3): 1, (0, 4): 40, (0, 5): 400, (1, 1): -1, (1, 3): -400,
        (1, 4): 16000, (2, 4): -365050, (2, 5): -49995, (3, 4): 51985,
        (3, 5): -200, (4, 4): -2029975, (4, 5): 392250, (5, 5): -39375,
    },
    {
        (0, 4): 1, (0, 5): 20, (1, 2): -1, (1, 3): -20, (1, 4): 800,
        (2, 4): -18125, (2, 5): -2500, (3, 4): 2550, (3, 5): -5,
        (4, 4): -101015, (4, 5): 19800, (5, 5): -2000,
    },
    {
        (0, 5): 1, (1, 3): -1, (1, 4): 40, (2, 2): -1, (2, 4): -900,
        (2, 5): -125, (3, 4): 125, (4, 4): -5000, (4, 5): 985, (5, 5): -100,
    },
    {
        (1, 4): 1, (2, 3): -1, (2, 4): -20, (4, 4): -125, (4, 5): 50,
        (5, 5): -5,
    },
    {
        (1, 5): 1, (2, 4): -1, (2, 5): -20, (3, 3): -1, (3, 4): 20,
        (4, 4): -100,
    },
)

_ZETA25_L1 = (1, 25, -700, 200, -3425, 575)
_ZETA25_L2 = (1, 75, -1675, 375, -5175, 575)

# output of search_integral_points on this fixture, thinned to a rank-6
# set of index 2, matching the shape of the stored zeta11plus set
_ZETA25_POINTS = (
    (1, 0, 0, 0, 0, 0),
    (1, 5, -1, 5, 0, 1),
    (1, 45, 1, -5, 0, 1),
    (226, 94, -1, 11, 1, 0),
    (257, -13, 4, -8, -1, 0),
    (265, 0, 0, 10, 1, 5),
    (324, 96, -1, 9, 1, 0),
)

_ZETA25_MOD2_CLASS = (0, 0, 1, 1, 0, 0)


def fixture(name):
    """The two stored models: "zeta11plus" and "zeta25"."""
    if name == "zeta11plus":
        return DelPezzoModel(
            "fixture:zeta11plus",
            zeta11_plus_field(),
            tuple(_pairs_to_poly(p) for p in _ZETA11PLUS_QUADRICS),
            _ZETA11PLUS_L1,
            _ZETA11PLUS_L2,
            name="zeta11plus",
            ramified_prime=11,
            modulus=11,
            integral_points=_ZETA11PLUS_POINTS,
            insolubility_class=_ZETA11PLUS_MOD2_CLASS,
        )
    if name == "zeta25":
        return DelPezzoModel(
            "fixture:zeta25",
            QuinticFieldSpec(_ZETA25_MINPOLY),
            tuple(_pairs_to_poly(p) for p in _ZETA25_QUADRICS),
            _ZETA25_L1,
            _ZETA25_L2,
            name="zeta25",
            ramified_prime=5,
            modulus=25,
            integral_points=_ZETA25_POINTS,
            insolubility_class=_ZETA25_MOD2_CLASS,
        )
    raise UnknownModelError(f"unknown fixture {name!r}")


def search_integral_points(model, window=9):
    """Primitive integral points found by back-solving from (u3, u4, u5).

    For these models the last two quadrics are linear in (u1, u2) once
    (u3, u4, u5) are fixed, with determinant u3 u5 - u4^2, and some quadric
    is linear in u0 with nonzero coefficient; solving and clearing
    denominators yields rational points that are kept when all five
    quadrics vanish exactly.  Returns distinct primitive points sorted by
    size.
    """
    found = {tuple(1 if i == 0 else 0 for i in range(6))}
    quad_polys = model.quadrics
    span = range(-window, window + 1)
    for a in span:
        for b in span:
            for c in span:
                point = _backsolve(quad_polys, a, b, c)
                if point is not None:
                    found.add(point)
    return sorted(found, key=lambda p: (max(abs(x) for x in p), p))


def _backsolve(quadrics, a, b, c):
    tail = {"u3": Fraction(a), "u4": Fraction(b), "u5": Fraction(c)}
    det = Fraction(a) * c - Fraction(b) * b
    if det == 0:
        return None
    # rows: coefficients of u1, u2 and the constant, from the last two quadrics
    rows = []
    for q in quadrics[3:]:
        coeff1 = coeff2 = const = Fraction(0)
        for exps, coeff in q.terms.items():
            if exps[0]:
                return None
            rest = Fraction(coeff)
            for var_idx in (3, 4, 5):
                e = exps[var_idx]
                base = tail[f"u{var_idx}"]
                for _ in range(e):
                    rest *= base
            if exps[1] == 1 and exps[2] == 0:
                coeff1 += rest
            elif exps[2] == 1 and exps[1] == 0:
                coeff2 += rest
            elif exps[1] == 0 and exps[2] == 0:
                const += rest
            else:
                return None
        rows.append((coeff1, coeff2, const))
    (a1, b1, c1), (a2, b2, c2) = rows
    denom = a1 * b2 - a2 * b1
    if denom == 0:
        return None
    u1 = (-c1 * b2 + c2 * b1) / denom
    u2 = (-a1 * c2 + a2 * c1) / denom
    values = {
        "u1": u1, "u2": u2,
        "u3": tail["u3"], "u4": tail["u4"], "u5": tail["u5"],
    }
    # find a quadric linear in u0 (none has a u0^2 term)
    u0 = None
    for q in quadrics[:3]:
        lin = Fraction(0)
        const = Fraction(0)
        for exps, coeff in q.terms.items():
            if exps[0] > 1:
                return None
            term = Fraction(coeff)
            for var_idx in (1, 2, 3, 4, 5):
                e = exps[var_idx]
                base = values[f"u{var_idx}"]
                for _ in range(e):
                    term *= base
            if exps[0] == 1:
                lin += term
            else:
                const += term
        if lin != 0:
            u0 = -const / lin
            break
    if u0 is None:
        return None
    coords = (u0, u1, u2, values["u3"], values["u4"], values["u5"])
    scale = lcm(*(f.denominator for f in coords))
    ints = [int(f * scale) for f in coords]
    if not any(ints):
        return None
    point = primitive_part(ints)
    values_full = dict(zip(U_VARS, point))
    for q in quadrics:
        if q.evaluate(values_full):
            return None
    return point
