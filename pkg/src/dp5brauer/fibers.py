"""Mod-p fibers of a model: point enumeration, singular locus, lines, and
the splitting-type classification.

Point counting runs on numpy over the six standard charts of P^5, chunked
so the largest grid stays near p^4 cells.  All arithmetic is mod p in
int64, which is safe here: a quadric has 21 terms and every factor is
below the enumeration bound, so no intermediate value approaches 2^63.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ChartError,
    DomainError,
    EnumerationBoundError,
    FiberInconsistencyError,
)
from .model import U_QUADRIC_MONOMIALS, U_VARS, chart_substitution
from .numberfield import (
    _fp_normalize,
    _fp_poly_gcd,
    _fpq_pow,
    _poly_deriv,
    _poly_sub,
)

ENUMERATION_BOUND = 50
_CHUNK_CELLS = 1 << 23


def _quadric_terms_mod_p(model, p):
    """Per quadric: list of (coeff, i, j) with explicit squares, coeff in
    [1, p)."""
    out = []
    for vec in model.quadric_vectors():
        terms = []
        for exps, coeff in zip(U_QUADRIC_MONOMIALS, vec):
            c = coeff % p
            if not c:
                continue
            pair = []
            for i, e in enumerate(exps):
                pair.extend([i] * e)
            terms.append((c, pair[0], pair[1]))
        out.append(terms)
    return out


def enumerate_fiber(model, p, bound=ENUMERATION_BOUND):
    """All points of the mod-p fiber, as sorted normalized coordinate tuples.

    Normalization: the first nonzero coordinate is 1, which the chart
    decomposition produces directly.
    """
    if p > bound:
        raise EnumerationBoundError(f"prime {p} exceeds enumeration bound {bound}")
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise DomainError(f"{p} is not prime")
    terms = _quadric_terms_mod_p(model, p)
    points = []
    for chart in range(6):
        free = 5 - chart
        prefix = (0,) * chart + (1,)
        if free == 0:
            if all(_eval_terms_scalar(t, prefix, p) == 0 for t in terms):
                points.append(prefix)
            continue
        # leading free coordinates loop in python, the rest form one grid
        lead = 0
        while free - lead > 1 and p ** (free - lead) > _CHUNK_CELLS:
            lead += 1
        grid_dims = free - lead
        shape = (p,) * grid_dims
        axes = []
        for d in range(grid_dims):
            shape_d = [1] * grid_dims
            shape_d[d] = p
            axes.append(np.arange(p, dtype=np.int64).reshape(shape_d))
        for head in np.ndindex(*((p,) * lead)):
            coords = list(prefix) + list(head) + axes
            acc = None
            for t in terms:
                vals = _eval_terms_grid(t, coords, p)
                mask = vals == 0
                acc = mask if acc is None else (acc & mask)
            hits = np.argwhere(np.broadcast_to(acc, shape))
            for hit in hits:
                points.append(prefix + tuple(head) + tuple(int(x) for x in hit))
    points.sort()
    return points


def _eval_terms_scalar(terms, coords, p):
    total = 0
    for c, i, j in terms:
        total += c * coords[i] * coords[j]
    return total % p


def _eval_terms_grid(terms, coords, p):
    total = None
    for c, i, j in terms:
        a, b = coords[i], coords[j]
        if isinstance(a, int) and isinstance(b, int):
            term = c * a * b
        else:
            term = c * (a * b)
        total = term if total is None else total + term
    if isinstance(total, int):
        return np.array(total % p, dtype=np.int64)
    return total % p


def jacobian_matrix_mod_p(model, p, point):
    """5x6 matrix of quadric partials at a point, entries mod p."""
    rows = []
    for vec in model.quadric_vectors():
        partials = [0] * 6
        for exps, coeff in zip(U_QUADRIC_MONOMIALS, vec):
            pair = []
            for i, e in enumerate(exps):
                pair.extend([i] * e)
            i, j = pair
            partials[i] += coeff * point[j]
            partials[j] += coeff * point[i]
        rows.append([x % p for x in partials])
    return rows


def rank_mod_p(rows, p):
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][c] % p), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][c] % p:
                f = mat[r][c]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def singular_points(model, p, fiber=None):
    """Fiber points where the Jacobian drops below rank 3."""
    if fiber is None:
        fiber = enumerate_fiber(model, p)
    return [
        pt
        for pt in fiber
        if rank_mod_p(jacobian_matrix_mod_p(model, p, pt), p) < 3
    ]


@dataclass(frozen=True)
class LineOnFiber:
    span: tuple
    points: tuple

    def to_json_dict(self):
        return {"span": [list(p) for p in self.span], "points": [list(p) for p in self.points]}


def find_lines(model, p, fiber=None):
    """Lines contained in the mod-p fiber.

    A point pair spans a line on the surface iff the polar value
    q(P + Q) - q(P) - q(Q) vanishes for all five quadrics; this is
    characteristic-safe.  Lines are deduplicated by their point sets.
    """
    if fiber is None:
        fiber = enumerate_fiber(model, p)
    n = len(fiber)
    if n == 0:
        return []
    pts = np.array(fiber, dtype=np.int64)
    polar_all = np.ones((n, n), dtype=bool)
    for vec in model.quadric_vectors():
        bilinear = np.zeros((6, 6), dtype=np.int64)
        for exps, coeff in zip(U_QUADRIC_MONOMIALS, vec):
            pair = []
            for i, e in enumerate(exps):
                pair.extend([i] * e)
            i, j = pair
            bilinear[i, j] += coeff
            bilinear[j, i] += coeff
        w = (pts @ (bilinear % p)) % p
        polar_all &= (w @ pts.T) % p == 0
    fiber_set = set(fiber)
    lines = {}
    for i in range(n):
        row = np.nonzero(polar_all[i, i + 1 :])[0]
        for off in row:
            j = i + 1 + int(off)
            key_points = _line_points(fiber[i], fiber[j], p)
            if not key_points <= fiber_set:
                raise FiberInconsistencyError(
                    "line through two fiber points leaves the fiber"
                )
            key = frozenset(key_points)
            if key not in lines:
                ordered = tuple(sorted(key_points))
                lines[key] = LineOnFiber((ordered[0], ordered[1]), ordered)
    return [lines[k] for k in sorted(lines, key=lambda k: sorted(k))]


def _normalize_point(coords, p):
    coords = [c % p for c in coords]
    lead = next((i for i, c in enumerate(coords) if c), None)
    if lead is None:
        return None
    inv = pow(coords[lead], -1, p)
    return tuple(c * inv % p for c in coords)


def _line_points(a, b, p):
    pts = {_normalize_point(b, p)}
    for t in range(p):
        pts.add(_normalize_point([x + t * y for x, y in zip(a, b)], p))
    return pts


def minpoly_splitting_mod_p(spec, p):
    """"separable-irreducible", "separable-split", "separable-partial", or
    "inseparable" for the quintic mod p."""
    m = _fp_normalize(spec.ascending(), p)
    if len(m) != 6:
        raise DomainError("leading coefficient vanished; not a valid reduction")
    deriv = _fp_normalize(_poly_deriv(m), p)
    if len(_fp_poly_gcd(m, deriv, p)) != 1:
        return "inseparable"
    s = [0, 1]
    frob1 = _fpq_pow(s, p, m, p)
    if _fp_normalize(_poly_sub(frob1, s), p) == []:
        return "separable-split"
    frob2 = _fpq_pow(s, p * p, m, p)
    g1 = _fp_poly_gcd(m, _fp_normalize(_poly_sub(frob1, s), p), p)
    g2 = _fp_poly_gcd(m, _fp_normalize(_poly_sub(frob2, s), p), p)
    if len(g1) == 1 and len(g2) == 1:
        return "separable-irreducible"
    return "separable-partial"


@dataclass(frozen=True)
class FiberReport:
    prime: int
    classification: str
    point_count: int
    points: tuple
    singular: tuple
    lines: tuple = field(default_factory=tuple)

    def to_json_dict(self):
        return {
            "prime": self.prime,
            "classification": self.classification,
            "point_count": self.point_count,
            "singular_points": [list(p) for p in self.singular],
            "line_count": len(self.lines),
            "lines": [l.to_json_dict() for l in self.lines],
        }


def classify_fiber(model, p, bound=ENUMERATION_BOUND):
    """Splitting-type prediction checked against enumerated evidence.

    Splitting of the quintic mod p predicts the fiber: inert means a smooth
    fiber with p^2 + 1 points and no lines, totally split means p^2 + 5p + 1
    points and ten lines.  A mismatch raises instead of classifying,
    so a wrong model cannot slip through as an interesting one.
    """
    splitting = minpoly_splitting_mod_p(model.spec, p)
    fiber = enumerate_fiber(model, p, bound=bound)
    lines = find_lines(model, p, fiber=fiber)
    singular = singular_points(model, p, fiber=fiber)
    count = len(fiber)
    if splitting == "separable-irreducible":
        expected = p * p + 1
        if count != expected or lines or singular:
            raise FiberInconsistencyError(
                f"inert prediction violated at {p}: {count} points "
                f"(expected {expected}), {len(lines)} lines, "
                f"{len(singular)} singular"
            )
        label = "interesting"
    elif splitting == "separable-split":
        expected = p * p + 5 * p + 1
        if count != expected or len(lines) != 10 or singular:
            raise FiberInconsistencyError(
                f"split prediction violated at {p}: {count} points "
                f"(expected {expected}), {len(lines)} lines, "
                f"{len(singular)} singular"
            )
        label = "split"
    elif splitting == "separable-partial":
        raise FiberInconsistencyError(
            f"quintic splits partially at {p}; impossible for a cyclic field"
        )
    else:
        label = "singular" if singular else "other"
    return FiberReport(p, label, count, tuple(fiber), tuple(singular), tuple(lines))


@dataclass(frozen=True)
class ChartCertificate:
    prime: int
    identity_ok: bool
    injective: bool
    chart_size: int
    off_chart_points: tuple
    line_points: tuple

    def to_json_dict(self):
        return {
            "prime": self.prime,
            "identity_ok": self.identity_ok,
            "injective": self.injective,
            "chart_size": self.chart_size,
            "off_chart_points": [list(p) for p in self.off_chart_points],
            "line_point_count": len(self.line_points),
        }


def verify_chart(model, p=None):
    """Certify the affine chart of a fixture at its ramified prime.

    Three checks: every quadric vanishes identically on the substitution
    (as polynomials in y, z mod p), the chart map is injective on affine
    space, and together with the points of the unique line it covers the
    fiber exactly.  Any failure raises ChartError.
    """
    if model.ramified_prime is None:
        raise DomainError("chart verification needs a fixture model")
    if p is None:
        p = model.ramified_prime
    if p != model.ramified_prime:
        raise DomainError(f"chart lives at {model.ramified_prime}, not {p}")
    sub = chart_substitution()
    for q in model.quadrics:
        image = q.substitute(sub).reduce_mod(p)
        if not image.is_zero():
            raise ChartError(f"chart identity fails mod {p}: residue {image!r}")
    chart_points = {}
    for y in range(p):
        for z in range(p):
            pt = (1, y, z, y * y % p, y * z % p, (y ** 3 + z * z) % p)
            if pt in chart_points:
                raise ChartError("chart map collides")
            chart_points[pt] = (y, z)
    fiber = set(enumerate_fiber(model, p))
    if not set(chart_points) <= fiber:
        raise ChartError("chart image leaves the fiber")
    lines = find_lines(model, p)
    if len(lines) != 1:
        raise ChartError(f"expected a unique line mod {p}, found {len(lines)}")
    off = fiber - set(chart_points)
    if off != set(lines[0].points):
        raise ChartError("chart image plus the line does not cover the fiber")
    return ChartCertificate(
        p,
        True,
        True,
        len(chart_points),
        tuple(sorted(off)),
        lines[0].points,
    )
