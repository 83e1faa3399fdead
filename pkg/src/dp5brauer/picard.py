"""Degree-5 del Pezzo Picard lattice: (-1)-classes, their graph, and the
cohomology of a cyclic action.

The lattice is Z^5 with pairing diag(1, -1, -1, -1, -1) and canonical class
K = (-3, 1, 1, 1, 1).  Everything downstream (the ten classes, the Petersen
graph, the distinguished order-5 action and its H^1) is computed from that
data, not written down by hand.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DomainError
from .intlinalg import IntMatrix, hnf, saturated_kernel, snf, solve_in_lattice

RANK = 5
FORM = (1, -1, -1, -1, -1)
CANONICAL_CLASS = (-3, 1, 1, 1, 1)


def pairing(u, v):
    return sum(s * a * b for s, a, b in zip(FORM, u, v))


def minus_one_classes(bound=3):
    """All classes D with D.D = D.K = -1 and coordinates in [-bound, bound].

    The default window is known to be exhaustive; widening it is a test,
    not a runtime need.
    """
    found = []
    box = range(-bound, bound + 1)
    stack = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == RANK:
            if pairing(prefix, prefix) == -1 and pairing(prefix, CANONICAL_CLASS) == -1:
                found.append(tuple(prefix))
            continue
        for c in box:
            stack.append(prefix + (c,))
    found.sort()
    return found


def class_label(vector):
    """Human name: e-classes are L1..L4, conic classes are L0-Li-Lj."""
    if vector[0] == 0:
        idx = [i for i in range(1, RANK) if vector[i]]
        if len(idx) == 1 and vector[idx[0]] == 1:
            return f"L{idx[0]}"
    if vector[0] == 1:
        idx = [i for i in range(1, RANK) if vector[i] == -1]
        if len(idx) == 2 and sum(map(abs, vector)) == 3:
            return f"L0-L{idx[0]}-L{idx[1]}"
    raise DomainError(f"not a recognized (-1)-class: {vector}")


class PetersenReport(NamedTuple):
    vertices: tuple
    edges: tuple
    automorphism_count: int
    pair_labels: dict
    lattice_extensions_ok: bool


def petersen_graph(classes=None):
    """Incidence graph of the ten (-1)-classes, with its symmetries.

    Two classes are adjacent when they meet (pairing 1).  The report
    carries a 2-subset labeling exhibiting the Kneser structure (adjacent
    iff labels disjoint), the automorphism count, and the result of
    extending every graph automorphism to a pairing-preserving lattice map
    fixing K.
    """
    if classes is None:
        classes = minus_one_classes()
    n = len(classes)
    adjacency = [
        frozenset(j for j in range(n) if j != i and pairing(classes[i], classes[j]) == 1)
        for i in range(n)
    ]
    edges = tuple(
        (i, j) for i in range(n) for j in range(i + 1, n) if j in adjacency[i]
    )
    if any(len(a) != 3 for a in adjacency) or len(edges) != 15:
        raise DomainError("classes do not form the expected 3-regular graph")

    labels = {}
    for i, v in enumerate(classes):
        name = class_label(v)
        if name.startswith("L0"):
            parts = {int(name[4]), int(name[7])}
            labels[i] = frozenset({1, 2, 3, 4} - parts)
        else:
            labels[i] = frozenset({int(name[1]), 5})
    for i, j in edges:
        if labels[i] & labels[j]:
            raise DomainError("labeling fails disjointness on an edge")
    for i in range(n):
        for j in range(i + 1, n):
            if (j not in adjacency[i]) and not (labels[i] & labels[j]):
                raise DomainError("labeling fails disjointness off an edge")

    autos = _graph_automorphisms(adjacency)
    extensions_ok = all(
        _extend_to_lattice(classes, perm) is not None for perm in autos
    )
    return PetersenReport(tuple(classes), edges, len(autos), labels, extensions_ok)


def _graph_automorphisms(adjacency):
    n = len(adjacency)
    result = []
    image = [None] * n
    used = [False] * n

    def backtrack(v):
        if v == n:
            result.append(tuple(image))
            return
        for w in range(n):
            if used[w] or len(adjacency[w]) != len(adjacency[v]):
                continue
            ok = True
            for u in range(v):
                if (u in adjacency[v]) != (image[u] in adjacency[w]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                backtrack(v + 1)
                used[w] = False
                image[v] = None

    backtrack(0)
    return result


def _extend_to_lattice(classes, perm):
    """5x5 integer matrix M with M . class_i = class_perm(i), preserving the
    pairing and K, or None."""
    # basis: L1..L4 and one conic class; its image determines column 0
    basis_names = []
    for i, v in enumerate(classes):
        if v[0] == 0:
            basis_names.append(i)
    conic = next(i for i, v in enumerate(classes) if v[0] == 1)
    cols = [None] * RANK
    for i in basis_names:
        v = classes[i]
        pos = next(k for k in range(1, RANK) if v[k])
        cols[pos] = list(classes[perm[i]])
    cv = classes[conic]
    img = list(classes[perm[conic]])
    # cv = e0 + sum of negative unit parts; solve for column 0
    col0 = list(img)
    for k in range(1, RANK):
        if cv[k]:
            for t in range(RANK):
                col0[t] -= cv[k] * cols[k][t]
    cols[0] = col0
    m = IntMatrix([[cols[j][i] for j in range(RANK)] for i in range(RANK)])
    for i, v in enumerate(classes):
        if m.apply(v) != classes[perm[i]]:
            return None
    if not preserves_pairing(m) or m.apply(CANONICAL_CLASS) != CANONICAL_CLASS:
        return None
    return m


def preserves_pairing(matrix):
    for i in range(RANK):
        for j in range(RANK):
            ei = tuple(1 if k == i else 0 for k in range(RANK))
            ej = tuple(1 if k == j else 0 for k in range(RANK))
            if pairing(matrix.apply(ei), matrix.apply(ej)) != pairing(ei, ej):
                return False
    return True


class GaloisAction(NamedTuple):
    matrix: IntMatrix
    order: int


# orbit of the distinguished fixed-point-free symmetry on labeled classes:
# two 5-cycles, one through L1 and one through L3
_SIGMA_ORBITS = (
    ("L1", "L0-L1-L2", "L2", "L0-L2-L3", "L0-L1-L4"),
    ("L3", "L4", "L0-L1-L3", "L0-L3-L4", "L0-L2-L4"),
)


def interesting_sigma():
    """The order-5 symmetry acting on the ten classes in two 5-cycles.

    Built from its class orbits and verified to preserve the pairing, fix
    K, and have exact order 5.
    """
    classes = minus_one_classes()
    by_label = {class_label(v): v for v in classes}
    perm = {}
    for orbit in _SIGMA_ORBITS:
        for a, b in zip(orbit, orbit[1:] + orbit[:1]):
            perm[by_label[a]] = by_label[b]
    cols = [None] * RANK
    for i in range(1, RANK):
        e = tuple(1 if k == i else 0 for k in range(RANK))
        cols[i] = list(perm[e])
    l12 = by_label["L0-L1-L2"]
    img = list(perm[l12])
    col0 = [img[t] + cols[1][t] + cols[2][t] for t in range(RANK)]
    cols[0] = col0
    m = IntMatrix([[cols[j][i] for j in range(RANK)] for i in range(RANK)])
    for src, dst in perm.items():
        if m.apply(src) != dst:
            raise DomainError("orbit data is not linear")
    if not preserves_pairing(m) or m.apply(CANONICAL_CLASS) != CANONICAL_CLASS:
        raise DomainError("symmetry must preserve the pairing and K")
    power = m
    for _ in range(4):
        power = power @ m
    if power != IntMatrix.identity(RANK):
        raise DomainError("symmetry must have order 5")
    return GaloisAction(m, 5)


def matrix_order(matrix, cap=60):
    identity = IntMatrix.identity(matrix.rows)
    power = matrix
    for k in range(1, cap + 1):
        if power == identity:
            return k
        power = power @ matrix
    raise DomainError(f"matrix has no order up to {cap}")


def pic_u_action(action):
    """Induced 4x4 action on Pic modulo ZK, basis L0..L3.

    L4 is eliminated through K = 0, i.e. L4 = 3 L0 - L1 - L2 - L3.
    """
    m = action.matrix if isinstance(action, GaloisAction) else action
    if m.apply(CANONICAL_CLASS) != CANONICAL_CLASS:
        raise DomainError("action must fix K to act on Pic/ZK")

    def reduce(vec):
        v4 = vec[4]
        return (vec[0] + 3 * v4, vec[1] - v4, vec[2] - v4, vec[3] - v4)

    cols = []
    for j in range(4):
        e = tuple(1 if k == j else 0 for k in range(RANK))
        cols.append(reduce(m.apply(e)))
    return IntMatrix([[cols[j][i] for j in range(4)] for i in range(4)])


def image_lattice_hnf(matrix):
    """Hermite basis of the column span of (I - M)."""
    n = matrix.rows
    one_minus = IntMatrix(
        [
            [(1 if i == j else 0) - matrix[i, j] for j in range(n)]
            for i in range(n)
        ]
    )
    h, _ = hnf(one_minus.transpose())
    rows = [h.row(i) for i in range(h.rows) if any(h.row(i))]
    return IntMatrix(rows) if rows else None


def h1_cyclic(matrix, order=None):
    """Elementary divisors (> 1) of ker(norm) / im(1 - M) for a finite-order
    integer matrix M.

    For a cyclic group acting through M this is the first cohomology of the
    lattice.  Returns a tuple such as (5,), empty when the group vanishes.
    """
    n = matrix.rows
    if order is None:
        order = matrix_order(matrix)
    else:
        power = matrix
        for _ in range(order - 1):
            power = power @ matrix
        if power != IntMatrix.identity(n):
            raise DomainError("declared order is wrong")
    norm_rows = [[0] * n for _ in range(n)]
    power = IntMatrix.identity(n)
    for _ in range(order):
        for i in range(n):
            for j in range(n):
                norm_rows[i][j] += power[i, j]
        power = power @ matrix
    norm = IntMatrix(norm_rows)
    kernel = saturated_kernel(norm)
    if kernel is None:
        return ()
    one_minus = IntMatrix(
        [[(1 if i == j else 0) - matrix[i, j] for j in range(n)] for i in range(n)]
    )
    coeff_rows = []
    for j in range(n):
        col = one_minus.column(j)
        coords = solve_in_lattice(kernel, col)
        if coords is None:
            raise DomainError("image does not land in the norm kernel")
        coeff_rows.append(list(coords))
    coeff = IntMatrix(coeff_rows)
    d, _, _ = snf(coeff)
    k = min(d.rows, d.cols)
    divisors = [d[i, i] for i in range(k) if d[i, i] != 0]
    if len(divisors) < kernel.rows:
        raise DomainError("cohomology is not finite")
    return tuple(x for x in divisors if x > 1)
