"""Cyclic quintic number fields given by an explicit monic minimal polynomial.

Elements are stored on the power basis 1, a, a^2, a^3, a^4 with Fraction
coordinates.  Conjugates of the generator are certified, not assumed: they
are found by Frobenius lifting at an inert prime, reconstructed over Q, and
then verified exactly, so a wrong input polynomial cannot produce a silently
wrong Galois action.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import DomainError, NotCyclicError

DEGREE = 5


# ---------------------------------------------------------------------------
# dense univariate helpers, coefficients ascending (c0 + c1 s + ...)


def _trim(poly):
    while poly and not poly[-1]:
        poly.pop()
    return poly


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    """Division with remainder; requires an invertible leading coefficient."""
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    quo = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        if not a[-1]:
            a.pop()
            continue
        shift = len(a) - 1 - db
        factor = a[-1] / lead if isinstance(a[-1], Fraction) or isinstance(lead, Fraction) else None
        if factor is None:
            q, r = divmod(a[-1], lead)
            if r:
                raise ValueError("inexact integer polynomial division")
            factor = q
        quo[shift] = factor
        for i in range(db + 1):
            a[shift + i] -= factor * b[i]
        a.pop()
    return _trim(quo), _trim(a)


def _poly_mod(a, b):
    return _poly_divmod(a, b)[1]


def _poly_eval(poly, x):
    total = 0
    for c in reversed(poly):
        total = total * x + c
    return total


def _poly_deriv(poly):
    return _trim([i * c for i, c in enumerate(poly)][1:])


# ---------------------------------------------------------------------------
# arithmetic in (Z/m)[s]/(minpoly), used by the lifting certificate


def _fp_normalize(poly, modulus):
    return _trim([c % modulus for c in poly])

def _fpq_mul(a, b, minpoly, modulus):
    prod = _poly_mul(a, b)
    _, rem = _poly_divmod_monic_mod(prod, minpoly, modulus)
    return rem


def _poly_divmod_monic_mod(a, b, modulus):
    """Division by a monic polynomial with all arithmetic mod ``modulus``."""
    a = [c % modulus for c in a]
    db = len(b) - 1
    while len(a) > db:
        if not a[-1]:
            a.pop()
            continue
        shift = len(a) - 1 - db
        factor = a[-1]
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - factor * b[i]) % modulus
        a.pop()
    return None, _trim(a)


def _fpq_pow(base, exponent, minpoly, modulus):
    result = [1]
    base = _fp_normalize(base, modulus)
    while exponent:
        if exponent & 1:
            result = _fpq_mul(result, base, minpoly, modulus)
        base = _fpq_mul(base, base, minpoly, modulus)
        exponent >>= 1
    return result


def _fp_poly_gcd(a, b, p):
    a = _fp_normalize(a, p)
    b = _fp_normalize(b, p)
    while b:
        inv = pow(b[-1], -1, p)
        b_monic = [c * inv % p for c in b]
        _, r = _poly_divmod_monic_mod(a, b_monic, p)
        a, b = b_monic, r
    return a


# ---------------------------------------------------------------------------


def _is_square(n):
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _resultant(a, b):
    """Resultant of integer polynomials via the Euclidean chain over Q."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    res = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db < 0:
            return 0
        if db == 0:
            return res * b[0] ** da
        _, r = _poly_divmod(a, b)
        dr = len(r) - 1
        res *= (-1) ** (da * db) * b[-1] ** (da - dr)
        a, b = b, r


def discriminant(coeffs_desc):
    """Discriminant of a monic integer polynomial, leading coefficient first."""
    poly = list(reversed(coeffs_desc))
    n = len(poly) - 1
    res = _resultant(poly, _poly_deriv(poly))
    sign = (-1) ** (n * (n - 1) // 2)
    value = sign * res
    if value.denominator != 1:
        raise ValueError("discriminant of a monic polynomial must be integral")
    return int(value)


class QuinticFieldSpec:
    """Monic irreducible degree-5 polynomial over Z, leading coefficient first.

    Irreducibility over Q is checked on construction: a quintic factors only
    with a linear or a quadratic factor, and both kinds are excluded by
    finite trial division (roots divide the constant term; a monic quadratic
    factor s^2 + b s + c needs c dividing the constant term and b bounded by
    twice the root bound).
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        coeffs = tuple(int(c) for c in coefficients)
        if len(coeffs) != DEGREE + 1:
            raise DomainError("need 6 coefficients for a quintic")
        if coeffs[0] != 1:
            raise DomainError("minimal polynomial must be monic")
        if coeffs[-1] == 0:
            raise DomainError("reducible: s = 0 is a root")
        asc = list(reversed(coeffs))
        for d in _divisors(abs(coeffs[-1])):
            for root in (d, -d):
                if _poly_eval(asc, root) == 0:
                    raise DomainError(f"reducible: integer root {root}")
        bound = 2 * (1 + max(abs(c) for c in coeffs))
        for c in _divisors(abs(coeffs[-1])):
            for cc in (c, -c):
                for b in range(-bound, bound + 1):
                    _, rem = _poly_divmod(
                        [Fraction(x) for x in asc], [Fraction(cc), Fraction(b), Fraction(1)]
                    )
                    if not rem:
                        raise DomainError(
                            f"reducible: quadratic factor s^2 + {b} s + {cc}"
                        )
        object.__setattr__(self, "coefficients", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("QuinticFieldSpec is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, QuinticFieldSpec)
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"QuinticFieldSpec({list(self.coefficients)})"

    def ascending(self):
        return list(reversed(self.coefficients))

    def generator(self):
        return NumberFieldElement(self, (0, 1, 0, 0, 0))

    def element(self, coords):
        return NumberFieldElement(self, coords)

    def rational(self, value):
        return NumberFieldElement(self, (value, 0, 0, 0, 0))

    def generator_power_table(self, top):
        """Integer coordinate vectors of a^0 .. a^top on the power basis.

        Valid because the minimal polynomial is monic, so reduction never
        introduces denominators.
        """
        m_asc = self.ascending()
        rows = [[1, 0, 0, 0, 0]]
        current = [1, 0, 0, 0, 0]
        for _ in range(top):
            shifted = [0] + current[:]
            overflow = shifted[DEGREE] if len(shifted) > DEGREE else 0
            current = [
                shifted[i] - overflow * m_asc[i] for i in range(DEGREE)
            ]
            rows.append(current[:])
        return rows


def _divisors(n):
    if n == 0:
        return []
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


class NumberFieldElement:
    """Element of Q(a) on the power basis, coordinates as Fractions."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec, coords):
        if len(coords) != DEGREE:
            raise ValueError("need 5 coordinates")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("NumberFieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other
        return NumberFieldElement(self.spec, (Fraction(other), 0, 0, 0, 0))

    def __add__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(
            self.spec, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.spec, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, NumberFieldElement):
            other = self._coerce(other)
        elif other.spec != self.spec:
            raise ValueError("elements of different fields")
        prod = _poly_mul(list(self.coords), list(other.coords))
        m_asc = [Fraction(c) for c in self.spec.ascending()]
        rem = _poly_mod([Fraction(c) for c in prod], m_asc)
        rem = rem + [Fraction(0)] * (DEGREE - len(rem))
        return NumberFieldElement(self.spec, tuple(rem[:DEGREE]))

    __rmul__ = __mul__

    def inverse(self):
        """Extended Euclid against the minimal polynomial."""
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        m = [Fraction(c) for c in self.spec.ascending()]
        g = [Fraction(c) for c in self.coords]
        r0, r1 = m, _trim(list(g))
        t0, t1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
        if len(r0) != 1:
            raise DomainError("minimal polynomial is not irreducible")
        scale = r0[0]
        inv = [c / scale for c in t0]
        inv = _poly_mod(inv, m)
        inv = inv + [Fraction(0)] * (DEGREE - len(inv))
        return NumberFieldElement(self.spec, tuple(inv[:DEGREE]))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return self.spec == other.spec and self.coords == other.coords
        try:
            return self.coords == self._coerce(other).coords
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def rational_value(self):
        if not self.is_rational():
            raise DomainError("element is not rational")
        return self.coords[0]

    def __repr__(self):
        return f"NumberFieldElement({[str(c) for c in self.coords]})"


def evaluate_poly(coeffs_asc, element):
    """Evaluate c0 + c1 x + ... at a field element (or anything with * and +)."""
    spec = element.spec
    total = spec.rational(0)
    for c in reversed(coeffs_asc):
        total = total * element + c
    return total


def apply_embedding(element, generator_image):
    """Field map determined by where the generator goes."""
    return evaluate_poly(list(element.coords), generator_image)


# ---------------------------------------------------------------------------
# minimal polynomial of 2 cos(2 pi / ell), built inside the cyclotomic ring


def real_cyclotomic_minpoly(ell):
    """Minimal polynomial of t + 1/t for a primitive ell-th root of unity t.

    Expanded symbolically in Z[t]/(1 + t + ... + t^(ell-1)) for an odd prime
    ell, so the integer coefficients are derived rather than copied in.
    Returns descending coefficients, length (ell-1)/2 + 1.
    """
    if ell < 3 or any(ell % d == 0 for d in range(2, isqrt(ell) + 1)) or ell % 2 == 0:
        raise DomainError("need an odd prime")
    dim = ell - 1

    def ring_mul(a, b):
        # cyclic convolution mod t^ell = 1, then eliminate the t^(ell-1) slot
        conv = [0] * ell
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    conv[(i + j) % ell] += x * y
        top = conv[dim]
        return [conv[i] - top for i in range(dim)]

    def ring_basis(exp):
        vec = [0] * dim
        exp %= ell
        if exp == dim:
            return [-1] * dim
        vec[exp] = 1
        return vec

    one = [1] + [0] * (dim - 1)
    # product over j of (s - (t^j + t^(ell-j))), coefficients in the ring
    poly = [one]
    for j in range(1, (ell - 1) // 2 + 1):
        root = [x + y for x, y in zip(ring_basis(j), ring_basis(ell - j))]
        new = [[0] * dim for _ in range(len(poly) + 1)]
        for k, coeff in enumerate(poly):
            new[k + 1] = [a + b for a, b in zip(new[k + 1], coeff)]
            prod = ring_mul(coeff, root)
            new[k] = [a - b for a, b in zip(new[k], prod)]
        poly = new
    out = []
    for coeff in reversed(poly):
        if any(coeff[1:]):
            raise DomainError("coefficient failed to be rational")
        out.append(coeff[0])
    return out


def zeta11_plus_field():
    """Quintic field of the real subfield at conductor 11, derived on the spot."""
    return QuinticFieldSpec(real_cyclotomic_minpoly(11))


# ---------------------------------------------------------------------------
# conjugates of the generator


def _find_inert_prime(m_asc, start=3, stop=500):
    p = start
    while p <= stop:
        if _is_prime(p):
            mp = _fp_normalize(m_asc, p)
            if len(mp) == DEGREE + 1 and _is_irreducible_mod_p(mp, p):
                return p
        p += 1 if p == 2 else 2
    raise NotCyclicError("no small prime stays irreducible; cannot certify")


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _is_irreducible_mod_p(m_asc, p):
    # degree 5: irreducible iff gcd(s^(p^i) - s, m) = 1 for i = 1, 2
    s = [0, 1]
    for i in (1, 2):
        frob = _fpq_pow(s, p ** i, m_asc, p)
        diff = _fp_normalize(_poly_sub(frob, s), p)
        g = _fp_poly_gcd(m_asc, diff, p)
        if len(g) != 1:
            return False
    return True


def _newton_lift(root_mod_p, m_asc, p, k):
    """Lift a root of m living in (Z/p)[s]/(m) to precision p^k.

    beta is a polynomial expression in the generator; Newton iteration
    doubles the precision each round, carrying the inverse of m'(beta)
    along so no division is needed.
    """
    e = 1
    beta = [c % p for c in root_mod_p]
    mprime = _poly_deriv(m_asc)

    def eval_mod(poly, elem, modulus):
        total = []
        for c in reversed(poly):
            total = _fpq_mul(total, elem, m_asc, modulus)
            total = _fp_normalize(_poly_add(total, [c]), modulus)
        return total

    inv = _fpq_inverse(eval_mod(mprime, beta, p), m_asc, p)
    while e < k:
        e = min(2 * e, k)
        modulus = p ** e
        # refresh the derivative inverse first: w <- w (2 - m'(b) w)
        d = eval_mod(mprime, beta, modulus)
        two_minus = _fp_normalize(_poly_sub([2], _fpq_mul(d, inv, m_asc, modulus)), modulus)
        inv = _fpq_mul(inv, two_minus, m_asc, modulus)
        value = eval_mod(m_asc, beta, modulus)
        step = _fpq_mul(value, inv, m_asc, modulus)
        beta = _fp_normalize(_poly_sub(beta, step), modulus)
    return beta


def _fpq_inverse(elem, m_asc, p):
    a = _fp_normalize(m_asc, p)
    b = _fp_normalize(elem, p)
    r0, r1 = a, b
    t0, t1 = [], [1]
    while r1:
        inv_lead = pow(r1[-1], -1, p)
        r1_monic = [c * inv_lead % p for c in r1]
        q, r = _poly_divmod([c % p for c in r0], r1_monic)
        q = _fp_normalize(_poly_mul(q, [inv_lead]), p)
        r0, r1 = r1, _fp_normalize(r, p)
        t0, t1 = t1, _fp_normalize(_poly_sub(t0, _poly_mul(q, t1)), p)
    if len(r0) != 1:
        raise NotCyclicError("derivative not invertible at the chosen prime")
    scale = pow(r0[0], -1, p)
    return _fp_normalize(_poly_mul(t0, [scale]), p)


def _rational_reconstruct(value, modulus):
    """Unique n/d with n = value * d mod modulus, |n|, d <= sqrt(modulus/2)."""
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, value % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 > bound or t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    if t1 < 0:
        return Fraction(-r1, -t1)
    return Fraction(r1, t1)


MAX_LIFT_BITS = 2 ** 20


def galois_conjugates(spec):
    """The four nontrivial conjugates of the generator, certified exactly.

    Ordering is by composition: with s the returned first conjugate map,
    entry j is s applied j+1 times to the generator.  Raises NotCyclicError
    when the field cannot be cyclic (non-square discriminant) or when no
    conjugate survives exact verification below the precision cap.
    """
    m_desc = list(spec.coefficients)
    if not _is_square(discriminant(m_desc)):
        # cyclic implies Galois group inside the alternating group
        raise NotCyclicError("discriminant is not a square")
    m_asc = spec.ascending()
    p = _find_inert_prime(m_asc)
    # Frobenius orbit of the generator in the residue field
    s = [0, 1]
    frobs = []
    current = s
    for _ in range(4):
        current = _fpq_pow(current, p, m_asc, p)
        frobs.append(current)

    k = 32
    while k * p.bit_length() <= MAX_LIFT_BITS:
        modulus = p ** k
        candidates = []
        ok = True
        for root in frobs:
            lifted = _newton_lift(root, m_asc, p, k)
            lifted = lifted + [0] * (DEGREE - len(lifted))
            coords = []
            for c in lifted[:DEGREE]:
                rec = _rational_reconstruct(c % modulus, modulus)
                if rec is None:
                    ok = False
                    break
                coords.append(rec)
            if not ok:
                break
            candidates.append(spec.element(coords))
        if ok:
            verified = _verify_conjugates(spec, candidates)
            if verified is not None:
                return verified
        k *= 2
    raise NotCyclicError("no rational conjugates found below the precision cap")


def _verify_conjugates(spec, candidates):
    m_asc = spec.ascending()
    alpha = spec.generator()
    seen = {alpha.coords}
    for beta in candidates:
        if evaluate_poly(m_asc, beta):
            return None
        if beta.coords in seen:
            return None
        seen.add(beta.coords)
    # composition consistency: iterating the first map must walk the list
    sigma_alpha = candidates[0]
    walk = alpha
    for expected in candidates:
        walk = apply_embedding(walk, sigma_alpha)
        if walk != expected:
            return None
    if apply_embedding(walk, sigma_alpha) != alpha:
        return None
    return tuple(candidates)
