"""Sparse multivariate polynomials with exchangeable coefficient rings.

Terms live in a dict keyed by exponent tuples; zero coefficients are never
stored.  Coefficients only need +, -, *, equality and truthiness, so the
same class serves integer, Fraction and number-field coefficients.
"""

from __future__ import annotations


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        object.__setattr__(self, "variables", tuple(variables))
        clean = {}
        if terms:
            width = len(self.variables)
            for exps, coeff in terms.items():
                key = tuple(int(e) for e in exps)
                if len(key) != width or any(e < 0 for e in key):
                    raise ValueError(f"bad exponent tuple {key}")
                if coeff:
                    clean[key] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, value):
        variables = tuple(variables)
        if not value:
            return cls(variables, {})
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables, name, coeff=1):
        variables = tuple(variables)
        idx = variables.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {exps: coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError("variable mismatch")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.variables, other)
        self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            total = terms.get(exps, 0) + coeff if exps in terms else coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return MultiPoly(self.variables, terms)

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.variables, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly(
                self.variables,
                {e: c * other for e, c in self.terms.items() if c * other},
            )
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                prev = terms.get(key)
                total = c1 * c2 if prev is None else prev + c1 * c2
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def derivative(self, name):
        idx = self.variables.index(name)
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            key = tuple(x - 1 if i == idx else x for i, x in enumerate(exps))
            value = coeff * e
            if value:
                terms[key] = value
        return MultiPoly(self.variables, terms)

    def evaluate(self, values):
        """Evaluate at a point given as {name: value}; missing names stay symbolic
        only if their exponent is zero everywhere, otherwise KeyError."""
        order = [values[name] for name in self.variables]
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for base, e in zip(order, exps):
                for _ in range(e):
                    term = term * base
            total = total + term
        return total

    def substitute(self, mapping):
        """Substitute polynomials for variables.

        ``mapping`` sends variable names to MultiPolys over one common target
        variable set; unmapped variables are not allowed.
        """
        images = [mapping[name] for name in self.variables]
        target_vars = images[0].variables
        for img in images:
            if img.variables != target_vars:
                raise ValueError("images must share one variable set")
        power_cache = [{0: MultiPoly.constant(target_vars, 1)} for _ in images]
        result = MultiPoly.zero(target_vars)
        for exps, coeff in self.terms.items():
            term = MultiPoly.constant(target_vars, coeff)
            for i, e in enumerate(exps):
                cache = power_cache[i]
                if e not in cache:
                    p = max(cache)
                    acc = cache[p]
                    while p < e:
                        acc = acc * images[i]
                        p += 1
                        cache[p] = acc
                term = term * cache[e]
            result = result + term
        return result

    def map_coefficients(self, fn):
        terms = {}
        for exps, coeff in self.terms.items():
            value = fn(coeff)
            if value:
                terms[exps] = value
        return MultiPoly(self.variables, terms)

    def reduce_mod(self, n):
        return self.map_coefficients(lambda c: c % n)

    def coefficient_vector(self, monomial_order):
        """Coefficients listed along the given exponent-tuple order.

        Raises if the polynomial has a term outside the listed monomials.
        """
        index = {e: i for i, e in enumerate(monomial_order)}
        vec = [0] * len(monomial_order)
        for exps, coeff in self.terms.items():
            if exps not in index:
                raise ValueError(f"monomial {exps} outside the order")
            vec[index[exps]] = coeff
        return vec

    @classmethod
    def from_coefficient_vector(cls, variables, monomial_order, vector):
        terms = {}
        for exps, coeff in zip(monomial_order, vector):
            if coeff:
                terms[exps] = coeff
        return cls(variables, terms)

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            coeff = self.terms[exps]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exps)
                if e
            )
            parts.append(f"({coeff})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def monomials_of_degree(variables, degree):
    """All degree-d exponent tuples, graded lex with the first variable largest.

    Within one degree this is descending lexicographic order on tuples, so
    for (x, y, z) and degree 5 the list starts x^5, x^4 y, x^4 z, ...
    """
    n = len(variables)
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, n)
    return out
