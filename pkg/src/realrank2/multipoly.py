"""Exact sparse multivariate polynomials over arbitrary-precision rationals.

A polynomial is a tuple of variable names plus a map from exponent vectors to
nonzero Fraction coefficients.  The canonical term order is graded
lexicographic in the declared variable order; it fixes printing, leading-term
extraction and therefore every piece of symbolic output in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def as_fraction(value) -> Fraction:
    """Coerce ints, strings like '3/4' and floats (exactly) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def grlex_key(exponents: tuple) -> tuple:
    # graded lex: compare total degree first, then the exponent tuple itself
    return (sum(exponents), exponents)


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        clean: dict[tuple, Fraction] = {}
        for expo, coeff in (terms or {}).items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != len(self.variables) or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent vector {expo} for variables {self.variables}")
            c = as_fraction(coeff)
            if c:
                clean[expo] = clean.get(expo, Fraction(0)) + c
                if not clean[expo]:
                    del clean[expo]
        self.terms = clean

    # ------------------------------------------------------------------ build
    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, value, variables: Sequence[str] = ()) -> "MultiPoly":
        c = as_fraction(value)
        if not c:
            return cls.zero(variables)
        return cls(variables, {tuple([0] * len(variables)): c})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        variables = (name,) if variables is None else tuple(variables)
        expo = [0] * len(variables)
        expo[variables.index(name)] = 1
        return cls(variables, {tuple(expo): Fraction(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(variables, {tuple(exponents): coeff})

    def zero_like(self) -> "MultiPoly":
        return MultiPoly.zero(self.variables)

    def one_like(self) -> "MultiPoly":
        return MultiPoly.constant(1, self.variables)

    # ------------------------------------------------------------- structure
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading_term(self) -> tuple[tuple, Fraction]:
        """Leading (exponent, coefficient) under graded lex.  Zero poly raises."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return [(e, self.terms[e]) for e in sorted(self.terms, key=grlex_key, reverse=True)]

    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        """Reindex onto a superset of the current variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        idx = [pos[v] for v in self.variables]
        terms: dict[tuple, Fraction] = {}
        for expo, coeff in self.terms.items():
            new = [0] * len(variables)
            for i, e in zip(idx, expo):
                new[i] = e
            terms[tuple(new)] = coeff
        return MultiPoly(variables, terms)

    def _aligned(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self, other
        union = list(self.variables) + [v for v in other.variables if v not in self.variables]
        return self.extend(union), other.extend(union)

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.variables)
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for expo, coeff in b.terms.items():
            terms[expo] = terms.get(expo, Fraction(0)) + coeff
        return MultiPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.variables)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = as_fraction(other)
            return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})
        a, b = self._aligned(other)
        terms: dict[tuple, Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                expo = tuple(x + y for x, y in zip(ea, eb))
                terms[expo] = terms.get(expo, Fraction(0)) + ca * cb
        return MultiPoly(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if self.is_zero() and other == 0:
                return True
            return self.is_constant() and not self.is_zero() and self.constant_value() == as_fraction(other)
        a, b = self._aligned(other)
        return a.terms == b.terms

    __hash__ = None

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    # ------------------------------------------------------------- division
    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact division; raises NotDivisible if the quotient is not polynomial.

        Leading-term reduction under graded lex terminates because the leading
        monomial of the remainder strictly decreases at every step.
        """
        if not isinstance(divisor, MultiPoly):
            c = as_fraction(divisor)
            if not c:
                raise ZeroDivisionError("division by zero polynomial")
            return self * (Fraction(1) / c)
        a, b = self._aligned(divisor)
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if a.is_zero():
            return a.zero_like()
        lead_e, lead_c = b.leading_term()
        rem = dict(a.terms)
        quot: dict[tuple, Fraction] = {}
        while rem:
            e = max(rem, key=grlex_key)
            diff = tuple(x - y for x, y in zip(e, lead_e))
            if any(d < 0 for d in diff):
                raise NotDivisible("leading term not divisible")
            c = rem[e] / lead_c
            quot[diff] = quot.get(diff, Fraction(0)) + c
            for eb, cb in b.terms.items():
                expo = tuple(x + y for x, y in zip(diff, eb))
                val = rem.get(expo, Fraction(0)) - c * cb
                if val:
                    rem[expo] = val
                else:
                    rem.pop(expo, None)
        return MultiPoly(a.variables, quot)

    # ------------------------------------------------------------ evaluation
    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a full assignment.  Exact inputs give a Fraction."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise ValueError(f"missing values for {missing}")
        vals = [values[v] for v in self.variables]
        exact = all(isinstance(v, (int, Fraction)) for v in vals)
        total = Fraction(0) if exact else 0.0
        for expo, coeff in self.terms.items():
            term = coeff if exact else float(coeff)
            for v, e in zip(vals, expo):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def substitute(self, replacements: Mapping[str, object]) -> "MultiPoly":
        """Substitute polynomials or scalars for a subset of the variables."""
        keep = [v for v in self.variables if v not in replacements]
        result = None
        for expo, coeff in self.terms.items():
            term = MultiPoly.constant(coeff, keep)
            for v, e in zip(self.variables, expo):
                if not e:
                    continue
                if v in replacements:
                    rep = replacements[v]
                    if not isinstance(rep, MultiPoly):
                        rep = MultiPoly.constant(rep, keep)
                    term = term * rep ** e
                else:
                    term = term * MultiPoly.monomial(keep, tuple(int(u == v) for u in keep)) ** e
            result = term if result is None else result + term
        return result if result is not None else MultiPoly.zero(keep)

    def coefficients_in(self, var: str) -> list["MultiPoly"]:
        """Coefficients w.r.t. one variable, ascending degree, over the rest."""
        if var not in self.variables:
            return [self]
        k = self.variables.index(var)
        rest = tuple(v for v in self.variables if v != var)
        deg = max((e[k] for e in self.terms), default=0)
        buckets: list[dict[tuple, Fraction]] = [dict() for _ in range(deg + 1)]
        for expo, coeff in self.terms.items():
            reduced = tuple(e for i, e in enumerate(expo) if i != k)
            buckets[expo[k]][reduced] = coeff
        return [MultiPoly(rest, b) for b in buckets]

    # ---------------------------------------------------------- presentation
    def content(self) -> Fraction:
        """Positive rational c with self/c integer coefficients of gcd 1."""
        if not self.terms:
            return Fraction(1)
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "MultiPoly":
        """Clear denominators, reduce content to 1, leading coefficient > 0."""
        if self.is_zero():
            return self
        scaled = self * (1 / self.content())
        if scaled.leading_term()[1] < 0:
            scaled = -scaled
        return scaled

    def to_text(self) -> str:
        # printed smallest term first, so normalized polynomials read the way
        # low-degree identities are usually written (3*x2^2 - 4*x1*x3 + 1*x0*x4)
        if not self.terms:
            return "0"
        chunks = []
        for expo, coeff in reversed(self.sorted_terms()):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, expo)
                if e
            )
            body = f"{_fraction_text(abs(coeff))}*{mono}" if mono else _fraction_text(abs(coeff))
            chunks.append(("-" if coeff < 0 else "+", body))
        sign, body = chunks[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": {
                ",".join(str(e) for e in expo): _fraction_text(coeff)
                for expo, coeff in self.sorted_terms()
            },
        }

    @classmethod
    def from_json(cls, payload: Mapping) -> "MultiPoly":
        variables = tuple(payload["variables"])
        terms = {
            tuple(int(p) for p in key.split(",")) if key else (): as_fraction(value)
            for key, value in payload["terms"].items()
        }
        return cls(variables, terms)


def det_bareiss(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Exact determinant of a square MultiPoly matrix, fraction-free.

    The Bareiss update divides by the previous pivot, which is exact over any
    integral domain, so intermediate entries stay polynomial.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    context = matrix[0][0]
    work = [[col for col in row] for row in matrix]
    sign = 1
    prev: MultiPoly | None = None
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if not work[i][k].is_zero()), None)
        if pivot_row is None:
            return context.zero_like()
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = work[i][j] * work[k][k] - work[i][k] * work[k][j]
                work[i][j] = num if prev is None else num.exact_div(prev)
            work[i][k] = work[i][k].zero_like()
        prev = work[k][k]
    result = work[-1][-1]
    return result if sign == 1 else -result


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant eliminating `var`, exact over the remaining ring."""
    cp = p.coefficients_in(var)
    cq = q.coefficients_in(var)
    while len(cp) > 1 and cp[-1].is_zero():
        cp.pop()
    while len(cq) > 1 and cq[-1].is_zero():
        cq.pop()
    if (len(cp) == 1 and cp[0].is_zero()) or (len(cq) == 1 and cq[0].is_zero()):
        raise ValueError("resultant of the zero polynomial")
    m, n = len(cp) - 1, len(cq) - 1
    if m == 0:
        return cp[0] ** n
    if n == 0:
        return cq[0] ** m
    size = m + n
    zero = cp[0].zero_like()
    rows: list[list[MultiPoly]] = []
    desc_p = cp[::-1]
    desc_q = cq[::-1]
    for shift in range(n):
        rows.append([zero] * shift + desc_p + [zero] * (size - m - 1 - shift))
    for shift in range(m):
        rows.append([zero] * shift + desc_q + [zero] * (size - n - 1 - shift))
    return det_bareiss(rows)
