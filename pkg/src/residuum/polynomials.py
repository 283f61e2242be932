"""Exact multivariate polynomials over the Gaussian rationals.

Terms are stored sparsely as a map from exponent tuples to nonzero
GaussianRational coefficients.  The canonical term order is graded
lexicographic (total degree first, ties broken lexicographically with
variable 0 strongest); normalization and serialization both use it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import numpy as np

from .errors import DivisionError, ZeroInputError
from .scalars import GaussianRational

Exponent = Tuple[int, ...]


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse multivariate polynomial with GaussianRational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponent, GaussianRational] | None = None):
        self.nvars = int(nvars)
        clean: Dict[Exponent, GaussianRational] = {}
        if terms:
            for exp, c in terms.items():
                c = GaussianRational.from_any(c)
                if c.is_zero():
                    continue
                exp = tuple(int(e) for e in exp)
                if len(exp) != self.nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for nvars={self.nvars}")
                if exp in clean:
                    c = clean[exp] + c
                    if c.is_zero():
                        del clean[exp]
                        continue
                clean[exp] = c
        self.terms = clean

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars, {})

    @staticmethod
    def const(nvars: int, c) -> "MultiPoly":
        c = GaussianRational.from_any(c)
        if c.is_zero():
            return MultiPoly.zero(nvars)
        return MultiPoly(nvars, {tuple([0] * nvars): c})

    @staticmethod
    def variable(nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[i] = 1
        return MultiPoly(nvars, {tuple(exp): GaussianRational(1)})

    @staticmethod
    def monomial(nvars: int, exp: Exponent, c=1) -> "MultiPoly":
        return MultiPoly(nvars, {tuple(exp): GaussianRational.from_any(c)})

    # -- predicates / queries ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> GaussianRational:
        if self.is_zero():
            return GaussianRational(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if self.is_zero():
            return -1
        return max(e[var] for e in self.terms)

    def depends_on(self, var: int) -> bool:
        return any(e[var] > 0 for e in self.terms)

    def leading_exponent(self) -> Exponent:
        if self.is_zero():
            raise ZeroInputError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> GaussianRational:
        return self.terms[self.leading_exponent()]

    def sorted_terms(self) -> List[Tuple[Exponent, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic --------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(exp, None)
            else:
                terms[exp] = s
        out = MultiPoly.zero(self.nvars)
        out.terms = terms
        return out

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.zero(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.from_any(other)
            if c.is_zero():
                return MultiPoly.zero(self.nvars)
            out = MultiPoly.zero(self.nvars)
            out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        self._check(other)
        terms: Dict[Exponent, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = terms.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = MultiPoly.zero(self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def partial(self, var: int) -> "MultiPoly":
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range")
        terms: Dict[Exponent, GaussianRational] = {}
        for exp, c in self.terms.items():
            k = exp[var]
            if k == 0:
                continue
            e = list(exp)
            e[var] = k - 1
            terms[tuple(e)] = c * k
        out = MultiPoly.zero(self.nvars)
        out.terms = terms
        return out

    # -- evaluation ---------------------------------------------------

    def eval_exact(self, point: Iterable[GaussianRational]) -> GaussianRational:
        pt = [GaussianRational.from_any(p) for p in point]
        if len(pt) != self.nvars:
            raise ValueError("point dimension mismatch")
        acc = GaussianRational(0)
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(pt, exp):
                if e:
                    v = v * (x ** e)
            acc = acc + v
        return acc

    def eval_numeric(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at complex points; last axis indexes the variables."""
        pts = np.asarray(points, dtype=complex)
        if pts.shape[-1] != self.nvars:
            raise ValueError("point dimension mismatch")
        acc = np.zeros(pts.shape[:-1], dtype=complex)
        for exp, c in self.terms.items():
            v = np.full(pts.shape[:-1], complex(c))
            for i, e in enumerate(exp):
                if e:
                    v = v * pts[..., i] ** e
            acc = acc + v
        return acc

    def vanishes_at_origin(self) -> bool:
        return tuple([0] * self.nvars) not in self.terms

    # -- structure ----------------------------------------------------

    def coeffs_in_var(self, var: int) -> Dict[int, "MultiPoly"]:
        """View as univariate in `var`; values are polynomials with exponent 0 in `var`."""
        out: Dict[int, MultiPoly] = {}
        for exp, c in self.terms.items():
            k = exp[var]
            e = list(exp)
            e[var] = 0
            p = out.setdefault(k, MultiPoly.zero(self.nvars))
            p.terms[tuple(e)] = p.terms.get(tuple(e), GaussianRational(0)) + c
        for k in list(out):
            out[k].terms = {e: c for e, c in out[k].terms.items() if not c.is_zero()}
            if out[k].is_zero():
                del out[k]
        return out

    def leading_coefficient_in(self, var: int) -> "MultiPoly":
        d = self.degree_in(var)
        if d < 0:
            return MultiPoly.zero(self.nvars)
        return self.coeffs_in_var(var).get(d, MultiPoly.zero(self.nvars))

    def shift_var(self, var: int, a: GaussianRational) -> "MultiPoly":
        """Substitute z_var -> z_var + a."""
        a = GaussianRational.from_any(a)
        if a.is_zero():
            return self
        out = MultiPoly.zero(self.nvars)
        zv = MultiPoly.variable(self.nvars, var) + MultiPoly.const(self.nvars, a)
        for k, coeff in self.coeffs_in_var(var).items():
            out = out + coeff * (zv ** k)
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"

    def to_string(self, names: List[str] | None = None) -> str:
        if self.is_zero():
            return "0"
        names = names or [f"z{i+1}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(exp) if e > 0
            )
            if mono:
                cs = "" if c.is_one() else f"({c})*"
                parts.append(f"{cs}{mono}")
            else:
                parts.append(f"({c})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# normalization helpers
# ---------------------------------------------------------------------------

def monic_grlex(p: MultiPoly) -> MultiPoly:
    """Scale so the graded-lex leading coefficient is 1."""
    if p.is_zero():
        return p
    return p * p.leading_coefficient().inverse()


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return p/q if q divides p exactly, else raise DivisionError."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return MultiPoly.zero(p.nvars)
    p._check(q)
    quot = MultiPoly.zero(p.nvars)
    rem = p
    lq = q.leading_exponent()
    cq = q.terms[lq]
    while not rem.is_zero():
        lr = rem.leading_exponent()
        diff = tuple(a - b for a, b in zip(lr, lq))
        if any(d < 0 for d in diff):
            raise DivisionError(f"{q!r} does not divide {p!r}")
        c = rem.terms[lr] / cq
        t = MultiPoly.monomial(p.nvars, diff, c)
        quot = quot + t
        rem = rem - t * q
    return quot


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        exact_divide(p, q)
        return True
    except DivisionError:
        return False


# ---------------------------------------------------------------------------
# pseudo-division and gcd (primitive PRS)
# ---------------------------------------------------------------------------

def pseudo_remainder(p: MultiPoly, q: MultiPoly, var: int) -> MultiPoly:
    """Pseudo-remainder of p by q, both viewed univariate in `var`."""
    dq = q.degree_in(var)
    if dq < 0:
        raise ZeroInputError("pseudo-division by zero")
    lc_q = q.leading_coefficient_in(var)
    rem = p
    dp = rem.degree_in(var)
    if dp < dq:
        return rem
    # multiply once by lc_q^(dp-dq+1), then do exact single-step reductions
    rem = rem * (lc_q ** (dp - dq + 1))
    while not rem.is_zero():
        dr = rem.degree_in(var)
        if dr < dq:
            break
        lead = rem.coeffs_in_var(var).get(dr, MultiPoly.zero(p.nvars))
        factor = exact_divide(lead, lc_q)
        shift = MultiPoly.variable(p.nvars, var) ** (dr - dq)
        rem = rem - factor * shift * q
    return rem


def content_in_var(p: MultiPoly, var: int) -> MultiPoly:
    """gcd of the coefficients of p viewed univariate in `var`."""
    coeffs = list(p.coeffs_in_var(var).values())
    if not coeffs:
        return MultiPoly.zero(p.nvars)
    g = coeffs[0]
    for c in coeffs[1:]:
        g = gcd(g, c)
        if g.is_constant():
            break
    return monic_grlex(g)


def primitive_part_in_var(p: MultiPoly, var: int) -> MultiPoly:
    if p.is_zero():
        return p
    c = content_in_var(p, var)
    return monic_grlex(exact_divide(p, c))


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Full multivariate gcd over Q(i), normalized graded-lex monic."""
    if p.is_zero() and q.is_zero():
        return MultiPoly.zero(p.nvars)
    if p.is_zero():
        return monic_grlex(q)
    if q.is_zero():
        return monic_grlex(p)
    if p.is_constant() or q.is_constant():
        return MultiPoly.const(p.nvars, 1)
    for var in range(p.nvars):
        in_p, in_q = p.depends_on(var), q.depends_on(var)
        if in_p and in_q:
            cont = gcd(content_in_var(p, var), content_in_var(q, var))
            a, b = primitive_part_in_var(p, var), primitive_part_in_var(q, var)
            while not b.is_zero():
                r = pseudo_remainder(a, b, var)
                if not r.is_zero():
                    r = primitive_part_in_var(r, var)
                a, b = b, r
            return monic_grlex(cont * a)
        if in_p:
            return gcd(content_in_var(p, var), q)
        if in_q:
            return gcd(p, content_in_var(q, var))
    return MultiPoly.const(p.nvars, 1)


def gcd_in_var(p: MultiPoly, q: MultiPoly, var: int) -> MultiPoly:
    """gcd of p, q viewed univariate in `var` over the rational-function field
    of the remaining variables: the content in `var` is stripped."""
    if p.is_zero() and q.is_zero():
        raise ZeroInputError("gcd of two zero polynomials")
    if p.is_zero():
        return monic_grlex(q)
    if q.is_zero():
        return monic_grlex(p)
    if not (p.depends_on(var) and q.depends_on(var)):
        return MultiPoly.const(p.nvars, 1)
    a, b = primitive_part_in_var(p, var), primitive_part_in_var(q, var)
    while not b.is_zero():
        r = pseudo_remainder(a, b, var)
        if not r.is_zero():
            r = primitive_part_in_var(r, var)
        a, b = b, r
    if not a.depends_on(var):
        return MultiPoly.const(p.nvars, 1)
    return primitive_part_in_var(a, var)


# ---------------------------------------------------------------------------
# resultant / discriminant (fraction-free Bareiss on the Sylvester matrix)
# ---------------------------------------------------------------------------

def _bareiss_det(m: List[List[MultiPoly]], nvars: int) -> MultiPoly:
    n = len(m)
    if n == 0:
        return MultiPoly.const(nvars, 1)
    m = [row[:] for row in m]
    sign = 1
    prev = MultiPoly.const(nvars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return MultiPoly.zero(nvars)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
            m[i][k] = MultiPoly.zero(nvars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: MultiPoly, q: MultiPoly, var: int) -> MultiPoly:
    """Sylvester-determinant resultant in `var`."""
    dp, dq = p.degree_in(var), q.degree_in(var)
    if p.is_zero() or q.is_zero():
        raise ZeroInputError("resultant of a zero polynomial")
    if dp == 0 and dq == 0:
        return MultiPoly.const(p.nvars, 1)
    if dp == 0:
        return p ** dq
    if dq == 0:
        return q ** dp
    pc = p.coeffs_in_var(var)
    qc = q.coeffs_in_var(var)
    zero = MultiPoly.zero(p.nvars)
    n = dp + dq
    rows: List[List[MultiPoly]] = []
    for i in range(dq):
        row = [zero] * n
        for k in range(dp + 1):
            row[i + k] = pc.get(dp - k, zero)
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for k in range(dq + 1):
            row[i + k] = qc.get(dq - k, zero)
        rows.append(row)
    return _bareiss_det(rows, p.nvars)


def discriminant(p: MultiPoly, var: int) -> MultiPoly:
    """(-1)^(d(d-1)/2) * resultant(p, dp/dvar) / lc_var(p)."""
    d = p.degree_in(var)
    if d <= 0:
        raise ZeroInputError("discriminant needs positive degree in the variable")
    dp = p.partial(var)
    if dp.is_zero():
        raise ZeroInputError("derivative vanished; characteristic-0 expects nonzero")
    res = resultant(p, dp, var)
    lc = p.leading_coefficient_in(var)
    out = exact_divide(res, lc)
    if (d * (d - 1) // 2) % 2 == 1:
        out = -out
    return out


# ---------------------------------------------------------------------------
# squarefree decomposition (gcd ladder, with respect to one variable)
# ---------------------------------------------------------------------------

def _field_div_primitive(p: MultiPoly, q: MultiPoly, var: int) -> MultiPoly:
    """Primitive part of p/q when q divides p over the function field in `var`.

    p * lc(q)^(dp-dq+1) is exactly divisible by q whenever the field-quotient
    exists; the var-free content introduced that way is stripped afterwards.
    """
    if not q.depends_on(var):
        return primitive_part_in_var(p, var) if p.depends_on(var) else monic_grlex(p)
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp < dq:
        raise DivisionError("field division with deficient degree")
    lc = q.leading_coefficient_in(var)
    quot = exact_divide(p * (lc ** (dp - dq + 1)), q)
    return primitive_part_in_var(quot, var) if quot.depends_on(var) else monic_grlex(quot)


def squarefree_decompose(p: MultiPoly, var: int) -> List[Tuple[MultiPoly, int]]:
    """Squarefree decomposition of p in `var`.

    The product of factor^multiplicity equals p up to a factor free of `var`;
    factors are pairwise coprime and squarefree in `var` (not necessarily
    irreducible).
    """
    if p.is_zero():
        raise ZeroInputError("squarefree decomposition of zero")
    if not p.depends_on(var):
        return []
    f = primitive_part_in_var(p, var)
    g = gcd_in_var(f, f.partial(var), var)
    if not g.depends_on(var):
        return [(f, 1)]
    w = _field_div_primitive(f, g, var)
    out: List[Tuple[MultiPoly, int]] = []
    i = 1
    while w.depends_on(var):
        y = gcd_in_var(w, g, var) if g.depends_on(var) else MultiPoly.const(p.nvars, 1)
        z = _field_div_primitive(w, y, var)
        if z.depends_on(var):
            out.append((z, i))
        w = y
        if g.depends_on(var) and y.depends_on(var):
            g = _field_div_primitive(g, y, var)
        i += 1
        if i > p.degree_in(var) + 1:
            raise DivisionError("squarefree ladder failed to terminate")
    return out
