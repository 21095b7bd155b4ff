"""Exact Laurent-polynomial arithmetic for link invariants.

Two rings are used throughout the package:

* ``LaurentPoly2`` -- integer Laurent polynomials in the variable pair
  (v, z), the value ring of the two-variable skein polynomial.
* ``LaurentPoly1`` -- integer Laurent polynomials in t, the value ring
  of the Alexander polynomial.

Both are thin immutable wrappers around sparse exponent -> coefficient
maps.  All arithmetic is exact (Python big integers); zero coefficients
are never stored, so structural equality is polynomial equality.

Alexander polynomials are only ever well defined up to a unit +-t^k and
the substitution t -> 1/t.  ``canonical_1var`` picks a representative of
that equivalence class (shift lowest exponent to 0, make the lowest
coefficient positive, then take the lexicographically smaller of the
coefficient vector and its reverse) so that "equal up to units" becomes
structural equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class ZeroPolynomialError(ValueError):
    """Degree data requested for the zero polynomial."""


# ---------------------------------------------------------------------------
# Two-variable ring Z[v^{\pm 1}, z^{\pm 1}]
# ---------------------------------------------------------------------------

class LaurentPoly2:
    """Sparse integer Laurent polynomial in (v, z)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                if c:
                    clean[(int(a), int(b))] = int(c)
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, coeff: int, v_exp: int, z_exp: int) -> "LaurentPoly2":
        return cls({(v_exp, z_exp): coeff})

    # -- ring operations ----------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly2) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = LaurentPoly2.__new__(LaurentPoly2)
        res.terms = out
        return res

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) - c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = LaurentPoly2.__new__(LaurentPoly2)
        res.terms = out
        return res

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        res = LaurentPoly2.__new__(LaurentPoly2)
        res.terms = out
        return res

    def shifted(self, coeff: int, v_exp: int, z_exp: int) -> "LaurentPoly2":
        """Multiply by the monomial coeff * v^v_exp * z^z_exp."""
        if coeff == 0:
            return LaurentPoly2.zero()
        out = {(a + v_exp, b + z_exp): c * coeff for (a, b), c in self.terms.items()}
        res = LaurentPoly2.__new__(LaurentPoly2)
        res.terms = out
        return res

    def __pow__(self, k: int) -> "LaurentPoly2":
        if k < 0:
            raise ValueError("negative powers not supported")
        result = LaurentPoly2.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- degree data ----------------------------------------------------

    def v_exponents(self) -> list[int]:
        return [a for (a, _b) in self.terms]

    # -- serialization --------------------------------------------------

    def to_triples(self) -> list[list[int]]:
        """JSON form: list of [v_exp, z_exp, coeff], sorted lexicographically."""
        return [[a, b, self.terms[(a, b)]] for (a, b) in sorted(self.terms)]

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> "LaurentPoly2":
        out: dict[tuple[int, int], int] = {}
        for a, b, c in triples:
            key = (int(a), int(b))
            if key in out:
                raise ValueError(f"duplicate term {key}")
            if c:
                out[key] = int(c)
        return cls(out)

    def to_text(self) -> str:
        """Canonical text form, e.g. ``2*v^2*z^0 + -1*v^4*z^0 + 1*v^2*z^2``.

        Terms are sorted by (v_exp, z_exp); round-trips bit-exactly
        through :func:`LaurentPoly2.from_text`.
        """
        if not self.terms:
            return "0"
        parts = [f"{self.terms[(a, b)]}*v^{a}*z^{b}" for (a, b) in sorted(self.terms)]
        return " + ".join(parts)

    _TERM_RE = re.compile(r"^(-?\d+)\*v\^(-?\d+)\*z\^(-?\d+)$")

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly2":
        text = text.strip()
        if text == "0":
            return cls.zero()
        out: dict[tuple[int, int], int] = {}
        for part in text.split(" + "):
            m = cls._TERM_RE.match(part.strip())
            if m is None:
                raise ValueError(f"bad polynomial term: {part!r}")
            c, a, b = (int(g) for g in m.groups())
            key = (a, b)
            if key in out:
                raise ValueError(f"duplicate term {key}")
            if c:
                out[key] = c
        return cls(out)

    def __repr__(self) -> str:
        return f"LaurentPoly2({self.to_text()})"


# ---------------------------------------------------------------------------
# One-variable ring Z[t^{\pm 1}]
# ---------------------------------------------------------------------------

class LaurentPoly1:
    """Sparse integer Laurent polynomial in t."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self.terms = clean

    @classmethod
    def zero(cls) -> "LaurentPoly1":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly1":
        return cls({0: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], offset: int = 0) -> "LaurentPoly1":
        return cls({offset + i: c for i, c in enumerate(coeffs) if c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly1) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly1.__new__(LaurentPoly1)
        res.terms = out
        return res

    def __neg__(self) -> "LaurentPoly1":
        return LaurentPoly1({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly1.__new__(LaurentPoly1)
        res.terms = out
        return res

    def evaluate(self, t: int) -> int:
        """Exact evaluation at a nonzero integer; result cleared of t-denominators.

        Returns sum c_e * t^e * t^{-min_exp} (the unit shift keeps it integral),
        which is all callers need since values are only used up to sign.
        """
        if not self.terms:
            return 0
        m = min(self.terms)
        return sum(c * t ** (e - m) for e, c in self.terms.items())

    def min_exp(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return max(self.terms)

    def reversed_var(self) -> "LaurentPoly1":
        """Substitute t -> 1/t."""
        return LaurentPoly1({-e: c for e, c in self.terms.items()})

    def to_offset_coeffs(self) -> tuple[int, list[int]]:
        """Dense form (offset, coeffs) with coeffs[0] the t^offset coefficient."""
        if not self.terms:
            return (0, [0])
        lo, hi = min(self.terms), max(self.terms)
        return (lo, [self.terms.get(e, 0) for e in range(lo, hi + 1)])

    def __repr__(self) -> str:
        return f"LaurentPoly1({pretty_1var(self)})"


def pretty_1var(p: LaurentPoly1, var: str = "t") -> str:
    """Human-readable rendering, e.g. ``t^-1 - 1 + t``."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms):
        c = p.terms[e]
        if e == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{mag}{var}" if e == 1 else f"{mag}{var}^{e}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Canonical Alexander representatives
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlexanderData:
    """Normalized Alexander polynomial with the derived scalar data.

    ``coeffs`` is the canonical coefficient vector (lowest exponent first);
    ``offset`` symmetrizes the exponents around 0 when the span is even.
    ``leading`` is the coefficient of the highest-degree term, ``span``
    the difference of extreme degrees, ``determinant`` |Delta(-1)|.
    """

    coeffs: tuple[int, ...]
    offset: int
    span: int
    leading: int
    determinant: int

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def poly(self) -> LaurentPoly1:
        return LaurentPoly1.from_coeffs(self.coeffs, self.offset)

    def to_cell(self) -> str:
        """TSV cell form ``offset:c0,c1,...``."""
        return f"{self.offset}:{','.join(str(c) for c in self.coeffs)}"

    @classmethod
    def from_cell(cls, cell: str) -> "AlexanderData":
        off_s, _, coeff_s = cell.partition(":")
        if not coeff_s:
            raise ValueError(f"bad alexander cell {cell!r}")
        coeffs = [int(x) for x in coeff_s.split(",")]
        return canonical_1var(LaurentPoly1.from_coeffs(coeffs, int(off_s)))

    def to_json(self) -> dict:
        return {"offset": self.offset, "coeffs": list(self.coeffs)}

    def pretty(self) -> str:
        return pretty_1var(self.poly())


def canonical_1var(p: LaurentPoly1) -> AlexanderData:
    """Canonical representative of p up to units +-t^k and t -> 1/t."""
    if not p.terms:
        return AlexanderData(coeffs=(0,), offset=0, span=0, leading=0, determinant=0)
    lo, hi = min(p.terms), max(p.terms)
    fwd = [p.terms.get(e, 0) for e in range(lo, hi + 1)]
    if fwd[0] < 0:
        fwd = [-c for c in fwd]
    rev = list(reversed(fwd))
    if rev[0] < 0:
        rev = [-c for c in rev]
    coeffs = tuple(min(fwd, rev))
    span = len(coeffs) - 1
    offset = -(span // 2) if span % 2 == 0 else 0
    det = abs(sum(c * (-1) ** i for i, c in enumerate(coeffs)))
    return AlexanderData(
        coeffs=coeffs, offset=offset, span=span, leading=coeffs[-1], determinant=det
    )


def alexander_equal(p: LaurentPoly1, q: LaurentPoly1) -> bool:
    """Equality up to units and t -> 1/t."""
    return canonical_1var(p).coeffs == canonical_1var(q).coeffs


# ---------------------------------------------------------------------------
# Exact integer linear algebra (used by the Seifert-matrix pipeline)
# ---------------------------------------------------------------------------

def bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free exact determinant of an integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def interpolate_int_poly(points: list[tuple[int, int]]) -> list[int]:
    """Exact Lagrange interpolation through integer points.

    Returns the coefficient list c0..cd (degree = len(points) - 1, trailing
    zeros trimmed).  Raises if the interpolant is not integral, which would
    indicate the sampled values do not come from an integer polynomial.
    """
    from fractions import Fraction

    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    deg = len(points) - 1
    coeffs = [Fraction(0)] * (deg + 1)
    for i, (xi, yi) in enumerate(points):
        # Basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xj
                new[k + 1] += c
            basis = new
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ValueError("non-integral interpolation result")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def char_poly(matrix: list[list[int]]) -> list[int]:
    """Coefficients c0..cn of det(x*I - M) for an integer matrix M."""
    n = len(matrix)
    pts = []
    for x in range(n + 1):
        shifted = [
            [x * (1 if i == j else 0) - matrix[i][j] for j in range(n)]
            for i in range(n)
        ]
        pts.append((x, bareiss_det(shifted)))
    coeffs = interpolate_int_poly(pts)
    coeffs += [0] * (n + 1 - len(coeffs))
    return coeffs


def symmetric_signature(matrix: list[list[int]]) -> int:
    """Signature of a symmetric integer matrix, exactly.

    All eigenvalues are real, so Descartes' rule applied to the
    characteristic polynomial is exact: positive eigenvalues = sign
    changes of det(xI - M), negative ones = sign changes of det(-xI - M).
    """
    coeffs = char_poly(matrix)
    def changes(cs: Iterator[int]) -> int:
        signs = [1 if c > 0 else -1 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = changes(reversed(coeffs))
    neg_coeffs = [c * (-1) ** i for i, c in enumerate(coeffs)]
    neg = changes(reversed(neg_coeffs))
    return pos - neg
