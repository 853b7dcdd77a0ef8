"""Polynomials over a finite field and the linear substitution a*f(bx+c)+d.

Coefficient vectors are ascending tuples of element indexes with trailing
zeros trimmed; the zero polynomial is the empty tuple.  Polynomials are
immutable values, so transforms always return fresh objects and sharing
across workers is safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DegreeMismatch, FieldMismatch, ParseError
from .field import Field


@dataclass(frozen=True)
class Poly:
    field: Field
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial reports -1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.field!r}, {format_poly(self)!r})"


@dataclass(frozen=True)
class LinearTransform:
    """Substitution data for x -> a*f(bx+c)+d with a, b nonzero."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise ValueError("linear transform requires a != 0 and b != 0")

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


IDENTITY = LinearTransform(1, 1, 0, 0)


def poly_from_coeffs(field: Field, coeffs) -> Poly:
    return Poly(field, tuple(coeffs))


def eval_poly(f: Poly, x: int) -> int:
    """Horner evaluation; exact table arithmetic."""
    fld = f.field
    acc = 0
    for c in reversed(f.coeffs):
        acc = fld.add(fld.mul(acc, x), c)
    return acc


def _check_same_field(f: Poly, g: Poly):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field!r} vs {g.field!r}")


def equal(f: Poly, g: Poly) -> bool:
    _check_same_field(f, g)
    return f.coeffs == g.coeffs


def add_polys(f: Poly, g: Poly) -> Poly:
    _check_same_field(f, g)
    fld = f.field
    n = max(len(f.coeffs), len(g.coeffs))
    return Poly(fld, tuple(fld.add(f.coeff(i), g.coeff(i)) for i in range(n)))


def sub_x(f: Poly) -> Poly:
    """f(x) - x."""
    fld = f.field
    n = max(len(f.coeffs), 2)
    out = list(f.coeffs) + [0] * (n - len(f.coeffs))
    out[1] = fld.sub(out[1], 1)
    return Poly(fld, tuple(out))


def add_x(f: Poly) -> Poly:
    """f(x) + x."""
    fld = f.field
    n = max(len(f.coeffs), 2)
    out = list(f.coeffs) + [0] * (n - len(f.coeffs))
    out[1] = fld.add(out[1], 1)
    return Poly(fld, tuple(out))


def _binomials(field: Field, n: int):
    """Pascal rows 0..n as field elements (entries reduced mod p, so
    characteristic effects like 7*h7 = 0 when p = 7 come out right)."""
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        row = [1]
        for j in range(1, i):
            row.append(field.add(prev[j - 1], prev[j]))
        row.append(1)
        rows.append(row)
    return rows


def apply_transform(f: Poly, t: LinearTransform) -> Poly:
    """Fully expanded coefficient vector of a*f(bx+c)+d."""
    fld = f.field
    deg = f.degree
    if deg < 0:
        return Poly(fld, (t.d,))
    binom = _binomials(fld, deg)
    bpow = [fld.pow(t.b, j) for j in range(deg + 1)]
    cpow = [fld.pow(t.c, j) for j in range(deg + 1)]
    out = [0] * (deg + 1)
    for i, fi in enumerate(f.coeffs):
        if fi == 0:
            continue
        for j in range(i + 1):
            term = fld.mul(fld.mul(binom[i][j], bpow[j]), cpow[i - j])
            out[j] = fld.add(out[j], fld.mul(fi, term))
    out = [fld.mul(t.a, v) for v in out]
    out[0] = fld.add(out[0], t.d)
    return Poly(fld, tuple(out))


def compose_transforms(field: Field, first: LinearTransform,
                       second: LinearTransform) -> LinearTransform:
    """Transform equivalent to applying `first`, then `second` to the result:
    second∘first = (a1*a2, b1*b2, b1*c2 + c1, a2*d1 + d2)."""
    a1, b1, c1, d1 = first.as_tuple()
    a2, b2, c2, d2 = second.as_tuple()
    return LinearTransform(
        field.mul(a1, a2),
        field.mul(b1, b2),
        field.add(field.mul(b1, c2), c1),
        field.add(field.mul(a2, d1), d2),
    )


def invert_transform(field: Field, t: LinearTransform) -> LinearTransform:
    """Transform u with apply_transform(apply_transform(f, t), u) = f."""
    a, b, c, d = t.as_tuple()
    ai, bi = field.inv(a), field.inv(b)
    return LinearTransform(
        ai, bi,
        field.neg(field.mul(c, bi)),
        field.neg(field.mul(d, ai)),
    )


def normalize_deg7(h: Poly) -> tuple[Poly, LinearTransform]:
    """Reduce a degree-7 polynomial to normalised form.

    The result g = a*h(x+c)+d is monic with g(0) = 0; when p != 7 the
    shift c is chosen to cancel the x^6 term as well (c = -h6/(7*h7)).
    In characteristic 7 that term cannot be cleared, so only monicity and
    the zero constant term are enforced.
    """
    fld = h.field
    if h.degree != 7:
        raise DegreeMismatch(f"expected degree 7, got {h.degree}")
    h7 = h.coeffs[7]
    a = fld.inv(h7)
    if fld.p == 7:
        c = 0
    else:
        seven = fld.from_int(7)
        c = fld.neg(fld.mul(h.coeff(6), fld.inv(fld.mul(seven, h7))))
    d = fld.neg(fld.mul(a, eval_poly(h, c)))
    t = LinearTransform(a, 1, c, d)
    return apply_transform(h, t), t


def is_normalized_deg7(f: Poly) -> bool:
    if f.degree != 7 or f.coeffs[7] != 1 or f.coeff(0) != 0:
        return False
    if f.field.p != 7 and f.coeff(6) != 0:
        return False
    return True


# ---------------------------------------------------------------------------
# Text I/O.  Two interchangeable literal syntaxes:
#   vector form:   "0,2,0,0,0,0,0,1"            (ascending coefficients)
#   symbolic form: "x^7+2x", "(3+2t)x^3+tx"     (descending or any order)

_TERM_RE = re.compile(
    r"^(?:\((?P<paren>[^()]+)\)|(?P<plain>[0-9]+|[0-9]*t(?:\^[0-9]+)?))?"
    r"\*?(?P<var>x(?:\^(?P<exp>[0-9]+))?)?$"
)


def parse_poly(field: Field, text: str) -> Poly:
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial literal")
    if "," in s:
        parts = [p.strip() for p in s.split(",")]
        try:
            coeffs = [field.parse_element(p) for p in parts]
        except ParseError as e:
            raise ParseError(f"bad coefficient vector {text!r}: {e}") from None
        return Poly(field, tuple(coeffs))
    return _parse_symbolic(field, s)


def _split_terms(s: str):
    terms = []
    depth = 0
    cur = ""
    sign = 1
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur:
            terms.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif ch in "+-" and depth == 0 and not cur:
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
    if cur:
        terms.append((sign, cur))
    return terms


def _parse_symbolic(field: Field, s: str) -> Poly:
    s = s.replace(" ", "")
    coeffs: dict[int, int] = {}
    for sign, term in _split_terms(s):
        m = _TERM_RE.match(term)
        if not m or (m.group("paren") is None and m.group("plain") is None
                     and m.group("var") is None):
            raise ParseError(f"bad term {term!r} in {s!r}")
        coef_text = m.group("paren") or m.group("plain")
        coef = field.parse_element(coef_text) if coef_text else 1
        if sign < 0:
            coef = field.neg(coef)
        if m.group("var") is None:
            e = 0
        elif m.group("exp") is None:
            e = 1
        else:
            e = int(m.group("exp"))
        coeffs[e] = field.add(coeffs.get(e, 0), coef)
    n = max(coeffs) + 1 if coeffs else 0
    return Poly(field, tuple(coeffs.get(i, 0) for i in range(n)))


def format_poly(f: Poly, form: str = "symbolic") -> str:
    fld = f.field
    if form == "vector":
        return ",".join(fld.format_element(c) for c in f.coeffs)
    if not f.coeffs:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeff(i)
        if c == 0:
            continue
        lit = fld.format_element(c)
        if "+" in lit:
            lit = f"({lit})"
        if i == 0:
            parts.append(lit)
        else:
            var = "x" if i == 1 else f"x^{i}"
            parts.append(var if c == 1 else f"{lit}{var}")
    return "+".join(parts)
