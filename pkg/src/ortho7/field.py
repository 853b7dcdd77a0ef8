"""Finite field construction for small orders q = p^r.

Elements are encoded as integers in [0, q): for prime fields the residue
itself, for extension fields the base-p digit string of the coordinate
vector in the polynomial basis, c_0 + c_1*p + ... + c_{r-1}*p^{r-1}.
Index 0 is the additive identity and index 1 the multiplicative identity.

Arithmetic is table-driven.  Construction precomputes exp/log tables for
the pinned generator plus full q x q add/sub/mul tables, so the inner
loops downstream (permutation checks, pair searches, the census) reduce
to integer array lookups and can be handed to numba or numpy wholesale.

The generator choice is part of the field's identity, not an
implementation detail: the coset-transversal sets used by the canonical
form criteria depend on it.  Prime fields use the least primitive root;
extension fields use the class of x and therefore require the modulus to
be primitive, not merely irreducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import gcd, isqrt

import numpy as np

from .errors import (
    DivisionByZero,
    DlogOfZero,
    NonPrimeP,
    NonPrimitiveModulus,
    ParseError,
    ReducibleModulus,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (fine for n <= 2^32)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Dense polynomial helpers over F_p, used only at construction time.
# Polynomials are tuples of ints, ascending, no trailing zeros.


def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmulmod(u, v, m, p):
    if not u or not v:
        return ()
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    return _pdivmod(tuple(out), m, p)[1]


def _pdivmod(u, m, p):
    u = list(u)
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    quo = [0] * max(len(u) - dm, 0)
    while len(u) - 1 >= dm and any(u):
        if u[-1] == 0:
            u.pop()
            continue
        shift = len(u) - 1 - dm
        factor = (u[-1] * lead_inv) % p
        quo[shift] = factor
        for i, c in enumerate(m):
            u[shift + i] = (u[shift + i] - factor * c) % p
        u.pop()
    return _ptrim(quo), _ptrim(u)


def _pgcd(u, v, p):
    while v:
        u, v = v, _pdivmod(u, v, p)[1]
    if u:
        lead_inv = pow(u[-1], p - 2, p)
        u = tuple((c * lead_inv) % p for c in u)
    return u


def _ppow_xq(k, m, p):
    """x^(p^k) mod m via k successive p-th powers."""
    acc = (0, 1)  # x
    for _ in range(k):
        base, acc = acc, (1,)
        e = p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, m, p)
            base = _pmulmod(base, base, m, p)
            e >>= 1
    return acc


def _pminus_x(u, p):
    """u(x) - x, trimmed."""
    d = list(u) + [0] * (2 - len(u))
    d[1] = (d[1] - 1) % p
    return _ptrim(d)


def poly_is_irreducible(modulus, p: int) -> bool:
    """Degree-r modulus irreducible over F_p iff x^(p^r) = x (mod m) and
    gcd(x^(p^(r/l)) - x, m) = 1 for every prime l | r."""
    m = tuple(c % p for c in modulus)
    r = len(m) - 1
    if r < 1 or m[-1] % p == 0:
        return False
    if r == 1:
        return True
    if _pminus_x(_ppow_xq(r, m, p), p):
        return False
    for ell in prime_factors(r):
        d = _pminus_x(_ppow_xq(r // ell, m, p), p)
        if _pgcd(d, m, p) != (1,):
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Construction recipe: characteristic, extension degree, and monic
    modulus (ascending coefficients, length r+1).  For r = 1 the modulus
    is the placeholder x and is unused."""

    p: int
    r: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.r


class Field:
    """A fully built field F_q with pinned generator and lookup tables.

    Immutable after construction; every operation is pure, so instances
    are safe to share across threads and workers without locking.
    """

    def __init__(self, spec: FieldSpec, theta: int, exp_table: np.ndarray):
        self.spec = spec
        self.p = spec.p
        self.r = spec.r
        self.q = spec.q
        self.theta = theta
        q, p = self.q, self.p

        self.exp_t = exp_table  # length q-1, exp_t[i] = theta^i
        log_t = np.full(q, -1, dtype=np.int64)
        log_t[exp_table] = np.arange(q - 1, dtype=np.int64)
        self.log_t = log_t

        # Digit-wise add/neg; mul through exp/log.
        idx = np.arange(q, dtype=np.int64)
        digits = np.empty((q, self.r), dtype=np.int64)
        v = idx.copy()
        for k in range(self.r):
            digits[:, k] = v % p
            v //= p
        self._digits = digits
        pw = p ** np.arange(self.r, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ pw
        self.add_t = add.astype(np.int64)
        self.neg_t = (((-digits) % p) @ pw).astype(np.int64)
        self.sub_t = self.add_t[:, self.neg_t]

        mul = np.zeros((q, q), dtype=np.int64)
        nz = exp_table
        li = log_t[nz]
        mul[np.ix_(nz, nz)] = exp_table[(li[:, None] + li[None, :]) % (q - 1)]
        self.mul_t = mul

        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp_table[(-(li)) % (q - 1)]
        self.inv_t = inv  # inv_t[0] stays 0; inv() guards

    # -- scalar operations ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_t[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_t[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_t[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_t[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inv(0) in F_{self.q}")
        return int(self.inv_t[a])

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise DivisionByZero(f"0**{n} in F_{self.q}")
            return 0
        return int(self.exp_t[(int(self.log_t[a]) * n) % (self.q - 1)])

    def dlog(self, x: int) -> int:
        if x == 0:
            raise DlogOfZero(f"dlog(0) in F_{self.q}")
        return int(self.log_t[x])

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def from_int(self, k: int) -> int:
        """Embed an integer via the prime subfield (k mod p)."""
        return k % self.p

    # -- element literals --------------------------------------------------

    def element_digits(self, a: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self._digits[a])

    def format_element(self, a: int) -> str:
        """Canonical literal: ascending basis terms, e.g. '0', '3', '2t',
        '3+2t', 't^2'.  This exact form is what the parsers round-trip."""
        if self.r == 1:
            return str(a)
        parts = []
        for k, d in enumerate(self.element_digits(a)):
            if d == 0:
                continue
            if k == 0:
                parts.append(str(d))
            else:
                var = "t" if k == 1 else f"t^{k}"
                parts.append(var if d == 1 else f"{d}{var}")
        return "+".join(parts) if parts else "0"

    def parse_element(self, s: str) -> int:
        """Parse an element literal.

        Accepts the canonical basis form ('3+2t'), pure generator powers
        ('t^5', reduced via the modulus), products like '4t^3', and plain
        integers (reduced mod p for prime-subfield embedding).
        """
        text = s.replace(" ", "")
        if not text:
            raise ParseError("empty element literal")
        acc = 0
        i = 0
        sign = 1
        if text[0] in "+-":
            sign = -1 if text[0] == "-" else 1
            i = 1
        term = ""
        terms = []
        while i <= len(text):
            ch = text[i] if i < len(text) else None
            if ch in ("+", "-", None):
                if not term:
                    raise ParseError(f"bad element literal {s!r}")
                terms.append((sign, term))
                if ch is None:
                    break
                sign = -1 if ch == "-" else 1
                term = ""
            else:
                term += ch
            i += 1
        for sg, t in terms:
            acc = self.add(acc, self._parse_term(t, sg, s))
        return acc

    def _parse_term(self, t: str, sign: int, orig: str) -> int:
        coef = 1
        if "t" in t:
            if self.r == 1:
                raise ParseError(f"generator symbol in prime-field literal {orig!r}")
            head, _, tail = t.partition("t")
            head = head.rstrip("*")
            if head:
                if not head.isdigit():
                    raise ParseError(f"bad coefficient in {orig!r}")
                coef = int(head)
            k = 1
            if tail:
                if not tail.startswith("^") or not tail[1:].isdigit():
                    raise ParseError(f"bad exponent in {orig!r}")
                k = int(tail[1:])
            val = self.mul(self.from_int(coef), self.pow(self.theta, k))
        else:
            if not t.isdigit():
                raise ParseError(f"bad element literal {orig!r}")
            val = self.from_int(int(t))
        return self.neg(val) if sign < 0 else val

    def __repr__(self):
        if self.r == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.r})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)


def _least_primitive_root(p: int) -> int:
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise NonPrimeP(f"no primitive root found for {p}")  # unreachable for prime p


def build_field(spec: FieldSpec) -> Field:
    """Construct F_q, verifying primality, irreducibility and primitivity.

    For r = 1 the generator is the least primitive root; for r > 1 it is
    the class of x, and the exp table is the multiply-by-x orbit of 1,
    which simultaneously proves the modulus primitive when it closes only
    after q-1 steps.
    """
    p, r, q = spec.p, spec.r, spec.q
    if not is_prime(p):
        raise NonPrimeP(f"p={p} is not prime")
    if r < 1:
        raise ValueError(f"extension degree r={r} must be >= 1")
    if r == 1:
        g = _least_primitive_root(p)
        exp = np.empty(q - 1, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            v = (v * g) % p
        return Field(spec, g, exp)

    modulus = tuple(c % p for c in spec.modulus)
    if len(modulus) != r + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {r}, got {spec.modulus}")
    if not poly_is_irreducible(modulus, p):
        raise ReducibleModulus(f"{spec.modulus} is reducible over F_{p}")

    # Multiply-by-x orbit of 1 in digit encoding.
    red = tuple((-c) % p for c in modulus[:-1])  # x^r = red polynomial
    pw = [p ** k for k in range(r)]

    def xmul(a: int) -> int:
        digits = [(a // pw[k]) % p for k in range(r)]
        top = digits[-1]
        out = [0] + digits[:-1]
        for k in range(r):
            out[k] = (out[k] + top * red[k]) % p
        return sum(out[k] * pw[k] for k in range(r))

    exp = np.empty(q - 1, dtype=np.int64)
    v = 1
    for i in range(q - 1):
        exp[i] = v
        v = xmul(v)
        if v == 1 and i < q - 2:
            raise NonPrimitiveModulus(
                f"root of {spec.modulus} has order {i + 1} < {q - 1} in F_{q}")
    if v != 1:
        raise NonPrimitiveModulus(f"orbit of root of {spec.modulus} does not close")
    return Field(spec, p, exp)  # theta = x, encoded as index p


# ---------------------------------------------------------------------------
# Preset registry, shipped as a data file.

_PRESETS = None


def _load_presets() -> dict[int, dict]:
    global _PRESETS
    if _PRESETS is None:
        raw = resources.files("ortho7").joinpath("data", "field_presets.json").read_text()
        _PRESETS = {entry["q"]: entry for entry in json.loads(raw)["presets"]}
    return _PRESETS


def preset_orders() -> list[int]:
    return sorted(_load_presets())


_FIELD_CACHE: dict[int, Field] = {}


def field_for(q: int) -> Field:
    """Build (and cache) the preset field of order q."""
    if q in _FIELD_CACHE:
        return _FIELD_CACHE[q]
    presets = _load_presets()
    if q in presets:
        entry = presets[q]
        spec = FieldSpec(entry["p"], entry["r"], tuple(entry["modulus"]))
        fld = build_field(spec)
        if fld.theta != entry["generator_index"]:
            raise NonPrimitiveModulus(
                f"preset generator mismatch for q={q}: built {fld.theta}, "
                f"registry says {entry['generator_index']}")
    elif is_prime(q):
        fld = build_field(FieldSpec(q, 1, (0, 1)))
    else:
        raise KeyError(f"no preset field of order {q}; pass p/r/modulus explicitly")
    _FIELD_CACHE[q] = fld
    return fld
