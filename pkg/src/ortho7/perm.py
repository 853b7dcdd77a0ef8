"""Ground-truth property tests by direct evaluation, and the census.

The census is the independent oracle for everything the classification
machinery produces: it iterates the full coefficient space of a degree
(an odometer with the constant coefficient fastest, so index ranges can
be sharded across workers) and counts polynomials whose evaluation map
has the requested property.  Totals are sums over shards, hence
independent of the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import kernels
from .errors import BudgetExceeded
from .field import Field
from .poly import Poly, eval_poly


def is_permutation(f: Poly) -> bool:
    """True iff x -> f(x) hits every field element; early exit on the
    first collision."""
    fld = f.field
    hit = bytearray(fld.q)
    for x in fld.elements():
        v = eval_poly(f, x)
        if hit[v]:
            return False
        hit[v] = 1
    return True


def is_orthomorphism(f: Poly) -> bool:
    """True iff f and f - x are both permutations.  Evaluates f once per
    point and feeds two hit masks in a single pass."""
    fld = f.field
    hit_f = bytearray(fld.q)
    hit_h = bytearray(fld.q)
    for x in fld.elements():
        v = eval_poly(f, x)
        if hit_f[v]:
            return False
        hit_f[v] = 1
        w = fld.sub(v, x)
        if hit_h[w]:
            return False
        hit_h[w] = 1
    return True


def is_complete_mapping(f: Poly) -> bool:
    """True iff f and f + x are both permutations."""
    fld = f.field
    hit_f = bytearray(fld.q)
    hit_h = bytearray(fld.q)
    for x in fld.elements():
        v = eval_poly(f, x)
        if hit_f[v]:
            return False
        hit_f[v] = 1
        w = fld.add(v, x)
        if hit_h[w]:
            return False
        hit_h[w] = 1
    return True


_PROP_CODES = {"pp": kernels.PROP_PP, "op": kernels.PROP_OP, "cpp": kernels.PROP_CPP}


@dataclass(frozen=True)
class CensusQuery:
    field: Field
    degree: int = 7
    canonical_only: bool = False
    property: str = "op"

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("census degree must be >= 1")
        if self.property not in _PROP_CODES:
            raise ValueError(f"unknown property {self.property!r}")

    def space(self) -> int:
        """Candidate count: (q-1)*q^(degree-1) restricted to zero constant
        term, (q-1)*q^degree otherwise.  (Plain method: the `property`
        field name shadows the builtin decorator in this class body.)"""
        q = self.field.q
        free = self.degree - 1 if self.canonical_only else self.degree
        return (q - 1) * q**free


DEFAULT_BUDGET = 10**9


def census(query: CensusQuery, workers: int = 1, budget: int = DEFAULT_BUDGET,
           backend: str | None = None) -> int:
    """Exact count of degree-`degree` polynomials with the property.

    Deterministic for fixed inputs regardless of `workers`: the candidate
    range is split into contiguous shards whose counts are summed.
    """
    total = query.space()
    if total > budget:
        raise BudgetExceeded(
            f"census space {total} exceeds budget {budget} "
            f"(q={query.field.q}, degree={query.degree})")
    prop = _PROP_CODES[query.property]

    def run(start: int, stop: int) -> int:
        return kernels.census_scan(query.field, query.degree,
                                   query.canonical_only, prop, start, stop,
                                   backend=backend)

    if workers <= 1 or total < 1 << 16:
        return run(0, total)
    shards = max(workers * 4, 1)
    step = -(-total // shards)
    bounds = [(s, min(s + step, total)) for s in range(0, total, step)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda se: run(*se), bounds))
