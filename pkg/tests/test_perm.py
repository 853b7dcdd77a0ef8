"""Direct property tests and the census, cross-validated against a
plain-python brute-force oracle on small degrees."""

from itertools import product

import pytest

from ortho7.errors import BudgetExceeded
from ortho7.field import field_for
from ortho7.perm import (
    CensusQuery,
    census,
    is_complete_mapping,
    is_orthomorphism,
    is_permutation,
)
from ortho7.poly import Poly, apply_transform, LinearTransform, parse_poly


def test_permutation_fixtures(f13):
    assert is_permutation(parse_poly(f13, "x"))
    assert is_permutation(parse_poly(f13, "x^7+2x"))
    assert not is_permutation(parse_poly(f13, "x^7+x"))


def test_orthomorphism_fixtures(f13):
    assert not is_orthomorphism(parse_poly(f13, "x"))  # f - x = 0
    assert is_orthomorphism(parse_poly(f13, "3x^7+7x"))
    assert not is_orthomorphism(parse_poly(f13, "x^7+2x"))


def test_orthomorphism_not_preserved_by_scaling(f5):
    # 4x+1 is an orthomorphism of F_5, but rescaling can break the
    # property: 4*(4x+1) = x+4 has slope 1, so f - x degenerates.
    assert is_orthomorphism(parse_poly(f5, "4x+1"))
    assert not is_orthomorphism(parse_poly(f5, "x+4"))  # 4*f
    assert not is_orthomorphism(parse_poly(f5, "x+1"))  # f(4x)


def test_complete_mapping_fixtures(f13):
    assert is_complete_mapping(parse_poly(f13, "x"))
    # derived directly: x^7+3x is not a bijection of F_13
    assert not is_permutation(parse_poly(f13, "x^7+3x"))
    assert not is_complete_mapping(parse_poly(f13, "x^7+2x"))


def test_pp_invariant_under_linear_transform(f11):
    import random

    rnd = random.Random(4)
    for _ in range(40):
        f = Poly(f11, tuple(rnd.randrange(11) for _ in range(7)) + (rnd.randrange(1, 11),))
        t = LinearTransform(rnd.randrange(1, 11), rnd.randrange(1, 11),
                            rnd.randrange(11), rnd.randrange(11))
        assert is_permutation(f) == is_permutation(apply_transform(f, t))


def _brute_census(fld, deg, canonical, prop):
    fn = {"pp": is_permutation, "op": is_orthomorphism,
          "cpp": is_complete_mapping}[prop]
    count = 0
    lows = (0,) if canonical else tuple(fld.elements())
    for lead in fld.nonzero():
        for rest in product(fld.elements(), repeat=deg - 1):
            for c0 in lows:
                if fn(Poly(fld, (c0,) + rest + (lead,))):
                    count += 1
    return count


@pytest.mark.parametrize("q,deg", [(5, 3), (8, 2), (11, 2)])
@pytest.mark.parametrize("prop", ["pp", "op", "cpp"])
@pytest.mark.parametrize("canonical", [False, True])
def test_census_against_bruteforce(q, deg, prop, canonical, f5):
    fld = f5 if q == 5 else field_for(q)
    want = _brute_census(fld, deg, canonical, prop)
    got = census(CensusQuery(fld, deg, canonical, prop))
    assert got == want


def test_census_canonical_times_q_is_full(f5):
    for fld, deg in ((f5, 3), (field_for(8), 2), (field_for(11), 3)):
        canon = census(CensusQuery(fld, deg, True, "op"))
        full = census(CensusQuery(fld, deg, False, "op"))
        assert canon * fld.q == full


def test_census_worker_independence(f11):
    q1 = census(CensusQuery(f11, 4, False, "op"), workers=1)
    q3 = census(CensusQuery(f11, 4, False, "op"), workers=3)
    assert q1 == q3


def test_census_budget_guard(f13):
    query = CensusQuery(f13, 7, False, "op")
    with pytest.raises(BudgetExceeded):
        census(query, budget=10**6)
    assert query.space() == 12 * 13**7


def test_census_space_formula(f11):
    assert CensusQuery(f11, 7, True, "op").space() == 10 * 11**6
    assert CensusQuery(f11, 7, False, "op").space() == 10 * 11**7


def test_full_even_characteristic_census_is_zero():
    # no degree-7 orthomorphisms over F_8, full coefficient space
    from ortho7 import kernels

    if kernels.BACKEND != "numba":
        pytest.skip("14.7M-candidate sweep is sized for the jit backend")
    f8 = field_for(8)
    assert census(CensusQuery(f8, 7, False, "op"), workers=2) == 0
