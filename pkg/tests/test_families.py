"""Class-table loading, validation, serialisation, and table-based tests.

The regeneration test at the bottom is the strongest oracle here: it
re-derives a field's entire table from nothing but the criteria and the
direct permutation check, confirming the shipped data is exhaustive and
correctly transcribed.
"""

import numpy as np
import pytest
from importlib import resources

from ortho7.canon import canonicalize, criteria_check_tuple, solve_linear_relation
from ortho7.errors import DegreeMismatch, UnsupportedOrder
from ortho7.families import (
    EXPECTED_COUNTS,
    audit_random,
    audit_support,
    is_pp_by_table,
    load_family_tables,
    serialize_family_tables,
    table_for,
)
from ortho7.field import field_for
from ortho7.kernels import pp_batch
from ortho7.perm import is_permutation
from ortho7.poly import LinearTransform, apply_transform, parse_poly


def test_expected_counts_per_field():
    for q, (n_non, n_exc) in EXPECTED_COUNTS.items():
        table = table_for(q)
        assert len(table.non_exceptional()) == n_non
        assert len(table.exceptional()) == n_exc


def test_every_entry_is_a_permutation_polynomial():
    for q in sorted(EXPECTED_COUNTS):
        fld = field_for(q)
        for e in table_for(q).entries:
            assert is_permutation(e.poly(fld)), (q, e.ordinal)


def test_non_exceptional_entries_pass_criteria():
    for q in sorted(EXPECTED_COUNTS):
        if q % 7 == 0:
            continue
        fld = field_for(q)
        for e in table_for(q).non_exceptional():
            assert criteria_check_tuple(fld, *e.coeffs), (q, e.ordinal)


def test_serialisation_roundtrip_is_bit_exact():
    text = resources.files("ortho7").joinpath("data", "families.csv").read_text()
    assert serialize_family_tables(load_family_tables()) == text


def test_reconstructed_entry_flag(f49):
    table = table_for(49)
    flagged = [e for e in table.entries if e.reconstructed]
    assert [e.ordinal for e in flagged] == [10]
    # the stored reading x^7 + t x^5 + 5t^2 x^3 + 6t^3 x
    want = parse_poly(f49, "x^7+tx^5+5t^2x^3+6t^3x")
    assert flagged[0].poly(f49).coeffs == want.coeffs


def test_q27_entry_is_the_canonical_form_of_x7_minus_x3_plus_x(f27):
    entry = table_for(27).non_exceptional()[0]
    literal = parse_poly(f27, "x^7-x^3+x")
    cf, _ = canonicalize(literal)
    assert cf.tuple5 == entry.coeffs
    assert solve_linear_relation(entry.poly(f27), literal)


def test_is_pp_by_table_fixtures(f13, f49):
    e = is_pp_by_table(parse_poly(f13, "x^7+6x"))
    assert e is not None and e.coeffs == (0, 0, 0, 0, 6)
    assert is_pp_by_table(parse_poly(f13, "x^7+5x")) is None
    e = is_pp_by_table(parse_poly(field_for(19), "x^7"))
    assert e is not None and e.exceptional and e.coeffs == (0, 0, 0, 0, 0)
    # characteristic-7 route
    assert is_pp_by_table(parse_poly(f49, "x^7+tx")).ordinal == 3
    assert is_pp_by_table(parse_poly(f49, "x^7+x")) is None
    with pytest.raises(DegreeMismatch):
        is_pp_by_table(parse_poly(f13, "x^3"))


def test_is_pp_by_table_on_transformed_entries():
    import random

    rnd = random.Random(17)
    for q in sorted(EXPECTED_COUNTS):
        fld = field_for(q)
        for e in (table_for(q).entries[0], table_for(q).entries[-1]):
            t = LinearTransform(rnd.randrange(1, q), rnd.randrange(1, q),
                                rnd.randrange(q), rnd.randrange(q))
            got = is_pp_by_table(apply_transform(e.poly(fld), t))
            assert got is not None and got.ordinal == e.ordinal


def test_x7_rule_orders():
    f41 = field_for(41)
    assert is_pp_by_table(parse_poly(f41, "x^7")).exceptional
    shifted = apply_transform(parse_poly(f41, "x^7"), LinearTransform(3, 5, 2, 9))
    assert is_pp_by_table(shifted) is not None
    assert is_pp_by_table(parse_poly(f41, "x^7+x")) is None
    with pytest.raises(UnsupportedOrder):
        is_pp_by_table(parse_poly(field_for(43), "x^7"))  # 43 = 1 (mod 7)


@pytest.mark.parametrize("q", [11, 13, 23, 25, 27, 41, 49])
def test_audit_random_small(q):
    rep = audit_random(field_for(q), 4000, seed=q)
    assert rep.ok, rep.disagreements[:3]
    assert rep.total == 4000


@pytest.mark.parametrize("q", [13, 19, 31])
def test_audit_support_shapes(q):
    rep = audit_support(field_for(q), (3, 1))
    assert rep.ok and rep.total == q * q


def test_audit_all_low_support_shapes_q13(f13):
    # exhaustive over canonical x^7 + a_i x^i + a_j x^j for every position
    # pair: every polynomial with at most two nonzero lower coefficients
    from itertools import combinations

    for positions in combinations((1, 2, 3, 4, 5), 2):
        rep = audit_support(f13, positions)
        assert rep.ok, (positions, rep.disagreements[:2])


def test_audit_linear_tail_q23():
    rep = audit_support(field_for(23), (1,))
    assert rep.ok and rep.total == 23


def _regenerate_table(q):
    """Independent oracle: every (g5..g1) tuple that passes the criteria
    and is a permutation polynomial, found by exhaustive enumeration."""
    fld = field_for(q)
    tuples = []
    for g5 in range(q):
        for g4 in range(q):
            for g3 in range(q):
                for g2 in range(q):
                    for g1 in range(q):
                        if criteria_check_tuple(fld, g5, g4, g3, g2, g1):
                            tuples.append((g5, g4, g3, g2, g1))
    rows = np.array([[0, g1, g2, g3, g4, g5, 0, 1]
                     for g5, g4, g3, g2, g1 in tuples], dtype=np.int64)
    keep = pp_batch(fld, rows)
    return {t for t, k in zip(tuples, keep) if k}


@pytest.mark.parametrize("q", [11, 13])
def test_table_regeneration_from_scratch(q):
    got = _regenerate_table(q)
    want = {e.coeffs for e in table_for(q).entries}
    assert got == want
