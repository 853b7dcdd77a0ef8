"""Acceptance suite: one test per criterion, each printing a pass/fail
line with its runtime.  Run with `pytest tests/test_acceptance.py -v -s`
(or plain pytest; the lines still print on success with -s).

Criteria and stated targets:
  1 family-table validation (exact, < 1 s)
  2 non-redundancy of every table (exact, < 30 s)
  3 published pair lists / per-system counts / q=49 totals (exact, < 2 min)
  4 orthomorphism totals and exceptional subtotals (exact, < 3 min)
  5 direct vs table-based method agreement (exact, < 5 min)
  6 shift-expansion distinctness (exact, < 2 min; q=49 sampled, where the
    characteristic-7 collapse law replaces the q^2 cardinality: each
    pair's expansion has exactly q distinct vectors, disjoint across
    pairs - see the distinctness check's docstring)
  7 census cross-check: 0 / 660 / 494 canonical counts for q = 8, 11, 13
    (q = 17 -> 272 only when ORTHO7_DEEPER=1; ~386M candidates)
  8 classification-vs-direct audit: 1e5 random polynomials per field plus
    the exhaustive x^7 + a3 x^3 + a1 x sweep, zero disagreements
  9 property suite: transversal cardinalities, canonicalisation class
    constancy, orthomorphism shift invariance, pointwise transform law
"""

import os

import pytest

from ortho7 import verify
from ortho7.pairs import EnumerationReport

_reports: dict[int, EnumerationReport] = {}


def _criterion(result):
    print(f"\nACCEPTANCE {result.line()}")
    assert result.ok, result.detail
    return result


def test_c1_family_table_validation():
    _criterion(verify.check_family_tables())


def test_c2_non_redundancy():
    _criterion(verify.check_non_redundancy())


def test_c3_pair_fixtures():
    _criterion(verify.check_pair_fixtures(_reports))


def test_c4_totals():
    _criterion(verify.check_totals(_reports))


def test_c5_method_agreement():
    _criterion(verify.check_method_agreement())


def test_c6_distinctness():
    _criterion(verify.check_distinctness(reports=_reports))


def test_c7_census_oracle():
    tier = "deeper" if os.environ.get("ORTHO7_DEEPER") == "1" else "default"
    _criterion(verify.check_census(tier, workers=2, reports=_reports))


@pytest.mark.skipif(os.environ.get("ORTHO7_DEEPER") == "1",
                    reason="included in test_c7_census_oracle when deeper")
def test_c7_deeper_tier_documented():
    # q=17 canonical census (272) takes ~386M candidates; opt in with
    # ORTHO7_DEEPER=1.  This placeholder keeps the tier visible.
    print("\nACCEPTANCE [SKIP] census-deeper: set ORTHO7_DEEPER=1 for the "
          "q=17 tier (272 expected)")


def test_c8_classification_audit():
    _criterion(verify.check_audit(n_random=100_000))


def test_c9_property_suite():
    _criterion(verify.check_properties())
