"""Backend equivalence: the numba kernels and the numpy fallbacks must
produce identical results on identical inputs."""

import numpy as np
import pytest

from ortho7 import kernels
from ortho7.field import field_for
from ortho7.families import table_codes, table_for
from ortho7.perm import CensusQuery, census

BACKENDS = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
pytestmark = pytest.mark.skipif(len(BACKENDS) < 2,
                                reason="numba unavailable; nothing to compare")


def test_census_backend_equivalence():
    for q, deg in ((5, 3), (8, 3), (11, 2), (25, 2)):
        fld = field_for(q) if q != 5 else field_for(11)
        for prop in ("pp", "op", "cpp"):
            for canonical in (False, True):
                query = CensusQuery(fld, deg, canonical, prop)
                a = census(query, backend="numba")
                b = census(query, backend="numpy")
                assert a == b, (q, deg, prop, canonical)


def test_census_range_sharding_consistency():
    fld = field_for(11)
    total = CensusQuery(fld, 3, False, "op").space()
    whole = kernels.census_scan(fld, 3, False, kernels.PROP_OP, 0, total)
    split = sum(kernels.census_scan(fld, 3, False, kernels.PROP_OP, s,
                                    min(s + 997, total))
                for s in range(0, total, 997))
    assert whole == split


@pytest.mark.parametrize("q", [11, 13, 25, 49])
def test_op_pair_grid_equivalence(q):
    fld = field_for(q)
    for e in table_for(q).entries[:3]:
        f = e.poly(fld).coeffs
        a = kernels.op_pair_grid(fld, f, backend="numba")
        b = kernels.op_pair_grid(fld, f, backend="numpy")
        assert np.array_equal(a, b)


def test_pp_batch_equivalence():
    rng = np.random.default_rng(5)
    for q in (13, 27, 49):
        fld = field_for(q)
        C = rng.integers(0, q, size=(500, 8), dtype=np.int64)
        C[:, 7] = rng.integers(1, q, size=500)
        a = kernels.pp_batch(fld, C, backend="numba")
        b = kernels.pp_batch(fld, C, backend="numpy")
        assert np.array_equal(a, b)


def test_pp_batch_agrees_with_scalar_check():
    from ortho7.perm import is_permutation
    from ortho7.poly import Poly

    rng = np.random.default_rng(6)
    fld = field_for(13)
    C = rng.integers(0, 13, size=(200, 8), dtype=np.int64)
    C[:, 7] = rng.integers(1, 13, size=200)
    bits = kernels.pp_batch(fld, C)
    for row, bit in zip(C, bits):
        assert bool(bit) == is_permutation(Poly(fld, tuple(int(v) for v in row)))


def test_table_member_batch_matches_lookup(f13):
    from ortho7.families import is_pp_by_table
    from ortho7.poly import Poly

    rng = np.random.default_rng(7)
    C = rng.integers(0, 13, size=(300, 8), dtype=np.int64)
    C[:, 7] = rng.integers(1, 13, size=300)
    member = kernels.table_member_batch(f13, C, table_codes(13))
    for row, m in zip(C, member):
        want = is_pp_by_table(Poly(f13, tuple(int(v) for v in row))) is not None
        assert bool(m) == want


def test_backend_selection_env(monkeypatch):
    monkeypatch.setenv("ORTHO7_BACKEND", "numpy")
    assert kernels._pick_backend() == "numpy"
    monkeypatch.setenv("ORTHO7_BACKEND", "auto")
    assert kernels._pick_backend() in ("numba", "numpy")


def test_numpy_census_rejects_large_q():
    # the uint64 hit mask caps the fallback at q <= 63
    with pytest.raises(ValueError):
        kernels._census_scan_np(64, 2, 0, 0, None, None, None, 0, 10)
