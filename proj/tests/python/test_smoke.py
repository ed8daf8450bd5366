import math

import numpy as np
import pytest

import mpslab


def test_bell_collapse():
    for n in range(1, 5):
        bell = mpslab.bell_state(n)
        assert len(bell) == 2**n
        assert max(mpslab.bond_dims(bell)) == 2**n
        paired = mpslab.apply_permutation(bell, mpslab.pairing_permutation(n))
        assert max(mpslab.bond_dims(paired)) == 2
        assert np.allclose(mpslab.bell_mps_dense(n), paired.dense(), atol=1e-12, rtol=0)


def test_prime_state_terms():
    s = mpslab.prime_state(4, 2)
    terms = s.terms()
    assert terms[(1, 2)] == math.sqrt(2)
    assert terms[(3, 4)] == math.sqrt(13)
    assert mpslab.bond_dims(s) == [2, 4, 2]


def test_state_roundtrip_and_dense():
    s = mpslab.CIState(4, 2, {(2, 3): -0.5})
    dense = s.dense()
    assert dense.shape == (16,)
    assert dense[0b0110] == -0.5
    assert mpslab.CIState.from_json(s.to_json()) == s
    assert np.array_equal(mpslab.unfold(s, 2)[1, 2], -0.5)


def test_swap_sign():
    s = mpslab.CIState(3, 2, {(1, 2): 1.0})
    assert mpslab.apply_permutation(s, [2, 1, 3]).terms() == {(1, 2): -1.0}


def test_spectrum_and_csv(tmp_path):
    s = mpslab.prime_state(12, 6, seed=2024)
    canonical = mpslab.singular_spectrum(s, 6)
    fiedler = mpslab.singular_spectrum(s, 6, mpslab.fiedler_order(s))
    for sig in (canonical, fiedler):
        assert sig.shape == (64,)
        assert np.all(sig > 1e-10 * sig[0])
        assert math.isclose(float(np.sum(sig**2)), s.norm() ** 2, rel_tol=1e-12)
    out = tmp_path / "spectrum.csv"
    mpslab.export_csv([("canonical", 6, canonical.tolist()), ("fiedler", 6, fiedler.tolist())], str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "ordering,cut,index,sigma"
    assert len(lines) == 129


def test_certify_and_verify():
    cut = mpslab.certify_cut(mpslab.prime_state(6, 3), 3)
    assert cut["all_passed"] and cut["certified_total"] == 8 == mpslab.max_sector_rank(6, 3, 3)
    assert mpslab.verify_bell(3)["passed"]
    report = mpslab.verify_prime(4, 2)
    assert report["passed"] and report["stats"]["orderings"] == 24


def test_search_and_errors():
    result = mpslab.best_order(mpslab.bell_state(2))
    assert result["max_bond"] == 2 and result["perm"] == [1, 3, 2, 4]
    with pytest.raises(ValueError):
        mpslab.unfold(mpslab.bell_state(2), 4)
    with pytest.raises(ValueError):
        mpslab.singular_spectrum(mpslab.CIState(4, 2), 2)
    with pytest.raises(ValueError):
        mpslab.certify_cut(mpslab.random_state(4, 2, 1), 2)
