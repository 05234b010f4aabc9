from __future__ import annotations

import pytest

from mapspace.selftest import FIXTURES, fx_cp2_s6_model, flipped_koszul_sign, Failure, run
from mapspace.mapping import ConsistencyError


@pytest.fixture(scope="module")
def outcomes():
    return run()


def test_every_fixture_passes(outcomes):
    results, warnings = outcomes
    assert [o.name for o in results] == [f.name for f in FIXTURES]
    bad = [(o.name, o.detail) for o in results if o.outcome != "pass"]
    assert bad == []
    assert warnings == []


def test_flipped_sign_breaks_reference_computation():
    with flipped_koszul_sign():
        with pytest.raises((Failure, ConsistencyError)):
            fx_cp2_s6_model(24)
    fx_cp2_s6_model(24)     # restored afterwards


def test_low_cap_skips_capped_fixtures():
    results, warnings = run(cap=5)
    capped = {f.name for f in FIXTURES if f.min_cap is not None}
    assert {o.name for o in results if o.outcome == "skip"} == capped
    assert len(warnings) == len(capped)
    assert all(o.outcome == "pass" for o in results if o.name not in capped)


def test_only_filter():
    results, _ = run(only=["lie-identities"])
    assert [o.name for o in results] == ["lie-identities"]
