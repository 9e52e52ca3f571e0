import random

import pytest

from stirkit import DomainError, UnknownIdentity
from stirkit.identities import CATALOG, sample_params, verify_identity

REQUIRED = ("1.2", "1.3", "1.5", "1.8", "1.9", "1.10", "1.11", "1.12", "1.13", "1.14", "1.18", "1.19")


def test_catalog_covers_required_ids():
    assert set(REQUIRED) <= set(CATALOG)
    names = [ident.name for ident in CATALOG.values()]
    assert len(set(names)) == len(names)


@pytest.mark.parametrize("identity_id", sorted(CATALOG))
def test_defaults_hold(identity_id):
    report = verify_identity(identity_id)
    assert report.holds, report


@pytest.mark.parametrize("identity_id", sorted(CATALOG))
def test_random_instances_hold(identity_id):
    rng = random.Random(identity_id)
    for _ in range(40):
        params = sample_params(identity_id, rng)
        assert verify_identity(identity_id, params).holds, params


def test_documented_values():
    assert verify_identity("1.9").lhs == 52
    assert verify_identity("1.14", {"n": 3}).rhs[-1] == 27
    assert str(verify_identity("1.19", {"x": 10}).lhs) == "247/210"
    assert verify_identity("1.15", {"n": 12}).lhs == 6
    # 0^0 = 1 in the binomial theorem
    assert verify_identity("1.18", {"n": 0, "x": "0", "y": "0"}).lhs == 1
    assert verify_identity("1.18", {"n": 4, "x": "0", "y": "0"}).holds


def test_lookup_by_name_and_errors():
    assert verify_identity("prime-reciprocals", {"x": 5}).identity_id == "1.19"
    with pytest.raises(UnknownIdentity):
        verify_identity("9.99")
    with pytest.raises(DomainError):
        verify_identity("1.8", {"k": 1, "bogus": 2})
