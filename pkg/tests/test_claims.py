import pytest

from qpmult.claims import CLAIMS, run_claims


def test_claim_keys_unique():
    keys = [c.key for c in CLAIMS]
    assert len(keys) == len(set(keys))


@pytest.mark.parametrize("claim", CLAIMS, ids=lambda c: c.key)
def test_claim(claim):
    ok, observed = claim.check()
    assert ok, observed


def test_run_claims_never_raises(monkeypatch):
    import qpmult.claims as cl
    from qpmult.claims import Claim

    def broken():
        raise RuntimeError("boom")
    monkeypatch.setattr(cl, "CLAIMS", [Claim("x", "t", "always crashes", broken)])
    [(claim, ok, observed)] = cl.run_claims()
    assert not ok and "boom" in observed
