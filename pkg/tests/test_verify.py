import pytest

from taylortower.fincat import GuardError
from taylortower.verify import SUITES, VerifyConfig, run


def test_battery_size():
    assert sum(len(v) for v in SUITES.values()) >= 40
    assert set(SUITES) == {"iso", "coend", "reedy", "homology", "star", "aux", "tower",
                           "cubes", "splitting", "cocartesian"}


def test_threads_do_not_change_results():
    cfg1 = VerifyConfig(seed=5, scale=0.3)
    cfg2 = VerifyConfig(seed=5, scale=0.3, threads=3)
    a = [r.to_json() for r in run(["star", "homology"], cfg1)]
    b = [r.to_json() for r in run(["star", "homology"], cfg2)]
    assert a == b and all(r["passed"] for r in a)


def test_config_guards():
    with pytest.raises(GuardError):
        VerifyConfig(max_rank=50)
    with pytest.raises(GuardError):
        VerifyConfig(span=9)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run(["nope"])
