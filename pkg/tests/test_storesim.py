import json

import numpy as np
import pytest

from lrcodes.fiber_avail import build_gk_lrc
from lrcodes.gf import field_of_order
from lrcodes.lifted import build_hermitian_lifted
from lrcodes.recovery import RecoveryStructure, RepairGroup
from lrcodes.storesim import ClusterModel, UncertifiedStructure, degraded_read, simulate
from lrcodes.tamo_barg import build_tamo_barg


@pytest.fixture(scope="module")
def tb():
    lc = build_tamo_barg(field_of_order(13), 2, 6)
    return lc, lc.certify()


@pytest.fixture(scope="module")
def gk():
    lc = build_gk_lrc(3, 3, 0)
    return lc, lc.certify()


def test_no_failures(tb):
    lc, cert = tb
    rep = simulate(lc.code, lc.structure, ClusterModel(p=0.0, seed=1), 50, cert)
    assert rep.failures == rep.repaired == rep.total_bandwidth == 0
    assert rep.locally_repaired_fraction is None
    assert rep.parallel_capacity_histogram == {1: 50 * 12}


def test_single_failure_reads_two_symbols(tb):
    lc, cert = tb
    rep = simulate(lc.code, lc.structure, ClusterModel(failed=(4,)), 1, cert)
    assert rep.repaired == 1 and rep.total_bandwidth == 2 and rep.max_repair_bandwidth == 2


def test_gk_r2_loss_repaired_through_r1(gk):
    lc, cert = gk
    target = 0
    r2 = next(g for g in lc.structure.groups[target] if g.label.startswith("R2"))
    failed = (target, *r2.support)
    rep = simulate(lc.code, lc.structure, ClusterModel(failed=failed), 1, cert)
    assert rep.repaired == 3 and rep.residual == 0
    # the target and one partner go through R1; the last partner's R2 is then intact
    assert rep.max_repair_bandwidth == 6 and rep.total_bandwidth == 6 + 6 + 2


def test_determinism(tb):
    lc, cert = tb
    model = ClusterModel(p=0.2, seed=42)
    a = json.dumps(simulate(lc.code, lc.structure, model, 300, cert).to_dict(), sort_keys=True)
    b = json.dumps(simulate(lc.code, lc.structure, model, 300, cert).to_dict(), sort_keys=True)
    assert a == b
    c = simulate(lc.code, lc.structure, ClusterModel(p=0.2, seed=43), 300, cert)
    assert json.dumps(c.to_dict(), sort_keys=True) != a


def test_trials_replay_independently(tb):
    lc, _ = tb
    model = ClusterModel(p=0.3, seed=7)
    assert np.array_equal(model.sample(12, 5), ClusterModel(p=0.3, seed=7).sample(12, 5))
    ss = np.random.SeedSequence(7, spawn_key=(5,))
    assert np.array_equal(model.sample(12, 5), np.random.default_rng(ss).random(12) < 0.3)
    assert not np.array_equal(model.sample(12, 5), model.sample(12, 4))


def test_bandwidth_never_exceeds_locality(gk):
    lc, cert = gk
    rep = simulate(lc.code, lc.structure, ClusterModel(p=0.01, seed=3), 20, cert)
    assert rep.max_repair_bandwidth <= 6
    assert max(rep.parallel_capacity_histogram) <= 2


def test_uncertified_structure_rejected(tb):
    lc, _ = tb
    groups = [list(gs) for gs in lc.structure.groups]
    g = groups[0][0]
    groups[0][0] = RepairGroup(g.target, g.support, (1, 1))
    bad = RecoveryStructure(12, groups)
    with pytest.raises(UncertifiedStructure):
        simulate(lc.code, bad, ClusterModel(p=0.1), 5)
    with pytest.raises(UncertifiedStructure):
        degraded_read(lc.code, bad, 0, 3)


def test_degraded_read_capacity(tb, gk):
    lc, cert = tb
    assert degraded_read(lc.code, lc.structure, 3, 10, certificate=cert) == 2
    assert degraded_read(lc.code, lc.structure, 3, 1, certificate=cert) == 1
    lc, cert = gk
    assert all(degraded_read(lc.code, lc.structure, i, 10, certificate=cert) == 3
               for i in range(0, lc.n, 50))
    # losing one member of R2 leaves the direct read and R1
    r2 = next(g for g in lc.structure.groups[0] if g.label.startswith("R2"))
    assert degraded_read(lc.code, lc.structure, 0, 10, failed=[r2.support[0]], certificate=cert) == 2


def test_degraded_read_hermitian_lifted():
    lc = build_hermitian_lifted(4)
    cert = lc.certify()
    served = [degraded_read(lc.code, lc.structure, i, 100, certificate=cert) for i in range(lc.n)]
    assert served == [16] * 64


def test_model_validation():
    with pytest.raises(ValueError):
        ClusterModel(p=1.5)
    with pytest.raises(IndexError):
        ClusterModel(failed=(99,)).sample(12, 0)
