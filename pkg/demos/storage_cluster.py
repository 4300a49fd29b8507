"""
Running a code in a storage cluster
===================================

Put one symbol on each node, fail nodes at random and count what the repairs
read.  Same seed, same numbers.
"""

import json

from lrcodes.fiber_avail import build_gk_lrc
from lrcodes.gf import field_of_order
from lrcodes.storesim import ClusterModel, degraded_read, simulate
from lrcodes.tamo_barg import build_tamo_barg

codes = {
    "tamo-barg": build_tamo_barg(field_of_order(13), 2, 6),
    "gk": build_gk_lrc(3, 3, 0),
}

for name, lc in codes.items():
    cert = lc.certify()
    for p in (0.01, 0.05, 0.2):
        rep = simulate(lc.code, lc.structure, ClusterModel(p=p, seed=7), 500, cert)
        print(f"{name:10s} p={p:<5} repaired {rep.repaired}/{rep.failures} "
              f"mean read {rep.mean_repair_bandwidth} "
              f"residual trials {rep.residual_failure_rate:.3f}")

# a hot symbol: the node itself plus one reader per disjoint repair group
lc = codes["gk"]
cert = lc.certify()
print("readers served at once:", degraded_read(lc.code, lc.structure, 0, 10, certificate=cert))

rep = simulate(lc.code, lc.structure, ClusterModel(p=0.05, seed=7), 200, cert)
print(json.dumps(rep.to_dict(), indent=2))
