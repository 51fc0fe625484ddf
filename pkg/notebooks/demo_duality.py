"""Dualize the matrix units M_2 and compare with functions on the pair groupoid.

Run with ``python3 notebooks/demo_duality.py``.
"""
import numpy as np

from wqg.duality import dualize
from wqg.groupoids import gen_groupoid_convolution, gen_groupoid_function, pair_groupoid
from wqg.pipeline import run_pipeline

G = pair_groupoid(2)
P, D = gen_groupoid_convolution(G)
res = run_pipeline(P, D)
dual = dualize(P, D, res.bundle, res.integrals)
A = dual.algebra
print("dual labels:", A.labels)
print("dual is commutative:", np.allclose(A.mult, A.mult.transpose(1, 0, 2)))

F, DF = gen_groupoid_function(G)
perm = [A.labels.index(f"f[{l}]") for l in F.labels]
same = (np.allclose(A.mult[np.ix_(perm, perm, perm)], F.mult)
        and np.allclose(dual.comult.tensor[np.ix_(perm, perm, perm)], DF.tensor))
print("dual matches Fun(pair groupoid):", same)

for c in res.report.checks:
    if c.name.startswith("duality."):
        print(f"{c.name:45s} {c.status:5s} {c.residual:.2e}")
