"""Walk through the verification pipeline on a weighted pair groupoid.

Run with ``python3 notebooks/demo_pipeline.py``.
"""
import numpy as np

from wqg.groupoids import gen_groupoid_convolution, pair_groupoid, weighted_trace
from wqg.pipeline import run_pipeline

G = pair_groupoid(2)
P, D = gen_groupoid_convolution(G, name="pair2_conv")
phi = weighted_trace(G, [1, 2])
print("algebra:", P.name, "dim", P.dim, "labels", P.labels)

res = run_pipeline(P, D, phi)
ib = res.integrals
print("left invariant cone dimension:", ib.left_cone_dim)
print("phi =", np.round(ib.phi.real, 6))
print("modular element delta =", np.round(ib.delta.real, 6))
e12 = P.basis(P.index("(1,2)"))
print("sigma(e12) =", np.round((ib.sigma @ e12).real, 6))

W = res.operators.W
print("W shape", W.shape, "rank", np.linalg.matrix_rank(W, tol=1e-9))
print()
print(res.report.render_text())
