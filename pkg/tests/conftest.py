import functools

import numpy as np
import pytest

from wqg.groupoids import bundled_examples, pair_groupoid, source_weighted_sum, weighted_trace
from wqg.numkernel import DEFAULT_TOL
from wqg.pipeline import run_pipeline

HOPF = ("Z2", "Z3", "S3")
WEAK = ("pair2_conv", "pair3_conv", "pair2_fun", "pair3_fun")
BUNDLED = HOPF + WEAK
WEIGHTED = ("wtrace", "wfun")
ALL = BUNDLED + WEIGHTED


@functools.lru_cache(maxsize=None)
def example(name):
    """(P, comult, phi or None) for a bundled or weighted example."""
    ex = bundled_examples()
    if name in ex:
        P, D = ex[name]
        return P, D, None
    pg2 = pair_groupoid(2)
    if name == "wtrace":
        P, D = ex["pair2_conv"]
        return P, D, weighted_trace(pg2, [1, 2])
    if name == "wfun":
        P, D = ex["pair2_fun"]
        return P, D, source_weighted_sum(pg2, [1, 2])
    raise KeyError(name)


@functools.lru_cache(maxsize=None)
def pipeline(name):
    P, D, phi = example(name)
    return run_pipeline(P, D, phi, None, DEFAULT_TOL)


@pytest.fixture
def tol():
    return DEFAULT_TOL


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
