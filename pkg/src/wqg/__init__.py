"""Numerical verification of finite-dimensional weak Hopf *-algebras given by structure constants."""
from .algebra import AlgebraPresentation, Element, Functional, functional_gram, validate_algebra
from .coalgebra import (CanonicalIdempotentBundle, Comultiplication, canonical_bundle,
                        validate_comultiplication)
from .duality import DualPresentation, biduality_check, dualize, validate_dual
from .errors import SchemaError, WQGError
from .groupoids import (bundled_examples, cyclic_group_table, direct_sum, gen_group_algebra,
                        gen_groupoid_convolution, gen_groupoid_function, pair_groupoid,
                        source_weighted_sum, symmetric_group_table, tensor, weighted_trace)
from .integrals import IntegralBundle, integrals_stage
from .io import parse_presentation, serialize_presentation
from .numkernel import DEFAULT_TOL, Tolerance
from .pipeline import STAGES, PipelineResult, run_pipeline, verify
from .report import Check, VerificationReport

__version__ = "0.1.0"
