"""Finite simple rank <= 3 matroids with the wedge (line intersection) function."""

from .amalgam import ALL, Amalgam, AmalgamProblem, ClassFilter, canonical_amalgam, omits, omitting, verify_amalgam
from .closure import (
    Embedding,
    Strength,
    canonical_form,
    check_embedding,
    closure_points,
    find_embedding,
    generate,
    is_closed,
    is_isomorphic,
    iter_embeddings,
)
from .core import (
    ExchangeAxiomError,
    LinearSpace,
    Matroid,
    StructureError,
    join,
    meet,
    rank,
    validate_matroid,
    wedge,
)
from .enumeration import AgeCatalog, enumerate_labeled, enumerate_unlabeled
from .fraisse import Stage, build, extension_property_check
from .jsonio import matroid_from_json, matroid_to_json
from .projective import PartialPlane, fano, free_extend, is_projective_plane, pg2
from .witnesses import IndependenceQuery, build_mn, independent, verify_mn

__version__ = "0.1.0"
