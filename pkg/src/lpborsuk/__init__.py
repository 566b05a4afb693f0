"""Diameter-reducing partitions and Banach-Mazur certificates in l_p spaces.

The package machine-checks three constructive facts about finite-dimensional
l_p geometry, at desk scale and with independent verifiers:

* sandwich certificates  C_{n,p} in g C_n in r C_{n,p}  built from scaled
  Hadamard blocks, with exact vertex enumeration and a closed-form distance
  floor for 1 <= p < 2;
* coverings of the unit p-ball by 2n shrunken translates along the axes,
  verified on deterministic tight witnesses plus a million-point probe;
* a partition engine splitting any finite cloud in 4-dimensional l_p space
  into at most 16 parts (12 for p = 1) of strictly smaller diameter.
"""

from .covering import CoveringSpec, CoverReport, axis_covering, gamma_estimate, verify_covering
from .estimator import BorsukPartition
from .hadamard import (
    LinearMap,
    block_diag_map,
    hadamard4_circulant,
    identity_map,
    is_hadamard,
    map_from_matrix,
    map_from_scaled_hadamard,
    sandwich_map,
    sandwich_map_padded,
    sylvester,
)
from .norms import (
    GEOM_TOL,
    DiameterWitness,
    PNorm,
    as_cloud,
    diameter,
    diameter_bruteforce,
    pnorm,
    row_pnorms,
    support,
    support_maximizer,
    width_functional,
)
from .partition import (
    METHOD_CROSS,
    METHOD_CUBE,
    METHOD_HADAMARD,
    SLAB_NORMALS,
    Normalization,
    PartDiameter,
    PartitionError,
    PartitionResult,
    SlabRegion,
    partition,
    split_crosspolytope,
    split_cube,
    split_hadamard_cells,
    verify_partition,
)
from .sandwich import (
    SandwichCertificate,
    SandwichReport,
    bm_lower_bound,
    bm_upper_certificate,
    check_sandwich,
    dual_feasibility,
)

__version__ = "0.1.0"

__all__ = [
    "GEOM_TOL",
    "PNorm",
    "DiameterWitness",
    "as_cloud",
    "pnorm",
    "row_pnorms",
    "diameter",
    "diameter_bruteforce",
    "support",
    "support_maximizer",
    "width_functional",
    "sylvester",
    "is_hadamard",
    "hadamard4_circulant",
    "LinearMap",
    "map_from_matrix",
    "map_from_scaled_hadamard",
    "identity_map",
    "block_diag_map",
    "sandwich_map",
    "sandwich_map_padded",
    "SandwichCertificate",
    "SandwichReport",
    "bm_upper_certificate",
    "bm_lower_bound",
    "dual_feasibility",
    "check_sandwich",
    "CoveringSpec",
    "CoverReport",
    "axis_covering",
    "verify_covering",
    "gamma_estimate",
    "METHOD_CUBE",
    "METHOD_HADAMARD",
    "METHOD_CROSS",
    "SLAB_NORMALS",
    "Normalization",
    "PartDiameter",
    "PartitionError",
    "PartitionResult",
    "SlabRegion",
    "partition",
    "split_cube",
    "split_hadamard_cells",
    "split_crosspolytope",
    "verify_partition",
    "BorsukPartition",
]
