"""Exact Schubert calculus on Grassmannians and conformal-blocks ranks."""

from .blocks import (
    RankQuery,
    RankResult,
    check_factorization,
    check_monotonicity,
    decomposition_witness,
    in_lambda,
    rank,
    symmetric_rank,
    verify_classification,
)
from .classical import (
    CohomologyElement,
    NegativeCoefficientError,
    coefficient_of,
    giambelli_mul,
    lr_coefficient_oracle,
    pieri_mul,
    schubert_class,
    unit,
)
from .partitions import (
    GrassmannianContext,
    Partition,
    SlnWeight,
    enumerate_weights,
    normalize_sln,
    parse_partition,
    parse_weight,
    partition_to_weight,
    weight_to_partition,
)
from .quantum import (
    QuantumElement,
    classical_limit,
    qcoefficient_of,
    qmul,
    qpieri_mul,
    qpower,
    quantum_class,
    qunit,
)

__version__ = "0.1.0"
