"""Pairwise quantum discord of one-axis twisting spin states under local noise."""

from .channels import (
    ChannelKind,
    KrausSet,
    NoiseStrength,
    StructureError,
    apply_two_qubit,
    evolved_state_analytic,
    kraus_parameter,
    kraus_set,
    p_of_t,
)
from .twisting import CollectiveExpectations, TwistingParams, expectations, reduced_state, twisting_state
from .xstate import (
    BlochDecomposition,
    CorrelationReport,
    InvalidStateError,
    SpectralData,
    TwoQubitXState,
    binary_entropy,
    bloch_decompose,
    eigenvalues,
    gmqd,
    marginal_entropies,
    mutual_information,
    quantum_discord,
)

__version__ = "0.1.0"
