from .constants import CONSTANTS, FLUX_SCALE, RATE_SCALE, PhysicalConstants
from .errors import (
    AmplifierError,
    ConfigError,
    DegenerateAllZero,
    ExternalExceedsTotal,
    GainExceedsLoss,
    InconsistentRoot,
    NegativePower,
    NoAmplification,
    NoAmplificationPossible,
    NoConvergence,
    NonPositiveNonlinearity,
    NonPositiveRate,
    NumericsError,
    ParameterError,
    PhysicsError,
    RegimeViolation,
    SingularMatrix,
    UnstableBranch,
    ZeroSignal,
)
from .model import effective_params, photon_flux, power_of_flux, thermal_occupancy, validate
from .noise import build_input_matrix, nsr, output_spectrum, scattering, spectrum_table
from .nonreciprocity import (
    amplification_regions,
    evaluate_power,
    interior_powers,
    isolation_opt,
    isolation_range,
    j_opt,
    keff_amplification_bound,
    log_power_grid,
    numerical_t_max,
    sweep,
    t_max_opt,
    t_max_theor,
    working_region,
)
from .numerics import eigenvalues, integrate, invert, real_roots
from .stability import build_drift, classify
from .steady_state import reconstruct, s_in_of_T, steady_branches, trace_branches, transmission_roots
from .types import (
    AmplificationRegion,
    BranchPoint,
    BranchSign,
    Cubic,
    Direction,
    DriftMatrix,
    EffectiveParams,
    IsolationEstimate,
    ParameterInput,
    PORT_BASIS,
    ScatteringMatrix,
    SpectrumDecomposition,
    StabilityReport,
    SteadyBranch,
    SweepRow,
    SystemParams,
    Verdict,
    WorkingRegion,
)
