from .config import FrequencyParams, NoiseConfig, OutputConfig, RunConfig, SweepConfig, dump_config, load_config
from .core import (
    AmplifierError,
    Direction,
    SteadyBranch,
    SweepRow,
    SystemParams,
    Verdict,
    WorkingRegion,
    classify,
    effective_params,
    nsr,
    photon_flux,
    reconstruct,
    sweep,
    transmission_roots,
    validate,
    working_region,
)
from .presets import PRESET_IDS, FigurePreset, build_preset

__version__ = "0.1.0"
