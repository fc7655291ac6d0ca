"""Simulator and analysis toolkit for a spinning-disk NV-center
Aharonov-Casher experiment."""

from .config import ExperimentConfig, load_config
from .errors import ConfigError, NumericPreconditionError
from .geometry import (
    DiskTrajectory,
    FieldConfig,
    PulseStations,
    default_stations,
    field_at,
    position,
    station_trajectory,
    velocity,
)
from .holonomy import (
    PathSampling,
    Propagator,
    coupling_generator,
    dyson_second_order,
    effective_hamiltonian_evolve,
    path_ordered_propagator,
)
from .measurement import (
    PhaseEstimate,
    ReadoutModel,
    SensitivityReport,
    analytic_sensitivity,
    contrast,
    monte_carlo_experiment,
    sensitivity_report,
    time_to_precision,
)
from .phase import (
    PhaseAccumulator,
    coupling_constant,
    phase_rate,
    segment_phase,
    total_rectified_phase,
)
from .physics import (
    CODATA,
    NVParameters,
    PhysicalConstants,
    QubitRotation,
    SpinOperators,
    SpinState,
    apply_rotation,
    ground_state_hamiltonian,
    spin_operators,
)
from .sequence import (
    EchoSchedule,
    PulseEvent,
    RunResult,
    StarkModel,
    StarkReport,
    SweepResult,
    build_echo_schedule,
    echo_cancellation_check,
    fringe_zero_crossings,
    odd_pulse_schedule,
    optimal_readout_lag,
    signal_probability,
    simulate_run,
    stark_shift,
    strip_pi_pulses,
    sweep_signal,
)

__version__ = "0.1.0"
