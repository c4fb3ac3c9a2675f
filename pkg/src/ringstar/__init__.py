"""Ring-star networks of memristive Chialvo neurons and their synchronisation metrics."""

from .errors import ConfigError, DegenerateSeries, DivergenceError, TooShort
from .network import NetworkConfig, TrajectoryBlock, run
from .neuron import NeuronParams, NeuronState

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DegenerateSeries",
    "DivergenceError",
    "TooShort",
    "NetworkConfig",
    "NeuronParams",
    "NeuronState",
    "TrajectoryBlock",
    "run",
    "__version__",
]
