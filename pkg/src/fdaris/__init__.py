"""Secrecy-rate toolkit for RIS-assisted mmWave links with a frequency
diverse array and randomized subset beamforming.

Module map:

* geometry    - placement, polar coordinates, log-distance path loss
* channel     - FDA frequency plan, LOS channels, cascaded link
* beamforming - MRT, closed-form RIS phases, randomized subset masks
* stats       - Dirichlet kernels and moments of the random gain
* secrecy     - SNRs, rates, wiretap region, worst-case bounds
* optimize    - optimal subset sizes and frequency increment
* oracle      - enumeration / Monte-Carlo / grid-search verification
* config, cli - scenario files and the command-line front end
"""

from .beamforming import SelectionMask, SelectionSizes
from .channel import FdaPlan, RisGeometry
from .config import ScenarioConfig, load_config
from .geometry import PathLossModel, Placement, PolarLocation
from .secrecy import CombineRule, LinkBudget, SecrecyReport, WiretapRegion
from .stats import DirichletKernels, ScalingStats

__version__ = "0.1.0"

__all__ = [
    "FdaPlan", "RisGeometry", "Placement", "PolarLocation", "PathLossModel",
    "SelectionSizes", "SelectionMask", "LinkBudget", "CombineRule",
    "WiretapRegion", "SecrecyReport", "DirichletKernels", "ScalingStats",
    "ScenarioConfig", "load_config", "__version__",
]
