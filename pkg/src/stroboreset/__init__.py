"""Exact simulator for coherence-selective stroboscopic reset protocols.

A single fermionic level coupled to a finite tight-binding chain evolves
unitarily between resets that restore the bath to a thermal reference and
scale the level-bath coherences by a retention parameter.  On the kept
entries the cycle is an exact affine map whose fixed point, retained
coherence, reset heat current, entropy production and efficiency ratio are
computed here without weak-coupling or Markovian approximations.
"""

from .model import BathSpec, SystemSpec, BathBasis
from .resetmap import (
    AffineMap,
    BlockedSPDM,
    CyclePropagator,
    FixedPointResult,
    PropagatorBlocks,
)
from .observables import CoherenceSpectrum, ObservableRecord
from .sweeps import ConvergenceReport, OperatingPoints, ParetoCurve, SweepGrid
from .config import RunConfig, parse_config

__all__ = [
    "AffineMap",
    "BathBasis",
    "BathSpec",
    "BlockedSPDM",
    "CoherenceSpectrum",
    "ConvergenceReport",
    "CyclePropagator",
    "FixedPointResult",
    "ObservableRecord",
    "OperatingPoints",
    "ParetoCurve",
    "PropagatorBlocks",
    "RunConfig",
    "SweepGrid",
    "SystemSpec",
    "parse_config",
]

__version__ = "0.1.0"
