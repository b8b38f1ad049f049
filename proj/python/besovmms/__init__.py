"""Computational toolkit for finite metric measure spaces.

Wraps the C++ core: Besov-type energies on weighted point sets, Whitney
covers with partitions of unity, boundary trace and extension operators,
Harnack-type ball chains, and hyperbolic fillings with uniformized metrics
and lifted measures.
"""

from ._core import (
    Ball,
    BallChain,
    BesovParams,
    ChainCheck,
    ComposedTraceResult,
    Domain,
    EnergyReport,
    EnergyRow,
    EnvelopeBracket,
    ExtensionResult,
    FillingCheck,
    FillingEdge,
    FillingVertex,
    HyperbolicFilling,
    LibraryError,
    MaximalValue,
    RearrangementCheck,
    RoundtripReport,
    Space,
    SpaceData,
    TraceResult,
    Weak11Report,
    Weak11Row,
    WhitneyBall,
    WhitneyCheck,
    WhitneyCover,
    boundary_chain,
    composed_trace,
    cutoff_extension,
    energy_dyadic,
    energy_integral,
    envelope,
    example,
    fractional_maximal,
    harnack_chain,
    interior_energy_dyadic,
    mu_beta_ball,
    partition_sum,
    roundtrip,
    sum_rearrangement,
    trace,
    verify_chain,
    verify_filling,
    verify_whitney,
    weak11_check,
    whitney_cover,
    whitney_extension,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BallChain",
    "BesovParams",
    "ChainCheck",
    "ComposedTraceResult",
    "Domain",
    "EnergyReport",
    "EnergyRow",
    "EnvelopeBracket",
    "ExtensionResult",
    "FillingCheck",
    "FillingEdge",
    "FillingVertex",
    "HyperbolicFilling",
    "LibraryError",
    "MaximalValue",
    "RearrangementCheck",
    "RoundtripReport",
    "Space",
    "SpaceData",
    "TraceResult",
    "Weak11Report",
    "Weak11Row",
    "WhitneyBall",
    "WhitneyCheck",
    "WhitneyCover",
    "boundary_chain",
    "composed_trace",
    "cutoff_extension",
    "energy_dyadic",
    "energy_integral",
    "envelope",
    "example",
    "fractional_maximal",
    "harnack_chain",
    "interior_energy_dyadic",
    "mu_beta_ball",
    "partition_sum",
    "roundtrip",
    "sum_rearrangement",
    "trace",
    "verify_chain",
    "verify_filling",
    "verify_whitney",
    "weak11_check",
    "whitney_cover",
    "whitney_extension",
]
