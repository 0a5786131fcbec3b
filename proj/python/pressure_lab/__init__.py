"""Pressure estimators for surface diffeomorphisms (bindings to the C++ core)."""

from ._core import (
    EmptyCatalog,
    Error,
    InvalidArgument,
    NoSaddle,
    OrbitCatalog,
    ParseError,
    PeriodicOrbit,
    Potential,
    System,
    __version__,
    bowen_pressure,
    domination_verdict,
    find_periodic_orbits,
    periodic_pressure,
    pressure_curve,
    run,
    sft_pressure,
    sigma_k,
    transition_point,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
