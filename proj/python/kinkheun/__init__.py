"""Dirac fermion scattering and bound states on a sine-Gordon kink."""

from ._kinkheun import (
    KinkheunError,
    bound_states,
    heun,
    kink_profile,
    levinson,
    match,
    phase_sweep,
    validate,
)

__all__ = [
    "KinkheunError",
    "bound_states",
    "heun",
    "kink_profile",
    "levinson",
    "match",
    "phase_sweep",
    "validate",
]
