"""Two-path interference bookkeeping: patterns, visibility, coincidence cuts.

The universal carrier of interference information is a pair of marker states,
one attached to each scattering path, plus a frequency tag. The detector
position enters only through the relative path phase phi: path 1 carries a
unit factor and path 2 carries exp(i phi), so the recorded intensity is

    I(phi) = sum_k w_k || psi1_k + exp(i phi) psi2_k ||^2

summed incoherently over the components of a mixture. Components with
different frequency tags never interfere; a short coherent pulse is a single
component, a frequency-resolved long pulse is several.

Visibility has the closed form

    V = 2 |sum_k w_k <psi1_k|psi2_k>| / sum_k w_k (||psi1_k||^2 + ||psi2_k||^2)

and the phase offset is the principal argument of the same coherence sum, so
I(phi) is proportional to 1 + V cos(phi + phase_offset). pattern() reports the
closed-form values; the sampled curve is a consistency check, not the source
of truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import EmptyPatternError, SpaceMismatchError
from .fockspace import FockSpace, FockVector, inner

__all__ = [
    "FreqTag",
    "PatternScan",
    "Projector",
    "TwoPathComponent",
    "TwoPathMixture",
    "coherence_sum",
    "condition",
    "mean_intensity",
    "pattern",
    "phase_offset",
    "visibility",
]

# A mixture whose mean intensity falls below this fraction of its total weight
# has been conditioned into an empty sector.
_INTENSITY_FLOOR = 1e-24


class FreqTag(str, Enum):
    """Symbolic frequency label of a scattered-light component.

    ELASTIC is unshifted light; SHIFTED is offset by the trap frequency; SYM
    and ANTISYM are offset by the two normal-mode frequencies of coupled
    slits. Tags are the vocabulary of the dispersive element.
    """

    ELASTIC = "ELASTIC"
    SHIFTED = "SHIFTED"
    SYM = "SYM"
    ANTISYM = "ANTISYM"


@dataclass(frozen=True, eq=False)
class TwoPathComponent:
    """One incoherent component: marker states for path 1 and path 2.

    weight is a nonnegative probability-like factor; either path may carry
    the zero vector when the photon definitely took the other path.
    """

    psi1: FockVector
    psi2: FockVector
    tag: FreqTag = FreqTag.ELASTIC
    weight: float = 1.0

    def __post_init__(self) -> None:
        if self.psi1.space != self.psi2.space:
            raise SpaceMismatchError("psi1 and psi2 must live in the same FockSpace")
        w = float(self.weight)
        if w < 0 or not math.isfinite(w):
            raise ValueError(f"component weight must be finite and >= 0, got {w}")
        object.__setattr__(self, "tag", FreqTag(self.tag))
        object.__setattr__(self, "weight", w)

    @property
    def space(self) -> FockSpace:
        return self.psi1.space

    def baseline(self) -> float:
        """Phase-averaged intensity ||psi1||^2 + ||psi2||^2 of this component."""
        return self.psi1.norm() ** 2 + self.psi2.norm() ** 2

    def coherence(self) -> complex:
        return inner(self.psi1, self.psi2)


@dataclass(frozen=True, eq=False)
class TwoPathMixture:
    """Weighted incoherent set of TwoPathComponents over a common space.

    `condition` records any coincidence projection already applied, for
    report headers; it does not affect the physics.
    """

    components: tuple[TwoPathComponent, ...]
    condition: str = "none"

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a TwoPathMixture needs at least one component")
        space = comps[0].space
        for c in comps[1:]:
            if c.space != space:
                raise SpaceMismatchError("all components must share one FockSpace")
        if not sum(c.weight for c in comps) > 0:
            raise ValueError("total mixture weight must be positive")
        object.__setattr__(self, "components", comps)

    @property
    def space(self) -> FockSpace:
        return self.components[0].space

    @property
    def total_weight(self) -> float:
        return sum(c.weight for c in self.components)


@dataclass(frozen=True, eq=False)
class Projector:
    """A projector on the marker space, applied pathwise by condition()."""

    space: FockSpace
    matrix: np.ndarray
    name: str = "custom"

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.shape != (self.space.dim, self.space.dim):
            raise SpaceMismatchError(
                f"projector shape {m.shape} does not match space dimension {self.space.dim}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, v: FockVector) -> FockVector:
        if v.space != self.space:
            raise SpaceMismatchError(
                f"projector '{self.name}' is defined on {self.space.mode_dims}, "
                f"state lives in {v.space.mode_dims}"
            )
        return FockVector(self.space, self.matrix @ v.amplitudes)


@dataclass(frozen=True, eq=False)
class PatternScan:
    """A sampled interference curve I(phi) plus its extracted fringe data.

    `visibility` and `phase_offset` are the closed-form values; the samples
    satisfy I(phi) = mean * (1 + V cos(phi + phase_offset)) and can be used to
    recompute them as a consistency check.
    """

    phis: np.ndarray
    intensities: np.ndarray
    visibility: float
    phase_offset: float
    condition: str = "none"

    def __post_init__(self) -> None:
        phis = np.array(self.phis, dtype=float, copy=True)
        ints = np.array(self.intensities, dtype=float, copy=True)
        if phis.shape != ints.shape:
            raise ValueError("phis and intensities must have the same shape")
        phis.setflags(write=False)
        ints.setflags(write=False)
        object.__setattr__(self, "phis", phis)
        object.__setattr__(self, "intensities", ints)

    def sampled_visibility(self) -> float:
        """(Imax - Imin)/(Imax + Imin) recomputed from the stored samples."""
        hi = float(self.intensities.max())
        lo = float(self.intensities.min())
        return (hi - lo) / (hi + lo)


def coherence_sum(m: TwoPathMixture) -> complex:
    """The cross term sum_k w_k <psi1_k|psi2_k> whose magnitude sets the contrast."""
    return sum((c.weight * c.coherence() for c in m.components), start=0j)


def mean_intensity(m: TwoPathMixture) -> float:
    """Phase average of I(phi): sum_k w_k (||psi1_k||^2 + ||psi2_k||^2)."""
    return sum(c.weight * c.baseline() for c in m.components)


def _require_light(m: TwoPathMixture) -> float:
    d = mean_intensity(m)
    if d <= _INTENSITY_FLOOR * m.total_weight:
        raise EmptyPatternError(
            "both paths carry zero amplitude; the state was fully conditioned away"
        )
    return d


def _principal_phase(z: complex) -> float:
    if z == 0:
        return 0.0
    im = z.imag
    if im == 0.0:
        im = 0.0  # collapse -0.0 so a negative-real coherence reports +pi
    return math.atan2(im, z.real)


def visibility(m: TwoPathMixture) -> float:
    """Closed-form fringe visibility of the mixture, in [0, 1]."""
    d = _require_light(m)
    return 2.0 * abs(coherence_sum(m)) / d


def phase_offset(m: TwoPathMixture) -> float:
    """Principal argument of the coherence sum, in (-pi, pi]; 0 for flat patterns."""
    _require_light(m)
    return _principal_phase(coherence_sum(m))


def pattern(m: TwoPathMixture, nsamples: int = 256) -> PatternScan:
    """Sample I(phi) on a uniform grid over [0, 2 pi) and extract the fringe data.

    The stored visibility and phase offset come from the closed forms; with a
    grid that contains the extrema (any multiple of 4 samples for the states
    built here) the sampled (Imax - Imin)/(Imax + Imin) reproduces them.

    Raises EmptyPatternError when every path amplitude is zero.
    """
    if nsamples < 16:
        raise ValueError(f"nsamples must be >= 16, got {nsamples}")
    d = _require_light(m)
    c = coherence_sum(m)
    phis = 2.0 * np.pi * np.arange(nsamples) / nsamples
    intensities = d + 2.0 * np.real(c * np.exp(1j * phis))
    # exact minima of a V = 1 pattern can round to a few ulp below zero
    if intensities.min() < -1e-9 * d:
        raise AssertionError("intensity went significantly negative; bookkeeping bug")
    intensities = np.clip(intensities, 0.0, None)
    return PatternScan(
        phis=phis,
        intensities=intensities,
        visibility=2.0 * abs(c) / d,
        phase_offset=_principal_phase(c),
        condition=m.condition,
    )


def condition(m: TwoPathMixture, projector: Projector) -> tuple[TwoPathMixture, float]:
    """Project every path state; weights stay untouched.

    The norm lost to the projection is the coincidence post-selection cost.
    Returns the conditioned mixture and the post-selection probability, i.e.
    the surviving fraction of the mean intensity.
    """
    if projector.space != m.space:
        raise SpaceMismatchError(
            f"projector '{projector.name}' does not act on the mixture's space"
        )
    before = _require_light(m)
    comps = tuple(
        replace(c, psi1=projector.apply(c.psi1), psi2=projector.apply(c.psi2))
        for c in m.components
    )
    conditioned = TwoPathMixture(comps, condition=projector.name)
    return conditioned, mean_intensity(conditioned) / before
