"""Builders mapping each slit configuration and pulse regime to a mixture.

Configurations:

  A   rigid double slit, no recoil marker
  B   two independently trapped slit atoms, one per slit
  C1  a single trapped atom scattering into two directions
  C2  a rigidly connected movable double slit (same physics as C1)
  D   C1 with two-dimensional motion: a longitudinal common-mode kick alpha
      on top of the transverse +/- beta kick
  E   two slit atoms coupled by a weak spring (beat frequency 2g)

A short pulse leaves the marker in a coherent superposition, one mixture
component. A long pulse resolves the scattered frequency, and the state is an
incoherent mixture whose weights are the first-order transition
probabilities: 1-|b|^2 elastic, |b|^2/2 per excited slit for B, |b|^2 for the
shifted line of C, |b|^2/2 per normal mode for E. A component whose photon
definitely took one path carries half the two-path intensity baseline, so it
enters with weight |b|^2 to land at the |b|^2/2 outcome fraction.

Treatments: EXACT keeps full coherent-state markers |+-b>; FIRST_ORDER keeps
a single excitation quantum with amplitude b, with the elastic amplitude
renormalized to sqrt(1-|b|^2) so the sector probabilities sum to one and the
contrasts come out exactly 1-|b|^2 (config B) and 1-2|b|^2 (config C).

The scattering probability epsilon enters all component weights as an overall
factor of epsilon^2; it cancels from every visibility but keeps absolute
coincidence rates reportable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import transforms
from .errors import PerturbationError, ScenarioError
from .fockspace import (
    FockSpace,
    FockVector,
    basis_state,
    coherent_state,
    ground_state,
    tensor,
    zero_vector,
)
from .twopath import FreqTag, TwoPathComponent, TwoPathMixture

__all__ = [
    "Config",
    "Pulse",
    "ScenarioSpec",
    "Treatment",
    "build",
    "build_A",
    "build_B_long",
    "build_B_short",
    "build_C_long",
    "build_C_short",
    "build_D_short",
    "build_E_long",
    "build_E_short",
]


class Config(str, Enum):
    A = "A"
    B = "B"
    C1 = "C1"
    C2 = "C2"
    D = "D"
    E = "E"


class Pulse(str, Enum):
    SHORT = "short"
    LONG = "long"


class Treatment(str, Enum):
    EXACT = "exact"
    FIRST_ORDER = "first"


@dataclass(frozen=True)
class ScenarioSpec:
    """Declarative description of one scenario run.

    alpha applies to config D only; coupling_g and evolve_time apply to
    config E only (other builders ignore them). epsilon must stay in
    (0, 0.1], the single-scattering regime all results assume.
    """

    config: Config
    pulse: Pulse = Pulse.SHORT
    beta: complex = 0j
    alpha: complex = 0j
    epsilon: float = 0.01
    coupling_g: float = 0.0
    evolve_time: float = 0.0
    treatment: Treatment = Treatment.EXACT
    nmax: int = 16

    def __post_init__(self) -> None:
        object.__setattr__(self, "config", Config(self.config))
        object.__setattr__(self, "pulse", Pulse(self.pulse))
        object.__setattr__(self, "treatment", Treatment(self.treatment))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "epsilon", float(self.epsilon))
        object.__setattr__(self, "coupling_g", float(self.coupling_g))
        object.__setattr__(self, "evolve_time", float(self.evolve_time))
        object.__setattr__(self, "nmax", int(self.nmax))
        if not 0.0 < self.epsilon <= 0.1:
            raise ValueError(
                f"epsilon must lie in (0, 0.1], got {self.epsilon}; the model is "
                f"first order in the scattering amplitude"
            )
        if self.coupling_g < 0:
            raise ValueError("coupling_g must be >= 0")
        if self.evolve_time < 0:
            raise ValueError("evolve_time must be >= 0")
        if self.nmax < 2:
            raise ValueError("nmax must be >= 2")

    def to_dict(self) -> dict:
        """Flat key-value form used for config files and report headers."""
        return {
            "config": self.config.value,
            "pulse": self.pulse.value,
            "beta": _complex_str(self.beta),
            "alpha": _complex_str(self.alpha),
            "epsilon": self.epsilon,
            "coupling_g": self.coupling_g,
            "evolve_time": self.evolve_time,
            "treatment": self.treatment.value,
            "nmax": self.nmax,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioSpec":
        kwargs = dict(data)
        for key in ("beta", "alpha"):
            if key in kwargs:
                kwargs[key] = complex(str(kwargs[key]))
        return cls(**kwargs)


def _complex_str(z: complex) -> str:
    return str(complex(z)).strip("()")


def _two_atom_space(nmax: int) -> FockSpace:
    return FockSpace((nmax, nmax), ("atom1", "atom2"))


def _single_atom_space(nmax: int) -> FockSpace:
    return FockSpace((nmax,), ("atom",))


def _in_space(space: FockSpace, *factors: FockVector) -> FockVector:
    """Tensor single-mode states and rebind them to a labeled space."""
    return FockVector(space, tensor(factors).amplitudes)


def _elastic_amplitude(beta: complex) -> float:
    b2 = abs(beta) ** 2
    if b2 >= 1.0:
        raise PerturbationError(
            f"first-order treatment requires |beta| < 1, got |beta|^2 = {b2:.4g}"
        )
    return math.sqrt(1.0 - b2)


def _first_order_kicked(nmax: int, beta: complex) -> FockVector:
    """sqrt(1-|b|^2) |0> + b |1>: normalized single-mode first-order marker."""
    space = FockSpace((nmax,))
    return _elastic_amplitude(beta) * basis_state(space, (0,)) + beta * basis_state(
        space, (1,)
    )


def build_A(spec: ScenarioSpec) -> TwoPathMixture:
    """Rigid slits: both paths carry the untouched ground marker, full contrast."""
    space = _two_atom_space(spec.nmax)
    g = ground_state(space)
    w = spec.epsilon**2
    return TwoPathMixture((TwoPathComponent(g, g, FreqTag.ELASTIC, w),))


def build_B_short(spec: ScenarioSpec) -> TwoPathMixture:
    """Independent slits, short pulse: the kicked slit records the path.

    EXACT: psi1 = |b>|0>, psi2 = |0>|b>, one coherent component with contrast
    exp(-|b|^2). FIRST_ORDER: a single excitation shared between the slits,
    contrast exactly 1-|b|^2.
    """
    b, nmax = spec.beta, spec.nmax
    space = _two_atom_space(nmax)
    w = spec.epsilon**2
    if spec.treatment is Treatment.EXACT:
        kicked, _ = coherent_state(b, nmax)
        still, _ = coherent_state(0, nmax)
        psi1 = _in_space(space, kicked, still)
        psi2 = _in_space(space, still, kicked)
    else:
        c0 = _elastic_amplitude(b)
        psi1 = c0 * basis_state(space, (0, 0)) + b * basis_state(space, (1, 0))
        psi2 = c0 * basis_state(space, (0, 0)) + b * basis_state(space, (0, 1))
    return TwoPathMixture((TwoPathComponent(psi1, psi2, FreqTag.ELASTIC, w),))


def build_B_long(spec: ScenarioSpec) -> TwoPathMixture:
    """Independent slits, long pulse: which-way outcomes become an incoherent mixture.

    Elastic light keeps both paths; each frequency-shifted outcome pins the
    photon to one slit and kills the fringe. Outcome fractions are 1-|b|^2 and
    |b|^2/2 per slit, so the one-path components enter with weight |b|^2.
    """
    b, nmax = spec.beta, spec.nmax
    b2 = abs(b) ** 2
    space = _two_atom_space(nmax)
    g = ground_state(space)
    eps2 = spec.epsilon**2
    return TwoPathMixture(
        (
            TwoPathComponent(g, g, FreqTag.ELASTIC, eps2 * (1.0 - b2)),
            TwoPathComponent(
                basis_state(space, (1, 0)), zero_vector(space), FreqTag.SHIFTED, eps2 * b2
            ),
            TwoPathComponent(
                zero_vector(space), basis_state(space, (0, 1)), FreqTag.SHIFTED, eps2 * b2
            ),
        )
    )


def build_C_short(spec: ScenarioSpec) -> TwoPathMixture:
    """Single recoiling slit, short pulse: opposite kicks tag the two paths.

    EXACT: psi1 = |b>, psi2 = |-b>, contrast exp(-2|b|^2). FIRST_ORDER: the
    kick flips the sign of the |1> amplitude between paths, contrast exactly
    1-2|b|^2. C1 and C2 are equivalent and share this builder.
    """
    b, nmax = spec.beta, spec.nmax
    space = _single_atom_space(nmax)
    w = spec.epsilon**2
    if spec.treatment is Treatment.EXACT:
        plus, _ = coherent_state(b, nmax)
        minus, _ = coherent_state(-b, nmax)
        psi1 = FockVector(space, plus.amplitudes)
        psi2 = FockVector(space, minus.amplitudes)
    else:
        psi1 = FockVector(space, _first_order_kicked(nmax, b).amplitudes)
        psi2 = FockVector(space, _first_order_kicked(nmax, -b).amplitudes)
    return TwoPathMixture((TwoPathComponent(psi1, psi2, FreqTag.ELASTIC, w),))


def build_C_long(spec: ScenarioSpec) -> TwoPathMixture:
    """Single recoiling slit, long pulse: elastic and trap-shifted lines.

    The shifted line leaves the atom in |1> with a path-antisymmetric sign,
    i.e. a pi-shifted fringe of full contrast, weight |b|^2. Without frequency
    selection the two lines add to contrast 1-2|b|^2.
    """
    b, nmax = spec.beta, spec.nmax
    b2 = abs(b) ** 2
    space = _single_atom_space(nmax)
    g = ground_state(space)
    e1 = basis_state(space, (1,))
    eps2 = spec.epsilon**2
    return TwoPathMixture(
        (
            TwoPathComponent(g, g, FreqTag.ELASTIC, eps2 * (1.0 - b2)),
            TwoPathComponent(e1, -e1, FreqTag.SHIFTED, eps2 * b2),
        )
    )


def build_D_short(spec: ScenarioSpec) -> TwoPathMixture:
    """Config C with 2D motion: common-mode kick alpha along z, +/- beta along y.

    The z displacement is identical on both paths, so it factors out of the
    fringe entirely even when alpha is large; it is detectable but carries no
    which-way information.
    """
    b, a, nmax = spec.beta, spec.alpha, spec.nmax
    space = FockSpace((nmax, nmax), ("z", "y"))
    w = spec.epsilon**2
    common, _ = coherent_state(a, nmax)
    if spec.treatment is Treatment.EXACT:
        plus, _ = coherent_state(b, nmax)
        minus, _ = coherent_state(-b, nmax)
    else:
        plus = _first_order_kicked(nmax, b)
        minus = _first_order_kicked(nmax, -b)
    psi1 = _in_space(space, common, plus)
    psi2 = _in_space(space, common, minus)
    return TwoPathMixture((TwoPathComponent(psi1, psi2, FreqTag.ELASTIC, w),))


def build_E_short(spec: ScenarioSpec) -> TwoPathMixture:
    """Coupled slits, short pulse: independent-slit state evolved under the beat.

    Starts elementwise identical to first-order config B, then evolves the
    excitation pair for evolve_time at coupling coupling_g. At a quarter of
    the beat period the evolution acts as a quantum eraser. Only the
    first-order treatment is supported.
    """
    if spec.treatment is not Treatment.FIRST_ORDER:
        raise ScenarioError(
            "config E is implemented at first order only; use treatment='first'"
        )
    base = build_B_short(spec)
    return transforms.evolve_beat(base, spec.coupling_g, spec.evolve_time)


def build_E_long(spec: ScenarioSpec) -> TwoPathMixture:
    """Coupled slits, long pulse: the normal modes are the recorded eigenstates.

    The symmetric mode fringes in phase with the elastic line, the
    antisymmetric mode pi-shifted; neither marks a path. Weights are |b|^2/2
    per mode, elastic 1-|b|^2.
    """
    b, nmax = spec.beta, spec.nmax
    b2 = abs(b) ** 2
    space = _two_atom_space(nmax)
    g = ground_state(space)
    root = 1.0 / math.sqrt(2.0)
    sym = root * (basis_state(space, (1, 0)) + basis_state(space, (0, 1)))
    antisym = root * (basis_state(space, (1, 0)) - basis_state(space, (0, 1)))
    eps2 = spec.epsilon**2
    return TwoPathMixture(
        (
            TwoPathComponent(g, g, FreqTag.ELASTIC, eps2 * (1.0 - b2)),
            TwoPathComponent(sym, sym, FreqTag.SYM, eps2 * b2 / 2.0),
            TwoPathComponent(antisym, -antisym, FreqTag.ANTISYM, eps2 * b2 / 2.0),
        )
    )


def build(spec: ScenarioSpec) -> TwoPathMixture:
    """Dispatch a ScenarioSpec to its builder.

    Raises ScenarioError for undefined combinations: config D exists for
    short pulses only, config E for the first-order treatment only.
    """
    cfg = spec.config
    if cfg is Config.A:
        return build_A(spec)
    if cfg is Config.B:
        return build_B_short(spec) if spec.pulse is Pulse.SHORT else build_B_long(spec)
    if cfg in (Config.C1, Config.C2):
        return build_C_short(spec) if spec.pulse is Pulse.SHORT else build_C_long(spec)
    if cfg is Config.D:
        if spec.pulse is not Pulse.SHORT:
            raise ScenarioError("config D supports short pulses only")
        return build_D_short(spec)
    if cfg is Config.E:
        return build_E_short(spec) if spec.pulse is Pulse.SHORT else build_E_long(spec)
    raise ScenarioError(f"unknown configuration {cfg!r}")
