"""Behavioral 2x2 scattering models of the building blocks and their named parameter sets.

All models are forward-only: a 2x2 matrix M maps the field amplitudes on the lower and upper rail of an element to
its outputs, M[j, i] being the transmission from input i to output j. Cross-coupled (cross and drop) amplitudes of
couplers carry a phase of +90 degrees relative to the straight path.
"""
from __future__ import annotations

from math import sqrt
from pathlib import Path

import numpy as np
from pydantic import BaseModel, NonNegativeFloat, PositiveFloat, confloat

from photon_fabric.common.enums import SwitchModelEnum
from photon_fabric.config.defaults import (
    CROSSOVER_BANDWIDTH_NM,
    CROSSOVER_CROSSTALK,
    CROSSOVER_INSERTION_LOSS,
    CROSSOVER_ROLLOFF_DB_PER_NM,
    DB_FLOOR,
    LAMBDA_CENTER,
    RESONATOR_DROP_LOSS,
    RESONATOR_EXTINCTION,
    RESONATOR_GROUP_INDEX,
    RESONATOR_Q,
    RESONATOR_THROUGH_LOSS,
    SPLITTER_CROSSTALK_FLOOR,
    SPLITTER_EXCESS_LOSS,
)
from photon_fabric.errors import ValidationError

IDEAL_EXTINCTION = 300.0


def _power(db: float) -> float:
    return float(10 ** (db / 10))


class CouplerParams(BaseModel):
    """A model describing a directional coupler (the inverse-designed splitter).

    Attributes
    ----------
    split_ratio: float
        The fraction of power coupled to the cross port
    excess_loss: float
        The loss common to both paths (dB)
    crosstalk_floor: float
        The smallest power fraction on either path (dB), bounding split_ratio away from 0 and 1
    """

    split_ratio: confloat(ge=0.0, le=1.0) = 0.5  # type: ignore[valid-type]
    excess_loss: NonNegativeFloat = SPLITTER_EXCESS_LOSS
    crosstalk_floor: confloat(le=0.0) = SPLITTER_CROSSTALK_FLOOR  # type: ignore[valid-type]


class CrossoverParams(BaseModel):
    """A model describing a waveguide crossover and its band.

    Attributes
    ----------
    insertion_loss: float
        The loss of the crossing path (dB)
    crosstalk: float
        The power leaking into the straight path inside of the band (dB)
    bandwidth: float
        The full width of the flat band (nm)
    center: float
        The center of the band (nm)
    rolloff: float
        The growth of the leakage per nm beyond the band edge (dB/nm)
    """

    insertion_loss: NonNegativeFloat = CROSSOVER_INSERTION_LOSS
    crosstalk: confloat(le=-10.0) = CROSSOVER_CROSSTALK  # type: ignore[valid-type]
    bandwidth: PositiveFloat = CROSSOVER_BANDWIDTH_NM
    center: PositiveFloat = LAMBDA_CENTER * 1e9
    rolloff: NonNegativeFloat = CROSSOVER_ROLLOFF_DB_PER_NM


class ResonatorParams(BaseModel):
    """A model describing an all-forward add-drop resonator.

    Attributes
    ----------
    lambda_r0: float
        The untuned resonance (m)
    Q: float
        The quality factor, lambda_r0 over the linewidth
    drop_loss: float
        The loss of the drop path on resonance (dB)
    through_loss: float
        The loss of the through path far from resonance (dB)
    extinction: float
        The suppression of the through path on resonance (dB)
    n_g: float
        The group index relating an index shift to a resonance shift
    delta_n: float
        The applied index shift
    """

    lambda_r0: PositiveFloat = LAMBDA_CENTER
    Q: PositiveFloat = RESONATOR_Q
    drop_loss: NonNegativeFloat = RESONATOR_DROP_LOSS
    through_loss: NonNegativeFloat = RESONATOR_THROUGH_LOSS
    extinction: PositiveFloat = RESONATOR_EXTINCTION
    n_g: PositiveFloat = RESONATOR_GROUP_INDEX
    delta_n: float = 0.0

    @property
    def linewidth(self) -> float:
        """Return the full width at half maximum of the resonance."""
        return self.lambda_r0 / self.Q

    @property
    def resonance(self) -> float:
        """The tuned resonance lambda_r0 * (1 + delta_n / n_g) (m)."""
        return self.lambda_r0 * (1.0 + self.delta_n / self.n_g)

    def tuned(self, lambda_r0: float | None = None, delta_n: float | None = None) -> ResonatorParams:
        """Return a copy with another untuned resonance or index shift.

        Parameters
        ----------
        lambda_r0: float | None
            The untuned resonance (m), unchanged if None
        delta_n: float | None
            The index shift, unchanged if None

        Returns
        -------
        ResonatorParams
            The copy
        """
        update: dict[str, float] = {}
        if lambda_r0 is not None:
            update["lambda_r0"] = lambda_r0
        if delta_n is not None:
            update["delta_n"] = delta_n
        return self.copy(update=update)


class PermutationBlockParams(BaseModel):
    """A model describing the multi-crossed waveguide region of hybrid layouts.

    Attributes
    ----------
    insertion_loss: float
        The loss of every routed path (dB)
    crosstalk: float
        The power leaking into the path of each neighboring rail (dB)
    """

    insertion_loss: NonNegativeFloat = CROSSOVER_INSERTION_LOSS
    crosstalk: confloat(le=-10.0) = CROSSOVER_CROSSTALK  # type: ignore[valid-type]


class DeviceParameterSet(BaseModel):
    """A named set of behavioral parameters for all building blocks of a circuit.

    Attributes
    ----------
    name: str
        The name of the set
    coupler: CouplerParams
        The couplers (also the halves of MZI switches)
    crossover: CrossoverParams
        The crossovers
    resonator: ResonatorParams
        The template of all resonators, whose resonance is set per element
    permutation_block: PermutationBlockParams
        Abstract permutation blocks
    switch_model: SwitchModelEnum
        The model of broadband switches
    """

    name: str
    coupler: CouplerParams = CouplerParams()
    crossover: CrossoverParams = CrossoverParams()
    resonator: ResonatorParams = ResonatorParams()
    permutation_block: PermutationBlockParams = PermutationBlockParams()
    switch_model: SwitchModelEnum = SwitchModelEnum.RESONATOR


PARAMETER_SETS = {
    "paper-nominal": DeviceParameterSet(name="paper-nominal"),
    "ideal": DeviceParameterSet(
        name="ideal",
        coupler=CouplerParams(excess_loss=0.0, crosstalk_floor=DB_FLOOR),
        crossover=CrossoverParams(insertion_loss=0.0, crosstalk=DB_FLOOR, rolloff=0.0),
        resonator=ResonatorParams(drop_loss=0.0, through_loss=0.0, extinction=IDEAL_EXTINCTION),
        permutation_block=PermutationBlockParams(insertion_loss=0.0, crosstalk=DB_FLOOR),
    ),
}


def parameter_set(name: str) -> DeviceParameterSet:
    """Return a built-in parameter set.

    Parameters
    ----------
    name: str
        The name of the set ("paper-nominal" or "ideal")

    Raises
    ------
    ValidationError
        If no set of that name exists

    Returns
    -------
    DeviceParameterSet
        The parameter set
    """
    try:
        return PARAMETER_SETS[name]
    except KeyError:
        raise ValidationError(f"There is no parameter set named {name}, choose one of {sorted(PARAMETER_SETS)}!")


def coupler_matrix(p: CouplerParams, wavelength: float = LAMBDA_CENTER) -> np.ndarray:
    """Return the scattering matrix of a broadband coupler.

    Parameters
    ----------
    p: CouplerParams
        The coupler
    wavelength: float
        The free-space wavelength (m), without influence on the broadband model

    Returns
    -------
    np.ndarray
        sqrt(L) * [[t, j * c], [j * c, t]] with c^2 the bounded split ratio and L the excess loss as power fraction
    """
    floor = _power(p.crosstalk_floor)
    ratio = min(max(p.split_ratio, floor), 1.0 - floor)
    t, c = sqrt(1.0 - ratio), sqrt(ratio)
    return sqrt(_power(-p.excess_loss)) * np.array([[t, 1j * c], [1j * c, t]], dtype=complex)


def crossover_matrix(p: CrossoverParams, wavelength: float = LAMBDA_CENTER) -> np.ndarray:
    """Return the scattering matrix of a crossover.

    Inside of center +- bandwidth / 2 the leakage into the straight path is p.crosstalk; beyond the band edge it grows
    by p.rolloff dB per nm. The crossing path loses p.insertion_loss, or more if the leakage would make the element
    gain power.

    Parameters
    ----------
    p: CrossoverParams
        The crossover
    wavelength: float
        The free-space wavelength (m)

    Returns
    -------
    np.ndarray
        [[j * x, c], [c, j * x]] with x^2 the leakage and c^2 the crossing power
    """
    beyond = max(0.0, abs(wavelength * 1e9 - p.center) - p.bandwidth / 2)
    leak = min(_power(p.crosstalk + p.rolloff * beyond), 1.0)
    through = min(_power(-p.insertion_loss), 1.0 - leak)
    x, c = sqrt(leak), sqrt(max(through, 0.0))
    return np.array([[1j * x, c], [c, 1j * x]], dtype=complex)


def resonator_matrix(p: ResonatorParams, wavelength: float = LAMBDA_CENTER) -> np.ndarray:
    """Return the scattering matrix of an all-forward add-drop resonator.

    With detuning d = wavelength - resonance, half width h = lambda_r0 / (2 * Q) and e the through amplitude on
    resonance (from the extinction), the through amplitude is sqrt(A_t) * (j * d + h * e) / (j * d + h) and the drop
    amplitude sqrt(A_d) * h * sqrt(1 - e^2) / (j * d + h). The through amplitude leads the drop amplitude by +90
    degrees above resonance.

    Parameters
    ----------
    p: ResonatorParams
        The resonator
    wavelength: float
        The free-space wavelength (m)

    Returns
    -------
    np.ndarray
        [[t, d], [d, t]], the drop path exchanging the rails
    """
    half = p.lambda_r0 / (2 * p.Q)
    detuning = wavelength - p.resonance
    floor = 10 ** (-p.extinction / 20)
    denominator = 1j * detuning + half
    through = sqrt(_power(-p.through_loss)) * (1j * detuning + half * floor) / denominator
    drop = sqrt(_power(-p.drop_loss)) * half * sqrt(1.0 - floor**2) / denominator
    return np.array([[through, drop], [drop, through]], dtype=complex)


def mzi_matrix(coupler: CouplerParams, phase: float, wavelength: float = LAMBDA_CENTER) -> np.ndarray:
    """Return the scattering matrix of a Mach-Zehnder switch made of two couplers.

    The arm on the upper rail carries a fixed pi offset, so that the switch is in bar state without phase shift.

    Parameters
    ----------
    coupler: CouplerParams
        The two couplers
    phase: float
        The phase shift of the upper arm (rad): 0 for bar, pi for cross, pi / 2 for an even split
    wavelength: float
        The free-space wavelength (m)

    Returns
    -------
    np.ndarray
        C * diag(1, -exp(j * phase)) * C
    """
    splitter = coupler_matrix(coupler, wavelength)
    arms = np.diag([1.0, -np.exp(1j * phase)])
    return splitter @ arms @ splitter


def export_schemas(output: Path | str) -> None:
    """Export the JSON schema of selected pydantic models to an output directory.

    Parameters
    ----------
    output: Path | str
        A path to which to output the JSON schema files

    Raises
    ------
    RuntimeError
        If output is not an existing directory
    """
    classes = [DeviceParameterSet]

    if isinstance(output, str):
        output = Path(output)

    if not output.exists():
        raise RuntimeError(f"The output directory {output} must exist!")

    for class_ in classes:
        with open(output / f"{class_.__name__}.json", "w") as f:
            print(class_.schema_json(indent=2), file=f)
