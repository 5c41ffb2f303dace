"""Routing requests, switch states and verification records."""
from __future__ import annotations

from pathlib import Path
from typing import Any

from pydantic import BaseModel, NonNegativeInt, PositiveFloat, root_validator, validator

from photon_fabric.common.enums import ActuationEnum
from photon_fabric.errors import UnresolvedControl


class Permutation(BaseModel):
    """A model describing a requested connection of input ports to output ports.

    Attributes
    ----------
    sigma: dict[int, int]
        The output port of each connected input port
    """

    sigma: dict[NonNegativeInt, NonNegativeInt]

    @validator("sigma")
    def validate_sigma(cls, sigma: dict[int, int]) -> dict[int, int]:
        """Validate that no two inputs are connected to the same output.

        Parameters
        ----------
        sigma: dict[int, int]
            The connections

        Raises
        ------
        ValueError
            If sigma is not injective

        Returns
        -------
        dict[int, int]
            The connections ordered by input
        """
        if len(set(sigma.values())) != len(sigma):
            raise ValueError(f"The connections {sigma} share outputs!")
        return dict(sorted(sigma.items()))

    @classmethod
    def from_list(cls, outputs: list[int]) -> Permutation:
        """Create a permutation from the list of outputs in order of inputs.

        Parameters
        ----------
        outputs: list[int]
            The output of input 0, 1, ...

        Returns
        -------
        Permutation
            The permutation
        """
        return cls(sigma=dict(enumerate(outputs)))

    def is_total(self, n: int) -> bool:
        """Return whether the connections are a bijection on n ports."""
        return sorted(self.sigma) == list(range(n)) and sorted(self.sigma.values()) == list(range(n))

    def completed(self, n: int) -> list[int]:
        """Extend the connections to a bijection on n ports.

        Unconnected inputs are connected to the unused outputs in ascending order.

        Parameters
        ----------
        n: int
            The number of ports

        Returns
        -------
        list[int]
            The output of input 0, 1, ..., n - 1
        """
        free = iter(sorted(set(range(n)) - set(self.sigma.values())))
        return [self.sigma[port] if port in self.sigma else next(free) for port in range(n)]


class WavelengthRoute(BaseModel):
    """One colored connection.

    Attributes
    ----------
    input: int
        The input port
    color_nm: float
        The color (nm)
    output: int
        The output port
    """

    input: NonNegativeInt
    color_nm: PositiveFloat
    output: NonNegativeInt


class WavelengthRequest(BaseModel):
    """A model describing the requested routes of colors from input ports to output ports.

    Attributes
    ----------
    routes: list[WavelengthRoute]
        The routes, at most one per input port and color
    """

    routes: list[WavelengthRoute]

    @validator("routes")
    def validate_routes(cls, routes: list[WavelengthRoute]) -> list[WavelengthRoute]:
        """Validate that every input port and color is routed at most once.

        Parameters
        ----------
        routes: list[WavelengthRoute]
            The routes

        Raises
        ------
        ValueError
            If an input port and color appear twice

        Returns
        -------
        list[WavelengthRoute]
            The routes ordered by color and input
        """
        keys = [(route.input, route.color_nm) for route in routes]
        if len(set(keys)) != len(keys):
            raise ValueError("A color of an input port is routed more than once!")
        return sorted(routes, key=lambda route: (route.color_nm, route.input))

    def colors(self) -> list[float]:
        """Return the distinct colors of the routes in ascending order."""
        return sorted({route.color_nm for route in self.routes})

    def for_color(self, color_nm: float) -> list[WavelengthRoute]:
        """Return the routes of one color."""
        return [route for route in self.routes if route.color_nm == color_nm]


class SwitchState(BaseModel):
    """A model describing the actuation of the controls of a layout.

    Attributes
    ----------
    actuations: dict[str, ActuationEnum]
        The state of each control id
    delta_n: dict[str, float]
        Optional index shifts of resonator-based controls for analog models
    """

    actuations: dict[str, ActuationEnum]
    delta_n: dict[str, float] = {}

    @root_validator(skip_on_failure=True)
    def validate_delta_n(cls, values: dict[str, Any]) -> dict[str, Any]:
        """Validate that index shifts belong to actuated controls and agree with their state.

        Parameters
        ----------
        values: dict[str, Any]
            The validated fields

        Raises
        ------
        ValueError
            If an index shift belongs to an unknown control, a cross state control has a non-zero shift or a bar state
            control has none

        Returns
        -------
        dict[str, Any]
            The unchanged fields
        """
        actuations: dict[str, ActuationEnum] = values["actuations"]
        for control, shift in values["delta_n"].items():
            if control not in actuations:
                raise ValueError(f"The index shift of {control} belongs to no actuated control!")
            if (actuations[control] == ActuationEnum.CROSS) != (shift == 0.0):
                raise ValueError(
                    f"The index shift {shift} of {control} contradicts its {actuations[control].value} state!"
                )
        return values

    def actuation(self, control: str) -> ActuationEnum:
        """Return the state of a control.

        Parameters
        ----------
        control: str
            The control id

        Raises
        ------
        UnresolvedControl
            If the state does not resolve the control

        Returns
        -------
        ActuationEnum
            The state
        """
        try:
            return self.actuations[control]
        except KeyError:
            raise UnresolvedControl(f"The control {control} has no state!")

    def non_ambient(self, ambient: ActuationEnum) -> int:
        """Return the number of controls that are not in the ambient state."""
        return sum(1 for actuation in self.actuations.values() if actuation != ambient)

    def crosses(self) -> int:
        """Return the number of controls in the cross state."""
        return sum(1 for actuation in self.actuations.values() if actuation == ActuationEnum.CROSS)


class TracedRoute(BaseModel):
    """The realized destination of one input.

    Attributes
    ----------
    input: int
        The input port
    color_nm: float | None
        The color (nm), None for broadband traces
    output: int | None
        The reached output port, None if the light was absorbed or left on a rail that is no output
    """

    input: NonNegativeInt
    color_nm: PositiveFloat | None = None
    output: NonNegativeInt | None = None


class RouteRecord(BaseModel):
    """A model describing the verification of a switch state against a request.

    Attributes
    ----------
    request_id: int
        The index of the request in a batch
    verified: bool
        Whether the traced routes realize the request
    non_ambient: int
        The number of controls not in the ambient state
    crosses: int
        The number of controls in cross state
    traced: list[TracedRoute]
        The traced routes of all inputs (for every requested color)
    """

    request_id: NonNegativeInt = 0
    verified: bool
    non_ambient: NonNegativeInt
    crosses: NonNegativeInt
    traced: list[TracedRoute] = []


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
    classes = [Permutation, WavelengthRequest, SwitchState, RouteRecord]

    if isinstance(output, str):
        output = Path(output)

    if not output.exists():
        raise RuntimeError(f"The output directory {output} must exist!")

    for class_ in classes:
        with open(output / f"{class_.__name__}.json", "w") as f:
            print(class_.schema_json(indent=2), file=f)
