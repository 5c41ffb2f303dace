"""Circuit layouts on the parallel-rail framework and their JSON form."""
from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Any, Iterator

from aiofiles import open as async_open
from orjson import JSONDecodeError, dumps, loads
from pydantic import BaseModel, NonNegativeInt, PositiveFloat, PositiveInt, root_validator, validator
from pydantic import ValidationError as PydanticValidationError

from photon_fabric.common.enums import ActuationEnum, ArchitectureKindEnum, PlacementKindEnum, SwitchModelEnum
from photon_fabric.config.defaults import COLUMN_PITCH, ORJSON_OPTION, RAIL_PITCH
from photon_fabric.errors import ArtifactNotFoundError, ValidationError


class Placement(BaseModel):
    """A 2x2 element spanning a rail and the rail above it.

    Attributes
    ----------
    rail: int
        The lower of the two rails
    kind: PlacementKindEnum
        The kind of element
    control: str | None
        The control id of an actuated element, None for passive elements
    color_nm: float | None
        The resonance of a wavelength-dedicated element (nm), None for broadband elements
    """

    rail: NonNegativeInt
    kind: PlacementKindEnum
    control: str | None = None
    color_nm: PositiveFloat | None = None

    @root_validator(skip_on_failure=True)
    def validate_kind(cls, values: dict[str, Any]) -> dict[str, Any]:
        """Validate that control and color match the kind of element.

        Parameters
        ----------
        values: dict[str, Any]
            The validated fields

        Raises
        ------
        ValueError
            If an actuated element lacks a control, a passive one has a control, a wavelength-dedicated element lacks
            a color or a broadband one has a color

        Returns
        -------
        dict[str, Any]
            The unchanged fields
        """
        kind: PlacementKindEnum = values["kind"]
        if kind.is_active() != (values["control"] is not None):
            raise ValueError(f"A {kind.value} element {'requires' if kind.is_active() else 'must not have'} a control!")
        colored = kind in (PlacementKindEnum.COLORED_SWITCH, PlacementKindEnum.ADD_DROP)
        if colored != (values["color_nm"] is not None):
            raise ValueError(f"A {kind.value} element {'requires' if colored else 'must not have'} a color!")
        return values


class Column(BaseModel):
    """One column of a layout: either elements on disjoint rail pairs or an abstract permutation block.

    Attributes
    ----------
    placements: list[Placement]
        The elements, ordered by rail
    permutation: list[int] | None
        The destination rail of each rail for a permutation block, None otherwise
    """

    placements: list[Placement] = []
    permutation: list[NonNegativeInt] | None = None

    @validator("placements")
    def validate_placements(cls, placements: list[Placement]) -> list[Placement]:
        """Validate that the elements of a column occupy disjoint rail pairs and order them by rail.

        Parameters
        ----------
        placements: list[Placement]
            The elements

        Raises
        ------
        ValueError
            If two elements share a rail

        Returns
        -------
        list[Placement]
            The elements ordered by rail
        """
        ordered = sorted(placements, key=lambda placement: placement.rail)
        for lower, upper in zip(ordered, ordered[1:]):
            if upper.rail <= lower.rail + 1:
                raise ValueError(f"The elements on rails {lower.rail} and {upper.rail} overlap!")
        return ordered

    @root_validator(skip_on_failure=True)
    def validate_permutation(cls, values: dict[str, Any]) -> dict[str, Any]:
        """Validate that a permutation block is a bijection and is not mixed with elements.

        Parameters
        ----------
        values: dict[str, Any]
            The validated fields

        Raises
        ------
        ValueError
            If the column has both elements and a permutation, or the permutation is not a bijection

        Returns
        -------
        dict[str, Any]
            The unchanged fields
        """
        permutation = values["permutation"]
        if permutation is not None:
            if values["placements"]:
                raise ValueError("A permutation block can not share its column with elements!")
            if sorted(permutation) != list(range(len(permutation))):
                raise ValueError(f"The permutation block {permutation} is not a bijection!")
        return values


class Terminator(BaseModel):
    """An absorber on a rail, in front of the elements of a column.

    Attributes
    ----------
    rail: int
        The rail
    column: int
        The column in front of which light is absorbed (the number of columns for the end of the layout)
    """

    rail: NonNegativeInt
    column: NonNegativeInt


class CircuitLayout(BaseModel):
    """A feed-forward circuit on parallel rails.

    Attributes
    ----------
    kind: ArchitectureKindEnum | None
        The architecture the layout was generated for, None for hand-made layouts
    n_rails: int
        The number of rails
    columns: list[Column]
        The columns in order of propagation
    terminators: list[Terminator]
        The absorbers
    inputs: list[int]
        The rail of each input port
    outputs: list[list[int]]
        The rails of each output port (several rails for ports collecting one rail per color)
    palette: list[float]
        The resonances used by wavelength-dedicated elements (nm), indexed by color
    ambient: ActuationEnum
        The state of unactuated switches
    rail_pitch: float
        The distance of neighboring rails (m)
    column_pitch: float
        The distance of neighboring columns (m)
    """

    kind: ArchitectureKindEnum | None = None
    n_rails: PositiveInt
    columns: list[Column] = []
    terminators: list[Terminator] = []
    inputs: list[NonNegativeInt]
    outputs: list[list[NonNegativeInt]]
    palette: list[PositiveFloat] = []
    ambient: ActuationEnum = ActuationEnum.CROSS
    rail_pitch: PositiveFloat = RAIL_PITCH
    column_pitch: PositiveFloat = COLUMN_PITCH

    @root_validator(skip_on_failure=True)
    def validate_layout(cls, values: dict[str, Any]) -> dict[str, Any]:
        """Validate bounds, uniqueness of controls and the ports of a layout.

        Parameters
        ----------
        values: dict[str, Any]
            The validated fields

        Raises
        ------
        ValueError
            If an element, permutation block, terminator or port lies outside of the rails, a terminator lies beyond
            the last column, a control id is used twice or a rail serves two ports

        Returns
        -------
        dict[str, Any]
            The unchanged fields
        """
        n_rails: int = values["n_rails"]
        columns: list[Column] = values["columns"]
        controls: Counter[str] = Counter()
        for index, column in enumerate(columns):
            if column.permutation is not None and len(column.permutation) != n_rails:
                raise ValueError(f"The permutation block in column {index} does not span all {n_rails} rails!")
            for placement in column.placements:
                if placement.rail + 1 >= n_rails:
                    raise ValueError(f"The element on rail {placement.rail} in column {index} exceeds {n_rails} rails!")
                if placement.control is not None:
                    controls[placement.control] += 1
        duplicates = sorted(control for control, count in controls.items() if count > 1)
        if duplicates:
            raise ValueError(f"The control ids {duplicates} are used more than once!")

        for terminator in values["terminators"]:
            if terminator.rail >= n_rails or terminator.column > len(columns):
                raise ValueError(f"The terminator {terminator} lies outside of the layout!")

        outputs = [rail for group in values["outputs"] for rail in group]
        for name, rails in (("input", values["inputs"]), ("output", outputs)):
            if any(rail >= n_rails for rail in rails) or len(set(rails)) != len(rails):
                raise ValueError(f"The {name} rails {rails} are out of range or not distinct!")
        return values

    def placements(self) -> Iterator[tuple[int, Placement]]:
        """Iterate over all elements with the index of their column.

        Returns
        -------
        Iterator[tuple[int, Placement]]
            Tuples of column index and element, in order of propagation
        """
        for index, column in enumerate(self.columns):
            for placement in column.placements:
                yield index, placement

    def controls(self) -> list[str]:
        """Return the control ids of all actuated elements in order of propagation.

        Returns
        -------
        list[str]
            The control ids
        """
        return [placement.control for _, placement in self.placements() if placement.control is not None]

    def output_port(self, rail: int) -> int | None:
        """Return the output port a rail belongs to.

        Parameters
        ----------
        rail: int
            A rail

        Returns
        -------
        int | None
            The index of the output port or None if the rail is no output
        """
        for port, rails in enumerate(self.outputs):
            if rail in rails:
                return port
        return None


def empty_layout(n_rails: int) -> CircuitLayout:
    """Return a layout of straight rails without elements.

    Parameters
    ----------
    n_rails: int
        The number of rails

    Returns
    -------
    CircuitLayout
        The layout, with one input and one output port per rail
    """
    return CircuitLayout(n_rails=n_rails, inputs=list(range(n_rails)), outputs=[[rail] for rail in range(n_rails)])


class ArchitectureSpec(BaseModel):
    """A model describing a request for a generated architecture.

    Attributes
    ----------
    kind: ArchitectureKindEnum
        The architecture
    n: int | None
        The number of ports, None for the default of the architecture
    colors: int | None
        The number of colors of wavelength-routing architectures, None for the default
    palette: list[float] | None
        The resonances to use (nm), None for the default palette of the architecture
    switch_model: SwitchModelEnum
        The model of the actuated elements, which determines the ambient state
    """

    kind: ArchitectureKindEnum
    n: PositiveInt | None = None
    colors: PositiveInt | None = None
    palette: list[PositiveFloat] | None = None
    switch_model: SwitchModelEnum = SwitchModelEnum.RESONATOR


class ComponentCounts(BaseModel):
    """Tallies of the components of a layout.

    Attributes
    ----------
    active: int
        Actuated elements
    passive_crossovers: int
        Crossovers
    passive_add_drops: int
        Passive wavelength-dedicated add-drops
    terminators: int
        Absorbers
    permutation_blocks: int
        Abstract permutation blocks
    rails: int
        Rails
    columns: int
        Columns
    """

    active: NonNegativeInt = 0
    passive_crossovers: NonNegativeInt = 0
    passive_add_drops: NonNegativeInt = 0
    terminators: NonNegativeInt = 0
    permutation_blocks: NonNegativeInt = 0
    rails: NonNegativeInt = 0
    columns: NonNegativeInt = 0

    @property
    def passive(self) -> int:
        """Return the number of passive elements."""
        return self.passive_crossovers + self.passive_add_drops


def count_components(layout: CircuitLayout | None) -> ComponentCounts:
    """Count the components of a layout by kind.

    Parameters
    ----------
    layout: CircuitLayout | None
        The layout (None counts as empty)

    Returns
    -------
    ComponentCounts
        The tallies
    """
    if layout is None:
        return ComponentCounts()
    kinds = Counter(placement.kind for _, placement in layout.placements())
    return ComponentCounts(
        active=sum(count for kind, count in kinds.items() if kind.is_active()),
        passive_crossovers=kinds[PlacementKindEnum.CROSSOVER],
        passive_add_drops=kinds[PlacementKindEnum.ADD_DROP],
        terminators=len(layout.terminators),
        permutation_blocks=sum(1 for column in layout.columns if column.permutation is not None),
        rails=layout.n_rails,
        columns=len(layout.columns),
    )


def layout_to_json(layout: CircuitLayout) -> bytes:
    """Serialize a layout to JSON with stable key order.

    Parameters
    ----------
    layout: CircuitLayout
        The layout

    Returns
    -------
    bytes
        The JSON document
    """
    return dumps(layout.dict(), option=ORJSON_OPTION)


def layout_from_json(document: bytes | str, source: str = "<string>") -> CircuitLayout:
    """Deserialize a layout from JSON.

    Parameters
    ----------
    document: bytes | str
        The JSON document
    source: str
        The origin of the document, used in error messages

    Raises
    ------
    ValidationError
        If the document is no valid JSON or violates the layout invariants

    Returns
    -------
    CircuitLayout
        The layout
    """
    try:
        return CircuitLayout.parse_obj(loads(document))
    except JSONDecodeError as e:
        raise ValidationError(f"The layout in {source} is not valid JSON!\n{e}")
    except PydanticValidationError as e:
        raise ValidationError(f"The layout in {source} is invalid!\n{e}")


async def read_layout(path: Path) -> CircuitLayout:
    """Read a layout from a JSON file.

    Parameters
    ----------
    path: Path
        The path of the file

    Raises
    ------
    ArtifactNotFoundError
        If the file does not exist
    ValidationError
        If the file is no valid layout

    Returns
    -------
    CircuitLayout
        The layout
    """
    if not path.exists():
        raise ArtifactNotFoundError(f"The layout '{path}' does not exist!")
    async with async_open(path, "rb") as input_file:
        return layout_from_json(document=await input_file.read(), source=str(path))


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
    classes = [ArchitectureSpec, CircuitLayout, ComponentCounts]

    if isinstance(output, str):
        output = Path(output)

    if not output.exists():
        raise RuntimeError(f"The output directory {output} must exist!")

    for class_ in classes:
        with open(output / f"{class_.__name__}.json", "w") as f:
            print(class_.schema_json(indent=2), file=f)
