"""Generators of the switch fabric architectures on the parallel-rail framework.

Actuated elements are grouped in sites: a broadband site is one switch with control id "s{stage}.{rail}", a colored
site is a cascade of wavelength-dedicated switches with control ids "s{stage}.{rail}@{color}", one per color of the
layout's palette. Shuffles between stages are realized as arrays of crossovers that sort the required permutation by
odd-even transpositions.
"""
from __future__ import annotations

from logging import debug

from photon_fabric.common.enums import ActuationEnum, ArchitectureKindEnum, PlacementKindEnum, SwitchModelEnum
from photon_fabric.errors import UnsupportedSize
from photon_fabric.fabric.colors import DEFAULT_PALETTES, check_palette
from photon_fabric.fabric.layout import ArchitectureSpec, CircuitLayout, Column, Placement, Terminator

SIZE_RANGE = range(2, 17)
CLOS_BENES_SIZE = 16
SELECT_SIZE = 8


def site_control(stage: int, rail: int, color: int | None = None) -> str:
    """Return the control id of a site or of one color of a colored site.

    Parameters
    ----------
    stage: int
        The stage of the site
    rail: int
        The lower rail of the site
    color: int | None
        The index of the color for colored sites

    Returns
    -------
    str
        The control id
    """
    return f"s{stage}.{rail}" if color is None else f"s{stage}.{rail}@{color}"


def unshuffle(n_rails: int, block: int) -> list[int]:
    """Return the destinations that send the even rails of every block to its lower and the odd rails to its upper half.

    Parameters
    ----------
    n_rails: int
        The number of rails
    block: int
        The (even) size of the blocks

    Returns
    -------
    list[int]
        The destination rail of every rail
    """
    destinations = []
    for rail in range(n_rails):
        offset, local = divmod(rail, block)
        destinations.append(offset * block + local // 2 + (block // 2 if local % 2 else 0))
    return destinations


def shuffle(n_rails: int, block: int) -> list[int]:
    """Return the inverse of unshuffle.

    Parameters
    ----------
    n_rails: int
        The number of rails
    block: int
        The (even) size of the blocks

    Returns
    -------
    list[int]
        The destination rail of every rail
    """
    inverse = [0] * n_rails
    for rail, destination in enumerate(unshuffle(n_rails, block)):
        inverse[destination] = rail
    return inverse


class LayoutBuilder:
    """A helper to append columns, sites, crossover arrays and terminators to a layout under construction.

    Attributes
    ----------
    n_rails: int
        The number of rails
    columns: list[Column]
        The columns built so far
    terminators: list[Terminator]
        The terminators placed so far
    palette: list[float]
        The colors of colored sites (nm)
    """

    def __init__(self, n_rails: int, palette: list[float] | None = None):
        """Initialize an empty layout of n_rails rails."""
        self.n_rails = n_rails
        self.columns: list[Column] = []
        self.terminators: list[Terminator] = []
        self.palette = palette or []

    def column(self, placements: list[Placement]) -> None:
        """Append a column of placements."""
        self.columns.append(Column(placements=placements))

    def sites(self, stage: int, rails: list[int], colored: bool = False) -> None:
        """Append one stage of sites.

        Parameters
        ----------
        stage: int
            The stage, used in the control ids
        rails: list[int]
            The lower rails of the sites
        colored: bool
            Whether the sites are cascades of wavelength-dedicated switches (one column per color of the palette)
        """
        if not colored:
            self.column(
                [
                    Placement(rail=rail, kind=PlacementKindEnum.SWITCH, control=site_control(stage, rail))
                    for rail in rails
                ]
            )
            return
        for index, color in enumerate(self.palette):
            self.column(
                [
                    Placement(
                        rail=rail,
                        kind=PlacementKindEnum.COLORED_SWITCH,
                        control=site_control(stage, rail, index),
                        color_nm=color,
                    )
                    for rail in rails
                ]
            )

    def crossovers(self, destinations: list[int]) -> int:
        """Append the crossover columns that move the signal on every rail to its destination.

        Parameters
        ----------
        destinations: list[int]
            The destination rail of every rail

        Returns
        -------
        int
            The number of crossovers, which equals the number of inversions of destinations
        """
        order = list(destinations)
        count, parity = 0, 0
        while order != sorted(order):
            swaps = [rail for rail in range(parity, self.n_rails - 1, 2) if order[rail] > order[rail + 1]]
            for rail in swaps:
                order[rail], order[rail + 1] = order[rail + 1], order[rail]
            if swaps:
                self.column([Placement(rail=rail, kind=PlacementKindEnum.CROSSOVER) for rail in swaps])
                count += len(swaps)
            parity ^= 1
        return count

    def permutation(self, destinations: list[int]) -> None:
        """Append a permutation block."""
        self.columns.append(Column(permutation=destinations))

    def terminate(self, rail: int, column: int | None = None) -> None:
        """Place a terminator.

        Parameters
        ----------
        rail: int
            The rail
        column: int | None
            The column in front of which to absorb, None for the next column to be appended
        """
        self.terminators.append(Terminator(rail=rail, column=len(self.columns) if column is None else column))

    def build(
        self,
        kind: ArchitectureKindEnum,
        inputs: list[int],
        outputs: list[list[int]],
        ambient: ActuationEnum,
    ) -> CircuitLayout:
        """Return the layout built so far."""
        return CircuitLayout(
            kind=kind,
            n_rails=self.n_rails,
            columns=self.columns,
            terminators=self.terminators,
            inputs=inputs,
            outputs=outputs,
            palette=self.palette,
            ambient=ambient,
        )


def _identity_ports(n_rails: int) -> tuple[list[int], list[list[int]]]:
    return list(range(n_rails)), [[rail] for rail in range(n_rails)]


def pair_rails(n_rails: int, parity: int = 0, offset: int = 0) -> list[int]:
    """Return the lower rails of adjacent pairs of a given parity.

    Parameters
    ----------
    n_rails: int
        The number of rails of the block
    parity: int
        0 for pairs (0, 1), (2, 3), ... and 1 for pairs (1, 2), (3, 4), ...
    offset: int
        The first rail of the block

    Returns
    -------
    list[int]
        The lower rails
    """
    return [offset + rail for rail in range(parity, n_rails - 1, 2)]


def generate_crosspoint(n: int, ambient: ActuationEnum) -> CircuitLayout:
    """Generate an N x N crosspoint matrix on 2N rails.

    Inputs enter on rails 0..N-1 and output lines start on rails N..2N-1. Every input passes every output line in a
    diamond of N^2 switches; with all switches in cross state the inputs leave on rails N..2N-1 and the output lines
    on rails 0..N-1. A switch in bar state hands its input over to its output line.

    Parameters
    ----------
    n: int
        The number of ports
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with controls "x{input}.{output}"
    """
    builder = LayoutBuilder(n_rails=2 * n)
    labels: list[tuple[str, int]] = [("A", index) for index in range(n)] + [("B", index) for index in range(n)]
    step = 0
    while any(labels[rail][0] == "A" for rail in range(n)):
        placements = []
        for rail in range((n - 1 + step) % 2, 2 * n - 1, 2):
            if labels[rail][0] == "A" and labels[rail + 1][0] == "B":
                placements.append(
                    Placement(
                        rail=rail,
                        kind=PlacementKindEnum.SWITCH,
                        control=f"x{labels[rail][1]}.{labels[rail + 1][1]}",
                    )
                )
                labels[rail], labels[rail + 1] = labels[rail + 1], labels[rail]
        if placements:
            builder.column(placements)
        step += 1
    return builder.build(
        kind=ArchitectureKindEnum.CROSSPOINT,
        inputs=list(range(n)),
        outputs=[[rail] for rail in range(n)],
        ambient=ambient,
    )


def generate_spanke_benes(n: int, ambient: ActuationEnum) -> CircuitLayout:
    """Generate a planar N x N network of N(N-1)/2 switches in N columns of alternating pair parity.

    Parameters
    ----------
    n: int
        The number of ports
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout
    """
    builder = LayoutBuilder(n_rails=n)
    for stage in range(n):
        rails = pair_rails(n, parity=stage % 2)
        if rails:
            builder.sites(stage=stage, rails=rails)
    inputs, outputs = _identity_ports(n)
    return builder.build(kind=ArchitectureKindEnum.SPANKE_BENES, inputs=inputs, outputs=outputs, ambient=ambient)


def piloss_inputs(n: int) -> list[int]:
    """Return the input rails of an N x N path-independent-loss matrix.

    Parameters
    ----------
    n: int
        The number of ports

    Returns
    -------
    list[int]
        The first n rails of the sequence 0, 1, 4, 5, 8, 9, ...
    """
    return [4 * (index // 2) + index % 2 for index in range(n)]


def generate_piloss(n: int, ambient: ActuationEnum) -> CircuitLayout:
    """Generate an N x N path-independent-loss matrix on 2N rails.

    N switch columns on the pairs (2k, 2k + 1) alternate with N - 1 crossover columns on the pairs (2k + 1, 2k + 2).
    Every path passes one switch per switch column. The outer rails carry no crossovers, so the number of crossovers a
    path passes depends on how often it is routed onto them.

    Parameters
    ----------
    n: int
        The number of ports
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with N^2 switches and (N - 1)^2 crossovers
    """
    builder = LayoutBuilder(n_rails=2 * n)
    positions = piloss_inputs(n)
    for stage in range(n):
        builder.sites(stage=stage, rails=pair_rails(2 * n))
        if stage < n - 1:
            crossing = pair_rails(2 * n, parity=1)
            builder.column([Placement(rail=rail, kind=PlacementKindEnum.CROSSOVER) for rail in crossing])
            positions = [
                rail + 1 if rail in crossing else rail - 1 if rail - 1 in crossing else rail for rail in positions
            ]
    return builder.build(
        kind=ArchitectureKindEnum.PILOSS,
        inputs=piloss_inputs(n),
        outputs=[[rail] for rail in sorted(positions)],
        ambient=ambient,
    )


def generate_clos_benes_16(ambient: ActuationEnum) -> CircuitLayout:
    """Generate a 16 x 16 network of five switch stages of eight switches.

    The outer stages split the traffic onto two 8 x 8 halves, each a three stage baseline network. All shuffles are
    triangular crossover arrays.

    Parameters
    ----------
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with 40 switches
    """
    size = CLOS_BENES_SIZE
    builder = LayoutBuilder(n_rails=size)
    pairs = pair_rails(size)
    builder.sites(stage=0, rails=pairs)
    builder.crossovers(unshuffle(size, size))
    builder.sites(stage=1, rails=pairs)
    builder.crossovers(unshuffle(size, size // 2))
    builder.sites(stage=2, rails=pairs)
    builder.crossovers(unshuffle(size, size // 4))
    builder.sites(stage=3, rails=pairs)
    builder.crossovers(shuffle(size, size))
    builder.sites(stage=4, rails=pairs)
    inputs, outputs = _identity_ports(size)
    return builder.build(kind=ArchitectureKindEnum.CLOS_BENES_16, inputs=inputs, outputs=outputs, ambient=ambient)


def generate_select_8to1(ambient: ActuationEnum) -> CircuitLayout:
    """Generate an 8 x 1 selector.

    A chain of seven switches carries the selected input down to rail 0, discarding one rail into a terminator after
    every switch. A gate switch on rails 0 and 1 blocks the output when crossed.

    Parameters
    ----------
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with controls "s{k}.{6-k}" and "gate"
    """
    builder = LayoutBuilder(n_rails=SELECT_SIZE)
    for stage in range(SELECT_SIZE - 1):
        builder.sites(stage=stage, rails=[SELECT_SIZE - 2 - stage])
        builder.terminate(rail=SELECT_SIZE - 1 - stage)
    builder.column([Placement(rail=0, kind=PlacementKindEnum.SWITCH, control="gate")])
    return builder.build(
        kind=ArchitectureKindEnum.SELECT_8TO1,
        inputs=list(range(SELECT_SIZE)),
        outputs=[[0]],
        ambient=ambient,
    )


def generate_select_1to8(ambient: ActuationEnum) -> CircuitLayout:
    """Generate a 1 x 8 distributor.

    A gate switch on rails 0 and 1 blocks the input when crossed; a chain of seven switches lifts the input to its
    output rail. Terminators absorb light on every rail in front of the switch that lifts the input onto it.

    Parameters
    ----------
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with controls "gate" and "s{j}.{j-1}"
    """
    builder = LayoutBuilder(n_rails=SELECT_SIZE)
    builder.column([Placement(rail=0, kind=PlacementKindEnum.SWITCH, control="gate")])
    for stage in range(1, SELECT_SIZE):
        builder.terminate(rail=stage)
        builder.sites(stage=stage, rails=[stage - 1])
    return builder.build(
        kind=ArchitectureKindEnum.SELECT_1TO8,
        inputs=[0],
        outputs=[[rail] for rail in range(SELECT_SIZE)],
        ambient=ambient,
    )


def _demux_columns(palette: list[float]) -> list[Column]:
    columns = []
    last = len(palette) - 1
    for index, color in enumerate(palette[:last]):
        columns.append(Column(placements=[Placement(rail=index, kind=PlacementKindEnum.ADD_DROP, color_nm=color)]))
        columns.append(Column(placements=[Placement(rail=index, kind=PlacementKindEnum.CROSSOVER)]))
    columns.append(Column(placements=[Placement(rail=last, kind=PlacementKindEnum.ADD_DROP, color_nm=palette[last])]))
    return columns


def generate_demux8(palette: list[float], ambient: ActuationEnum) -> CircuitLayout:
    """Generate an eight color demultiplexer on nine rails.

    The bus enters on rail 0. Add-drop k on rails (k, k + 1) drops color k onto rail k + 1, and the crossover behind
    it swaps the dropped color back to rail k while lifting the bus to rail k + 1. The last color is dropped onto rail
    8.

    Parameters
    ----------
    palette: list[float]
        The eight colors (nm)
    ambient: ActuationEnum
        The ambient state of the switches (the layout has none)

    Returns
    -------
    CircuitLayout
        The layout with 8 add-drops and 7 crossovers; output k carries color k
    """
    builder = LayoutBuilder(n_rails=len(palette) + 1, palette=palette)
    builder.columns.extend(_demux_columns(palette))
    return builder.build(
        kind=ArchitectureKindEnum.DEMUX8,
        inputs=[0],
        outputs=[[rail] for rail in range(len(palette) - 1)] + [[len(palette)]],
        ambient=ambient,
    )


def generate_mux8(palette: list[float], ambient: ActuationEnum) -> CircuitLayout:
    """Generate an eight color multiplexer, the demultiplexer with its columns in reverse order.

    Parameters
    ----------
    palette: list[float]
        The eight colors (nm)
    ambient: ActuationEnum
        The ambient state of the switches (the layout has none)

    Returns
    -------
    CircuitLayout
        The layout; input k carries color k, the bus leaves on rail 0
    """
    builder = LayoutBuilder(n_rails=len(palette) + 1, palette=palette)
    builder.columns.extend(reversed(_demux_columns(palette)))
    return builder.build(
        kind=ArchitectureKindEnum.MUX8,
        inputs=list(range(len(palette) - 1)) + [len(palette)],
        outputs=[[0]],
        ambient=ambient,
    )


def generate_multicrossbar(palette: list[float], ambient: ActuationEnum) -> CircuitLayout:
    """Generate a cascade of wavelength-dedicated 2 x 2 switches on two rails, one per color.

    Parameters
    ----------
    palette: list[float]
        The colors (nm)
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with one colored site "s0.0"
    """
    builder = LayoutBuilder(n_rails=2, palette=palette)
    builder.sites(stage=0, rails=[0], colored=True)
    inputs, outputs = _identity_ports(2)
    return builder.build(kind=ArchitectureKindEnum.MULTICROSSBAR, inputs=inputs, outputs=outputs, ambient=ambient)


def generate_wss_6x6(palette: list[float], ambient: ActuationEnum) -> CircuitLayout:
    """Generate a 6 x 6 wavelength-selective switch of twelve colored sites.

    The inputs are interleaved, so that every first stage site pairs input i with input i + 3. The first stage splits
    onto two halves, each a planar 3 x 3 network of three sites, which a last stage of three sites recombines.

    Parameters
    ----------
    palette: list[float]
        The colors (nm)
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with 12 sites per color and 9 crossovers
    """
    size = 6
    builder = LayoutBuilder(n_rails=size, palette=palette)
    builder.crossovers(shuffle(size, size))
    builder.sites(stage=0, rails=pair_rails(size), colored=True)
    builder.crossovers(unshuffle(size, size))
    for step in range(3):
        rails = pair_rails(size // 2, parity=step % 2) + pair_rails(size // 2, parity=step % 2, offset=size // 2)
        builder.sites(stage=1 + step, rails=rails, colored=True)
    builder.crossovers(shuffle(size, size))
    builder.sites(stage=4, rails=pair_rails(size), colored=True)
    inputs, outputs = _identity_ports(size)
    return builder.build(kind=ArchitectureKindEnum.WSS_6X6X4, inputs=inputs, outputs=outputs, ambient=ambient)


def generate_wss_8x8(palette: list[float], ambient: ActuationEnum) -> CircuitLayout:
    """Generate an 8 x 8 wavelength-selective switch as a Benes network of colored sites.

    Parameters
    ----------
    palette: list[float]
        The colors (nm)
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with 20 sites per color and 16 crossovers
    """
    size = 8
    builder = LayoutBuilder(n_rails=size, palette=palette)
    pairs = pair_rails(size)
    builder.sites(stage=0, rails=pairs, colored=True)
    builder.crossovers(unshuffle(size, size))
    builder.sites(stage=1, rails=pairs, colored=True)
    builder.crossovers(unshuffle(size, size // 2))
    builder.sites(stage=2, rails=pairs, colored=True)
    builder.crossovers(shuffle(size, size // 2))
    builder.sites(stage=3, rails=pairs, colored=True)
    builder.crossovers(shuffle(size, size))
    builder.sites(stage=4, rails=pairs, colored=True)
    inputs, outputs = _identity_ports(size)
    return builder.build(kind=ArchitectureKindEnum.WSS_8X8X3, inputs=inputs, outputs=outputs, ambient=ambient)


def wcc_slot_rail(port: int, color: int) -> int:
    """Return the rail carrying a color of an input port after the permutation block of the cross-connect.

    Parameters
    ----------
    port: int
        The input port
    color: int
        The index of the color

    Returns
    -------
    int
        The rail 4 * color + port
    """
    return 4 * color + port


def generate_wcc_4x4(palette: list[float], ambient: ActuationEnum) -> CircuitLayout:
    """Generate a 4 x 4 wavelength cross-connect of the switch-and-select kind.

    Every input enters on the second rail of its group of four and is split into its colors by four passive
    add-drops. One abstract permutation block gathers color c of input i on rail 4c + i. Every color then passes a
    planar 4 x 4 switch stage and a planar 4 x 4 select stage of broadband switches. Output o collects rail 4c + o of
    every color c.

    Parameters
    ----------
    palette: list[float]
        The colors (nm)
    ambient: ActuationEnum
        The ambient state of the switches

    Returns
    -------
    CircuitLayout
        The layout with 48 switches, 16 add-drops and one permutation block
    """
    ports = 4
    builder = LayoutBuilder(n_rails=ports * len(palette), palette=palette)
    top, upper, lower = palette[3], palette[2], palette[0]
    groups = range(ports)
    builder.column([Placement(rail=4 * group + 1, kind=PlacementKindEnum.ADD_DROP, color_nm=top) for group in groups])
    builder.column(
        [
            Placement(rail=4 * group + offset, kind=PlacementKindEnum.ADD_DROP, color_nm=color)
            for group in groups
            for offset, color in ((0, lower), (2, top))
        ]
    )
    builder.column([Placement(rail=4 * group + 1, kind=PlacementKindEnum.ADD_DROP, color_nm=upper) for group in groups])
    destinations = [0] * builder.n_rails
    for port in groups:
        for color in range(len(palette)):
            destinations[4 * port + color] = wcc_slot_rail(port, color)
    builder.permutation(destinations)
    for stage in range(2 * ports):
        builder.sites(
            stage=stage,
            rails=[rail for color in range(len(palette)) for rail in pair_rails(ports, stage % 2, offset=4 * color)],
        )
    return builder.build(
        kind=ArchitectureKindEnum.WCC_4X4X4,
        inputs=[4 * port + 1 for port in groups],
        outputs=[[wcc_slot_rail(port, color) for color in range(len(palette))] for port in groups],
        ambient=ambient,
    )


def _fixed(spec: ArchitectureSpec, n: int, colors: int | None = None) -> None:
    if spec.n not in (None, n) or spec.colors not in (None, colors):
        raise UnsupportedSize(
            f"The {spec.kind.value} architecture exists for {n} ports"
            + (f" and {colors} colors" if colors is not None else "")
            + f" only, not for n={spec.n} and colors={spec.colors}!"
        )


def _palette(spec: ArchitectureSpec, required: int) -> list[float]:
    return check_palette(spec.palette if spec.palette is not None else DEFAULT_PALETTES[spec.kind], required)


def generate(spec: ArchitectureSpec) -> CircuitLayout:
    """Generate the layout of an architecture.

    Parameters
    ----------
    spec: ArchitectureSpec
        The architecture and its size

    Raises
    ------
    UnsupportedSize
        If the size parameters lie outside of the domain of the architecture
    PaletteTooSmall
        If the palette can not provide the distinct colors the architecture requires

    Returns
    -------
    CircuitLayout
        The layout
    """
    ambient = ActuationEnum.CROSS if spec.switch_model == SwitchModelEnum.RESONATOR else ActuationEnum.BAR
    n = spec.n or SELECT_SIZE
    match spec.kind:
        case ArchitectureKindEnum.CROSSPOINT | ArchitectureKindEnum.SPANKE_BENES | ArchitectureKindEnum.PILOSS:
            if n not in SIZE_RANGE or spec.colors is not None:
                raise UnsupportedSize(
                    f"The {spec.kind.value} architecture supports {SIZE_RANGE.start} to {SIZE_RANGE.stop - 1} ports "
                    f"without colors, not n={n} and colors={spec.colors}!"
                )
            generator = {
                ArchitectureKindEnum.CROSSPOINT: generate_crosspoint,
                ArchitectureKindEnum.SPANKE_BENES: generate_spanke_benes,
                ArchitectureKindEnum.PILOSS: generate_piloss,
            }[spec.kind]
            layout = generator(n=n, ambient=ambient)
        case ArchitectureKindEnum.CLOS_BENES_16:
            _fixed(spec, CLOS_BENES_SIZE)
            layout = generate_clos_benes_16(ambient=ambient)
        case ArchitectureKindEnum.SELECT_8TO1:
            _fixed(spec, SELECT_SIZE)
            layout = generate_select_8to1(ambient=ambient)
        case ArchitectureKindEnum.SELECT_1TO8:
            _fixed(spec, SELECT_SIZE)
            layout = generate_select_1to8(ambient=ambient)
        case ArchitectureKindEnum.MUX8:
            _fixed(spec, SELECT_SIZE, SELECT_SIZE)
            layout = generate_mux8(palette=_palette(spec, SELECT_SIZE), ambient=ambient)
        case ArchitectureKindEnum.DEMUX8:
            _fixed(spec, SELECT_SIZE, SELECT_SIZE)
            layout = generate_demux8(palette=_palette(spec, SELECT_SIZE), ambient=ambient)
        case ArchitectureKindEnum.MULTICROSSBAR:
            if spec.n not in (None, 2):
                raise UnsupportedSize(f"The multicrossbar architecture has 2 ports, not {spec.n}!")
            layout = generate_multicrossbar(palette=_palette(spec, spec.colors or 3), ambient=ambient)
        case ArchitectureKindEnum.WSS_6X6X4:
            _fixed(spec, 6, 4)
            layout = generate_wss_6x6(palette=_palette(spec, 4), ambient=ambient)
        case ArchitectureKindEnum.WSS_8X8X3:
            _fixed(spec, 8, 3)
            layout = generate_wss_8x8(palette=_palette(spec, 3), ambient=ambient)
        case ArchitectureKindEnum.WCC_4X4X4:
            _fixed(spec, 4, 4)
            layout = generate_wcc_4x4(palette=_palette(spec, 4), ambient=ambient)
    debug(f"Generated {spec.kind.value} with {len(layout.columns)} columns on {layout.n_rails} rails")
    return layout
