"""Argparser factory for photon-fabric's CLI."""
from __future__ import annotations

from argparse import ArgumentParser, ArgumentTypeError
from pathlib import Path

from photon_fabric.common.enums import ArchitectureKindEnum, DeviceKindEnum, ScaleEnum, SwitchModelEnum
from photon_fabric.config.run import DEVICE_SOURCES


class ArgParseFactory:
    """A factory class to create different types of ArgumentParser instances.

    Attributes
    ----------
    parser: ArgumentParser
        The instance's ArgumentParser instance, which is created with the global arguments
    """

    def __init__(self, description: str = "default") -> None:
        """Initialize an instance of ArgParseFactory.

        Parameters
        ----------
        description: str
            The description string of the resulting self.parser (an ArgumentParser)
        """
        self.parser = ArgumentParser(description=description)
        self.parser.add_argument(
            "-c",
            "--config",
            type=self.string_to_file_path,
            help="configuration file",
        )
        self.parser.add_argument(
            "-d",
            "--debug",
            action="store_true",
            dest="debug_mode",
            help="debug output",
        )
        self.parser.add_argument(
            "-s",
            "--system",
            action="store_true",
            help="system mode",
        )
        self.parser.add_argument(
            "-v",
            "--verbose",
            action="store_true",
            dest="verbose_mode",
            help="verbose output",
        )
        self.parser.add_argument(
            "-j",
            "--jobs",
            type=self.string_to_positive_int,
            help="maximum number of concurrent solves (overrides the configuration)",
        )
        self.parser.add_argument(
            "-o",
            "--output",
            type=Path,
            help="artifact directory (overrides the configuration)",
        )

    @classmethod
    def _add_config_json(cls, parser: ArgumentParser) -> None:
        parser.add_argument(
            "--config-json",
            type=cls.string_to_file_path,
            help="read the run configuration from a JSON file instead of the command line options",
        )

    @classmethod
    def _add_device(cls, parser: ArgumentParser) -> None:
        parser.add_argument("--device", type=DeviceKindEnum, help="the device to design or evaluate")
        parser.add_argument(
            "--scale",
            type=ScaleEnum,
            default=ScaleEnum.DESK,
            help="the device preset (full runs take hours)",
        )

    @classmethod
    def _add_band(cls, parser: ArgumentParser) -> None:
        parser.add_argument("--start", type=float, help="first wavelength (nm)")
        parser.add_argument("--stop", type=float, help="last wavelength (nm)")
        parser.add_argument("--step", type=float, help="wavelength spacing (nm)")

    @classmethod
    def photon_fabric(cls) -> ArgumentParser:
        """Create an ArgumentParser for the photon-fabric script.

        Returns
        -------
        ArgumentParser
            An ArgumentParser instance specific for the photon-fabric script
        """
        instance = cls(description="Inverse design of 2x2 photonic devices and simulation of switch fabrics.")
        subcommands = instance.parser.add_subparsers(dest="subcommand")

        optimize_parser = subcommands.add_parser(name="optimize", help="optimize a device")
        cls._add_device(optimize_parser)
        optimize_parser.add_argument("--seed", type=int, help="seed of the initial noise (mandatory)")
        optimize_parser.add_argument(
            "--iterations",
            type=cls.string_to_positive_int,
            help="iteration budget (defaults to the budget of the scale)",
        )
        optimize_parser.add_argument("--noise", type=float, default=0.0, help="amplitude of the initial noise")
        cls._add_config_json(optimize_parser)

        evaluate_parser = subcommands.add_parser(name="evaluate", help="evaluate the metrics of a design")
        cls._add_device(evaluate_parser)
        evaluate_parser.add_argument("--density", type=cls.string_to_file_path, help="density CSV of the design")
        evaluate_parser.add_argument(
            "--combiner",
            action="store_true",
            help="also inject both inputs with a phase difference of +pi/2 and -pi/2",
        )
        cls._add_config_json(evaluate_parser)

        sweep_parser = subcommands.add_parser(name="sweep", help="sweep the transmission of a design")
        cls._add_device(sweep_parser)
        sweep_parser.add_argument("--density", type=cls.string_to_file_path, help="density CSV of the design")
        cls._add_band(sweep_parser)
        sweep_parser.add_argument("--source", choices=DEVICE_SOURCES, default="top_in", help="the input port")
        cls._add_config_json(sweep_parser)

        circuit_parser = subcommands.add_parser(name="circuit", help="generate an architecture")
        circuit_parser.add_argument("--kind", type=ArchitectureKindEnum, help="the architecture")
        circuit_parser.add_argument("--n", type=cls.string_to_positive_int, help="the number of ports")
        circuit_parser.add_argument("--colors", type=cls.string_to_positive_int, help="the number of colors")
        circuit_parser.add_argument("--palette", type=float, nargs="+", help="the resonances to use (nm)")
        circuit_parser.add_argument(
            "--switch-model",
            type=SwitchModelEnum,
            default=SwitchModelEnum.RESONATOR,
            help="the model of the actuated elements",
        )
        cls._add_config_json(circuit_parser)

        route_parser = subcommands.add_parser(name="route", help="solve and verify switch states")
        route_parser.add_argument("--layout", type=cls.string_to_file_path, help="layout JSON")
        route_parser.add_argument("--request", type=cls.string_to_file_path, help="request JSON (one or a list)")
        cls._add_config_json(route_parser)

        simulate_parser = subcommands.add_parser(name="simulate", help="compute the spectra of a circuit")
        simulate_parser.add_argument("--layout", type=cls.string_to_file_path, help="layout JSON")
        simulate_parser.add_argument("--state", type=cls.string_to_file_path, help="switch state JSON")
        simulate_parser.add_argument("--params", type=cls.string_to_file_path, help="parameter set JSON")
        simulate_parser.add_argument("--parameter-set", help="name of a built-in parameter set")
        simulate_parser.add_argument("--request", type=cls.string_to_file_path, help="request JSON of the state")
        cls._add_band(simulate_parser)
        cls._add_config_json(simulate_parser)

        report_parser = subcommands.add_parser(name="report", help="summarize an artifact directory")
        report_parser.add_argument("dir", type=cls.string_to_dir_path, help="the artifact directory")

        schema_parser = subcommands.add_parser(name="schema", help="JSON schema commands")
        schema_subcommands = schema_parser.add_subparsers(dest="schema")
        export_schemas_parser = schema_subcommands.add_parser(name="export", help="export JSON schema files")
        export_schemas_parser.add_argument(
            "dir",
            type=cls.string_to_dir_path,
            help="the directory to which to write the JSON schema files",
        )

        return instance.parser

    @classmethod
    def string_to_positive_int(cls, input_: str) -> int:
        """Convert an input string into a positive integer.

        Parameters
        ----------
        input_: str
            A string that is used to create an int

        Raises
        ------
        ArgumentTypeError:
            If input_ is no integer or not positive

        Returns
        -------
        int
            The integer
        """
        try:
            value = int(input_)
        except ValueError:
            raise ArgumentTypeError(f"not an integer: '{input_}'") from None
        if value < 1:
            raise ArgumentTypeError(f"not a positive integer: '{input_}'")
        return value

    @classmethod
    def string_to_file_path(cls, input_: str) -> Path:
        """Convert an input string into a Path to a file.

        Parameters
        ----------
        input_: str
            A string that is used to create a Path

        Raises
        ------
        ArgumentTypeError:
            If a Path created from input_ does not exist or is not a file

        Returns
        -------
        Path
            A Path instance created from input_
        """
        path = Path(input_)
        if not path.exists():
            raise ArgumentTypeError(f"the file '{input_}' does not exist")
        if not path.is_file():
            raise ArgumentTypeError(f"not a file: {input_}")
        return path

    @classmethod
    def string_to_dir_path(cls, input_: str) -> Path:
        """Convert an input string into a Path to a directory.

        Parameters
        ----------
        input_: str
            A string that is used to create a Path

        Raises
        ------
        ArgumentTypeError:
            If a Path created from input_ does not exist or is not a directory

        Returns
        -------
        Path
            A Path instance created from input_
        """
        path = Path(input_)
        if not path.exists():
            raise ArgumentTypeError(f"the directory '{input_}' does not exist")
        if not path.is_dir():
            raise ArgumentTypeError(f"not a directory: {input_}")
        return path


def sphinx_photon_fabric() -> ArgumentParser:
    """Return the ArgumentParser of the photon-fabric script for sphinx-argparse."""
    return ArgParseFactory.photon_fabric()
