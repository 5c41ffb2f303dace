"""Functions for handling photon-fabric's CLI."""
import asyncio
from argparse import Namespace
from io import StringIO
from logging import DEBUG, INFO, WARNING, StreamHandler, debug, getLogger, info, warning
from math import pi
from pathlib import Path
from sys import stdout
from typing import Any
from unittest.mock import patch

from pydantic import ValidationError as PydanticValidationError

from photon_fabric import export_schemas
from photon_fabric.action.check import RouteVerifiedCheck, UnitaryCheck
from photon_fabric.action.workflow import Artifacts, exit_on_error, write_artifacts
from photon_fabric.cli import argparse
from photon_fabric.common.enums import ActionStateEnum, DeviceKindEnum, ExitCodeEnum, ScaleEnum
from photon_fabric.config import SystemSettings, UserSettings
from photon_fabric.config.defaults import DESK_ITERATIONS, FULL_ITERATIONS
from photon_fabric.config.run import (
    CircuitConfig,
    ConfigT,
    EvaluateConfig,
    OptimizeConfig,
    RouteConfig,
    SimulateConfig,
    SweepConfig,
    run_config_from_json,
)
from photon_fabric.config.settings import Settings, create_and_validate_directory
from photon_fabric.devices import (
    DeviceGeometry,
    DeviceLayout,
    combiner_response,
    evaluate_device,
    find_resonances,
    layout_device,
    make_problem,
    preset,
    spectra_to_csv,
    sweep_device,
)
from photon_fabric.em.solver import SolveOptions
from photon_fabric.errors import ArtifactError, NumericalError, Unroutable, ValidationError
from photon_fabric.fabric.colors import at_color
from photon_fabric.fabric.generators import generate
from photon_fabric.fabric.layout import CircuitLayout, count_components, read_layout
from photon_fabric.netsim.circuit import PathMetrics, circuit_response, intended_rails, path_metrics
from photon_fabric.netsim.io import path_metrics_to_csv, read_parameter_set, response_to_csv
from photon_fabric.netsim.models import parameter_set
from photon_fabric.report import collect_report, render_report
from photon_fabric.routing.io import Request, read_requests, read_state, verification_to_csv
from photon_fabric.routing.models import Permutation, RouteRecord, SwitchState
from photon_fabric.routing.solvers import solve_state, verify
from photon_fabric.routing.trace import Tracer
from photon_fabric.topopt.density import DensityField, init_density
from photon_fabric.topopt.io import density_to_csv, density_to_png, history_to_csv, read_density
from photon_fabric.topopt.optimizer import Schedule, optimize
from photon_fabric.topopt.problem import ProblemSummary


def run_config(model: type[ConfigT], args: Namespace, **options: Any) -> ConfigT:
    """Create the configuration of a command from a JSON file or from command line options.

    Parameters
    ----------
    model: type[ConfigT]
        The configuration model of the command
    args: Namespace
        The parsed arguments, of which config_json takes precedence over options
    options: Any
        The fields of the configuration taken from the command line, unset ones (None) are left to their defaults

    Raises
    ------
    ValidationError
        If the configuration violates its schema

    Returns
    -------
    ConfigT
        The configuration
    """
    if getattr(args, "config_json", None) is not None:
        config = run_config_from_json(model=model, document=args.config_json.read_bytes(), source=str(args.config_json))
    else:
        try:
            config = model(**{name: value for name, value in options.items() if value is not None})
        except PydanticValidationError as e:
            raise ValidationError(f"The options of the command are invalid!\n{e}")
    debug(f"{model.__name__}: {config}")
    return config


def _band(args: Namespace) -> dict[str, float] | None:
    if args.start is None or args.stop is None or args.step is None:
        return None
    return {"start": args.start, "stop": args.stop, "step": args.step}


def _output_dir(args: Namespace, settings: Settings) -> Path:
    directory: Path = (args.output or settings.output_dir).absolute()
    try:
        create_and_validate_directory(directory=directory)
    except ValueError as e:
        raise ValidationError(str(e))
    return directory


def _solve_options(args: Namespace, settings: Settings) -> SolveOptions:
    return SolveOptions(jobs=args.jobs or settings.jobs, cache_dir=settings.cache_dir)


def _geometry(scale: ScaleEnum, settings: Settings) -> DeviceGeometry:
    return preset(scale).copy(update=settings.solver.dict())


async def _read_design(path: Path, layout: DeviceLayout) -> DensityField:
    density = await read_density(path=path, pixel_pitch=layout.geometry.pixel_pitch, origin=layout.design_origin)
    if density.rho.shape != layout.design_shape:
        raise ValidationError(
            f"The design in {path} has {density.rho.shape} pixels, but the region has {layout.design_shape}!"
        )
    return density


def photon_fabric_optimize(args: Namespace, settings: Settings) -> None:
    """Optimize a device and write its densities, history and metrics.

    Parameters
    ----------
    args: Namespace
        The options of the optimize command
    settings: Settings
        The settings providing the optimizer, solver and output defaults
    """
    config = run_config(
        OptimizeConfig,
        args,
        device=args.device,
        scale=args.scale,
        seed=args.seed,
        iterations=args.iterations,
        noise=args.noise,
    )
    problem = make_problem(kind=config.device, geometry=_geometry(config.scale, settings))
    schedule = Schedule(
        iterations=config.iterations or (FULL_ITERATIONS if config.scale == ScaleEnum.FULL else DESK_ITERATIONS),
        betas=settings.optimizer.betas,
        radius=settings.optimizer.filter_radius_nm,
        eta=settings.optimizer.eta,
        step=settings.optimizer.step,
        log_every=settings.optimizer.log_every,
    )
    init = init_density(
        shape=problem.design_shape,
        pixel_pitch=problem.pixel_pitch,
        origin=problem.design_origin,
        noise=config.noise,
        seed=config.seed,
    )
    options = _solve_options(args, settings)
    final, history = optimize(problem=problem, init=init, schedule=schedule, options=options)
    metrics = evaluate_device(rho=final, problem=problem, options=options)

    header = config.header(schedule=schedule.dict(), solver=settings.solver.dict())
    summary = ProblemSummary.from_problem(problem)
    paths = write_artifacts(
        directory=_output_dir(args, settings),
        artifacts=Artifacts(
            documents={
                "metrics.json": {
                    "problem": summary.dict(),
                    "metrics": [entry.dict() for entry in metrics],
                    "final_objective": history.final_objective,
                    "final_powers": history.final_powers,
                },
            },
            tables={
                "density.csv": density_to_csv(density=final, header=header),
                "history.csv": history_to_csv(history=history, port_names=summary.targets, header=header),
            },
            rasters={"density.png": density_to_png(density=final)},
        ),
        header=header,
    )
    info(f"Wrote {[str(path) for path in paths]}")


def photon_fabric_evaluate(args: Namespace, settings: Settings) -> None:
    """Evaluate the metrics of a design.

    Parameters
    ----------
    args: Namespace
        The options of the evaluate command
    settings: Settings
        The settings providing the solver and output defaults
    """
    config = run_config(
        EvaluateConfig,
        args,
        device=args.device,
        scale=args.scale,
        density=args.density,
        combiner=args.combiner,
    )
    geometry = _geometry(config.scale, settings)
    problem = make_problem(kind=config.device, geometry=geometry)
    layout = layout_device(geometry)
    rho = asyncio.run(_read_design(path=config.density, layout=layout))
    options = _solve_options(args, settings)

    document: dict[str, Any] = {
        "problem": ProblemSummary.from_problem(problem).dict(),
        "metrics": [entry.dict() for entry in evaluate_device(rho=rho, problem=problem, options=options)],
    }
    if config.combiner:
        document["combiner"] = {
            name: combiner_response(rho=rho, layout=layout, phase=phase, options=options)
            for name, phase in (("plus", pi / 2), ("minus", -pi / 2))
        }

    header = config.header(solver=settings.solver.dict())
    write_artifacts(
        directory=_output_dir(args, settings),
        artifacts=Artifacts(documents={"metrics.json": document}),
        header=header,
    )


def photon_fabric_sweep(args: Namespace, settings: Settings) -> None:
    """Sweep the transmission of a design and fit the resonances of resonators.

    Parameters
    ----------
    args: Namespace
        The options of the sweep command
    settings: Settings
        The settings providing the solver and output defaults
    """
    config = run_config(
        SweepConfig,
        args,
        device=args.device,
        scale=args.scale,
        density=args.density,
        band=_band(args),
        source=args.source,
    )
    layout = layout_device(_geometry(config.scale, settings))
    rho = asyncio.run(_read_design(path=config.density, layout=layout))
    spectra = sweep_device(
        rho=rho,
        layout=layout,
        band=config.band,
        source=config.source,
        options=_solve_options(args, settings),
    )
    resonances = (
        find_resonances(wavelengths_nm=spectra.wavelengths_nm, spectrum=spectra.drop)
        if config.device == DeviceKindEnum.RESONATOR
        else []
    )

    header = config.header(solver=settings.solver.dict())
    write_artifacts(
        directory=_output_dir(args, settings),
        artifacts=Artifacts(
            documents={"resonances.json": {"resonances": [fit.dict() for fit in resonances]}},
            tables={"spectra.csv": spectra_to_csv(spectra=spectra, header=header)},
        ),
        header=header,
    )


def photon_fabric_circuit(args: Namespace, settings: Settings) -> None:
    """Generate an architecture and write its layout and component counts.

    Parameters
    ----------
    args: Namespace
        The options of the circuit command
    settings: Settings
        The settings providing the output default
    """
    config = run_config(
        CircuitConfig,
        args,
        architecture={
            "kind": args.kind,
            "n": args.n,
            "colors": args.colors,
            "palette": args.palette,
            "switch_model": args.switch_model,
        },
    )
    layout = generate(config.architecture)
    counts = count_components(layout)
    info(f"Generated {config.architecture.kind.value}: {counts}")

    write_artifacts(
        directory=_output_dir(args, settings),
        artifacts=Artifacts(
            documents={"layout.json": layout, "counts.json": counts.dict() | {"passive": counts.passive}},
        ),
        header=config.header(),
    )


def photon_fabric_route(args: Namespace, settings: Settings) -> None:
    """Solve and verify the switch states of one or several requests.

    The states of all routable requests and the verification table are written before the command fails on an
    unroutable request.

    Parameters
    ----------
    args: Namespace
        The options of the route command
    settings: Settings
        The settings providing the output default
    """
    config = run_config(RouteConfig, args, layout=args.layout, request=args.request)
    layout = asyncio.run(read_layout(config.layout))
    requests = asyncio.run(read_requests(config.request))

    states: dict[str, SwitchState] = {}
    records: list[RouteRecord] = []
    for request_id, request in enumerate(requests):
        try:
            state = solve_state(layout=layout, request=request)
        except Unroutable as e:
            warning(f"Request {request_id}: {e}")
            records.append(RouteRecord(request_id=request_id, verified=False, non_ambient=0, crosses=0))
            continue
        states["state.json" if len(requests) == 1 else f"state-{request_id}.json"] = state
        records.append(verify(layout=layout, state=state, request=request, request_id=request_id))

    header = config.header()
    write_artifacts(
        directory=_output_dir(args, settings),
        artifacts=Artifacts(
            documents=states,
            tables={"verification.csv": verification_to_csv(records=records, header=header)},
        ),
        header=header,
    )
    if RouteVerifiedCheck(records=records)() != ActionStateEnum.SUCCESS:
        failed = [record.request_id for record in records if not record.verified]
        exit_on_error(message=f"The requests {failed} can not be routed!", code=ExitCodeEnum.UNROUTABLE)


def _intended(
    layout: CircuitLayout,
    tracer: Tracer,
    state: SwitchState,
    request: Request | None,
    wavelength_nm: float,
) -> dict[int, int]:
    color_nm = wavelength_nm if layout.palette else None
    if request is None:
        return {
            layout.inputs[path.input]: path.rail for path in tracer.paths(state, color_nm) if path.rail is not None
        }
    if isinstance(request, Permutation):
        return intended_rails(layout=layout, request=request)
    for color in request.colors():
        if at_color(color, wavelength_nm):
            return intended_rails(layout=layout, request=request, color_nm=color)
    return {}


def photon_fabric_simulate(args: Namespace, settings: Settings) -> None:
    """Compute the responses of a circuit in a state and reduce them to per-path metrics.

    Parameters
    ----------
    args: Namespace
        The options of the simulate command
    settings: Settings
        The settings providing the parameter set, concurrency and output defaults
    """
    config = run_config(
        SimulateConfig,
        args,
        layout=args.layout,
        state=args.state,
        params=args.params,
        parameter_set=args.parameter_set,
        band=_band(args),
        request=args.request,
    )
    layout = asyncio.run(read_layout(config.layout))
    state = asyncio.run(read_state(config.state))
    params = (
        asyncio.run(read_parameter_set(config.params))
        if config.params is not None
        else parameter_set(config.parameter_set or settings.parameter_set)
    )
    request: Request | None = None
    if config.request is not None:
        requests = asyncio.run(read_requests(config.request))
        if len(requests) != 1:
            raise ValidationError(f"The request file {config.request} must hold exactly one request to simulate!")
        request = requests[0]

    responses = circuit_response(
        layout=layout,
        state=state,
        wavelengths=config.band.meters(),
        params=params,
        jobs=args.jobs or settings.jobs,
    )
    if not layout.terminators and UnitaryCheck(responses=responses)() != ActionStateEnum.SUCCESS:
        info(f"The responses with the parameter set '{params.name}' are lossy")

    tracer = Tracer(layout)
    output_rails = [rail for group in layout.outputs for rail in group]
    metrics: list[PathMetrics] = []
    for response, wavelength_nm in zip(responses, config.band.nm()):
        intended = _intended(layout=layout, tracer=tracer, state=state, request=request, wavelength_nm=wavelength_nm)
        metrics += path_metrics(response=response, intended=intended, output_rails=output_rails)

    header = config.header(parameter_set=params.dict())
    write_artifacts(
        directory=_output_dir(args, settings),
        artifacts=Artifacts(
            tables={
                "response.csv": response_to_csv(responses=responses, header=header),
                "path_metrics.csv": path_metrics_to_csv(metrics=metrics, header=header),
            },
        ),
        header=header,
    )


def photon_fabric_report(args: Namespace) -> None:
    """Print a Markdown summary of an artifact directory.

    Parameters
    ----------
    args: Namespace
        The options of the report command
    """
    report = asyncio.run(collect_report(directory=args.dir))
    output = StringIO()
    asyncio.run(render_report(report=report, output=output))
    print(output.getvalue(), end="")


def photon_fabric_schema(args: Namespace) -> None:
    """Handle JSON schema related actions.

    Parameters
    ----------
    args: Namespace
        The options used for the JSON schema related actions
    """
    match args.schema:
        case "export":
            export_schemas(output=args.dir)
        case _:
            exit_on_error(
                message="No subcommand provided to the 'schema' command!\n",
                argparser=argparse.ArgParseFactory.photon_fabric(),
            )


def photon_fabric() -> None:
    """Delegate calls to photon-fabric to underlying functions.

    Invalid configurations and inputs exit with ExitCodeEnum.CONFIG, numerical failures with ExitCodeEnum.NUMERICAL
    and unroutable requests with ExitCodeEnum.UNROUTABLE.
    """
    args = argparse.ArgParseFactory.photon_fabric().parse_args()

    loglevel = WARNING

    if args.verbose_mode:
        loglevel = INFO
    if args.debug_mode:
        loglevel = DEBUG

    logger = getLogger()
    logger.setLevel(loglevel)
    ch = StreamHandler(stream=stdout)
    ch.setLevel(loglevel)
    logger.addHandler(ch)
    debug(f"ArgumentParser: {args}")

    try:
        with patch("photon_fabric.config.settings.CUSTOM_CONFIG", args.config):
            settings = SystemSettings() if args.system else UserSettings()
    except PydanticValidationError as e:
        exit_on_error(message=f"The configuration is invalid!\n{e}")
    debug(f"Settings: {settings}")

    try:
        match args.subcommand:
            case "optimize":
                photon_fabric_optimize(args=args, settings=settings)
            case "evaluate":
                photon_fabric_evaluate(args=args, settings=settings)
            case "sweep":
                photon_fabric_sweep(args=args, settings=settings)
            case "circuit":
                photon_fabric_circuit(args=args, settings=settings)
            case "route":
                photon_fabric_route(args=args, settings=settings)
            case "simulate":
                photon_fabric_simulate(args=args, settings=settings)
            case "report":
                photon_fabric_report(args=args)
            case "schema":
                photon_fabric_schema(args=args)
            case _:
                exit_on_error(
                    message="No subcommand specified!\n",
                    argparser=argparse.ArgParseFactory.photon_fabric(),
                )
    except (ValidationError, ArtifactError) as e:
        exit_on_error(message=str(e), code=ExitCodeEnum.CONFIG)
    except NumericalError as e:
        exit_on_error(message=str(e), code=ExitCodeEnum.NUMERICAL)
    except Unroutable as e:
        exit_on_error(message=str(e), code=ExitCodeEnum.UNROUTABLE)
