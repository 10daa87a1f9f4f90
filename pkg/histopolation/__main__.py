import argparse
import logging
import os
import sys
from collections.abc import Sequence
from datetime import datetime
from logging.handlers import RotatingFileHandler

from histopolation.config.app import AppConfig, AppConfigFactory
from histopolation.data.json_source import JsonSource
from histopolation.errors import NumericFailureError, UnsupportedConstructionError, ValidationError
from histopolation.experiments.functions import FunctionName
from histopolation.experiments.imaging import PHANTOM_SIZE, UpscaleMode
from histopolation.helpers.logs import log_time
from histopolation.helpers.string import parse_dims, parse_float_list, parse_int_list
from histopolation.interfaces.path import JsonFile
from histopolation.kernels.catalog import KernelName, kernel_names
from histopolation.services.experiment_service import ExperimentService

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


def console(level) -> logging.Handler:
    handler = logging.StreamHandler()
    handler.setLevel(level)
    formatter = logging.Formatter("%(levelname)-8s  %(message)s")
    handler.setFormatter(formatter)
    return handler


def log_file(level) -> logging.Handler:
    file_path = os.path.join(os.getcwd(), "histopolation.log")
    handler = RotatingFileHandler(filename=file_path, mode="a", maxBytes=10240, backupCount=3, encoding="UTF-8")
    handler.setLevel(level)
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(name)s - %(message)s", "%d-%b-%y %H:%M:%S")
    handler.setFormatter(formatter)
    return handler


def config_logger(level, to_file: bool = False):
    handlers = [console(level)]
    if to_file:
        handlers.append(log_file(logging.DEBUG))
    logging.basicConfig(handlers=handlers, level=level, force=True)
    log.debug("Logger configured")


def _dims(value: str) -> tuple[int, int]:
    try:
        return parse_dims(value)
    except ValueError as ex:
        raise argparse.ArgumentTypeError(str(ex)) from ex


def _ints(value: str) -> list[int]:
    try:
        return parse_int_list(value)
    except ValueError as ex:
        raise argparse.ArgumentTypeError(f'Expected comma-separated integers, got "{value}"') from ex


def _floats(value: str) -> list[float]:
    try:
        return parse_float_list(value)
    except ValueError as ex:
        raise argparse.ArgumentTypeError(f'Expected comma-separated numbers, got "{value}"') from ex


def _add_kernel(parser: argparse.ArgumentParser, default: str | None = None):
    parser.add_argument(
        "--kernel",
        "-k",
        default=default,
        required=default is None,
        help=f"Kernel name, one of {', '.join(kernel_names())}",
    )
    parser.add_argument("--shape", "-s", type=float, default=1.0, help="Shape parameter lambda of the base profile")


def create_parser() -> argparse.ArgumentParser:
    description = "Kernel histopolation: reconstruct functions from their averages over domains."
    parser = argparse.ArgumentParser(prog="histopolation", description=description)
    parser.add_argument("--config", "-c", help="JSON file overriding the numerical settings")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log debug messages")
    parser.add_argument("--log-file", action="store_true", help="Also log to histopolation.log")
    commands = parser.add_subparsers(dest="command", required=True)

    command = commands.add_parser("histopolate", help="Solve a samples CSV and evaluate the histopolant")
    command.add_argument("--samples", required=True, help="CSV of kind,center...,extent...,value rows")
    _add_kernel(command)
    command.add_argument("--eval-grid", required=True, help='CSV of points or "start:stop:count" per axis, comma separated')
    command.add_argument("--out", "-o", required=True)

    command = commands.add_parser("converge", help="Convergence table on equispaced segments in [-1, 1]")
    _add_kernel(command)
    command.add_argument("--function", "-f", default=FunctionName.LORENTZIAN.value, choices=[name.value for name in FunctionName])
    command.add_argument("--a", dest="width_rule", default="shrink", help='"fixed:<a>" or "shrink" (a = 2/(n-1))')
    command.add_argument("--n", dest="n_list", type=_ints, required=True, help="Comma-separated segment counts")
    command.add_argument("--out", "-o", required=True)

    command = commands.add_parser("kernel-table", help="Tabulate alpha and kappa")
    _add_kernel(command)
    command.add_argument("--width", "-a", type=float, default=1.0, help="Segment length a (ball radius for ball kernels)")
    command.add_argument("--x-grid", default="-3:3:601", help='"start:stop:count" or a CSV of points')
    command.add_argument("--out", "-o", required=True)

    command = commands.add_parser("lagrange-table", help="Tabulate the Lagrange basis of uniform segments")
    _add_kernel(command)
    command.add_argument("--centers", type=_floats, default=[-1.0, -0.5, 0.0, 0.5, 1.0], help="Comma-separated centers")
    command.add_argument("--width", "-a", type=float, default=0.5)
    command.add_argument("--x-grid", default="-1.5:1.5:301")
    command.add_argument("--out", "-o", required=True, help="Values CSV; the cardinal means go to <out>_cardinal.csv")

    command = commands.add_parser("fourier-check", help="Certify the band signs of the averaging transform")
    _add_kernel(command)
    command.add_argument("--width", "-a", type=float, default=1.0)
    command.add_argument("--out", "-o", required=True)

    command = commands.add_parser("image-bin", help="Average b x b pixel blocks")
    command.add_argument("image")
    command.add_argument("--factor", "-b", type=int, required=True)
    command.add_argument("--out", "-o", required=True)

    command = commands.add_parser("image-upscale", help="Histopolation-based resampling of an image")
    command.add_argument("image")
    command.add_argument("--to", dest="dims", type=_dims, required=True, help="Target size WxH")
    _add_kernel(command, default=KernelName.MATERN.value)
    command.add_argument("--mode", default=UpscaleMode.POINTWISE.value, choices=[mode.value for mode in UpscaleMode])
    command.add_argument("--out", "-o", required=True)

    command = commands.add_parser("image-phantom", help="Write the procedural test image")
    command.add_argument("--size", type=int, default=PHANTOM_SIZE)
    command.add_argument("--out", "-o", required=True)
    return parser


def get_app_config(path: str | None) -> AppConfig:
    factory = AppConfigFactory(JsonSource())
    if path is None:
        return factory.default()
    return factory.create(JsonFile(path))


def run(service: ExperimentService, namespace: argparse.Namespace) -> int:
    command = namespace.command
    if command == "histopolate":
        service.histopolate(namespace.samples, namespace.kernel, namespace.shape, namespace.eval_grid, namespace.out)
    elif command == "converge":
        service.converge(namespace.kernel, namespace.function, namespace.n_list, namespace.width_rule, namespace.shape, namespace.out)
    elif command == "kernel-table":
        service.kernel_table(namespace.kernel, namespace.shape, namespace.width, namespace.x_grid, namespace.out)
    elif command == "lagrange-table":
        service.lagrange_table(namespace.kernel, namespace.shape, namespace.centers, namespace.width, namespace.x_grid, namespace.out)
    elif command == "fourier-check":
        if not service.fourier_check(namespace.kernel, namespace.shape, namespace.width, namespace.out):
            log.warning("Kernel %s is not certified as an averaging kernel", namespace.kernel)
    elif command == "image-bin":
        service.image_bin(namespace.image, namespace.factor, namespace.out)
    elif command == "image-upscale":
        width, height = namespace.dims
        service.image_upscale(namespace.image, width, height, namespace.kernel, namespace.shape, namespace.mode, namespace.out)
    elif command == "image-phantom":
        service.image_phantom(namespace.size, namespace.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    namespace = create_parser().parse_args(argv)
    config_logger(logging.DEBUG if namespace.verbose else logging.INFO, namespace.log_file)
    start_time = datetime.now()
    try:
        service = ExperimentService(get_app_config(namespace.config))
        code = run(service, namespace)
    except (ValidationError, UnsupportedConstructionError) as ex:
        log.error(str(ex))
        return EXIT_VALIDATION
    except NumericFailureError as ex:
        log.error(str(ex))
        return EXIT_NUMERIC
    log.info(log_time("Execution-Time".upper(), start_time))
    return code


if __name__ == "__main__":
    sys.exit(main())
