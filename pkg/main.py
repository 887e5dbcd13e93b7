#!/usr/bin/env python3
"""
tcpair: relative topological complexity calculator
Main entry point for command-line operations.

Computes certified bounds and exact values of TC(X,Y) for polygon spaces,
projective pairs, spheres, tori and wedges, runs the cup-length search on
user-supplied rings, and builds and verifies explicit motion planners.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from src.algebra.cuplength import cuplength_lower_bound, verify_certificate, zero_divisor_generators
from src.algebra.fields import FieldSpec, Q, F2
from src.algebra.serialization import certificate_to_json
from src.bounds.catalog import (
    catalog_cp_pair, catalog_polygon, catalog_sphere_pair, catalog_torus, catalog_wedge, rp_pair_bounds
)
from src.combinatorics.lengths import parse_lengths, parse_partition
from src.file_operations.file_handler import load_ring_spec, write_json
from src.planners.projective import BilinearMap, ProjectivePairPlanner, build_polymul_map, build_quaternion_map
from src.planners.sphere import SpherePairPlanner
from src.planners.verification import require_passed, verify_planner
from src.planners.wedge import WedgePairPlanner
from src.ui.console_interface import ConsoleInterface
from src.utils.config import AppConfig, get_default_config
from src.utils.errors import FieldMismatch, InputError, InvalidField, TCPairError
from src.utils.logger import get_logger, set_log_level

logger = get_logger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _floats(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",")]
    except ValueError:
        raise InputError(f"Cannot parse coordinates {text!r}")


def _ints(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",")]
    except ValueError:
        raise InputError(f"Cannot parse integer list {text!r}")


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags, accepted before or after the subcommand."""
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--json", action="store_true", default=default(False), help="emit JSON")
    parser.add_argument("--seed", type=int, default=default(None), help="random seed (default 0)")
    parser.add_argument("--field", default=default(None), help="coefficient field: Q, F2 or Fp:<p>")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=default(None), help="logging level")
    parser.add_argument("--threads", type=int, default=default(None), help="worker threads")
    parser.add_argument("--output", type=Path, default=default(None), help="also write the JSON result to a file")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every subcommand."""
    parser = argparse.ArgumentParser(
        prog="tcpair",
        description="Certified bounds on relative topological complexity TC(X,Y)"
    )
    _add_global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, suppress=True)
    commands = parser.add_subparsers(dest="command", required=True)

    polygon = commands.add_parser("polygon", parents=[common], help="TC(N(ℓ)) of a polygon space")
    polygon.add_argument("--lengths", required=True, help="comma-separated lengths, e.g. 1,1,2,3,5,7")

    polygon_pair = commands.add_parser("polygon-pair", parents=[common], help="TC(N(ℓ), N(ℓᴾ))")
    polygon_pair.add_argument("--lengths", required=True)
    polygon_pair.add_argument("--partition", required=True, help='1-based parts, e.g. "1|3|4|2,5|6"')

    rp_pair = commands.add_parser("rp-pair", parents=[common], help="bounds on TC(RP^n, RP^m)")
    _add_rp_arguments(rp_pair)
    rp_pair.add_argument("--known-tc", type=int, default=None, help="known TC(RP^n)")
    rp_pair.add_argument("--verify-samples", type=int, default=0, help="verify the best witness planner")

    catalog = commands.add_parser("catalog", parents=[common], help="families with closed forms")
    families = catalog.add_subparsers(dest="family", required=True)
    sphere = families.add_parser("sphere-pair", parents=[common])
    sphere.add_argument("--n", type=int, required=True)
    sphere.add_argument("--m", type=int, required=True)
    torus = families.add_parser("torus", parents=[common])
    torus.add_argument("--n", type=int, required=True)
    wedge = families.add_parser("wedge", parents=[common])
    wedge.add_argument("--dims", required=True, help="sphere dimensions, e.g. 2,2,3")
    wedge.add_argument("--m", type=int, required=True)
    cp_pair = families.add_parser("cp-pair", parents=[common])
    cp_pair.add_argument("--n", type=int, required=True)
    cp_pair.add_argument("--m", type=int, required=True)

    cuplength = commands.add_parser("cuplength", parents=[common], help="cup-length search on a pair spec")
    cuplength.add_argument("--spec", type=Path, required=True)
    cuplength.add_argument("--max-factors", type=int, default=None)

    for name in ("plan", "verify"):
        action = commands.add_parser(name, parents=[common], help=f"{name} a motion planner")
        targets = action.add_subparsers(dest="target", required=True)
        sphere = targets.add_parser("sphere-pair", parents=[common])
        sphere.add_argument("--n", type=int, required=True)
        sphere.add_argument("--m", type=int, required=True)
        wedge = targets.add_parser("wedge", parents=[common])
        wedge.add_argument("--dims", required=True)
        wedge.add_argument("--m", type=int, required=True)
        rp = targets.add_parser("rp-pair", parents=[common])
        _add_rp_arguments(rp)
        if name == "plan":
            sphere.add_argument("--x", required=True, help="point of S^n")
            sphere.add_argument("--y", required=True, help="point of S^m")
            wedge.add_argument("--p", required=True, help='start as "index:coords", 0 for the wedge point')
            wedge.add_argument("--q", required=True, help="goal in the first m spheres")
            rp.add_argument("--start", required=True, help="representative of a line in R^(n+1)")
            rp.add_argument("--goal", required=True, help="representative of a line in R^(m+1)")
        else:
            for target in (sphere, wedge, rp):
                target.add_argument("--samples", type=int, default=None, help="queries (default 10000)")
                target.add_argument("--delta", type=float, default=None, help="perturbation size")
    return parser


def _add_rp_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--quaternion", action="store_true", help="use the quaternion witness (n <= 3, m <= 3)")


class TCPairApp:
    """Dispatches parsed arguments to the library and writes the results."""

    def __init__(self, args: argparse.Namespace, config: AppConfig, console: ConsoleInterface):
        self.args = args
        self.config = config
        self.console = console
        if args.seed is not None:
            config.verification.seed = args.seed
        logger.debug("TCPairApp initialized")

    def field(self, default: FieldSpec) -> FieldSpec:
        return FieldSpec.parse(self.args.field) if self.args.field else default

    def _rational_field(self) -> FieldSpec:
        field = self.field(Q)
        if field.characteristic != 0:
            raise InvalidField(f"Symplectic bounds need rational coefficients, got {field}")
        return field

    def _save(self, document) -> None:
        if self.args.output is not None:
            write_json(document, self.args.output)

    def _emit_report(self, report) -> None:
        self.console.emit_report(report)
        self._save(report.to_json())

    def _witnesses(self) -> List[BilinearMap]:
        if not self.args.quaternion:
            return []
        return [build_quaternion_map(self.args.n, self.args.m)]

    def _best_map(self) -> BilinearMap:
        maps = [build_polymul_map(self.args.n, self.args.m)] + self._witnesses()
        return min(maps, key=lambda f: f.k)

    def run(self) -> int:
        handler = {
            "polygon": self.cmd_polygon,
            "polygon-pair": self.cmd_polygon_pair,
            "rp-pair": self.cmd_rp_pair,
            "catalog": self.cmd_catalog,
            "cuplength": self.cmd_cuplength,
            "plan": self.cmd_plan,
            "verify": self.cmd_verify
        }[self.args.command]
        handler()
        return 0

    def cmd_polygon(self) -> None:
        self._rational_field()
        lengths = parse_lengths(self.args.lengths)
        self._emit_report(catalog_polygon(lengths, max_size=self.config.lengths.max_polygon_size))

    def cmd_polygon_pair(self) -> None:
        self._rational_field()
        lengths = parse_lengths(self.args.lengths)
        partition = parse_partition(self.args.partition, lengths.n)
        self._emit_report(catalog_polygon(lengths, partition, self.config.lengths.max_polygon_size))

    def cmd_rp_pair(self) -> None:
        report = rp_pair_bounds(
            self.args.n,
            self.args.m,
            witnesses=self._witnesses(),
            field=self.field(F2),
            known_tc=self.args.known_tc,
            verify_samples=self.args.verify_samples,
            verification=self.config.verification,
            threads=self.config.search.threads
        )
        self._emit_report(report)

    def cmd_catalog(self) -> None:
        args = self.args
        if args.family == "sphere-pair":
            report = catalog_sphere_pair(args.n, args.m)
        elif args.family == "torus":
            report = catalog_torus(args.n, self.field(Q))
        elif args.family == "wedge":
            report = catalog_wedge(_ints(args.dims), args.m, self.field(Q), self.config.search.threads)
        else:
            self._rational_field()
            report = catalog_cp_pair(args.n, args.m)
        self._emit_report(report)

    def cmd_cuplength(self) -> None:
        tensor_ring, hom, file_max = load_ring_spec(self.args.spec)
        if self.args.field and FieldSpec.parse(self.args.field) != tensor_ring.field:
            raise FieldMismatch(f"--field {self.args.field} differs from the specification field {tensor_ring.field}")
        zero_divisors = zero_divisor_generators(tensor_ring, hom)
        max_factors = self.args.max_factors or file_max or self.config.search.max_factors
        certificate = cuplength_lower_bound(zero_divisors, max_factors, self.config.search.threads)
        verify_certificate(certificate, enforce=True)
        document = certificate_to_json(certificate)
        self.console.emit_certificate(certificate, document)
        self._save(document)

    def _planner(self):
        args = self.args
        if args.target == "sphere-pair":
            return SpherePairPlanner(args.n, args.m, self.config.planner)
        if args.target == "wedge":
            return WedgePairPlanner(_ints(args.dims), args.m, self.config.planner)
        return ProjectivePairPlanner(self._best_map(), self.config.planner)

    def cmd_plan(self) -> None:
        args = self.args
        planner = self._planner()
        if args.target == "sphere-pair":
            query = planner.query(_floats(args.x), _floats(args.y))
        elif args.target == "wedge":
            query = planner.query(self._wedge_point(planner, args.p), self._wedge_point(planner, args.q))
        else:
            query = planner.query(_floats(args.start), _floats(args.goal))
        path = planner.plan(query)
        self.console.emit_path(path)
        self._save(path.to_json())

    @staticmethod
    def _wedge_point(planner: WedgePairPlanner, text: str):
        index, _, coords = text.partition(":")
        try:
            index = int(index)
        except ValueError:
            raise InputError(f"Cannot parse wedge point {text!r}")
        return planner.point(index, _floats(coords) if coords else None)

    def cmd_verify(self) -> None:
        planner = self._planner()
        verification = self.config.verification
        record = verify_planner(planner, samples=self.args.samples, delta=self.args.delta, config=verification)
        self.console.emit_record(record, verification.endpoint_tolerance)
        self._save(record.to_json())
        require_passed(record, verification.endpoint_tolerance)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        Exit code: 0 on success, 2 for invalid input, 3 for failed verification
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    console = ConsoleInterface(json_mode=args.json)
    try:
        if args.log_level:
            set_log_level(args.log_level)
        try:
            config = get_default_config(log_level=args.log_level, threads=args.threads)
        except ValueError as e:
            raise InputError(str(e))
        return TCPairApp(args, config, console).run()

    except TCPairError as e:
        logger.debug(f"Command failed with {type(e).__name__}: {e}")
        console.print_error(e)
        return e.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
