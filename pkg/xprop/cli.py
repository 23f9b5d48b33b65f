#!/usr/bin/env python3
"""
Extended-Lagrangian Relativistic Dynamics and Proper-Time Propagation

Runs the configured experiments: classical s-parametrized trajectories,
repeated proper-time kernel steps, the Klein-Gordon verification suite and
the Gaussian moment tables. Every run writes its files and a manifest under
the output directory.

Usage:
    xprop classical --config experiment.yaml --out results/classical
    xprop propagate --config experiment.yaml --seed 7
    xprop kg-suite --config experiment.yaml -v
    xprop moments --out results/moments
"""

import argparse
import logging
import sys

from xprop import __version__
from xprop.core.errors import ConfigError
from xprop.experiments import EXPERIMENTS, ExperimentConfig, run_experiment

# Configure logging
logging.basicConfig(level=logging.WARNING, format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML experiment configuration (defaults apply without it)")
    common.add_argument("--out", help="Output directory (overrides output.dir)")
    common.add_argument("--seed", type=int, help="Random seed for generated fields (overrides seed)")
    common.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose logging (show phase information)",
    )
    common.add_argument("--debug", action="store_true", help="Enable debug logging (requires --verbose)")
    common.add_argument("-q", "--quiet", action="store_true", help="Suppress output except errors")
    common.add_argument("--no-progress", action="store_true", help="Disable progress display")
    return common


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xprop",
        description="Extended-Lagrangian relativistic dynamics and proper-time propagation",
        epilog="Example: xprop kg-suite --config experiment.yaml --out results",
    )
    parser.add_argument("--version", action="version", version=f"xprop {__version__}")
    subparsers = parser.add_subparsers(dest="experiment", metavar="EXPERIMENT", required=True)
    common = _common_options()
    helps = {
        "classical": "Integrate the classical extended Euler-Lagrange flow",
        "propagate": "Apply repeated proper-time kernel steps to a field",
        "kg-suite": "Run the Klein-Gordon verification suite",
        "moments": "Tabulate Gaussian kernel moments against the Fresnel oracle",
    }
    for name in EXPERIMENTS:
        subparsers.add_parser(name, parents=[common], help=helps[name])
    return parser


def load_config(args):
    if args.config:
        config = ExperimentConfig.from_file(args.config, args.experiment)
    else:
        config = ExperimentConfig.from_mapping({}, args.experiment)
    return config.with_overrides(output_dir=args.out, seed=args.seed)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    # Set logging levels
    if args.debug:
        if not args.verbose:
            parser.error("--debug requires --verbose")
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.verbose:
        logging.getLogger().setLevel(logging.INFO)
    else:
        logging.getLogger().setLevel(logging.ERROR)

    try:
        config = load_config(args)
        result = run_experiment(config, quiet=args.quiet, show_progress=not args.no_progress)

        if not result.passed:
            logger.error(f"{len(result.failures)} acceptance check(s) failed")
            sys.exit(EXIT_FAILED)

    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        sys.exit(EXIT_CONFIG)
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        sys.exit(EXIT_FAILED)


if __name__ == "__main__":
    main()
