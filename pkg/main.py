#!/usr/bin/env python3
"""
Verification campaigns for the extended diffeomorphism algebra
Main entry point: diffext verify <checks> [options]
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from config import Config, apply_overrides, load_file, workers_from_env
from errors import ConfigError
from storage import Storage
from verify import CHECKS, run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='diffext', description=__doc__.strip().splitlines()[0])
    commands = parser.add_subparsers(dest='command', required=True)
    verify = commands.add_parser('verify', help='run verification checks')
    verify.add_argument('checks', nargs='*', help=f"checks to run: all, {', '.join(CHECKS)}")
    verify.add_argument('--check', dest='check_list', help='comma-separated checks, added to the positional ones')
    verify.add_argument('--config', help='INI file with [probe] [module] [gauge] [checks] [output] sections')
    verify.add_argument('--N', type=int)
    verify.add_argument('--module', choices=('trivial', 'verma'))
    for name in ('c', 'k0', 'k1', 'k2', 'h'):
        verify.add_argument(f'--{name}', help='exact scalar such as 1/2 or 1/2+1/3*i')
    verify.add_argument('--lambda', dest='lam', help='T character')
    verify.add_argument('--gauge', help='none, u1:d or sl2')
    verify.add_argument('--level', help='Kac-Moody level k')
    verify.add_argument('--g', help='comma-separated charges g^a')
    verify.add_argument('--gprime', help="comma-separated charges g'^a")
    verify.add_argument('--mu', help='comma-separated gauge character')
    verify.add_argument('--deg', type=int, help='spatial degree bound of probes')
    verify.add_argument('--freq', type=int, help='frequency bound of probes')
    verify.add_argument('--D', type=int, help='degree cap of basis states')
    verify.add_argument('--W', type=int, help='width cap of basis states')
    verify.add_argument('--seed', type=int)
    verify.add_argument('--kmax', type=int, help='range of the delta-function identities')
    verify.add_argument('--K', type=int, help='mode cutoff of truncated loops')
    verify.add_argument('--trials', type=int)
    verify.add_argument('--window', type=int)
    verify.add_argument('--draws', type=int)
    verify.add_argument('--max-pairs', dest='max_pairs', type=int)
    verify.add_argument('--out', help='report file (JSON); a .txt summary is written alongside')
    verify.add_argument('--timings', action='store_true', default=None, help='include millis in the report')
    return parser


def resolve_config(args: argparse.Namespace) -> Config:
    config = Config()
    if args.config:
        config = load_file(args.config, config)
    checks = list(args.checks)
    if args.check_list:
        checks += [part.strip() for part in args.check_list.split(',') if part.strip()]
    overrides = {name: getattr(args, name) for name in (
        'N', 'module', 'c', 'k0', 'k1', 'k2', 'h', 'lam', 'gauge', 'level', 'g', 'gprime', 'mu',
        'deg', 'freq', 'D', 'W', 'seed', 'kmax', 'K', 'trials', 'window', 'draws', 'max_pairs',
        'out', 'timings')}
    overrides['checks'] = checks or None
    config = apply_overrides(config, overrides)
    config.validate()
    return config


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        spec = config.probe_spec()
        workers = workers_from_env()
        storage = Storage(config.out)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG

    logger.info(f"Running checks {config.checks or '(none)'} with {workers} worker(s)")
    reports = run_checks(config.checks, spec, workers)
    if not storage.save_reports(reports, config.timings):
        logger.error("Reports could not be written")
        return EXIT_FAILED

    failed = [r for r in reports if not r.passed]
    for report in failed:
        logger.error(f"Check {report.check} failed: {report.counterexample}")
    return EXIT_FAILED if failed else EXIT_OK


def main():
    load_dotenv()
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=os.getenv('DIFFEXT_LOG_LEVEL', 'INFO').upper()
    )
    sys.exit(run())


if __name__ == '__main__':
    main()
