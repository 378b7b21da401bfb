import argparse
import logging
from typing import List

from src.errors import ConfigurationError
from src.sectors import ParticleParams
from src.utils import load_config

logger = logging.getLogger(__name__)


class BaseOptions:
    """This class defines options shared by every command.

    It also implements helper functions for parsing and printing the options.
    Values of a file given by --config become parser defaults, so explicit flags win.
    """
    command: str = None

    def __init__(self, config: dict = None):
        """Reset the class; indicates the class hasn't been initialized"""
        self.initialized = False
        self.config = config or {}
        self.parser = None
        self.opt = None

    def initialize(self, parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
        """Define the common options that are used by every command."""
        # particle parameters, units hbar = c = 1
        parser.add_argument('--m', type=float, default=1.0, help='particle mass')
        parser.add_argument('--e', type=float, default=1.0, help='signed particle charge')
        parser.add_argument('--g', type=float, default=2.0, help='g factor, 2 is the normal magnetic moment')
        parser.add_argument('--B', type=float, default=0.1, help='magnetic field strength along z')
        parser.add_argument('--pz', type=float, default=0.0, help='longitudinal momentum')
        # run parameters
        parser.add_argument('--config', type=str, default=None, help='YAML or JSON file whose keys mirror the flags')
        parser.add_argument('--output', '-o', type=str, default='-', help='output file, - for standard output')
        parser.add_argument('--timestamp', action='store_true', help='add a metadata timestamp to JSON reports')
        parser.add_argument('--verbose', action='store_true', help='if specified, log debugging information')
        parser.set_defaults(**self.config.get('particle', {}))
        self.initialized = True
        return parser

    def gather_options(self, args: List[str] = None) -> argparse.Namespace:
        """Initialize our parser with basic options (only once) and apply the --config file."""
        if not self.initialized:
            parser = argparse.ArgumentParser(
                prog='app.py {}'.format(self.command),
                formatter_class=argparse.ArgumentDefaultsHelpFormatter,
            )
            parser = self.initialize(parser)
        else:
            parser = self.parser

        # get the basic options
        opt, _ = parser.parse_known_args(args)

        if opt.config:
            overrides = {str(k).replace('-', '_'): v for k, v in load_config(opt.config).items()}
            unknown = sorted(set(overrides) - set(vars(opt)))
            if unknown:
                raise ConfigurationError('unknown keys in {}: {}'.format(opt.config, ', '.join(unknown)))
            overrides.pop('config', None)
            parser.set_defaults(**overrides)

        # save and return the parser
        self.parser = parser
        return parser.parse_args(args)

    def print_options(self, opt: argparse.Namespace) -> None:
        """Log current options and default values (if different)."""
        message = ''
        message += '----------------- Options ---------------\n'
        for k, v in sorted(vars(opt).items()):
            comment = ''
            default = self.parser.get_default(k)
            if v != default:
                comment = '\t[default: %s]' % str(default)
            message += '{:>25}: {:<30}{}\n'.format(str(k), str(v), comment)
        message += '----------------- End -------------------'
        logger.info('\n%s', message)

    def validate(self, opt: argparse.Namespace) -> None:
        """Check command-specific values; subclasses extend it."""

    def parse(self, args: List[str] = None, verbose: bool = True) -> argparse.Namespace:
        """
        Parse our options, validate them and attach the particle parameters.
        :param args: command-line arguments without the command name.
        :param verbose: whether to log parsed options.
        :return: options namespace.
        """
        opt = self.gather_options(args)

        if verbose:
            self.print_options(opt)

        opt.command = self.command
        self.validate(opt)

        opt.params = ParticleParams(m=opt.m, e=opt.e, g=opt.g, B=opt.B, pz=opt.pz)
        self.opt = opt
        return self.opt
