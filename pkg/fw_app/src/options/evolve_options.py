import math

from .base_options import BaseOptions
from src.dynamics import make_initial_state
from src.errors import ConfigurationError


class EvolveOptions(BaseOptions):
    """This class includes options of the polarization time series.

    It also includes shared options defined in BaseOptions.
    """
    command = 'evolve'

    def initialize(self, parser):
        parser = BaseOptions.initialize(self, parser)  # define shared options
        parser.add_argument('--n', type=int, default=1, help='orbital quantum number of the Landau sector')
        parser.add_argument('--init', type=str, default='sx:+1',
                            help='initial state: sz:+1 | sz:0 | sz:-1 | sx:+1 | custom:a,b,c')
        parser.add_argument('--tmax', type=float, default=1000.0, help='last sample time')
        parser.add_argument('--steps', type=int, default=1000, help='number of time steps after t = 0')
        parser.add_argument('--h0-policy', dest='h0_policy', type=str, default='zero',
                            choices=('zero', 'epsilon_prime'), help='spin-independent term of the Hamiltonian')
        parser.add_argument('--force-kappa-zero', dest='force_kappa_zero', action='store_true',
                            help='drop the mixing of s_z = +1 and -1')
        # rewrite default values
        parser.set_defaults(**self.config.get('evolve', {}))
        return parser

    def validate(self, opt):
        if opt.n < 0:
            raise ConfigurationError('--n must be non-negative, got {}'.format(opt.n))
        if not (math.isfinite(opt.tmax) and opt.tmax > 0):
            raise ConfigurationError('--tmax must be positive and finite, got {!r}'.format(opt.tmax))
        if opt.steps < 1:
            raise ConfigurationError('--steps must be at least 1, got {}'.format(opt.steps))
        opt.state = make_initial_state(opt.init)
