from .base_options import BaseOptions
from src.errors import ConfigurationError


class StationaryOptions(BaseOptions):
    """This class includes options of the stationary-state report.

    It also includes shared options defined in BaseOptions.
    """
    command = 'stationary'

    def initialize(self, parser):
        parser = BaseOptions.initialize(self, parser)  # define shared options
        parser.add_argument('--n', type=int, default=1, help='orbital quantum number of the Landau sector')
        parser.add_argument('--h0-policy', dest='h0_policy', type=str, default='epsilon_prime',
                            choices=('zero', 'epsilon_prime'), help='spin-independent term of the Hamiltonian')
        parser.add_argument('--force-kappa-zero', dest='force_kappa_zero', action='store_true',
                            help='drop the mixing of s_z = +1 and -1')
        # rewrite default values
        parser.set_defaults(**self.config.get('stationary', {}))
        return parser

    def validate(self, opt):
        if opt.n < 0:
            raise ConfigurationError('--n must be non-negative, got {}'.format(opt.n))
