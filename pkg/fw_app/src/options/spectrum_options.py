from .base_options import BaseOptions
from src.errors import ConfigurationError


class SpectrumOptions(BaseOptions):
    """This class includes options of the spectrum table.

    It also includes shared options defined in BaseOptions.
    """
    command = 'spectrum'

    def initialize(self, parser):
        parser = BaseOptions.initialize(self, parser)  # define shared options
        parser.add_argument('--nmax', type=int, default=4, help='largest orbital quantum number')
        parser.add_argument('--mode', type=str, default='exact', choices=('exact', 'reduced'),
                            help='exact g=2 levels or stationary energies of the reduced Hamiltonian')
        parser.add_argument('--h0-policy', dest='h0_policy', type=str, default='epsilon_prime',
                            choices=('zero', 'epsilon_prime'), help='spin-independent term in reduced mode')
        # rewrite default values
        parser.set_defaults(**self.config.get('spectrum', {}))
        return parser

    def validate(self, opt):
        if opt.mode not in ('exact', 'reduced'):
            raise ConfigurationError('unknown mode {!r}, expected exact or reduced'.format(opt.mode))
        if opt.nmax < 0:
            raise ConfigurationError('--nmax must be non-negative, got {}'.format(opt.nmax))
