from .base_options import BaseOptions
from src.errors import ConfigurationError
from src.grid._fields import MIN_POINTS
from src.verification import SUITES


class VerifyOptions(BaseOptions):
    """This class includes options of the verification harness.

    It also includes shared options defined in BaseOptions.
    """
    command = 'verify'

    def initialize(self, parser):
        parser = BaseOptions.initialize(self, parser)  # define shared options
        parser.add_argument('--suite', type=str, default='all', choices=tuple(SUITES) + ('all',),
                            help='verification suite to run')
        parser.add_argument('--grids', type=str, default=None,
                            help='comma-separated points per axis of the grid refinement, e.g. 24,32,48')
        return parser

    def validate(self, opt):
        if opt.suite not in tuple(SUITES) + ('all',):
            raise ConfigurationError('unknown suite {!r}'.format(opt.suite))
        if opt.grids is None:
            return
        try:
            grids = [int(x) for x in str(opt.grids).split(',') if x.strip()]
        except ValueError:
            raise ConfigurationError('malformed --grids {!r}'.format(opt.grids))
        if len(grids) < 2 or any(n < MIN_POINTS for n in grids) or grids != sorted(set(grids)):
            raise ConfigurationError(
                '--grids needs at least two increasing sizes of {} points or more, got {!r}'.format(MIN_POINTS, opt.grids)
            )
        opt.grids = grids
