"""This package options includes option modules: basic options and one module per command."""

import importlib

from src.errors import ConfigurationError
from .base_options import BaseOptions

COMMANDS = ('spectrum', 'stationary', 'evolve', 'verify')


def find_options_using_name(command: str) -> type:
    """Import the module "options/[command]_options.py".

    In the file, the class called CommandOptions() will
    be found. It has to be a subclass of BaseOptions,
    and it is case-insensitive.
    """
    if command not in COMMANDS:
        raise ConfigurationError('unknown command {!r}, expected one of {}'.format(command, ', '.join(COMMANDS)))
    options_filename = 'src.options.' + command + '_options'
    optionslib = importlib.import_module(options_filename)
    options = None
    target_options_name = command.replace('_', '') + 'options'
    for name, cls in optionslib.__dict__.items():
        if name.lower() == target_options_name.lower() \
           and isinstance(cls, type) and issubclass(cls, BaseOptions):
            options = cls

    if options is None:
        raise ConfigurationError(
            'In {}.py, there should be a subclass of BaseOptions with class name that matches {} in lowercase.'.format(
                options_filename, target_options_name)
        )

    return options
