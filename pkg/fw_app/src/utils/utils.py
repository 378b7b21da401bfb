"""Module provides helper functions."""

import yaml

from src.errors import ConfigurationError


def load_config(path: str) -> dict:
    """
    Load a config from a yaml file. JSON files load as well.
    :param path: path to a config file.
    :return: loaded config.
    """
    try:
        with open(path) as f:
            config = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigurationError("cannot read config {}: {}".format(path, exc)) from exc
    if config is not None and not isinstance(config, dict):
        raise ConfigurationError("config {} must hold a mapping".format(path))
    return config or {}
