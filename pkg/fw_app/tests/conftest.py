import os

import pytest

from src.utils import load_config

CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config.yaml")


@pytest.fixture
def config():
    return load_config(CONFIG_PATH)
