"""This module contains simple helper functions """

import os


def mkdir(path: str) -> None:
    """
    Create a single empty directory if it didn't exist.
    :param path: a single directory path.
    """
    if path and not os.path.exists(path):
        os.makedirs(path)


def ensure_parent(path: str) -> None:
    """
    Create the directory a file is going to be written to.
    :param path: file path.
    """
    mkdir(os.path.dirname(os.path.abspath(path)))
