"""Module provides check rows and the verification report they are collected in."""

import math
import operator
import platform
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
import scipy
import torch
import yaml

from src.utils import format_exact

RELATIONS = OrderedDict([
    ("<=", operator.le),
    ("<", operator.lt),
    (">=", operator.ge),
    (">", operator.gt),
    ("==", operator.eq),
])


@dataclass(frozen=True)
class Check:
    """One verified property: measured value, relation to the threshold and the outcome."""
    check_id: str
    value: float
    threshold: float
    relation: str = "<="
    samples: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        if math.isnan(self.value):
            return False
        return RELATIONS[self.relation](self.value, self.threshold)

    def to_dict(self) -> Dict[str, Any]:
        """
        Serializable form with numbers as 17-digit strings.
        :return: ordered mapping.
        """
        row = OrderedDict([
            ("id", self.check_id),
            ("value", format_exact(self.value)),
            ("relation", self.relation),
            ("threshold", format_exact(self.threshold)),
            ("passed", self.passed),
        ])
        if self.samples:
            row["samples"] = [format_exact(x) for x in self.samples]
        return row


def at_most(check_id: str, value: float, threshold: float, samples: Sequence[float] = ()) -> Check:
    return Check(check_id, float(value), float(threshold), "<=", tuple(float(x) for x in samples))


def at_least(check_id: str, value: float, threshold: float, samples: Sequence[float] = ()) -> Check:
    return Check(check_id, float(value), float(threshold), ">=", tuple(float(x) for x in samples))


def above(check_id: str, value: float, threshold: float) -> Check:
    return Check(check_id, float(value), float(threshold), ">")


def equals(check_id: str, value: float, expected: float) -> Check:
    return Check(check_id, float(value), float(expected), "==")


def toolchain() -> Dict[str, str]:
    """
    Versions of the interpreter and the numerical libraries.
    :return: ordered mapping of name to version.
    """
    return OrderedDict([
        ("python", platform.python_version()),
        ("numpy", np.__version__),
        ("scipy", scipy.__version__),
        ("torch", torch.__version__),
        ("pyyaml", yaml.__version__),
    ])


@dataclass
class VerificationReport:
    """Checks of one suite run in declaration order, with the inputs that produced them."""
    suite: str
    checks: List[Check]
    params: Dict[str, Any] = field(default_factory=dict)
    timestamp: str = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        """
        Serializable report in a fixed key order.
        :return: ordered mapping.
        """
        report = OrderedDict([
            ("suite", self.suite),
            ("passed", self.passed),
            ("checks", [check.to_dict() for check in self.checks]),
            ("params", self.params),
            ("toolchain", toolchain()),
        ])
        if self.timestamp is not None:
            report["metadata"] = OrderedDict([("timestamp", self.timestamp)])
        return report
