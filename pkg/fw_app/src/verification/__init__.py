from ._report import (
    Check,
    VerificationReport,
    at_most,
    at_least,
    above,
    equals,
    toolchain,
)
from ._suites import (
    SUITES,
    run_suite,
)
