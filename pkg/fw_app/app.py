"""Run a command of the spin-1 FW toolkit: spectrum, stationary, evolve or verify."""

import logging
import os
import sys
from typing import List

from src.commands import execute
from src.errors import FWError
from src.options import COMMANDS, find_options_using_name
from src.utils import load_config

logger = logging.getLogger(__name__)

CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")
USAGE = "usage: app.py {%s} [options]" % ",".join(COMMANDS)


def main(argv: List[str] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    config = load_config(CONFIG_PATH)

    level = "DEBUG" if "--verbose" in argv else config.get("app", {}).get("log_level", "INFO")
    logging.basicConfig(
        level=level,
        format="%(filename)s:%(lineno)d #%(levelname)-8s [%(asctime)s] - %(name)s - %(message)s"
    )

    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE, file=sys.stderr)
        return 0 if argv else 2

    command, args = argv[0], argv[1:]
    try:
        options = find_options_using_name(command)(config)
        opt = options.parse(args, verbose="--verbose" in args)
        logger.debug("running %s", command)
        return execute(opt, config)
    except FWError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except SystemExit as exc:
        # argparse exits with 2 on bad flags and 0 after --help
        return exc.code if isinstance(exc.code, int) else 2
    except Exception:
        # exit code 1 is reserved for failed verification
        logger.exception("unexpected error while running %s", command)
        return 2


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.error("Interrupted!")
        sys.exit(130)
