"""Command-line entry point. Runs one verify | eigen | hardy subcommand and exits with its status."""
import logging
import sys

from modules import main
from modules.utilities import config


log: logging.Logger = logging.getLogger(name="log." + __name__)
config.logger(level=config.LOG_LEVEL)

###########################
#  verify | eigen | hardy #
###########################


def cli(argv: list[str] | None = None) -> int:
    """
    Runs the toolkit and returns the exit status:
    0 when every check passed, 1 when a check failed, 2 on configuration or numerical errors.

    How to use:
        python cli_app.py verify --principle discrete-picone --p 3 --q 2 --trials 100000 --seed 7
        python cli_app.py eigen --energy local --H power_euclid:p=2 --q 2 --dim 1 --nodes 200
        python cli_app.py eigen --energy nonlocal --s 0.5 --p 2 --q 2 --dim 1 --nodes 100 --csv u.csv
        python cli_app.py hardy --mode local --N 3 --p 2 --gamma 0
        python cli_app.py hardy --mode fractional --N 2 --s 0.5 --p 2 --sweep 50 --csv sweep.csv
        python cli_app.py eigen --config eigen.cfg --nodes 400

    Every subcommand accepts --config FILE with key=value lines; flags override it.
    Run `python cli_app.py <subcommand> --help` for all keys and their defaults.
    """
    log.debug(msg="Toolkit starting.")
    return main.main(argv=sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(cli())
