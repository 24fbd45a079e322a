"""starcoef command-line driver"""
import logging
import os
import sys
import traceback
from optparse import OptionGroup, OptionParser

from . import constants
from . import report
from . import utils
from . import verifier
from .error import Error, UsageError, WrongRegime, type_of_error
from .version import __version__

log = logging.getLogger('')
log.setLevel(logging.INFO)
log_consolehandler = logging.StreamHandler()
log_consolehandler.setLevel(logging.INFO)
log_formatter = logging.Formatter(" >> %(message)s")
log_consolehandler.setFormatter(log_formatter)
log.addHandler(log_consolehandler)

#-------------------------------------------------------------------------------
# Main function
#-------------------------------------------------------------------------------
def main(argv=None):
    """Main function."""
    if argv is None:
        argv = sys.argv

    config, task, args = init(argv)

    if task == 'table':
        return cmd_table(config, args)
    elif task == 'verify':
        return cmd_verify(config, args)
    elif task == 'sharp':
        return cmd_sharp(config)
    elif task == 'search':
        return cmd_search(config)
    raise UsageError("No valid task")
# end of main()


def init(argv):
    """Parse the command line; return the validated RunConfig, the task, and
    the positional arguments following the task."""
    options, args = parse_cmdline_args(argv)

    if options.loglevel:
        set_loglevel(options.loglevel)
    if options.version:
        print_version_and_exit()

    task = get_task(args)
    config = get_runconfig(options)
    config.validate(task)
    log.debug("task %s, options %r", task, config.echo())
    return config, task, args[1:]


def cmd_table(config, args):
    """Write one bound table over n and the alpha grid"""
    if not args:
        raise UsageError("Need table name! Valid tables are: " + ", ".join(constants.TABLES))
    which = report.get_table(args[0])
    columns, rows = report.table_rows(which, config)
    extra = report.table_extra(which, config)
    report.write_output(report.render(columns, rows, config, extra), config.out)
    return 0


def get_suites(args):
    """Resolve suite names (or unambiguous prefixes); all suites if none given"""
    if not args:
        return list(constants.SUITES)
    suites = []
    for arg in args:
        matching = [x for x in constants.SUITES if x.startswith(arg)]
        if len(matching) > 1:
            raise UsageError("Ambiguous suite %r. Matching suites are: %s"
                             % (arg, ", ".join(matching)))
        elif not matching:
            raise UsageError("No suite named %r. Valid suites are: %s"
                             % (arg, ", ".join(constants.SUITES)))
        if matching[0] not in suites:
            suites.append(matching[0])
    return suites


def _summary(rep):
    return {'summary': {
        'checks': len(rep),
        'failures': len(rep.failures),
        'max_relative_excess': utils.finite_or_none(rep.max_relative_excess),
    }}


def _write_report(config, rep):
    columns, rows = report.report_rows(rep)
    report.write_output(report.render(columns, rows, config, _summary(rep)), config.out)
    if not rep.checks:
        log.error("No checks were run")
        return 1
    if rep.failures:
        log.error("%d of %d checks failed", len(rep.failures), len(rep))
        for check in rep.failures[:10]:
            log.debug("failed: %r", check)
        return 1
    log.info("All %d checks passed", len(rep))
    return 0


def cmd_verify(config, args):
    """Run the selected verification suites and write the report. Return 0
    only if every check passed."""
    suites = get_suites(args)
    ini = config.suites_ini or utils.find_file(constants.SUITES_INI, strict=True)
    suite_config = verifier.SuiteConfiguration(ini)
    rep = verifier.run_suites(suites, suite_config, config.order, config.seed, config.tolerance)
    return _write_report(config, rep)


def cmd_sharp(config):
    """Compare extremal coefficients against the bounds at --n and --alpha"""
    rep = verifier.verify_sharpness(config.n, config.alpha, config.order, config.tolerance)
    return _write_report(config, rep)


def cmd_search(config):
    """Explore an open regime for functions that come close to the bound"""
    try:
        result = verifier.search_extremal(config.n, config.alpha, config.budget, config.seed,
                                          config.order, config.target)
    except WrongRegime as err:
        raise UsageError(str(err))
    regime = verifier.target_bound(config.target, config.n, config.alpha).regime
    columns, rows = report.search_rows(result, config.target, config.n, config.alpha, regime)
    extra = {'best_spec': result.best_spec.to_dict(), 'discarded': result.discarded}
    report.write_output(report.render(columns, rows, config, extra), config.out)
    if not result.found_candidate:
        log.error("no candidate could be evaluated in %d evaluations", result.evaluations)
        return 1
    if not config.tolerance.within_bound(result.best_ratio, 1.0):
        log.error("best ratio %.17g exceeds the bound", result.best_ratio)
        return 1
    return 0


def set_loglevel(level_str):
    """Sets the log level from a string. level_str should match one of the
    constants defined in logging"""
    global log, log_consolehandler

    try:
        loglevel = int(getattr(logging, level_str.upper()))
    except (TypeError, AttributeError, ValueError):
        raise UsageError("Invalid log level")

    log.setLevel(loglevel)
    log_consolehandler.setLevel(loglevel)


def parse_cmdline_args(argv):
    """Parse the arguments given on the command line. Return a tuple containing
    options:    the options object, containing the keyword arguments
    args:       a list containing the positional arguments left over

    """
    header = """
   %prog TASK [ARGS] [options]

Valid tasks are:
table WHICH     Write a bound table; WHICH is one of: """ + ", ".join(constants.TABLES) + """
verify [SUITE]  Run verification suites (default: all of """ + ", ".join(constants.SUITES) + """)
sharp           Check extremal functions against the bounds at --n and --alpha
search          Search an open regime at --n and --alpha for near-extremal functions
"""
    parser = OptionParser(header)
    parser.add_option(
        "--abs-floor", type="float", dest="abs_floor",
        help="Absolute slack added to every comparison. Default: %g"
        % constants.DEFAULT_ABS_FLOOR)
    parser.add_option(
        "--alpha-step", type="float", dest="alpha_step",
        help="Spacing of the alpha grid of tables. Default: %g"
        % constants.DEFAULT_RUNOPTS['alpha_step'])
    parser.add_option(
        "--format",
        help="Output format: %s. Default: csv" % ", ".join(constants.FORMATS))
    parser.add_option(
        "--loglevel",
        help="The level of logging the script should do. "
        "Valid values are: DEBUG,INFO,WARNING,ERROR,CRITICAL. Default: INFO")
    parser.add_option(
        "--n-max", type="int", dest="n_max",
        help="Largest coefficient index in tables. Default: %d"
        % constants.DEFAULT_RUNOPTS['n_max'])
    parser.add_option(
        "-o", "--out",
        help="File to write to; '-' for standard output. Default: -")
    parser.add_option(
        "--order", type="int",
        help="Truncation order of the power series. Default: %d" % constants.DEFAULT_ORDER)
    parser.add_option(
        "-q", "--quiet", action="store_const", const="warning", dest="loglevel",
        help="Display less information. Equivalent to --loglevel=warning")
    parser.add_option(
        "--seed", type="int",
        help="Seed of the first sampled function. Default: 0")
    parser.add_option(
        "--tol", type="float", dest="rel_tol",
        help="Relative tolerance of every comparison. Default: %g"
        % constants.DEFAULT_REL_TOL)
    parser.add_option(
        "-v", "--verbose", action="store_const", const="debug", dest="loglevel",
        help="Display more information. Equivalent to --loglevel=debug")
    parser.add_option(
        "--version", action="store_true",
        help="Show version and exit.")

    point_group = OptionGroup(parser, "sharp and search task options")
    point_group.add_option(
        "--alpha", type="float",
        help="The order alpha, 0 <= alpha < 1")
    point_group.add_option(
        "--n", type="int",
        help="The coefficient index")
    parser.add_option_group(point_group)

    search_group = OptionGroup(parser, "search task options")
    search_group.add_option(
        "--budget", type="int",
        help="Number of objective evaluations. Default: %d"
        % constants.DEFAULT_RUNOPTS['budget'])
    search_group.add_option(
        "--target",
        help="Which coefficient to maximize: thm1 (|A_n|) or thm3 (|B_n|). Default: thm1")
    parser.add_option_group(search_group)

    verify_group = OptionGroup(parser, "verify task options")
    verify_group.add_option(
        "--suites-ini", dest="suites_ini",
        help="The ini file holding the suite grids. Default: %s from the data "
        "directory" % constants.SUITES_INI)
    parser.add_option_group(verify_group)

    return parser.parse_args(argv[1:])


def get_task(args):
    """Return the task the user specified in the first positional argument,
    if it is a valid task. Allow the user to enter only the first few
    characters if the task is unambiguous. Raise UsageError if task is
    unspecified, invalid, or ambiguous.

    """
    if len(args) < 1:
        raise UsageError('Need task!')
    task = args[0]

    matching_tasks = [x for x in constants.TASKS if x.startswith(task)]

    if len(matching_tasks) > 1:
        raise UsageError('Ambiguous task. Matching tasks are: ' + ", ".join(matching_tasks))
    elif not matching_tasks:
        raise UsageError('No valid task')
    else:
        real_task = matching_tasks[0]

    return real_task
# end of get_task()


def get_runconfig(options):
    """Return the RunConfig to use, based on the command-line arguments.
    Options left unspecified keep their defaults."""
    overrides = {}
    for optname in constants.DEFAULT_RUNOPTS:
        optval = getattr(options, optname, None)
        if optval is not None:
            overrides[optname] = optval
    return report.RunConfig(**overrides)


def print_version_and_exit():
    """Print version and exit"""
    print("starcoef " + __version__)
    sys.exit(0)


def entrypoint():
    """CLI entrypoint for starcoef"""
    try:
        return main(sys.argv)
    except UsageError as err:
        print(str(err), file=sys.stderr)
        print("""\
    Type %(prog)s --help for usage info.

    Common usage patterns follow:

    To tabulate the inverse-coefficient bounds:
        %(prog)s table thm1 --n-max 8 --alpha-step 0.05

    To run every verification suite and save the report:
        %(prog)s verify --out report.csv

    To check the extremal functions at one point:
        %(prog)s sharp --n 4 --alpha 0.1

    To explore an open regime:
        %(prog)s search --n 4 --alpha 0.55 --budget 2000
    """ % {'prog': os.path.basename(sys.argv[0])}, file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("", file=sys.stderr)
        print("-" * 79, file=sys.stderr)
        print("Interrupted", file=sys.stderr)
        print("-" * 79, file=sys.stderr)
        return 3
    except Error as err:
        print("-" * 79, file=sys.stderr)
        print(str(err), file=sys.stderr)
        print("-" * 79, file=sys.stderr)
        log.debug("Full traceback follows:")
        log.debug(traceback.format_exc())
        return 4
    except Exception as err:
        print("-" * 79, file=sys.stderr)
        print("An unhandled exception of type %s occurred:" % type_of_error(err), file=sys.stderr)
        print(str(err), file=sys.stderr)
        print("Please send a bug report to the starcoef maintainers with as much", file=sys.stderr)
        print("information about the circumstances as you can provide.", file=sys.stderr)
        print("-" * 79, file=sys.stderr)
        print("Full traceback follows:", file=sys.stderr)
        raise


if __name__ == '__main__':
    sys.exit(entrypoint())
