"""
Entry point for the toolkit subcommands.

`cli_main(argv)` runs one of gen/fit/richness/bound/mc and returns its exit
code instead of exiting: 0 on success, 1 on usage errors, 2 on data errors.
Results go to stdout (or --out); diagnostics go to stderr.
"""
import os
import sys

SUBCOMMANDS = ('gen', 'fit', 'richness', 'bound', 'mc')

USAGE = (
    "usage: manage.py {gen,fit,richness,bound,mc} [options]\n"
    "Run 'manage.py help <subcommand>' for the options of one subcommand.\n"
)


def cli_main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        sys.stderr.write(USAGE)
        return 1

    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'CorrentropyService.settings')
    import django
    from django.core.management import call_command
    from django.core.management.base import CommandError

    django.setup()
    try:
        call_command(argv[0], *argv[1:])
    except CommandError as exc:
        sys.stderr.write(f"{argv[0]}: {exc}\n")
        return exc.returncode
    except SystemExit as exc:
        # argparse exits after printing --help
        return exc.code if isinstance(exc.code, int) else 0
    return 0
