#!/usr/bin/env python
"""Command-line utility: toolkit subcommands plus Django's administrative tasks."""
import os
import sys


def main():
    """Run a toolkit subcommand, or forward to Django (test, check, help, ...)."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'CorrentropyService.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    from Regression.cli import SUBCOMMANDS, cli_main

    if len(sys.argv) > 1 and sys.argv[1] in SUBCOMMANDS:
        sys.exit(cli_main(sys.argv[1:]))
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
