import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from Regression.conf import get_defaults, load_config_file, resolve_options
from Regression.exceptions import InvalidConfig, RegressionError

logger = logging.getLogger(__name__)

USAGE_ERROR = 1
DATA_ERROR = 2


class RegressionCommand(BaseCommand):
    """
    Shared plumbing for the toolkit's commands: --config/--out, option
    resolution against the CORRENTROPY settings sections, error translation to
    exit codes, and writing the result to stdout or a file.
    """
    sections = ()

    def add_arguments(self, parser):
        self._option_names = ['out']
        parser.add_argument('--config', default=None, help='Flat JSON file with option defaults.')
        parser.add_argument('--out', default=None, help='Write the result here instead of stdout.')
        self.add_options(parser)

    def add_options(self, parser):
        pass

    def option(self, parser, *flags, **kwargs):
        kwargs.setdefault('default', None)
        action = parser.add_argument(*flags, **kwargs)
        if action.dest not in self._option_names:
            self._option_names.append(action.dest)
        return action

    def run(self, options):
        raise NotImplementedError('subclasses of RegressionCommand must provide a run() method')

    def handle(self, *args, **options):
        try:
            config = load_config_file(options['config']) if options.get('config') else {}
            defaults = {}
            for section in self.sections:
                defaults.update(get_defaults(section))
            resolved = resolve_options(options, self._option_names, config, defaults)
            output = self.run(resolved)
        except InvalidConfig as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc
        except (RegressionError, OSError, ValueError) as exc:
            logger.error("%s failed: %s", self.__module__.rsplit('.', 1)[-1], exc)
            raise CommandError(str(exc), returncode=DATA_ERROR) from exc
        self.emit(output, resolved.get('out'))

    def emit(self, output, out):
        if output is None:
            return
        if out:
            Path(out).write_text(output, encoding='utf8')
            logger.info("wrote %s", out)
        else:
            self.stdout.write(output, ending='')


def require(options, *names):
    missing = [name for name in names if options.get(name) is None]
    if missing:
        flags = ', '.join('--' + name.replace('_', '-') for name in missing)
        raise InvalidConfig(f"Missing required option(s): {flags}.")
