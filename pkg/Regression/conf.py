"""
Option resolution for the management commands.

Defaults come from the CORRENTROPY settings dict, an optional flat JSON file
(--config) overrides them, and explicit command-line flags override both.
"""
import json
import logging
from pathlib import Path

from django.conf import settings

from Regression.exceptions import InvalidConfig

logger = logging.getLogger(__name__)


def get_defaults(section):
    try:
        return dict(settings.CORRENTROPY[section])
    except KeyError:
        raise InvalidConfig(f"No CORRENTROPY['{section}'] section in settings.")


def load_config_file(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf8"))
    except FileNotFoundError:
        raise InvalidConfig(f"Config file {path} does not exist.")
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"Config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise InvalidConfig(f"Config file {path} must hold a flat key/value object.")
    for key, value in data.items():
        if isinstance(value, dict):
            raise InvalidConfig(f"Config key '{key}' is nested; config files are flat.")
    logger.debug("loaded %d config keys from %s", len(data), path)
    return data


def resolve_options(options, names, config=None, defaults=None):
    """
    Merge one command's options. `names` are the option destinations the
    command declares; config keys outside that set are rejected.
    """
    config = config or {}
    defaults = defaults or {}
    unknown = sorted(set(config) - set(names))
    if unknown:
        raise InvalidConfig(f"Unknown config keys: {', '.join(unknown)}.")
    resolved = {}
    for name in names:
        if options.get(name) is not None:
            resolved[name] = options[name]
        elif name in config:
            resolved[name] = config[name]
        else:
            resolved[name] = defaults.get(name)
    return resolved


def float_list(value):
    """'0.5,-1,0.2' or [0.5, -1, 0.2] -> tuple of floats."""
    if value is None:
        return None
    if isinstance(value, str):
        parts = [part for part in value.split(",") if part.strip()]
    else:
        parts = list(value)
    try:
        return tuple(float(part) for part in parts)
    except (TypeError, ValueError):
        raise InvalidConfig(f"Expected a comma-separated list of numbers, got {value!r}.")
