"""
Django settings for CorrentropyService project.

The project has no web surface: it exists to host the Regression app, its
management commands (gen, fit, richness, bound, mc) and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

from pathlib import Path
import os


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Only used by django internals (signing); no sessions or users exist.
SECRET_KEY = os.environ.get('CORRENTROPY_SECRET_KEY', 'correntropy-local-only')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'Regression',
]

# No persistence: datasets and results live in CSV/JSON files.
DATABASES = {}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

USE_TZ = True

TIME_ZONE = 'UTC'


# Toolkit defaults. Management commands read these through Regression.conf;
# a --config file overrides them and command-line flags override both.
CORRENTROPY = {
    'DATAGEN': {
        'theta': [0.5, -1.0, 0.2],
        'n_samples': 300,
        'epsilon': 0.05,
        'outlier_frac': 0.1,
        'outlier_mean': 50.0,
        'outlier_sd': 10.0,
        'eiv_sd': 0.0,
        'seed': 0,
    },
    'ESTIMATOR': {
        'max_iter': 200,
        'tol': 1e-10,
        'multistart': 4,
        'init': 'LAD',
        'lad_solver': 'highs',
        'seed': 0,
    },
    'FIT': {
        'method': 'mce',
        'p': 2.0,
        'gamma': 0.25,
        'alpha': 0.6,
        'rho_mode': 'certified',
    },
    'BOUND': {
        'rx': 1.0,
        'rho_mode': 'certified',
    },
    'RICHNESS': {
        'n_samples': 10000,
        'n_starts': 8,
        'sigma_method': 'subgradient',
        'sigma_mode': 'certified',
        'alpha': 0.6,
        'seed': 0,
        'format': 'json',
    },
    'HARNESS': {
        'trials': 100,
        'workers': 1,
        'seed': 2024,
        'fig1_epsilons': [0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6],
        'fig1_n_samples': 300,
        'fig1_outlier_frac': 0.5,
        'fig2_alphas': [0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        'fig2_designs': [[2, 200], [3, 600]],
        'fig3_epsilons': [0.1, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6],
        'fig4_n_grid': [200, 500, 1000, 2000],
        'full_fig4_n_grid': [500, 1000, 2000, 3000, 4000, 5000],
        'full_fig2_designs': [[2, 200], [3, 6000]],
        'full_trials': 1000,
    },
    'CSV_FLOAT_FORMAT': '%.17g',
}


# Log level from the environment (default: INFO)
LOG_LEVEL = os.environ.get('CORRENTROPY_LOG_LEVEL', 'INFO')

# Log file path (environment variable or default path)
LOG_FILE_PATH = os.environ.get('CORRENTROPY_LOG_FILE', os.path.join(BASE_DIR, 'logs', 'correntropy.log'))

# Create the log directory if it does not exist
os.makedirs(os.path.dirname(LOG_FILE_PATH), exist_ok=True)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '[{asctime}] {levelname} {name} {message}',
            'style': '{',
            'datefmt': '%Y-%m-%d %H:%M:%S',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': LOG_LEVEL,
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
        'file': {
            'level': 'DEBUG',  # keep everything in the log file
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': LOG_FILE_PATH,
            'maxBytes': 5 * 1024 * 1024,  # 5 MB per file
            'backupCount': 5,
            'formatter': 'verbose',
            'encoding': 'utf8',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': LOG_LEVEL,
            'propagate': True,
        },
        'Regression': {
            'handlers': ['console', 'file'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
