"""
Django settings for the LVX experiment toolkit.

The project has no web surface and no database; Django provides the settings
layer, the app registry and the management command runner.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get("LVX_SECRET_KEY", "lvx-insecure-local-key")

DEBUG = os.environ.get("LVX_DEBUG", "").lower() in ("true", "1", "yes")

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    "lvx",
    "nn",
    "networks",
    "tabular",
    "training",
    "reports",
    "experiments",
]

# No database is used; experiment artifacts are plain files.
DATABASES = {}

TIME_ZONE = "UTC"

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, "") else default


# Experiment defaults. CLI flags and config files override these.
LVX = {
    "SEED": _env_int("LVX_SEED", 0),
    "K": 10,
    "AE_EPOCHS": 50,
    "CLF_EPOCHS": 20,
    "LEARNING_RATE": 0.001,
    "BATCH_SIZE": 256,
    "EXPANSION_DIM": 1024,
    "EXPANSION_SWEEP": [128, 256, 512, 1024],
    "DROPOUT_RATE": 0.5,
    "JOBS": _env_int("LVX_JOBS", 1),
    "OUTPUT_DIR": os.environ.get("LVX_OUTPUT_DIR", "runs"),
    "CHECKPOINT_VERSION": 1,
}

LOG_LEVEL = os.environ.get("LVX_LOG_LEVEL", "INFO").upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in INSTALLED_APPS
    },
}

# Celery Configuration Settings
CELERY_BROKER_URL = os.environ.get('LVX_CELERY_BROKER_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = CELERY_BROKER_URL
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE

# Run tasks in-process unless a broker is explicitly enabled. In eager mode
# `--jobs` is served by a local thread pool instead.
CELERY_TASK_ALWAYS_EAGER = os.environ.get('LVX_CELERY_EAGER', 'true').lower() in ('true', '1', 'yes')
CELERY_TASK_EAGER_PROPAGATES = True
