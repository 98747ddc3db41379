import os
from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='django-insecure-npverify-local-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=lambda v: [s.strip() for s in v.split(',')])

# Application definition
INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third party apps
    'rest_framework',

    # Local apps
    'core',
    'rules',
    'spath',
    'verify',
    'lift',
    'cli',
]

# Database
# Nothing is persisted; the default database only satisfies the framework.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('NPV_DB_PATH', default=str(BASE_DIR / 'npverify.sqlite3')),
    },
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework settings (serializers and the JSON renderer only)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}

# Verification caps and defaults
NPV_MAX_ALTERNATIVES = config('NPV_MAX_ALTERNATIVES', default=6, cast=int)
NPV_MAX_PROFILES = config('NPV_MAX_PROFILES', default=10_000_000, cast=int)
NPV_SOLUTION_CAP = config('NPV_SOLUTION_CAP', default=64, cast=int)
NPV_TIME_LIMIT = config('NPV_TIME_LIMIT', default=600.0, cast=float)
NPV_SEED = config('NPV_SEED', default=0, cast=int)
NPV_SAMPLE_PAIRS = config('NPV_SAMPLE_PAIRS', default=200, cast=int)

# Minutes-scale runs: (4,3) solver sweeps and m=5 lifts
NPV_STRETCH = config('NPV_STRETCH', default=False, cast=bool)

# Logging
LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'npverify.log',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}

# Create logs directory if it doesn't exist
os.makedirs(BASE_DIR / 'logs', exist_ok=True)
