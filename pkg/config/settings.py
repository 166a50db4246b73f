"""
Django settings for the twisted Morava K-theory project.

Generated by 'django-admin startproject' using Django 5.2.3 and trimmed to
what a batch computation project needs: no HTTP surface, a SQLite database
for the catalog index and run records, and a file-based cache for results.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
"""
import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def env_flag(name, default):
    """Read a boolean flag from the environment ('1', 'true', 'yes', 'on')."""
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in {'1', 'true', 'yes', 'on'}


# SECURITY WARNING: nothing is served, but Django still wants a key.
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'morava-local-only-key')

DEBUG = env_flag('DJANGO_DEBUG', False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'django_filters',
    'graded',
    'hopf_modules',
    'catalog',
    'steenrod',
    'ahss',
    'uct',
    'abgroups',
    'runs',
]

MIDDLEWARE = []


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('MORAVA_DATABASE', BASE_DIR / 'db.sqlite3'),
    }
}


# Caches
# The 'runs' alias holds rendered command output keyed by content hash.
# FileBasedCache writes through a temporary file and renames it into place.

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
    },
    'runs': {
        'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
        'LOCATION': os.environ.get('MORAVA_CACHE_DIR', str(BASE_DIR / '.morava-cache')),
        'TIMEOUT': None,
        'OPTIONS': {'MAX_ENTRIES': 10000},
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
# One console handler; each app logs under its own name.

LOG_LEVEL = os.environ.get('MORAVA_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('graded', 'hopf_modules', 'catalog', 'steenrod', 'ahss', 'uct', 'abgroups', 'runs')
    },
}


# Project settings

MORAVA = {
    'ENGINE_VERSION': '1',
    'CATALOG_DIR': os.environ.get('MORAVA_CATALOG_DIR', str(BASE_DIR / 'catalog' / 'spaces')),
    'DEFAULT_TRUNCATION': int(os.environ.get('MORAVA_DEFAULT_TRUNCATION', '2')),
    'RECORD_RUNS': env_flag('MORAVA_RECORD_RUNS', True),
    'CACHE_ALIAS': 'runs',
}
