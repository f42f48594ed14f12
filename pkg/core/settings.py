"""
Django settings for the question-answering project.

The project has no web surface and no database: Django provides the settings
layer, the management commands (`ask`, `explain`) and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent
CORPUS_DIR = BASE_DIR / 'qa' / 'corpus'


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-qa-local-only')

DEBUG = os.environ.get('DJANGO_DEBUG', '') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'qa.apps.QaConfig',
]

# Facts live in files; nothing is stored relationally
DATABASES = {}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Question answering

QA_FACTS_PATH = os.environ.get('QA_FACTS_PATH', str(CORPUS_DIR / 'seastory.facts'))
QA_LEXICON_PATH = os.environ.get('QA_LEXICON_PATH', str(CORPUS_DIR / 'english.lex'))
QA_OUTPUT_MODE = os.environ.get('QA_OUTPUT_MODE', 'plain')
QA_TRACE = os.environ.get('QA_TRACE', '').lower() in ('1', 'true', 'yes')
QA_PROMPT = '? '
QA_LOG_LEVEL = os.environ.get('QA_LOG_LEVEL', 'WARNING')


# Logging: JSON lines on stderr; answers go to stdout

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'json': {
            '()': 'pythonjsonlogger.json.JsonFormatter',
            'fmt': '%(asctime)s %(levelname)s %(name)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'json',
        },
    },
    'loggers': {
        'qa': {
            'handlers': ['console'],
            'level': QA_LOG_LEVEL,
            'propagate': False,
        },
    },
}
