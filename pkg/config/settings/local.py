from .base import *  # noqa: F403
from .base import LOGGING
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = True
# https://docs.djangoproject.com/en/dev/ref/settings/#secret-key
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="UwX2kyLqy5lki4a4quSIMrHKTtSHaqxC7l5KP24USL9Uolq3kU9YTY1oHBjxdgs9",
)

# LOGGING
# ------------------------------------------------------------------------------
# Per-run estimator lines (levels, sample counts, elapsed time).
LOGGING["loggers"]["core.applications"]["level"] = env("ROMBERG_LOG_LEVEL", default="DEBUG")

# Celery
# ------------------------------------------------------------------------------
# https://docs.celeryq.dev/en/stable/userguide/configuration.html#task-eager-propagates
CELERY_TASK_EAGER_PROPAGATES = True
# Your stuff...
# ------------------------------------------------------------------------------
