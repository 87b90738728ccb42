from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class DiffusionsConfig(AppConfig):
    name = "core.applications.diffusions"
    verbose_name = _("Diffusions")
