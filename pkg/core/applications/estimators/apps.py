from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class EstimatorsConfig(AppConfig):
    name = "core.applications.estimators"
    verbose_name = _("Estimators")
