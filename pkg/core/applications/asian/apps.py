from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class AsianConfig(AppConfig):
    name = "core.applications.asian"
    verbose_name = _("Asian options")
