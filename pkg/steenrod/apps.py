from django.apps import AppConfig


class SteenrodConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'steenrod'
    verbose_name = "Steenrod operations"
