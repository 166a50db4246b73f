from django.apps import AppConfig


class UctConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'uct'
    verbose_name = "Universal coefficient computations"
