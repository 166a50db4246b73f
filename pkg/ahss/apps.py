from django.apps import AppConfig


class AhssConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'ahss'
    verbose_name = "Twisted Atiyah-Hirzebruch spectral sequence"
