from django.apps import AppConfig


class HopfModulesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hopf_modules'
    verbose_name = "Modules over Hopf algebras"
