from django.apps import AppConfig


class AbgroupsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'abgroups'
    verbose_name = "Finitely generated abelian groups"
