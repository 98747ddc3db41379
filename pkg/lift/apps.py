from django.apps import AppConfig


class LiftConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'lift'
    verbose_name = 'Clone lifting and alternative merging'
