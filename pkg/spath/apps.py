from django.apps import AppConfig


class SpathConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'spath'
    verbose_name = 'S-paths inside NP(n,m)'
