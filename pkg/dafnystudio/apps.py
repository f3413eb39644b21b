from django.apps import AppConfig


class DafnyStudioConfig(AppConfig):
    name = 'dafnystudio'
    verbose_name = 'Dafny annotation studio'

    def ready(self):
        from dafnystudio.logging import init_error_reporting
        init_error_reporting()
