import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'npverify.settings')
django.setup()
