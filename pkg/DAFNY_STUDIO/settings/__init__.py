from DAFNY_STUDIO.settings.base import *

try:
    from DAFNY_STUDIO.settings.local import *
except ImportError:
    pass
