from app.core.config import Settings, get_settings
from app.core.exceptions import GFShockError, ConfigError

# What gets exported when someone does: from app.core import *
__all__ = ["Settings", "get_settings", "GFShockError", "ConfigError"]
