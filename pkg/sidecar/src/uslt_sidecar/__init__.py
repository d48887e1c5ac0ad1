"""HTTP inference sidecar serving fill-mask candidates and masked-token loss."""

from .app import create_app
from .engine import ModelEngine

__version__ = "0.1.0"
