"""HTTP service exposing the harness."""
from .app import app, create_app

__all__ = ["app", "create_app"]
