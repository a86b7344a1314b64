"""HTTP service and the request models / handlers it shares with the CLI."""

from .app import create_app
from .jobs import JobStore

__all__ = ["create_app", "JobStore"]
