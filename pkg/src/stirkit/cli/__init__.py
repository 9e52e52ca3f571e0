"""Command-line interface and its expression language."""

from stirkit.cli.main import main

__all__ = ["main"]
