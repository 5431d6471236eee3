"""
Command-line interface.

Available functions:
- main
- build_parser
- resolve_config
"""

from .main import RunConfig, build_parser, main, resolve_config

__all__ = ["RunConfig", "main", "build_parser", "resolve_config"]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
