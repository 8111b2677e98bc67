"""
Command-line front end for ratlam.
"""

from .main import Invocation, OutputFormat, Subcommand, cli, format_tables, main, run

__all__ = ['Invocation', 'OutputFormat', 'Subcommand', 'cli', 'format_tables', 'main', 'run']
