"""
Operation plugins: ways of giving the table of a signature symbol in D.
"""

from .base_operation import BaseOperation

__all__ = ['BaseOperation']
