"""
tioa-kit init file.
"""

# Import the necessary components:

from tioakit.classes.options import CheckOptions
from tioakit.model import load_models, parse_models
from tioakit.wrapper import TioaClient


# Define some metadata here:

__version__ = '0.1.0'
__author__ = 'tioa-kit developers'
