# Configuration file for the Sphinx documentation builder.
#
# For the full list of options, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import re
import sys

HERE = os.path.abspath(os.path.dirname(__file__))

sys.path.insert(0, os.path.abspath(os.path.join(HERE, '..', '..')))


# -- Project information -----------------------------------------------------

project = 'tioa-kit'
copyright = '2026, tioa-kit developers'
author = 'tioa-kit developers'

# Read the version without importing, autodoc imports lazily:

with open(os.path.join(HERE, '..', '..', 'tioakit', '__init__.py'), encoding='utf-8') as file:

    release = re.search(r"__version__ = '([^']+)'", file.read()).group(1)

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc'
]

templates_path = ['_templates']

exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'

# Set the master document:

master_doc = 'index'

html_theme_options = {'description': 'Checking timed I/O automata specifications'}

html_static_path = ['_static']
