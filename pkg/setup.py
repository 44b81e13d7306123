"""
Packaging for tioa-kit.
"""

import pathlib
import re

from setuptools import setup, find_packages

here = pathlib.Path(__file__).parent.resolve()

# Read the version without importing the package, which needs numpy:

version = re.search(r"__version__ = '([^']+)'", (here / 'tioakit' / '__init__.py').read_text(encoding='utf-8')).group(1)

setup(
    name='tioa-kit',
    version=version,
    description='Specification theory for timed I/O automata: refinement, consistency, conjunction, composition and quotient',
    long_description=(here / 'README.md').read_text(encoding='utf-8'),
    long_description_content_type='text/markdown',
    author='tioa-kit developers',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3 :: Only',
    ],
    keywords='timed automata, interface theories, refinement, verification',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8, <4',
    install_requires=['numpy>=1.20', 'networkx>=2.5'],
    extras_require={
        'tests': ['pytest>=6.0'],
    },
    entry_points={
        'console_scripts': [
            'tioa-kit=tioakit.cli:main',
        ],
    },
)
