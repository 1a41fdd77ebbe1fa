"""
meddpy

Maximum-entropy differential dynamic programming for Python
"""

# Always prefer setuptools over distutils
from setuptools import setup, find_packages
# To use a consistent encoding
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='meddpy',

    # Versions should comply with PEP440.
    version='0.1.0',

    description='Maximum-entropy differential dynamic programming',
    long_description=long_description,

    license='BSD 3-Clause License',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 3 - Alpha',

        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',

        'License :: OSI Approved :: BSD License',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],

    keywords=['trajectory optimization', 'differential dynamic programming',
              'maximum entropy', 'Tsallis entropy'],

    packages=find_packages(exclude=['contrib', 'docs', 'tests', 'samples',
                                    'examples', 'examples.*']),

    # List run-time dependencies here.  These will be installed by pip when
    # your project is installed.
    install_requires=['numpy', 'scipy', 'sympy', 'PyYAML', 'pytz'],

    # List additional groups of dependencies here. You can install these
    # using the following syntax, for example:
    # $ pip install -e .[dev,test]
    extras_require={
        'dev': ['check-manifest'],
        'test': ['pytest', 'mpmath'],
    },

    # Shipped experiment files
    data_files=[('scenarios', ['scenarios/car2d.yaml',
                               'scenarios/quadrotor.yaml'])],

    entry_points={
        'console_scripts': [
            'meddpy-bench=meddpy.bench.cli:main',
        ],
    },
)
