#!/usr/bin/env python
import sys

from setuptools import setup, find_packages

PROJECT = "wh4"
VERSION = "0.1.0"
LICENSE = "GPLv3+"

with open("DESCRIPTION.md", "r") as fh:
    LONG_DESCRIPTION = fh.read()

install_requires = [
    "click>=7.0",
    "tqdm>=4.30.0",
    "numpy>=1.17",
    "mpmath>=1.1.0",
    "sympy>=1.5",
]


tests_require = ['pytest>=4.4.1', 'pytest-cov>=2.7.1']
needs_pytest = {'pytest', 'test', 'ptr'}.intersection(sys.argv)
setup_requires = ['pytest-runner'] if needs_pytest else []
packages = find_packages('src')

setup(
    name=PROJECT,
    version=VERSION,
    license=LICENSE,
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    description="wh4 builds canonical bases of weakly holomorphic modular forms of level 4, checks their coefficient identities and counts their zeros on the boundary arc.",
    platforms=["Any"],
    scripts=[],
    provides=[],
    python_requires=">=3.8",
    install_requires=install_requires,
    setup_requires=setup_requires,
    tests_require=tests_require,
    namespace_packages=[],
    packages=packages,
    package_dir={'': 'src'},
    package_data={'wh4.cli': ['wh4.conf']},
    include_package_data=True,
    entry_points={
        "console_scripts": [
            "wh4 = wh4.__main__:cli",
        ]
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python :: 3',
    ],
    keywords='modular-forms number-theory interval-arithmetic research',
    zip_safe=False,
)
