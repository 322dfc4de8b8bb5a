#!/usr/bin/env python
# -*- coding: utf-8 -*-


import io
import os

from setuptools import find_packages, setup

NAME = "satsync"
DESCRIPTION = "Scale-free global synchronization of saturated discrete-time double integrators, written in JAX."
REQUIRES_PYTHON = ">=3.8.0"
VERSION = "0.1.0"

here = os.path.abspath(os.path.dirname(__file__))
REQUIRED = open(os.path.join(here, "requirements.txt")).read().splitlines()
EXTRAS = {"test": ["pytest", "scipy"]}

try:
    with io.open(os.path.join(here, "README.md"), encoding="utf-8") as f:
        long_description = "\n" + f.read()
except FileNotFoundError:
    long_description = DESCRIPTION


setup(
    name=NAME,
    version=VERSION,
    description=DESCRIPTION,
    long_description=long_description,
    long_description_content_type="text/markdown",
    python_requires=REQUIRES_PYTHON,
    packages=[package for package in find_packages() if package.startswith("satsync")],
    install_requires=REQUIRED,
    extras_require=EXTRAS,
    include_package_data=True,
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: Implementation :: CPython",
    ],
    entry_points={"console_scripts": ["satsync=satsync.cli.main:main"]},
)
