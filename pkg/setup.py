"""Builds the optional compiled kernel extension.

The package works without it (pure-Python fallback is selected at
import), so any build failure here downgrades to a warning.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cctvroute/kernels/_fast.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover
    print(f"warning: compiled kernels disabled ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
