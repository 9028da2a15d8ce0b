"""Build script for the optional compiled kernel.

The package is fully functional without the extension; the simulation core
falls back to the pure-Python twin when the build is unavailable. Set
TRIELECT_NO_EXT=1 to skip the extension on purpose.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TRIELECT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "trielect._kernel_c",
                    ["src/trielect/_kernel_c.pyx"],
                    language="c++",
                    extra_compile_args=["-O2", "-std=c++17"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
