"""Build script.

The compiled kernel (superflag.kernels._speedups) is optional: when Cython or
a C compiler is unavailable the package installs with the pure-Python kernel
only and everything keeps working.  Set SUPERFLAG_NO_EXT=1 to skip the
extension on purpose.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SUPERFLAG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "superflag.kernels._speedups",
                    ["src/superflag/kernels/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
