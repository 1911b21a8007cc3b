"""Builds the optional compiled sweep kernel.

The package works without the extension: costeval._kernel falls back to a
vectorized numpy implementation when the compiled module is absent.  Set
COSTEVAL_SKIP_EXT=1 to install without attempting the build.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("COSTEVAL_SKIP_EXT"):
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext = Extension(
        "costeval._kernel._sweep",
        ["src/costeval/_kernel/_sweep.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
