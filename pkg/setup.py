"""Build the optional Cython neighbor-count kernels.

The package imports and works without the extension; set
``TRASOD_NO_EXT=1`` to skip compiling it.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("TRASOD_NO_EXT"):
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "trasod._kernels",
                ["src/trasod/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
