"""Build the optional Cython kernels; the package falls back to numpy without them."""

import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HOPFIELD_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "hopfield_lift._kernels",
                    ["src/hopfield_lift/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
