"""Build script: compiles the optional C kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile only degrades performance, never installs a
broken package.
"""

import sys

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy as np
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "mxv._kernels",
        ["src/mxv/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # keep float semantics identical to the NumPy fallback: no FMA contraction
        extra_compile_args=["-O3", "-ffp-contract=off"] if sys.platform != "win32" else ["/O2"],
    )
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
