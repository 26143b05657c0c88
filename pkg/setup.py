"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-numpy fallback is selected at
import time), so any failure here is downgraded to a warning.
"""

import warnings

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "phasekick.kernels._core",
                ["src/phasekick/kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:  # pragma: no cover - build environment without Cython
    warnings.warn("Cython not available; building without the compiled kernel core")

setup(ext_modules=ext_modules)
