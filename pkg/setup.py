"""Build hook for the compiled placement kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so the build degrades gracefully
when Cython is unavailable or RECTCARTO_SKIP_EXT is set.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "rectcarto._mp2_kernel",
        ["src/rectcarto/_mp2_kernel.pyx"],
        # no -ffast-math: the pure-Python fallback must stay bit-identical
        extra_compile_args=["-O3"],
    )
]

if cythonize is not None and not os.environ.get("RECTCARTO_SKIP_EXT"):
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    ext_modules = []

setup(ext_modules=ext_modules)
