"""Build script: compiles the optional quadrature extension core.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so a failed Cython build is not
fatal for source installs.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "epskk._core._cykernels",
                sources=["src/epskk/_core/_cykernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
