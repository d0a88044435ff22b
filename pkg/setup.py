"""Build script: compiles the sieve kernel extension when Cython is available.

The package works without the extension (a pure numpy fallback is selected at
import time), so the build degrades gracefully on machines without a C
toolchain.  Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [
            Extension(
                "zetalab._sieve_c",
                ["src/zetalab/_sieve_c.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
