# Builds the optional compiled kernel module. If Cython or a C compiler is
# unavailable the install still succeeds and the package falls back to the
# pure-Python kernels at import time.

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "collatz_clusters._kernels",
                ["src/collatz_clusters/_kernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
