"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a numpy/scipy fallback is selected
at import time), so any failure to build it is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "gammamoments._kernels",
                ["src/gammamoments/_kernels.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - environment without cython/compiler
    print(f"gammamoments: skipping Cython extension ({exc}); "
          "pure-python kernels will be used")

setup(ext_modules=ext_modules)
