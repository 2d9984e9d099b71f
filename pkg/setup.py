"""Build script: compiles the Cython kernel extension when a toolchain is
available.  The package falls back to the pure-numpy kernels at import time
if the extension is missing, so a failed extension build is not fatal.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "uhvopt._kernels._fast",
                ["src/uhvopt/_kernels/_fast.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
