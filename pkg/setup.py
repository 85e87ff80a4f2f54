from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: if Cython (or a
# C compiler) is unavailable the package falls back to the pure-numpy kernels
# at import time.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "torusdamp._kernels",
                ["src/torusdamp/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
