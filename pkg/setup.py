from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "moving_well._kernels._cn_core",
                ["src/moving_well/_kernels/_cn_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
        },
    )
except ImportError:
    # No Cython available: install pure-Python only; the time stepper falls
    # back to the interpreted kernel selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
