from setuptools import Extension, setup

# The compiled path-simulation kernel is optional: when Cython (or a C
# compiler) is unavailable the package falls back to the numpy implementation
# selected at import time in voctrl.simulate.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "voctrl._pathsim",
                ["src/voctrl/_pathsim.pyx"],
                extra_compile_args=["-O3"],
            )
        ]
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
