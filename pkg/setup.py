from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dgexact._kernels._modp",
                ["src/dgexact/_kernels/_modp.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython available: the package falls back to the pure-Python
    # kernels in dgexact._kernels._modp_py at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
