from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Source dist without Cython: fall back to the pure-python backend.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gapscope._jacobi",
                ["src/gapscope/_jacobi.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
