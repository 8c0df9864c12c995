from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "scentropy._core",
                ["src/scentropy/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: install pure Python only, the solver falls back automatically.
    ext_modules = []

setup(ext_modules=ext_modules)
