from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "phasetrain._kernels",
        ["src/phasetrain/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
