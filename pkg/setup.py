"""Build hooks for the optional compiled kernels.

The Cython extension is a pure speedup; if Cython or a C compiler is
missing the package installs anyway and falls back to the numpy kernels.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/covarmedium/_kernels/_fast.pyx"],
        compiler_directives={"language_level": "3"},
    )
    include_dirs = [numpy.get_include()]
    for ext in ext_modules:
        ext.include_dirs = include_dirs
except ImportError:
    pass

setup(ext_modules=ext_modules)
