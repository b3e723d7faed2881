"""Build the optional compiled kernels; the package works without them."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: pure-Python kernels only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("arthur_phi._kernels", ["src/arthur_phi/_kernels.pyx"], optional=True)],
        compiler_directives={"language_level": 3},
        quiet=True,
    )

setup(ext_modules=ext_modules)
