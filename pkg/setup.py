from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernel is optional: when Cython (or a C compiler) is missing
# the package falls back to the pure-Python twin at import time.
# No -ffast-math: the kernel must stay bit-compatible with the fallback.
if cythonize is not None:
    ext_modules = cythonize(
        [Extension("latsec._kernel", ["src/latsec/_kernel.pyx"])],
        language_level="3",
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
