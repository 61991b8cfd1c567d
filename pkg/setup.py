from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("pottszero.kernel._speedups", ["src/pottszero/kernel/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    # Pure-python kernel is used when Cython is unavailable.
    pass

setup(ext_modules=ext_modules)
