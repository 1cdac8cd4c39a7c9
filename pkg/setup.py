from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("orthocode._ckernels", ["src/orthocode/_ckernels.pyx"])],
        language_level=3,
    )
except ImportError:
    # Pure-python kernels are used when the extension is unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)
