from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("minclones._kernels.native", ["src/minclones/_kernels/native.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-Python fallback backend is selected at import when the
    # compiled kernels are unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)
