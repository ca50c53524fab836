"""Pick the compiled kernels when the extension was built, else pure Python."""

try:
    from . import _ckernels as kernels
except ImportError:  # extension not built
    from . import _pykernels as kernels

BACKEND = kernels.BACKEND
