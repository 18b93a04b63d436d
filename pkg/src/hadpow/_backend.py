"""Pick the compiled kernels when they were built, else the Python ones."""

try:
    from hadpow import _ckernels as kernels

    BACKEND = "cython"
except ImportError:  # extension not built
    from hadpow import _pykernels as kernels

    BACKEND = "python"

matmul = kernels.matmul
power_scan = kernels.power_scan

__all__ = ["BACKEND", "kernels", "matmul", "power_scan"]
