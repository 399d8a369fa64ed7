from .kernels import kernel, kernel_spec

__all__ = ["kernel", "kernel_spec"]
