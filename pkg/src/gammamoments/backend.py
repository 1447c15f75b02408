"""Select the compiled kernel extension, falling back to numpy/scipy."""

try:
    from . import _kernels as _impl
except ImportError:  # extension not built
    from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME
ln_gamma_complex = _impl.ln_gamma_complex
k0_complex = _impl.k0_complex
