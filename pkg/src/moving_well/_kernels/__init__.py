"""Hot-loop kernels: compiled extension if available, interpreted otherwise."""

try:
    from ._cn_core import cn_evolve, cn_step

    BACKEND = "compiled"
except ImportError:  # extension not built on this platform
    from ._cn_fallback import cn_evolve, cn_step

    BACKEND = "python"

__all__ = ["cn_step", "cn_evolve", "BACKEND"]
