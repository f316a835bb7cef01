"""Mod-p matrix kernels: compiled extension when built, pure Python otherwise.

Set DGEXACT_PURE=1 to force the pure backend (useful for the benchmark
and for exercising the fallback in tests).
"""

import os

if os.environ.get("DGEXACT_PURE") == "1":
    from ._modp_py import mul_mod, rref_mod

    BACKEND = "pure"
else:
    try:
        from ._modp import mul_mod, rref_mod  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from ._modp_py import mul_mod, rref_mod

        BACKEND = "pure"

__all__ = ["mul_mod", "rref_mod", "BACKEND"]
