"""Kernel selection: the compiled extension when built, pure Python otherwise.

Set LOGTOWER_PURE=1 to force the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("LOGTOWER_PURE", "") not in ("", "0"):
    from ._kernels import *  # noqa: F401,F403
else:
    try:
        from ._ckernels import *  # noqa: F401,F403
        BACKEND = "cython"
    except ImportError:
        from ._kernels import *  # noqa: F401,F403
