"""Hot-kernel backend selection.

Prefers the compiled Cython extension and falls back to the pure-numpy
implementation when the extension was not built.  Set the environment
variable COVARMEDIUM_PURE=1 to force the numpy path.
"""

import os

if os.environ.get("COVARMEDIUM_PURE") == "1":
    from ._slow import BACKEND, fd_wave_snapshots, mode_sum_batch
else:
    try:
        from ._fast import BACKEND, fd_wave_snapshots, mode_sum_batch
    except ImportError:
        from ._slow import BACKEND, fd_wave_snapshots, mode_sum_batch

__all__ = ["BACKEND", "mode_sum_batch", "fd_wave_snapshots"]
