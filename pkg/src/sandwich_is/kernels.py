"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when it
cannot be imported or when the environment sets ``SANDWICH_IS_PURE=1``.
``BACKEND`` names the active choice.
"""

import os

from . import _kernels_py

if os.environ.get("SANDWICH_IS_PURE") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

product_table = _impl.product_table
check_morphism = _impl.check_morphism
pair_codes = _impl.pair_codes
row_hashes = _impl.row_hashes
