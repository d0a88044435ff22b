"""Kernel backend selection: compiled extension if built, numpy fallback otherwise.

Set ZETALAB_PURE=1 to force the fallback (used by the parity tests and the
benchmark).  Both backends are bit-identical by contract.
"""

from __future__ import annotations

import os

from . import _sieve_py

if os.environ.get("ZETALAB_PURE") == "1":
    _impl = _sieve_py
else:
    try:
        from . import _sieve_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _sieve_py

BACKEND: str = _impl.BACKEND
mark_odd_segment = _impl.mark_odd_segment
odd_base_primes = _sieve_py.odd_base_primes
