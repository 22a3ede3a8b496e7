"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``OGZKIT_PURE=1`` to force the pure kernel (the benchmark suite uses
this to compare the two).  ``KERNEL_NAME`` reports which one is active.
"""

import os

if os.environ.get("OGZKIT_PURE"):
    from . import _poly_py as _impl

    KERNEL_NAME = "pure"
else:
    try:
        from . import _poly_cy as _impl  # type: ignore[no-redef]

        KERNEL_NAME = "compiled"
    except ImportError:
        from . import _poly_py as _impl  # type: ignore[no-redef]

        KERNEL_NAME = "pure"

grlex_key = _impl.grlex_key
p_add = _impl.p_add
p_neg = _impl.p_neg
p_sub = _impl.p_sub
p_mul = _impl.p_mul
p_mul_term = _impl.p_mul_term
p_mul_scalar = _impl.p_mul_scalar
p_lead = _impl.p_lead
p_total_degree = _impl.p_total_degree
p_deg_in = _impl.p_deg_in
p_divmod = _impl.p_divmod
p_eval_int = _impl.p_eval_int
