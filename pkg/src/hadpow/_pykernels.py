"""Pure-Python hot kernels; used when the compiled ``_ckernels`` is unavailable.

Matrices are flat row-major lists of Python ints.  ``p == 0`` means exact
integer arithmetic, otherwise everything is reduced mod ``p``.
"""

from operator import mul


def matmul(a, b, n, k, m, p=0):
    """(n x k) @ (k x m) on flat lists."""
    cols = [b[j::m] for j in range(m)]
    out = []
    for i in range(n):
        row = a[i * k:(i + 1) * k]
        if p:
            out.extend(sum(map(mul, row, col)) % p for col in cols)
        else:
            out.extend(sum(map(mul, row, col)) for col in cols)
    return out


def power_scan(a, n, r_max, p=0):
    """First r in 2..r_max where A^r differs from the entrywise r-th power.

    Returns ``(r, flat_index, lhs, rhs)`` for the first mismatch in
    row-major order, or ``None``.  Both powers are built incrementally.
    """
    power = list(a)
    had = list(a)
    for r in range(2, r_max + 1):
        power = matmul(power, a, n, n, n, p)
        if p:
            had = [h * x % p for h, x in zip(had, a)]
        else:
            had = [h * x for h, x in zip(had, a)]
        if power != had:
            for idx, (lhs, rhs) in enumerate(zip(power, had)):
                if lhs != rhs:
                    return r, idx, lhs, rhs
    return None
