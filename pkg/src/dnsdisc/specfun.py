"""Scalar special functions in log space.

Factorials, binomials and generalized Laguerre polynomials with integer
parameter. Products of factorially large terms are meant to be assembled as
logarithms and exponentiated last.
"""

import math

import numpy as np

_EXACT_LIMIT = 20
_LOG_FACTORIALS = [math.log(math.factorial(n)) for n in range(_EXACT_LIMIT + 1)]


def log_factorial(n):
    """Return ln(n!).

    Exact (integer factorial, then one log) for ``n <= 20``; ``lgamma``
    beyond that.
    """
    n = int(n)
    if n < 0:
        raise ValueError(f"log_factorial needs n >= 0, got {n}")
    if n <= _EXACT_LIMIT:
        return _LOG_FACTORIALS[n]
    return math.lgamma(n + 1.0)


def log_factorial_array(n):
    """Vectorized :func:`log_factorial` over an integer array."""
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("log_factorial_array needs non-negative entries")
    flat = np.fromiter((log_factorial(v) for v in n.ravel()), dtype=float, count=n.size)
    return flat.reshape(n.shape)


def log_binomial(n, k):
    """Return ln C(n, k) for ``0 <= k <= n``.

    The smaller of ``k`` and ``n - k`` is always subtracted first, so the
    result is bitwise symmetric under ``k -> n - k``.
    """
    n, k = int(n), int(k)
    if k < 0 or n < 0:
        raise ValueError(f"log_binomial needs non-negative arguments, got ({n}, {k})")
    if k > n:
        raise ValueError(f"log_binomial needs k <= n, got ({n}, {k})")
    lo, hi = min(k, n - k), max(k, n - k)
    return log_factorial(n) - log_factorial(lo) - log_factorial(hi)


def _recurrence(n, a, x):
    # (j+1) L_{j+1} = (2j + 1 + a - x) L_j - (j + a) L_{j-1}
    prev = np.ones(np.broadcast(a, x).shape)
    if n == 0:
        return prev
    cur = a + 1.0 - x + np.zeros_like(prev)
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + a - x) * cur - (j + a) * prev) / (j + 1)
    return cur


def laguerre(n, a, x):
    """Generalized Laguerre polynomial L_n^{(a)}(x) for integer ``a``.

    Parameters
    ----------
    n : int
        Order, ``n >= 0``.
    a : int
        Integer parameter of either sign.
    x : float

    Returns
    -------
    float

    Notes
    -----
    Non-negative ``a`` uses the forward three-term recurrence in ``n``. For
    ``a = -m`` with ``m <= n`` the reflection

        L_n^{(-m)}(x) = (-x)^m (n-m)!/n! L_{n-m}^{(m)}(x)

    maps the problem back to a non-negative parameter. ``a < -n`` falls back
    to the recurrence, which is a polynomial identity in ``a``.
    """
    n, a = int(n), int(a)
    if n < 0:
        raise ValueError(f"laguerre order must be >= 0, got {n}")
    x = float(x)
    if a >= 0 or -a > n:
        return float(_recurrence(n, float(a), x))
    m = -a
    if x == 0.0:
        return 0.0
    scale = math.exp(log_factorial(n - m) - log_factorial(n))
    return (-x) ** m * scale * float(_recurrence(n - m, float(m), x))


def laguerre_table(n_max, a_max, x):
    """Table ``T[p, a] = L_p^{(a)}(x)`` for ``0 <= p <= n_max``, ``0 <= a <= a_max``.

    One recurrence sweep in ``p``, vectorized over the parameter.
    """
    if n_max < 0 or a_max < 0:
        raise ValueError("laguerre_table needs non-negative sizes")
    a = np.arange(a_max + 1, dtype=float)
    table = np.empty((n_max + 1, a_max + 1))
    table[0] = 1.0
    if n_max >= 1:
        table[1] = a + 1.0 - x
    for j in range(1, n_max):
        table[j + 1] = ((2 * j + 1 + a - x) * table[j] - (j + a) * table[j - 1]) / (j + 1)
    return table
