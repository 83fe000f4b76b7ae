"""Compiled single-pass loops shared by the public modules.

Every kernel works on raw float64 arrays; validation happens in the callers.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def utv_prefix(x, c):
    """Running UTV^c on ``[0, t_i]`` for every sample index ``i``.

    Fixed-fee trading recurrence: ``best_open`` is the best value of a position
    opened at some earlier sample, ``closed`` the best value with no position.
    """
    n = x.shape[0]
    out = np.empty(n)
    best_open = -x[0]
    closed = 0.0
    out[0] = 0.0
    for i in range(1, n):
        xi = x[i]
        cand = closed - xi
        if cand > best_open:
            best_open = cand
        cand = best_open + xi - c
        if cand > closed:
            closed = cand
        out[i] = closed
    return out


@njit(cache=True)
def utv_final(x, c):
    best_open = -x[0]
    closed = 0.0
    for i in range(1, x.shape[0]):
        xi = x[i]
        cand = closed - xi
        if cand > best_open:
            best_open = cand
        cand = best_open + xi - c
        if cand > closed:
            closed = cand
    return closed


@njit(cache=True)
def downcrossings(x, lower, upper):
    """Alternating hits of ``x >= upper`` then ``x < lower``; counts the latter."""
    count = 0
    seeking_upper = True
    for i in range(x.shape[0]):
        xi = x[i]
        if seeking_upper:
            if xi >= upper:
                seeking_upper = False
        elif xi < lower:
            count += 1
            seeking_upper = True
    return count


@njit(cache=True)
def upcrossings(x, lower, upper):
    """Alternating hits of ``x <= lower`` then ``x > upper``; counts the latter."""
    count = 0
    seeking_lower = True
    for i in range(x.shape[0]):
        xi = x[i]
        if seeking_lower:
            if xi <= lower:
                seeking_lower = False
        elif xi > upper:
            count += 1
            seeking_lower = True
    return count


@njit(cache=True)
def crossings_at_levels(x, ys, c):
    """(up, down) interval-crossing counts for every level in ``ys``."""
    m = ys.shape[0]
    up = np.empty(m, dtype=np.int64)
    down = np.empty(m, dtype=np.int64)
    h = 0.5 * c
    for j in range(m):
        lo = ys[j] - h
        hi = ys[j] + h
        up[j] = upcrossings(x, lo, hi)
        down[j] = downcrossings(x, lo, hi)
    return up, down


@njit(cache=True)
def level_crossings(x, y):
    """(up, down) passages strictly across level ``y``; samples equal to ``y`` are skipped."""
    up = 0
    down = 0
    side = 0
    for i in range(x.shape[0]):
        xi = x[i]
        if xi < y:
            s = -1
        elif xi > y:
            s = 1
        else:
            continue
        if side == -1 and s == 1:
            up += 1
        elif side == 1 and s == -1:
            down += 1
        side = s
    return up, down


@njit(cache=True)
def c_legs(x, c):
    """Turning values of the alternating c-zigzag of ``x``.

    Returns the sequence of extremes ``e_0, e_1, ...`` such that consecutive
    extremes differ by more than ``c`` (the last one being the running extreme
    at the end of the path).  An empty result means the range never exceeded c.
    """
    n = x.shape[0]
    out = np.empty(n + 1)
    k = 0
    lo = x[0]
    hi = x[0]
    i = 1
    direction = 0
    while i < n:
        xi = x[i]
        if xi > hi:
            hi = xi
        if xi < lo:
            lo = xi
        if xi - lo > c:
            out[0] = lo
            k = 1
            direction = 1
            ext = xi
            break
        if hi - xi > c:
            out[0] = hi
            k = 1
            direction = -1
            ext = xi
            break
        i += 1
    if direction == 0:
        return out[:0]
    i += 1
    while i < n:
        xi = x[i]
        if direction == 1:
            if xi > ext:
                ext = xi
            elif ext - xi > c:
                out[k] = ext
                k += 1
                ext = xi
                direction = -1
        else:
            if xi < ext:
                ext = xi
            elif xi - ext > c:
                out[k] = ext
                k += 1
                ext = xi
                direction = 1
        i += 1
    out[k] = ext
    k += 1
    return out[:k]


@njit(cache=True)
def skorohod_clamp(x, alpha, beta, phi0):
    """Discrete two-sided reflection of ``x`` on constant barriers."""
    n = x.shape[0]
    phi = np.empty(n)
    eta_d = np.empty(n)
    eta_u = np.empty(n)
    phi[0] = phi0
    eta_d[0] = 0.0
    eta_u[0] = 0.0
    for i in range(1, n):
        tentative = phi[i - 1] + (x[i] - x[i - 1])
        ed = eta_d[i - 1]
        eu = eta_u[i - 1]
        if tentative < alpha:
            ed += alpha - tentative
            p = alpha
        elif tentative > beta:
            eu += tentative - beta
            p = beta
        else:
            p = tentative
        phi[i] = p
        eta_d[i] = ed
        eta_u[i] = eu
    return phi, eta_d, eta_u


@njit(cache=True)
def _snap(u, tol):
    r = np.round(u)
    if abs(u - r) <= tol:
        return r
    return u


@njit(cache=True)
def lebesgue_hits(t, x, c, r, snap_tol):
    """Hitting times/levels of the grid ``c*Z + r`` by the linear interpolant.

    Returns ``(taus, levels, is_grid)`` where ``levels`` are integer grid
    indices for ``k >= 1`` and ``taus[0] = 0``.
    """
    n = x.shape[0]
    u = np.empty(n)
    tol = snap_tol / c
    for i in range(n):
        u[i] = _snap((x[i] - r) / c, tol)
    # first pass: upper bound on the number of hits
    total = 1
    for i in range(n - 1):
        total += int(abs(np.floor(u[i + 1]) - np.floor(u[i]))) + 2
    taus = np.empty(total)
    levels = np.empty(total)
    taus[0] = 0.0
    levels[0] = u[0]
    k = 1
    have_level = u[0] == np.floor(u[0])
    L = u[0]
    for i in range(n - 1):
        ua = u[i]
        ub = u[i + 1]
        if ub == ua:
            continue
        ta = t[i]
        dt = t[i + 1] - ta
        du = ub - ua
        if ub > ua:
            m = np.floor(ua) + 1.0
            while m <= ub:
                if not (have_level and m == L):
                    taus[k] = ta + (m - ua) / du * dt
                    levels[k] = m
                    k += 1
                    L = m
                    have_level = True
                m += 1.0
        else:
            m = np.ceil(ua) - 1.0
            while m >= ub:
                if not (have_level and m == L):
                    taus[k] = ta + (m - ua) / du * dt
                    levels[k] = m
                    k += 1
                    L = m
                    have_level = True
                m -= 1.0
    return taus[:k], levels[:k]
