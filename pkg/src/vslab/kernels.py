"""Array versions of the per-mapping operations, for exhaustive runs.

Each function processes a 2-D array with one mapping (or polynomial) per
row and agrees row-for-row with its scalar counterpart in :mod:`vslab.cyclo`
or :mod:`vslab.poly`; the test-suite checks that agreement directly.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .poly import reduce_exponent

CHUNK_CELLS = 1 << 22


def decode_tuples(base, length, start, stop, offset=0):
    """Rows ``start..stop-1`` of the lexicographic listing of ``range(base)**length``.

    The first column varies slowest. ``offset`` is added to every digit.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), length), dtype=np.int64)
    for col in range(length - 1, -1, -1):
        out[:, col] = idx % base
        idx //= base
    if offset:
        out += offset
    return out


def count_distinct(values, width, valid=None):
    """Number of distinct entries per row of ``values`` (entries in ``[0, width)``)."""
    n_rows = values.shape[0]
    if n_rows == 0:
        return np.zeros(0, dtype=np.int64)
    if width > 4 * values.shape[1]:
        # few entries over a wide range: sort each row instead of a bitmap
        s = np.sort(values if valid is None else np.where(valid, values, -1), axis=1)
        fresh = s[:, 1:] != s[:, :-1]
        return (s[:, 0] >= 0).astype(np.int64) + (fresh & (s[:, 1:] >= 0)).sum(axis=1)
    flat = values + (np.arange(n_rows, dtype=np.int64) * width)[:, None]
    if valid is not None:
        flat = flat[valid]
    hit = np.zeros(n_rows * width, dtype=bool)
    hit[flat.ravel()] = True
    return hit.reshape(n_rows, width).sum(axis=1)


def rows_per_chunk(width):
    return max(1, CHUNK_CELLS // max(1, width))


def value_set_sizes(spec, l, r, branches):
    """``value_set_size_fast(...).size`` for each row of branch coefficients."""
    branches = np.asarray(branches, dtype=np.int64)
    s = (spec.q - 1) // l
    t = gcd(r, s)
    tl = t * l
    logs = spec.log_table[branches]
    nonzero = logs >= 0
    shift = (np.arange(l, dtype=np.int64) * r) % tl
    residues = (np.where(nonzero, logs, 0) + shift) % tl
    return 1 + (s // t) * count_distinct(residues, tl, nonzero)


LINEAR_MAX_DIM = 4096


def _matmul_mod(x, w, p):
    bound = x.shape[1] * (p - 1) ** 2
    if bound < 2**53:
        return (x.astype(np.float64) @ w.astype(np.float64)).astype(np.int64) % p
    return (x @ w) % p


def _linear_matrix(spec, n_in, n_out, image):
    """Matrix over F_p of an F_p-linear map on vectors of field elements.

    ``image(i, x)`` returns the ``n_out`` output codes for the input vector
    holding ``x`` at position ``i`` and zeros elsewhere.
    """
    k = spec.k
    w = np.zeros((n_in * k, n_out * k), dtype=np.int64)
    for i in range(n_in):
        for d in range(k):
            out = np.asarray(image(i, spec.p**d), dtype=np.int64)
            w[i * k + d] = spec.to_digits(out).reshape(-1)
    return w


def _apply_linear(spec, rows, w, n_out):
    x = spec.to_digits(rows).reshape(rows.shape[0], -1)
    y = _matmul_mod(x, w, spec.p)
    return spec.from_digits(y.reshape(rows.shape[0], n_out, spec.k))


def _from_cyclotomic_loop(spec, l, s, inv_l, branches):
    out = np.empty((branches.shape[0], l), dtype=np.int64)
    i = np.arange(l, dtype=np.int64)
    for j in range(l):
        acc = spec.vsum(spec.vmul_gamma_pow(branches, -s * j * i), axis=1)
        out[:, j] = spec.vmul(acc, inv_l)
    return out


def from_cyclotomic_rows(spec, l, r, branches):
    """Reduced coefficient vectors (length q) of the mappings in ``branches``.

    Coefficient of ``x^(r + j*s)`` is ``l^-1 sum_i a_i zeta^(-j*i)``.
    """
    branches = np.asarray(branches, dtype=np.int64)
    q = spec.q
    s = (q - 1) // l
    inv_l = spec.inv(spec.from_int(l))
    if l * spec.k <= LINEAR_MAX_DIM:
        def image(i, x):
            return [spec.mul(inv_l, spec.mul(x, spec.gamma_pow(-s * j * i))) for j in range(l)]
        coeffs = _apply_linear(spec, branches, _linear_matrix(spec, l, l, image), l)
    else:
        coeffs = _from_cyclotomic_loop(spec, l, s, inv_l, branches)
    r0 = reduce_exponent(r, q)
    exps = [r0 + j * s for j in range(l)]
    exps = [e - (q - 1) if e > q - 1 else e for e in exps]
    out = np.zeros((branches.shape[0], q), dtype=np.int64)
    out[:, exps] = coeffs
    return out


def poly_shape_rows(spec, coeffs):
    """Degree, vanishing order and index of each coefficient row.

    Returns ``(degree, r, l, constant)``; rows where ``constant`` is True
    (no nonzero coefficient above x^0) carry placeholder zeros.
    """
    q1 = spec.q - 1
    exps = np.arange(coeffs.shape[1], dtype=np.int64)
    mask = coeffs != 0
    mask[:, 0] = False
    constant = ~mask.any(axis=1)
    degree = np.where(mask, exps, 0).max(axis=1)
    r = np.where(mask, exps, coeffs.shape[1]).min(axis=1)
    r = np.where(constant, 0, r)
    diffs = np.where(mask, exps - r[:, None], 0)
    s = np.gcd(np.gcd.reduce(diffs, axis=1), q1)
    l = np.where(constant, 0, q1 // np.where(s == 0, 1, s))
    return degree, r, l, constant


def _branches_for_order(spec, coeffs, r):
    """``A_i = sum_e g_e gamma^(i (e - r))`` for ``i < q-1``, all rows sharing ``r``."""
    q1 = spec.q - 1
    n_in = coeffs.shape[1]
    if n_in * spec.k <= LINEAR_MAX_DIM:
        def image(e, x):
            return [spec.mul(x, spec.gamma_pow(i * (e - r))) for i in range(q1)]
        return _apply_linear(spec, coeffs, _linear_matrix(spec, n_in, q1, image), q1)
    i = np.arange(q1, dtype=np.int64)
    out = np.zeros((coeffs.shape[0], q1), dtype=np.int64)
    for e in range(1, n_in):
        col = coeffs[:, e]
        if col.any():
            out = spec.vadd(out, spec.vmul_gamma_pow(col[:, None], i[None, :] * (e - r)))
    return out


def to_cyclotomic_rows(spec, coeffs):
    """Least-index mapping of each row (requires zero constant terms).

    Returns ``(r, l, branches)`` where ``branches`` has ``q-1`` columns: the
    first ``l[row]`` are the mapping's branches ``a * f(zeta^i)`` and the
    rest repeat them with period ``l``. Zero rows give ``r = l = 1`` and zero
    branches.
    """
    coeffs = np.asarray(coeffs, dtype=np.int64)
    q1 = spec.q - 1
    _, r, l, constant = poly_shape_rows(spec, coeffs)
    r = np.where(constant, 1, r)
    l = np.where(constant, 1, l)
    branches = np.zeros((coeffs.shape[0], q1), dtype=np.int64)
    for r_val in np.unique(r):
        sel = r == r_val
        branches[sel] = _branches_for_order(spec, coeffs[sel], int(r_val))
    return r, l, branches
