"""Finite fields F_q = F_{p^k} with a fixed primitive element and log tables.

Elements are canonical integer codes in ``[0, q)``. In a prime field the
code is the residue; in an extension field the code of
``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` is ``sum(c_i * p**i)``. Use
:meth:`FieldSpec.element` and :meth:`FieldSpec.coeffs` to convert.

All multiplicative work goes through the exponent/log tables, which are
built eagerly: ``exp_table[e] = gamma**e`` for ``0 <= e < q-1`` and
``log_table[x]`` is the discrete log of ``x`` (``-1`` for zero).
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache

import numpy as np

from . import config
from .errors import DomainError, ValidationError
from .ntheory import is_prime, prime_factors, prime_power

_ADD_TABLE_MAX_Q = 1024


# --- polynomial arithmetic over F_p (coefficient lists, constant term first)

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmulmod(a, b, m, p):
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus, p):
    """Rabin's irreducibility test for a polynomial over F_p.

    ``modulus`` is a coefficient list, constant term first.
    """
    m = _trim([c % p for c in modulus])
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) == x (mod m)
    h = x
    frob = []
    for _ in range(k):
        h = _ppowmod(h, p, m, p)
        frob.append(h)
    if _psub(frob[-1], x, p):
        return False
    for r in prime_factors(k):
        g = _pgcd(m, _psub(frob[k // r - 1], x, p), p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p, k):
    """Smallest monic irreducible of degree ``k`` over F_p.

    Candidates are ordered by the integer ``sum(c_i p^i)`` of their lower
    coefficients, i.e. lexicographically from the x^{k-1} coefficient down.
    """
    for code in range(p**k):
        lower = [(code // p**i) % p for i in range(k)]
        m = lower + [1]
        if is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """A concrete finite field with designated primitive element ``gamma``.

    Instances are immutable once built; share them freely.
    """

    __slots__ = ("p", "k", "q", "modulus", "gamma", "exp_table", "log_table",
                 "_digits", "_add_table", "_weights")

    def __init__(self, p, k, modulus, gamma, exp_table, log_table):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = None if modulus is None else tuple(modulus)
        self.gamma = gamma
        exp_table.setflags(write=False)
        log_table.setflags(write=False)
        self.exp_table = exp_table
        self.log_table = log_table
        self._weights = np.array([p**i for i in range(k)], dtype=np.int64)
        if k > 1 and p != 2:
            codes = np.arange(self.q, dtype=np.int64)
            d = ((codes[:, None] // self._weights[None, :]) % p).astype(np.int16)
            d.setflags(write=False)
            self._digits = d
        else:
            self._digits = None
        self._add_table = None
        if k > 1 and p != 2 and self.q <= _ADD_TABLE_MAX_Q:
            d = self._digits
            tab = ((d[:, None, :] + d[None, :, :]) % p) @ self._weights
            tab.setflags(write=False)
            self._add_table = tab

    def __repr__(self):
        if self.k == 1:
            return f"FieldSpec(q={self.q})"
        return f"FieldSpec(q={self.q}={self.p}^{self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p and self.k == other.k
                and self.modulus == other.modulus and self.gamma == other.gamma)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus, self.gamma))

    # --- conversion

    def element(self, value):
        """Canonical code for an int (residue) or a coefficient sequence."""
        if isinstance(value, (int, np.integer)):
            if self.k == 1:
                return int(value) % self.p
            if not 0 <= value < self.q:
                raise ValidationError(f"element code {value} outside [0, {self.q})")
            return int(value)
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise ValidationError(f"coefficient vector longer than k={self.k}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def coeffs(self, x):
        """Coefficient vector of length k (constant term first)."""
        return [(x // self.p**i) % self.p for i in range(self.k)]

    def elements(self):
        return range(self.q)

    def check(self, x):
        if not 0 <= x < self.q:
            raise ValidationError(f"{x} is not an element code of F_{self.q}")
        return x

    # --- scalar arithmetic

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        p, out, w = self.p, 0, 1
        for _ in range(self.k):
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p, out, w = self.p, 0, 1
        for _ in range(self.k):
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        lt = self.log_table
        return int(self.exp_table[(int(lt[a]) + int(lt[b])) % (self.q - 1)])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp_table[(-int(self.log_table[a])) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def gamma_pow(self, e):
        return int(self.exp_table[e % (self.q - 1)])

    def from_int(self, n):
        """Image of the integer ``n`` under Z -> F_q."""
        return n % self.p

    # --- vectorized arithmetic on integer arrays of codes

    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        d = (self._digits[a] + self._digits[b]) % self.p
        return d @ self._weights

    def to_digits(self, a):
        """F_p coordinates of codes: shape ``a.shape + (k,)``."""
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a[..., None]
        if self._digits is not None:
            return self._digits[a].astype(np.int64)
        return (a[..., None] >> np.arange(self.k, dtype=np.int64)) & 1

    def from_digits(self, d):
        return np.asarray(d, dtype=np.int64) @ self._weights

    def vsum(self, a, axis=-1):
        """Field sum of an array of codes along ``axis``."""
        a = np.asarray(a)
        axis = axis % a.ndim
        if self.k == 1:
            return a.sum(axis=axis, dtype=np.int64) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        d = self._digits[a].sum(axis=axis, dtype=np.int64) % self.p
        return d @ self._weights

    def vmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        la = self.log_table[a]
        lb = self.log_table[b]
        out = self.exp_table[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def vmul_gamma_pow(self, a, e):
        """``a * gamma**e`` elementwise; ``e`` may be an array of exponents."""
        la = self.log_table[np.asarray(a)]
        out = self.exp_table[(la + e) % (self.q - 1)]
        return np.where(la < 0, 0, out)

    # --- serialization

    def to_dict(self):
        modulus = None if self.modulus is None else list(self.modulus)
        return {"p": self.p, "k": self.k, "modulus": modulus, "gamma": self.coeffs(self.gamma)}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


# --- construction

def _digits_of(code, p, k):
    return [(code // p**i) % p for i in range(k)]


def _code_of(coeffs, p):
    return sum(c * p**i for i, c in enumerate(coeffs))


def _has_full_order(mulmod_pow, q):
    n = q - 1
    return all(mulmod_pow(n // r) != 1 for r in prime_factors(n))


def _candidates(p, k):
    # lexicographic on (c_0, c_1, ..., c_{k-1}); for k == 1 this is integer order
    for cs in itertools.product(range(p), repeat=k):
        if any(cs):
            yield _code_of(cs, p)


def _find_primitive_code(p, k, modulus):
    q = p**k
    for g in _candidates(p, k):
        if k == 1:
            ok = _has_full_order(lambda e: pow(g, e, p), q)
        else:
            gd = _digits_of(g, p, k)
            ok = _has_full_order(lambda e: _code_of(_ppowmod(gd, e, modulus, p), p), q)
        if ok:
            return g
    raise AssertionError("no primitive element")  # unreachable


def _exp_table_prime(p, g):
    out = np.empty(p - 1, dtype=np.int64)
    x = 1
    for e in range(p - 1):
        out[e] = x
        x = x * g % p
    return out


def _mult_matrix(a_digits, modulus, p, k):
    # column i holds the digits of a * x^i mod modulus
    cols = []
    for i in range(k):
        prod = _pmulmod(a_digits, [0] * i + [1], modulus, p)
        cols.append(prod + [0] * (k - len(prod)))
    return np.array(cols, dtype=np.int64).T


def _exp_table_ext(p, k, modulus, g):
    q = p**k
    n = q - 1
    block = max(1, int(n**0.5))
    step = _mult_matrix(_digits_of(g, p, k), modulus, p, k)
    head = np.zeros((block, k), dtype=np.int64)
    v = np.zeros(k, dtype=np.int64)
    v[0] = 1
    for i in range(block):
        head[i] = v
        v = step @ v % p
    # multiplication by gamma^block
    jump = _mult_matrix(_digits_of(_code_of(v, p), p, k), modulus, p, k)
    weights = np.array([p**i for i in range(k)], dtype=np.int64)
    out = np.empty(-(-n // block) * block, dtype=np.int64)
    lin = np.eye(k, dtype=np.int64)
    for j in range(0, len(out), block):
        out[j:j + block] = ((head @ lin.T) % p) @ weights
        lin = jump @ lin % p
    return out[:n]


def build_field(p, k=1, modulus=None, gamma=None, table_limit=None):
    """Construct F_{p^k}, its primitive element and log table.

    ``modulus`` is a coefficient list ``[c_0, ..., c_k]``; when omitted for
    ``k > 1`` the smallest monic irreducible is used (see
    :func:`find_irreducible`). ``gamma`` (a code or coefficient list) pins the
    primitive element, e.g. when reloading a cached descriptor.
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValidationError(f"p={p} is not prime")
    if k < 1:
        raise ValidationError(f"k={k} must be >= 1")
    p, k = int(p), int(k)
    q = p**k
    limit = config.FIELD_TABLE_LIMIT if table_limit is None else table_limit
    if q > limit:
        raise ValidationError(f"q={q} exceeds the field table limit {limit}")

    if k == 1:
        if modulus is not None and len(_trim(modulus)) > 2:
            raise ValidationError("prime fields take no modulus of degree > 1")
        mod = None
    elif modulus is None:
        mod = find_irreducible(p, k)
    else:
        mod = _trim([int(c) % p for c in modulus])
        if len(mod) - 1 != k:
            raise ValidationError(f"modulus has degree {len(mod) - 1}, expected {k}")
        inv_lead = pow(mod[-1], -1, p)
        mod = [c * inv_lead % p for c in mod]
        if not is_irreducible(mod, p):
            raise ValidationError(f"modulus {mod} is reducible over F_{p}")

    if gamma is None:
        g = _find_primitive_code(p, k, mod)
    else:
        if isinstance(gamma, (int, np.integer)):
            g = int(gamma) % q if k == 1 else int(gamma)
        else:
            g = _code_of([int(c) % p for c in gamma], p)
        if not 0 <= g < q:
            raise ValidationError(f"gamma={gamma} is not an element of F_{q}")
        powf = ((lambda e: pow(g, e, p)) if k == 1
                else (lambda e: _code_of(_ppowmod(_digits_of(g, p, k), e, mod, p), p)))
        if g == 0 or not _has_full_order(powf, q):
            raise ValidationError(f"gamma={gamma} is not a primitive element of F_{q}")

    exp_table = _exp_table_prime(p, g) if k == 1 else _exp_table_ext(p, k, mod, g)
    log_table = np.full(q, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(q - 1, dtype=np.int64)
    if q > 1 and (np.count_nonzero(log_table >= 0) != q - 1 or log_table[0] != -1):
        raise AssertionError("exponent table is not a bijection onto F_q^*")
    return FieldSpec(p, k, mod, g, exp_table, log_table)


@lru_cache(maxsize=32)
def field_for_order(q, table_limit=None):
    """Build F_q from its order, using the default modulus (cached)."""
    pk = prime_power(q)
    if pk is None:
        raise ValidationError(f"q={q} is not a prime power")
    return build_field(pk[0], pk[1], table_limit=table_limit)


def field_from_dict(d, table_limit=None):
    return build_field(d["p"], d.get("k", 1), d.get("modulus"), d.get("gamma"), table_limit)


def field_from_json(text, table_limit=None):
    return field_from_dict(json.loads(text), table_limit)


def find_primitive(spec):
    """The designated primitive element (smallest of full order)."""
    return spec.gamma


def dlog(spec, x):
    """Discrete log of ``x`` to base gamma, in ``[0, q-2]``."""
    spec.check(x)
    if x == 0:
        raise DomainError("discrete log of 0 is undefined")
    return int(spec.log_table[x])


def coset_index(spec, l, x):
    """Index ``i`` of the cyclotomic coset C_i (index ``l``) containing ``x``."""
    if l < 1 or (spec.q - 1) % l:
        raise ValidationError(f"l={l} does not divide q-1={spec.q - 1}")
    return dlog(spec, x) % l
