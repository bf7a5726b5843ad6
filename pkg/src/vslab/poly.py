"""Polynomials over F_q, the index decomposition, and the correspondence
with cyclotomic mappings.

Every non-constant ``g`` of degree at most ``q-1`` is uniquely
``a * x^r f(x^s) + b`` with ``s | q-1`` maximal, i.e. with the index
``l = (q-1)/s`` minimal. With ``b == 0`` this is the cyclotomic mapping of
index ``l`` whose branches are ``a * f(zeta^i)``, ``zeta = gamma^s``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CyclotomicMapping
from .errors import IndexUndefinedError, ValidationError
from .ntheory import gcd_many


class Polynomial:
    """Coefficient vector over F_q indexed by exponent, degree at most q-1."""

    __slots__ = ("spec", "coeffs", "_index")

    def __init__(self, spec, coeffs):
        cs = [spec.check(int(c)) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) > spec.q:
            raise ValidationError(f"degree {len(cs) - 1} exceeds q-1={spec.q - 1}")
        self.spec = spec
        self.coeffs = tuple(cs)
        self._index = None

    @classmethod
    def monomial(cls, spec, n, a=1):
        return cls(spec, [0] * n + [a])

    @property
    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    @property
    def index_form(self):
        if self._index is None:
            self._index = index_decompose(self)
        return self._index

    def __call__(self, x):
        return eval_poly(self, x)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.spec.q, self.coeffs))

    def __repr__(self):
        return f"Polynomial(q={self.spec.q}, {format_poly(self)!r})"

    def values(self):
        """``[g(x) for x in F_q]`` in code order."""
        return [eval_poly(self, x) for x in self.spec.elements()]


@dataclass(frozen=True)
class IndexForm:
    """``g = a * x^r * f(x^s) + b`` with ``f`` monic and ``f(0) != 0``.

    ``f`` is stored sparsely: ``f_coeffs[j]`` multiplies ``y**f_exponents[j]``,
    exponents ascending (so ``f_exponents[0] == 0``).
    """

    a: int
    b: int
    r: int
    s: int
    l: int
    f_exponents: tuple
    f_coeffs: tuple

    def f_eval(self, spec, y):
        acc = 0
        for e, c in zip(self.f_exponents, self.f_coeffs):
            acc = spec.add(acc, spec.mul(c, spec.pow(y, e)))
        return acc

    def expand(self, spec):
        """Rebuild the polynomial from its decomposition."""
        deg = self.r + self.s * self.f_exponents[-1]
        cs = [0] * (deg + 1)
        for e, c in zip(self.f_exponents, self.f_coeffs):
            cs[self.r + self.s * e] = spec.mul(self.a, c)
        cs[0] = spec.add(cs[0], self.b)
        return Polynomial(spec, cs)


def eval_poly(g, x):
    spec = g.spec
    spec.check(x)
    acc = 0
    for c in reversed(g.coeffs):
        acc = spec.add(spec.mul(acc, x), c)
    return acc


def index_decompose(g):
    if g.is_constant():
        raise IndexUndefinedError("index of a constant polynomial is undefined")
    spec = g.spec
    q1 = spec.q - 1
    exps = [e for e in range(1, len(g.coeffs)) if g.coeffs[e]]
    r = exps[0]
    a = g.coeffs[exps[-1]]
    s = gcd_many((e - r for e in exps), q1)
    inv_a = spec.inv(a)
    return IndexForm(
        a=a,
        b=g.constant_term,
        r=r,
        s=s,
        l=q1 // s,
        f_exponents=tuple((e - r) // s for e in exps),
        f_coeffs=tuple(spec.mul(g.coeffs[e], inv_a) for e in exps),
    )


def to_cyclotomic(g):
    """The least-index cyclotomic mapping equal to ``g`` (requires g(0) = 0).

    The zero polynomial maps to the index-1 mapping with branch 0.
    """
    spec = g.spec
    if g.constant_term != 0:
        raise ValidationError("to_cyclotomic requires g(0) = 0")
    if g.is_constant():
        return CyclotomicMapping(spec, 1, 1, (0,))
    form = g.index_form
    zeta = spec.gamma_pow(form.s)
    branches = []
    y = 1
    for _ in range(form.l):
        branches.append(spec.mul(form.a, form.f_eval(spec, y)))
        y = spec.mul(y, zeta)
    return CyclotomicMapping(spec, form.r, form.l, tuple(branches))


def reduce_exponent(e, q):
    """Exponent in ``[1, q-1]`` giving the same function as ``x^e`` for ``e >= 1``."""
    return (e - 1) % (q - 1) + 1


def from_cyclotomic(m):
    """Polynomial presentation of a cyclotomic mapping.

    Coefficient of ``x^(r + j*s)`` is ``l^-1 * sum_i a_i * zeta^(-j*i)``;
    exponents are reduced mod ``x^q - x``.
    """
    spec = m.spec
    q = spec.q
    l, s = m.l, m.s
    inv_l = spec.inv(spec.from_int(l))
    r0 = reduce_exponent(m.r, q)
    coeffs = [0] * q
    for j in range(l):
        acc = 0
        for i, a in enumerate(m.branches):
            if a:
                acc = spec.add(acc, spec.mul(a, spec.gamma_pow(-s * j * i)))
        e = r0 + j * s
        if e > q - 1:
            e -= q - 1
        coeffs[e] = spec.mul(inv_l, acc)
    return Polynomial(spec, coeffs)


# --- text format: comma-separated element codes, constant term first

def format_poly(g):
    return ",".join(str(c) for c in g.coeffs) or "0"


def parse_poly(spec, text):
    try:
        cs = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise ValidationError(f"bad polynomial text {text!r}: {exc}") from None
    for c in cs:
        if not 0 <= c < spec.q:
            raise ValidationError(f"coefficient {c} is not an element code of F_{spec.q}")
    return Polynomial(spec, cs)
