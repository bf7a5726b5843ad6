"""r-th order cyclotomic mappings and their value sets.

A mapping of index ``l`` sends 0 to 0 and ``x`` in the coset C_i to
``a_i * x**r``. Since ``x -> x**r`` maps C_0 onto the subgroup T_0 of
``(t*l)``-th powers (``t = gcd(r, s)``, ``s = (q-1)/l``), branch ``i``
covers the whole coset ``gamma**(i*r) * a_i * T_0`` of size ``s/t``, or
just ``{0}`` when ``a_i == 0``. Counting distinct nonzero classes therefore
gives the value-set size without touching all q points.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ValidationError
from .field import coset_index, field_for_order


@dataclass(frozen=True)
class CyclotomicMapping:
    spec: object
    r: int
    l: int
    branches: tuple

    def __post_init__(self):
        q1 = self.spec.q - 1
        if self.r < 1:
            raise ValidationError(f"r={self.r} must be a positive integer")
        if self.l < 1 or q1 % self.l:
            raise ValidationError(f"l={self.l} does not divide q-1={q1}")
        branches = tuple(int(a) for a in self.branches)
        if len(branches) != self.l:
            raise ValidationError(f"expected {self.l} branch coefficients, got {len(branches)}")
        for a in branches:
            self.spec.check(a)
        object.__setattr__(self, "branches", branches)

    @property
    def s(self):
        return (self.spec.q - 1) // self.l

    @property
    def t(self):
        return gcd(self.r, self.s)

    def __call__(self, x):
        return eval_map(self, x)

    def __repr__(self):
        return f"CyclotomicMapping({format_mapping(self)})"


@dataclass(frozen=True)
class ValueSetReport:
    size: int
    c: int
    hit_cosets: frozenset
    has_zero_branch: bool
    coset_size: int  # s/t, the size of each image coset

    @property
    def classes(self):
        """Number of distinct nonzero image cosets."""
        return len(self.hit_cosets)


def eval_map(m, x):
    spec = m.spec
    spec.check(x)
    if x == 0:
        return 0
    i = coset_index(spec, m.l, x)
    return spec.mul(m.branches[i], spec.pow(x, m.r))


def value_set_size_fast(m):
    """Value-set size by counting image cosets of index ``t*l``."""
    spec = m.spec
    s, t = m.s, m.t
    tl = t * m.l
    step = spec.gamma_pow(m.r)
    g_ir = 1
    hits = set()
    zero = False
    for a in m.branches:
        if a == 0:
            zero = True
        else:
            hits.add(int(spec.log_table[spec.mul(g_ir, a)]) % tl)
        g_ir = spec.mul(g_ir, step)
    size = 1 + (s // t) * len(hits)
    return ValueSetReport(size=size, c=len(hits) + zero, hit_cosets=frozenset(hits),
                          has_zero_branch=zero, coset_size=s // t)


def proposition_count(m):
    """``c = |{(gamma^{ir} a_i)^{s/t}}|``, zero included when some ``a_i == 0``."""
    spec = m.spec
    e = m.s // m.t
    return len({spec.pow(spec.mul(spec.gamma_pow(i * m.r), a), e)
                for i, a in enumerate(m.branches)})


def value_set_brute(m):
    return {eval_map(m, x) for x in m.spec.elements()}


def is_permutation(m):
    """Direct bijectivity test by evaluation at every point."""
    return len(value_set_brute(m)) == m.spec.q


# --- text format "q=5;l=2;r=1;a=1,2"

def format_mapping(m):
    a = ",".join(str(x) for x in m.branches)
    return f"q={m.spec.q};l={m.l};r={m.r};a={a}"


def parse_mapping(text, spec=None):
    """Parse the ``q=..;l=..;r=..;a=..`` form.

    Branch coefficients are element codes. ``spec`` overrides the default
    field for ``q`` (e.g. a descriptor loaded from disk).
    """
    fields = {}
    for part in text.replace(" ", "").split(";"):
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ValidationError(f"malformed mapping component {part!r}")
        fields[key.lower()] = value
    missing = {"q", "l", "r", "a"} - set(fields)
    if missing:
        raise ValidationError(f"mapping text lacks {sorted(missing)}")
    try:
        q, l, r = int(fields["q"]), int(fields["l"]), int(fields["r"])
        branches = [int(v) for v in fields["a"].split(",") if v != ""]
    except ValueError as exc:
        raise ValidationError(f"non-integer field in mapping text: {exc}") from None
    if spec is None:
        spec = field_for_order(q)
    elif spec.q != q:
        raise ValidationError(f"mapping q={q} does not match field q={spec.q}")
    return CyclotomicMapping(spec, r, l, tuple(branches))
