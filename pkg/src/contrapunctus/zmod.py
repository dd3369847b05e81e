"""Exact arithmetic in Z_n, the dual numbers Z_n[e] and their affine groups.

Every value object carries its modulus ``n`` and stores fully reduced
residues, so equality is structural. The ``*_fields`` helpers work on plain
integers or numpy integer arrays alike and are what the vectorized searches
call; the dataclass methods are thin wrappers around them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class ModulusError(ValueError):
    """Operands live in different rings, or the modulus itself is invalid."""


class NotInvertibleError(ValueError):
    """The linear part of an affine map is not a unit."""


def check_modulus(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise ModulusError(f"modulus must be an integer >= 2, got {n!r}")
    return n


def units(n: int) -> list[int]:
    """Units of Z_n in increasing order."""
    return [v for v in range(1, n) if gcd(v, n) == 1]


def _same(n: int, m: int) -> None:
    if n != m:
        raise ModulusError(f"modulus mismatch: Z_{n} vs Z_{m}")


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    n: int

    def __post_init__(self):
        check_modulus(self.n)
        object.__setattr__(self, "value", self.value % self.n)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, order=True)
class DualNumber:
    """``a + e.b`` in Z_n[e]: ``a`` is the cantus firmus, ``b`` the interval."""

    a: int
    b: int
    n: int

    def __post_init__(self):
        check_modulus(self.n)
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)

    def __add__(self, other: DualNumber) -> DualNumber:
        _same(self.n, other.n)
        return DualNumber(self.a + other.a, self.b + other.b, self.n)

    def __mul__(self, other: DualNumber) -> DualNumber:
        return dual_mul(self, other)

    def __str__(self) -> str:
        return _render_dual(self.a, self.b)


def dual_mul(x: DualNumber, y: DualNumber) -> DualNumber:
    _same(x.n, y.n)
    return DualNumber(x.a * y.a, x.a * y.b + x.b * y.a, x.n)


def _render_dual(a: int, b: int) -> str:
    if a and b:
        return f"{a}+e.{b}"
    if b:
        return f"e.{b}"
    return str(a)


# -- field-level kernels (ints or numpy arrays) ------------------------------

def apply_fields(ta, tb, va, vb, c, d, n):
    """Image of ``c + e.d`` under ``e^(ta+e.tb).(va+e.vb)``."""
    return (va * c + ta) % n, (tb + vb * c + va * d) % n


def compose_fields(f, g, n):
    """Fields of ``f o g`` for field tuples ``(ta, tb, va, vb)``."""
    fta, ftb, fva, fvb = f
    gta, gtb, gva, gvb = g
    return (
        (fva * gta + fta) % n,
        (fva * gtb + fvb * gta + ftb) % n,
        (fva * gva) % n,
        (fva * gvb + fvb * gva) % n,
    )


# -- affine maps ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class AffineMap:
    """``e^u.v`` acting on Z_n by ``x -> v*x + u``."""

    u: int
    v: int
    n: int

    def __post_init__(self):
        check_modulus(self.n)
        object.__setattr__(self, "u", self.u % self.n)
        object.__setattr__(self, "v", self.v % self.n)

    @classmethod
    def identity(cls, n: int) -> AffineMap:
        return cls(0, 1, n)

    @property
    def is_symmetry(self) -> bool:
        return gcd(self.v, self.n) == 1

    def __call__(self, x: int) -> int:
        return (self.v * x + self.u) % self.n

    def image(self, xs) -> frozenset[int]:
        return frozenset(self(x) for x in xs)

    def __str__(self) -> str:
        if self.u == 0:
            return str(self.v)
        return f"e^{self.u}.{self.v}"


@dataclass(frozen=True, order=True)
class DualAffineMap:
    """``e^(ta+e.tb).(va+e.vb)`` acting on Z_n[e].

    Field order doubles as the canonical sort order.
    """

    ta: int
    tb: int
    va: int
    vb: int
    n: int

    def __post_init__(self):
        check_modulus(self.n)
        for name in ("ta", "tb", "va", "vb"):
            object.__setattr__(self, name, getattr(self, name) % self.n)

    @classmethod
    def identity(cls, n: int) -> DualAffineMap:
        return cls(0, 0, 1, 0, n)

    @property
    def fields(self) -> tuple[int, int, int, int]:
        return (self.ta, self.tb, self.va, self.vb)

    @property
    def is_symmetry(self) -> bool:
        return gcd(self.va, self.n) == 1

    def __call__(self, x: DualNumber) -> DualNumber:
        return apply_dual_affine(self, x)

    def __str__(self) -> str:
        return render_map(self)


def render_map(g: DualAffineMap) -> str:
    """Render as ``e^(ta+e.tb).(va+e.vb)`` with zero parts elided.

    >>> render_map(DualAffineMap(0, 3, 1, 3, 6))
    'e^(e.3).(1+e.3)'
    >>> render_map(DualAffineMap(0, 3, 13, 0, 16))
    'e^(e.3).13'
    """
    linear = _render_dual(g.va, g.vb)
    if g.vb:
        linear = f"({linear})"
    if g.ta == 0 and g.tb == 0:
        return linear
    return f"e^({_render_dual(g.ta, g.tb)}).{linear}"


def apply_affine(f: AffineMap, x: Residue) -> Residue:
    _same(f.n, x.n)
    return Residue(f(x.value), f.n)


def apply_dual_affine(g: DualAffineMap, x: DualNumber) -> DualNumber:
    _same(g.n, x.n)
    a, b = apply_fields(g.ta, g.tb, g.va, g.vb, x.a, x.b, g.n)
    return DualNumber(a, b, g.n)


def compose(f, g):
    """``f o g``, i.e. apply ``g`` first. Accepts two AffineMaps or two DualAffineMaps."""
    _same(f.n, g.n)
    if isinstance(f, AffineMap) and isinstance(g, AffineMap):
        return AffineMap(f.v * g.u + f.u, f.v * g.v, f.n)
    if isinstance(f, DualAffineMap) and isinstance(g, DualAffineMap):
        return DualAffineMap(*compose_fields(f.fields, g.fields, f.n), f.n)
    raise TypeError(f"cannot compose {type(f).__name__} with {type(g).__name__}")


def invert(f):
    n = f.n
    if isinstance(f, AffineMap):
        if not f.is_symmetry:
            raise NotInvertibleError(f"{f} has non-unit linear part in Z_{n}")
        w = pow(f.v, -1, n)
        return AffineMap(-w * f.u, w, n)
    if isinstance(f, DualAffineMap):
        if not f.is_symmetry:
            raise NotInvertibleError(f"{f} has non-unit linear part in Z_{n}")
        # (va + e.vb)^-1 = va^-1 - e.vb.va^-2
        wa = pow(f.va, -1, n)
        wb = -f.vb * wa * wa
        ta, tb = apply_fields(0, 0, wa, wb, f.ta, f.tb, n)
        return DualAffineMap(-ta, -tb, wa, wb, n)
    raise TypeError(f"cannot invert {type(f).__name__}")
