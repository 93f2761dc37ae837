"""Exact scalar arithmetic in iterated real-quadratic extensions of Q(i).

The scalar domain is Q(i)(sqrt(r1))(sqrt(r2))...(sqrt(rk)), where each
radicand r_j is a positive real element of the previous level that is not a
square there.  A :class:`Tower` records the adjoined radicands; a
:class:`Scalar` is a linear combination of products of the adjoined roots
with Gaussian-rational coefficients, held in canonical form (zero terms
dropped, ``fractions.Fraction`` coordinates).  Consequences:

* equality is decidable (coordinate comparison),
* complex conjugation i -> -i fixes every adjoined root,
* real elements (those fixed by conjugation) have a computable sign,
* squareness in the current tower is decidable, so redundant adjunctions
  are refused and the representation stays unique.

Towers are append-only: adjoining a root never mutates existing scalars,
and a scalar stays valid when its tower grows later.  Concurrent readers
are safe because the radicand list only ever gains fully-constructed
entries; code that wants full isolation can work on ``tower.clone()``.

Term masks: bit j of a term's integer key selects sqrt(r_{j+1}), so the
key 0 is the rational part and key 0b101 tags sqrt(r1)*sqrt(r3).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Optional, Union

__all__ = ["Tower", "Scalar", "TowerError"]

_F0 = Fraction(0)
_F1 = Fraction(1)
_G0 = (_F0, _F0)
_G1 = (_F1, _F0)

Coeff = tuple  # (Fraction real part, Fraction imaginary part)
Rat = Union[int, Fraction]


class TowerError(ValueError):
    """Raised for invalid tower operations (bad radicand, mixed towers...)."""


def _gadd(a: Coeff, b: Coeff) -> Coeff:
    return (a[0] + b[0], a[1] + b[1])


def _gmul(a: Coeff, b: Coeff) -> Coeff:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gneg(a: Coeff) -> Coeff:
    return (-a[0], -a[1])


def _ginv(a: Coeff) -> Coeff:
    n = a[0] * a[0] + a[1] * a[1]
    if n == 0:
        raise ZeroDivisionError("division by zero scalar")
    return (a[0] / n, -a[1] / n)


def _rat_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


_QI_RE = re.compile(r"^(-?\d+)/(\d+)\+(-?\d+)/(\d+)\*i$")


def _format_coeff(c: Coeff) -> str:
    return "%d/%d+%d/%d*i" % (
        c[0].numerator, c[0].denominator, c[1].numerator, c[1].denominator,
    )


def _parse_coeff(text: str) -> Coeff:
    m = _QI_RE.match(text)
    if m is None:
        raise TowerError("malformed scalar coordinate %r" % (text,))
    return (Fraction(int(m.group(1)), int(m.group(2))),
            Fraction(int(m.group(3)), int(m.group(4))))


class Tower:
    """Append-only context Q(i)(sqrt(r1))...(sqrt(rk)) shared by scalars."""

    def __init__(self) -> None:
        self._radicands: list[Scalar] = []
        self._prodcache: dict[int, Scalar] = {}

    # -- basic constructors -------------------------------------------------

    def scalar(self, re_part: Rat = 0, im_part: Rat = 0) -> Scalar:
        c = (Fraction(re_part), Fraction(im_part))
        if c == _G0:
            return Scalar(self, {})
        return Scalar(self, {0: c})

    def zero(self) -> Scalar:
        return Scalar(self, {})

    def one(self) -> Scalar:
        return Scalar(self, {0: _G1})

    def i(self) -> Scalar:
        return Scalar(self, {0: (_F0, _F1)})

    def root(self, level: int) -> Scalar:
        """The adjoined root sqrt(r_{level+1}) as a scalar."""
        if not 0 <= level < len(self._radicands):
            raise TowerError("tower has no level %d" % (level,))
        return Scalar(self, {1 << level: _G1})

    @property
    def depth(self) -> int:
        return len(self._radicands)

    def radicand(self, level: int) -> Scalar:
        return self._radicands[level]

    def clone(self) -> Tower:
        """Independent tower with the same radicands (for isolated tasks)."""
        t = Tower()
        for r in self._radicands:
            t._radicands.append(Scalar(t, dict(r._terms)))
        return t

    # -- adjunction ----------------------------------------------------------

    def adjoin_sqrt(self, x: Union[Scalar, Rat]) -> Scalar:
        """Return sqrt(x), adjoining a new level only when necessary.

        ``x`` must be real with nonnegative sign.  If x is already a square
        in the current tower the existing (nonnegative) root is returned and
        the tower is left unchanged; otherwise x becomes the next radicand.
        """
        x = self._lift(x)
        if not x.is_real():
            raise TowerError("cannot adjoin the square root of a non-real scalar")
        s = x.sign()
        if s < 0:
            raise TowerError("cannot adjoin the square root of a negative scalar")
        if s == 0:
            return self.zero()
        y = x._try_sqrt()
        if y is not None:
            return y
        self._radicands.append(x)
        return self.root(len(self._radicands) - 1)

    def sqrt_or_none(self, x: Union[Scalar, Rat]) -> Optional[Scalar]:
        """Square root of x within the current tower, or None (no growth)."""
        x = self._lift(x)
        if not x.is_real() or x.sign() < 0:
            return None
        return x._try_sqrt()

    def embed(self, x: Scalar) -> Scalar:
        """Value-preserving copy of ``x`` into this tower.

        Unlike :meth:`_coerce` this does not require matching radicand
        prefixes: every radical ``x`` mentions is adjoined (or recognized as
        an existing square) on the way in, so towers built along different
        histories can still be combined in a common field.
        """
        if x._tower is self:
            return x
        roots: dict = {}

        def root(j: int) -> Scalar:
            if j not in roots:
                roots[j] = self.adjoin_sqrt(self.embed(x._tower._radicands[j]))
            return roots[j]

        acc = self.zero()
        for mask, c in x._terms.items():
            term = Scalar(self, {0: c})
            j, mm = 0, mask
            while mm:
                if mm & 1:
                    term = term * root(j)
                j += 1
                mm >>= 1
            acc = acc + term
        return acc

    # -- internals -----------------------------------------------------------

    def _lift(self, x: Union[Scalar, Rat]) -> Scalar:
        if isinstance(x, Scalar):
            if x._tower is self:
                return x
            return self._coerce(x)
        return self.scalar(x)

    def _coerce(self, x: Scalar) -> Scalar:
        """Re-home a scalar from a structurally compatible tower."""
        need = 0
        for m in x._terms:
            need = max(need, m.bit_length())
        if need > len(self._radicands):
            raise TowerError("scalar uses tower levels this tower lacks")
        other = x._tower
        for j in range(min(need, len(other._radicands))):
            if other._radicands[j]._terms != self._radicands[j]._terms:
                raise TowerError("incompatible towers: radicand %d differs" % (j,))
        return Scalar(self, dict(x._terms))

    def _radical_product(self, mask: int) -> Scalar:
        """prod of r_{j+1} over the set bits j of mask, as a scalar."""
        got = self._prodcache.get(mask)
        if got is None:
            low = mask & -mask
            r = self._radicands[low.bit_length() - 1]
            rest = mask & (mask - 1)
            got = r if rest == 0 else r * self._radical_product(rest)
            self._prodcache[mask] = got
        return got

    # -- serialization ------------------------------------------------------

    def serialize_prefix(self, depth: int):
        """JSON-ready description of the first ``depth`` radicands."""
        out = []
        for j in range(depth):
            r = self._radicands[j]
            lvl = r._level()
            if lvl == 0:
                c = r._terms.get(0, _G0)
                if c[1] == 0 and c[0].denominator == 1:
                    out.append(int(c[0]))
                else:
                    out.append(_format_coeff(c))
            else:
                out.append([_format_coeff(r._terms.get(m, _G0))
                            for m in range(1 << lvl)])
        return out

    @staticmethod
    def deserialize(radicands) -> Tower:
        """Rebuild a tower from :meth:`serialize_prefix` output.

        Every entry is re-validated: it must parse over the prefix built so
        far, be real and positive, and must genuinely create a new level
        (a square radicand means the file violates the tower invariant).
        """
        t = Tower()
        for j, entry in enumerate(radicands):
            if isinstance(entry, int):
                r = t.scalar(entry)
            elif isinstance(entry, str):
                r = Scalar(t, {0: _parse_coeff(entry)})
            elif isinstance(entry, list):
                if len(entry) > (1 << j):
                    raise TowerError("radicand %d uses levels above its own" % (j,))
                terms = {}
                for m, text in enumerate(entry):
                    c = _parse_coeff(text)
                    if c != _G0:
                        terms[m] = c
                r = Scalar(t, terms)
            else:
                raise TowerError("malformed radicand entry %r" % (entry,))
            before = t.depth
            t.adjoin_sqrt(r)
            if t.depth != before + 1:
                raise TowerError(
                    "radicand %d is a square in the preceding tower" % (j,))
        return t

    def __repr__(self) -> str:
        return "Tower(depth=%d)" % (len(self._radicands),)


class Scalar:
    """An element of a tower, immutable by convention.

    Do not build directly; use the Tower factory methods.  ``_terms`` maps
    term masks to nonzero Gaussian-rational coefficients.
    """

    __slots__ = ("_tower", "_terms")

    def __init__(self, tower: Tower, terms: dict) -> None:
        self._tower = tower
        self._terms = terms

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: _G1}

    def is_real(self) -> bool:
        return all(c[1] == 0 for c in self._terms.values())

    def is_rational(self) -> bool:
        """True when the scalar lies in Q(i) (uses no adjoined root)."""
        return all(m == 0 for m in self._terms)

    def _level(self) -> int:
        lvl = 0
        for m in self._terms:
            if m.bit_length() > lvl:
                lvl = m.bit_length()
        return lvl

    # -- ring structure -------------------------------------------------------

    def _binop_other(self, other) -> Optional[Scalar]:
        if isinstance(other, Scalar):
            if other._tower is self._tower:
                return other
            # Cross-tower use is allowed when one side is plain Q(i) or the
            # towers agree on every level actually used.
            try:
                return self._tower._coerce(other)
            except TowerError:
                if self.is_rational():
                    return other  # caller re-dispatches with operands swapped
                raise
        if isinstance(other, (int, Fraction)):
            return self._tower.scalar(other)
        return None

    def __add__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        if o._tower is not self._tower:
            return o.__add__(self)
        terms = dict(self._terms)
        for m, c in o._terms.items():
            s = _gadd(terms.get(m, _G0), c)
            if s == _G0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Scalar(self._tower, terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self._tower, {m: _gneg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        if o._tower is not self._tower:
            return o.__mul__(self)
        if not self._terms or not o._terms:
            return self._tower.zero()
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                _mul_into(self._tower, out, m1 & m2, m1 ^ m2, _gmul(c1, c2))
        return Scalar(self._tower, {m: c for m, c in out.items() if c != _G0})

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        if not self._terms:
            raise ZeroDivisionError("division by zero scalar")
        lvl = self._level()
        if lvl == 0:
            return Scalar(self._tower, {0: _ginv(self._terms[0])})
        bit = 1 << (lvl - 1)
        a, b = self._split(bit)
        r = self._tower._radicands[lvl - 1]
        denom = a * a - b * b * r
        # denom == 0 would force r = (a/b)^2, contradicting the invariant
        # that radicands are non-squares of their level.
        dinv = denom.inv()
        low = a * dinv
        high = -(b * dinv)
        terms = dict(low._terms)
        for m, c in high._terms.items():
            terms[m | bit] = c
        return Scalar(self._tower, terms)

    def __truediv__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        if o._tower is not self._tower:
            return o.inv().__mul__(self)
        return self.__mul__(o.inv())

    def __rtruediv__(self, other):
        return self.inv().__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self._tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def conj(self) -> Scalar:
        """Complex conjugation: i -> -i, fixing every adjoined root."""
        return Scalar(self._tower,
                      {m: (c[0], -c[1]) for m, c in self._terms.items()})

    def real_part(self) -> Scalar:
        return Scalar(self._tower,
                      {m: (c[0], _F0) for m, c in self._terms.items() if c[0] != 0})

    def imag_part(self) -> Scalar:
        """The real scalar y with self = x + i*y."""
        return Scalar(self._tower,
                      {m: (c[1], _F0) for m, c in self._terms.items() if c[1] != 0})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._tower.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if other._tower is not self._tower:
            try:
                other = self._tower._coerce(other)
            except TowerError:
                return False
        return self._terms == other._terms

    __hash__ = None  # mutable dict inside; scalars are not dict keys

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- order structure on the real subfield ---------------------------------

    def sign(self) -> int:
        """-1, 0 or +1; defined for real scalars only."""
        if not self.is_real():
            raise TowerError("sign of a non-real scalar")
        return _sign_terms(self._tower, self._terms)

    def _split(self, bit: int) -> tuple[Scalar, Scalar]:
        """Write self = a + b*sqrt(r) where bit tags sqrt(r)."""
        lo, hi = {}, {}
        for m, c in self._terms.items():
            if m & bit:
                hi[m ^ bit] = c
            else:
                lo[m] = c
        return Scalar(self._tower, lo), Scalar(self._tower, hi)

    def _try_sqrt(self, lvl: Optional[int] = None) -> Optional[Scalar]:
        """Nonnegative square root within the first ``lvl`` tower levels.

        Precondition: self is real with sign >= 0 and uses only levels below
        ``lvl`` (default: the whole tower — a rational can be a square deeper
        in the tower, e.g. 8 = (2*sqrt2)^2 once sqrt2 is adjoined).  Uses the
        classical descent: x = a + b*sqrt(r) is a square iff its quadratic
        norm a^2 - b^2*r is a square s^2 one level down and (a +- s)/2 is
        again a square there.
        """
        if lvl is None:
            lvl = self._tower.depth
        if lvl == 0:
            c = self._terms.get(0, _G0)
            root = _rat_sqrt(c[0])
            if root is None:
                return None
            return self._tower.scalar(root)
        bit = 1 << (lvl - 1)
        a, b = self._split(bit)
        r = self._tower._radicands[lvl - 1]
        if b.is_zero():
            t = a._try_sqrt(lvl - 1)
            if t is not None:
                return t
            d = (a / r)._try_sqrt(lvl - 1)
            if d is not None:
                return d * self._tower.root(lvl - 1)
            return None
        norm = a * a - b * b * r
        if norm.sign() < 0:
            return None
        s = norm._try_sqrt(lvl - 1)
        if s is None:
            return None
        half = Fraction(1, 2)
        for cand in ((a + s) * half, (a - s) * half):
            if cand.sign() < 0:
                continue
            c = cand._try_sqrt(lvl - 1)
            if c is None or c.is_zero():
                continue
            d = b / (c + c)
            y = c + d * self._tower.root(lvl - 1)
            if y * y == self:
                return y if y.sign() >= 0 else -y
        return None

    def as_fraction(self) -> Fraction:
        """The value as a rational; error if not a real rational."""
        if not self.is_rational() or not self.is_real():
            raise TowerError("scalar is not a real rational")
        return self._terms.get(0, _G0)[0]

    # -- serialization --------------------------------------------------------

    def to_text(self) -> str:
        """Base-level text form "a/b+c/d*i" (level-0 scalars only)."""
        if self._level() != 0:
            raise TowerError("scalar uses adjoined roots; serialize as coords")
        return _format_coeff(self._terms.get(0, _G0))

    @staticmethod
    def from_text(tower: Tower, text: str) -> Scalar:
        c = _parse_coeff(text)
        return Scalar(tower, {0: c} if c != _G0 else {})

    def to_json(self):
        """{"radicands": [...], "coords": [...]} over this scalar's levels."""
        lvl = self._level()
        return {
            "radicands": self._tower.serialize_prefix(lvl),
            "coords": [_format_coeff(self._terms.get(m, _G0))
                       for m in range(1 << lvl)],
        }

    def coords(self, depth: Optional[int] = None) -> list[str]:
        """Flat coordinate strings over 2**depth basis products."""
        lvl = self._level() if depth is None else depth
        if self._level() > lvl:
            raise TowerError("scalar does not fit in %d levels" % (lvl,))
        return [_format_coeff(self._terms.get(m, _G0)) for m in range(1 << lvl)]

    @staticmethod
    def from_coords(tower: Tower, coords: Iterable[str]) -> Scalar:
        coords = list(coords)
        n = len(coords)
        if n == 0 or n & (n - 1):
            raise TowerError("coordinate list length must be a power of two")
        if n > (1 << tower.depth):
            raise TowerError("coordinate list exceeds tower depth")
        terms = {}
        for m, text in enumerate(coords):
            c = _parse_coeff(text)
            if c != _G0:
                terms[m] = c
        return Scalar(tower, terms)

    @staticmethod
    def from_json(obj, tower: Optional[Tower] = None) -> Scalar:
        """Inverse of :meth:`to_json`; extends/validates ``tower`` if given."""
        rads = obj["radicands"]
        if tower is None:
            tower = Tower.deserialize(rads)
        else:
            fresh = Tower.deserialize(rads)
            for j in range(fresh.depth):
                if j < tower.depth:
                    if tower._radicands[j]._terms != fresh._radicands[j]._terms:
                        raise TowerError("radicand %d conflicts with tower" % (j,))
                else:
                    tower._radicands.append(
                        Scalar(tower, dict(fresh._radicands[j]._terms)))
        return Scalar.from_coords(tower, obj["coords"])

    def __repr__(self) -> str:
        if not self._terms:
            return "<0>"
        bits = []
        for m in sorted(self._terms):
            c = self._terms[m]
            part = _format_coeff(c)
            for j in range(m.bit_length()):
                if m >> j & 1:
                    part += "*rt%d" % (j,)
            bits.append(part)
        return "<" + " + ".join(bits) + ">"


def _mul_into(tower: Tower, out: dict, common: int, sym: int, coeff: Coeff) -> None:
    """Accumulate coeff * prod(r_j, j in common) * basis(sym) into out."""
    if common == 0:
        cur = out.get(sym)
        out[sym] = coeff if cur is None else _gadd(cur, coeff)
        return
    factor = tower._radical_product(common)
    for mf, cf in factor._terms.items():
        # basis(mf) and basis(sym) may themselves overlap; recurse.  The top
        # bit of the overlap strictly decreases, so this terminates.
        _mul_into(tower, out, mf & sym, mf ^ sym, _gmul(coeff, cf))


def _sign_terms(tower: Tower, terms: dict) -> int:
    if not terms:
        return 0
    lvl = 0
    for m in terms:
        if m.bit_length() > lvl:
            lvl = m.bit_length()
    if lvl == 0:
        c = terms[0][0]
        return (c > 0) - (c < 0)
    bit = 1 << (lvl - 1)
    lo = {m: c for m, c in terms.items() if not m & bit}
    hi = {m ^ bit: c for m, c in terms.items() if m & bit}
    sa = _sign_terms(tower, lo)
    sb = _sign_terms(tower, hi)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # a and b*sqrt(r) pull in opposite directions; compare a^2 against b^2*r.
    a = Scalar(tower, lo)
    b = Scalar(tower, hi)
    t = a * a - b * b * tower._radicands[lvl - 1]
    st = t.sign()
    if st == 0:
        raise TowerError("tower invariant violated: radicand %d is a square"
                         % (lvl - 1,))
    return sa * st
