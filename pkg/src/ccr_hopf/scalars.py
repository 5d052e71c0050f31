"""Exact coefficient arithmetic for operator expressions.

Coefficients live in the fraction field of Gaussian-rational Laurent
polynomials in a finite set of commuting real parameters.  Two names are
reserved by the algebra layer:

* ``kappa`` -- the deformation constant attached to commutator contractions,
* ``s``     -- the group-like collapse parameter,

and ``r2`` denotes a formal square root of two: its exponent is kept in
{0, 1} and ``r2**2`` folds to the rational number 2 (so ``1/r2 == r2/2``).

Internally a scalar is ``num / den`` where both parts are dicts mapping
monomials to Gaussian rationals.  A single-term divisor is a unit of the
Laurent ring and is folded straight into the numerator, so denominators
other than 1 only appear when a caller divides by a genuinely multi-term
scalar.  Zero-testing is emptiness of the numerator and equality is decided
by cross multiplication; both are exact.  No floating point enters unless
:meth:`Scalar.to_complex` is called.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Tuple

__all__ = [
    "Scalar",
    "ScalarError",
    "ZERO",
    "ONE",
    "IMAG",
    "KAPPA",
    "S_PARAM",
    "R2",
    "ROOT2_NAME",
]

Coeff = Tuple[Fraction, Fraction]  # re + im*i
Mono = Tuple[Tuple[str, int], ...]  # sorted by parameter name, exponents != 0

_F0 = Fraction(0)
_F1 = Fraction(1)
_C_ZERO: Coeff = (_F0, _F0)
_C_ONE: Coeff = (_F1, _F0)
_UNIT: Mono = ()

ROOT2_NAME = "r2"


class ScalarError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian-rational helpers


def _c_add(a: Coeff, b: Coeff) -> Coeff:
    return (a[0] + b[0], a[1] + b[1])


def _c_neg(a: Coeff) -> Coeff:
    return (-a[0], -a[1])


def _c_mul(a: Coeff, b: Coeff) -> Coeff:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _c_scale(a: Coeff, q: Fraction) -> Coeff:
    return (a[0] * q, a[1] * q)


def _c_conj(a: Coeff) -> Coeff:
    return (a[0], -a[1])


def _c_inv(a: Coeff) -> Coeff:
    n = a[0] * a[0] + a[1] * a[1]
    if not n:
        raise ZeroDivisionError("inverse of zero coefficient")
    return (a[0] / n, -a[1] / n)


# ---------------------------------------------------------------------------
# Laurent monomials.  r2 carries the relation r2**2 = 2, so exponent folding
# can emit a rational side factor.


def _exps_normalize(exps: dict) -> tuple[Mono, Fraction]:
    factor = _F1
    e = exps.get(ROOT2_NAME)
    if e is not None:
        exps[ROOT2_NAME] = e % 2
        factor = Fraction(2) ** (e // 2)
    return tuple(sorted((n, x) for n, x in exps.items() if x)), factor


def _mono_mul(m1: Mono, m2: Mono) -> tuple[Mono, Fraction]:
    if not m1:
        return m2, _F1
    if not m2:
        return m1, _F1
    exps = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return _exps_normalize(exps)


def _mono_inv(m: Mono) -> tuple[Mono, Fraction]:
    return _exps_normalize({n: -e for n, e in m})


Poly = dict  # Mono -> Coeff


def _p_add_into(target: Poly, src: Poly) -> None:
    for m, c in src.items():
        acc = _c_add(target.get(m, _C_ZERO), c)
        if acc[0] or acc[1]:
            target[m] = acc
        else:
            target.pop(m, None)


def _p_neg(a: Poly) -> Poly:
    return {m: _c_neg(c) for m, c in a.items()}


def _p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m, f = _mono_mul(m1, m2)
            c = _c_mul(c1, c2)
            if f is not _F1:
                c = _c_scale(c, f)
            acc = _c_add(out.get(m, _C_ZERO), c)
            if acc[0] or acc[1]:
                out[m] = acc
            else:
                out.pop(m, None)
    return out


def _p_scale(a: Poly, c: Coeff, f: Fraction = _F1) -> Poly:
    if not (c[0] or c[1]):
        return {}
    out = {}
    for m, cc in a.items():
        v = _c_mul(cc, c)
        if f is not _F1:
            v = _c_scale(v, f)
        if v[0] or v[1]:
            out[m] = v
    return out


def _p_conj(a: Poly) -> Poly:
    # parameters are real and r2 is real, so conjugation acts on coefficients
    return {m: _c_conj(c) for m, c in a.items()}


_P_ONE: Poly = {_UNIT: _C_ONE}


def _mono_content(terms: Iterable[Mono]) -> Mono:
    """Common monomial factor (per-parameter minimum exponent, capped at 0
    from above for parameters absent in some term)."""
    it = iter(terms)
    try:
        first = next(it)
    except StopIteration:
        return _UNIT
    content = dict(first)
    for m in it:
        d = dict(m)
        for name in list(content):
            content[name] = min(content[name], d.get(name, 0))
        for name, e in d.items():
            if name not in content:
                content[name] = min(e, 0)
        if not content:
            break
    return tuple(sorted((n, e) for n, e in content.items() if e))


class Scalar:
    """An element of the exact coefficient field."""

    __slots__ = ("_num", "_den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = _P_ONE
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if not num:
            self._num, self._den = {}, dict(_P_ONE)
            return
        if len(den) == 1:
            ((dm, dc),) = den.items()
            if dm == _UNIT and dc == _C_ONE:
                self._num, self._den = num, den
                return
            inv_m, f = _mono_inv(dm)
            ci = _c_scale(_c_inv(dc), f)
            out: Poly = {}
            for m, c in num.items():
                mm, f2 = _mono_mul(m, inv_m)
                v = _c_mul(c, ci)
                if f2 is not _F1:
                    v = _c_scale(v, f2)
                acc = _c_add(out.get(mm, _C_ZERO), v)
                if acc[0] or acc[1]:
                    out[mm] = acc
                else:
                    out.pop(mm, None)
            self._num, self._den = out, dict(_P_ONE)
            return
        # multi-term denominator: strip common monomial content, then scale
        # so the denominator's largest monomial has coefficient one.
        content = _mono_content(list(num) + list(den))
        if content:
            inv_m, f = _mono_inv(content)

            def shift(p: Poly) -> Poly:
                out: Poly = {}
                for m, c in p.items():
                    mm, f2 = _mono_mul(m, inv_m)
                    out[mm] = _c_scale(c, f * f2) if (f is not _F1 or f2 is not _F1) else c
                return out

            num, den = shift(num), shift(den)
        lead = max(den)
        lc = den[lead]
        if lc != _C_ONE:
            ci = _c_inv(lc)
            num = _p_scale(num, ci)
            den = _p_scale(den, ci)
        self._num, self._den = num, den

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Scalar":
        return cls({})

    @classmethod
    def one(cls) -> "Scalar":
        return cls(dict(_P_ONE))

    @classmethod
    def i(cls) -> "Scalar":
        return cls({_UNIT: (_F0, _F1)})

    @classmethod
    def rational(cls, re, im=0) -> "Scalar":
        re, im = Fraction(re), Fraction(im)
        if not (re or im):
            return cls({})
        return cls({_UNIT: (re, im)})

    @classmethod
    def param(cls, name: str, exp: int = 1) -> "Scalar":
        if not name.isidentifier():
            raise ScalarError(f"bad parameter name {name!r}")
        mono, f = _exps_normalize({name: exp})
        return cls({mono: (f, _F0)})

    @classmethod
    def from_complex(cls, z: complex) -> "Scalar":
        """Exact embedding of a complex float (binary rationals)."""
        z = complex(z)
        return cls.rational(Fraction(z.real), Fraction(z.imag))

    # -- coercion ------------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Scalar | None":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.rational(x)
        return None

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._num

    def is_one(self) -> bool:
        return self._num == _P_ONE and self._den == _P_ONE

    def is_constant(self) -> bool:
        return (not self._num or set(self._num) == {_UNIT}) and self._den == _P_ONE

    def constant_value(self) -> tuple[Fraction, Fraction]:
        if not self.is_constant():
            raise ScalarError("scalar is not constant")
        return self._num.get(_UNIT, _C_ZERO)

    def parameters(self) -> frozenset:
        names = set()
        for p in (self._num, self._den):
            for m in p:
                for n, _ in m:
                    names.add(n)
        return frozenset(names)

    # -- ring / field operations ---------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._den == other._den:
            num = dict(self._num)
            _p_add_into(num, other._num)
            if self._den == _P_ONE:
                s = Scalar.__new__(Scalar)
                s._num, s._den = num, dict(_P_ONE)
                return s
            return Scalar(num, dict(self._den))
        num = _p_mul(self._num, other._den)
        _p_add_into(num, _p_mul(other._num, self._den))
        return Scalar(num, _p_mul(self._den, other._den))

    __radd__ = __add__

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s._num, s._den = _p_neg(self._num), self._den
        return s

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._den == _P_ONE and other._den == _P_ONE:
            s = Scalar.__new__(Scalar)
            s._num, s._den = _p_mul(self._num, other._num), dict(_P_ONE)
            return s
        return Scalar(_p_mul(self._num, other._num), _p_mul(self._den, other._den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(_p_mul(self._num, other._den), _p_mul(self._den, other._num))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(dict(self._den), dict(self._num))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "Scalar":
        s = Scalar.__new__(Scalar)
        s._num, s._den = _p_conj(self._num), _p_conj(self._den)
        return s

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._den == other._den:
            return self._num == other._num
        return _p_mul(self._num, other._den) == _p_mul(other._num, self._den)

    __hash__ = None  # mutable-dict backed; equality is semantic

    # -- evaluation ----------------------------------------------------------

    def substitute(self, assignment: Mapping[str, int | Fraction]) -> "Scalar":
        """Exact substitution of rational values for parameters.

        Parameters not mentioned stay symbolic; ``r2`` cannot be substituted
        (it is pinned by r2**2 = 2).
        """
        if ROOT2_NAME in assignment:
            raise ScalarError("r2 is fixed by its defining relation")

        def sub(p: Poly) -> Poly:
            out: Poly = {}
            for m, c in p.items():
                factor = _F1
                kept = {}
                for name, e in m:
                    if name in assignment:
                        factor *= Fraction(assignment[name]) ** e
                    else:
                        kept[name] = e
                mono, f2 = _exps_normalize(kept)
                acc = _c_add(out.get(mono, _C_ZERO), _c_scale(c, factor * f2))
                if acc[0] or acc[1]:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
            return out

        return Scalar(sub(self._num), sub(self._den))

    def to_complex(self, assignment: Mapping[str, float] | None = None) -> complex:
        """Numeric evaluation; every parameter except r2 must be assigned."""
        assignment = assignment or {}

        def ev(p: Poly) -> complex:
            total = 0j
            for m, c in p.items():
                v = complex(c[0]) + 1j * complex(c[1])
                for name, e in m:
                    if name == ROOT2_NAME:
                        v *= math.sqrt(2.0) ** e
                    elif name in assignment:
                        v *= float(assignment[name]) ** e
                    else:
                        raise ScalarError(f"unassigned parameter {name!r}")
                total += v
            return total

        den = ev(self._den)
        if den == 0:
            raise ZeroDivisionError("denominator evaluates to zero")
        return ev(self._num) / den

    # -- rendering -----------------------------------------------------------

    @staticmethod
    def _frac_str(q: Fraction) -> str:
        return str(q)

    @classmethod
    def _coeff_str(cls, c: Coeff) -> tuple[str, bool]:
        """Return (text, needs_parens_when_multiplied)."""
        re, im = c
        if not im:
            return cls._frac_str(re), False
        if not re:
            if im == 1:
                return "i", False
            if im == -1:
                return "-i", False
            return f"{cls._frac_str(im)}*i", False
        mag = "i" if abs(im) == 1 else f"{cls._frac_str(abs(im))}*i"
        sign = " + " if im > 0 else " - "
        return f"({cls._frac_str(re)}{sign}{mag})", False

    @staticmethod
    def _mono_str(m: Mono) -> str:
        parts = []
        for name, e in m:
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    @classmethod
    def _poly_str(cls, p: Poly) -> str:
        if not p:
            return "0"
        pieces = []
        for m in sorted(p):
            c = p[m]
            ctext, _ = cls._coeff_str(c)
            mtext = cls._mono_str(m)
            if not mtext:
                term = ctext
            elif ctext == "1":
                term = mtext
            elif ctext == "-1":
                term = f"-{mtext}"
            else:
                term = f"{ctext}*{mtext}"
            pieces.append(term)
        out = pieces[0]
        for t in pieces[1:]:
            if t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __str__(self) -> str:
        if self._den == _P_ONE:
            return self._poly_str(self._num)
        return f"({self._poly_str(self._num)})/({self._poly_str(self._den)})"

    def __repr__(self) -> str:
        return f"Scalar({self})"

    # -- structured form (used by the report layer) ---------------------------

    def terms(self) -> list[tuple[Mono, Coeff]]:
        return sorted(self._num.items())

    def denominator_terms(self) -> list[tuple[Mono, Coeff]] | None:
        if self._den == _P_ONE:
            return None
        return sorted(self._den.items())

    def numerator(self) -> "Scalar":
        return Scalar(dict(self._num))

    def denominator(self) -> "Scalar":
        return Scalar(dict(self._den))


ZERO = Scalar.zero()
ONE = Scalar.one()
IMAG = Scalar.i()
KAPPA = Scalar.param("kappa")
S_PARAM = Scalar.param("s")
R2 = Scalar.param(ROOT2_NAME)
