"""Exact normal ordering for CCR (Heisenberg) algebras and their
q-deformed variants.

Generators are basis-indexed: the field pair phi(j), pi(j), the ladder
pair ap(j), am(j), the central Hermitian element I, and (in the strict
deformed variant) a central group-like pair K, Kinv.  Arbitrary smeared
arguments are recovered by linearity through a Gram form.

Words are reduced against a fixed generator order

    I < K < Kinv < phi(0) < phi(1) < ... < pi(0) < pi(1) < ...
    I < K < Kinv < ap(0)  < ap(1)  < ... < am(0) < am(1) < ...

by adjacent transpositions.  The only order-violating pairs that pick up
a correction term are pi(j)phi(k) and am(j)ap(k); every swap either
preserves degree and lowers the inversion count or strictly lowers the
degree, so reduction terminates, and confluence is exercised by reducing
under two independent schedules.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import IMAG, KAPPA, ONE, R2, S_PARAM, ZERO, Scalar

__all__ = [
    "AlgebraError",
    "Expr",
    "Gram",
    "Presentation",
    "UNDEFORMED",
    "DEFORMED_STRICT",
    "DEFORMED_COLLAPSED",
    "phi",
    "pi",
    "ap",
    "am",
    "gen_I",
    "gen_K",
    "gen_Kinv",
    "unit",
    "normal_form",
    "commutator",
    "adjoint",
    "basis_convert",
    "expand_k",
    "deformation_constant",
    "evaluate_numeric",
    "gen_text",
    "word_text",
    "word_degree",
    "random_word",
    "random_expr",
]

# generator families; tuple order (family, mode) is the normal order
FAM_I, FAM_K, FAM_KINV, FAM_PHI, FAM_PI, FAM_AP, FAM_AM = range(7)

_CENTRAL = frozenset((FAM_I, FAM_K, FAM_KINV))
_FIELD = frozenset((FAM_PHI, FAM_PI))
_LADDER = frozenset((FAM_AP, FAM_AM))

GEN_I = (FAM_I, 0)
GEN_K = (FAM_K, 0)
GEN_KINV = (FAM_KINV, 0)

UNDEFORMED = "undeformed"
DEFORMED_STRICT = "deformed-strict"
DEFORMED_COLLAPSED = "deformed-collapsed"
_VARIANTS = (UNDEFORMED, DEFORMED_STRICT, DEFORMED_COLLAPSED)

BASIS_FIELD = "phi-pi"
BASIS_LADDER = "ladder"
_BASES = (BASIS_FIELD, BASIS_LADDER)

_FAM_NAMES = ("I", "K", "Kinv", "phi", "pi", "ap", "am")


class AlgebraError(ValueError):
    pass


def gen_text(g) -> str:
    fam, mode = g
    if fam in _CENTRAL:
        return _FAM_NAMES[fam]
    return f"{_FAM_NAMES[fam]}({mode})"


def word_text(word) -> str:
    """Deterministic rendering with run-length powers; the empty word
    prints as the unit symbol."""
    if not word:
        return "one"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        parts.append(gen_text(word[i]) if j - i == 1 else f"{gen_text(word[i])}^{j - i}")
        i = j
    return "*".join(parts)


def word_degree(word) -> int:
    return len(word)


def _coerce_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.rational(x)
    if isinstance(x, complex):
        return Scalar.from_complex(x)
    return None


class Expr:
    """Finitely supported linear combination of generator words.

    Multiplication concatenates words bilinearly; no relations are
    applied until :func:`normal_form`.  Zero coefficients are never
    stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    clean[w] = c
        self.terms = clean

    @classmethod
    def from_word(cls, word, coeff=ONE) -> "Expr":
        e = cls.__new__(cls)
        e.terms = {} if coeff.is_zero() else {tuple(word): coeff}
        return e

    @classmethod
    def zero(cls) -> "Expr":
        e = cls.__new__(cls)
        e.terms = {}
        return e

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def words(self):
        return sorted(self.terms)

    def coefficient(self, word) -> Scalar:
        return self.terms.get(tuple(word), ZERO)

    def map_coefficients(self, f) -> "Expr":
        return Expr({w: f(c) for w, c in self.terms.items()})

    # -- linear structure -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Expr):
            s = _coerce_scalar(other)
            if s is None:
                return NotImplemented
            other = Expr.from_word((), s)
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(w, None)
            else:
                out[w] = acc
        e = Expr.__new__(Expr)
        e.terms = out
        return e

    __radd__ = __add__

    def __neg__(self):
        e = Expr.__new__(Expr)
        e.terms = {w: -c for w, c in self.terms.items()}
        return e

    def __sub__(self, other):
        if not isinstance(other, Expr):
            s = _coerce_scalar(other)
            if s is None:
                return NotImplemented
            other = Expr.from_word((), s)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Expr):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    acc = out.get(w)
                    acc = c if acc is None else acc + c
                    if acc.is_zero():
                        out.pop(w, None)
                    else:
                        out[w] = acc
            e = Expr.__new__(Expr)
            e.terms = out
            return e
        s = _coerce_scalar(other)
        if s is None:
            return NotImplemented
        if s.is_zero():
            return Expr.zero()
        return Expr({w: c * s for w, c in self.terms.items()})

    def __rmul__(self, other):
        # scalars commute with everything, so left action equals right action
        s = _coerce_scalar(other)
        if s is None:
            return NotImplemented
        return self * s

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Expr.from_word(())
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Expr):
            s = _coerce_scalar(other)
            if s is None:
                return NotImplemented
            other = Expr.from_word((), s)
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            wt = word_text(w)
            if c.is_one():
                t = wt
            elif (-c).is_one():
                t = f"-{wt}"
            elif c.is_constant() and not c.constant_value()[1] and w:
                t = f"{c}*{wt}"
            elif w:
                t = f"({c})*{wt}"
            else:
                cs = str(c)
                t = cs if ("+" not in cs[1:] and "-" not in cs[1:]) else f"({cs})"
                t = f"{t}*one"
            parts.append(t)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"Expr({self})"


def phi(j: int) -> Expr:
    return Expr.from_word(((FAM_PHI, int(j)),))


def pi(j: int) -> Expr:
    return Expr.from_word(((FAM_PI, int(j)),))


def ap(j: int) -> Expr:
    return Expr.from_word(((FAM_AP, int(j)),))


def am(j: int) -> Expr:
    return Expr.from_word(((FAM_AM, int(j)),))


def gen_I() -> Expr:
    return Expr.from_word((GEN_I,))


def gen_K() -> Expr:
    return Expr.from_word((GEN_K,))


def gen_Kinv() -> Expr:
    return Expr.from_word((GEN_KINV,))


def unit() -> Expr:
    return Expr.from_word(())


# ---------------------------------------------------------------------------
# Gram form


class Gram:
    """Hermitian form on mode indices.  ``None`` entries mean the
    Kronecker delta on all of N; an explicit matrix bounds the usable
    mode window."""

    def __init__(self, entries=None):
        if entries is None:
            self._rows = None
            return
        rows = []
        for row in entries:
            rows.append([self._coerce(x) for x in row])
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise AlgebraError("gram matrix must be square")
        for j in range(n):
            for k in range(n):
                if not (rows[j][k].conjugate() == rows[k][j]):
                    raise AlgebraError("gram matrix must be Hermitian")
        self._rows = rows

    @staticmethod
    def _coerce(x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.rational(x)
        if isinstance(x, str):
            return Scalar.rational(Fraction(x))
        if isinstance(x, complex):
            return Scalar.from_complex(x)
        if isinstance(x, float):
            return Scalar.rational(Fraction(x))
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return Scalar.rational(Fraction(x[0]), Fraction(x[1]))
        raise AlgebraError(f"cannot coerce gram entry {x!r}")

    @property
    def is_delta(self) -> bool:
        return self._rows is None

    @property
    def size(self):
        return None if self._rows is None else len(self._rows)

    def scalar(self, j: int, k: int) -> Scalar:
        if self._rows is None:
            return ONE if j == k else ZERO
        if j >= len(self._rows) or k >= len(self._rows):
            raise AlgebraError(
                f"mode index {max(j, k)} outside the {len(self._rows)}-mode gram"
            )
        return self._rows[j][k]

    def to_complex(self, j: int, k: int) -> complex:
        return self.scalar(j, k).to_complex()


# ---------------------------------------------------------------------------
# Presentation


@dataclass(frozen=True, eq=False)
class Presentation:
    """Which quotient algebra is in force.

    variant:
      undeformed          kappa = 1, no K/Kinv
      deformed-strict     K, Kinv free central group-likes, K*Kinv -> 1
      deformed-collapsed  K, Kinv legal as input, substituted via I*I = I
    deformation is symbolic (parameters kappa, s) unless numeric q, c are
    both given, in which case kappa = C_{q,c} and s = q^(c/2) are embedded
    exactly as binary rationals.
    """

    variant: str = UNDEFORMED
    basis: str = BASIS_FIELD
    gram: Gram | None = None
    q: float | None = None
    c: float | None = None
    idempotent_identity: bool = True

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise AlgebraError(f"unknown variant {self.variant!r}")
        if self.basis not in _BASES:
            raise AlgebraError(f"unknown basis {self.basis!r}")
        g = self.gram
        if not isinstance(g, Gram):
            g = Gram(g)
        object.__setattr__(self, "gram", g)
        if (self.q is None) != (self.c is None):
            raise AlgebraError("numeric deformation needs both q and c")
        if self.variant == DEFORMED_COLLAPSED and not self.idempotent_identity:
            raise AlgebraError(
                "the collapsed variant relies on I*I = I; "
                "idempotent_identity cannot be disabled"
            )
        if self.variant == UNDEFORMED:
            kappa = ONE
            s = s_inv = None
        elif self.q is not None:
            if self.q <= 0 or self.c <= 0:
                raise AlgebraError("q and c must be positive")
            kappa = Scalar.rational(Fraction(deformation_constant(self.q, self.c)))
            s_frac = Fraction(float(self.q ** (self.c / 2)))
            s = Scalar.rational(s_frac)
            s_inv = Scalar.rational(1 / s_frac)
        else:
            kappa, s, s_inv = KAPPA, S_PARAM, S_PARAM ** -1
        object.__setattr__(self, "_kappa", kappa)
        object.__setattr__(self, "_s", s)
        object.__setattr__(self, "_s_inv", s_inv)
        object.__setattr__(self, "_nf_cache", {})

    @property
    def kappa_scalar(self) -> Scalar:
        return self._kappa

    @property
    def s_scalar(self) -> Scalar:
        if self._s is None:
            raise AlgebraError("undeformed presentation has no s")
        return self._s

    @property
    def s_inv_scalar(self) -> Scalar:
        if self._s_inv is None:
            raise AlgebraError("undeformed presentation has no s")
        return self._s_inv

    def gram_scalar(self, j: int, k: int) -> Scalar:
        return self.gram.scalar(j, k)

    def with_basis(self, basis: str) -> "Presentation":
        if basis == self.basis:
            return self
        return Presentation(
            variant=self.variant,
            basis=basis,
            gram=self.gram,
            q=self.q,
            c=self.c,
            idempotent_identity=self.idempotent_identity,
        )

    def legal_families(self) -> frozenset:
        if self.variant == UNDEFORMED:
            return frozenset((FAM_I,)) | _FIELD | _LADDER
        return frozenset(range(7))

    def validate_expr(self, e: Expr) -> None:
        legal = self.legal_families()
        for w in e.terms:
            for g in w:
                if g[0] not in legal:
                    raise AlgebraError(
                        f"generator {gen_text(g)} is not legal in the "
                        f"{self.variant} variant"
                    )


# ---------------------------------------------------------------------------
# Rewrite engine


def _find_redex(word, p: Presentation, schedule: str):
    n = len(word) - 1
    positions = range(n) if schedule == "leftmost" else range(n - 1, -1, -1)
    strict = p.variant == DEFORMED_STRICT
    idem = p.idempotent_identity
    for i in positions:
        g1, g2 = word[i], word[i + 1]
        f1, f2 = g1[0], g2[0]
        if f1 == FAM_I and f2 == FAM_I:
            if idem:
                return i
            continue
        if strict and ((f1 == FAM_K and f2 == FAM_KINV) or (f1 == FAM_KINV and f2 == FAM_K)):
            return i
        if g1 > g2:
            return i
    return None


def _apply_redex(word, i: int, p: Presentation):
    """One rewrite step at position i; returns [(word, multiplier)]."""
    g1, g2 = word[i], word[i + 1]
    f1, f2 = g1[0], g2[0]
    head, tail = word[:i], word[i + 2 :]
    if f1 == FAM_I and f2 == FAM_I:
        return [(head + (GEN_I,) + tail, ONE)]
    if (f1 == FAM_K and f2 == FAM_KINV) or (f1 == FAM_KINV and f2 == FAM_K):
        return [(head + tail, ONE)]
    swapped = head + (g2, g1) + tail
    if f1 in _CENTRAL or f2 in _CENTRAL or f1 == f2:
        return [(swapped, ONE)]
    if f1 == FAM_PI and f2 == FAM_PHI:
        g = p.gram_scalar(g1[1], g2[1])
        out = [(swapped, ONE)]
        if not g.is_zero():
            out.append((head + (GEN_I,) + tail, -IMAG * g * p.kappa_scalar))
        return out
    if f1 == FAM_AM and f2 == FAM_AP:
        g = p.gram_scalar(g1[1], g2[1])
        out = [(swapped, ONE)]
        if not g.is_zero():
            out.append((head + (GEN_I,) + tail, g * p.kappa_scalar))
        return out
    raise AlgebraError(f"no rewrite for adjacent pair {gen_text(g1)},{gen_text(g2)}")


def _acc(table: dict, word, coeff: Scalar) -> None:
    cur = table.get(word)
    cur = coeff if cur is None else cur + coeff
    if cur.is_zero():
        table.pop(word, None)
    else:
        table[word] = cur


def _reduce_word(word, p: Presentation, schedule: str) -> dict:
    if schedule == "leftmost":
        hit = p._nf_cache.get(word)
        if hit is not None:
            return hit
    out = {}
    work = [(word, ONE)]
    while work:
        w, m = work.pop()
        i = _find_redex(w, p, schedule)
        if i is None:
            _acc(out, w, m)
            continue
        for w2, m2 in _apply_redex(w, i, p):
            if m2.is_one():
                work.append((w2, m))
            elif m.is_one():
                work.append((w2, m2))
            else:
                work.append((w2, m * m2))
    if schedule == "leftmost":
        p._nf_cache[word] = out
    return out


def _letter_substitution(p: Presentation):
    """Per-letter replacement map handling K-collapse and basis mixing.
    Returns None when nothing needs substituting for this presentation."""
    half_r2 = ONE / R2  # folds to r2/2 exactly
    sub = {}
    if p.variant == DEFORMED_COLLAPSED:
        one_e = unit()
        sub[GEN_K] = one_e + (p.s_scalar - ONE) * gen_I()
        sub[GEN_KINV] = one_e + (p.s_inv_scalar - ONE) * gen_I()
    return sub, half_r2


def _expand_word(word, p: Presentation) -> Expr:
    """Substitute collapsed K letters and out-of-basis letters, leaving
    a word expression over the presentation's own basis."""
    sub, half_r2 = _letter_substitution(p)
    target_field = p.basis == BASIS_FIELD
    out = Expr.from_word(())
    for g in word:
        fam = g[0]
        if g in sub:
            piece = sub[g]
        elif target_field and fam in _LADDER:
            j = g[1]
            if fam == FAM_AP:
                piece = (phi(j) - IMAG * pi(j)) * half_r2
            else:
                piece = (phi(j) + IMAG * pi(j)) * half_r2
        elif not target_field and fam in _FIELD:
            j = g[1]
            if fam == FAM_PHI:
                piece = (ap(j) + am(j)) * half_r2
            else:
                piece = IMAG * (ap(j) - am(j)) * half_r2
        else:
            piece = Expr.from_word((g,))
        out = out * piece
    return out


def _needs_expansion(word, p: Presentation) -> bool:
    collapse = p.variant == DEFORMED_COLLAPSED
    alien = _LADDER if p.basis == BASIS_FIELD else _FIELD
    for g in word:
        if g[0] in alien:
            return True
        if collapse and g[0] in (FAM_K, FAM_KINV):
            return True
    return False


def normal_form(e: Expr, p: Presentation, schedule: str = "leftmost") -> Expr:
    """Canonical representative of e in the quotient algebra of p.

    The result is supported on words that are non-decreasing in the
    generator order and stable under the contraction rules; it is
    congruent to e modulo the presentation's relations and independent
    of the rewrite schedule.
    """
    if schedule not in ("leftmost", "rightmost"):
        raise AlgebraError(f"unknown schedule {schedule!r}")
    p.validate_expr(e)
    terms = e.terms
    expanded = None
    for w in terms:
        if _needs_expansion(w, p):
            expanded = Expr.zero()
            break
    if expanded is not None:
        for w, c in terms.items():
            expanded = expanded + _expand_word(w, p) * c
        terms = expanded.terms
    out = {}
    for word, coeff in terms.items():
        for w, m in _reduce_word(word, p, schedule).items():
            _acc(out, w, coeff if m.is_one() else coeff * m)
    r = Expr.__new__(Expr)
    r.terms = out
    return r


def commutator(x: Expr, y: Expr, p: Presentation) -> Expr:
    return normal_form(x * y - y * x, p)


_ADJ_SWAP = {FAM_AP: FAM_AM, FAM_AM: FAM_AP}


def adjoint(e: Expr, p: Presentation | None = None) -> Expr:
    """Anti-linear anti-automorphism: reverses words, conjugates
    coefficients, fixes phi/pi/I/K/Kinv and swaps ap <-> am."""
    if p is not None:
        p.validate_expr(e)
    out = {}
    for w, c in e.terms.items():
        w2 = tuple((_ADJ_SWAP.get(f, f), m) for f, m in reversed(w))
        _acc(out, w2, c.conjugate())
    r = Expr.__new__(Expr)
    r.terms = out
    return r


def basis_convert(e: Expr, target: str, p: Presentation) -> Expr:
    """Rewrite e over the target basis (phi-pi or ladder) and reduce.
    Round trip composes to normal_form in the original basis."""
    if target not in _BASES:
        raise AlgebraError(f"unknown basis {target!r}")
    return normal_form(e, p.with_basis(target))


def expand_k(e: Expr, p: Presentation) -> Expr:
    """Substitute K = 1 + (s-1) I and Kinv = 1 + (1/s - 1) I, the
    exponential of an idempotent, then reduce."""
    if p.variant != DEFORMED_COLLAPSED:
        raise AlgebraError("expand_k applies to the deformed-collapsed variant")
    return normal_form(e, p)


def deformation_constant(q: float, c: float, limit_threshold: float = 1e-8) -> float:
    """C_{q,c} = (q^c - q^-c) / (c (q - 1/q)), with the removable
    singularity at q = 1 handled by a series branch."""
    q = float(q)
    c = float(c)
    if q <= 0 or c <= 0:
        raise AlgebraError("q and c must be positive")
    if c == 1.0:
        return 1.0
    t = math.log(q)
    if abs(q - 1.0) <= limit_threshold:
        return 1.0 + t * t * (c * c - 1.0) / 6.0
    return math.sinh(c * t) / (c * math.sinh(t))


def evaluate_numeric(e: Expr, assignment: Mapping[str, float] | None = None) -> dict:
    """Coefficient-wise evaluation to complex floats; word structure is
    unchanged.  Returns a word -> complex mapping."""
    assignment = assignment or {}
    out = {}
    for w, c in e.terms.items():
        out[w] = c.to_complex(assignment)
    return out


# ---------------------------------------------------------------------------
# Seeded random data for property loops


def legal_letters(p: Presentation, modes: int) -> list:
    letters = [GEN_I]
    if p.variant != UNDEFORMED:
        letters += [GEN_K, GEN_KINV]
    fams = (FAM_PHI, FAM_PI) if p.basis == BASIS_FIELD else (FAM_AP, FAM_AM)
    for f in fams:
        letters += [(f, j) for j in range(modes)]
    return letters


def random_word(rng: random.Random, p: Presentation, max_degree: int, modes: int):
    letters = legal_letters(p, modes)
    n = rng.randint(0, max_degree)
    return tuple(rng.choice(letters) for _ in range(n))


def random_expr(
    rng: random.Random,
    p: Presentation,
    max_degree: int,
    modes: int,
    nterms: int = 3,
    coeff_pool=None,
) -> Expr:
    if coeff_pool is None:
        coeff_pool = [
            ONE,
            -ONE,
            IMAG,
            -IMAG,
            Scalar.rational(Fraction(1, 2)),
            Scalar.rational(2),
            R2,
            ONE + IMAG,
        ]
    e = Expr.zero()
    for _ in range(rng.randint(1, nterms)):
        w = random_word(rng, p, max_degree, modes)
        e = e + Expr.from_word(w, rng.choice(coeff_pool))
    return e
