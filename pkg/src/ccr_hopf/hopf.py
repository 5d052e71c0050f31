"""Tensor powers of a CCR presentation and mechanical Hopf-axiom checks.

Two structure-map flavors are provided.  The classical one makes phi, pi
and I primitive with epsilon = 0 and S = -id.  The deformed one twists
the field coproducts by a central group-like pair,

    Delta(phi) = phi (x) K + Kinv (x) phi,    Delta(K) = K (x) K,

keeps Delta(I) primitive, and completes the unstated structure with
eps(K) = eps(Kinv) = 1, S(K) = Kinv, S(Kinv) = K (forced for group-like
elements), S(phi) = -phi, S(pi) = -pi, S(I) = -I.

Checkers are bounded-degree exhaustive over normal-form words in a
finite mode window.  They report residuals rather than asserting: some
combinations genuinely fail (primitive Delta(I) against I*I = I, slot
swap against the twisted coproduct) and the failure witness is part of
the contract.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import (
    BASIS_FIELD,
    DEFORMED_COLLAPSED,
    DEFORMED_STRICT,
    FAM_AM,
    FAM_AP,
    FAM_I,
    FAM_K,
    FAM_KINV,
    FAM_PHI,
    FAM_PI,
    GEN_I,
    GEN_K,
    GEN_KINV,
    UNDEFORMED,
    Expr,
    Presentation,
    gen_text,
    legal_letters,
    normal_form,
    word_text,
)
from .scalars import IMAG, ONE, ZERO, Scalar

__all__ = [
    "HopfError",
    "TensorExpr",
    "HopfSpec",
    "AxiomReport",
    "Failure",
    "tensor_of",
    "coproduct",
    "counit",
    "antipode",
    "antipode_tensor",
    "swap_slots",
    "tensor_normal_form",
    "sorted_basis_words",
    "check_respects_relations",
    "check_coassociativity",
    "check_counit",
    "check_antipode",
    "cocommutativity_probe",
    "check_multiplicativity",
]


class HopfError(ValueError):
    pass


class TensorExpr:
    """Element of the 2- or 3-fold tensor power; keys are word tuples,
    multiplication is slotwise concatenation extended bilinearly."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms=None):
        if order not in (2, 3):
            raise HopfError("tensor order must be 2 or 3")
        self.order = order
        clean = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    clean[k] = c
        self.terms = clean

    @classmethod
    def zero(cls, order: int) -> "TensorExpr":
        return cls(order)

    @classmethod
    def unit(cls, order: int) -> "TensorExpr":
        return cls(order, {((),) * order: ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.order != other.order:
            raise HopfError("tensor order mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(k, None)
            else:
                out[k] = acc
        t = TensorExpr.__new__(TensorExpr)
        t.order, t.terms = self.order, out
        return t

    def __neg__(self):
        t = TensorExpr.__new__(TensorExpr)
        t.order = self.order
        t.terms = {k: -c for k, c in self.terms.items()}
        return t

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorExpr):
            self._check(other)
            out = {}
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    k = tuple(a + b for a, b in zip(k1, k2))
                    c = c1 * c2
                    acc = out.get(k)
                    acc = c if acc is None else acc + c
                    if acc.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = acc
            t = TensorExpr.__new__(TensorExpr)
            t.order, t.terms = self.order, out
            return t
        if isinstance(other, Scalar):
            return TensorExpr(self.order, {k: c * other for k, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorExpr) or self.order != other.order:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (sum(map(len, k)), k)):
            c = self.terms[k]
            body = " (x) ".join(word_text(w) for w in k)
            if c.is_one():
                parts.append(body)
            elif (-c).is_one():
                parts.append(f"-{body}")
            else:
                parts.append(f"({c})*{body}")
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"TensorExpr({self.order}, {self})"


def tensor_of(*exprs: Expr) -> TensorExpr:
    """Outer product of 2 or 3 Exprs."""
    order = len(exprs)
    out = TensorExpr.unit(order)
    terms = {((),) * order: ONE}
    for slot, e in enumerate(exprs):
        new = {}
        for k, c in terms.items():
            for w, cw in e.terms.items():
                k2 = k[:slot] + (k[slot] + w,) + k[slot + 1 :]
                acc = new.get(k2)
                v = c * cw
                acc = v if acc is None else acc + v
                if not acc.is_zero():
                    new[k2] = acc
                else:
                    new.pop(k2, None)
        terms = new
    out.terms = terms
    return out


def swap_slots(t: TensorExpr) -> TensorExpr:
    if t.order != 2:
        raise HopfError("slot swap is defined for order 2")
    return TensorExpr(2, {(k[1], k[0]): c for k, c in t.terms.items()})


def tensor_normal_form(t: TensorExpr, p: Presentation) -> TensorExpr:
    """Per-slot reduction with bilinear recombination."""
    out = {}
    for words, coeff in t.terms.items():
        combos = [((), coeff)]
        for w in words:
            reduced = normal_form(Expr.from_word(w), p)
            new = []
            for ws, c in combos:
                for w2, c2 in reduced.terms.items():
                    new.append((ws + (w2,), c if c2.is_one() else c * c2))
            combos = new
        for ws, c in combos:
            acc = out.get(ws)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(ws, None)
            else:
                out[ws] = acc
    r = TensorExpr.__new__(TensorExpr)
    r.order, r.terms = t.order, out
    return r


# ---------------------------------------------------------------------------
# Structure maps

CLASSICAL = "classical"
DEFORMED = "deformed"


@dataclass(frozen=True)
class HopfSpec:
    flavor: str

    @classmethod
    def classical(cls) -> "HopfSpec":
        return cls(CLASSICAL)

    @classmethod
    def deformed(cls) -> "HopfSpec":
        return cls(DEFORMED)

    def __post_init__(self):
        if self.flavor not in (CLASSICAL, DEFORMED):
            raise HopfError(f"unknown flavor {self.flavor!r}")

    def covers(self, gen) -> bool:
        fam = gen[0]
        if fam in (FAM_AP, FAM_AM):
            return False
        if self.flavor == CLASSICAL:
            return fam in (FAM_I, FAM_PHI, FAM_PI)
        return True

    def _require(self, gen):
        if not self.covers(gen):
            raise HopfError(
                f"generator {gen_text(gen)} is not covered by the "
                f"{self.flavor} structure maps"
            )

    def delta_gen(self, gen) -> TensorExpr:
        self._require(gen)
        e = Expr.from_word((gen,))
        one = Expr.from_word(())
        if self.flavor == CLASSICAL or gen[0] == FAM_I:
            return tensor_of(e, one) + tensor_of(one, e)
        if gen[0] in (FAM_K, FAM_KINV):
            return tensor_of(e, e)
        k = Expr.from_word((GEN_K,))
        kinv = Expr.from_word((GEN_KINV,))
        return tensor_of(e, k) + tensor_of(kinv, e)

    def eps_gen(self, gen) -> Scalar:
        self._require(gen)
        if self.flavor == DEFORMED and gen[0] in (FAM_K, FAM_KINV):
            return ONE
        return ZERO

    def s_gen(self, gen) -> Expr:
        self._require(gen)
        if self.flavor == DEFORMED:
            if gen[0] == FAM_K:
                return Expr.from_word((GEN_KINV,))
            if gen[0] == FAM_KINV:
                return Expr.from_word((GEN_K,))
        return -Expr.from_word((gen,))


def _check_flavor_variant(h: HopfSpec, p: Presentation):
    if h.flavor == DEFORMED and p.variant == UNDEFORMED:
        raise HopfError("the deformed coproduct introduces K; use a deformed variant")
    if p.basis != BASIS_FIELD:
        raise HopfError("Hopf structure maps are defined over the phi-pi basis")


def _co_word(word, h: HopfSpec) -> TensorExpr:
    t = TensorExpr.unit(2)
    for g in word:
        t = t * h.delta_gen(g)
    return t


def coproduct(e: Expr, h: HopfSpec, p: Presentation) -> TensorExpr:
    """Multiplicative extension of the generator coproduct, reduced to
    tensor normal form."""
    _check_flavor_variant(h, p)
    out = TensorExpr.zero(2)
    for w, c in e.terms.items():
        out = out + _co_word(w, h) * c
    return tensor_normal_form(out, p)


def counit(e: Expr, h: HopfSpec) -> Scalar:
    total = ZERO
    for w, c in e.terms.items():
        v = c
        for g in w:
            v = v * h.eps_gen(g)
            if v.is_zero():
                break
        total = total + v
    return total


def antipode(e: Expr, h: HopfSpec, p: Presentation) -> Expr:
    """Anti-multiplicative extension of the generator antipode, then
    normal form."""
    out = Expr.zero()
    for w, c in e.terms.items():
        piece = Expr.from_word((), c)
        for g in reversed(w):
            piece = piece * h.s_gen(g)
        out = out + piece
    return normal_form(out, p)


def antipode_tensor(t: TensorExpr, h: HopfSpec, p: Presentation) -> TensorExpr:
    """S applied in every slot (no slot reversal), tensor-reduced."""
    out = TensorExpr.zero(t.order)
    for words, c in t.terms.items():
        pieces = []
        for w in words:
            piece = Expr.from_word(())
            for g in reversed(w):
                piece = piece * h.s_gen(g)
            pieces.append(piece)
        out = out + tensor_of(*pieces) * c
    return tensor_normal_form(out, p)


# ---------------------------------------------------------------------------
# Axiom checks


@dataclass(frozen=True)
class Failure:
    witness: str
    residual_text: str
    residual: object = field(compare=False, default=None)


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    degree: int | None
    status: str
    failures: tuple
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _report(axiom, degree, failures, notes=()):
    return AxiomReport(
        axiom=axiom,
        degree=degree,
        status="pass" if not failures else "fail",
        failures=tuple(failures),
        notes=tuple(notes),
    )


def _covered_letters(h: HopfSpec, p: Presentation, modes: int) -> list:
    letters = [g for g in legal_letters(p, modes) if h.covers(g)]
    if p.variant == DEFORMED_COLLAPSED:
        # K letters are input sugar there, not normal-form letters
        letters = [g for g in letters if g[0] not in (FAM_K, FAM_KINV)]
    if not letters or all(g[0] in (FAM_I, FAM_K, FAM_KINV) for g in letters):
        raise HopfError(
            "no covered field generators; Hopf checks run over the phi-pi basis"
        )
    return sorted(letters)


def sorted_basis_words(p: Presentation, max_degree: int, letters) -> list:
    """All normal-form words of degree <= max_degree over the letters,
    in a stable order (the empty word first)."""
    letters = sorted(letters)
    words = [()]
    level = [()]
    for _ in range(max_degree):
        nxt = []
        for w in level:
            start = letters.index(w[-1]) if w else 0
            for g in letters[start:]:
                w2 = w + (g,)
                nf = normal_form(Expr.from_word(w2), p)
                if list(nf.terms) == [w2] and nf.terms[w2].is_one():
                    nxt.append(w2)
        words.extend(nxt)
        level = nxt
    return words


def _relations(p: Presentation, h: HopfSpec, modes: int):
    """Defining relations (label, L, R) with all letters covered by h."""
    rels = []
    fams = (FAM_PHI, FAM_PI)
    lets = [(f, j) for f in fams for j in range(modes)]
    ii = Expr.from_word((GEN_I,))

    def word(*gens):
        return Expr.from_word(tuple(gens))

    for j in range(modes):
        for k in range(modes):
            g = p.gram_scalar(j, k)
            L = word((FAM_PI, j), (FAM_PHI, k))
            R = word((FAM_PHI, k), (FAM_PI, j)) - IMAG * g * p.kappa_scalar * ii
            rels.append((f"pi({j})*phi({k}) commutation", L, R))
    for j in range(modes):
        for k in range(j + 1, modes):
            rels.append(
                (f"[phi({j}),phi({k})] = 0", word((FAM_PHI, k), (FAM_PHI, j)),
                 word((FAM_PHI, j), (FAM_PHI, k)))
            )
            rels.append(
                (f"[pi({j}),pi({k})] = 0", word((FAM_PI, k), (FAM_PI, j)),
                 word((FAM_PI, j), (FAM_PI, k)))
            )
    centrals = [GEN_I]
    if p.variant == DEFORMED_STRICT and h.covers(GEN_K):
        centrals += [GEN_K, GEN_KINV]
    for z in centrals:
        x = lets[0]
        rels.append(
            (f"{gen_text(z)} central", word(x, z), word(z, x))
        )
    if p.idempotent_identity:
        rels.append(("I*I = I", ii * ii, ii))
    if p.variant == DEFORMED_STRICT and h.covers(GEN_K):
        one = Expr.from_word(())
        rels.append(("K*Kinv = 1", word(GEN_K, GEN_KINV), one))
        rels.append(("Kinv*K = 1", word(GEN_KINV, GEN_K), one))
    return rels


def check_respects_relations(h: HopfSpec, p: Presentation, modes: int = 2) -> AxiomReport:
    """Whether Delta, eps, S are well defined on the quotient: for each
    defining relation L = R, the residuals Delta(L)-Delta(R),
    eps(L)-eps(R), S(L)-S(R) are reduced and reported."""
    _check_flavor_variant(h, p)
    failures = []
    notes = []
    for label, L, R in _relations(p, h, modes):
        dres = coproduct(L, h, p) - coproduct(R, h, p)
        dres = tensor_normal_form(dres, p)
        if not dres.is_zero():
            failures.append(Failure(f"Delta on {label}", str(dres), dres))
        eres = counit(L, h) - counit(R, h)
        if not eres.is_zero():
            failures.append(Failure(f"eps on {label}", str(eres), eres))
        sres = normal_form(antipode(L, h, p) - antipode(R, h, p), p)
        if not sres.is_zero():
            failures.append(Failure(f"S on {label}", str(sres), sres))
    if any("I*I = I" in f.witness for f in failures):
        notes.append(
            "a primitive Delta(I) cannot respect I*I = I; the residual is "
            "structural, recorded as a finding rather than repaired"
        )
    return _report("respects-relations", None, failures, notes)


def check_coassociativity(
    h: HopfSpec, p: Presentation, degree: int = 3, modes: int = 2
) -> AxiomReport:
    _check_flavor_variant(h, p)
    failures = []
    for w in sorted_basis_words(p, degree, _covered_letters(h, p, modes)):
        t = coproduct(Expr.from_word(w), h, p)
        left = {}
        right = {}
        for (w1, w2), c in t.terms.items():
            for (u1, u2), c1 in _co_word(w1, h).terms.items():
                k = (u1, u2, w2)
                v = c * c1
                left[k] = left.get(k, ZERO) + v
            for (u1, u2), c2 in _co_word(w2, h).terms.items():
                k = (w1, u1, u2)
                v = c * c2
                right[k] = right.get(k, ZERO) + v
        res = tensor_normal_form(
            TensorExpr(3, left) - TensorExpr(3, right), p
        )
        if not res.is_zero():
            failures.append(Failure(word_text(w), str(res), res))
    return _report("coassociativity", degree, failures)


def check_counit(h: HopfSpec, p: Presentation, degree: int = 3, modes: int = 2) -> AxiomReport:
    _check_flavor_variant(h, p)
    failures = []
    for w in sorted_basis_words(p, degree, _covered_letters(h, p, modes)):
        t = coproduct(Expr.from_word(w), h, p)
        left = Expr.zero()
        right = Expr.zero()
        for (w1, w2), c in t.terms.items():
            left = left + Expr.from_word(w2, c * counit(Expr.from_word(w1), h))
            right = right + Expr.from_word(w1, c * counit(Expr.from_word(w2), h))
        target = normal_form(Expr.from_word(w), p)
        for side, val in (("(eps x id)", left), ("(id x eps)", right)):
            res = normal_form(val - target, p)
            if not res.is_zero():
                failures.append(Failure(f"{side} on {word_text(w)}", str(res), res))
    return _report("counit", degree, failures)


def check_antipode(h: HopfSpec, p: Presentation, degree: int = 3, modes: int = 2) -> AxiomReport:
    _check_flavor_variant(h, p)
    failures = []
    one = Expr.from_word(())
    for w in sorted_basis_words(p, degree, _covered_letters(h, p, modes)):
        e = Expr.from_word(w)
        t = coproduct(e, h, p)
        left = Expr.zero()
        right = Expr.zero()
        for (w1, w2), c in t.terms.items():
            left = left + antipode(Expr.from_word(w1), h, p) * Expr.from_word(w2, c)
            right = right + Expr.from_word(w1, c) * antipode(Expr.from_word(w2), h, p)
        target = counit(e, h) * one
        for side, val in (("m(S x id)Delta", left), ("m(id x S)Delta", right)):
            res = normal_form(val - target, p)
            if not res.is_zero():
                failures.append(Failure(f"{side} on {word_text(w)}", str(res), res))
    return _report("antipode", degree, failures)


def cocommutativity_probe(
    h: HopfSpec, p: Presentation, degree: int = 2, modes: int = 2
) -> AxiomReport:
    _check_flavor_variant(h, p)
    failures = []
    for w in sorted_basis_words(p, degree, _covered_letters(h, p, modes)):
        t = coproduct(Expr.from_word(w), h, p)
        res = tensor_normal_form(t - swap_slots(t), p)
        if not res.is_zero():
            failures.append(Failure(word_text(w), str(res), res))
    return _report("cocommutativity", degree, failures)


def check_multiplicativity(
    h: HopfSpec,
    p: Presentation,
    degree: int = 3,
    modes: int = 2,
    trials: int = 25,
    seed: int = 42,
) -> AxiomReport:
    """Delta(x*y) - Delta(x)Delta(y) for random x, y, where Delta is the
    word-wise multiplicative extension and the product is the free
    concatenation.  Well-definedness modulo the relations is the
    business of check_respects_relations."""
    _check_flavor_variant(h, p)
    letters = _covered_letters(h, p, modes)
    rng = random.Random(seed)
    pool = [ONE, -ONE, IMAG, Scalar.rational(2), Scalar.rational(1, 1)]
    failures = []
    for trial in range(trials):
        def rand_expr():
            e = Expr.zero()
            for _ in range(rng.randint(1, 3)):
                n = rng.randint(0, degree)
                w = tuple(rng.choice(letters) for _ in range(n))
                e = e + Expr.from_word(w, rng.choice(pool))
            return e

        x, y = rand_expr(), rand_expr()
        res = tensor_normal_form(
            coproduct(x * y, h, p) - coproduct(x, h, p) * coproduct(y, h, p), p
        )
        if not res.is_zero():
            failures.append(Failure(f"trial {trial}: x={x}; y={y}", str(res), res))
    return _report("multiplicativity", degree, failures)
