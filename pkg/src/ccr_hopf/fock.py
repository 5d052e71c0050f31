"""Truncated bosonic Fock-space numerics.

Occupation-number bases with a total-occupation cutoff, per-mode ladder
matrices, Bogoliubov (squeezed) families, vacuum generating functions via
the action of a matrix exponential on the vacuum vector, and the transfer
representation that keeps the field quadrature while scaling the momentum
quadrature by the deformation constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix, identity as sparse_identity
from scipy.sparse.linalg import eigsh, expm_multiply
from scipy.sparse.linalg import norm as sparse_norm

from .algebra import (
    FAM_AM,
    FAM_AP,
    FAM_I,
    FAM_K,
    FAM_KINV,
    FAM_PHI,
    FAM_PI,
    UNDEFORMED,
    Expr,
    Presentation,
    deformation_constant,
    evaluate_numeric,
)


class FockError(ValueError):
    pass


ROOT2 = math.sqrt(2.0)

# dense eigensolvers are preferred below this dimension
DENSE_EIG_LIMIT = 2000


def occupation_states(d: int, nmax: int) -> list:
    """All occupation tuples (n_0, ..., n_{d-1}) with sum <= nmax, in
    lexicographic order.  The all-zero tuple comes first."""
    out = []

    def grow(prefix, left):
        if len(prefix) == d:
            out.append(prefix)
            return
        for n in range(left + 1):
            grow(prefix + (n,), left - n)

    grow((), nmax)
    return out


def mode_degree(word) -> int:
    """Number of letters that change occupation (central letters do not)."""
    return sum(1 for fam, _ in word if fam >= FAM_PHI)


class ModeSpace:
    """d truncated modes with total occupation at most nmax.

    A non-identity gram is absorbed by Cholesky orthonormalization: the
    per-mode matrices act in orthonormal coordinates and coefficient
    vectors enter through L^H, so that [a-(v), a+(w)] = <v|w> with the
    inner product induced by the gram.
    """

    def __init__(self, d: int, nmax: int, gram=None):
        if d < 1 or nmax < 0:
            raise FockError("need d >= 1 and nmax >= 0")
        self.d = int(d)
        self.nmax = int(nmax)
        if gram is None:
            self.gram = None
            self._chol = None
        else:
            g = np.asarray(gram, dtype=complex)
            if g.shape != (self.d, self.d):
                raise FockError("gram must be a d x d matrix")
            if not np.allclose(g, g.conj().T, atol=1e-12):
                raise FockError("gram must be Hermitian")
            try:
                self._chol = np.linalg.cholesky(g)
            except np.linalg.LinAlgError:
                raise FockError("gram must be positive definite") from None
            self.gram = g
        self.states = occupation_states(self.d, self.nmax)
        self._index = {s: i for i, s in enumerate(self.states)}
        self.occupancy = np.array([sum(s) for s in self.states])
        self._am = [self._lowering(j) for j in range(self.d)]

    @property
    def dim(self) -> int:
        return len(self.states)

    def index(self, occ) -> int:
        occ = tuple(int(n) for n in occ)
        if occ not in self._index:
            raise FockError(f"occupation {occ} outside the cutoff")
        return self._index[occ]

    def _lowering(self, j):
        # <n - e_j| a-_j |n> = sqrt(n_j)
        rows, cols, vals = [], [], []
        for i, s in enumerate(self.states):
            n = s[j]
            if n:
                t = s[:j] + (n - 1,) + s[j + 1 :]
                rows.append(self._index[t])
                cols.append(i)
                vals.append(math.sqrt(n))
        return csr_matrix(
            (vals, (rows, cols)), shape=(self.dim, self.dim), dtype=complex
        )

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def safe_mask(self, degree: int) -> np.ndarray:
        """States whose image under a degree-step operator never crosses
        the cutoff, so truncation artifacts cannot reach them."""
        if degree > self.nmax:
            raise FockError("cutoff too small for this operator degree")
        return self.occupancy <= self.nmax - degree

    def coords(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex).reshape(self.d)
        if self._chol is None:
            return v
        return self._chol.conj().T @ v


def ladder_matrices(m: ModeSpace):
    """Per-mode (a+_j, a-_j) in orthonormalized coordinates."""
    am = list(m._am)
    ap = [a.conj().T.tocsr() for a in am]
    return ap, am


def ladder_of(m: ModeSpace, v):
    """(a+(v), a-(v)) for a coefficient vector v, linear through the gram;
    a-(v) is antilinear in v so that [a-(v), a+(w)] = <v|w>."""
    w = m.coords(v)
    am = csr_matrix((m.dim, m.dim), dtype=complex)
    for j in range(m.d):
        if w[j] != 0:
            am = am + np.conj(w[j]) * m._am[j]
    return am.conj().T.tocsr(), am.tocsr()


def field_pair(m: ModeSpace, v, spec=None):
    """(phi(v), pi(v)); built on the Bogoliubov ladder when spec is given."""
    if spec is None:
        ap, am = ladder_of(m, v)
    else:
        ap, am = bogoliubov_of(m, spec, v)
    phi = ((ap + am) / ROOT2).tocsr()
    pi = ((1j * (ap - am)) / ROOT2).tocsr()
    return phi, pi


def phi_pi_matrices(m: ModeSpace):
    """Per-mode field and momentum matrices phi(e_j), pi(e_j)."""
    phis, pis = [], []
    for j in range(m.d):
        e = np.zeros(m.d)
        e[j] = 1.0
        ph, pj = field_pair(m, e)
        phis.append(ph)
        pis.append(pj)
    return phis, pis


@dataclass(frozen=True)
class BogoliubovSpec:
    """Per-mode squeezing parameters r_j.

    Equivalent parameterizations: covariance scalar gamma = exp(-2r) and
    generating-function parameter c with c^2 = exp(2r)/2, so gamma =
    1/(2c^2) and r = 0 <=> gamma = 1 <=> c^2 = 1/2 (the Fock point).
    """

    rs: tuple

    def __post_init__(self):
        rs = tuple(float(r) for r in self.rs)
        if not rs:
            raise FockError("need at least one mode")
        if any(not math.isfinite(r) for r in rs):
            raise FockError("squeezing parameters must be finite")
        object.__setattr__(self, "rs", rs)

    @classmethod
    def fock(cls, d: int) -> "BogoliubovSpec":
        return cls((0.0,) * d)

    @classmethod
    def uniform(cls, d: int, r: float) -> "BogoliubovSpec":
        return cls((float(r),) * d)

    @classmethod
    def summable(cls, d: int, r: float) -> "BogoliubovSpec":
        return cls(tuple(float(r) * 2.0 ** (-j) for j in range(d)))

    @classmethod
    def from_c(cls, d: int, c: float) -> "BogoliubovSpec":
        c = float(c)
        if c <= 0:
            raise FockError("c must be positive")
        return cls.uniform(d, 0.5 * math.log(2.0 * c * c))

    @classmethod
    def from_gamma(cls, d: int, gamma: float) -> "BogoliubovSpec":
        gamma = float(gamma)
        if gamma <= 0:
            raise FockError("gamma must be positive")
        return cls.uniform(d, -0.5 * math.log(gamma))

    @property
    def gammas(self) -> tuple:
        return tuple(math.exp(-2.0 * r) for r in self.rs)

    @property
    def cs(self) -> tuple:
        return tuple(math.sqrt(math.exp(2.0 * r) / 2.0) for r in self.rs)


def bogoliubov_ladder(m: ModeSpace, spec: BogoliubovSpec):
    """Per-mode (b+_j, b-_j) with b-_j = cosh(r_j) a-_j + sinh(r_j) a+_j."""
    if len(spec.rs) != m.d:
        raise FockError("spec and mode space disagree on the mode count")
    ap, am = ladder_matrices(m)
    bm = [
        (math.cosh(r) * am[j] + math.sinh(r) * ap[j]).tocsr()
        for j, r in enumerate(spec.rs)
    ]
    bp = [b.conj().T.tocsr() for b in bm]
    return bp, bm


def bogoliubov_of(m: ModeSpace, spec: BogoliubovSpec, v):
    """(b+(v), b-(v)) by the same (anti)linearity as the Fock ladder."""
    bp, bm = bogoliubov_ladder(m, spec)
    w = m.coords(v)
    acc = csr_matrix((m.dim, m.dim), dtype=complex)
    for j in range(m.d):
        if w[j] != 0:
            acc = acc + np.conj(w[j]) * bm[j]
    return acc.conj().T.tocsr(), acc.tocsr()


def number_operator(m: ModeSpace, spec: BogoliubovSpec | None = None):
    """N = sum_j b+_j b-_j; the plain Fock number operator when spec is
    None (then N is diagonal with the total occupation as eigenvalue)."""
    if spec is None:
        spec = BogoliubovSpec.fock(m.d)
    bp, bm = bogoliubov_ladder(m, spec)
    n = csr_matrix((m.dim, m.dim), dtype=complex)
    for j in range(m.d):
        n = n + bp[j] @ bm[j]
    return n.tocsr()


def vacuum_generating_function(m: ModeSpace, v, spec=None) -> complex:
    """<vac| exp(i phi(v)) |vac>, computed by applying the exponential to
    the vacuum vector rather than forming a dense exponential."""
    phi, _ = field_pair(m, v, spec)
    image = expm_multiply(1j * phi, m.vacuum())
    return complex(np.vdot(m.vacuum(), image))


@dataclass(frozen=True)
class TransferRep:
    """Representation keeping phi and scaling pi by the deformation
    constant; the group-like generator acts as the scalar q^(c/2)."""

    space: ModeSpace
    q: float
    c: float
    constant: float
    scale: float

    def phi(self, v):
        return field_pair(self.space, v)[0]

    def pi(self, v):
        return (self.constant * field_pair(self.space, v)[1]).tocsr()


def transfer_rep(m: ModeSpace, q: float, c: float) -> TransferRep:
    q = float(q)
    c = float(c)
    return TransferRep(m, q, c, deformation_constant(q, c), q ** (c / 2.0))


def _letter_matrices(m: ModeSpace, constant: float, scale: float) -> dict:
    eye = sparse_identity(m.dim, dtype=complex, format="csr")
    phis, pis = phi_pi_matrices(m)
    mats = {
        (FAM_I, 0): eye,
        (FAM_K, 0): (scale * eye).tocsr(),
        (FAM_KINV, 0): ((1.0 / scale) * eye).tocsr(),
    }
    for j in range(m.d):
        ph = phis[j]
        pj = (constant * pis[j]).tocsr()
        mats[(FAM_PHI, j)] = ph
        mats[(FAM_PI, j)] = pj
        mats[(FAM_AP, j)] = ((ph - 1j * pj) / ROOT2).tocsr()
        mats[(FAM_AM, j)] = ((ph + 1j * pj) / ROOT2).tocsr()
    return mats


def expr_matrix(e: Expr, m: ModeSpace, p: Presentation, q=None, c=None):
    """Numeric matrix of a symbolic element under the transfer
    representation.  A numeric presentation supplies (q, c) itself; a
    symbolic deformed presentation needs them passed explicitly; the
    undeformed variant uses constant 1."""
    if p.q is not None:
        q, c = p.q, p.c
    if p.variant == UNDEFORMED:
        constant, scale = 1.0, 1.0
    elif q is None or c is None:
        raise FockError("numeric q and c are required for a symbolic presentation")
    else:
        constant = deformation_constant(q, c)
        scale = float(q) ** (float(c) / 2.0)
    mats = _letter_matrices(m, constant, scale)
    eye = mats[(FAM_I, 0)]
    total = csr_matrix((m.dim, m.dim), dtype=complex)
    for word, coeff in sorted(evaluate_numeric(e, {"kappa": constant, "s": scale}).items()):
        cur = eye
        for letter in word:
            if letter not in mats:
                raise FockError(f"generator {letter} needs a mode index below d={m.d}")
            cur = cur @ mats[letter]
        total = total + coeff * cur
    return total.tocsr()


def commutator_matrix(a, b):
    return (a @ b - b @ a).tocsr()


def restricted_norm(m: ModeSpace, a, degree: int) -> float:
    """Frobenius norm of the columns of a indexed by the safe subspace for
    operators of the given degree."""
    cols = np.where(m.safe_mask(degree))[0]
    if hasattr(a, "tocsc"):
        return float(sparse_norm(a.tocsc()[:, cols]))
    return float(np.linalg.norm(np.asarray(a)[:, cols]))


def smallest_eigenvalues(a, k: int) -> tuple:
    """Lowest k eigenvalues of a Hermitian sparse matrix, ascending; dense
    below DENSE_EIG_LIMIT, Lanczos with a fixed start vector above it."""
    dim = a.shape[0]
    if dim <= DENSE_EIG_LIMIT:
        vals = np.linalg.eigvalsh(a.toarray())
        return tuple(float(x) for x in vals[: min(k, dim)])
    k = min(k, dim - 1)
    v0 = np.ones(dim) / math.sqrt(dim)
    vals = eigsh(a, k=k, which="SA", v0=v0, return_eigenvectors=False)
    return tuple(float(x) for x in np.sort(vals))


@dataclass(frozen=True)
class SpectrumReport:
    name: str
    d: int
    nmax: int
    vacuum_occupancy: float
    eigenvalues: tuple
    converged: bool


@dataclass(frozen=True)
class TrendReport:
    uniform: tuple
    summable: tuple
    uniform_slope: float
    summable_slope: float
    slope_ratio: float


def fit_slope(xs, ys) -> float:
    return float(np.polyfit(np.asarray(xs, float), np.asarray(ys, float), 1)[0])


def _trend_point(d, nmax, spec, k_eigs):
    m = ModeSpace(d, nmax)
    n = number_operator(m, spec)
    vac = m.vacuum()
    occ = float(np.vdot(vac, n @ vac).real)
    eigs = smallest_eigenvalues(n, k_eigs) if k_eigs else ()
    return occ, eigs


def boundedness_trend(
    d_values=(1, 2, 3),
    nmax: int = 30,
    r: float = 0.5 * math.log(2.0),
    k_eigs: int = 0,
) -> TrendReport:
    """Growth of the Bogoliubov vacuum cost with the mode count.

    Each report carries <vac| N_b |vac> = sum_j sinh^2(r_j), the quantity
    whose divergence as d grows marks a ladder family leaving the Fock
    class: linear growth for uniform r_j = r, a bounded plateau for the
    summable family r_j = r 2^-j.  The smallest eigenvalues of the
    truncated N_b itself sit at numerical zero for every finite d (the
    squeezed vacuum survives truncation, its amplitudes fall off like
    tanh(r)^n), so they are computed only on request via k_eigs; the
    trend lives in the vacuum cost, not in the minimum of the spectrum.
    """
    families = (
        ("uniform", lambda d: BogoliubovSpec.uniform(d, r)),
        ("summable", lambda d: BogoliubovSpec.summable(d, r)),
    )
    reports = {}
    for name, make in families:
        rows = []
        for d in d_values:
            spec = make(d)
            occ, eigs = _trend_point(d, nmax, spec, k_eigs)
            occ2, eigs2 = _trend_point(d, max(nmax - 2, 1), spec, k_eigs)
            conv = abs(occ - occ2) <= 1e-9
            if eigs and eigs2:
                conv = conv and abs(eigs[0] - eigs2[0]) <= 1e-7
            rows.append(
                SpectrumReport(f"number[{name}, d={d}]", d, nmax, occ, eigs, conv)
            )
        reports[name] = rows
    ds = [float(d) for d in d_values]
    us = fit_slope(ds, [rep.vacuum_occupancy for rep in reports["uniform"]])
    ss = fit_slope(ds, [rep.vacuum_occupancy for rep in reports["summable"]])
    ratio = math.inf if ss == 0.0 else abs(us / ss)
    return TrendReport(tuple(reports["uniform"]), tuple(reports["summable"]), us, ss, ratio)
