"""Reverse-order-law diagnostics for the Einstein product.

The reverse-order law (ROL) asks when ``pinv(A @ B) == pinv(B) @ pinv(A)``.
It holds for invertible factors but not in general; this module evaluates
the direct residual together with every known equivalent characterization,
the unitary-factor shortcut formulas, the projector commutation identities,
the three-way zero equivalence, and a seeded randomized search that
cross-validates all of them against each other.

Characterization groups evaluated by :func:`rol_report` (A is I x J, B is
J x K; ``P = pinv(A) @ A`` and ``Q = B @ pinv(B)`` are the projectors):

* ``direct``        : pinv(A@B) == pinv(B) @ pinv(A)
* ``absorb_left``   : P @ B @ B.H @ A.H == B @ B.H @ A.H
* ``absorb_right``  : Q @ A.H @ A @ B == A.H @ A @ B
* ``herm_left``     : P @ B @ B.H is hermitian
* ``herm_right``    : A.H @ A @ Q is hermitian
* ``paired_product``: (P @ B @ B.H) @ (A.H @ A @ Q) == B @ B.H @ A.H @ A
* ``factor_left``   : P @ B == B @ pinv(A@B) @ A @ B
* ``factor_right``  : Q @ A.H == A.H @ A @ B @ pinv(A@B)
* ``commute``       : P @ Q == Q @ P

``direct``, ``absorb_left AND absorb_right``, ``herm_left AND
herm_right``, ``paired_product`` and ``factor_left AND factor_right`` are
equivalent; ``commute`` is only implied by them, not conversely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_POLICY,
    DenseTensor,
    ModeShape,
    NumericPolicy,
    ShapeMismatchError,
    conj_transpose,
    diagonal_from,
    einstein_product,
    frobenius_norm,
    identity,
    rel_residual,
    zeros,
)
from .mpinv import pinv
from .unfold import dematricize

__all__ = [
    "RolReport",
    "ZeroEquivalenceReport",
    "ProjectorCommuteReport",
    "FuzzSummary",
    "rol_report",
    "unitary_rol",
    "sandwich_pinv",
    "zero_equivalence",
    "projector_commute_report",
    "fuzz_search",
    "FUZZ_FAMILIES",
]


@dataclass(frozen=True)
class RolReport:
    """Residuals of every reverse-order-law characterization for one pair.

    All residuals follow the shared relative rule of
    :func:`tenrol.core.rel_residual`; booleans threshold them at ``tol``.
    Residual magnitudes legitimately differ across conditions, so
    equivalence is judged on booleans, never on residual values.
    """

    direct: float
    absorb_left: float
    absorb_right: float
    herm_left: float
    herm_right: float
    paired_product: float
    factor_left: float
    factor_right: float
    commute: float
    tol: float

    @property
    def residuals(self) -> dict[str, float]:
        return {
            "direct": self.direct,
            "absorb_left": self.absorb_left,
            "absorb_right": self.absorb_right,
            "herm_left": self.herm_left,
            "herm_right": self.herm_right,
            "paired_product": self.paired_product,
            "factor_left": self.factor_left,
            "factor_right": self.factor_right,
            "commute": self.commute,
        }

    @property
    def booleans(self) -> dict[str, bool]:
        return {name: r <= self.tol for name, r in self.residuals.items()}

    @property
    def groups(self) -> dict[str, bool]:
        """The five equivalent characterization groups as booleans."""
        ok = self.booleans
        return {
            "direct": ok["direct"],
            "absorb": ok["absorb_left"] and ok["absorb_right"],
            "hermitian": ok["herm_left"] and ok["herm_right"],
            "paired": ok["paired_product"],
            "factor": ok["factor_left"] and ok["factor_right"],
        }

    @property
    def holds(self) -> bool:
        """True when the reverse-order law holds for the pair."""
        return self.direct <= self.tol

    @property
    def consistent(self) -> bool:
        """True when all five characterization groups agree."""
        values = set(self.groups.values())
        return len(values) == 1

    @property
    def implication_ok(self) -> bool:
        """True unless the one-way implication direct => commute is violated."""
        return (not self.holds) or self.commute <= self.tol

    def as_dict(self) -> dict:
        return {
            "tol": self.tol,
            "residuals": self.residuals,
            "booleans": self.booleans,
            "groups": self.groups,
            "holds": self.holds,
            "consistent": self.consistent,
            "implication_ok": self.implication_ok,
        }


def _chain(*ts: DenseTensor) -> DenseTensor:
    out = ts[0]
    for t in ts[1:]:
        out = einstein_product(out, t)
    return out


def rol_report(a: DenseTensor, b: DenseTensor, policy: NumericPolicy | None = None) -> RolReport:
    """Evaluate every reverse-order-law characterization on the pair (a, b).

    Exactly three pseudoinverses are computed: ``pinv(a)``, ``pinv(b)``
    and ``pinv(a @ b)``; everything else is products.

    Raises
    ------
    ShapeMismatchError
        If ``a.col_dims != b.row_dims``.
    """
    policy = policy or DEFAULT_POLICY
    ah = conj_transpose(a)
    bh = conj_transpose(b)
    ap = pinv(a, policy)
    bp = pinv(b, policy)
    abp = pinv(einstein_product(a, b), policy)

    p = einstein_product(ap, a)  # pinv(A) @ A
    q = einstein_product(b, bp)  # B @ pinv(B)
    bbh = einstein_product(b, bh)
    aha = einstein_product(ah, a)
    t_left = einstein_product(p, bbh)
    t_right = einstein_product(aha, q)

    return RolReport(
        direct=rel_residual(abp, einstein_product(bp, ap)),
        absorb_left=rel_residual(_chain(t_left, ah), _chain(bbh, ah)),
        absorb_right=rel_residual(_chain(q, aha, b), _chain(aha, b)),
        herm_left=rel_residual(t_left, conj_transpose(t_left)),
        herm_right=rel_residual(t_right, conj_transpose(t_right)),
        paired_product=rel_residual(_chain(t_left, t_right), _chain(bbh, aha)),
        factor_left=rel_residual(_chain(p, b), _chain(b, abp, a, b)),
        factor_right=rel_residual(_chain(q, ah), _chain(aha, b, abp)),
        commute=rel_residual(_chain(p, q), _chain(q, p)),
        tol=policy.eq_tol,
    )


def _unitary_residual(t: DenseTensor) -> float:
    if not t.shape.is_square:
        return float("inf")
    eye = identity(t.shape.row_dims)
    th = conj_transpose(t)
    return max(
        rel_residual(einstein_product(t, th), eye),
        rel_residual(einstein_product(th, t), eye),
    )


def unitary_rol(a: DenseTensor, b: DenseTensor, policy: NumericPolicy | None = None) -> DenseTensor:
    """Shortcut pseudoinverse of ``a @ b`` when one factor is unitary.

    With ``b`` unitary the result is ``b.H @ pinv(a)``; with ``a`` unitary
    it is ``pinv(b) @ a.H``.  Either equals ``pinv(a @ b)``.

    Raises
    ------
    ValueError
        If neither factor is unitary at ``policy.eq_tol``.
    """
    policy = policy or DEFAULT_POLICY
    if _unitary_residual(b) <= policy.eq_tol:
        return einstein_product(conj_transpose(b), pinv(a, policy))
    if _unitary_residual(a) <= policy.eq_tol:
        return einstein_product(pinv(b, policy), conj_transpose(a))
    raise ValueError("neither factor is unitary at the given tolerance")


def sandwich_pinv(
    b: DenseTensor, a: DenseTensor, c: DenseTensor, policy: NumericPolicy | None = None
) -> DenseTensor:
    """Pseudoinverse of the sandwich ``b @ a @ c`` with unitary outer factors.

    Returns ``c.H @ pinv(a) @ b.H``, which equals ``pinv(b @ a @ c)`` when
    ``b`` and ``c`` are unitary.

    Raises
    ------
    ValueError
        If an outer factor is not unitary at ``policy.eq_tol``.
    """
    policy = policy or DEFAULT_POLICY
    if _unitary_residual(b) > policy.eq_tol:
        raise ValueError("left factor is not unitary at the given tolerance")
    if _unitary_residual(c) > policy.eq_tol:
        raise ValueError("right factor is not unitary at the given tolerance")
    return _chain(conj_transpose(c), pinv(a, policy), conj_transpose(b))


@dataclass(frozen=True)
class ZeroEquivalenceReport:
    """Residuals of the three equivalent zero conditions for a pair (B, A).

    The conditions ``B @ pinv(A) == 0``, ``B @ A.H == 0`` and
    ``B @ pinv(A) @ A == 0`` hold or fail together.
    """

    via_pinv: float
    via_star: float
    via_projector: float
    tol: float

    @property
    def booleans(self) -> dict[str, bool]:
        return {
            "via_pinv": self.via_pinv <= self.tol,
            "via_star": self.via_star <= self.tol,
            "via_projector": self.via_projector <= self.tol,
        }

    @property
    def consistent(self) -> bool:
        return len(set(self.booleans.values())) == 1

    def as_dict(self) -> dict:
        return {
            "tol": self.tol,
            "residuals": {
                "via_pinv": self.via_pinv,
                "via_star": self.via_star,
                "via_projector": self.via_projector,
            },
            "booleans": self.booleans,
            "consistent": self.consistent,
        }


def zero_equivalence(
    b: DenseTensor, a: DenseTensor, policy: NumericPolicy | None = None
) -> ZeroEquivalenceReport:
    """Evaluate the three equivalent ways for ``b`` to annihilate ``a``.

    ``b`` must have column dims equal to ``a``'s column dims so that
    ``b @ pinv(a)`` and ``b @ a.H`` conform.
    """
    policy = policy or DEFAULT_POLICY
    if b.shape.col_dims != a.shape.col_dims:
        raise ShapeMismatchError(
            f"column dims of {b.shape} must match column dims of {a.shape}"
        )
    ap = pinv(a, policy)
    ah = conj_transpose(a)
    proj = einstein_product(ap, a)
    bn = frobenius_norm(b)

    def zero_res(left: DenseTensor, right: DenseTensor) -> float:
        prod = einstein_product(left, right)
        z = zeros(prod.shape.row_dims, prod.shape.col_dims)
        return rel_residual(prod, z, scale=bn * frobenius_norm(right))

    return ZeroEquivalenceReport(
        via_pinv=zero_res(b, ap),
        via_star=zero_res(b, ah),
        via_projector=zero_res(b, proj),
        tol=policy.eq_tol,
    )


@dataclass(frozen=True)
class ProjectorCommuteReport:
    """Residuals of the projector commutation identities for a pair (A, B).

    ``absorb_proj_left`` is equivalent to ``commute`` (pinv(A) @ A against
    B @ pinv(B)) and ``absorb_proj_right`` to ``commute_mirror`` (pinv(B) @ B
    against A @ pinv(A)); the two commutations are independent of each other.
    ``absorb_gram_left`` is equivalent to ``cross_null_left`` and
    ``absorb_gram_right`` to ``cross_null_right``.
    """

    absorb_proj_left: float
    absorb_proj_right: float
    commute: float
    commute_mirror: float
    absorb_gram_left: float
    cross_null_left: float
    absorb_gram_right: float
    cross_null_right: float
    tol: float

    @property
    def residuals(self) -> dict[str, float]:
        return {
            "absorb_proj_left": self.absorb_proj_left,
            "absorb_proj_right": self.absorb_proj_right,
            "commute": self.commute,
            "commute_mirror": self.commute_mirror,
            "absorb_gram_left": self.absorb_gram_left,
            "cross_null_left": self.cross_null_left,
            "absorb_gram_right": self.absorb_gram_right,
            "cross_null_right": self.cross_null_right,
        }

    @property
    def booleans(self) -> dict[str, bool]:
        return {name: r <= self.tol for name, r in self.residuals.items()}

    @property
    def commute_consistent(self) -> bool:
        """Each absorb_proj condition agrees with its commutation partner."""
        ok = self.booleans
        return (
            ok["absorb_proj_left"] == ok["commute"]
            and ok["absorb_proj_right"] == ok["commute_mirror"]
        )

    @property
    def pairs_consistent(self) -> bool:
        """Each absorb_gram condition agrees with its cross_null partner."""
        ok = self.booleans
        return (
            ok["absorb_gram_left"] == ok["cross_null_left"]
            and ok["absorb_gram_right"] == ok["cross_null_right"]
        )

    @property
    def consistent(self) -> bool:
        return self.commute_consistent and self.pairs_consistent

    def as_dict(self) -> dict:
        return {
            "tol": self.tol,
            "residuals": self.residuals,
            "booleans": self.booleans,
            "commute_consistent": self.commute_consistent,
            "pairs_consistent": self.pairs_consistent,
            "consistent": self.consistent,
        }


def projector_commute_report(
    a: DenseTensor, b: DenseTensor, policy: NumericPolicy | None = None
) -> ProjectorCommuteReport:
    """Evaluate the projector commutation identities on the pair (a, b).

    ``a`` has split I x J and ``b`` split J x I.  Each absorption identity
    pairs with the condition it is equivalent to:

    * absorb_proj_left : ``P @ Q @ A.H == Q @ A.H``            <=> commute
    * absorb_proj_right: ``S @ R @ B.H == R @ B.H``            <=> commute_mirror
    * absorb_gram_left : ``P @ B @ B.H @ A.H == B @ B.H @ A.H`` <=> cross_null_left
    * absorb_gram_right: ``Q @ A.H @ A @ B == A.H @ A @ B``     <=> cross_null_right
    * cross_null_left  : ``(I - P) @ B @ B.H @ P == 0``
    * cross_null_right : ``(I - Q) @ A.H @ A @ Q == 0``

    with ``P = pinv(A) @ A``, ``Q = B @ pinv(B)`` (both J x J) and
    ``R = A @ pinv(A)``, ``S = pinv(B) @ B`` (both I x I).  ``commute``
    measures ``P @ Q - Q @ P`` and ``commute_mirror`` measures
    ``S @ R - R @ S``; one can hold without the other, so the two
    absorption conditions are not interchangeable.
    """
    policy = policy or DEFAULT_POLICY
    if a.shape.col_dims != b.shape.row_dims or b.shape.col_dims != a.shape.row_dims:
        raise ShapeMismatchError(
            f"projector identities need splits I x J and J x I, got {a.shape} and {b.shape}"
        )
    ah = conj_transpose(a)
    bh = conj_transpose(b)
    ap = pinv(a, policy)
    bp = pinv(b, policy)
    p = einstein_product(ap, a)  # J x J
    q = einstein_product(b, bp)  # J x J
    r = einstein_product(a, ap)  # I x I
    pb = einstein_product(bp, b)  # I x I
    bbh = einstein_product(b, bh)
    aha = einstein_product(ah, a)
    eye_j = identity(p.shape.row_dims)
    zero_j = zeros(p.shape.row_dims, p.shape.col_dims)

    def zero_res(expr: DenseTensor, scale: float) -> float:
        return rel_residual(expr, zero_j, scale=scale)

    return ProjectorCommuteReport(
        absorb_proj_left=rel_residual(_chain(p, q, ah), _chain(q, ah)),
        absorb_proj_right=rel_residual(_chain(pb, r, bh), _chain(r, bh)),
        commute=rel_residual(_chain(p, q), _chain(q, p)),
        commute_mirror=rel_residual(_chain(pb, r), _chain(r, pb)),
        absorb_gram_left=rel_residual(_chain(p, bbh, ah), _chain(bbh, ah)),
        cross_null_left=zero_res(
            _chain(eye_j - p, bbh, p), frobenius_norm(bbh) * frobenius_norm(p)
        ),
        absorb_gram_right=rel_residual(_chain(q, aha, b), _chain(aha, b)),
        cross_null_right=zero_res(
            _chain(eye_j - q, aha, q), frobenius_norm(aha) * frobenius_norm(q)
        ),
        tol=policy.eq_tol,
    )


# ---------------------------------------------------------------------------
# randomized counterexample search

FUZZ_FAMILIES: tuple[str, ...] = (
    "dense",
    "rank_deficient",
    "unitary_factor",
    "diagonal",
    "orthogonal_sum",
)


@dataclass(frozen=True)
class FuzzSummary:
    """Order-independent summary of a fuzz run.

    ``violations`` counts pairs whose characterization groups disagreed
    or whose direct => commute implication failed; the expectation is
    zero, and ``first_violation`` carries the full report of the first
    offender when there is one.
    """

    trials: int
    direct_true: int
    direct_false: int
    family_counts: dict[str, int]
    violations: int
    first_violation: dict | None


def _random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _dense_tensor(rng: np.random.Generator, shape: ModeShape) -> DenseTensor:
    n = shape.row_count * shape.col_count
    return DenseTensor(shape, rng.standard_normal(n) + 1j * rng.standard_normal(n))


def _low_rank_tensor(rng: np.random.Generator, shape: ModeShape) -> DenseTensor:
    # bounded singular values keep the pseudoinverses well conditioned,
    # so boolean decisions sit far from the tolerance
    rc, cc = shape.row_count, shape.col_count
    k = min(rc, cc)
    r = int(rng.integers(1, k + 1))
    u = _random_unitary(rng, rc)[:, :r]
    v = _random_unitary(rng, cc)[:, :r]
    s = rng.uniform(0.3, 3.0, r)
    return dematricize((u * s) @ v.conj().T, shape)


def _diagonal_tensor(rng: np.random.Generator, shape: ModeShape) -> DenseTensor:
    k = min(shape.row_count, shape.col_count)
    mags = rng.uniform(0.3, 3.0, k)
    phases = np.exp(2j * np.pi * rng.random(k))
    vals = mags * phases
    vals[rng.random(k) < 0.25] = 0.0
    return diagonal_from(shape.row_dims, shape.col_dims, vals)


def _unitary_tensor(rng: np.random.Generator, shape: ModeShape) -> DenseTensor:
    return dematricize(_random_unitary(rng, shape.row_count), shape)


def _sigma_with_gaps(rng: np.random.Generator, k: int) -> np.ndarray:
    s = rng.uniform(0.3, 3.0, k)
    s[rng.random(k) < 0.25] = 0.0
    return s


def _draw_pair(
    rng: np.random.Generator, shape: ModeShape, family: str
) -> tuple[DenseTensor, DenseTensor]:
    shape_b = shape.transposed
    if family == "dense":
        return _dense_tensor(rng, shape), _dense_tensor(rng, shape_b)
    if family == "rank_deficient":
        return _low_rank_tensor(rng, shape), _low_rank_tensor(rng, shape_b)
    if family == "unitary_factor":
        return _low_rank_tensor(rng, shape), _unitary_tensor(rng, shape_b)
    if family == "diagonal":
        return _diagonal_tensor(rng, shape), _diagonal_tensor(rng, shape_b)
    if family == "orthogonal_sum":
        # both factors are sums of aligned rank-one pieces with mutually
        # orthogonal ranges, sharing the middle unitary; the law holds
        rc, cc = shape.row_count, shape.col_count
        u = _random_unitary(rng, rc)
        v = _random_unitary(rng, cc)
        w = _random_unitary(rng, rc)
        k = min(rc, cc)
        sa = np.zeros((rc, cc))
        sb = np.zeros((cc, rc))
        sa_vals = _sigma_with_gaps(rng, k)
        sb_vals = _sigma_with_gaps(rng, k)
        # keep one mode alive in both factors: with disjoint supports the
        # product is rounding noise and a relative rank cutoff would turn
        # pinv(a @ b) into an inversion of that noise
        for vals in (sa_vals, sb_vals):
            if vals[0] == 0.0:
                vals[0] = rng.uniform(0.3, 3.0)
        sa[np.arange(k), np.arange(k)] = sa_vals
        sb[np.arange(k), np.arange(k)] = sb_vals
        return (
            dematricize(u @ sa @ v.conj().T, shape),
            dematricize(v @ sb @ w.conj().T, shape_b),
        )
    raise ValueError(f"unknown family {family!r}")


def fuzz_search(
    shape: ModeShape,
    trials: int,
    seed: int,
    policy: NumericPolicy | None = None,
) -> FuzzSummary:
    """Randomized cross-validation of the characterization equivalences.

    Draws ``trials`` pairs (A with the given shape, B with the transposed
    shape), rotating through the structured families in
    ``FUZZ_FAMILIES``; the ``unitary_factor`` family is skipped when the
    flat counts differ, since no unitary B exists then.  Each trial uses
    an independently derived substream of ``seed``, so results do not
    depend on evaluation order.

    Returns
    -------
    FuzzSummary
        Counts of direct-true and direct-false pairs, per-family trial
        counts, and the first equivalence violation if any was seen.

    Raises
    ------
    ValueError
        If ``trials < 1``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    policy = policy or DEFAULT_POLICY
    families = [
        f
        for f in FUZZ_FAMILIES
        if f != "unitary_factor" or shape.row_count == shape.col_count
    ]
    children = np.random.SeedSequence(seed).spawn(trials)
    direct_true = 0
    direct_false = 0
    family_counts = {f: 0 for f in families}
    violations = 0
    first_violation: dict | None = None
    for t in range(trials):
        family = families[t % len(families)]
        rng = np.random.default_rng(children[t])
        a, b = _draw_pair(rng, shape, family)
        report = rol_report(a, b, policy)
        family_counts[family] += 1
        if report.holds:
            direct_true += 1
        else:
            direct_false += 1
        if not (report.consistent and report.implication_ok):
            violations += 1
            if first_violation is None:
                first_violation = {"trial": t, "family": family, "report": report.as_dict()}
    return FuzzSummary(
        trials=trials,
        direct_true=direct_true,
        direct_false=direct_false,
        family_counts=family_counts,
        violations=violations,
        first_violation=first_violation,
    )
