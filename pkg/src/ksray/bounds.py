"""Classical, quantum, and conspiratorial bounds of a contextuality graph.

classical  = independence number, exact branch and bound
quantum    = Lovasz theta, dual barrier method with an a-posteriori
             certified duality gap
conspiratorial = fractional packing number, LP over maximal cliques
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .ortho import OrthoGraph, maximal_cliques

SIZE_GUARD = 64


class TooLarge(ValueError):
    """Graph above the exact-solver guard of 64 vertices."""


class NumericalFailure(RuntimeError):
    """Theta solve missed the gap target; achieved gap attached."""

    def __init__(self, message: str, gap: float):
        super().__init__(message)
        self.gap = gap


def _check_size(g: OrthoGraph) -> None:
    if g.n > SIZE_GUARD:
        raise TooLarge(f"{g.n} vertices exceeds the guard of {SIZE_GUARD}")


# ---------------------------------------------------------------------------
# independence number


def independence_number(g: OrthoGraph) -> tuple[int, tuple[int, ...]]:
    """Exact maximum independent set with a verified witness.

    Branch and bound on the complement (max clique there), pruned by a
    greedy coloring bound; vertices are bitmasks so set algebra is cheap.
    """
    _check_size(g)
    n = g.n
    comp = []
    for v in range(n):
        mask = 0
        for u in range(n):
            if u != v and not g.adjacency[v, u]:
                mask |= 1 << u
        comp.append(mask)

    best_size = 0
    best_mask = 0

    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def expand(current: int, size: int, cand: int) -> None:
        nonlocal best_size, best_mask
        if cand == 0:
            if size > best_size:
                best_size, best_mask = size, current
            return
        # greedy coloring of the candidates; color index bounds the clique
        classes: list[int] = []
        color: dict[int, int] = {}
        for v in bits(cand):
            for ci, cmask in enumerate(classes):
                if not (cmask & comp[v]):
                    classes[ci] |= 1 << v
                    color[v] = ci + 1
                    break
            else:
                classes.append(1 << v)
                color[v] = len(classes)
        for v in sorted(color, key=lambda u: (-color[u], u)):
            if size + color[v] <= best_size:
                return
            expand(current | (1 << v), size + 1, cand & comp[v])
            cand &= ~(1 << v)

    expand(0, 0, (1 << n) - 1)
    witness = tuple(sorted(bits(best_mask)))
    for a, b in itertools.combinations(witness, 2):
        if g.adjacency[a, b]:
            raise AssertionError("witness not independent")
    return best_size, witness


# ---------------------------------------------------------------------------
# Lovasz theta


@dataclass(frozen=True)
class ThetaCertificate:
    """Certified bracket around theta.

    lower is <J, X> for an exactly feasible primal X (trace one, zeros on
    edges, PSD); upper is the largest eigenvalue of the dual matrix J with
    the edge duals subtracted.  value is the bracket midpoint.
    """

    value: float
    lower: float
    upper: float
    gap: float
    primal_matrix: np.ndarray
    edge_duals: np.ndarray


def theta_certificate(g: OrthoGraph, eps: float = 1e-6,
                      newton_per_stage: int = 60) -> ThetaCertificate:
    """Solve max <J,X> s.t. tr X = 1, X zero on edges, X PSD.

    Works on the dual min t with t I + sum_e y_e E_e - J PSD via a log-det
    barrier; at a central point X = Z^{-1}/eta is nearly primal feasible and
    the duality gap equals n/eta.  The returned bracket is certified
    independently of the path taken: any dual point gives the upper bound,
    and the repaired X gives the lower bound.
    """
    _check_size(g)
    n = g.n
    ridx, cidx = np.nonzero(np.triu(g.adjacency, 1))
    m = len(ridx)
    ones = np.ones((n, n))

    def zmat(t: float, y: np.ndarray) -> np.ndarray:
        z = t * np.eye(n) - ones
        if m:
            z[ridx, cidx] += y
            z[cidx, ridx] += y
        return z

    t = float(n + 1)
    y = np.zeros(m)
    eta = 1.0
    target_eta = 2.0 * n / eps

    while True:
        for _ in range(newton_per_stage):
            z = zmat(t, y)
            chol = np.linalg.cholesky(z)
            zi = np.linalg.inv(z)
            grad_t = eta - np.trace(zi)
            grad = np.concatenate([[grad_t], -2.0 * zi[ridx, cidx]]) \
                if m else np.array([grad_t])
            hess = np.empty((1 + m, 1 + m))
            zi2 = zi @ zi
            hess[0, 0] = np.trace(zi2)
            if m:
                hess[0, 1:] = hess[1:, 0] = 2.0 * zi2[ridx, cidx]
                hess[1:, 1:] = 2.0 * (zi[np.ix_(ridx, ridx)] * zi[np.ix_(cidx, cidx)]
                                      + zi[np.ix_(ridx, cidx)] * zi[np.ix_(cidx, ridx)])
            step = np.linalg.solve(hess, -grad)
            decrement = float(-grad @ step)
            f0 = eta * t - 2.0 * np.sum(np.log(np.diag(chol)))
            alpha = 1.0
            while alpha > 1e-13:
                t_try = t + alpha * step[0]
                y_try = y + alpha * step[1:]
                z_try = zmat(t_try, y_try)
                try:
                    chol_try = np.linalg.cholesky(z_try)
                except np.linalg.LinAlgError:
                    alpha *= 0.5
                    continue
                f_try = eta * t_try - 2.0 * np.sum(np.log(np.diag(chol_try)))
                if f_try <= f0 - 0.25 * alpha * decrement:
                    break
                alpha *= 0.5
            t = t + alpha * step[0]
            y = y + alpha * step[1:]
            if decrement < 1e-10:
                break
        if eta >= target_eta:
            break
        eta = min(eta * 20.0, target_eta)

    # certified bracket
    z = zmat(t, y)
    x = np.linalg.inv(z) / eta
    x = 0.5 * (x + x.T)
    if m:
        x[ridx, cidx] = 0.0
        x[cidx, ridx] = 0.0
    lam_min = float(np.linalg.eigvalsh(x)[0])
    if lam_min < 0.0:
        x = x + (-lam_min + 1e-15) * np.eye(n)
    x /= np.trace(x)
    lower = float(x.sum())
    dual = ones.copy()
    if m:
        dual[ridx, cidx] -= y
        dual[cidx, ridx] -= y
    upper = float(np.linalg.eigvalsh(dual)[-1])
    gap = upper - lower
    if gap > eps:
        raise NumericalFailure(
            f"duality gap {gap:.3e} above target {eps:.1e}", gap)
    return ThetaCertificate(value=0.5 * (lower + upper), lower=lower,
                            upper=upper, gap=gap, primal_matrix=x,
                            edge_duals=y)


def lovasz_theta(g: OrthoGraph, eps: float = 1e-6) -> float:
    return theta_certificate(g, eps).value


# ---------------------------------------------------------------------------
# fractional packing


def fractional_packing(g: OrthoGraph) -> tuple[float, np.ndarray]:
    """max sum x, x >= 0, sum over each maximal clique <= 1.

    Maximal cliques dominate all clique constraints, so the LP is the full
    fractional packing program with fewer rows.
    """
    _check_size(g)
    cliques = maximal_cliques(g)
    rows = np.zeros((len(cliques), g.n))
    for k, clique in enumerate(cliques):
        rows[k, list(clique)] = 1.0
    res = linprog(c=-np.ones(g.n), A_ub=rows, b_ub=np.ones(len(cliques)),
                  bounds=[(0, None)] * g.n, method="highs")
    if not res.success:
        raise NumericalFailure(f"LP failed: {res.message}", np.nan)
    weights = np.asarray(res.x)
    slack = rows @ weights - 1.0
    if slack.max() > 1e-9:
        raise NumericalFailure(
            f"LP weights violate a clique constraint by {slack.max():.3e}",
            float(slack.max()))
    return float(weights.sum()), weights


# ---------------------------------------------------------------------------
# combined report


@dataclass(frozen=True)
class BoundsReport:
    alpha: int
    theta: float
    alpha_star: float
    independent_set: tuple[int, ...]
    theta_gap: float
    theta_matrix: np.ndarray
    packing_weights: np.ndarray


def bounds_report(g: OrthoGraph, eps: float = 1e-6) -> BoundsReport:
    """All three bounds, with the sandwich inequality asserted."""
    alpha, witness = independence_number(g)
    cert = theta_certificate(g, eps)
    alpha_star, weights = fractional_packing(g)
    if not (alpha <= cert.upper + eps and cert.lower <= alpha_star + eps):
        raise AssertionError(
            f"sandwich violated: alpha={alpha}, theta in "
            f"[{cert.lower}, {cert.upper}], alpha*={alpha_star}")
    return BoundsReport(alpha=alpha, theta=cert.value, alpha_star=alpha_star,
                        independent_set=witness, theta_gap=cert.gap,
                        theta_matrix=cert.primal_matrix,
                        packing_weights=weights)
