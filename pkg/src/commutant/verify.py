"""Named randomized/exhaustive verification suites behind the CLI.

Each suite draws its randomness from a stream split deterministically by
(seed, suite index, counter), so a run is reproducible from the seed alone
and independent of suite execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .commutation_matrix import apply as kapply
from .commutation_matrix import build_commutation, conjugate_kron
from .commutation_tensor import (
    build_ctensor,
    build_mode_perm_tensor,
    ctensor_power,
    gct_dense,
    gct_from_permutation,
    gct_identity,
    gct_inverse,
    gct_multiply,
    mode_perm_dense,
)
from .cp import sym_power
from .errors import ArgumentError
from .permutation import Permutation
from .preserver import (
    apply_matrix_preserver,
    apply_rank_preserver,
    apply_sym_preserver,
    fixes_identity,
    is_determinant_preserver,
    matrix_preserver,
    rank_preserver,
    sym_preserver,
    verify_rank_preservation,
)
from .tensor import DenseTensor, mul_2m, mul_2m_on_m, permute_modes
from .veckron import kron, kron_vec, vec

DEFAULT_SIZES: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 2), (3, 3))


@dataclass(frozen=True)
class RunConfig:
    """Shared knobs for a verification run."""

    sizes: tuple[tuple[int, int], ...] = DEFAULT_SIZES
    seed: int = 0
    trials: int = 20
    tol: float = 1e-12

    def __post_init__(self):
        if not self.sizes:
            raise ArgumentError("at least one size is required")
        if any(a < 1 or b < 1 for a, b in self.sizes):
            raise ArgumentError(f"sizes must be positive pairs, got {self.sizes}")
        if self.trials < 1:
            raise ArgumentError(f"trials must be positive, got {self.trials}")
        if self.tol <= 0:
            raise ArgumentError(f"tolerance must be positive, got {self.tol}")


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)


class FaultInjector:
    """Corrupts exactly one computed value when armed — used to prove the
    harness can see a failure."""

    def __init__(self, armed: bool = False):
        self.armed = armed

    def corrupt(self, arr: np.ndarray) -> np.ndarray:
        if not self.armed:
            return arr
        self.armed = False
        out = np.array(arr, dtype=float)
        out.flat[0] += 1.0
        return out


def _rng(cfg: RunConfig, suite: str, counter: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((cfg.seed, SUITE_INDEX[suite], counter)))
    )


def _suite_vec_identity(cfg: RunConfig, fault: FaultInjector) -> SuiteResult:
    res = SuiteResult("vec-identity")
    for si, (p, q) in enumerate(cfg.sizes):
        k = build_commutation(p, q)
        # uniqueness: the matrix reconstructed column-by-column from the vec
        # action must be the built matrix
        recon = np.zeros((p * q, p * q))
        for j in range(q):
            for i in range(p):
                basis = np.zeros((p, q))
                basis[i, j] = 1.0
                recon[:, j * p + i] = vec(basis.T)
        res.record(
            np.array_equal(recon, k.dense()),
            f"size {p}x{q}: reconstructed matrix differs from the built one",
        )
        for t in range(cfg.trials):
            rng = _rng(cfg, res.name, si * cfg.trials + t)
            x = rng.standard_normal((p, q))
            got = fault.corrupt(kapply(k, vec(x)))
            res.record(
                np.array_equal(got, vec(x.T)),
                f"size {p}x{q} trial {t}: K vec(X) != vec(X^T)",
            )
    return res


def _suite_swap_law(cfg: RunConfig, fault: FaultInjector) -> SuiteResult:
    res = SuiteResult("swap-law")
    for si, (p, q) in enumerate(cfg.sizes):
        k = build_commutation(p, q)
        recon = np.zeros((p * q, p * q))
        for j in range(q):
            for i in range(p):
                x = np.zeros(q)
                x[j] = 1.0
                y = np.zeros(p)
                y[i] = 1.0
                recon[:, j * p + i] = kron_vec(y, x)
        res.record(
            np.array_equal(recon, k.dense()),
            f"size {p}x{q}: swap-action reconstruction differs",
        )
        for t in range(cfg.trials):
            rng = _rng(cfg, res.name, si * cfg.trials + t)
            x = rng.standard_normal(q)
            y = rng.standard_normal(p)
            got = fault.corrupt(kapply(k, kron_vec(x, y)))
            res.record(
                np.array_equal(got, kron_vec(y, x)),
                f"size {p}x{q} trial {t}: K(x ⊗ y) != y ⊗ x",
            )
    return res


def _suite_kron_conjugation(cfg: RunConfig, fault: FaultInjector) -> SuiteResult:
    res = SuiteResult("kron-conjugation")
    for si, (p, q) in enumerate(cfg.sizes):
        for t in range(cfg.trials):
            rng = _rng(cfg, res.name, si * cfg.trials + t)
            a = rng.standard_normal((p, p))
            b = rng.standard_normal((q, q))
            got = fault.corrupt(conjugate_kron(a, b))
            err = float(np.max(np.abs(got - kron(a, b))))
            res.record(
                err <= cfg.tol,
                f"size {p}x{q} trial {t}: conjugation error {err:.3e} > {cfg.tol:g}",
            )
    return res


def _suite_powers(cfg: RunConfig, fault: FaultInjector) -> SuiteResult:
    res = SuiteResult("powers")
    for kmax, n in cfg.sizes:
        base = build_ctensor(n, n).backing
        square = mul_2m(base, base)
        for exp in range(1, kmax + 1):
            got = fault.corrupt(ctensor_power(exp, n).array)
            want = base.array if exp % 2 == 1 else square.array
            which = "the tensor itself" if exp % 2 == 1 else "its square"
            res.record(
                np.array_equal(got, want),
                f"n={n}: power {exp} differs from {which}",
            )
    return res


def _suite_group_axioms(cfg: RunConfig, fault: FaultInjector) -> SuiteResult:
    res = SuiteResult("group-axioms")
    for m, n in cfg.sizes:
        if math.factorial(n) > 120 or m > 3:
            raise ArgumentError(
                f"group-axioms is exhaustive; size {m}x{n} is too large (n <= 5, m <= 3)"
            )
        perms = list(Permutation.all(n))
        elements = {pi.images: gct_from_permutation(pi, m) for pi in perms}
        ident = gct_identity(m, n)
        dense_ok = n ** (2 * m) <= 5000
        for pi in perms:
            g = elements[pi.images]
            left = gct_multiply(g, ident)
            res.record(
                all(np.array_equal(a, b) for a, b in zip(left.generators, g.generators)),
                f"({m},{n}): identity law fails for {pi}",
            )
            ginv = gct_inverse(g)
            prod = gct_multiply(g, ginv)
            res.record(
                all(
                    np.allclose(a, b, atol=cfg.tol)
                    for a, b in zip(prod.generators, ident.generators)
                ),
                f"({m},{n}): inverse law fails for {pi}",
            )
        for pi1 in perms:
            for pi2 in perms:
                g1, g2 = elements[pi1.images], elements[pi2.images]
                prod = gct_multiply(g1, g2)
                want = elements[pi1.compose(pi2).images]
                structured_ok = all(
                    np.array_equal(a, b)
                    for a, b in zip(prod.generators, want.generators)
                )
                res.record(
                    structured_ok,
                    f"({m},{n}): closure fails for {pi1}∘{pi2}",
                )
                if dense_ok:
                    dense_prod = fault.corrupt(
                        mul_2m(gct_dense(g1), gct_dense(g2)).array
                    )
                    res.record(
                        np.array_equal(dense_prod, gct_dense(want).array),
                        f"({m},{n}): dense product disagrees for {pi1}∘{pi2}",
                    )
    return res


def _suite_mode_perm_lemma(cfg: RunConfig, fault: FaultInjector) -> SuiteResult:
    res = SuiteResult("mode-perm-lemma")
    for si, (m, n) in enumerate(cfg.sizes):
        if m > 4:
            raise ArgumentError(f"mode-perm-lemma is exhaustive over S_m; m={m} > 4")
        counter = 0
        for tau in Permutation.all(m):
            acting = mode_perm_dense(build_mode_perm_tensor(tau, n))
            for t in range(cfg.trials):
                rng = _rng(cfg, res.name, si * 1000 + counter)
                counter += 1
                a = DenseTensor(rng.standard_normal((n,) * m))
                shuffled = fault.corrupt(permute_modes(a, tau).array)
                contracted = mul_2m_on_m(acting, a).array
                err = float(np.max(np.abs(shuffled - contracted)))
                res.record(
                    err <= cfg.tol,
                    f"({m},{n}) tau={tau} trial {t}: routes differ by {err:.3e}",
                )
    return res


def _random_invertible(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        mat = rng.standard_normal((n, n))
        if abs(linalg.det(mat)) > 0.1:
            return mat


def _suite_preserver(cfg: RunConfig, fault: FaultInjector) -> SuiteResult:
    res = SuiteResult("preserver-suite")
    for si, (m, n) in enumerate(cfg.sizes):
        rng = _rng(cfg, res.name, si)
        taus = list(Permutation.all(m))
        tau = taus[int(rng.integers(0, len(taus)))]
        phi = rank_preserver([_random_invertible(rng, n) for _ in range(m)], tau)
        report = verify_rank_preservation(phi, cfg.trials, cfg.seed + si)
        res.checks += report.trials
        res.failures.extend(
            f"({m},{n}) rank preservation: {msg}" for msg in report.failures
        )
        if m == 2:
            # reduction to the matrix forms, both branches
            p_mat = phi.matrices[0]
            q_mat = phi.matrices[1].T
            mp = matrix_preserver(p_mat, q_mat, transposed=not tau.is_identity())
            a = rng.standard_normal((n, n))
            via_tensor = fault.corrupt(apply_rank_preserver(phi, a).array)
            via_matrix = apply_matrix_preserver(mp, a)
            err = float(np.max(np.abs(via_tensor - via_matrix)))
            res.record(
                err <= cfg.tol,
                f"({m},{n}): order-2 reduction differs by {err:.3e}",
            )
            # determinant preserver: normalize det(PQ) to 1, check invariance
            d = linalg.det(p_mat @ q_mat)
            if d < 0:
                q_mat = q_mat.copy()
                q_mat[:, 0] = -q_mat[:, 0]
                d = -d
            q_mat = q_mat / d ** (1.0 / n)
            dp = matrix_preserver(p_mat, q_mat)
            res.record(
                is_determinant_preserver(dp),
                f"({m},{n}): normalized pair is not a determinant preserver",
            )
            x = rng.standard_normal((n, n))
            dx, dfx = linalg.det(x), linalg.det(apply_matrix_preserver(dp, x))
            res.record(
                abs(dfx - dx) <= 1e-9 * max(1.0, abs(dx)),
                f"({m},{n}): determinant not preserved ({dx:.6f} -> {dfx:.6f})",
            )
        # identity fixing: permutation matrices fix the identity tensor
        pi_n = list(Permutation.all(n))[int(rng.integers(0, math.factorial(n)))]
        res.record(
            fixes_identity(sym_preserver(pi_n.matrix(), m)),
            f"({m},{n}): permutation matrix does not fix the identity tensor",
        )
        shear = np.eye(n)
        shear[0, -1] += 0.5
        res.record(
            not fixes_identity(sym_preserver(shear, m)),
            f"({m},{n}): shear unexpectedly fixes the identity tensor",
        )
        # symmetric preserver pushes through the factor
        y = rng.standard_normal(n)
        b = _random_invertible(rng, n)
        lhs = apply_sym_preserver(sym_preserver(b, m), sym_power(y, m)).array
        rhs = sym_power(b @ y, m).array
        err = float(np.max(np.abs(lhs - rhs)))
        res.record(
            err <= 1e-9 * max(1.0, float(np.max(np.abs(rhs)))),
            f"({m},{n}): symmetric preserver does not push through the factor",
        )
    return res


SUITES = {
    "vec-identity": _suite_vec_identity,
    "swap-law": _suite_swap_law,
    "kron-conjugation": _suite_kron_conjugation,
    "powers": _suite_powers,
    "group-axioms": _suite_group_axioms,
    "mode-perm-lemma": _suite_mode_perm_lemma,
    "preserver-suite": _suite_preserver,
}

SUITE_INDEX = {name: i for i, name in enumerate(SUITES)}


def run_suites(
    cfg: RunConfig, names: list[str] | None = None, inject_fault: bool = False
) -> list[SuiteResult]:
    """Run the named suites (all, by default) under one config."""
    selected = list(SUITES) if names is None else names
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise ArgumentError(f"unknown suite(s): {', '.join(unknown)}")
    fault = FaultInjector(inject_fault)
    return [SUITES[name](cfg, fault) for name in selected]
