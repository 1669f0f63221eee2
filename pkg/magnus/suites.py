# magnus/suites.py
"""
Named verification suites. Every trial draws its inputs from
trial_rng(seed, suite, index) and returns one Check.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Callable, Optional

from magnus import cochain, ia_abel, johnson, lcs, surface
from magnus.algmap import GLMatrix, apply_map
from magnus.check import Check, all_of, compare
from magnus.config import RunConfig
from magnus.errors import MagnusError, PreconditionError
from magnus.expansion import MagnusExpansion, evaluate, standard_expansion, transition
from magnus.freegroup import nested_commutator, word_product
from magnus.jsonio import check_to_json
from magnus.sampling import (
    random_a2,
    random_endo,
    random_expansion,
    random_ia_word,
    random_nonempty_word,
    random_semidirect,
    random_word,
    trial_rng,
)
from magnus.stasheff import left_comb, sgn, vertices
from magnus.util import catalan, log, progress

GROUPS = ("expansion", "johnson", "lcs", "cochain", "ia-abel", "surface")

Trial = Callable[[RunConfig, random.Random], Check]


@dataclass(frozen=True)
class Suite:
    name: str
    group: str
    identity: str
    trial: Trial


@dataclass
class SuiteResult:
    suite: str
    group: str
    identity: str
    trials: int
    passed: int
    failed: int
    first_failure: Optional[Check] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "group": self.group,
            "identity": self.identity,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "first_failure": check_to_json(self.first_failure) if self.first_failure else None,
        }


def _theta(cfg: RunConfig, rng: random.Random, N: Optional[int] = None, rank: Optional[int] = None) -> MagnusExpansion:
    return random_expansion(rng, rank or cfg.rank, N or cfg.N)


def _word(cfg: RunConfig, rng: random.Random, rank: Optional[int] = None):
    return random_word(rng, rank or cfg.rank, cfg.max_word_length)


def _endo(cfg: RunConfig, rng: random.Random):
    return random_endo(rng, cfg.rank, 3)


# -----------------------------
# expansion
# -----------------------------


def _trial_transition(cfg: RunConfig, rng: random.Random) -> Check:
    t1, t2 = _theta(cfg, rng), _theta(cfg, rng)
    w = _word(cfg, rng)
    U = transition(t1, t2)
    checks = [compare("transition maps theta1 to theta2", apply_map(U, evaluate(t1, w)), evaluate(t2, w), word=w)]
    checks.append(johnson.check_act_on_expansion(t1, _endo(cfg, rng), _word(cfg, rng)))
    return all_of("expansion transition", checks)


# -----------------------------
# johnson
# -----------------------------


def _trial_defining(cfg: RunConfig, rng: random.Random) -> Check:
    return johnson.check_defining_property(_theta(cfg, rng), _endo(cfg, rng), _word(cfg, rng))


def _trial_cocycle(cfg: RunConfig, rng: random.Random) -> Check:
    theta, phi, psi = _theta(cfg, rng), _endo(cfg, rng), _endo(cfg, rng)
    return all_of(
        "johnson cocycle",
        [johnson.check_total_cocycle(theta, phi, psi), johnson.check_cocycle_tau1(theta, phi, psi)],
    )


def _trial_tau2(cfg: RunConfig, rng: random.Random) -> Check:
    theta, phi, psi = _theta(cfg, rng, N=max(cfg.N, 3)), _endo(cfg, rng), _endo(cfg, rng)
    return all_of(
        "tau2 relation",
        [johnson.check_tau2_relation(theta, phi, psi), cochain.check_tau2_cochain(theta, phi, psi)],
    )


def _trial_tau1_words(cfg: RunConfig, rng: random.Random) -> Check:
    theta = _theta(cfg, rng)
    phi = _endo(cfg, rng)
    checks = [johnson.check_tau1_on_words(theta, phi, _word(cfg, rng))]
    psi = ia_abel.ia_word_endo(random_ia_word(rng, cfg.rank, 3), cfg.rank)
    checks.append(johnson.check_equivariance(theta, phi, psi))
    return all_of("tau1 on words", checks)


def _trial_inner(cfg: RunConfig, rng: random.Random) -> Check:
    theta, g = _theta(cfg, rng), _word(cfg, rng)
    top = min(4, cfg.N - 1)
    return all_of("inner johnson", [johnson.check_inner_closed_form(theta, g, p) for p in range(1, top + 1)])


def _trial_johnson_hom(cfg: RunConfig, rng: random.Random) -> Check:
    N = max(cfg.N, 3)
    thetas = [standard_expansion(cfg.rank, N)] + [_theta(cfg, rng, N=N) for _ in range(4)]
    phi = random_a2(rng, cfg.rank, 2)
    checks = [lcs.check_johnson_hom_agrees(t, phi, 2) for t in thetas]
    checks.append(johnson.check_theta_independence(thetas, phi, 2))
    return all_of("johnson hom on A(2)", checks)


# -----------------------------
# lcs
# -----------------------------


def _trial_lcs(cfg: RunConfig, rng: random.Random) -> Check:
    n = cfg.rank
    theta = _theta(cfg, rng)
    depth = rng.randint(2, min(cfg.N, 4))
    first = rng.randint(1, n)
    second = rng.choice([i for i in range(1, n + 1) if i != first])
    indices = (first, second) + tuple(rng.randint(1, n) for _ in range(depth - 2))
    checks = [lcs.check_nested_depth(theta, indices)]
    if depth + 1 <= cfg.N:
        g = nested_commutator(n, indices)
        checks.append(lcs.check_bracket_recursion(theta, g, random_nonempty_word(rng, n, 3), depth + 1))
    if cfg.N >= 4:
        checks.append(lcs.check_kernel_step(theta, random_a2(rng, n, 2), 2))
    return all_of("lcs depth", checks, indices=list(indices))


# -----------------------------
# cochain
# -----------------------------


def _semi(cfg: RunConfig, rng: random.Random):
    return random_semidirect(rng, cfg.rank, cfg.max_word_length, 2)


def _trial_k0(cfg: RunConfig, rng: random.Random) -> Check:
    return cochain.check_k0_relation(_theta(cfg, rng, N=2), _semi(cfg, rng), _semi(cfg, rng))


def _trial_tau2_cochain(cfg: RunConfig, rng: random.Random) -> Check:
    return cochain.check_tau2_cochain(_theta(cfg, rng, N=3), _endo(cfg, rng), _endo(cfg, rng))


def _trial_dsquare(cfg: RunConfig, rng: random.Random) -> Check:
    theta = _theta(cfg, rng, N=3)
    n = cfg.rank
    s = [_semi(cfg, rng) for _ in range(3)]
    a = [_endo(cfg, rng) for _ in range(3)]
    k0 = cochain.k0_cochain(n)
    t1 = cochain.tau_cochain(theta, 1)
    t2 = cochain.tau_cochain(theta, 2)
    th2 = cochain.theta2_tilde(theta)
    checks = [
        cochain.check_cocycle(k0, s[:2]),
        cochain.check_cocycle(t1, a[:2]),
        cochain.check_dsquare(th2, s[:3]),
        cochain.check_dsquare(t2, a[:3]),
        cochain.check_normalized(th2, s[:1]),
        cochain.check_leibniz(cochain.tensor_pairing, k0, th2, s[:3]),
        cochain.check_leibniz(cochain.derivation_pairing, t1, t1, a[:3]),
    ]
    return all_of("dd = 0 and leibniz", checks)


def _trial_stasheff(cfg: RunConfig, rng: random.Random) -> Check:
    checks = []
    for p in range(1, 9):
        checks.append(compare(f"|S_{p}| = catalan", len(vertices(p)), catalan(p)))
        checks.append(compare(f"sgn(left comb {p})", sgn(left_comb(p)), 1))
    p = rng.randint(1, min(3, cfg.N - 1))
    theta = _theta(cfg, rng, N=p + 1)
    checks.append(cochain.check_h_word(theta, [_endo(cfg, rng) for _ in range(p)]))
    return all_of("stasheff", checks)


# -----------------------------
# ia-abel
# -----------------------------


def _trial_ia_basis(cfg: RunConfig, rng: random.Random) -> Check:
    n = cfg.rank
    return all_of(
        "IA abelianization",
        [ia_abel.check_generator_matrix(n), ia_abel.check_ia_word(random_ia_word(rng, n, cfg.max_word_length), n)],
    )


def _trial_inner_embedding(cfg: RunConfig, rng: random.Random) -> Check:
    n = cfg.rank
    theta = _theta(cfg, rng, N=2)
    checks = [ia_abel.check_iota(theta, _word(cfg, rng))]
    checks += [ia_abel.check_inner_contraction(theta, i) for i in range(1, n + 1)]
    checks.append(compare("rank iota_star = n", ia_abel.iota_star_rank(n), n))
    return all_of("inner embedding", checks)


# -----------------------------
# surface
# -----------------------------


def _random_symplectic(ctx: surface.SurfaceContext, rng: random.Random) -> GLMatrix:
    gens = surface.symplectic_generators(ctx)
    A = GLMatrix.identity(ctx.rank)
    for _ in range(rng.randint(1, 4)):
        B = rng.choice(gens)
        A = A @ (B if rng.random() < 0.5 else B.inverse)
    return A


def _trial_surface(cfg: RunConfig, rng: random.Random) -> Check:
    ctx = surface.SurfaceContext.from_genus(cfg.genus)
    n = ctx.rank
    theta = _theta(cfg, rng, N=3, rank=n)
    powers = [rng.choice((1, -1)) for _ in range(rng.randint(1, 3))]
    conj = [surface.boundary_conjugate(ctx, random_word(rng, n, cfg.max_word_length), e) for e in powers]
    A = _random_symplectic(ctx, rng)
    checks = [
        surface.theta2_w0_check(ctx, theta),
        surface.tau2_boundary_check(ctx, theta),
        compare("nu0(w0) = -1", surface.nu0(ctx, ctx.boundary, theta), -1),
        compare("nu0 of boundary conjugates", surface.nu0(ctx, word_product(n, conj), theta), -sum(powers)),
        surface.check_nu0_additive(ctx, conj, theta),
        compare("symplectic sample", surface.is_symplectic(ctx, A), True),
        surface.check_duality(ctx, A),
        compare("torus pairing = 1", surface.torus_pairing(), 1),
    ]
    return all_of("surface", checks, genus=ctx.genus)


SUITES: tuple[Suite, ...] = (
    Suite("transition", "expansion", "transition(theta1, theta2) o theta1 = theta2", _trial_transition),
    Suite("defining-property", "johnson", "theta(phi(g)) = (tau(phi) o |phi|)(theta(g))", _trial_defining),
    Suite("cocycle", "johnson", "tau(phi psi) = tau(phi) |phi| tau(psi) |phi|^-1", _trial_cocycle),
    Suite("tau2-relation", "johnson", "-d tau2 = (tau1 x 1 + 1 x tau1) u tau1", _trial_tau2),
    Suite("tau1-on-words", "johnson", "tau1(phi)|phi|[g] = theta2(phi(g)) - |phi| theta2(g)", _trial_tau1_words),
    Suite("inner", "johnson", "inner_johnson(g, p) = tau_p(inner(g))", _trial_inner),
    Suite("johnson-hom", "johnson", "johnson_hom(phi, 2) = tau^theta_2(phi) on A(2)", _trial_johnson_hom),
    Suite("lcs-depth", "lcs", "lcs depth and graded images of nested commutators", _trial_lcs),
    Suite("k0-relation", "cochain", "d theta2~ = -(tau1 o k0 + k0^2)", _trial_k0),
    Suite("tau2-cochain", "cochain", "-d tau2 = (tau1 x 1 + 1 x tau1) u tau1 as cochains", _trial_tau2_cochain),
    Suite("dsquare", "cochain", "dd = 0 and the Leibniz rule", _trial_dsquare),
    Suite("stasheff", "cochain", "|S_p| = catalan(p), sgn, h(left comb) = sigma_p tau1^p", _trial_stasheff),
    Suite("ia-basis", "ia-abel", "tau1 generator matrix is a signed permutation", _trial_ia_basis),
    Suite("inner-embedding", "ia-abel", "tau1 o inner = iota_star, r1 contraction", _trial_inner_embedding),
    Suite("surface", "surface", "theta2(w0) = I, nu0, tau2(inner(w0)), torus pairing", _trial_surface),
)

SUITES_BY_NAME = {s.name: s for s in SUITES}

# short names accepted by --identity and in place of a group
ALIASES: dict[str, tuple[str, ...]] = {
    "thm13": ("transition",),
    "eq23": ("defining-property",),
    "eq24": ("cocycle",),
    "eq26": ("tau2-relation", "tau2-cochain"),
    "tau2": ("tau2-cochain", "tau2-relation"),
    "eq27": ("tau1-on-words",),
    "eq210": ("inner",),
    "thm31": ("johnson-hom",),
    "eq31": ("lcs-depth",),
    "eq49": ("k0-relation",),
    "thm61": ("ia-basis",),
    "eq65": ("inner-embedding",),
}


def resolve_name(name: str) -> tuple[str, ...]:
    """Suite names for a suite name or alias; empty when unknown."""
    if name in SUITES_BY_NAME:
        return (name,)
    return ALIASES.get(name, ())


def select_suites(group: str, identity: Optional[str] = None) -> list[Suite]:
    if group == "all":
        chosen = list(SUITES)
    elif group in GROUPS:
        chosen = [s for s in SUITES if s.group == group]
    elif resolve_name(group):
        chosen = [SUITES_BY_NAME[name] for name in resolve_name(group)]
    else:
        raise PreconditionError(f"unknown suite group {group!r}; expected all, {', '.join(GROUPS)} or a suite name")
    if identity:
        wanted = resolve_name(identity)
        chosen = [s for s in chosen if s.name in wanted]
        if not chosen:
            raise PreconditionError(f"identity {identity!r} is not part of {group!r}")
    return chosen


def _run_trial(suite: Suite, cfg: RunConfig, index: int) -> Check:
    rng = trial_rng(cfg.seed, suite.name, index)
    try:
        check = suite.trial(cfg, rng)
    except MagnusError as e:
        return Check(suite.identity, False, inputs={"trial": index, "error": f"{type(e).__name__}: {e}"})
    check.inputs.setdefault("trial", index)
    return check


def run_suite(suite: Suite, cfg: RunConfig) -> SuiteResult:
    indexed: list[tuple[int, Check]] = []
    if cfg.workers <= 1:
        for i in progress(range(cfg.trials), total=cfg.trials, desc=suite.name):
            indexed.append((i, _run_trial(suite, cfg, i)))
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as ex:
            futures = {ex.submit(_run_trial, suite, cfg, i): i for i in range(cfg.trials)}
            for fut in progress(as_completed(futures), total=cfg.trials, desc=suite.name):
                indexed.append((futures[fut], fut.result()))
    indexed.sort(key=lambda x: x[0])

    failures = [c for _, c in indexed if not c.ok]
    result = SuiteResult(
        suite=suite.name,
        group=suite.group,
        identity=suite.identity,
        trials=len(indexed),
        passed=len(indexed) - len(failures),
        failed=len(failures),
        first_failure=failures[0] if failures else None,
    )
    log(f"   {suite.name}: {result.passed}/{result.trials} passed")
    return result


def run_suites(suites: list[Suite], cfg: RunConfig) -> list[SuiteResult]:
    return [run_suite(s, cfg) for s in suites]


def results_document(cfg: RunConfig, results: list[SuiteResult]) -> dict[str, Any]:
    return {"config": cfg.for_results(), "suites": [r.to_dict() for r in results]}
