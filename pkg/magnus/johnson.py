# magnus/johnson.py
"""
Total and graded Johnson maps of a Magnus expansion theta.

tau(phi) is the element of IA(T-hat) with theta o phi = tau(phi) o |phi| o theta,
computed as (theta o phi o kappa) o (theta o kappa)^-1 o |phi|^-1, so phi^-1 is
never needed. The twisted action on Hom(H, H^{(x)(p+1)}) is
|phi| u = |phi|^{(x)(p+1)} o u o |phi|^-1 throughout.
"""
from __future__ import annotations

from magnus.algmap import (
    AlgebraMap,
    IACoordinates,
    act_linear,
    apply_map,
    compose_all,
    compose_maps,
    invert_map,
    linear_map,
    to_ia_coordinates,
    twist,
)
from magnus.autfn import (
    FreeGroupEndo,
    abelianized,
    apply_endo,
    compose_all_endos,
    compose_endos,
    endo_inverse,
    inner,
)
from magnus.check import Check, all_of, compare
from magnus.errors import NotInvertible, PreconditionError, check_same_shape
from magnus.expansion import (
    JOHNSON_CACHE_SIZE,
    MagnusExpansion,
    abelian_class,
    act_on_expansion,
    component,
    evaluate,
)
from magnus.freegroup import Word
from magnus.tensor import (
    HomTensor,
    TruncatedSeries,
    basis_vector,
    derivation_apply,
    hom_add,
    hom_from_images,
    series_generator,
    series_invert,
    series_mul,
    series_one,
    series_sub,
    tensor_mul,
)


def _cache(theta: MagnusExpansion) -> dict:
    cache = theta.johnson_cache
    if len(cache) >= JOHNSON_CACHE_SIZE:
        cache.clear()
    return cache


def total_johnson(theta: MagnusExpansion, phi: FreeGroupEndo) -> AlgebraMap:
    check_same_shape("expansion/endo rank", (theta.rank, phi.rank))
    key = ("total", phi)
    cache = _cache(theta)
    if key in cache:
        return cache[key]

    A = abelianized(phi)
    if not A.is_unimodular():
        raise NotInvertible(f"|phi| is not unimodular (det = {A.det}) for {phi}")
    one = series_one(theta.rank, theta.N)
    theta_phi_kappa = AlgebraMap(theta.rank, theta.N, tuple(series_sub(evaluate(theta, w), one) for w in phi.images))
    tau = compose_maps(compose_maps(theta_phi_kappa, theta.kappa_inverse), linear_map(A.inverse, theta.N))
    cache[key] = tau
    return tau


def johnson_coordinates(theta: MagnusExpansion, phi: FreeGroupEndo) -> IACoordinates:
    return to_ia_coordinates(total_johnson(theta, phi))


def johnson_p(theta: MagnusExpansion, phi: FreeGroupEndo, p: int) -> HomTensor:
    """tau^theta_p(phi): H -> H^{(x)(p+1)}; computed at truncation p+1."""
    if p < 1 or p > theta.N - 1:
        raise PreconditionError(f"johnson degree p={p} outside 1..{theta.N - 1}")
    low = theta.truncated(p + 1)
    key = ("p", phi, p)
    cache = _cache(low)
    if key not in cache:
        tau = total_johnson(low, phi)
        cache[key] = HomTensor(theta.rank, p + 1, tuple(img.component(p + 1) for img in tau.images))
    return cache[key]


def act(phi: FreeGroupEndo, u: HomTensor) -> HomTensor:
    """|phi| u."""
    return twist(abelianized(phi), u)


def check_cocycle_tau1(theta: MagnusExpansion, phi: FreeGroupEndo, psi: FreeGroupEndo) -> Check:
    """tau_1(phi psi) = tau_1(phi) + |phi| tau_1(psi)."""
    lhs = johnson_p(theta, compose_endos(phi, psi), 1)
    rhs = hom_add(johnson_p(theta, phi, 1), act(phi, johnson_p(theta, psi, 1)))
    return compare("tau1 cocycle", lhs, rhs, phi=phi, psi=psi)


def tau2_relation_rhs(theta: MagnusExpansion, phi: FreeGroupEndo, psi: FreeGroupEndo) -> HomTensor:
    t1_phi = johnson_p(theta, phi, 1)
    return hom_add(
        hom_add(johnson_p(theta, phi, 2), derivation_apply(t1_phi, act(phi, johnson_p(theta, psi, 1)))),
        act(phi, johnson_p(theta, psi, 2)),
    )


def check_tau2_relation(theta: MagnusExpansion, phi: FreeGroupEndo, psi: FreeGroupEndo) -> Check:
    """tau_2(phi psi) = tau_2(phi) + (tau_1(phi) (x) 1 + 1 (x) tau_1(phi)) |phi| tau_1(psi) + |phi| tau_2(psi)."""
    lhs = johnson_p(theta, compose_endos(phi, psi), 2)
    return compare("tau2 relation", lhs, tau2_relation_rhs(theta, phi, psi), phi=phi, psi=psi)


def check_total_cocycle(theta: MagnusExpansion, phi: FreeGroupEndo, psi: FreeGroupEndo) -> Check:
    """tau(phi psi) = tau(phi) o |phi| o tau(psi) o |phi|^-1 as algebra maps."""
    A = abelianized(phi)
    lhs = total_johnson(theta, compose_endos(phi, psi))
    rhs = compose_all(
        total_johnson(theta, phi),
        linear_map(A, theta.N),
        total_johnson(theta, psi),
        linear_map(A.inverse, theta.N),
    )
    return compare("total johnson cocycle", lhs, rhs, phi=phi, psi=psi)


def check_defining_property(theta: MagnusExpansion, phi: FreeGroupEndo, w: Word) -> Check:
    """theta(phi(w)) = (tau(phi) o |phi|)(theta(w))."""
    tau = total_johnson(theta, phi)
    lhs = evaluate(theta, apply_endo(phi, w))
    rhs = apply_map(compose_maps(tau, linear_map(abelianized(phi), theta.N)), evaluate(theta, w))
    return compare("johnson defining property", lhs, rhs, phi=phi, word=w)


def inner_johnson(theta: MagnusExpansion, g: Word, p: int) -> HomTensor:
    """a -> degree-(p+1) part of theta(g) a theta(g)^-1."""
    if p < 1 or p > theta.N - 1:
        raise PreconditionError(f"johnson degree p={p} outside 1..{theta.N - 1}")
    low = theta.truncated(p + 1)
    tg = evaluate(low, g)
    tg_inv = series_invert(tg)
    images = []
    for j in range(1, theta.rank + 1):
        conj = series_mul(series_mul(tg, series_generator(theta.rank, low.N, j)), tg_inv)
        images.append(conj.component(p + 1))
    return hom_from_images(theta.rank, p + 1, images)


def inner_johnson_low(theta: MagnusExpansion, g: Word, p: int) -> HomTensor:
    """
    Closed forms for p = 1, 2:
    a -> [g]a - a[g]  and  a -> theta_2(g)a - a theta_2(g) + a[g][g] - [g]a[g].
    """
    n = theta.rank
    gb = abelian_class(g)
    images = []
    if p == 1:
        for j in range(1, n + 1):
            a = basis_vector(n, j)
            images.append(tensor_mul(gb, a) - tensor_mul(a, gb))
        return hom_from_images(n, 2, images)
    if p == 2:
        t2 = component(theta, g, 2)
        for j in range(1, n + 1):
            a = basis_vector(n, j)
            images.append(
                tensor_mul(t2, a)
                - tensor_mul(a, t2)
                + tensor_mul(tensor_mul(a, gb), gb)
                - tensor_mul(tensor_mul(gb, a), gb)
            )
        return hom_from_images(n, 3, images)
    raise PreconditionError(f"closed inner forms exist for p = 1, 2 only, got {p}")


def check_inner_closed_form(theta: MagnusExpansion, g: Word, p: int) -> Check:
    """inner_johnson(g, p) = tau_p(iota(g)), plus the low-degree closed forms."""
    lhs = inner_johnson(theta, g, p)
    checks = [compare(f"inner johnson p={p}", lhs, johnson_p(theta, inner(g), p), word=g, p=p)]
    if p <= 2:
        checks.append(compare(f"inner closed form p={p}", lhs, inner_johnson_low(theta, g, p), word=g, p=p))
    return all_of("inner johnson closed form", checks, word=g, p=p)


def check_tau1_on_words(theta: MagnusExpansion, phi: FreeGroupEndo, g: Word) -> Check:
    """
    tau_1(phi)|phi|[g] = theta_2(phi(g)) - |phi|^{(x)2} theta_2(g), and, when phi^-1 is known,
    tau_1(phi)[g] = theta_2(g) - |phi|^{(x)2} theta_2(phi^-1(g)).
    """
    A = abelianized(phi)
    t1 = johnson_p(theta, phi, 1)
    gb = abelian_class(g)
    checks = [
        compare(
            "tau1 on phi-images",
            t1(act_linear(A, gb)),
            component(theta, apply_endo(phi, g), 2) - act_linear(A, component(theta, g, 2)),
            phi=phi,
            word=g,
        )
    ]
    if phi.has_inverse:
        back = apply_endo(endo_inverse(phi), g)
        checks.append(
            compare(
                "tau1 on preimages",
                t1(gb),
                component(theta, g, 2) - act_linear(A, component(theta, back, 2)),
                phi=phi,
                word=g,
            )
        )
    return all_of("tau1 on words", checks, phi=phi, word=g)


def check_equivariance(theta: MagnusExpansion, phi: FreeGroupEndo, psi: FreeGroupEndo) -> Check:
    """tau_1(phi psi phi^-1) = |phi| tau_1(psi) for psi in IA_n."""
    if not abelianized(psi).is_identity():
        raise PreconditionError(f"{psi} is not in IA_n")
    conj = compose_all_endos(phi.rank, [phi, psi, endo_inverse(phi)])
    return compare("tau1 equivariance", johnson_p(theta, conj, 1), act(phi, johnson_p(theta, psi, 1)), phi=phi, psi=psi)


def check_act_on_expansion(theta: MagnusExpansion, phi: FreeGroupEndo, w: Word) -> Check:
    """(phi . theta)(w) = tau(phi)^-1(theta(w))."""
    lhs = evaluate(act_on_expansion(phi, theta), w)
    rhs = apply_map(invert_map(total_johnson(theta, phi)), evaluate(theta, w))
    return compare("action on expansions", lhs, rhs, phi=phi, word=w)


def check_theta_independence(
    thetas: list[MagnusExpansion], phi: FreeGroupEndo, m: int
) -> Check:
    """tau_m(phi) agrees across expansions for phi in A(m)."""
    values = [johnson_p(t, phi, m) for t in thetas]
    checks = [compare("johnson theta independence", values[0], v, phi=phi, m=m) for v in values[1:]]
    return all_of("johnson theta independence", checks, phi=phi, m=m)


def johnson_series(theta: MagnusExpansion, phi: FreeGroupEndo, i: int) -> TruncatedSeries:
    """tau(phi)(X_i) as a series."""
    return total_johnson(theta, phi).image(i)
