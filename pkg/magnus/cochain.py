# magnus/cochain.py
"""
Normalized group cochains with tensor coefficients.

Cochains are evaluators over group elements (Aut(F_n) or F_n x| Aut(F_n)), never
tables. Coboundary follows

  (df)(g_1..g_{p+1}) = g_1 f(g_2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{p+1} f(g_1..g_p),

and a k-fold cup evaluates every factor on its block of arguments, acts on it by
the product of the arguments before the block, then feeds the values to a pairing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from magnus.algmap import GLMatrix, act_linear, twist
from magnus.autfn import FreeGroupEndo, abelianized, apply_endo, compose_endos, identity_endo, is_identity_endo
from magnus.check import Check, all_of, compare
from magnus.errors import PreconditionError, ShapeMismatch
from magnus.expansion import MagnusExpansion, abelian_class, component
from magnus.freegroup import Word, identity_word, word_mul
from magnus.johnson import johnson_p
from magnus.stasheff import ParenWord, left_comb
from magnus.tensor import (
    HomTensor,
    Tensor,
    derivation_apply,
    evaluate_hom,
    hom_zero,
    identity_hom,
    slot_compose,
    tensor_compose,
    tensor_mul,
    tensor_zero,
)

Value = Union[Tensor, HomTensor]


# -----------------------------
# Group elements
# -----------------------------


@dataclass(frozen=True)
class SemidirectElement:
    """gamma phi in F_n x| Aut(F_n); (g1 p1)(g2 p2) = (g1 p1(g2), p1 p2)."""

    word: Word
    endo: FreeGroupEndo

    def __post_init__(self):
        if self.word.rank != self.endo.rank:
            raise ShapeMismatch(f"word rank {self.word.rank} != endo rank {self.endo.rank}")

    @property
    def rank(self) -> int:
        return self.word.rank

    def __str__(self) -> str:
        return f"({self.word or '1'}, {self.endo})"


GroupElement = Union[FreeGroupEndo, SemidirectElement]


def semidirect(word: Word, endo: FreeGroupEndo | None = None) -> SemidirectElement:
    return SemidirectElement(word, endo if endo is not None else identity_endo(word.rank))


def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    if isinstance(a, SemidirectElement) and isinstance(b, SemidirectElement):
        return SemidirectElement(word_mul(a.word, apply_endo(a.endo, b.word)), compose_endos(a.endo, b.endo))
    if isinstance(a, FreeGroupEndo) and isinstance(b, FreeGroupEndo):
        return compose_endos(a, b)
    raise PreconditionError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")


def group_product(items: Sequence[GroupElement]) -> GroupElement | None:
    """None for the empty product."""
    acc = None
    for g in items:
        acc = g if acc is None else group_mul(acc, g)
    return acc


def group_identity(like: GroupElement) -> GroupElement:
    if isinstance(like, SemidirectElement):
        return semidirect(identity_word(like.rank))
    return identity_endo(like.rank)


def is_group_identity(g: GroupElement) -> bool:
    if isinstance(g, SemidirectElement):
        return g.word.is_identity and is_identity_endo(g.endo)
    return is_identity_endo(g)


def endo_part(g: GroupElement) -> FreeGroupEndo:
    """The projection to Aut(F_n)."""
    return g.endo if isinstance(g, SemidirectElement) else g


def linear_action(g: GroupElement) -> GLMatrix:
    """Every coefficient module here is acted on through |phi|."""
    return abelianized(endo_part(g))


# -----------------------------
# Coefficients and cochains
# -----------------------------


@dataclass(frozen=True)
class CoeffModule:
    """H^{(x)d} (kind "tensor") or Hom(H, H^{(x)d}) (kind "hom"), acted on by GL(H)."""

    kind: str
    degree: int

    def __post_init__(self):
        if self.kind not in ("tensor", "hom"):
            raise PreconditionError(f"unknown coefficient kind {self.kind!r}")

    def zero(self, rank: int) -> Value:
        if self.kind == "tensor":
            return tensor_zero(rank, self.degree)
        return hom_zero(rank, self.degree)

    def act(self, A: GLMatrix, value: Value) -> Value:
        if self.kind == "tensor":
            return act_linear(A, value)
        return twist(A, value)

    def __str__(self) -> str:
        return f"H^{self.degree}" if self.kind == "tensor" else f"Hom(H,H^{self.degree})"


def tensor_module(degree: int) -> CoeffModule:
    return CoeffModule("tensor", degree)


def hom_module(degree: int) -> CoeffModule:
    return CoeffModule("hom", degree)


@dataclass(frozen=True)
class Cochain:
    rank: int
    arity: int
    module: CoeffModule
    fn: Callable[..., Value] = field(compare=False)
    normalized: bool = True
    label: str = ""

    def __call__(self, *gs: GroupElement) -> Value:
        if len(gs) != self.arity:
            raise ShapeMismatch(f"{self.label or 'cochain'} takes {self.arity} arguments, got {len(gs)}")
        return self.fn(*gs)

    def zero(self) -> Value:
        return self.module.zero(self.rank)


def _signed(v: Value, sign: int) -> Value:
    return v if sign > 0 else -v


def constant_cochain(value: Value, module: CoeffModule, label: str = "") -> Cochain:
    """An arity-0 cochain, i.e. an element of the module."""
    return Cochain(value.rank, 0, module, lambda: value, normalized=True, label=label or "const")


def coboundary(f: Cochain) -> Cochain:
    p = f.arity

    def fn(*g: GroupElement) -> Value:
        total = f.module.act(linear_action(g[0]), f(*g[1:]))
        for i in range(1, p + 1):
            merged = g[: i - 1] + (group_mul(g[i - 1], g[i]),) + g[i + 1 :]
            total = total + _signed(f(*merged), (-1) ** i)
        return total + _signed(f(*g[:p]), (-1) ** (p + 1))

    return Cochain(f.rank, p + 1, f.module, fn, f.normalized, f"d({f.label})")


# -----------------------------
# Pairings and cup products
# -----------------------------


@dataclass(frozen=True)
class Pairing:
    """A multilinear, GL(H)-equivariant map from k coefficient modules to one; arity 0 means any k."""

    name: str
    arity: int
    out_module: Callable[..., CoeffModule] = field(compare=False)
    combine: Callable[..., Value] = field(compare=False)


def _tensor_out(*ms: CoeffModule) -> CoeffModule:
    return tensor_module(sum(m.degree for m in ms))


def _tensor_combine(*vs: Tensor) -> Tensor:
    acc = vs[0]
    for v in vs[1:]:
        acc = tensor_mul(acc, v)
    return acc


# Concatenation; any number of factors.
tensor_pairing = Pairing("tensor", 0, _tensor_out, _tensor_combine)

# u(t) for u in Hom(H, H^b), t in H.
apply_pairing = Pairing("apply", 2, lambda mu, mt: tensor_module(mu.degree), evaluate_hom)

# (u (x) 1 + 1 (x) u) o v.
derivation_pairing = Pairing("derivation", 2, lambda mu, mv: hom_module(3), derivation_apply)

# (u (x) 1^k) o v.
slot_pairing = Pairing("slot", 2, lambda mu, mv: hom_module(mu.degree + mv.degree - 1), slot_compose)

# (a (x) b) o u for u of degree 2.
paren_pairing = Pairing("paren", 3, lambda ma, mb, mu: hom_module(ma.degree + mb.degree), tensor_compose)

PAIRINGS = {p.name: p for p in (tensor_pairing, apply_pairing, derivation_pairing, slot_pairing, paren_pairing)}


def cup(pairing: Pairing, *factors: Cochain) -> Cochain:
    """
    (f_1 u ... u f_k)(g_1..g_P) = pairing(f_1(block_1), (g..)f_2(block_2), ...),
    each block acted on by the product of all arguments before it.
    """
    if len(factors) < 2:
        raise ShapeMismatch("a cup product needs at least two factors")
    if pairing.arity and len(factors) != pairing.arity:
        raise ShapeMismatch(f"pairing {pairing.name} takes {pairing.arity} factors, got {len(factors)}")
    rank = factors[0].rank
    for f in factors:
        if f.rank != rank:
            raise ShapeMismatch(f"cochain ranks differ: {f.rank} != {rank}")
    arity = sum(f.arity for f in factors)
    module = pairing.out_module(*(f.module for f in factors))

    def fn(*g: GroupElement) -> Value:
        values = []
        start = 0
        for f in factors:
            v = f(*g[start : start + f.arity])
            prefix = group_product(g[:start])
            if prefix is not None:
                v = f.module.act(linear_action(prefix), v)
            values.append(v)
            start += f.arity
        return pairing.combine(*values)

    label = f" u_{pairing.name} ".join(f.label or "?" for f in factors)
    normalized = all(f.normalized for f in factors)
    return Cochain(rank, arity, module, fn, normalized, f"({label})")


# -----------------------------
# Named cochains
# -----------------------------


def k0(e: GroupElement) -> Tensor:
    """(gamma, phi) -> [gamma]."""
    if not isinstance(e, SemidirectElement):
        raise PreconditionError(f"k0 is defined on the semidirect product, got {type(e).__name__}")
    return abelian_class(e.word)


def k0_cochain(rank: int) -> Cochain:
    return Cochain(rank, 1, tensor_module(1), k0, label="k0")


def theta2_tilde(theta: MagnusExpansion) -> Cochain:
    """gamma phi -> theta_2(gamma)."""

    def fn(e: GroupElement) -> Tensor:
        if not isinstance(e, SemidirectElement):
            raise PreconditionError("theta2_tilde is defined on the semidirect product")
        return component(theta, e.word, 2)

    return Cochain(theta.rank, 1, tensor_module(2), fn, label="theta2~")


def tau_cochain(theta: MagnusExpansion, p: int) -> Cochain:
    """tau^theta_p as a 1-cochain; on semidirect elements it is pulled back along the projection."""
    if p < 1 or p > theta.N - 1:
        raise PreconditionError(f"johnson degree p={p} outside 1..{theta.N - 1}")
    return Cochain(
        theta.rank, 1, hom_module(p + 1), lambda g: johnson_p(theta, endo_part(g), p), label=f"tau{p}"
    )


def identity_cochain(rank: int) -> Cochain:
    """1_H as an arity-0 cochain."""
    return constant_cochain(identity_hom(rank), hom_module(1), "1_H")


# -----------------------------
# Contractions
# -----------------------------


def contraction_r(p: int, u: HomTensor) -> Tensor:
    """r_p(l_i (x) v_0 (x) v_1..v_p) = l_i(v_0) v_1..v_p."""
    if u.degree != p + 1:
        raise ShapeMismatch(f"r_{p} takes Hom(H, H^{p + 1}), got degree {u.degree}")
    out: dict = {}
    for i, img in enumerate(u.images, start=1):
        for key, c in img.terms.items():
            if key[0] == i:
                rest = key[1:]
                out[rest] = out.get(rest, 0) + c
    return Tensor(u.rank, p, {k: v for k, v in out.items() if v})


def compose_sigma(values: Sequence[HomTensor]) -> HomTensor:
    """(u_1 (x) 1^{p-1}) o ... o (u_{p-1} (x) 1) o u_p; the identity on a single value."""
    if not values:
        raise PreconditionError("compose_sigma needs p >= 1 values")
    acc = values[-1]
    for u in reversed(values[:-1]):
        acc = slot_compose(u, acc)
    return acc


def h_word_cochain(theta: MagnusExpansion, w: ParenWord) -> Cochain:
    """h(leaf) = 1_H, h((w1, w2)) = (h(w1) (x) h(w2)) o tau_1, realized as a three-fold cup."""
    if w.size > theta.N - 1:
        raise PreconditionError(f"|w| = {w.size} exceeds N-1 = {theta.N - 1}")
    if w.is_leaf:
        return identity_cochain(theta.rank)
    return cup(paren_pairing, h_word_cochain(theta, w.left), h_word_cochain(theta, w.right), tau_cochain(theta, 1))


def tau1_sigma(theta: MagnusExpansion, gs: Sequence[GroupElement]) -> HomTensor:
    """sigma_p of the cup power tau_1^{u p} at (g_1..g_p)."""
    values = []
    for k, g in enumerate(gs):
        u = johnson_p(theta, endo_part(g), 1)
        prefix = group_product(gs[:k])
        if prefix is not None:
            u = twist(linear_action(prefix), u)
        values.append(u)
    return compose_sigma(values)


# -----------------------------
# Pointwise checks
# -----------------------------


def check_cocycle(f: Cochain, gs: Sequence[GroupElement]) -> Check:
    """df = 0 at gs."""
    d = coboundary(f)
    return compare(f"{f.label} cocycle", d(*gs), d.zero(), args=list(gs))


def check_normalized(f: Cochain, gs: Sequence[GroupElement]) -> Check:
    """f vanishes whenever one argument is the identity."""
    checks = []
    for i in range(f.arity):
        args = list(gs)
        args[i] = group_identity(gs[i])
        checks.append(compare(f"{f.label} normalized at slot {i + 1}", f(*args), f.zero()))
    return all_of(f"{f.label} normalized", checks, args=list(gs))


def check_dsquare(f: Cochain, gs: Sequence[GroupElement]) -> Check:
    """d(df) = 0 at gs (p + 2 arguments)."""
    dd = coboundary(coboundary(f))
    return compare(f"dd({f.label}) = 0", dd(*gs), dd.zero(), args=list(gs))


def check_leibniz(pairing: Pairing, f: Cochain, g: Cochain, gs: Sequence[GroupElement]) -> Check:
    """d(f u g) = df u g + (-1)^p f u dg."""
    lhs = coboundary(cup(pairing, f, g))(*gs)
    rhs = cup(pairing, coboundary(f), g)(*gs) + _signed(cup(pairing, f, coboundary(g))(*gs), (-1) ** f.arity)
    return compare("leibniz", lhs, rhs, pairing=pairing.name, f=f.label, g=g.label, args=list(gs))


def check_k0_relation(theta: MagnusExpansion, e1: SemidirectElement, e2: SemidirectElement) -> Check:
    """d theta2~ = -(tau_1 o k0 + k0 (x) k0) on semidirect pairs."""
    rank = theta.rank
    lhs = coboundary(theta2_tilde(theta))(e1, e2)
    tau_k0 = cup(apply_pairing, tau_cochain(theta, 1), k0_cochain(rank))(e1, e2)
    k0k0 = cup(tensor_pairing, k0_cochain(rank), k0_cochain(rank))(e1, e2)
    return compare("d theta2~ = -(tau1 o k0 + k0^2)", lhs, -(tau_k0 + k0k0), e1=e1, e2=e2)


def check_tau2_cochain(theta: MagnusExpansion, phi: FreeGroupEndo, psi: FreeGroupEndo) -> Check:
    """-d tau_2 = (tau_1 (x) 1 + 1 (x) tau_1) u tau_1 at (phi, psi)."""
    lhs = -coboundary(tau_cochain(theta, 2))(phi, psi)
    rhs = cup(derivation_pairing, tau_cochain(theta, 1), tau_cochain(theta, 1))(phi, psi)
    return compare("-d tau2 = (tau1 x 1 + 1 x tau1) u tau1", lhs, rhs, phi=phi, psi=psi)


def check_h_word(theta: MagnusExpansion, gs: Sequence[GroupElement]) -> Check:
    """h(left comb) = sigma_p o tau_1^{u p} pointwise, p = len(gs)."""
    p = len(gs)
    lhs = h_word_cochain(theta, left_comb(p))(*gs)
    return compare(f"h(left comb {p}) = sigma_{p} tau1^{p}", lhs, tau1_sigma(theta, gs), args=list(gs))

