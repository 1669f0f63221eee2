# magnus/tensor.py
"""
Sparse exact arithmetic in the truncated completed tensor algebra.

A tensor is a dict keyed by index tuples (1-based generator indices, the tuple
length being the degree) with exact rational coefficients. Integral
coefficients are stored as plain ints, everything else as Fraction, so
integer inputs stay integer under ring operations.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from magnus.errors import NotInvertible, PreconditionError, ShapeMismatch, check_same_shape

Scalar = Union[int, Fraction]
Key = tuple[int, ...]
Terms = dict[Key, Scalar]

_SCALAR_RE = re.compile(r"\s*[+-]?\d+(/\d+)?\s*")


# -----------------------------
# Scalars
# -----------------------------


def norm_scalar(x: Scalar) -> Scalar:
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar(x: object) -> Scalar:
    """Coerce ints, Fractions and "p/q" strings. Floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return norm_scalar(x)
    if isinstance(x, str) and _SCALAR_RE.fullmatch(x):
        return norm_scalar(Fraction(x.strip()))
    raise ValueError(f"not an exact rational: {x!r}")


def render_scalar(x: Scalar) -> str:
    x = norm_scalar(x)
    return str(x)


def _clean(d: Mapping[Key, Scalar]) -> Terms:
    out: Terms = {}
    for k, v in d.items():
        if v:
            out[k] = v if type(v) is int else norm_scalar(v)
    return out


def _acc(out: dict, terms: Mapping[Key, Scalar], c: Scalar = 1) -> None:
    if c == 1:
        for k, v in terms.items():
            out[k] += v
    else:
        for k, v in terms.items():
            out[k] += c * v


def _by_degree(terms: Mapping[Key, Scalar]) -> dict[int, list[tuple[Key, Scalar]]]:
    out: dict[int, list[tuple[Key, Scalar]]] = defaultdict(list)
    for k, v in terms.items():
        out[len(k)].append((k, v))
    return out


def _mul(a: Mapping[Key, Scalar], b: Mapping[Key, Scalar], N: int) -> Terms:
    if not a or not b:
        return {}
    bd = _by_degree(b)
    top = max(bd)
    out: dict = defaultdict(int)
    for ka, va in a.items():
        room = N - len(ka)
        if room < 0:
            continue
        for d in range(min(room, top) + 1):
            for kb, vb in bd.get(d, ()):
                out[ka + kb] += va * vb
    return _clean(out)


def _invert(a: Mapping[Key, Scalar], N: int) -> Terms:
    c0 = a.get((), 0)
    if not c0:
        raise NotInvertible("series has zero constant term")
    b0 = norm_scalar(Fraction(1) / c0)
    ad = _by_degree(a)
    bdeg: dict[int, list[tuple[Key, Scalar]]] = {0: [((), b0)]}
    out: Terms = {(): b0}
    for m in range(1, N + 1):
        acc: dict = defaultdict(int)
        for k in range(1, m + 1):
            left = ad.get(k)
            right = bdeg.get(m - k)
            if not left or not right:
                continue
            for ka, va in left:
                for kb, vb in right:
                    acc[ka + kb] += va * vb
        cm = _clean({key: -b0 * v for key, v in acc.items()})
        bdeg[m] = list(cm.items())
        out.update(cm)
    return out


def _truncate(terms: Mapping[Key, Scalar], N: int) -> Terms:
    return {k: v for k, v in terms.items() if len(k) <= N}


# -----------------------------
# Homogeneous tensors
# -----------------------------


@dataclass(frozen=True)
class Tensor:
    """Homogeneous element of H^{(x)m}; degree 0 is a single scalar under key ()."""

    rank: int
    degree: int
    terms: Mapping[Key, Scalar] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, rank: int, degree: int, terms: Mapping[Sequence[int], object]) -> "Tensor":
        if rank < 1:
            raise ShapeMismatch(f"rank must be positive, got {rank}")
        out: dict = defaultdict(int)
        for k, v in terms.items():
            key = tuple(int(i) for i in k)
            if len(key) != degree:
                raise ShapeMismatch(f"key {key} does not have length {degree}")
            if any(i < 1 or i > rank for i in key):
                raise ShapeMismatch(f"key {key} references a generator outside 1..{rank}")
            out[key] += scalar(v)
        return cls(rank, degree, _clean(out))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, key: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(key), 0)

    def __add__(self, other: "Tensor") -> "Tensor":
        return tensor_add(self, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return tensor_sub(self, other)

    def __neg__(self) -> "Tensor":
        return tensor_scale(self, -1)

    def __mul__(self, other: "Tensor") -> "Tensor":
        return tensor_mul(self, other)

    def __rmul__(self, c: Scalar) -> "Tensor":
        return tensor_scale(self, c)


def tensor_zero(rank: int, degree: int) -> Tensor:
    return Tensor(rank, degree, {})


def basis_vector(rank: int, i: int) -> Tensor:
    """X_i as a degree-1 tensor."""
    if i < 1 or i > rank:
        raise ShapeMismatch(f"X_{i} is not a generator of rank {rank}")
    return Tensor(rank, 1, {(i,): 1})


def monomial(rank: int, key: Sequence[int], c: Scalar = 1) -> Tensor:
    key = tuple(key)
    return Tensor(rank, len(key), _clean({key: c}))


def _check_tensors(a: Tensor, b: Tensor, same_degree: bool = True) -> None:
    check_same_shape("tensor rank", (a.rank, b.rank))
    if same_degree:
        check_same_shape("tensor degree", (a.degree, b.degree))


def tensor_add(a: Tensor, b: Tensor) -> Tensor:
    _check_tensors(a, b)
    out: dict = defaultdict(int, a.terms)
    _acc(out, b.terms)
    return Tensor(a.rank, a.degree, _clean(out))


def tensor_sub(a: Tensor, b: Tensor) -> Tensor:
    _check_tensors(a, b)
    out: dict = defaultdict(int, a.terms)
    _acc(out, b.terms, -1)
    return Tensor(a.rank, a.degree, _clean(out))


def tensor_scale(a: Tensor, c: Scalar) -> Tensor:
    c = scalar(c)
    if not c:
        return tensor_zero(a.rank, a.degree)
    return Tensor(a.rank, a.degree, _clean({k: c * v for k, v in a.terms.items()}))


def tensor_mul(a: Tensor, b: Tensor) -> Tensor:
    """Concatenation product a (x) b, of degree a.degree + b.degree."""
    _check_tensors(a, b, same_degree=False)
    out: dict = defaultdict(int)
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            out[ka + kb] += va * vb
    return Tensor(a.rank, a.degree + b.degree, _clean(out))


def tensor_lift(t: Tensor, N: int) -> "TruncatedSeries":
    if t.degree > N:
        raise ShapeMismatch(f"degree {t.degree} exceeds truncation {N}")
    return TruncatedSeries(t.rank, N, dict(t.terms))


# -----------------------------
# Truncated series
# -----------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """Element of T-hat cut at degree N, stored as one sparse dict over all degrees."""

    rank: int
    N: int
    terms: Mapping[Key, Scalar] = field(default_factory=dict)

    @classmethod
    def from_components(cls, rank: int, N: int, components: Iterable[Tensor]) -> "TruncatedSeries":
        if N < 0:
            raise ShapeMismatch(f"truncation must be non-negative, got {N}")
        out: Terms = {}
        for t in components:
            check_same_shape("series rank", (t.rank, rank))
            if t.degree > N:
                raise ShapeMismatch(f"component of degree {t.degree} exceeds truncation {N}")
            out.update(t.terms)
        return cls(rank, N, out)

    @property
    def constant(self) -> Scalar:
        return self.terms.get((), 0)

    def component(self, m: int) -> Tensor:
        if m < 0 or m > self.N:
            raise PreconditionError(f"degree {m} outside 0..{self.N}")
        return Tensor(self.rank, m, {k: v for k, v in self.terms.items() if len(k) == m})

    @property
    def components(self) -> tuple[Tensor, ...]:
        return tuple(self.component(m) for m in range(self.N + 1))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_sub(self, other)

    def __neg__(self) -> "TruncatedSeries":
        return series_scale(self, -1)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)


def _check_series(a: TruncatedSeries, b: TruncatedSeries) -> None:
    check_same_shape("series rank/N", (a.rank, b.rank), (a.N, b.N))


def series_one(rank: int, N: int) -> TruncatedSeries:
    return TruncatedSeries(rank, N, {(): 1})


def series_generator(rank: int, N: int, i: int) -> TruncatedSeries:
    return tensor_lift(basis_vector(rank, i), N)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_series(a, b)
    out: dict = defaultdict(int, a.terms)
    _acc(out, b.terms)
    return TruncatedSeries(a.rank, a.N, _clean(out))


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_series(a, b)
    out: dict = defaultdict(int, a.terms)
    _acc(out, b.terms, -1)
    return TruncatedSeries(a.rank, a.N, _clean(out))


def series_scale(a: TruncatedSeries, c: Scalar) -> TruncatedSeries:
    c = scalar(c)
    return TruncatedSeries(a.rank, a.N, _clean({k: c * v for k, v in a.terms.items()}))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_series(a, b)
    return TruncatedSeries(a.rank, a.N, _mul(a.terms, b.terms, a.N))


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(a.rank, a.N, _invert(a.terms, a.N))


def series_truncate(a: TruncatedSeries, N: int) -> TruncatedSeries:
    if N > a.N:
        raise ShapeMismatch(f"cannot raise truncation {a.N} to {N}")
    return TruncatedSeries(a.rank, N, _truncate(a.terms, N))


def lowest_degree(a: TruncatedSeries | Tensor) -> Optional[int]:
    """Smallest degree carrying a nonzero coefficient, None for zero."""
    if not a.terms:
        return None
    return min(len(k) for k in a.terms)


# -----------------------------
# Hom(H, H^{(x)d}) = H* (x) H^{(x)d}
# -----------------------------


@dataclass(frozen=True)
class HomTensor:
    """A linear map H -> H^{(x)d}, stored as the images of X_1..X_n."""

    rank: int
    degree: int
    images: tuple[Tensor, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} images, got {len(self.images)}")
        for t in self.images:
            check_same_shape("hom image rank/degree", (t.rank, self.rank), (t.degree, self.degree))

    def image(self, i: int) -> Tensor:
        return self.images[i - 1]

    def __call__(self, t: Tensor) -> Tensor:
        return evaluate_hom(self, t)

    def __bool__(self) -> bool:
        return any(self.images)

    def __add__(self, other: "HomTensor") -> "HomTensor":
        return hom_add(self, other)

    def __sub__(self, other: "HomTensor") -> "HomTensor":
        return hom_sub(self, other)

    def __neg__(self) -> "HomTensor":
        return hom_scale(self, -1)


def hom_zero(rank: int, degree: int) -> HomTensor:
    return HomTensor(rank, degree, tuple(tensor_zero(rank, degree) for _ in range(rank)))


def identity_hom(rank: int) -> HomTensor:
    """1_H."""
    return HomTensor(rank, 1, tuple(basis_vector(rank, i) for i in range(1, rank + 1)))


def hom_from_images(rank: int, degree: int, images: Sequence[Tensor]) -> HomTensor:
    return HomTensor(rank, degree, tuple(images))


def _check_homs(a: HomTensor, b: HomTensor) -> None:
    check_same_shape("hom rank/degree", (a.rank, b.rank), (a.degree, b.degree))


def hom_add(a: HomTensor, b: HomTensor) -> HomTensor:
    _check_homs(a, b)
    return HomTensor(a.rank, a.degree, tuple(x + y for x, y in zip(a.images, b.images, strict=True)))


def hom_sub(a: HomTensor, b: HomTensor) -> HomTensor:
    _check_homs(a, b)
    return HomTensor(a.rank, a.degree, tuple(x - y for x, y in zip(a.images, b.images, strict=True)))


def hom_scale(a: HomTensor, c: Scalar) -> HomTensor:
    return HomTensor(a.rank, a.degree, tuple(tensor_scale(x, c) for x in a.images))


def evaluate_hom(u: HomTensor, t: Tensor) -> Tensor:
    """u(t) for a degree-1 tensor t."""
    if t.degree != 1:
        raise ShapeMismatch(f"a hom is evaluated on degree-1 tensors, got degree {t.degree}")
    check_same_shape("hom rank", (u.rank, t.rank))
    out: dict = defaultdict(int)
    for (j,), c in t.terms.items():
        _acc(out, u.images[j - 1].terms, c)
    return Tensor(u.rank, u.degree, _clean(out))


def compose_slots(maps: Sequence[Optional[HomTensor]], v: HomTensor) -> HomTensor:
    """(f_1 (x) ... (x) f_d) o v, with None standing for 1_H in a slot."""
    if len(maps) != v.degree:
        raise ShapeMismatch(f"{len(maps)} slot maps for a hom of degree {v.degree}")
    for f in maps:
        if f is not None:
            check_same_shape("slot map rank", (f.rank, v.rank))
    degree = sum(1 if f is None else f.degree for f in maps)

    slot_images: list[Optional[list[list[tuple[Key, Scalar]]]]] = [
        None if f is None else [list(img.terms.items()) for img in f.images] for f in maps
    ]

    images = []
    for img in v.images:
        out: dict = defaultdict(int)
        for key, c in img.terms.items():
            partial: list[tuple[Key, Scalar]] = [((), c)]
            for slot, j in enumerate(key):
                table = slot_images[slot]
                if table is None:
                    partial = [(k + (j,), x) for k, x in partial]
                    continue
                pieces = table[j - 1]
                if not pieces:
                    partial = []
                    break
                partial = [(k + kp, x * xp) for k, x in partial for kp, xp in pieces]
            for k, x in partial:
                out[k] += x
        images.append(Tensor(v.rank, degree, _clean(out)))
    return HomTensor(v.rank, degree, tuple(images))


def tensor_compose(a: HomTensor, b: HomTensor, u: HomTensor) -> HomTensor:
    """(a (x) b) o u for u : H -> H^{(x)2}."""
    return compose_slots([a, b], u)


def slot_compose(u: HomTensor, v: HomTensor) -> HomTensor:
    """(u (x) 1^{(x)(d-1)}) o v."""
    return compose_slots([u] + [None] * (v.degree - 1), v)


def derivation_apply(u: HomTensor, v: HomTensor) -> HomTensor:
    """(u (x) 1 + 1 (x) u) o v for v : H -> H^{(x)2}."""
    if v.degree != 2:
        raise ShapeMismatch(f"derivation_apply expects v of degree 2, got {v.degree}")
    return hom_add(compose_slots([u, None], v), compose_slots([None, u], v))


def apply_hom(u: HomTensor, t: Tensor, slot: int) -> Tensor:
    """u inserted at tensor slot `slot` (1-based) of t."""
    check_same_shape("hom/tensor rank", (u.rank, t.rank))
    if slot < 1 or slot > t.degree:
        raise ShapeMismatch(f"slot {slot} outside 1..{t.degree}")
    out: dict = defaultdict(int)
    for key, c in t.terms.items():
        head, j, tail = key[: slot - 1], key[slot - 1], key[slot:]
        for k, x in u.images[j - 1].terms.items():
            out[head + k + tail] += c * x
    return Tensor(t.rank, t.degree - 1 + u.degree, _clean(out))


def render_terms(terms: Mapping[Key, Scalar]) -> str:
    """'1 + X1 - 1/2 X1X2'; '0' when empty."""
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms, key=lambda k: (len(k), k)):
        c = terms[key]
        mono = "".join(f"X{i}" for i in key)
        if not mono:
            body = render_scalar(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{render_scalar(abs(c))} {mono}"
        sign = "-" if c < 0 else "+"
        parts.append(body if not parts and sign == "+" else (f"-{body}" if not parts else f"{sign} {body}"))
    return " ".join(parts)
