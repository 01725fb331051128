"""Exact truncated bosonic Fock space for N scalar field multiplets.

States are linear combinations of occupation monomials over slots
(species, mode, flavor) with arbitrary-precision rational coefficients.
Monomials are *unnormalized* products of creation operators applied to
the vacuum, so every inner product is an integer-weighted sum and no
square roots ever appear:

    <m | m> = prod_s (multiplicity of slot s in m)!

Two species of oscillators exist, ``a`` and ``b``; a real (single
field) context uses only ``a``.  Creation beyond the particle cutoff P
maps to the zero vector (truncation semantics); callers that need exact
commutators must stay a margin of 2 particles below P.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, groupby
from math import factorial
from typing import Iterable, Iterator, NamedTuple

SPECIES_A = "a"
SPECIES_B = "b"

COMPLEX = "complex"
REAL = "real"


class FockError(Exception):
    """Base class for Fock-space errors."""


class ContextViolation(FockError):
    """A slot or generator does not fit the context (N, M, P, kind)."""


class ContextMismatch(FockError):
    """Two vectors from different contexts were combined."""


class TruncationError(FockError):
    """The requested construction does not fit inside the cutoffs."""


class ModeSlot(NamedTuple):
    """One creation/annihilation slot.

    Field order (species, mode, flavor) is the canonical sort order used
    for monomial keys.
    """

    species: str
    mode: int
    flavor: int

    def __str__(self):
        return f"{self.species}[{self.mode},{self.flavor}]"


def a_slot(mode: int, flavor: int) -> ModeSlot:
    return ModeSlot(SPECIES_A, mode, flavor)


def b_slot(mode: int, flavor: int) -> ModeSlot:
    return ModeSlot(SPECIES_B, mode, flavor)


# A monomial is a sorted tuple of ModeSlot; the empty tuple is the vacuum.
Monomial = tuple

VACUUM_MONOMIAL: Monomial = ()


class FockContext(NamedTuple):
    """Shared truncation data: field kind, multiplet size N, mode cutoff M,
    particle cutoff P."""

    field_kind: str
    N: int
    M: int
    P: int

    def validate(self):
        if self.field_kind not in (COMPLEX, REAL):
            raise ContextViolation(f"unknown field kind {self.field_kind!r}")
        if self.N < 0:
            raise ContextViolation("multiplet size N must be >= 0")
        if self.M < 1:
            raise ContextViolation("mode cutoff M must be >= 1")
        if self.P < 0:
            raise ContextViolation("particle cutoff P must be >= 0")
        return self

    @property
    def species(self) -> tuple:
        return (SPECIES_A,) if self.field_kind == REAL else (SPECIES_A, SPECIES_B)

    def check_slot(self, slot: ModeSlot):
        if slot.species not in self.species:
            raise ContextViolation(f"species {slot.species!r} not allowed in {self.field_kind} context")
        if not 1 <= slot.mode <= self.M:
            raise ContextViolation(f"mode {slot.mode} outside 1..{self.M}")
        if not 1 <= slot.flavor <= self.N:
            raise ContextViolation(f"flavor {slot.flavor} outside 1..{self.N}")

    def check_mode(self, i: int):
        if not 1 <= i <= self.M:
            raise ContextViolation(f"mode index {i} outside 1..{self.M}")

    def slots(self) -> list:
        """All valid slots, in canonical order."""
        return [
            ModeSlot(sp, m, f)
            for sp in self.species
            for m in range(1, self.M + 1)
            for f in range(1, self.N + 1)
        ]


def monomial_str(m: Monomial) -> str:
    if not m:
        return "|0>"
    return "{" + " ".join(str(s) for s in m) + "}"


def monomial_self_overlap(m: Monomial) -> int:
    """<m|m> for an unnormalized monomial: product of multiplicity factorials."""
    out = 1
    for _, grp in groupby(m):
        out *= factorial(sum(1 for _ in grp))
    return out


class FockVector:
    """Immutable-by-convention map from monomials to rational coefficients."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: FockContext, terms=None):
        self.ctx = ctx
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _check_same_ctx(self, other: "FockVector"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"contexts differ: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_same_ctx(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        v = FockVector.__new__(FockVector)
        v.ctx, v._terms = self.ctx, out
        return v

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-1) * other

    def __mul__(self, scalar) -> "FockVector":
        scalar = Fraction(scalar)
        v = FockVector.__new__(FockVector)
        v.ctx = self.ctx
        v._terms = {m: c * scalar for m, c in self._terms.items()} if scalar else {}
        return v

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FockVector)
            and self.ctx == other.ctx
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "FockVector(0)"
        bits = [f"{c}*{monomial_str(m)}" for m, c in sorted(self._terms.items())]
        return "FockVector(" + " + ".join(bits[:6]) + (" + ..." if len(bits) > 6 else "") + ")"

    def max_particles(self) -> int:
        return max((len(m) for m in self._terms), default=0)


def vector(ctx: FockContext, terms) -> FockVector:
    return FockVector(ctx, terms)


def zero(ctx: FockContext) -> FockVector:
    return FockVector(ctx)


def vacuum(ctx: FockContext) -> FockVector:
    """The state |0>, with <0|0> = 1."""
    return FockVector(ctx, {VACUUM_MONOMIAL: Fraction(1)})


def unit(ctx: FockContext, m: Monomial) -> FockVector:
    return FockVector(ctx, {m: Fraction(1)})


def create_monomial(m: Monomial, slot: ModeSlot) -> Monomial:
    return tuple(sorted(m + (slot,)))


def apply_creation(ctx: FockContext, slot: ModeSlot, v: FockVector) -> FockVector:
    """Apply the creation operator for ``slot``; monomials that would exceed
    the particle cutoff P are dropped."""
    ctx.check_slot(slot)
    out = {}
    for m, c in v.items():
        if len(m) + 1 > ctx.P:
            continue
        key = create_monomial(m, slot)
        out[key] = out.get(key, 0) + c
    return FockVector(ctx, out)


def apply_annihilation(ctx: FockContext, slot: ModeSlot, v: FockVector) -> FockVector:
    """Apply the annihilation operator for ``slot``: each monomial loses one
    matching copy, weighted by its multiplicity (Wick contraction count)."""
    ctx.check_slot(slot)
    out = {}
    for m, c in v.items():
        k = m.count(slot)
        if not k:
            continue
        idx = m.index(slot)
        key = m[:idx] + m[idx + 1 :]
        out[key] = out.get(key, 0) + c * k
    return FockVector(ctx, out)


def inner_product(v1: FockVector, v2: FockVector) -> Fraction:
    """Exact sesquilinear form induced by <0|0> = 1 and the CCR.

    Distinct monomials are orthogonal; <m|m> is the product of slot
    multiplicity factorials (all pairings of identical slots).
    """
    v1._check_same_ctx(v2)
    small, big = (v1, v2) if len(v1) <= len(v2) else (v2, v1)
    total = Fraction(0)
    for m, c in small.items():
        c2 = big.coefficient(m)
        if c2:
            total += c * c2 * monomial_self_overlap(m)
    return total


def norm_sq(v: FockVector) -> Fraction:
    return inner_product(v, v)


def basis_monomials(ctx: FockContext, max_particles=None) -> Iterator[Monomial]:
    """All monomials with at most ``max_particles`` slots (default: cutoff P),
    in deterministic order."""
    limit = ctx.P if max_particles is None else min(max_particles, ctx.P)
    universe = ctx.slots()
    for k in range(limit + 1):
        yield from combinations_with_replacement(universe, k)


def occupation_profile(m: Monomial, ctx: FockContext):
    """Per-species mode occupation vectors (length M each)."""
    a_occ = [0] * ctx.M
    b_occ = [0] * ctx.M
    for s in m:
        if s.species == SPECIES_A:
            a_occ[s.mode - 1] += 1
        else:
            b_occ[s.mode - 1] += 1
    return tuple(a_occ), tuple(b_occ)


def gram_matrix(vectors: Iterable[FockVector]):
    vs = list(vectors)
    return [[inner_product(v, w) for w in vs] for v in vs]
