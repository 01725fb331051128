"""Bilocal generators on Fock space and their abstract structure constants.

Complex case (the Lie algebra u(inf,inf)), realized with two oscillator
species:

    X(i,j)     = sum_p b[i,p] a[j,p]
    Xstar(i,j) = sum_p a*[j,p] b*[i,p]
    Eplus(i,j) = sum_p a*[i,p] a[j,p] + (N/2) delta_ij
    Eminus(i,j)= sum_p b*[i,p] b[j,p] + (N/2) delta_ij

Real case (sp(inf,R)), single species, X symmetric in its indices:

    X(i,j) = sum_p a[i,p] a[j,p],   E(i,j) = sum_p a*[i,p] a[j,p] + (N/2) delta_ij

The N/2 shift is folded into the E generators so the structure constants
are independent of N.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from .fock import (
    COMPLEX,
    ContextViolation,
    FockContext,
    FockVector,
    Monomial,
    SPECIES_A,
    SPECIES_B,
    ModeSlot,
    apply_annihilation,
    apply_creation,
    basis_monomials,
    monomial_str,
    unit,
    zero,
)

X_KIND = "X"
XSTAR_KIND = "Xstar"
EPLUS_KIND = "Eplus"
EMINUS_KIND = "Eminus"
E_KIND = "E"

COMPLEX_KINDS = (X_KIND, XSTAR_KIND, EPLUS_KIND, EMINUS_KIND)
REAL_KINDS = (X_KIND, XSTAR_KIND, E_KIND)


class GeneratorLabel(NamedTuple):
    kind: str
    i: int
    j: int

    def __str__(self):
        return f"{self.kind}({self.i},{self.j})"


def X(i, j):
    return GeneratorLabel(X_KIND, i, j)


def Xstar(i, j):
    return GeneratorLabel(XSTAR_KIND, i, j)


def Eplus(i, j):
    return GeneratorLabel(EPLUS_KIND, i, j)


def Eminus(i, j):
    return GeneratorLabel(EMINUS_KIND, i, j)


def E(i, j):
    return GeneratorLabel(E_KIND, i, j)


def allowed_kinds(field_kind: str):
    return COMPLEX_KINDS if field_kind == COMPLEX else REAL_KINDS


def check_generator(ctx: FockContext, g: GeneratorLabel):
    if g.kind not in allowed_kinds(ctx.field_kind):
        raise ContextViolation(f"generator kind {g.kind} invalid in {ctx.field_kind} context")
    ctx.check_mode(g.i)
    ctx.check_mode(g.j)


def generators(ctx: FockContext, max_mode=None) -> Iterator[GeneratorLabel]:
    """All generator labels with indices up to max_mode (default M)."""
    top = ctx.M if max_mode is None else max_mode
    for kind in allowed_kinds(ctx.field_kind):
        for i in range(1, top + 1):
            for j in range(1, top + 1):
                yield GeneratorLabel(kind, i, j)


def dagger_label(g: GeneratorLabel) -> GeneratorLabel:
    """Adjoint of a single generator: X <-> Xstar (same indices), E(i,j) -> E(j,i)."""
    if g.kind == X_KIND:
        return GeneratorLabel(XSTAR_KIND, g.i, g.j)
    if g.kind == XSTAR_KIND:
        return GeneratorLabel(X_KIND, g.i, g.j)
    return GeneratorLabel(g.kind, g.j, g.i)


# ---------------------------------------------------------------------------
# realized action on Fock vectors


def _apply_generator(ctx: FockContext, g: GeneratorLabel, v: FockVector, shift: bool) -> FockVector:
    check_generator(ctx, g)
    i, j = g.i, g.j
    out = zero(ctx)
    if g.kind == X_KIND:
        if ctx.field_kind == COMPLEX:
            for p in range(1, ctx.N + 1):
                out = out + apply_annihilation(
                    ctx, ModeSlot(SPECIES_B, i, p), apply_annihilation(ctx, ModeSlot(SPECIES_A, j, p), v)
                )
        else:
            for p in range(1, ctx.N + 1):
                out = out + apply_annihilation(
                    ctx, ModeSlot(SPECIES_A, i, p), apply_annihilation(ctx, ModeSlot(SPECIES_A, j, p), v)
                )
        return out
    if g.kind == XSTAR_KIND:
        if ctx.field_kind == COMPLEX:
            for p in range(1, ctx.N + 1):
                out = out + apply_creation(
                    ctx, ModeSlot(SPECIES_A, j, p), apply_creation(ctx, ModeSlot(SPECIES_B, i, p), v)
                )
        else:
            for p in range(1, ctx.N + 1):
                out = out + apply_creation(
                    ctx, ModeSlot(SPECIES_A, i, p), apply_creation(ctx, ModeSlot(SPECIES_A, j, p), v)
                )
        return out
    # E generators: number-type bilinears plus the N/2 diagonal shift
    species = SPECIES_B if g.kind == EMINUS_KIND else SPECIES_A
    for p in range(1, ctx.N + 1):
        out = out + apply_creation(
            ctx, ModeSlot(species, i, p), apply_annihilation(ctx, ModeSlot(species, j, p), v)
        )
    if shift and i == j:
        out = out + v * Fraction(ctx.N, 2)
    return out


def apply_generator(ctx: FockContext, g: GeneratorLabel, v: FockVector) -> FockVector:
    """Exact image of ``v`` under the realized generator ``g``."""
    return _apply_generator(ctx, g, v, shift=True)


def apply_generator_unshifted(ctx: FockContext, g: GeneratorLabel, v: FockVector) -> FockVector:
    """Deliberately wrong realization (E without the N/2 shift); negative control."""
    return _apply_generator(ctx, g, v, shift=False)


# ---------------------------------------------------------------------------
# noncommutative polynomials in generator labels


class OperatorExpr:
    """Finite rational combination of ordered generator words.

    The empty word is the scalar 1.  In a product word the rightmost
    letter acts first.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @staticmethod
    def zero() -> "OperatorExpr":
        return OperatorExpr()

    @staticmethod
    def scalar(c) -> "OperatorExpr":
        return OperatorExpr({(): Fraction(c)})

    @staticmethod
    def of(g: GeneratorLabel, coeff=1) -> "OperatorExpr":
        return OperatorExpr({(g,): Fraction(coeff)})

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        e = OperatorExpr.__new__(OperatorExpr)
        e.terms = out
        return e

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    s = out.get(w, 0) + c1 * c2
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
            return OperatorExpr(out)
        return OperatorExpr({w: c * Fraction(other) for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, OperatorExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def dagger(self) -> "OperatorExpr":
        out = {}
        for w, c in self.terms.items():
            key = tuple(dagger_label(g) for g in reversed(w))
            out[key] = out.get(key, 0) + c
        return OperatorExpr(out)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def apply(self, ctx: FockContext, v: FockVector,
              realization: Callable = apply_generator) -> FockVector:
        out = zero(ctx)
        for w, c in self.terms.items():
            piece = v
            for g in reversed(w):
                if piece.is_zero():
                    break
                piece = realization(ctx, g, piece)
            out = out + piece * c
        return out

    def __repr__(self):
        if not self.terms:
            return "OperatorExpr(0)"
        bits = []
        for w, c in sorted(self.terms.items()):
            word = "*".join(str(g) for g in w) if w else "1"
            bits.append(f"{c}*{word}")
        return "OperatorExpr(" + " + ".join(bits) + ")"


# ---------------------------------------------------------------------------
# abstract structure constants


def _delta(a, b) -> int:
    return 1 if a == b else 0


def abstract_commutator(g1: GeneratorLabel, g2: GeneratorLabel, field_kind: str = COMPLEX) -> OperatorExpr:
    """[g1, g2] as a degree <= 1 expression in the structure relations.

    No scalar term ever appears: the central shift lives inside the E
    generators.
    """
    for g in (g1, g2):
        if g.kind not in allowed_kinds(field_kind):
            raise ContextViolation(f"kind {g.kind} invalid for {field_kind}")
    if field_kind == COMPLEX:
        return _commutator_complex(g1, g2)
    return _commutator_real(g1, g2)


def _commutator_complex(g1, g2) -> OperatorExpr:
    k1, i, j = g1
    k2, k, l = g2
    t = {}

    def put(kind, a, b, coeff):
        if coeff:
            key = (GeneratorLabel(kind, a, b),)
            t[key] = t.get(key, 0) + coeff

    if k1 == k2 and k1 in (EPLUS_KIND, EMINUS_KIND):
        put(k1, i, l, _delta(j, k))
        put(k1, k, j, -_delta(i, l))
    elif {k1, k2} == {EPLUS_KIND, EMINUS_KIND}:
        pass
    elif (k1, k2) == (EPLUS_KIND, XSTAR_KIND):
        put(XSTAR_KIND, k, i, _delta(j, l))
    elif (k1, k2) == (EPLUS_KIND, X_KIND):
        put(X_KIND, k, j, -_delta(i, l))
    elif (k1, k2) == (EMINUS_KIND, XSTAR_KIND):
        put(XSTAR_KIND, i, l, _delta(j, k))
    elif (k1, k2) == (EMINUS_KIND, X_KIND):
        put(X_KIND, j, l, -_delta(i, k))
    elif (k1, k2) == (X_KIND, XSTAR_KIND):
        put(EPLUS_KIND, l, j, _delta(i, k))
        put(EMINUS_KIND, k, i, _delta(j, l))
    elif k1 == k2:  # [X,X] = [Xstar,Xstar] = 0
        pass
    else:
        return _commutator_complex(g2, g1) * -1
    return OperatorExpr(t)


def _commutator_real(g1, g2) -> OperatorExpr:
    k1, i, j = g1
    k2, k, l = g2
    t = {}

    def put(kind, a, b, coeff):
        if coeff:
            key = (GeneratorLabel(kind, a, b),)
            t[key] = t.get(key, 0) + coeff

    if (k1, k2) == (E_KIND, E_KIND):
        put(E_KIND, i, l, _delta(j, k))
        put(E_KIND, k, j, -_delta(i, l))
    elif (k1, k2) == (E_KIND, XSTAR_KIND):
        put(XSTAR_KIND, i, l, _delta(j, k))
        put(XSTAR_KIND, k, i, _delta(j, l))
    elif (k1, k2) == (E_KIND, X_KIND):
        put(X_KIND, j, l, -_delta(i, k))
        put(X_KIND, k, j, -_delta(i, l))
    elif (k1, k2) == (X_KIND, XSTAR_KIND):
        put(E_KIND, l, i, _delta(j, k))
        put(E_KIND, k, i, _delta(j, l))
        put(E_KIND, l, j, _delta(i, k))
        put(E_KIND, k, j, _delta(i, l))
    elif k1 == k2:
        pass
    else:
        return _commutator_real(g2, g1) * -1
    return OperatorExpr(t)


# ---------------------------------------------------------------------------
# verification harness


def verify_structure_constants(ctx: FockContext, margin: int = 2,
                               realization: Callable = apply_generator,
                               max_failures: int = 10) -> dict:
    """Check [g1,g2] against the abstract relations on every monomial with at
    most P - margin particles, for every unordered generator pair.

    A margin of 2 guarantees the truncated commutators are exact.
    """
    if margin < 2:
        raise ValueError("margin must be >= 2")
    if margin > ctx.P:
        raise ValueError(f"margin {margin} empties the basis (P = {ctx.P})")
    ctx.validate()
    basis = list(basis_monomials(ctx, ctx.P - margin))
    gens = sorted(set(generators(ctx)))
    images = {}

    def img(g: GeneratorLabel, v: FockVector) -> FockVector:
        out = zero(ctx)
        for m, c in v.items():
            cached = images.get((g, m))
            if cached is None:
                cached = realization(ctx, g, unit(ctx, m))
                images[(g, m)] = cached
            out = out + cached * c
        return out

    failures = []
    pairs = 0
    for a in range(len(gens)):
        for b in range(a, len(gens)):
            g1, g2 = gens[a], gens[b]
            expected = abstract_commutator(g1, g2, ctx.field_kind)
            pairs += 1
            for m in basis:
                v = unit(ctx, m)
                lhs = img(g1, img(g2, v)) - img(g2, img(g1, v))
                rhs = expected.apply(ctx, v, realization=realization)
                if lhs != rhs:
                    failures.append(
                        {
                            "pair": [str(g1), str(g2)],
                            "monomial": monomial_str(m),
                            "expected": repr(rhs),
                            "got": repr(lhs),
                        }
                    )
                    break
            if len(failures) >= max_failures:
                return {"ok": False, "pairs_checked": pairs, "basis_size": len(basis), "failures": failures}
    return {"ok": not failures, "pairs_checked": pairs, "basis_size": len(basis), "failures": failures}


# ---------------------------------------------------------------------------
# Hamiltonians and charge


class HamiltonianSpec(NamedTuple):
    """One-particle energies (weakly increasing, positive) and vacuum
    subtractions g_i, both rational."""

    energies: tuple
    subtractions: tuple

    def validate(self, ctx: FockContext):
        if len(self.energies) < ctx.M or len(self.subtractions) < ctx.M:
            raise ContextViolation("hamiltonian spec shorter than mode cutoff")
        prev = None
        for e in self.energies:
            if e <= 0:
                raise ContextViolation("energies must be positive")
            if prev is not None and e < prev:
                raise ContextViolation("energies must be weakly increasing")
            prev = e
        return self


def canonical_hamiltonian(ctx: FockContext, energies=None) -> HamiltonianSpec:
    """The conformal choice: g_i = N (complex) or N/2 (real); default
    energies are 1, 2, 3, ..."""
    if energies is None:
        energies = tuple(Fraction(i) for i in range(1, ctx.M + 1))
    else:
        energies = tuple(Fraction(e) for e in energies)
    g = Fraction(ctx.N) if ctx.field_kind == COMPLEX else Fraction(ctx.N, 2)
    return HamiltonianSpec(energies, (g,) * len(energies))


def hamiltonian_constant(ctx: FockContext, spec: HamiltonianSpec) -> Fraction:
    """The c-number part, truncated to modes <= M: sum_i eps_i (n0 - g_i)
    where n0 is the Cartan-sum vacuum eigenvalue (N complex, N/2 real)."""
    n0 = Fraction(ctx.N) if ctx.field_kind == COMPLEX else Fraction(ctx.N, 2)
    return sum(
        (Fraction(spec.energies[i]) * (n0 - Fraction(spec.subtractions[i])) for i in range(ctx.M)),
        Fraction(0),
    )


def monomial_energy(m: Monomial, spec: HamiltonianSpec) -> Fraction:
    return sum((Fraction(spec.energies[s.mode - 1]) for s in m), Fraction(0))


def apply_hamiltonian(ctx: FockContext, spec: HamiltonianSpec, v: FockVector) -> FockVector:
    """Diagonal action: eigenvalue = sum of slot energies + the c-number."""
    spec.validate(ctx)
    const = hamiltonian_constant(ctx, spec)
    return FockVector(ctx, {m: c * (monomial_energy(m, spec) + const) for m, c in v.items()})


def apply_charge(ctx: FockContext, v: FockVector) -> FockVector:
    """Q: (#a-slots - #b-slots) per monomial; complex contexts only."""
    if ctx.field_kind != COMPLEX:
        raise ContextViolation("no charge operator in the real case")
    out = {}
    for m, c in v.items():
        q = sum(1 if s.species == SPECIES_A else -1 for s in m)
        if q:
            out[m] = c * q
    return FockVector(ctx, out)
