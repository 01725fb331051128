"""Young diagram combinatorics, sector labels, and the gauge dictionary.

Sectors of the complex bilocal algebra are pairs of Young diagrams
(Y+, Y-) with first-column heights r+ + r- <= N; they correspond one to
one with irreducible representations of U(N).  Real sectors are single
diagrams Y whose first two column heights satisfy r + s <= N, matching
the (Y, sign) labels of O(N) irreducibles.

The U(N) label of a sector is the juxtaposition of the relative
conjugate of Y- and Y+, plus the charge q = |Y+| - |Y-|; the split is
recovered from q alone.  The realized gauge generators live here too,
because they act on flavor indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .fock import (
    COMPLEX,
    REAL,
    ContextViolation,
    FockContext,
    FockVector,
    SPECIES_A,
    SPECIES_B,
    ModeSlot,
    apply_annihilation,
    apply_creation,
    zero,
)


class BoundViolation(Exception):
    """A sector label breaks its unitarity bound."""


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """Weakly decreasing positive row lengths; () is the trivial diagram."""

    rows: tuple = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for a, b in zip(rows, rows[1:]):
            if b > a:
                raise ValueError(f"rows {rows} not weakly decreasing")
        if rows and rows[-1] <= 0:
            raise ValueError(f"rows {rows} must be positive")

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> int:
        """Length of row i (1-based), 0 beyond the diagram."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    def column_heights(self) -> tuple:
        if not self.rows:
            return ()
        return tuple(sum(1 for r in self.rows if r >= c) for c in range(1, self.rows[0] + 1))

    def column(self, k: int) -> int:
        """Height of column k (1-based), 0 beyond the diagram."""
        return sum(1 for r in self.rows if r >= k)

    @staticmethod
    def from_columns(heights) -> "YoungDiagram":
        heights = [h for h in heights if h > 0]
        if not heights:
            return YoungDiagram(())
        top = max(heights)
        return YoungDiagram(tuple(sum(1 for h in heights if h >= i) for i in range(1, top + 1)))

    def conjugate(self) -> "YoungDiagram":
        return YoungDiagram(self.column_heights())

    def __str__(self):
        return "[" + ",".join(map(str, self.rows)) + "]"

    def to_json(self):
        return list(self.rows)


def diagram(*rows) -> YoungDiagram:
    return YoungDiagram(tuple(rows))


EMPTY = YoungDiagram(())


def young_diagrams(max_boxes: int, max_rows: Optional[int] = None) -> Iterator[YoungDiagram]:
    """All diagrams with at most max_boxes boxes (and optionally bounded rows),
    in deterministic order."""

    def parts(total, cap):
        if total == 0:
            yield ()
            return
        for first in range(min(total, cap), 0, -1):
            for rest in parts(total - first, first):
                yield (first,) + rest

    for n in range(max_boxes + 1):
        for p in parts(n, n if n else 1):
            if max_rows is None or len(p) <= max_rows:
                yield YoungDiagram(p)


# ---------------------------------------------------------------------------
# sector labels


@dataclass(frozen=True, order=True)
class SectorLabel:
    """Ground-state label: (Y+, Y-, N) for complex, (Y, N) for real."""

    field_kind: str
    N: int
    y_plus: YoungDiagram
    y_minus: Optional[YoungDiagram] = None

    def __post_init__(self):
        if self.field_kind == COMPLEX:
            if self.y_minus is None:
                object.__setattr__(self, "y_minus", EMPTY)
        elif self.field_kind == REAL:
            if self.y_minus is not None:
                raise ValueError("real sectors carry a single diagram")
        else:
            raise ValueError(f"unknown field kind {self.field_kind!r}")

    @property
    def y(self) -> YoungDiagram:
        """The single diagram of a real sector."""
        if self.field_kind != REAL:
            raise ValueError("y is only defined for real sectors")
        return self.y_plus

    def bound_violation(self) -> Optional[str]:
        """The violated inequality as text, or None when in bound."""
        if self.field_kind == COMPLEX:
            rp, rm = self.y_plus.column(1), self.y_minus.column(1)
            if rp + rm > self.N:
                return f"r+ + r- = {rp}+{rm} > N = {self.N}"
        else:
            r, s = self.y_plus.column(1), self.y_plus.column(2)
            if r + s > self.N:
                return f"r + s = {r}+{s} > N = {self.N}"
        return None

    def check_bound(self):
        msg = self.bound_violation()
        if msg:
            raise BoundViolation(msg)
        return self

    def total_boxes(self) -> int:
        return self.y_plus.size + (self.y_minus.size if self.y_minus else 0)

    def __str__(self):
        if self.field_kind == COMPLEX:
            return f"({self.y_plus},{self.y_minus},N={self.N})"
        return f"({self.y_plus},N={self.N})"


def complex_sector(y_plus: YoungDiagram, y_minus: YoungDiagram, N: int) -> SectorLabel:
    return SectorLabel(COMPLEX, N, y_plus, y_minus)


def real_sector(y: YoungDiagram, N: int) -> SectorLabel:
    return SectorLabel(REAL, N, y)


def vacuum_sector(ctx_or_kind, N: Optional[int] = None) -> SectorLabel:
    if isinstance(ctx_or_kind, FockContext):
        kind, N = ctx_or_kind.field_kind, ctx_or_kind.N
    else:
        kind = ctx_or_kind
    return complex_sector(EMPTY, EMPTY, N) if kind == COMPLEX else real_sector(EMPTY, N)


def enumerate_sectors(field_kind: str, N: int, max_boxes: int) -> Iterator[SectorLabel]:
    """All in-bound sectors with each diagram capped at max_boxes boxes."""
    if field_kind == COMPLEX:
        for yp in young_diagrams(max_boxes):
            for ym in young_diagrams(max_boxes):
                s = complex_sector(yp, ym, N)
                if s.bound_violation() is None:
                    yield s
    else:
        for y in young_diagrams(max_boxes):
            s = real_sector(y, N)
            if s.bound_violation() is None:
                yield s


# ---------------------------------------------------------------------------
# Pieri rules (the only tensor products the construction needs)


def pieri_add_box(y: YoungDiagram) -> set:
    """All diagrams obtained from y by adding a single box."""
    out = set()
    rows = list(y.rows)
    for i in range(len(rows) + 1):
        new = list(rows)
        if i == len(rows):
            new.append(1)
        else:
            new[i] += 1
        try:
            out.add(YoungDiagram(tuple(new)))
        except ValueError:
            pass
    return out


def pieri_add_two_boxes_row(y: YoungDiagram) -> set:
    """All diagrams obtained by adding two boxes, no two in the same column."""
    out = set()
    for mid in pieri_add_box(y):
        added1 = _added_cell(y, mid)
        for final in pieri_add_box(mid):
            added2 = _added_cell(mid, final)
            if added1[1] != added2[1]:  # distinct columns
                out.add(final)
    return out


def _added_cell(before: YoungDiagram, after: YoungDiagram):
    for i in range(1, after.num_rows + 1):
        if after.row(i) != before.row(i):
            return (i, after.row(i))
    raise ValueError("no added cell")


# ---------------------------------------------------------------------------
# U(N) dictionary


class GaugeIrrepU(NamedTuple):
    """U(N) irreducible label: diagram plus integer charge."""

    young: YoungDiagram
    q: int

    def validate(self, N: int):
        if N > 0 and (self.q - self.young.size) % N != 0:
            raise ValueError(f"charge {self.q} != |Y| mod N for {self.young}")
        if self.young.column(1) > N:
            raise ValueError(f"diagram {self.young} has a column taller than N={N}")
        return self

    def to_json(self):
        return {"Y": self.young.to_json(), "q": self.q}


def conjugate_relative(y: YoungDiagram, N: int) -> YoungDiagram:
    """The conjugate diagram with column heights N - r_k, in reversed order."""
    heights = y.column_heights()
    if any(h > N for h in heights):
        raise ValueError(f"column taller than N={N}")
    return YoungDiagram.from_columns(tuple(N - h for h in reversed(heights)))


def gauge_weight_U(s: SectorLabel):
    """Dominant integer weight of U(N) attached to a complex sector:
    lambda_p = (row p of Y+) - (row N+1-p of Y-)."""
    N = s.N
    return tuple(s.y_plus.row(p) - s.y_minus.row(N + 1 - p) for p in range(1, N + 1))


def sector_to_irrep_U(s: SectorLabel) -> GaugeIrrepU:
    """Juxtaposition of the relative conjugate of Y- and Y+, with charge
    q = |Y+| - |Y-|."""
    if s.field_kind != COMPLEX:
        raise ValueError("U dictionary applies to complex sectors")
    s.check_bound()
    left = conjugate_relative(s.y_minus, s.N).column_heights()
    right = s.y_plus.column_heights()
    y = YoungDiagram.from_columns(left + right)
    return GaugeIrrepU(y, s.y_plus.size - s.y_minus.size)


def irrep_U_to_sector(irr: GaugeIrrepU, N: int) -> SectorLabel:
    """The unique split of the label back into (Y+, Y-); raises ValueError
    when no valid split exists."""
    irr.validate(N)
    if N == 0:
        if irr.young.size or irr.q:
            raise ValueError("N=0 admits only the trivial label")
        return complex_sector(EMPTY, EMPTY, 0)
    k2 = irr.young.size - irr.q
    if k2 < 0 or k2 % N:
        raise ValueError(f"no split: |Y| - q = {k2} is not a multiple of N")
    k = k2 // N
    cols = list(irr.young.column_heights())
    if len(cols) < k:
        cols += [0] * (k - len(cols))
    left, right = cols[:k], cols[k:]
    if any(h >= N for h in left):
        raise ValueError("no split: a conjugated column would have height <= 0")
    if any(h > N for h in right):
        raise ValueError("no split: Y+ column taller than N")
    y_minus = YoungDiagram.from_columns(tuple(N - h for h in reversed(left)))
    y_plus = YoungDiagram.from_columns(tuple(right))
    return complex_sector(y_plus, y_minus, N).check_bound()


def weyl_dimension_U(irr: GaugeIrrepU, N: int) -> int:
    """Dimension of the U(N) irreducible with this label (Weyl formula)."""
    irr.validate(N)
    if N == 0:
        return 1
    shift = (irr.q - irr.young.size) // N
    lam = [irr.young.row(i) + shift for i in range(1, N + 1)]
    num = 1
    den = 1
    for i in range(N):
        for j in range(i + 1, N):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    dim, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("Weyl dimension did not divide evenly")
    return dim


# ---------------------------------------------------------------------------
# O(N) dictionary


class GaugeIrrepO(NamedTuple):
    """O(N) irreducible label: diagram with at most floor(N/2) rows, plus a
    sign for the determinant twist."""

    young: YoungDiagram
    sign: str

    def validate(self, N: int):
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        if self.young.num_rows > N // 2:
            raise ValueError(f"{self.young} has more than N/2 = {N // 2} rows")
        return self

    def to_json(self):
        return {"Y": self.young.to_json(), "sign": self.sign}


class OSectorDictEntry(NamedTuple):
    """Result of relabeling a real sector diagram as an O(N) irrep: the
    canonical standard label, every label the column-flip rule produces,
    and whether the two signs are equivalent."""

    canonical: GaugeIrrepO
    by_rule: tuple
    equivalent_pair: bool


def _flip_first_column(y: YoungDiagram, N: int) -> YoungDiagram:
    """Replace the first column of height r by a column of height N - r."""
    heights = list(y.column_heights())
    r = heights[0] if heights else 0
    rest = heights[1:]
    return YoungDiagram.from_columns(tuple(sorted([N - r] + rest, reverse=True)))


def sector_to_irrep_O(y: YoungDiagram, N: int) -> OSectorDictEntry:
    """Relabel a tensor diagram (r + s <= N) as a standard (Y, sign) pair.

    The rank-r antisymmetric tensor is det times the rank N-r one, so the
    diagram and its first-column flip name the same irrep with opposite
    signs; both spellings are reported, and the canonical label is the
    one with at most N/2 rows, '+' preferred on the self-associated
    boundary r = N/2 (where the two signs are genuinely equivalent).
    """
    real_sector(y, N).check_bound()
    r = y.column(1)
    plus = GaugeIrrepO(y, "+")
    minus = GaugeIrrepO(_flip_first_column(y, N), "-")
    canonical = plus if 2 * r <= N else minus
    return OSectorDictEntry(
        canonical=canonical,
        by_rule=(plus, minus),
        equivalent_pair=(2 * r == N),
    )


def irrep_O_to_sector(irr: GaugeIrrepO, N: int) -> YoungDiagram:
    irr.validate(N)
    if irr.sign == "+":
        return irr.young
    return _flip_first_column(irr.young, N)


def o_labels_equivalent(irr: GaugeIrrepO, N: int) -> bool:
    """True when (Y,+) and (Y,-) name the same irrep: N even, exactly N/2 rows."""
    return N % 2 == 0 and irr.young.num_rows == N // 2


def canonical_irrep_O(irr: GaugeIrrepO, N: int) -> GaugeIrrepO:
    if o_labels_equivalent(irr, N):
        return GaugeIrrepO(irr.young, "+")
    return irr


# ---------------------------------------------------------------------------
# round-trip verification


def bijection_roundtrip_check(group: str, N: int, size_cap: int) -> dict:
    """Exhaustively check that the sector <-> gauge-label maps are mutually
    inverse and total on the window of diagrams with <= size_cap boxes."""
    failures = []
    entries = []
    if group == "U":
        seen = {}
        for s in enumerate_sectors(COMPLEX, N, size_cap):
            irr = sector_to_irrep_U(s)
            key = (irr.young, irr.q)
            if key in seen:
                failures.append({"kind": "collision", "label": irr.to_json(),
                                 "sectors": [str(seen[key]), str(s)]})
            seen[key] = s
            back = irrep_U_to_sector(irr, N)
            if back != s:
                failures.append({"kind": "roundtrip", "sector": str(s), "label": irr.to_json(),
                                 "back": str(back)})
            entries.append({"sector": sector_to_json(s), "irrep": irr.to_json()})
        # totality: every valid label in range maps back into the window
        cap = N * size_cap + size_cap
        for y in young_diagrams(cap):
            for q in range(-cap, cap + 1):
                if N > 0 and (q - y.size) % N:
                    continue
                try:
                    s = irrep_U_to_sector(GaugeIrrepU(y, q), N)
                except (ValueError, BoundViolation):
                    continue
                if s.y_plus.size <= size_cap and s.y_minus.size <= size_cap:
                    if (y, q) not in seen:
                        failures.append({"kind": "missing", "label": {"Y": y.to_json(), "q": q}})
                    elif seen[(y, q)] != s:
                        failures.append({"kind": "mismatch", "label": {"Y": y.to_json(), "q": q}})
    elif group == "O":
        seen = {}
        for s in enumerate_sectors(REAL, N, size_cap):
            entry = sector_to_irrep_O(s.y, N)
            irr = entry.canonical
            key = (irr.young, irr.sign)
            if key in seen:
                failures.append({"kind": "collision", "label": irr.to_json(),
                                 "sectors": [str(seen[key]), str(s)]})
            seen[key] = s
            back = irrep_O_to_sector(irr, N)
            if back != s.y:
                failures.append({"kind": "roundtrip", "sector": str(s), "label": irr.to_json(),
                                 "back": str(back)})
            expect_equiv = o_labels_equivalent(irr, N)
            if entry.equivalent_pair != expect_equiv:
                failures.append({"kind": "equivalence", "sector": str(s),
                                 "flagged": entry.equivalent_pair, "expected": expect_equiv})
            entries.append({"sector": sector_to_json(s), "irrep": irr.to_json(),
                            "equivalent_pair": entry.equivalent_pair})
        for y in young_diagrams(size_cap + N, max_rows=N // 2):
            for sign in ("+", "-"):
                irr = GaugeIrrepO(y, sign)
                if canonical_irrep_O(irr, N) != irr:
                    continue  # identified with the '+' partner
                back = irrep_O_to_sector(irr, N)
                if real_sector(back, N).bound_violation() is not None:
                    failures.append({"kind": "out_of_bound_back", "label": irr.to_json()})
                    continue
                if back.size <= size_cap:
                    entry = sector_to_irrep_O(back, N)
                    if entry.canonical != irr:
                        failures.append({"kind": "missing", "label": irr.to_json(),
                                         "via": str(back)})
    else:
        raise ValueError("group must be 'U' or 'O'")
    return {"ok": not failures, "group": group, "N": N, "size_cap": size_cap,
            "entries": entries, "failures": failures}


def sector_to_json(s: SectorLabel) -> dict:
    if s.field_kind == COMPLEX:
        return {"Y_plus": s.y_plus.to_json(), "Y_minus": s.y_minus.to_json(), "N": s.N}
    return {"Y": s.y_plus.to_json(), "N": s.N}


# ---------------------------------------------------------------------------
# realized gauge generators (flavor-index bilinears)


def apply_gauge_generator(ctx: FockContext, p: int, q: int, v: FockVector) -> FockVector:
    """Gauge Lie algebra action on Fock space, truncated to modes <= M
    (exact on the truncated space since higher modes are unoccupied).

    Complex: E^{pq} = sum_i (a*[i,p] a[i,q] - b*[i,q] b[i,p]).
    Real:    M^{pq} = sum_i (a*[i,p] a[i,q] - a*[i,q] a[i,p]).
    """
    for f in (p, q):
        if not 1 <= f <= ctx.N:
            raise ContextViolation(f"flavor {f} outside 1..{ctx.N}")
    out = zero(ctx)
    for i in range(1, ctx.M + 1):
        out = out + apply_creation(
            ctx, ModeSlot(SPECIES_A, i, p), apply_annihilation(ctx, ModeSlot(SPECIES_A, i, q), v)
        )
        if ctx.field_kind == COMPLEX:
            out = out - apply_creation(
                ctx, ModeSlot(SPECIES_B, i, q), apply_annihilation(ctx, ModeSlot(SPECIES_B, i, p), v)
            )
        else:
            out = out - apply_creation(
                ctx, ModeSlot(SPECIES_A, i, q), apply_annihilation(ctx, ModeSlot(SPECIES_A, i, p), v)
            )
    return out
