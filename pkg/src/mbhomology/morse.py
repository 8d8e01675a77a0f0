"""The Morse-Smale-Witten complex and its canonical embedding.

For point-only multicomplexes the column-zero diagonal is the classical
complex on critical points with boundary n(q, p).  The embedding fills in
the even columns by the recursion

    c_i = -d[0]^{-1} ( d[i] c_0 + d[i-2] c_2 + ... + d[2] c_{i-2} ),

odd columns staying zero; d[0] is invertible there because every row is a
full point row.  The result is a chain map into the total complex and a
quasi-isomorphism, which is verified here matrix-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import (
    ChainComplex,
    ChainMap,
    homology_at,
    induced_map_on_homology,
    quasi_iso,
    validate_chain_map,
    validate_complex,
)
from .exactalg import IntMatrix, snf
from .multicomplex import totalize


class InvalidMorseData(ValueError):
    """The flow-line counts do not square to zero."""


@dataclass
class MorseData:
    """Critical points by index and signed flow-line counts n(q, p) for
    index(q) = index(p) + 1."""

    crit_by_index: dict
    counts: dict

    def __post_init__(self):
        self.crit_by_index = {int(k): tuple(v)
                              for k, v in self.crit_by_index.items() if v}
        self.counts = {(q, p): int(n) for (q, p), n in self.counts.items()}

    def index_of(self, name):
        for k, names in self.crit_by_index.items():
            if name in names:
                return k
        raise KeyError(name)

    def validate(self):
        report = []
        seen = {}
        for k, names in self.crit_by_index.items():
            for name in names:
                if name in seen:
                    report.append(f"point {name} listed at indices "
                                  f"{seen[name]} and {k}")
                seen[name] = k
        for (q, p), n in self.counts.items():
            if q not in seen or p not in seen:
                report.append(f"count n({q},{p}) uses unknown points")
            elif seen[q] != seen[p] + 1:
                report.append(f"count n({q},{p}) does not drop index by one")
        return report


def morse_complex(md):
    """Chain complex on critical points graded by index.

    Raises InvalidMorseData when the boundary does not square to zero.
    """
    problems = md.validate()
    if problems:
        raise InvalidMorseData("; ".join(problems))
    ranks = {}
    labels = {}
    position = {}
    for k, names in md.crit_by_index.items():
        ranks[k] = len(names)
        labels[k] = tuple(names)
        for t, name in enumerate(names):
            position[name] = t
    boundaries = {}
    for k in sorted(ranks):
        if k - 1 not in ranks:
            continue
        mat = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for (q, p), n in md.counts.items():
            if md.index_of(q) == k:
                mat[position[p]][position[q]] += n
        boundaries[k] = IntMatrix(ranks[k - 1], ranks[k], mat)
    cx = ChainComplex(ranks=ranks, boundaries=boundaries, labels=labels)
    problems = validate_complex(cx)
    if problems:
        raise InvalidMorseData(
            "flow-line counts do not square to zero: " + "; ".join(problems))
    return cx


def _check_morse_shaped(mc):
    """Every present row must be a full point row: constant rank across all
    columns with d[0] invertible at even positive columns."""
    for i in range(0, mc.ambient_dim + 1):
        if not mc.row_present(i):
            continue
        base = mc.rank(0, i)
        for p in range(0, mc.column_cap + 1):
            if mc.rank(p, i) != base:
                raise ValueError(
                    f"row {i} has varying rank; the embedding needs full "
                    "point rows")
        for p in range(2, mc.column_cap + 1, 2):
            d0 = mc.map(0, p, i)
            dec = snf(d0)
            if d0.rows != d0.cols or \
                    dec.invariant_factors != tuple([1] * d0.rows):
                raise ValueError(
                    f"d[0] at (p={p}, i={i}) is not invertible; the "
                    "embedding needs full point rows")


def phi_embed(mc, k, c0):
    """Canonical lift of a column-zero vector of row k into total degree k.

    Returns {i: c_i} for i = 0..k with odd entries zero and even entries
    produced by the recursion, solved exactly over the integers.
    """
    _check_morse_shaped(mc)
    c0 = tuple(int(x) for x in c0)
    if len(c0) != mc.rank(0, k):
        raise ValueError(f"vector of length {len(c0)} in a rank "
                         f"{mc.rank(0, k)} slot")
    parts = {0: c0}
    for i in range(1, k + 1):
        if i % 2:
            parts[i] = tuple([0] * mc.rank(i, k - i))
            continue
        rhs = [0] * mc.rank(i - 1, k - i)
        for t in range(0, i, 2):
            step = mc.map(i - t, t, k - t)
            image = step.times_vector(parts[t])
            rhs = [a + b for a, b in zip(rhs, image)]
        d0 = mc.map(0, i, k - i)
        solution = snf(d0).solve([-x for x in rhs])
        if solution is None:
            raise ValueError(
                f"no integer solution for the column-{i} component; "
                "inconsistent point-row data")
        parts[i] = solution
    return parts


def phi_chain_map(md, mc, view=None):
    """The embedding as a chain map from the critical-point complex into
    the totalization."""
    cm = morse_complex(md)
    if view is None:
        view = totalize(mc)
    for k in cm.degrees():
        if cm.rank(k) and mc.labels(0, k) != cm.label(k):
            raise ValueError(
                f"row {k} labels {mc.labels(0, k)} do not match critical "
                f"points {cm.label(k)}")
    components = {}
    for k in cm.degrees():
        n = cm.rank(k)
        cols = []
        for t in range(n):
            c0 = [1 if s == t else 0 for s in range(n)]
            parts = phi_embed(mc, k, c0)
            full = [0] * view.complex.rank(k)
            for i, vec in parts.items():
                off = view.block_offsets[(i, k - i)]
                for s, x in enumerate(vec):
                    full[off + s] = x
            cols.append(full)
        components[k] = IntMatrix(view.complex.rank(k), n,
                                  [[cols[j][i] for j in range(n)]
                                   for i in range(view.complex.rank(k))])
    return ChainMap(source=cm, target=view.complex, components=components)


@dataclass
class MorseVerification:
    """Outcome of checking the embedding against the multicomplex."""

    chain_map_residuals: dict
    odd_components_zero: bool
    is_quasi_iso: bool
    induced: dict
    morse_homology: list
    mb_homology: list
    embedding: ChainMap = field(repr=False, default=None)

    @property
    def chain_map_exact(self):
        return all(r.is_zero() for r in self.chain_map_residuals.values())

    @property
    def ok(self):
        return (self.chain_map_exact and self.odd_components_zero
                and self.is_quasi_iso
                and all(a.iso(b) for a, b in
                        zip(self.morse_homology, self.mb_homology)))


def verify_morse_mb(md, mc):
    """Full diagnostic: chain-map residuals per degree, odd-component check,
    mapping-cone quasi-isomorphism verdict, induced maps, and both homology
    tables."""
    view = totalize(mc)
    phi = phi_chain_map(md, mc, view=view)
    cm, total = phi.source, view.complex

    residuals = {}
    degs = set(cm.degrees()) | set(total.degrees())
    for k in sorted(degs | {d + 1 for d in degs}):
        lhs = total.boundary(k) @ phi.component(k)
        rhs = phi.component(k - 1) @ cm.boundary(k)
        residuals[k] = lhs - rhs

    odd_zero = True
    for k in cm.degrees():
        comp = phi.component(k)
        for i in range(1, k + 1, 2):
            off = view.block_offsets.get((i, k - i))
            if off is None:
                continue
            for r in range(mc.rank(i, k - i)):
                if any(comp[off + r, c] for c in range(comp.cols)):
                    odd_zero = False

    qi = validate_chain_map(phi) == [] and quasi_iso(phi)

    induced = {}
    morse_h = []
    mb_h = []
    for k in range(0, mc.ambient_dim + 1):
        morse_h.append(homology_at(cm, k))
        mb_h.append(homology_at(total, k))
        induced[k] = induced_map_on_homology(phi, k)

    return MorseVerification(
        chain_map_residuals=residuals,
        odd_components_zero=odd_zero,
        is_quasi_iso=qi,
        induced=induced,
        morse_homology=morse_h,
        mb_homology=mb_h,
        embedding=phi,
    )
