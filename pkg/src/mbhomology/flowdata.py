"""Finite flow presentations and the multicomplex builder.

A presentation lists critical-submanifold models (isolated points or
triangulated closed oriented pseudomanifolds) and moduli components with
their two evaluation maps and an orientation sign.  The builder turns this
into the bigraded complex:

  * d[0] is the row boundary with the checkerboard sign (-1)^(p+i);
  * a component with a point source contributes its (relative) fundamental
    cycle, pushed along ev_plus, to d[j] on the column p = 0 -- and nothing
    in higher columns, where product chains are degenerate in the canonical
    model;
  * a component whose source is positive-dimensional must have ev_minus a
    simplicial covering of the source model (relative index one); d[1] is
    then pullback along ev_minus followed by pushforward along ev_plus in
    every column.

Chains landing on a point-kind row keep their column: a constant chain of
degree p is the degree-p generator of that point's row, not zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import ChainComplex
from .exactalg import IntMatrix
from .multicomplex import MBSMulticomplex, validate_multicomplex
from .simplicial import (
    CoveringError,
    SimplicialComplexData,
    SimplicialMap,
    chain_complex_of,
    chain_to_vector,
    covering_pullback,
    covering_sheets,
    fundamental_cycle,
    pushforward,
)


class FlowDataError(ValueError):
    """Malformed flow presentation."""


class InconsistentFlowData(ValueError):
    """The assembled multicomplex fails the anticommutation identity: the
    finite analogue of inconsistent gluing/orientation data."""

    def __init__(self, report):
        super().__init__("inconsistent flow data:\n" + report.describe())
        self.report = report


@dataclass
class CritModel:
    """Critical set of one index: named points, or a triangulated model."""

    index: int
    dimension: int
    names: tuple = None
    complex: SimplicialComplexData = None

    @property
    def is_points(self):
        return self.names is not None

    def model_complex(self):
        if self.is_points:
            return SimplicialComplexData(
                len(self.names), {0: [(v,) for v in range(len(self.names))]})
        return self.complex

    def validate(self):
        report = []
        if (self.names is None) == (self.complex is None):
            report.append(f"index {self.index}: give names or a complex, "
                          "not both")
            return report
        if self.is_points:
            if self.dimension != 0:
                report.append(f"index {self.index}: point models must have "
                              "dimension 0")
            if len(set(self.names)) != len(self.names):
                report.append(f"index {self.index}: duplicate point names")
        else:
            report.extend(f"index {self.index}: {msg}"
                          for msg in self.complex.validate())
            if not report:
                if self.complex.top_dim != self.dimension:
                    report.append(
                        f"index {self.index}: model has dimension "
                        f"{self.complex.top_dim}, declared {self.dimension}")
                try:
                    cyc = fundamental_cycle(self.complex)
                    if not cyc.is_closed():
                        report.append(f"index {self.index}: model has "
                                      "boundary; it must be closed")
                except ValueError as err:
                    report.append(f"index {self.index}: {err}")
        return report


@dataclass
class ModuliComponentModel:
    """One connected component of a compactified space of flow lines.

    The domain dimension must be (index drop) + (source dimension) - 1.
    ev_minus records where a flow line begins on the source model, ev_plus
    where it ends on the target model; sign is the component's orientation
    relative to the models' fundamental cycles.
    """

    from_index: int
    to_index: int
    domain: SimplicialComplexData
    ev_minus: SimplicialMap
    ev_plus: SimplicialMap
    sign: int = 1

    @property
    def relative_index(self):
        return self.from_index - self.to_index

    def validate(self, source, target):
        report = []
        j = self.relative_index
        if j <= 0:
            report.append(f"component {self.from_index}->{self.to_index}: "
                          "index must strictly decrease along flows")
        if self.sign not in (1, -1):
            report.append(f"component {self.from_index}->{self.to_index}: "
                          f"sign {self.sign} is not +-1")
        expected_dim = j + source.dimension - 1
        if self.domain.top_dim != expected_dim:
            report.append(
                f"component {self.from_index}->{self.to_index}: domain has "
                f"dimension {self.domain.top_dim}, expected {expected_dim}")
        if self.ev_minus.source != self.domain or \
                self.ev_minus.target != source.model_complex():
            report.append(f"component {self.from_index}->{self.to_index}: "
                          "ev_minus endpoints do not match")
        if self.ev_plus.source != self.domain or \
                self.ev_plus.target != target.model_complex():
            report.append(f"component {self.from_index}->{self.to_index}: "
                          "ev_plus endpoints do not match")
        return report


@dataclass
class FlowPresentation:
    """Ambient dimension, critical models (at most one per index; absent
    indices are empty), and moduli components."""

    dim: int
    crit: tuple
    moduli: tuple = field(default_factory=tuple)
    column_cap: int = None

    def __post_init__(self):
        self.crit = tuple(self.crit)
        self.moduli = tuple(self.moduli)

    def crit_at(self, i):
        for model in self.crit:
            if model.index == i:
                return model
        return None

    def cap(self):
        if self.column_cap is not None:
            return self.column_cap
        return default_column_cap(self.dim)

    def validate(self):
        report = []
        seen = set()
        for model in self.crit:
            if model.index in seen:
                report.append(f"two models for index {model.index}")
            seen.add(model.index)
            if not (0 <= model.index <= self.dim):
                report.append(f"index {model.index} outside 0..{self.dim}")
            report.extend(model.validate())
        for comp in self.moduli:
            source = self.crit_at(comp.from_index)
            target = self.crit_at(comp.to_index)
            if source is None or target is None:
                report.append(
                    f"component {comp.from_index}->{comp.to_index} touches "
                    "an empty critical set")
                continue
            report.extend(comp.validate(source, target))
        cap = self.cap()
        if cap % 2 or cap < self.dim + 2:
            report.append(f"column cap {cap} must be even and at least "
                          f"{self.dim + 2}")
        return report


def default_column_cap(ambient_dim):
    """Smallest even integer >= ambient_dim + 2.

    Degrees <= ambient_dim only involve columns p <= ambient_dim + 1, and an
    even cap cuts each point row just after an isomorphism differential, so
    no spurious homology appears in the visible range.
    """
    cap = ambient_dim + 2
    return cap if cap % 2 == 0 else cap + 1


def fat_point_row(cap):
    """Chain complex of a single point with all degenerate degrees kept.

    Rank one in degrees 0..cap; the boundary is the identity at even
    positive degrees and zero at odd ones, so the homology is Z, 0, 0, ...

    >>> row = fat_point_row(2)
    >>> [row.rank(0), row.rank(1), row.rank(2)]
    [1, 1, 1]
    >>> row.boundary(1).is_zero(), row.boundary(2)[0, 0]
    (True, 1)
    """
    if cap % 2 or cap < 2:
        raise ValueError(f"cap {cap} must be even and at least 2")
    return _fat_rows(cap, ("pt",))


def _fat_rows(cap, names):
    """Direct sum of fat point rows, one per named point."""
    n = len(names)
    ranks = {p: n for p in range(cap + 1)}
    labels = {p: tuple(names) for p in range(cap + 1)}
    boundaries = {}
    for p in range(1, cap + 1):
        if p % 2 == 0:
            boundaries[p] = IntMatrix.identity(n)
        else:
            boundaries[p] = IntMatrix.zeros(n, n)
    return ChainComplex(ranks=ranks, boundaries=boundaries, labels=labels)


def _row_complex(model, cap):
    if model.is_points:
        return _fat_rows(cap, model.names)
    return chain_complex_of(model.complex)


def _target_vector(target, ev_plus, chain, degree):
    """Coefficient vector of a chain pushed into a row at the given column.

    Point-kind targets absorb chains of every degree: each simplex lies over
    a single point and contributes its coefficient to that point's
    degree-p generator.  Simplicial targets take the honest pushforward.
    """
    if target.is_points:
        vec = [0] * len(target.names)
        for simplex, coeff in chain.items():
            vec[ev_plus.vertex_image[simplex[0]]] += coeff
        return tuple(vec)
    pushed = pushforward(ev_plus, chain)
    return chain_to_vector(target.complex, degree, pushed)


def build_multicomplex(fp, check=True):
    """Assemble the bigraded complex of a flow presentation.

    Raises FlowDataError for malformed input, CoveringError when ev_minus of
    a positive-dimensional source fails the covering check, and
    InconsistentFlowData when the assembled maps fail anticommutation.
    """
    problems = fp.validate()
    if problems:
        raise FlowDataError("; ".join(problems))
    cap = fp.cap()

    row_ranks = {}
    row_labels = {}
    maps = {}
    for model in fp.crit:
        i = model.index
        row = _row_complex(model, cap)
        for p in range(0, cap + 1):
            r = row.rank(p)
            if r:
                row_ranks[(p, i)] = r
                row_labels[(p, i)] = row.label(p)
        for p in range(1, cap + 1):
            d = row.boundary(p)
            if not d.is_zero():
                sign = -1 if (p + i) % 2 else 1
                maps[(0, p, i)] = d.scaled(sign)

    # accumulate moduli contributions into dense column lists
    pending = {}

    def add_contribution(j, p, i, col, vector):
        key = (j, p, i)
        source = fp.crit_at(i)
        n_cols = len(source.names) if source.is_points else \
            len(source.complex.simplices_of_dim(p))
        rows = len(vector)
        mat = pending.get(key)
        if mat is None:
            mat = [[0] * n_cols for _ in range(rows)]
            pending[key] = mat
        for r, x in enumerate(vector):
            mat[r][col] += x

    for comp in fp.moduli:
        j = comp.relative_index
        source = fp.crit_at(comp.from_index)
        target = fp.crit_at(comp.to_index)
        if source.is_points:
            hit = {comp.ev_minus.vertex_image[v]
                   for v in range(comp.domain.vertex_count)}
            if len(hit) != 1:
                raise FlowDataError(
                    f"component {comp.from_index}->{comp.to_index}: "
                    "ev_minus of a point source must be constant")
            col = hit.pop()
            cyc = fundamental_cycle(comp.domain)
            vec = _target_vector(target, comp.ev_plus, cyc.as_chain(),
                                 comp.domain.top_dim)
            if comp.sign < 0:
                vec = tuple(-x for x in vec)
            add_contribution(j, 0, comp.from_index, col, vec)
        else:
            if j != 1:
                raise FlowDataError(
                    f"component {comp.from_index}->{comp.to_index}: "
                    "positive-dimensional sources are supported only for "
                    "index drop one")
            try:
                covering_sheets(comp.ev_minus)
            except CoveringError as err:
                raise CoveringError(
                    f"component {comp.from_index}->{comp.to_index}: "
                    f"ev_minus is not a covering of the source model: {err}",
                    witness=err.witness) from err
            src_complex = source.complex
            for p in range(0, src_complex.top_dim + 1):
                for col, simplex in enumerate(src_complex.simplices_of_dim(p)):
                    pulled = covering_pullback(comp.ev_minus, {simplex: 1})
                    vec = _target_vector(target, comp.ev_plus, pulled, p)
                    if comp.sign < 0:
                        vec = tuple(-x for x in vec)
                    add_contribution(1, p, comp.from_index, col, vec)

    for (j, p, i), rows in pending.items():
        mat = IntMatrix(len(rows), len(rows[0]) if rows else 0, rows)
        if not mat.is_zero():
            maps[(j, p, i)] = mat

    mc = MBSMulticomplex(
        ambient_dim=fp.dim,
        column_cap=cap,
        row_ranks=row_ranks,
        row_labels=row_labels,
        maps=maps,
    )
    if check:
        report = validate_multicomplex(mc)
        if not report.ok:
            raise InconsistentFlowData(report)
    return mc


def morse_to_flow(md, cap=None):
    """Flow presentation of Morse-Smale data: all critical models are
    points, and each signed flow-line count n(q, p) becomes |n| point
    components with matching signs."""
    crit = []
    for k in sorted(md.crit_by_index):
        names = tuple(md.crit_by_index[k])
        if names:
            crit.append(CritModel(index=k, dimension=0, names=names))
    point = SimplicialComplexData(1, {0: [(0,)]})
    lookup = {}
    for model in crit:
        for t, name in enumerate(model.names):
            lookup[name] = (model, t)
    moduli = []
    for (q, p), n in sorted(md.counts.items()):
        if n == 0:
            continue
        src_model, src_v = lookup[q]
        tgt_model, tgt_v = lookup[p]
        for _ in range(abs(n)):
            moduli.append(ModuliComponentModel(
                from_index=src_model.index,
                to_index=tgt_model.index,
                domain=point,
                ev_minus=SimplicialMap(point, src_model.model_complex(),
                                       vertex_image=[src_v]),
                ev_plus=SimplicialMap(point, tgt_model.model_complex(),
                                      vertex_image=[tgt_v]),
                sign=1 if n > 0 else -1,
            ))
    dim = max(md.crit_by_index) if md.crit_by_index else 0
    return FlowPresentation(dim=dim, crit=tuple(crit), moduli=tuple(moduli),
                            column_cap=cap)
