import random

import pytest

from mbhomology.chain import HomologyGroup, homology_at, validate_complex
from mbhomology.exactalg import IntMatrix
from mbhomology.flowdata import (
    CritModel,
    FlowPresentation,
    ModuliComponentModel,
    build_multicomplex,
)
from mbhomology.multicomplex import (
    InvalidMulticomplex,
    MBSMulticomplex,
    homology_table,
    totalize,
    validate_multicomplex,
)
from mbhomology.simplicial import (
    SimplicialComplexData,
    SimplicialMap,
    chain_complex_of,
)


def triangle():
    return SimplicialComplexData.from_simplices([(0, 1), (1, 2), (0, 2)])


def sphere_model():
    return SimplicialComplexData.from_simplices(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def single_row_mc(model, ambient_dim, cap=4):
    """Multicomplex with one simplicial row at index 0."""
    row = chain_complex_of(model)
    ranks = {}
    labels = {}
    maps = {}
    for p in row.degrees():
        ranks[(p, 0)] = row.rank(p)
        labels[(p, 0)] = row.label(p)
    for p in range(1, row.degree_range[1] + 1):
        d = row.boundary(p)
        if not d.is_zero():
            maps[(0, p, 0)] = d.scaled(-1 if p % 2 else 1)
    return MBSMulticomplex(ambient_dim=ambient_dim, column_cap=cap,
                           row_ranks=ranks, row_labels=labels, maps=maps)


def s2_z2_presentation():
    """Height-squared on the sphere: a circle of minima and two maxima."""
    tri = triangle()
    poles = CritModel(index=2, dimension=0, names=("n", "s"))
    rim = CritModel(index=0, dimension=1, complex=tri)
    comps = []
    for vertex, sign in ((0, 1), (1, -1)):
        comps.append(ModuliComponentModel(
            from_index=2, to_index=0,
            domain=tri,
            ev_minus=SimplicialMap(tri, poles.model_complex(),
                                   vertex_image=[vertex] * 3),
            ev_plus=SimplicialMap(tri, tri, vertex_image=[0, 1, 2]),
            sign=sign,
        ))
    return FlowPresentation(dim=2, crit=(rim, poles), moduli=tuple(comps))


class TestValidate:
    def test_rows_only_valid(self):
        mc = single_row_mc(sphere_model(), ambient_dim=2)
        assert validate_multicomplex(mc).ok

    def test_z2_instance_valid(self):
        mc = build_multicomplex(s2_z2_presentation())
        assert validate_multicomplex(mc).ok

    def test_sign_mutation_fails_at_j2(self):
        mc = build_multicomplex(s2_z2_presentation())
        d2 = mc.maps[(2, 0, 2)]
        rows = [list(r) for r in d2.data]
        rows[0][0] = -rows[0][0]
        mutated = MBSMulticomplex(
            ambient_dim=mc.ambient_dim, column_cap=mc.column_cap,
            row_ranks=dict(mc.row_ranks), row_labels=dict(mc.row_labels),
            maps={**mc.maps, (2, 0, 2): IntMatrix(d2.rows, d2.cols, rows)},
        )
        report = validate_multicomplex(mutated)
        assert not report.ok
        spots = [(j, p, i) for (j, p, i, _) in report.identity_failures]
        assert (2, 0, 2) in spots
        # hand oracle: the residual is d[0] o d[2] on the mutated column,
        # i.e. -boundary of the mutated cycle
        _, _, _, residual = report.identity_failures[0]
        expected = mutated.map(0, 1, 0) @ mutated.map(2, 0, 2)
        assert residual == expected

    def test_shape_problem_is_structural(self):
        mc = build_multicomplex(s2_z2_presentation())
        bad = MBSMulticomplex(
            ambient_dim=mc.ambient_dim, column_cap=mc.column_cap,
            row_ranks=dict(mc.row_ranks), row_labels=dict(mc.row_labels),
            maps={**mc.maps, (2, 0, 2): IntMatrix.zeros(1, 1)},
        )
        report = validate_multicomplex(bad)
        assert report.structural and not report.identity_failures

    def test_rejects_j_above_row(self):
        with pytest.raises(ValueError):
            MBSMulticomplex(ambient_dim=2, column_cap=4,
                            row_ranks={(0, 0): 1},
                            maps={(1, 0, 0): IntMatrix.zeros(0, 1)})


class TestTotalize:
    def test_single_row_alternating_sign(self):
        mc = single_row_mc(sphere_model(), ambient_dim=2)
        row = chain_complex_of(sphere_model())
        view = totalize(mc)
        assert validate_complex(view.complex) == []
        for k in range(1, 3):
            expected = row.boundary(k).scaled(-1 if k % 2 else 1)
            assert view.complex.boundary(k) == expected

    def test_two_point_rows_block_assembly(self):
        # two full point rows joined by a single flow-line count: the total
        # boundary in low degrees is the hand-assembled block matrix
        fat = {p: 1 for p in range(5)}
        ranks = {}
        maps = {}
        for i in (0, 1):
            for p in range(5):
                ranks[(p, i)] = 1
            for p in (2, 4):
                maps[(0, p, i)] = IntMatrix.from_rows(
                    [[1 if (p + i) % 2 == 0 else -1]])
        maps[(1, 0, 1)] = IntMatrix.from_rows([[3]])
        mc = MBSMulticomplex(ambient_dim=1, column_cap=4, row_ranks=ranks,
                             maps=maps)
        assert validate_multicomplex(mc).ok
        view = totalize(mc)
        assert validate_complex(view.complex) == []
        # degree 1 = (0,1) + (1,0); degree 0 = (0,0)
        assert view.complex.boundary(1) == IntMatrix.from_rows([[3, 0]])
        # degree 2 = (1,1) + (2,0) -> degree 1 = (0,1) + (1,0)
        assert view.complex.boundary(2) == IntMatrix.from_rows(
            [[0, 0], [0, 1]])
        table = homology_table(mc)
        assert table[0].iso(HomologyGroup(0, (3,)))
        assert table[1].is_trivial()

    def test_empty_rows_contribute_nothing(self):
        mc = single_row_mc(triangle(), ambient_dim=2)
        view = totalize(mc)
        assert view.complex.rank(0) == 3
        assert view.complex.rank(1) == 3
        assert view.complex.rank(2) == 0


class TestHomologyTable:
    def test_constant_function_sphere(self):
        mc = single_row_mc(sphere_model(), ambient_dim=2)
        table = homology_table(mc)
        assert table[0].iso(HomologyGroup(1, ()))
        assert table[1].is_trivial()
        assert table[2].iso(HomologyGroup(1, ()))
        assert table[3].is_trivial()

    def test_z2_sphere(self):
        table = homology_table(build_multicomplex(s2_z2_presentation()))
        assert [h.betti for h in table[:3]] == [1, 0, 1]
        assert all(not h.torsion for h in table[:3])

    def test_invalid_rejected(self):
        mc = build_multicomplex(s2_z2_presentation())
        d2 = mc.maps[(2, 0, 2)]
        rows = [list(r) for r in d2.data]
        rows[0][0] += 1
        bad = MBSMulticomplex(
            ambient_dim=mc.ambient_dim, column_cap=mc.column_cap,
            row_ranks=dict(mc.row_ranks), row_labels=dict(mc.row_labels),
            maps={**mc.maps, (2, 0, 2): IntMatrix(d2.rows, d2.cols, rows)},
        )
        with pytest.raises(InvalidMulticomplex):
            homology_table(bad)


class TestInvariants:
    def test_total_square_zero_on_instances(self):
        instances = [
            single_row_mc(sphere_model(), ambient_dim=2),
            single_row_mc(triangle(), ambient_dim=2),
            build_multicomplex(s2_z2_presentation()),
        ]
        for mc in instances:
            view = totalize(mc)
            assert validate_complex(view.complex) == []

    def test_label_permutation_invariance(self):
        base = build_multicomplex(s2_z2_presentation())
        rng = random.Random(11)
        perm = [1, 0]  # swap the two poles in every column of row 2
        maps = dict(base.maps)
        for p in (2, 4):
            mat = base.map(0, p, 2)
            maps[(0, p, 2)] = IntMatrix(
                2, 2, [[mat[perm[r], perm[c]] for c in range(2)]
                       for r in range(2)])
        d2 = base.map(2, 0, 2)
        maps[(2, 0, 2)] = d2.submatrix_cols(perm)
        shuffled = MBSMulticomplex(
            ambient_dim=base.ambient_dim, column_cap=base.column_cap,
            row_ranks=dict(base.row_ranks),
            maps=maps,
        )
        assert validate_multicomplex(shuffled).ok
        for a, b in zip(homology_table(base), homology_table(shuffled)):
            assert a.iso(b)

    def test_truncation_stability(self):
        fp = s2_z2_presentation()
        low = homology_table(build_multicomplex(fp))
        fp_high = FlowPresentation(dim=fp.dim, crit=fp.crit,
                                   moduli=fp.moduli, column_cap=6)
        high = homology_table(build_multicomplex(fp_high))
        for k in range(0, 3):
            assert low[k].iso(high[k])

    def test_single_row_table_equals_row_homology(self):
        model = sphere_model()
        mc = single_row_mc(model, ambient_dim=2)
        row = chain_complex_of(model)
        for k, group in enumerate(homology_table(mc)):
            assert group.iso(homology_at(row, k))
