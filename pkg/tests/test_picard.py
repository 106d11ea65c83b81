"""Tests for lattice classes, descriptors, and decomposition algebra."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobpush.catalog import (
    pushforward_hirzebruch,
    pushforward_projective_space,
)
from frobpush.combinat import PrimePower, composition_count
from frobpush.errors import (
    DeterminantUnsupportedError,
    InvalidParameterError,
    LatticeMismatchError,
    NotFSplitError,
    RankUndefinedError,
)
from frobpush.picard import (
    ConeP,
    Decomposition,
    Hirzebruch,
    Line,
    LinearBlowup,
    PicClass,
    Product,
    ProjSpace,
    Quadric,
    SegreCone,
    SegreConeBlowup,
    Spinor,
    VeroneseConeBlowup,
    change_basis,
)

H = ("H",)


def line(coords, basis=H):
    return Line(PicClass(tuple(coords), basis))


class TestPicClass:
    def test_arithmetic(self):
        a = PicClass((1, 2), ("C0", "f"))
        b = PicClass((0, -1), ("C0", "f"))
        assert (a + b).coords == (1, 1)
        assert (a - b).coords == (1, 3)
        assert (-a).coords == (-1, -2)
        assert a.scaled(3).coords == (3, 6)

    def test_zero(self):
        z = PicClass.zero(("H1", "H2"))
        assert z.coords == (0, 0)
        assert z.is_zero

    def test_length_mismatch(self):
        with pytest.raises(LatticeMismatchError):
            PicClass((1, 2), ("H",))

    def test_basis_mismatch(self):
        with pytest.raises(LatticeMismatchError):
            PicClass((1,), ("H",)) + PicClass((1,), ("L",))


class TestDescriptors:
    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            ProjSpace(0)
        with pytest.raises(InvalidParameterError):
            Product(0, 1)
        with pytest.raises(InvalidParameterError):
            Hirzebruch(-1)
        with pytest.raises(InvalidParameterError):
            LinearBlowup(2, 2)
        with pytest.raises(InvalidParameterError):
            LinearBlowup(1, 1)
        with pytest.raises(InvalidParameterError):
            VeroneseConeBlowup(0, 1)
        with pytest.raises(InvalidParameterError):
            SegreConeBlowup(1, 0)
        with pytest.raises(InvalidParameterError):
            Quadric(2)

    def test_dimensions(self):
        assert ProjSpace(3).dim == 3
        assert Product(2, 1).dim == 3
        assert Hirzebruch(5).dim == 2
        assert LinearBlowup(4, 2).dim == 4
        assert VeroneseConeBlowup(2, 3).dim == 3
        assert SegreConeBlowup(2, 2).dim == 5
        assert ConeP(SegreCone(1, 2)).dim == 4

    def test_quadric_spinor_rank(self):
        assert Quadric(3).spinor_rank == 2
        assert Quadric(4).spinor_rank == 4
        assert Quadric(7).spinor_rank == 8


class TestDecompositionBasics:
    def test_coalesces_duplicates(self):
        decomp = Decomposition(ProjSpace(1), [(line([1]), 2), (line([1]), 3)])
        assert decomp.multiplicity(line([1])) == 5

    def test_drops_zero_multiplicities(self):
        decomp = Decomposition(ProjSpace(1), [(line([1]), 0), (line([0]), 1)])
        assert line([1]) not in decomp.entries

    def test_rejects_negative_multiplicity(self):
        with pytest.raises(InvalidParameterError):
            Decomposition(ProjSpace(1), [(line([1]), -1)])

    def test_multiset_equality(self):
        a = Decomposition(ProjSpace(1), [(line([1]), 2), (line([0]), 1)])
        b = Decomposition(ProjSpace(1), [(line([0]), 1), (line([1]), 1), (line([1]), 1)])
        assert a == b

    def test_unknown_needs_support_flag(self):
        with pytest.raises(InvalidParameterError):
            Decomposition(Quadric(3), [(Spinor(1), None)])
        supported = Decomposition(Quadric(3), [(Spinor(1), None)], support_only=True)
        assert supported.support_only

    def test_spinor_only_on_quadrics(self):
        with pytest.raises(InvalidParameterError):
            Decomposition(ProjSpace(2), [(Spinor(1), 1)])

    def test_basis_mismatch(self):
        with pytest.raises(LatticeMismatchError):
            Decomposition(ProjSpace(1), [(line([1], basis=("L",)), 1)])


class TestRank:
    def test_projective_space_rank(self):
        fp = PrimePower(3, 1)
        assert pushforward_projective_space(2, 0, fp).rank() == 9

    def test_empty_rank(self):
        assert Decomposition(ProjSpace(1), []).rank() == 0

    def test_hirzebruch_rank(self):
        fp = PrimePower(3, 1)
        assert pushforward_hirzebruch(2, 0, 0, fp).rank() == 9

    def test_spinor_rank_contribution(self):
        decomp = Decomposition(Quadric(4), [(Spinor(2), 3)])
        assert decomp.rank() == 3 * 4

    def test_support_only_rank_undefined(self):
        decomp = Decomposition(Quadric(3), [(Spinor(1), None)], support_only=True)
        with pytest.raises(RankUndefinedError):
            decomp.rank()


class TestDual:
    def test_involution(self):
        fp = PrimePower(2, 2)
        decomp = pushforward_hirzebruch(1, 3, -2, fp)
        assert decomp.dual().dual() == decomp

    def test_spinor_involution(self):
        decomp = Decomposition(Quadric(3), [(Spinor(2), None)], support_only=True)
        dualized = decomp.dual()
        assert Spinor(-1) in dualized.entries
        assert dualized.dual() == decomp

    def test_dual_of_structure_pushforward(self):
        fp = PrimePower(3, 1)
        for d in (1, 2, 3):
            dualized = pushforward_projective_space(d, 0, fp).dual()
            for i in range(d + 1):
                expected = composition_count(i, 0, d, fp)
                assert dualized.entries.get(line([i]), 0) == expected

    def test_rank_and_det_laws(self):
        fp = PrimePower(2, 2)
        decomp = pushforward_hirzebruch(2, 1, 1, fp)
        assert decomp.dual().rank() == decomp.rank()
        assert decomp.dual().det().coords == (-decomp.det()).coords


class TestTwist:
    def test_identity_and_inverse(self):
        fp = PrimePower(3, 1)
        decomp = pushforward_projective_space(2, 1, fp)
        zero = PicClass.zero(("H",))
        assert decomp.twist(zero) == decomp
        c = PicClass((4,), ("H",))
        assert decomp.twist(c).twist(-c) == decomp

    def test_twist_shifts_classes(self):
        fp = PrimePower(2, 1)
        kernel_dual = pushforward_projective_space(2, 0, fp).remove_trivial()
        shifted = kernel_dual.twist(PicClass((1,), ("H",)))
        assert shifted.entries.get(line([0]), 0) == kernel_dual.entries.get(line([-1]), 0)

    def test_twist_preserves_rank(self):
        fp = PrimePower(3, 1)
        decomp = pushforward_hirzebruch(1, 0, 0, fp)
        twisted = decomp.twist(PicClass((2, -1), ("C0", "f")))
        assert twisted.rank() == decomp.rank()

    def test_spinor_twist(self):
        decomp = Decomposition(Quadric(3), [(Spinor(1), None)], support_only=True)
        twisted = decomp.twist(PicClass((2,), ("O(1)",)))
        assert Spinor(3) in twisted.entries

    def test_lattice_mismatch(self):
        fp = PrimePower(2, 1)
        decomp = pushforward_projective_space(1, 0, fp)
        with pytest.raises(LatticeMismatchError):
            decomp.twist(PicClass((1, 0), ("C0", "f")))


class TestDet:
    def test_line_example(self):
        fp = PrimePower(2, 1)
        assert pushforward_projective_space(1, 0, fp).det().coords == (-1,)
        assert pushforward_projective_space(1, 1, fp).det().coords == (0,)

    def test_empty_det(self):
        assert Decomposition(ProjSpace(2), []).det().coords == (0,)

    def test_single_entry(self):
        decomp = Decomposition(ProjSpace(1), [(line([3]), 5)])
        assert decomp.det().coords == (15,)

    def test_spinor_unsupported(self):
        decomp = Decomposition(Quadric(3), [(Spinor(2), 1)])
        with pytest.raises(DeterminantUnsupportedError):
            decomp.det()

    def test_support_only_undefined(self):
        decomp = Decomposition(Quadric(3), [(line([1], ("O(1)",)), None)], support_only=True)
        with pytest.raises(RankUndefinedError):
            decomp.det()


class TestRemoveTrivial:
    def test_kernel_dual_of_projective_space(self):
        fp = PrimePower(2, 2)
        for d in (1, 2, 3):
            stripped = pushforward_projective_space(d, 0, fp).remove_trivial()
            assert stripped.rank() == fp.q**d - 1
            assert line([0]) not in stripped.entries

    def test_single_trivial_becomes_empty(self):
        decomp = Decomposition(ProjSpace(1), [(line([0]), 1)])
        assert decomp.remove_trivial().is_empty

    def test_missing_trivial_errors(self):
        decomp = Decomposition(ProjSpace(1), [(line([-1]), 5)])
        with pytest.raises(NotFSplitError):
            decomp.remove_trivial()

    @given(st.integers(2, 9))
    def test_drops_rank_by_one(self, mult):
        decomp = Decomposition(ProjSpace(1), [(line([0]), mult), (line([-1]), 1)])
        assert decomp.remove_trivial().rank() == decomp.rank() - 1


class TestChangeBasis:
    def test_involution(self):
        fp = PrimePower(3, 1)
        from frobpush.catalog import pushforward_linear_blowup

        decomp = pushforward_linear_blowup(3, 1, fp)
        flipped = change_basis(decomp, ("H", "E"))
        assert flipped.basis == ("H", "E")
        assert change_basis(flipped, ("H", "H'")) == decomp

    def test_relation(self):
        # H' = H - E: the class -H' must read as (-1, 1) against ("H", "E").
        decomp = Decomposition(
            LinearBlowup(2, 1), [(Line(PicClass((0, -1), ("H", "H'"))), 1)]
        )
        flipped = change_basis(decomp, ("H", "E"))
        assert Line(PicClass((-1, 1), ("H", "E"))) in flipped.entries

    def test_only_on_blowups(self):
        fp = PrimePower(2, 1)
        with pytest.raises(LatticeMismatchError):
            change_basis(pushforward_projective_space(1, 0, fp), ("H", "E"))
