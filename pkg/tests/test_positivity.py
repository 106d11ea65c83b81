"""Tests for trace-kernel extraction, verdicts, and section-count identities."""

from fractions import Fraction

import pytest

from frobpush.combinat import PrimePower, composition_count
from frobpush.errors import InvalidParameterError, UnsupportedConeError
from frobpush.picard import (
    Hirzebruch,
    Line,
    LinearBlowup,
    PicClass,
    Product,
    ProjSpace,
    SegreConeBlowup,
    Spinor,
    VeroneseConeBlowup,
)
from frobpush.positivity import (
    VerdictStatus,
    ample_verdict,
    classify_class,
    determinant_twist_sum,
    kernel_restriction_verdict,
    quadric_kernel_verdict,
    trace_kernel,
    volume_identity,
)

FIELDS = [PrimePower(p, e) for p in (2, 3, 5) for e in (1, 2)]


class TestTraceKernel:
    def test_projective_space_display(self):
        for fp in FIELDS:
            for d in (1, 2, 3):
                kernel = trace_kernel(ProjSpace(d), fp)
                for i in range(1, d + 1):
                    expected = composition_count(i, 0, d, fp)
                    got = kernel.entries.get(Line(PicClass((i,), ("H",))), 0)
                    assert got == expected
                assert kernel.rank() == fp.q**d - 1

    def test_product_display(self):
        fp = PrimePower(2, 1)
        kernel = trace_kernel(Product(1, 1), fp)
        assert {s.cls.coords for s in kernel.entries} == {(1, 0), (0, 1), (1, 1)}

    def test_rank_across_catalog(self):
        fp = PrimePower(3, 1)
        cases = [
            ProjSpace(2),
            Product(1, 2),
            Hirzebruch(2),
            LinearBlowup(3, 1),
            VeroneseConeBlowup(2, 3),
            SegreConeBlowup(1, 1),
        ]
        for variety in cases:
            assert trace_kernel(variety, fp).rank() == fp.q**variety.dim - 1

    def test_rejects_noncatalog(self):
        from frobpush.picard import Quadric

        with pytest.raises(InvalidParameterError):
            trace_kernel(Quadric(3), PrimePower(5, 1))


class TestClassify:
    def test_examples(self):
        assert classify_class(ProjSpace(2), PicClass((1,), ("H",))) is VerdictStatus.AMPLE
        assert (
            classify_class(Product(1, 1), PicClass((1, 0), ("H1", "H2")))
            is VerdictStatus.NEF_NOT_AMPLE
        )
        assert classify_class(ProjSpace(2), PicClass((-1,), ("H",))) is VerdictStatus.NOT_NEF

    def test_unsupported_variety(self):
        with pytest.raises(UnsupportedConeError):
            classify_class(Hirzebruch(1), PicClass((1, 1), ("C0", "f")))


class TestAmpleVerdict:
    def test_projective_spaces_are_ample(self):
        for fp in FIELDS:
            for d in (1, 2, 3, 4):
                verdict = ample_verdict(trace_kernel(ProjSpace(d), fp))
                assert verdict.status is VerdictStatus.AMPLE

    def test_products_are_nef_not_ample(self):
        for fp in FIELDS[:3]:
            for r in (1, 2, 3):
                for s in (1, 2, 3):
                    verdict = ample_verdict(trace_kernel(Product(r, s), fp))
                    assert verdict.status is VerdictStatus.NEF_NOT_AMPLE
                    assert verdict.witness is not None
                    coords = verdict.witness.summand.cls.coords
                    assert min(coords) == 0 and max(coords) > 0

    def test_product_1_1_witness(self):
        verdict = ample_verdict(trace_kernel(Product(1, 1), PrimePower(2, 1)))
        assert verdict.witness.summand.cls.coords == (1, 0)

    def test_not_nef_with_witness(self):
        from frobpush.restriction import restrict_veronese_to_exceptional

        fp = PrimePower(3, 1)
        verdict = ample_verdict(restrict_veronese_to_exceptional(2, 2, fp))
        assert verdict.status is VerdictStatus.NOT_NEF
        assert min(verdict.witness.summand.cls.coords) < 0


class TestRestrictionVerdicts:
    def test_hirzebruch_witness(self):
        from frobpush.catalog import hirzebruch_closed_multiplicities

        for fp in FIELDS:
            for eps in (1, 2, 3, 4, 5):
                verdict = kernel_restriction_verdict(Hirzebruch(eps), fp)
                assert verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
                assert verdict.witness.divisor == "C0"
                if fp.q >= eps:
                    sigma = hirzebruch_closed_multiplicities(eps, fp)
                    assert verdict.witness.summand.cls.is_zero
                    assert verdict.witness.multiplicity == 1 + sigma[eps - 1]

    def test_out_of_regime_fallback(self):
        # q=2 < eps=3: no extra trivial copy on the section, but a positive
        # summand restricts, so its dual witnesses non-ampleness.
        verdict = kernel_restriction_verdict(Hirzebruch(3), PrimePower(2, 1))
        assert verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
        assert max(verdict.witness.summand.cls.coords) < 0

    def test_blowup_witness(self):
        from frobpush.combinat import binom

        for fp in FIELDS:
            for d in (2, 3, 4):
                for r in range(1, d):
                    verdict = kernel_restriction_verdict(LinearBlowup(d, r), fp)
                    assert verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
                    assert verdict.witness.divisor == "E"
                    expected = fp.q ** (r - 1) * binom(fp.q + d - r, d - r + 1)
                    assert verdict.witness.multiplicity == expected

    def test_veronese_witness(self):
        for fp in FIELDS:
            for d in (1, 2, 3):
                for eps in (1, 2, 3, 4):
                    if fp.q < eps:
                        continue
                    verdict = kernel_restriction_verdict(VeroneseConeBlowup(d, eps), fp)
                    assert verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
                    assert verdict.witness.multiplicity >= 2

    def test_segre_witness(self):
        from frobpush.combinat import binom

        for fp in FIELDS:
            for r in (1, 2):
                for s in (1, 2):
                    verdict = kernel_restriction_verdict(SegreConeBlowup(r, s), fp)
                    assert verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
                    expected = sum(
                        binom(j + r, r) * binom(j + s, s) for j in range(fp.q)
                    )
                    assert verdict.witness.multiplicity == expected


class TestQuadricVerdict:
    def test_d3_p2_not_ample(self):
        report = quadric_kernel_verdict(3, PrimePower(2, 1))
        assert report.support_verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
        assert report.support_verdict.witness.summand == Spinor(1)
        assert report.stated_verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
        assert not report.disagreement

    def test_d3_p5_ample(self):
        report = quadric_kernel_verdict(3, PrimePower(5, 1))
        assert report.support_verdict.status is VerdictStatus.AMPLE
        assert report.stated_verdict.status is VerdictStatus.AMPLE
        assert not report.disagreement

    def test_d4_p3_e2_ample(self):
        report = quadric_kernel_verdict(4, PrimePower(3, 2))
        assert report.support_verdict.status is VerdictStatus.AMPLE
        assert not report.disagreement

    def test_e1_p3_note(self):
        report = quadric_kernel_verdict(3, PrimePower(3, 1))
        assert any("S(2)" in note for note in report.notes)
        assert report.support_verdict.status is VerdictStatus.AMPLE

    def test_p2_high_dimension_tension(self):
        for e in (1, 2):
            for d in (4, 5):
                report = quadric_kernel_verdict(d, PrimePower(2, e))
                assert report.support_verdict.status is VerdictStatus.AMPLE
                assert (
                    report.stated_verdict.status is VerdictStatus.NOT_AMPLE_WITH_WITNESS
                )
                assert report.disagreement


class TestDeterminantSum:
    def test_line_example(self):
        assert determinant_twist_sum(1, PrimePower(2, 1)).coords == (-1,)

    def test_plane_example(self):
        assert determinant_twist_sum(2, PrimePower(3, 1)).coords == (-18,)

    def test_closed_form_sweep(self):
        for fp in FIELDS:
            for d in (1, 2, 3):
                cls = determinant_twist_sum(d, fp)
                assert cls.coords == (-d * fp.q**d * (fp.q - 1) // 2,)


class TestVolumeIdentity:
    def test_line_deficit(self):
        for fp in FIELDS:
            holds, deficit = volume_identity(1, 1, fp)
            assert holds
            assert deficit == Fraction(fp.q - 1, fp.q)

    def test_identity_sweep(self):
        for p in (2, 3, 5):
            for e in (1, 2, 3):
                fp = PrimePower(p, e)
                for d in (1, 2, 3):
                    for a in (1, 2, 3):
                        holds, _ = volume_identity(d, a, fp)
                        assert holds

    def test_plane_example(self):
        fp = PrimePower(2, 1)
        holds, _ = volume_identity(2, 1, fp)
        assert holds
        assert composition_count(1, 0, 2, fp) == 3

    def test_line_deficit_strictly_increases(self):
        for p in (2, 3, 5):
            for a in (1, 2, 3):
                deficits = [
                    volume_identity(1, a, PrimePower(p, e))[1] for e in range(1, 5)
                ]
                assert all(x < y for x, y in zip(deficits, deficits[1:]))
                assert all(x < a for x in deficits)

    def test_higher_dimension_error_decreases(self):
        # The deficit approaches a^d but not monotonically from e=1 (for
        # instance d=2, a=2, p=2 starts at 9/2 and moves away to 39/8), so
        # the decay is asserted from e=2 on.
        for p in (2, 3, 5):
            for d in (2, 3):
                for a in (1, 2, 3):
                    errors = [
                        abs(volume_identity(d, a, PrimePower(p, e))[1] - a**d)
                        for e in range(2, 5)
                    ]
                    assert all(x > y for x, y in zip(errors, errors[1:]))
