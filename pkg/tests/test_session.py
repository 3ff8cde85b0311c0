"""Three-stage elicitation walk: transitions, declines, defaults, audit trail.

Sessions are immutable; every judgment returns a new session and appends an
audit record, so failed calls must leave the input untouched.
"""

import math

import pytest

from hetprior.elicitation import (
    TURNER_M,
    TURNER_SD,
    ChipAllocation,
    EffectModel,
    ElicitedRatio,
    LogNormalTauSq,
    OutcomeScale,
    ScaleKind,
    Stage,
    StageError,
    TruncatedLogNormalTauSq,
    UnsupportedDefaultError,
    dichotomize_guidance,
    finalize,
    fit_ratio,
    new_session,
    session_from_dict,
    session_to_dict,
    set_chips,
    stage1,
    stage2,
    stage3_decline,
    stage3_fit,
    turner_truncation_upper,
)

OR = OutcomeScale(ScaleKind.LogOR)
CHIPS = ChipAllocation(1.0, 10.0, 9, (4, 5, 6, 6, 5, 4, 2, 1, 1), 34)


def at_stage3(scale=OR, r_max=10.0):
    return stage2(stage1(new_session(scale), False), r_max)


def test_new_session_defaults():
    s = new_session(OR)
    assert s.stage is Stage.Stage1
    assert s.r_min == 1.0
    assert s.scale == OR
    assert len(s.id) >= 16
    assert s.audit_log == ()
    assert new_session(OR, session_id="fixed").id == "fixed"
    assert new_session(OR).id != new_session(OR).id


def test_stage1_certain_identical_finalizes_to_fixed_effect():
    s = stage1(new_session(OR), True)
    assert s.stage is Stage.Finalized
    assert s.result.model is EffectModel.FixedEffect
    assert s.result.prior is None
    assert s.audit_log[-1].judgment["certain_identical"] is True


def test_stage1_uncertain_moves_to_stage2():
    s = stage1(new_session(OR), False)
    assert s.stage is Stage.Stage2
    assert s.result is None


def test_stage2_with_r_max_moves_to_stage3():
    s = at_stage3()
    assert s.stage is Stage.Stage3
    assert s.r_max == 10.0


def test_stage2_rejects_r_max_at_or_below_r_min():
    s = stage1(new_session(OR), False)
    with pytest.raises(ValueError, match="r_max must exceed"):
        stage2(s, 0.9)
    with pytest.raises(ValueError, match="r_max must exceed"):
        stage2(s, 1.0)


def test_stage2_decline_takes_the_empirical_default():
    s = stage2(stage1(new_session(OR), False), None)
    assert s.stage is Stage.Finalized
    assert s.result.model is EffectModel.RandomEffects
    assert s.result.prior.variant == LogNormalTauSq(TURNER_M, TURNER_SD**2)


def test_stage2_decline_converts_through_omega_scales():
    for kind in (ScaleKind.Probit, ScaleKind.StdMeanDifference):
        s = stage2(stage1(new_session(OutcomeScale(kind)), False), None)
        assert s.result.prior.scale.kind is kind
    md = OutcomeScale(ScaleKind.MeanDifference, sigma=2.61)
    assert stage2(stage1(new_session(md), False), None).result.prior.scale == md


def test_stage2_decline_unsupported_on_other_ratio_scales():
    for kind in (ScaleKind.LogHR, ScaleKind.LogRR, ScaleKind.LogRoM):
        s = stage1(new_session(OutcomeScale(kind)), False)
        with pytest.raises(UnsupportedDefaultError):
            stage2(s, None)
        assert s.stage is Stage.Stage2  # failed call left the session alone


def test_stage3_chips_then_fit():
    s = stage3_fit(set_chips(at_stage3(), CHIPS))
    assert s.stage is Stage.Finalized
    assert s.result.model is EffectModel.RandomEffects
    variant = s.result.prior.variant
    assert isinstance(variant, ElicitedRatio)
    assert variant.fit.distribution == fit_ratio(CHIPS).distribution


def test_chip_grid_must_span_the_judged_range():
    s = at_stage3()
    with pytest.raises(ValueError, match="span"):
        set_chips(s, ChipAllocation(1.0, 8.0, 7, (2,) * 7, 14))
    with pytest.raises(ValueError, match="span"):
        set_chips(s, ChipAllocation(2.0, 10.0, 8, (2,) * 8, 16))


def test_stage3_decline_truncates_the_default():
    s = stage3_decline(at_stage3(r_max=10.0))
    assert s.stage is Stage.Finalized
    variant = s.result.prior.variant
    assert isinstance(variant, TruncatedLogNormalTauSq)
    assert variant.m == TURNER_M
    assert variant.v == TURNER_SD**2
    assert variant.upper == turner_truncation_upper(10.0)


def test_unbounded_r_max_declines_to_the_untruncated_default():
    s = at_stage3(r_max=math.inf)
    # no finite grid can span an unbounded range, so only decline remains
    with pytest.raises(ValueError, match="span"):
        set_chips(s, CHIPS)
    done = stage3_decline(s)
    assert done.result.prior.variant == LogNormalTauSq(TURNER_M, TURNER_SD**2)


def test_finalize_fits_when_chips_are_placed():
    s = finalize(set_chips(at_stage3(), CHIPS))
    assert isinstance(s.result.prior.variant, ElicitedRatio)


def test_finalize_without_chips_requires_an_explicit_decline():
    s = at_stage3()
    with pytest.raises(StageError):
        finalize(s)
    declined = finalize(s, decline=True)
    assert isinstance(declined.result.prior.variant, TruncatedLogNormalTauSq)


def test_stage3_fit_without_chips_is_a_stage_error():
    with pytest.raises(StageError):
        stage3_fit(at_stage3())


def test_out_of_order_calls_raise_stage_errors():
    fresh = new_session(OR)
    with pytest.raises(StageError):
        stage2(fresh, 10.0)
    with pytest.raises(StageError):
        set_chips(fresh, CHIPS)
    with pytest.raises(StageError):
        stage3_decline(fresh)
    at_two = stage1(fresh, False)
    with pytest.raises(StageError):
        stage1(at_two, False)
    done = stage1(new_session(OR), True)
    with pytest.raises(StageError):
        stage1(done, True)
    with pytest.raises(StageError):
        stage2(done, 10.0)
    with pytest.raises(StageError):
        finalize(done)


def test_audit_log_accumulates_timestamped_judgments():
    s = stage3_fit(set_chips(at_stage3(), CHIPS))
    assert len(s.audit_log) == 4  # stage1, stage2, chips, fit
    for record in s.audit_log:
        assert record.timestamp
        assert isinstance(record.judgment, dict)
    assert s.audit_log[0].judgment["certain_identical"] is False
    assert s.audit_log[1].judgment["r_max"] == 10.0


def test_dichotomize_guidance_records_only():
    md = OutcomeScale(ScaleKind.MeanDifference, sigma=2.61)
    s = stage1(new_session(md), False)
    with_cut = dichotomize_guidance(s, cutoff=3.0)
    assert with_cut.stage is s.stage
    assert with_cut.audit_log[-1].judgment["dichotomize"]["cutoff"] == 3.0
    with_cat = dichotomize_guidance(s, category=(2, 5))
    assert with_cat.audit_log[-1].judgment["dichotomize"]["K"] == 5
    with pytest.raises(StageError):
        dichotomize_guidance(stage1(new_session(OR), False), cutoff=3.0)
    with pytest.raises(ValueError):
        dichotomize_guidance(s, cutoff=3.0, category=(2, 5))
    with pytest.raises(ValueError):
        dichotomize_guidance(s)


def test_session_roundtrip_mid_stage():
    s = set_chips(at_stage3(), CHIPS)
    clone = session_from_dict(session_to_dict(s))
    assert clone.id == s.id
    assert clone.stage is s.stage
    assert clone.r_max == s.r_max
    assert clone.chips == s.chips
    assert len(clone.audit_log) == len(s.audit_log)


def test_session_roundtrip_finalized():
    s = stage3_fit(set_chips(at_stage3(), CHIPS))
    clone = session_from_dict(session_to_dict(s))
    assert clone.result.model is s.result.model
    assert clone.result.prior.to_dict() == s.result.prior.to_dict()


def test_r_min_threads_through_to_the_fit():
    s = new_session(OR, r_min=2.0)
    s = stage2(stage1(s, False), 11.0)
    chips = ChipAllocation(2.0, 11.0, 9, (4, 5, 6, 6, 5, 4, 2, 1, 1), 34)
    s = stage3_fit(set_chips(s, chips))
    assert s.result.prior.variant.fit.shift == 2.0
