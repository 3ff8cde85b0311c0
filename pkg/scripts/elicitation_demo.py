"""Walk the three-stage protocol programmatically with the bundled
roulette judgments and print what the expert would see: the fitted ratio
distribution, the implied prior bands, and the R/tau interpretation rows.

Usage: python scripts/elicitation_demo.py [ta163|ta336]
"""

import sys

from hetprior.dist_core import RngStream
from hetprior.elicitation import (
    OutcomeScale,
    ScaleKind,
    band_probabilities_exact,
    finalize,
    interpretation_table,
    new_session,
    prior_band_probabilities,
    set_chips,
    stage1,
    stage2,
)
from hetprior.ingest_report import fixtures

SCALES = {
    "ta163": OutcomeScale(kind=ScaleKind.LogOR),
    "ta336": OutcomeScale(kind=ScaleKind.MeanDifference, sigma=2.61),
}


def main() -> None:
    name = sys.argv[1] if len(sys.argv) > 1 else "ta163"
    scale = SCALES[name]
    chips = fixtures.chips(name)

    session = new_session(scale)
    session = stage1(session, certain_identical=False)
    session = stage2(session, r_max=chips.upper)
    session = set_chips(session, chips)
    session = finalize(session)

    prior = session.result.prior
    fit = prior.variant.fit
    print(f"== {name}: {scale.kind.value} scale, omega = {prior.omega:.4f}")
    print(f"fitted family: {fit.family.value}")
    print(f"parameters:    {tuple(round(p, 4) for p in fit.params)}")
    print(f"sse {fit.sse:.5f} vs rejected family {fit.alternative_sse:.5f}")

    exact = band_probabilities_exact(prior)
    mc = prior_band_probabilities(prior, 100_000, RngStream(1))
    print("prior band probabilities (low, moderate, high, extreme):")
    print(f"  closed form: {tuple(round(p, 3) for p in exact.as_tuple())}")
    print(f"  monte carlo: {tuple(round(p, 3) for p in mc.as_tuple())}")

    print("\nR vs tau interpretation (first rows):")
    for row in interpretation_table(scale)[:8]:
        print(f"  R = {row.r:8.2f}   tau_OR = {row.tau:4.2f}   tau_scaled = {row.tau_scaled:.4f}")

    print("\naudit log:")
    for record in session.audit_log:
        print(f"  {record.timestamp}  {record.judgment}")


if __name__ == "__main__":
    main()
