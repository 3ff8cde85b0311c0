"""Analysis configuration, report bundles, and the multi-prior comparison.

The comparison table mirrors the usual presentation: one row per model,
each random effects row followed by a bold predictive row, then the four
heterogeneity band probabilities and the DIC.
"""

from __future__ import annotations

import hashlib
import json
import platform
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional

from ..elicitation import (
    TURNER_M,
    TURNER_SD,
    BandProbabilities,
    EffectModel,
    ElicitedRatio,
    FitFamily,
    HalfNormalTau,
    HeterogeneityPrior,
    LogNormalTauSq,
    OutcomeScale,
    TruncatedLogNormalTauSq,
    UniformTau,
    fit_ratio,
    turner_truncation_upper,
)
from ..synthesis_engine import (
    EffectSummary,
    Likelihood,
    McmcConfig,
    ModelConfig,
    PosteriorSummary,
    TrialDataset,
    contrast,
    run_mcmc,
)
from . import fixtures
from .io import load_dataset


class ReportFormat(Enum):
    json = "json"
    csv = "csv"
    markdown = "markdown"


@dataclass(frozen=True, slots=True)
class AnalysisConfig:
    """Everything one analysis run needs; serializable for the CLI."""

    dataset: str
    model: ModelConfig
    mcmc: McmcConfig
    output: Optional[str] = None
    report_format: ReportFormat = ReportFormat.markdown

    def to_dict(self) -> dict:
        m = self.model
        return {
            "dataset": self.dataset,
            "model": {
                "effect": m.effect.value,
                "prior": m.prior.to_dict() if m.prior else None,
                "baseline_prior_sd": m.baseline_prior_sd,
                "effect_prior_sd": m.effect_prior_sd,
                "tau_fixed": m.tau_fixed,
            },
            "mcmc": {
                "burn_in": self.mcmc.burn_in,
                "keep": self.mcmc.keep,
                "thin": self.mcmc.thin,
                "chains": self.mcmc.chains,
                "seed": self.mcmc.seed,
                "adapt_target": self.mcmc.adapt_target,
            },
            "output": self.output,
            "report_format": self.report_format.value,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "AnalysisConfig":
        m = payload.get("model", {})
        prior = m.get("prior")
        model = ModelConfig(
            effect=EffectModel(m["effect"]),
            prior=HeterogeneityPrior.from_dict(prior) if prior else None,
            baseline_prior_sd=m.get("baseline_prior_sd", 100.0),
            effect_prior_sd=m.get("effect_prior_sd", 100.0),
            tau_fixed=m.get("tau_fixed"),
        )
        mc = payload.get("mcmc", {})
        mcmc = McmcConfig(**mc)
        return cls(
            dataset=payload["dataset"],
            model=model,
            mcmc=mcmc,
            output=payload.get("output"),
            report_format=ReportFormat(payload.get("report_format", "markdown")),
        )


def resolve_dataset(ref: str) -> TrialDataset:
    """A bundled fixture name or a path to a dataset file."""
    if ref in fixtures.FIXTURE_NAMES:
        return fixtures.dataset(ref)
    return load_dataset(ref)


def config_hash(config: AnalysisConfig) -> str:
    blob = json.dumps(config.to_dict(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _versions() -> dict[str, str]:
    import numba
    import numpy
    import scipy

    import hetprior

    return {
        "hetprior": hetprior.__version__,
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "numba": numba.__version__,
        "python": platform.python_version(),
    }


@dataclass(frozen=True, slots=True)
class ComparisonCell:
    credible: EffectSummary
    predictive: Optional[EffectSummary]


@dataclass(frozen=True, slots=True)
class ComparisonRow:
    label: str
    cells: tuple[ComparisonCell, ...]
    bands: Optional[BandProbabilities]
    dic: float


@dataclass(frozen=True, slots=True)
class ComparisonTable:
    effect_label: str
    pair_labels: tuple[str, ...]
    pairs: tuple[tuple[int, int], ...]
    rows: tuple[ComparisonRow, ...]

    def to_dict(self) -> dict:
        def cell(c: ComparisonCell) -> dict:
            return {
                "credible": c.credible.to_dict(),
                "predictive": c.predictive.to_dict() if c.predictive else None,
            }

        return {
            "effect_label": self.effect_label,
            "pair_labels": list(self.pair_labels),
            "pairs": [list(p) for p in self.pairs],
            "rows": [
                {
                    "label": r.label,
                    "cells": [cell(c) for c in r.cells],
                    "bands": r.bands.to_dict() if r.bands else None,
                    "dic": r.dic,
                }
                for r in self.rows
            ],
        }


@dataclass(frozen=True, slots=True)
class ReportBundle:
    summary: PosteriorSummary
    provenance: dict = field(default_factory=dict)
    comparison: Optional[ComparisonTable] = None

    def to_dict(self, include_traces: bool = False) -> dict:
        return {
            "summary": self.summary.to_dict(include_traces=include_traces),
            "provenance": self.provenance,
            "comparison": self.comparison.to_dict() if self.comparison else None,
        }


def provenance_for(config: AnalysisConfig) -> dict:
    return {
        "config": config.to_dict(),
        "config_hash": config_hash(config),
        "seed": config.mcmc.seed,
        "versions": _versions(),
    }


def run_analysis(config: AnalysisConfig) -> ReportBundle:
    data = resolve_dataset(config.dataset)
    summary = run_mcmc(data, config.model, config.mcmc)
    return ReportBundle(summary=summary, provenance=provenance_for(config))


def variant_label(model: ModelConfig) -> str:
    if model.effect is EffectModel.FixedEffect:
        return "FE"
    if model.tau_fixed is not None:
        return f"RE, tau fixed at {model.tau_fixed:g}"
    v = model.prior.variant
    if isinstance(v, UniformTau):
        return f"RE, tau ~ uniform[{v.lower:g}, {v.upper:g}]"
    if isinstance(v, HalfNormalTau):
        return f"RE, tau ~ half-normal(0, {v.sd:g}^2)"
    if isinstance(v, LogNormalTauSq):
        return f"RE, log tau_OR^2 ~ normal({v.m:g}, {v.v:g})"
    if isinstance(v, TruncatedLogNormalTauSq):
        return (
            f"RE, log tau_OR^2 ~ normal({v.m:g}, {v.v:g}) "
            f"truncated to tau_OR^2 <= {v.upper:.3f}"
        )
    fit = v.fit
    if fit.family is FitFamily.GammaOnRminus1:
        shape, rate = fit.params
        core = f"gamma({shape:.2f}, {rate:.3f})"
    else:
        mu, var = fit.params
        core = f"log-normal({mu:.2f}, {var:.3f})"
    low = f"R - {fit.shift:g}" if fit.shift != 1.0 else "R - 1"
    return f"RE, ({low}) ~ {core}"


def standard_model_set(
    scale: OutcomeScale,
    r_max: float,
    chips,
    uniform_upper: float = 5.0,
) -> list[tuple[str, ModelConfig]]:
    """The five models usually compared: FE plus four heterogeneity priors."""
    fit = fit_ratio(chips)
    priors = [
        UniformTau(lower=0.0, upper=uniform_upper),
        LogNormalTauSq(m=TURNER_M, v=TURNER_SD**2),
        TruncatedLogNormalTauSq(m=TURNER_M, v=TURNER_SD**2, upper=turner_truncation_upper(r_max)),
        ElicitedRatio(fit=fit),
    ]
    out = [("FE", ModelConfig(effect=EffectModel.FixedEffect))]
    for variant in priors:
        model = ModelConfig(
            effect=EffectModel.RandomEffects,
            prior=HeterogeneityPrior(variant=variant, scale=scale),
        )
        out.append((variant_label(model), model))
    return out


def compare(
    data: TrialDataset,
    models: list[tuple[str, ModelConfig]],
    mcmc: McmcConfig,
    pairs: tuple[tuple[int, int], ...],
) -> ComparisonTable:
    """Run each model on the dataset and tabulate the given contrasts."""
    names = data.treatment_names or tuple(
        f"treatment {k}" for k in range(1, data.n_treatments + 1)
    )
    pair_labels = tuple(f"{names[a - 1]} vs. {names[b - 1]}" for a, b in pairs)
    is_or = data.likelihood is Likelihood.BinomialLogit
    effect_label = "OR, median (95% CrI)" if is_or else "MD, median (95% CrI)"

    rows = []
    for label, model in models:
        summary = run_mcmc(data, model, mcmc)
        cells = []
        for a, b in pairs:
            c = contrast(summary, a, b)
            cells.append(
                ComparisonCell(
                    credible=c.odds_ratio if is_or else c.d,
                    predictive=c.predictive_odds_ratio if is_or else c.predictive,
                )
            )
        rows.append(
            ComparisonRow(
                label=label,
                cells=tuple(cells),
                bands=summary.tau.bands if summary.tau else None,
                dic=summary.dic.dic,
            )
        )
    return ComparisonTable(
        effect_label=effect_label,
        pair_labels=pair_labels,
        pairs=tuple(pairs),
        rows=tuple(rows),
    )


def _fmt(summary: EffectSummary) -> str:
    return f"{summary.median:.2f} ({summary.lower:.2f}, {summary.upper:.2f})"


def render_comparison_markdown(table: ComparisonTable) -> str:
    headers = ["Model"] + [f"{table.effect_label} {p}" for p in table.pair_labels]
    headers += ["P_low", "P_moderate", "P_high", "P_extreme", "DIC"]
    lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    for row in table.rows:
        cells = [row.label] + [_fmt(c.credible) for c in row.cells]
        if row.bands is None:
            cells += ["0", "0", "0", "0"]
        else:
            cells += [f"{p:.2f}" for p in row.bands.as_tuple()]
        cells += [f"{row.dic:.2f}"]
        lines.append("| " + " | ".join(cells) + " |")
        if any(c.predictive for c in row.cells):
            pred = [f"{row.label} (new study)"]
            pred += [f"**{_fmt(c.predictive)}**" if c.predictive else "" for c in row.cells]
            pred += [""] * 5
            lines.append("| " + " | ".join(pred) + " |")
    return "\n".join(lines) + "\n"


def render_comparison_csv(table: ComparisonTable) -> str:
    import csv as _csv
    import io as _io

    out = _io.StringIO()
    writer = _csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["model", "contrast", "kind", "median", "lower", "upper",
         "p_low", "p_moderate", "p_high", "p_extreme", "dic"]
    )
    for row in table.rows:
        bands = row.bands.as_tuple() if row.bands else (0.0, 0.0, 0.0, 0.0)
        for label, cell in zip(table.pair_labels, row.cells):
            base = [row.label, label]
            writer.writerow(
                base + ["credible", repr(cell.credible.median), repr(cell.credible.lower),
                        repr(cell.credible.upper)] + [repr(b) for b in bands] + [repr(row.dic)]
            )
            if cell.predictive:
                writer.writerow(
                    base + ["predictive", repr(cell.predictive.median),
                            repr(cell.predictive.lower), repr(cell.predictive.upper)]
                    + [repr(b) for b in bands] + [repr(row.dic)]
                )
    return out.getvalue()


def render_comparison_json(table: ComparisonTable) -> str:
    return json.dumps(table.to_dict(), indent=2, sort_keys=True) + "\n"


def render_summary_markdown(bundle: ReportBundle) -> str:
    s = bundle.summary
    is_or = s.likelihood is Likelihood.BinomialLogit
    lines = [f"# {'Fixed effect' if s.effect is EffectModel.FixedEffect else 'Random effects'} synthesis", ""]
    headers = ["Treatment", "Effect, median (95% CrI)"]
    if is_or:
        headers.append("OR, median (95% CrI)")
    if s.effect is EffectModel.RandomEffects:
        headers.append("New-study effect")
        if is_or:
            headers.append("New-study OR")
    lines += ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    for k in sorted(s.treatment_effects):
        e = s.treatment_effects[k]
        cells = [str(k), _fmt(e.d)]
        if is_or:
            cells.append(_fmt(e.odds_ratio))
        if s.effect is EffectModel.RandomEffects:
            cells.append(f"**{_fmt(e.predictive)}**" if e.predictive else "")
            if is_or:
                cells.append(f"**{_fmt(e.predictive_odds_ratio)}**" if e.predictive_odds_ratio else "")
        lines.append("| " + " | ".join(cells) + " |")
    lines.append("")
    if s.tau is not None:
        b = s.tau.bands.as_tuple()
        lines.append(
            f"tau: {s.tau.median:.3f} (95% CrI {s.tau.lower:.3f}, {s.tau.upper:.3f}); "
            f"band probabilities low {b[0]:.2f}, moderate {b[1]:.2f}, "
            f"high {b[2]:.2f}, extreme {b[3]:.2f}"
        )
    lines.append(f"DIC: {s.dic.dic:.2f} (mean deviance {s.dic.dbar:.2f}, p_D {s.dic.p_d:.2f})")
    lines.append(f"Mean residual deviance: {s.total_resdev:.2f}")
    for w in s.diagnostics.warnings:
        lines.append(f"WARNING: {w}")
    return "\n".join(lines) + "\n"


def render_bundle(bundle: ReportBundle, fmt: ReportFormat) -> str:
    if fmt is ReportFormat.json:
        return json.dumps(bundle.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt is ReportFormat.markdown:
        if bundle.comparison is not None:
            return render_comparison_markdown(bundle.comparison)
        return render_summary_markdown(bundle)
    if bundle.comparison is not None:
        return render_comparison_csv(bundle.comparison)
    import csv as _csv
    import io as _io

    s = bundle.summary
    out = _io.StringIO()
    writer = _csv.writer(out, lineterminator="\n")
    writer.writerow(["treatment", "kind", "median", "lower", "upper"])
    for k in sorted(s.treatment_effects):
        e = s.treatment_effects[k]
        writer.writerow([k, "d", repr(e.d.median), repr(e.d.lower), repr(e.d.upper)])
        if e.predictive:
            writer.writerow(
                [k, "predictive", repr(e.predictive.median),
                 repr(e.predictive.lower), repr(e.predictive.upper)]
            )
    return out.getvalue()


def write_report(bundle: ReportBundle, path: str | Path, fmt: ReportFormat) -> None:
    Path(path).write_text(render_bundle(bundle, fmt))
