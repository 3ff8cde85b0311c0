"""Command line front end.

Subcommands: elicit (terminal walkthrough of the three-stage protocol),
fit (fit a ratio distribution to a chips file), analyze (run one
synthesis), table (R/tau interpretation rows), compare (multi-prior
comparison table), serve (start the HTTP service).

Environment: HETPRIOR_SEED supplies the default --seed, HETPRIOR_OUTPUT_DIR
the directory that relative --out paths land in.  Failures exit nonzero
with a one-line error JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..elicitation import (
    STAGE1_QUESTION,
    STAGE2_QUESTION,
    STAGE3_QUESTION,
    ChipAllocation,
    EffectModel,
    ElicitedRatio,
    HeterogeneityPrior,
    OutcomeScale,
    ScaleKind,
    band_probabilities_exact,
    finalize,
    interpretation_table,
    interpretation_table_csv,
    interpretation_table_json,
    new_session,
    session_to_dict,
    set_chips,
    stage1,
    stage2,
)
from ..elicitation.fitting import fit_ratio
from ..synthesis_engine import McmcConfig, ModelConfig
from . import fixtures
from .io import load_chips
from .report import (
    AnalysisConfig,
    ReportFormat,
    compare,
    provenance_for,
    render_bundle,
    render_comparison_csv,
    render_comparison_json,
    render_comparison_markdown,
    resolve_dataset,
    run_analysis,
    standard_model_set,
)

_SCALES = {
    "logor": ScaleKind.LogOR,
    "loghr": ScaleKind.LogHR,
    "logrr": ScaleKind.LogRR,
    "logrom": ScaleKind.LogRoM,
    "md": ScaleKind.MeanDifference,
    "smd": ScaleKind.StdMeanDifference,
    "probit": ScaleKind.Probit,
}

# per-fixture defaults so `compare --dataset ta163` needs nothing else
_FIXTURE_DEFAULTS = {
    "ta163": {"scale": "logor", "sigma": None, "rmax": 10.0, "pairs": "2:1,3:1"},
    "ta336": {"scale": "md", "sigma": 2.61, "rmax": 10.0, "pairs": "3:1,3:4"},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("UsageError", message, code=2)


def _fail(err_type: str, message: str, code: int = 1) -> None:
    sys.stderr.write(json.dumps({"error": {"type": err_type, "message": message}}) + "\n")
    raise SystemExit(code)


def _default_seed() -> int:
    return int(os.environ.get("HETPRIOR_SEED", "1"))


def _out_path(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get("HETPRIOR_OUTPUT_DIR")
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(text: str, out: str | None) -> None:
    path = _out_path(out)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _scale_from_args(args) -> OutcomeScale:
    kind = _SCALES[args.scale]
    sigma = getattr(args, "sigma", None)
    if kind is ScaleKind.MeanDifference and sigma is None:
        raise ValueError("--scale md requires --sigma (individual-level SD)")
    return OutcomeScale(kind=kind, sigma=sigma if kind is ScaleKind.MeanDifference else None)


def _add_scale_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--scale", choices=sorted(_SCALES), required=required,
                   default=None if required else "logor",
                   help="outcome scale of the treatment effect")
    p.add_argument("--sigma", type=float, default=None,
                   help="individual-level SD (mean difference scale only)")


def _add_mcmc_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default $HETPRIOR_SEED or 1)")
    p.add_argument("--burn-in", type=int, default=60_000)
    p.add_argument("--keep", type=int, default=40_000)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--chains", type=int, default=2)


def _mcmc_from_args(args) -> McmcConfig:
    return McmcConfig(
        burn_in=args.burn_in,
        keep=args.keep,
        thin=args.thin,
        chains=args.chains,
        seed=args.seed if args.seed is not None else _default_seed(),
    )


def _ask(prompt: str) -> str:
    sys.stdout.write(prompt)
    sys.stdout.flush()
    line = sys.stdin.readline()
    if not line:
        raise EOFError("input ended before the walkthrough finished")
    return line.strip()


def _ask_yes_no(question: str) -> bool:
    while True:
        answer = _ask(f"{question} [y/n] ").lower()
        if answer in ("y", "yes"):
            return True
        if answer in ("n", "no"):
            return False
        sys.stdout.write("please answer y or n\n")


def _cmd_elicit(args) -> int:
    scale = _scale_from_args(args)
    session = new_session(scale)
    session = stage1(session, _ask_yes_no(STAGE1_QUESTION))
    if session.result is None:
        answer = _ask(f"{STAGE2_QUESTION}\nEnter Rmax, or 'no' if unable to judge: ").lower()
        r_max = None if answer in ("no", "n", "") else float(answer)
        session = stage2(session, r_max)
    if session.result is None:
        sys.stdout.write(STAGE3_QUESTION + "\n")
        answer = _ask(
            "Enter chip counts per bin from Rmin to Rmax separated by spaces\n"
            "(9 bins by default), or 'no' to decline: "
        ).lower()
        if answer in ("no", "n", ""):
            session = finalize(session, decline=True)
        else:
            counts = tuple(int(c) for c in answer.split())
            chips = ChipAllocation(
                lower=session.r_min,
                upper=session.r_max,
                nbins=len(counts),
                chips=counts,
                total_chips=sum(counts),
            )
            session = set_chips(session, chips)
            session = finalize(session)
    payload = session_to_dict(session)
    if session.result is not None and session.result.prior is not None:
        payload["prior_bands"] = band_probabilities_exact(session.result.prior).to_dict()
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_fit(args) -> int:
    chips = load_chips(args.chips)
    fit = fit_ratio(chips)
    scale = _scale_from_args(args)
    prior = HeterogeneityPrior(variant=ElicitedRatio(fit=fit), scale=scale)
    payload = {
        "fit": fit.to_dict(),
        "prior": prior.to_dict(),
        "prior_bands": band_probabilities_exact(prior).to_dict(),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _prior_from_file(path: str) -> HeterogeneityPrior:
    return HeterogeneityPrior.from_dict(json.loads(Path(path).read_text()))


def _cmd_analyze(args) -> int:
    if args.config:
        config = AnalysisConfig.from_dict(json.loads(Path(args.config).read_text()))
        if args.seed is not None:
            config = AnalysisConfig(
                dataset=config.dataset,
                model=config.model,
                mcmc=McmcConfig(
                    burn_in=config.mcmc.burn_in, keep=config.mcmc.keep,
                    thin=config.mcmc.thin, chains=config.mcmc.chains, seed=args.seed,
                ),
                output=config.output,
                report_format=config.report_format,
            )
    else:
        if args.dataset is None:
            raise ValueError("either --config or --dataset is required")
        effect = EffectModel.RandomEffects if args.effect == "re" else EffectModel.FixedEffect
        prior = _prior_from_file(args.prior) if args.prior else None
        model = ModelConfig(effect=effect, prior=prior, tau_fixed=args.tau_fixed)
        config = AnalysisConfig(
            dataset=args.dataset,
            model=model,
            mcmc=_mcmc_from_args(args),
            output=args.out,
            report_format=ReportFormat(args.format),
        )
    bundle = run_analysis(config)
    _emit(render_bundle(bundle, config.report_format), config.output)
    for warning in bundle.summary.diagnostics.warnings:
        sys.stderr.write(f"warning: {warning}\n")
    return 0


def _cmd_table(args) -> int:
    scale = _scale_from_args(args)
    if args.format == "csv":
        _emit(interpretation_table_csv(scale), args.out)
    elif args.format == "json":
        _emit(json.dumps(interpretation_table_json(scale), indent=2) + "\n", args.out)
    else:
        lines = ["| R | tau (log OR) | tau (analysis scale) |", "|---|---|---|"]
        for row in interpretation_table(scale):
            lines.append(f"| {row.r:.2f} | {row.tau:g} | {row.tau_scaled:.6g} |")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


_PRIOR_CHOICES = ("fe", "uniform", "lognormal", "truncated", "elicited")


def _cmd_compare(args) -> int:
    defaults = _FIXTURE_DEFAULTS.get(args.dataset, {})
    scale_name = args.scale or defaults.get("scale")
    if scale_name is None:
        raise ValueError("--scale is required for datasets without bundled defaults")
    sigma = args.sigma if args.sigma is not None else defaults.get("sigma")
    kind = _SCALES[scale_name]
    scale = OutcomeScale(kind=kind, sigma=sigma if kind is ScaleKind.MeanDifference else None)

    if args.chips:
        chips = load_chips(args.chips)
    elif args.dataset in fixtures.FIXTURE_NAMES:
        chips = fixtures.chips(args.dataset)
    else:
        raise ValueError("--chips is required for datasets without bundled judgments")
    r_max = args.rmax if args.rmax is not None else defaults.get("rmax", chips.upper)

    pairs_text = args.pairs or defaults.get("pairs")
    if pairs_text is None:
        raise ValueError("--pairs is required for datasets without bundled defaults")
    pairs = tuple(
        tuple(int(t) for t in pair.split(":")) for pair in pairs_text.split(",")
    )
    if any(len(p) != 2 for p in pairs):
        raise ValueError(f"--pairs must look like '2:1,3:1', got {pairs_text!r}")

    data = resolve_dataset(args.dataset)
    models = standard_model_set(scale, r_max=r_max, chips=chips)
    if args.priors != "all":
        wanted = set(args.priors.split(","))
        unknown = wanted - set(_PRIOR_CHOICES)
        if unknown:
            raise ValueError(f"unknown prior names {sorted(unknown)}, choose from {_PRIOR_CHOICES}")
        keep = [i for i, name in enumerate(_PRIOR_CHOICES) if name in wanted]
        models = [models[i] for i in keep]
    table = compare(data, models, _mcmc_from_args(args), pairs=pairs)

    fmt = ReportFormat(args.format)
    if fmt is ReportFormat.markdown:
        text = render_comparison_markdown(table)
    elif fmt is ReportFormat.csv:
        text = render_comparison_csv(table)
    else:
        text = render_comparison_json(table)
    _emit(text, args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from ..session_service.app import create_app

    app = create_app(journal_path=args.journal)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hetprior", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("elicit", help="terminal walkthrough of the three-stage protocol")
    _add_scale_args(p)
    p.add_argument("--out", default=None, help="write the session JSON here instead of stdout")
    p.set_defaults(func=_cmd_elicit)

    p = sub.add_parser("fit", help="fit a ratio distribution to roulette judgments")
    p.add_argument("--chips", required=True, help="chips CSV (bin_lower,bin_upper,chips)")
    _add_scale_args(p, required=False)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("analyze", help="run one synthesis and write its report")
    p.add_argument("--config", default=None, help="AnalysisConfig JSON file")
    p.add_argument("--dataset", default=None, help="fixture name (ta163, ta336) or dataset path")
    p.add_argument("--effect", choices=("fe", "re"), default="fe")
    p.add_argument("--prior", default=None, help="prior JSON file (required for --effect re)")
    p.add_argument("--tau-fixed", type=float, default=None)
    p.add_argument("--format", choices=[f.value for f in ReportFormat], default="markdown")
    p.add_argument("--out", default=None)
    _add_mcmc_args(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("table", help="R/tau interpretation table for a scale")
    _add_scale_args(p)
    p.add_argument("--format", choices=("csv", "json", "markdown"), default="markdown")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("compare", help="fixed effect plus four heterogeneity priors, one table")
    p.add_argument("--dataset", required=True)
    p.add_argument("--priors", default="all",
                   help="'all' or comma list of " + ",".join(_PRIOR_CHOICES))
    p.add_argument("--chips", default=None, help="chips CSV for the elicited prior")
    p.add_argument("--rmax", type=float, default=None, help="truncation range for the default prior")
    p.add_argument("--pairs", default=None, help="contrasts as 'a:b,a:b' treatment ids")
    _add_scale_args(p, required=False)
    p.set_defaults(scale=None)
    p.add_argument("--format", choices=[f.value for f in ReportFormat], default="markdown")
    p.add_argument("--out", default=None)
    _add_mcmc_args(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("serve", help="start the elicitation HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--journal", default=None, help="session journal path (JSON lines)")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except KeyboardInterrupt:
        _fail("Interrupted", "interrupted")
    except Exception as exc:
        _fail(type(exc).__name__, str(exc))
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
