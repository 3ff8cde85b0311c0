"""Dataset loading, analysis configuration, report rendering, and the CLI."""

from . import fixtures
from .io import (
    ParseError,
    dataset_to_csv,
    load_chips,
    load_dataset,
    save_chips,
    save_dataset,
)
from .report import (
    AnalysisConfig,
    ComparisonCell,
    ComparisonRow,
    ComparisonTable,
    ReportBundle,
    ReportFormat,
    compare,
    config_hash,
    render_bundle,
    render_comparison_csv,
    render_comparison_json,
    render_comparison_markdown,
    render_summary_markdown,
    resolve_dataset,
    run_analysis,
    standard_model_set,
    variant_label,
    write_report,
)

__all__ = [
    "AnalysisConfig",
    "ComparisonCell",
    "ComparisonRow",
    "ComparisonTable",
    "ParseError",
    "ReportBundle",
    "ReportFormat",
    "compare",
    "config_hash",
    "dataset_to_csv",
    "fixtures",
    "load_chips",
    "load_dataset",
    "render_bundle",
    "render_comparison_csv",
    "render_comparison_json",
    "render_comparison_markdown",
    "render_summary_markdown",
    "resolve_dataset",
    "run_analysis",
    "save_chips",
    "save_dataset",
    "standard_model_set",
    "variant_label",
    "write_report",
]
