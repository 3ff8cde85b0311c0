"""File formats for datasets and chip allocations.

Datasets travel either as JSON (the to_dict form of TrialDataset) or as a
CSV transcription of the usual arm-level table: one row per study with
columns t[,1]..t[,k], then r[,j]/n[,j] for binomial outcomes or
y[,j]/se[,j] for normal ones, and a trailing na[] arm count.  Cells past
na[] hold NA.  Metadata rides in leading `# key: value` comment lines.
Chip allocations use a three-column CSV (bin_lower, bin_upper, chips) over
contiguous equal-width bins.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

from ..elicitation import ChipAllocation
from ..synthesis_engine import BinomialArm, Likelihood, NormalArm, Study, TrialDataset

NA_TOKENS = {"NA", "na", "NaN", ""}


class ParseError(ValueError):
    """Malformed input file; carries 1-based line and column when known."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column


def _read_text(path: str | Path) -> str:
    text = Path(path).read_text()
    if not text.strip():
        raise ParseError(f"{path} is empty")
    return text


def load_dataset(path: str | Path) -> TrialDataset:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    text = _read_text(path)
    if path.suffix.lower() == ".json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
        try:
            return TrialDataset.from_dict(payload)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid dataset JSON: {exc}") from exc
    return _dataset_from_csv(text)


def save_dataset(dataset: TrialDataset, path: str | Path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(dataset.to_dict(), indent=2) + "\n")
    else:
        path.write_text(dataset_to_csv(dataset))


def _parse_meta(lines: list[tuple[int, str]]) -> tuple[dict[str, str], list[tuple[int, str]]]:
    meta: dict[str, str] = {}
    rest = []
    for lineno, line in lines:
        stripped = line.strip()
        if stripped.startswith("#"):
            body = stripped.lstrip("#").strip()
            if ":" in body:
                key, _, value = body.partition(":")
                meta[key.strip()] = value.strip()
        elif stripped:
            rest.append((lineno, line))
    return meta, rest


def _cell(row: list[str], col: int, lineno: int, kind: str, caster):
    raw = row[col].strip()
    if raw in NA_TOKENS:
        return None
    try:
        return caster(raw)
    except ValueError:
        raise ParseError(f"expected {kind}, got {raw!r}", line=lineno, column=col + 1) from None


def _dataset_from_csv(text: str) -> TrialDataset:
    numbered = list(enumerate(text.splitlines(), start=1))
    meta, rows = _parse_meta(numbered)

    if "likelihood" not in meta:
        raise ParseError("missing '# likelihood:' metadata line")
    try:
        likelihood = Likelihood(meta["likelihood"])
    except ValueError:
        raise ParseError(f"unknown likelihood {meta['likelihood']!r}") from None
    if "n_treatments" not in meta:
        raise ParseError("missing '# n_treatments:' metadata line")
    n_treatments = int(meta["n_treatments"])
    sigma = float(meta["sigma_individual"]) if "sigma_individual" in meta else None
    names = tuple(meta["treatment_names"].split("|")) if "treatment_names" in meta else None

    if not rows:
        raise ParseError("no header row")
    header_line, header_raw = rows[0]
    header = [h.strip() for h in next(csv.reader([header_raw]))]
    binomial = likelihood is Likelihood.BinomialLogit
    first, second = ("r", "n") if binomial else ("y", "se")
    max_arms = sum(1 for h in header if h.startswith("t["))
    if max_arms < 2:
        raise ParseError("need at least two t[,j] columns", line=header_line)
    expected = (
        [f"t[,{j}]" for j in range(1, max_arms + 1)]
        + [f"{first}[,{j}]" for j in range(1, max_arms + 1)]
        + [f"{second}[,{j}]" for j in range(1, max_arms + 1)]
        + ["na[]"]
    )
    if header != expected:
        raise ParseError(
            f"header {header} does not match the expected layout {expected}",
            line=header_line,
        )

    studies = []
    for lineno, raw in rows[1:]:
        row = next(csv.reader([raw]))
        if len(row) != len(expected):
            raise ParseError(
                f"row has {len(row)} cells, header has {len(expected)}", line=lineno
            )
        na = _cell(row, len(expected) - 1, lineno, "integer arm count", int)
        if na is None or not 2 <= na <= max_arms:
            raise ParseError(f"na[] must lie in [2, {max_arms}]", line=lineno,
                             column=len(expected))
        arms = []
        for j in range(na):
            t = _cell(row, j, lineno, "integer treatment id", int)
            x1 = _cell(row, max_arms + j, lineno, "number", int if binomial else float)
            x2 = _cell(row, 2 * max_arms + j, lineno, "number", int if binomial else float)
            if t is None or x1 is None or x2 is None:
                raise ParseError(f"arm {j + 1} within na[]={na} has NA cells", line=lineno)
            try:
                if binomial:
                    arms.append(BinomialArm(treatment=t, events=x1, size=x2))
                else:
                    arms.append(NormalArm(treatment=t, mean=x1, se=x2))
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno, column=j + 1) from exc
        for j in range(na, max_arms):
            for col in (j, max_arms + j, 2 * max_arms + j):
                if row[col].strip() not in NA_TOKENS:
                    raise ParseError(
                        f"cell beyond na[]={na} must be NA, got {row[col]!r}",
                        line=lineno, column=col + 1,
                    )
        try:
            studies.append(Study(arms=tuple(arms)))
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc

    try:
        return TrialDataset(
            n_treatments=n_treatments,
            studies=tuple(studies),
            likelihood=likelihood,
            sigma_individual=sigma,
            treatment_names=names,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def dataset_to_csv(dataset: TrialDataset) -> str:
    binomial = dataset.likelihood is Likelihood.BinomialLogit
    first, second = ("r", "n") if binomial else ("y", "se")
    max_arms = max(len(s.arms) for s in dataset.studies)

    out = _io.StringIO()
    out.write(f"# likelihood: {dataset.likelihood.value}\n")
    out.write(f"# n_treatments: {dataset.n_treatments}\n")
    if dataset.sigma_individual is not None:
        out.write(f"# sigma_individual: {dataset.sigma_individual}\n")
    if dataset.treatment_names is not None:
        out.write(f"# treatment_names: {'|'.join(dataset.treatment_names)}\n")
    header = (
        [f"t[,{j}]" for j in range(1, max_arms + 1)]
        + [f"{first}[,{j}]" for j in range(1, max_arms + 1)]
        + [f"{second}[,{j}]" for j in range(1, max_arms + 1)]
        + ["na[]"]
    )
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for study in dataset.studies:
        na = len(study.arms)
        pad = ["NA"] * (max_arms - na)
        ts = [str(a.treatment) for a in study.arms] + pad
        if binomial:
            x1 = [str(a.events) for a in study.arms] + pad
            x2 = [str(a.size) for a in study.arms] + pad
        else:
            x1 = [repr(a.mean) for a in study.arms] + pad
            x2 = [repr(a.se) for a in study.arms] + pad
        writer.writerow(ts + x1 + x2 + [str(na)])
    return out.getvalue()


def load_chips(path: str | Path) -> ChipAllocation:
    text = _read_text(path)
    numbered = list(enumerate(text.splitlines(), start=1))
    meta, rows = _parse_meta(numbered)
    if not rows:
        raise ParseError("no header row")
    header_line, header_raw = rows[0]
    header = [h.strip() for h in next(csv.reader([header_raw]))]
    if header != ["bin_lower", "bin_upper", "chips"]:
        raise ParseError(
            f"header must be bin_lower,bin_upper,chips, got {header}", line=header_line
        )
    lowers: list[float] = []
    uppers: list[float] = []
    chips: list[int] = []
    for lineno, raw in rows[1:]:
        row = next(csv.reader([raw]))
        if len(row) != 3:
            raise ParseError(f"expected 3 cells, got {len(row)}", line=lineno)
        lo = _cell(row, 0, lineno, "number", float)
        hi = _cell(row, 1, lineno, "number", float)
        c = _cell(row, 2, lineno, "integer chip count", int)
        if lo is None or hi is None or c is None:
            raise ParseError("NA not allowed in chip rows", line=lineno)
        if lowers and abs(lo - uppers[-1]) > 1e-9:
            raise ParseError(
                f"bins must be contiguous: previous upper {uppers[-1]}, this lower {lo}",
                line=lineno, column=1,
            )
        lowers.append(lo)
        uppers.append(hi)
        chips.append(c)
    if not chips:
        raise ParseError("no bin rows")
    total = int(meta["total_chips"]) if "total_chips" in meta else sum(chips)
    try:
        return ChipAllocation(
            lower=lowers[0],
            upper=uppers[-1],
            nbins=len(chips),
            chips=tuple(chips),
            total_chips=total,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def save_chips(allocation: ChipAllocation, path: str | Path) -> None:
    out = _io.StringIO()
    if allocation.total_chips != allocation.placed:
        out.write(f"# total_chips: {allocation.total_chips}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["bin_lower", "bin_upper", "chips"])
    edges = [allocation.lower + k * allocation.bin_width for k in range(allocation.nbins)]
    for k, c in enumerate(allocation.chips):
        hi = allocation.upper if k == allocation.nbins - 1 else edges[k] + allocation.bin_width
        writer.writerow([repr(edges[k]), repr(hi), str(c)])
    Path(path).write_text(out.getvalue())
