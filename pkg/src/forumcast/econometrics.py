"""Statistical kernel: lagged Pearson correlation, OLS with classical
diagnostics, Durbin-Watson, first differencing, and Granger causality,
plus the weekly feature panel and the standard analysis battery run over it.

Missing values are NaN. Every analysis applies listwise deletion over the
columns it touches and reports how many rows were dropped. All functions are
pure; reports are bit-identical across reruns of the same inputs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import stats as _stats

from .corpus import MarketSeries
from .errors import (
    AnalysisError,
    DataError,
    InsufficientDataError,
    RankDeficiencyError,
    UndefinedCorrelationError,
)

DEPENDENT_COLUMN = "price"

# Predictor columns in Table-1 row order; "control" is the market index.
PREDICTOR_COLUMNS = (
    "activity_words",
    "activity",
    "group_betweenness",
    "focal_betweenness",
    "complexity",
    "focal_degree",
    "emotionality",
    "sentiment",
    "control",
    "group_degree",
)

CORPUS_FEATURE_COLUMNS = tuple(c for c in PREDICTOR_COLUMNS if c != "control")


@dataclass(frozen=True)
class Series:
    """Weekly series on the 0-based week grid; NaN marks missing weeks."""

    name: str
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1:
            raise DataError(f"series {self.name!r} must be one-dimensional")
        if np.isinf(arr).any():
            raise DataError(f"series {self.name!r} contains infinite values")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)


def series_from_values(name: str, values: Iterable[float | None]) -> Series:
    return Series(name, np.array([math.nan if v is None else float(v) for v in values]))


def lag(s: Series, k: int) -> Series:
    """Shift forward by k weeks: week t takes the value from week t-k."""
    if k < 0:
        raise AnalysisError(f"lag must be nonnegative, got {k}")
    if k >= len(s):
        raise InsufficientDataError(f"lag {k} >= series length {len(s)}")
    if k == 0:
        return Series(s.name, s.values.copy())
    out = np.full(len(s), math.nan)
    out[k:] = s.values[:-k]
    return Series(f"{s.name}_lag{k}", out)


def first_difference(s: Series) -> Series:
    """Week-over-week change; the first week becomes missing."""
    if len(s) < 2:
        raise InsufficientDataError(f"series {s.name!r} too short to difference")
    out = np.full(len(s), math.nan)
    out[1:] = s.values[1:] - s.values[:-1]
    return Series(f"{s.name}_diff", out)


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    n: int
    p: float


def pearson(x: Series, y: Series) -> CorrelationResult:
    """Product-moment correlation over weeks where both series are present.

    Two-sided p via t = r*sqrt((n-2)/(1-r^2)) against Student t(n-2);
    |r| = 1 maps to p = 0.
    """
    if len(x) != len(y):
        raise DataError(f"length mismatch: {x.name!r} has {len(x)}, {y.name!r} has {len(y)}")
    mask = np.isfinite(x.values) & np.isfinite(y.values)
    n = int(mask.sum())
    if n < 3:
        raise InsufficientDataError(f"pearson({x.name!r}, {y.name!r}): {n} paired observations, need >= 3")
    xv = x.values[mask]
    yv = y.values[mask]
    dx = xv - xv.mean()
    dy = yv - yv.mean()
    sx = math.sqrt(float(dx @ dx))
    sy = math.sqrt(float(dy @ dy))
    if sx == 0.0:
        raise UndefinedCorrelationError(f"series {x.name!r} has zero variance")
    if sy == 0.0:
        raise UndefinedCorrelationError(f"series {y.name!r} has zero variance")
    r = float(np.clip(float(dx @ dy) / (sx * sy), -1.0, 1.0))
    if abs(r) == 1.0:
        p = 0.0
    else:
        t = r * math.sqrt((n - 2) / (1.0 - r * r))
        p = 2.0 * float(_stats.t.sf(abs(t), n - 2))
    return CorrelationResult(r=r, n=n, p=p)


@dataclass(frozen=True)
class OlsResult:
    names: tuple[str, ...]
    params: np.ndarray
    bse: np.ndarray
    tvalues: np.ndarray
    pvalues: np.ndarray
    r2: float
    adj_r2: float
    residuals: np.ndarray
    rss: float
    durbin_watson: float
    nobs: int
    df_resid: int
    condition_number: float
    dropped_rows: int

    def coefficient(self, name: str) -> float:
        return float(self.params[self.names.index(name)])


def durbin_watson(residuals: Sequence[float] | np.ndarray) -> float:
    """Sum of squared consecutive residual changes over the residual sum of
    squares. Near 2 for white noise, 0 under perfect positive autocorrelation."""
    arr = np.asarray(residuals, dtype=float)
    if arr.ndim != 1 or len(arr) < 2:
        raise InsufficientDataError("durbin_watson needs at least 2 residuals")
    denom = float(arr @ arr)
    if denom == 0.0:
        return 0.0
    return float(np.square(np.diff(arr)).sum() / denom)


def ols(y: Series, X: Sequence[Series], intercept: bool = True) -> OlsResult:
    """Least squares with classical standard errors and diagnostics.

    Rows with any missing value among y and X are dropped listwise.
    Refuses rank-deficient designs; reports the design condition number.
    """
    for x in X:
        if len(x) != len(y):
            raise DataError(f"length mismatch: {x.name!r} has {len(x)}, {y.name!r} has {len(y)}")
    mask = np.isfinite(y.values)
    for x in X:
        mask &= np.isfinite(x.values)
    n = int(mask.sum())
    k = len(X)
    dropped = len(y) - n
    if n <= k + 1:
        raise InsufficientDataError(
            f"ols({y.name!r}): {n} usable rows for {k} regressors, need > {k + 1}"
        )
    yv = y.values[mask]
    columns = [x.values[mask] for x in X]
    names: list[str] = []
    if intercept:
        columns.insert(0, np.ones(n))
        names.append("intercept")
    names.extend(x.name for x in X)
    design = np.column_stack(columns)
    p = design.shape[1]
    condition_number = float(np.linalg.cond(design))
    rank = int(np.linalg.matrix_rank(design))
    if rank < p:
        raise RankDeficiencyError(
            f"ols({y.name!r}): design matrix rank {rank} < {p} columns"
            f" (condition number {condition_number:.3g}); drop collinear regressors"
        )
    beta, _, _, _ = np.linalg.lstsq(design, yv, rcond=None)
    fitted = design @ beta
    resid = yv - fitted
    rss = float(resid @ resid)
    df_resid = n - p
    sigma2 = rss / df_resid
    xtx_inv = np.linalg.inv(design.T @ design)
    bse = np.sqrt(np.clip(np.diag(xtx_inv), 0.0, None) * sigma2)
    with np.errstate(divide="ignore", invalid="ignore"):
        tvalues = np.where(bse > 0, beta / bse, np.inf * np.sign(beta))
    pvalues = 2.0 * _stats.t.sf(np.abs(tvalues), df_resid)
    if intercept:
        centered = yv - yv.mean()
        tss = float(centered @ centered)
    else:
        tss = float(yv @ yv)
    r2 = 1.0 - rss / tss if tss > 0.0 else 0.0
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / (n - k - 1)
    return OlsResult(
        names=tuple(names),
        params=beta,
        bse=bse,
        tvalues=np.asarray(tvalues, dtype=float),
        pvalues=np.asarray(pvalues, dtype=float),
        r2=r2,
        adj_r2=adj_r2,
        residuals=resid,
        rss=rss,
        durbin_watson=durbin_watson(resid) if n >= 2 else 0.0,
        nobs=n,
        df_resid=df_resid,
        condition_number=condition_number,
        dropped_rows=dropped,
    )


@dataclass(frozen=True)
class GrangerResult:
    chi2: float
    df: int
    p: float
    lag_order: int
    nobs: int


def granger_test(
    y: Series,
    x: Series,
    max_lag: int,
    difference_dependent: bool = False,
    conditioning: Sequence[Series] = (),
) -> GrangerResult:
    """Does x help predict y beyond y's own history?

    Restricted model: dep_t ~ dep lags 1..max_lag (+ conditioning columns at
    lag 0). Unrestricted adds x lags 1..max_lag. Both fit on the same rows.
    Statistic: chi2 = n_eff * (RSS_r - RSS_u) / RSS_u with df = max_lag.
    The dependent is first-differenced when ``difference_dependent`` is set.
    """
    if max_lag < 1:
        raise AnalysisError(f"max_lag must be >= 1, got {max_lag}")
    dep = first_difference(y) if difference_dependent else y
    own_lags = [lag(dep, i) for i in range(1, max_lag + 1)]
    cross_lags = [lag(x, i) for i in range(1, max_lag + 1)]
    extra = list(conditioning)

    mask = np.isfinite(dep.values)
    for s in (*own_lags, *cross_lags, *extra):
        if len(s) != len(dep):
            raise DataError(f"length mismatch between {s.name!r} and {dep.name!r}")
        mask &= np.isfinite(s.values)
    n_eff = int(mask.sum())
    if n_eff <= 2 * max_lag + 1 + len(extra):
        raise InsufficientDataError(
            f"granger_test({y.name!r} ~ {x.name!r}): {n_eff} usable rows,"
            f" need > {2 * max_lag + 1 + len(extra)}"
        )

    def masked(s: Series) -> Series:
        return Series(s.name, s.values[mask])

    dep_m = masked(dep)
    restricted_x = [masked(s) for s in (*own_lags, *extra)]
    unrestricted_x = [masked(s) for s in (*own_lags, *cross_lags, *extra)]
    restricted = ols(dep_m, restricted_x)
    unrestricted = ols(dep_m, unrestricted_x)
    chi2 = max(n_eff * (restricted.rss - unrestricted.rss) / unrestricted.rss, 0.0)
    p = float(_stats.chi2.sf(chi2, max_lag))
    return GrangerResult(chi2=chi2, df=max_lag, p=p, lag_order=max_lag, nobs=n_eff)


@dataclass(frozen=True)
class FeaturePanel:
    """Named weekly columns on one shared grid: ten predictors plus price."""

    week_count: int
    columns: Mapping[str, Series]

    def column(self, name: str) -> Series:
        if name not in self.columns:
            have = ", ".join(self.columns)
            raise AnalysisError(f"panel has no column {name!r} (have: {have})")
        return self.columns[name]

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(self.columns)


def build_panel(
    features: Mapping[str, Sequence[float | None]],
    price: MarketSeries,
    control: MarketSeries,
) -> FeaturePanel:
    """Assemble the analysis panel from per-window features and the two
    market series. All columns must cover the same week grid."""
    missing = [c for c in CORPUS_FEATURE_COLUMNS if c not in features]
    if missing:
        raise DataError(f"feature table lacks columns: {', '.join(missing)}")
    lengths = {name: len(features[name]) for name in CORPUS_FEATURE_COLUMNS}
    week_count = lengths[CORPUS_FEATURE_COLUMNS[0]]
    if week_count == 0:
        raise DataError("feature table is empty")
    mismatched = {n: l for n, l in lengths.items() if l != week_count}
    if mismatched:
        raise DataError(f"feature columns disagree on week grid: {mismatched}")
    columns: dict[str, Series] = {}
    for name in PREDICTOR_COLUMNS:
        if name == "control":
            columns[name] = Series("control", np.array(control.to_array(week_count)))
        else:
            columns[name] = series_from_values(name, features[name])
    columns[DEPENDENT_COLUMN] = Series(
        DEPENDENT_COLUMN, np.array(price.to_array(week_count))
    )
    return FeaturePanel(week_count=week_count, columns=columns)


@dataclass(frozen=True)
class ModelTerm:
    column: str
    lag: int = 0

    @property
    def label(self) -> str:
        return f"{self.column}_lag{self.lag}" if self.lag else self.column


@dataclass(frozen=True)
class ModelSpec:
    name: str
    terms: tuple[ModelTerm, ...]


# Default battery: a control-only baseline, single-block models 2..7 (group
# degree and group betweenness kept apart), and the combined model 8 with
# each variable at its best-performing lag.
DEFAULT_MODELS: tuple[ModelSpec, ...] = (
    ModelSpec("model_1", (ModelTerm("control", 0),)),
    ModelSpec(
        "model_2",
        (ModelTerm("complexity", 0), ModelTerm("emotionality", 1), ModelTerm("sentiment", 2)),
    ),
    ModelSpec("model_3", (ModelTerm("activity_words", 1),)),
    ModelSpec("model_4", (ModelTerm("activity", 0), ModelTerm("group_betweenness", 2))),
    ModelSpec("model_5", (ModelTerm("group_degree", 0),)),
    ModelSpec("model_6", (ModelTerm("focal_betweenness", 0),)),
    ModelSpec("model_7", (ModelTerm("focal_degree", 0),)),
    ModelSpec(
        "model_8",
        (
            ModelTerm("control", 0),
            ModelTerm("sentiment", 2),
            ModelTerm("activity_words", 1),
            ModelTerm("group_betweenness", 2),
            ModelTerm("focal_betweenness", 0),
        ),
    ),
)


@dataclass(frozen=True)
class BatteryConfig:
    correlation_lags: tuple[int, ...] = (0, 1, 2)
    granger_max_lag: int = 3
    granger_difference_dependent: bool = True
    granger_conditioning: tuple[str, ...] = ()
    models: tuple[ModelSpec, ...] = DEFAULT_MODELS
    baseline_model: str = "model_1"
    combined_model: str = "model_8"


@dataclass(frozen=True)
class CorrelationCell:
    predictor: str
    lag: int
    result: CorrelationResult | None = None
    error: str | None = None


@dataclass(frozen=True)
class GrangerCell:
    predictor: str
    result: GrangerResult | None = None
    error: str | None = None


@dataclass(frozen=True)
class ModelReport:
    spec: ModelSpec
    result: OlsResult | None = None
    error: str | None = None


@dataclass(frozen=True)
class AnalysisReport:
    correlations: tuple[CorrelationCell, ...]
    granger: tuple[GrangerCell, ...]
    models: tuple[ModelReport, ...]
    incremental_adj_r2: float | None


def significance_stars(p: float) -> str:
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def run_battery(panel: FeaturePanel, config: BatteryConfig = BatteryConfig()) -> AnalysisReport:
    """Correlation table, Granger table, and declarative regression models.

    A failing cell carries its error message; the rest of the report still
    completes. Cell order is fixed, so reports are byte-stable.
    """
    price = panel.column(DEPENDENT_COLUMN)

    correlations: list[CorrelationCell] = []
    for predictor in PREDICTOR_COLUMNS:
        for k in config.correlation_lags:
            try:
                result = pearson(lag(panel.column(predictor), k), price)
                correlations.append(CorrelationCell(predictor, k, result=result))
            except AnalysisError as exc:
                correlations.append(CorrelationCell(predictor, k, error=str(exc)))

    conditioning = [panel.column(name) for name in config.granger_conditioning]
    granger_cells: list[GrangerCell] = []
    for predictor in PREDICTOR_COLUMNS:
        try:
            result = granger_test(
                price,
                panel.column(predictor),
                config.granger_max_lag,
                difference_dependent=config.granger_difference_dependent,
                conditioning=conditioning,
            )
            granger_cells.append(GrangerCell(predictor, result=result))
        except AnalysisError as exc:
            granger_cells.append(GrangerCell(predictor, error=str(exc)))

    models: list[ModelReport] = []
    for spec in config.models:
        try:
            regressors = [
                Series(term.label, lag(panel.column(term.column), term.lag).values)
                for term in spec.terms
            ]
            models.append(ModelReport(spec, result=ols(price, regressors)))
        except AnalysisError as exc:
            models.append(ModelReport(spec, error=str(exc)))

    by_name = {report.spec.name: report for report in models}
    incremental = None
    baseline = by_name.get(config.baseline_model)
    combined = by_name.get(config.combined_model)
    if baseline and combined and baseline.result and combined.result:
        incremental = combined.result.adj_r2 - baseline.result.adj_r2

    return AnalysisReport(
        correlations=tuple(correlations),
        granger=tuple(granger_cells),
        models=tuple(models),
        incremental_adj_r2=incremental,
    )


def _fmt(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isnan(value):
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def write_correlations_csv(report: AnalysisReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["predictor", "lag", "r", "n", "p", "stars", "error"])
        for cell in report.correlations:
            if cell.result is not None:
                writer.writerow(
                    [
                        cell.predictor,
                        cell.lag,
                        _fmt(cell.result.r),
                        cell.result.n,
                        _fmt(cell.result.p),
                        significance_stars(cell.result.p),
                        "",
                    ]
                )
            else:
                writer.writerow([cell.predictor, cell.lag, "", "", "", "", cell.error])


def write_granger_csv(report: AnalysisReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["predictor", "chi2", "df", "p", "nobs", "stars", "error"])
        for cell in report.granger:
            if cell.result is not None:
                writer.writerow(
                    [
                        cell.predictor,
                        _fmt(cell.result.chi2),
                        cell.result.df,
                        _fmt(cell.result.p),
                        cell.result.nobs,
                        significance_stars(cell.result.p),
                        "",
                    ]
                )
            else:
                writer.writerow([cell.predictor, "", "", "", "", "", cell.error])


def write_regression_terms_csv(report: AnalysisReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["model", "term", "coefficient", "std_error", "t", "p", "stars", "error"])
        for model in report.models:
            if model.result is None:
                writer.writerow([model.spec.name, "", "", "", "", "", "", model.error])
                continue
            res = model.result
            for i, name in enumerate(res.names):
                writer.writerow(
                    [
                        model.spec.name,
                        name,
                        _fmt(float(res.params[i])),
                        _fmt(float(res.bse[i])),
                        _fmt(float(res.tvalues[i])),
                        _fmt(float(res.pvalues[i])),
                        significance_stars(float(res.pvalues[i])),
                        "",
                    ]
                )


def write_regression_models_csv(report: AnalysisReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "model",
                "nobs",
                "regressors",
                "r2",
                "adj_r2",
                "durbin_watson",
                "condition_number",
                "dropped_rows",
                "error",
            ]
        )
        for model in report.models:
            if model.result is None:
                writer.writerow([model.spec.name, "", "", "", "", "", "", "", model.error])
                continue
            res = model.result
            writer.writerow(
                [
                    model.spec.name,
                    res.nobs,
                    len(model.spec.terms),
                    _fmt(res.r2),
                    _fmt(res.adj_r2),
                    _fmt(res.durbin_watson),
                    _fmt(res.condition_number),
                    res.dropped_rows,
                    "",
                ]
            )


def _md_num(value: float, digits: int = 4) -> str:
    return f"{value:.{digits}f}"


def write_summary_md(report: AnalysisReport, path: str) -> None:
    """Human-readable digest of the three report tables."""
    lines: list[str] = ["# Analysis summary", ""]

    lines.append("## Correlations with price")
    lines.append("")
    lags = sorted({cell.lag for cell in report.correlations})
    header = "| predictor | " + " | ".join(f"lag {k}" for k in lags) + " |"
    lines.append(header)
    lines.append("|" + "---|" * (len(lags) + 1))
    by_predictor: dict[str, dict[int, CorrelationCell]] = {}
    for cell in report.correlations:
        by_predictor.setdefault(cell.predictor, {})[cell.lag] = cell
    for predictor, cells in by_predictor.items():
        row = [predictor]
        for k in lags:
            cell = cells.get(k)
            if cell is None or cell.result is None:
                row.append("err")
            else:
                row.append(_md_num(cell.result.r, 3) + significance_stars(cell.result.p))
        lines.append("| " + " | ".join(row) + " |")
    lines.append("")

    lines.append("## Granger causality vs price")
    lines.append("")
    lines.append("| predictor | chi2 | df | p | n |")
    lines.append("|---|---|---|---|---|")
    for cell in report.granger:
        if cell.result is None:
            lines.append(f"| {cell.predictor} | err | | | |")
        else:
            res = cell.result
            lines.append(
                f"| {cell.predictor} | {_md_num(res.chi2, 3)}{significance_stars(res.p)}"
                f" | {res.df} | {_md_num(res.p, 4)} | {res.nobs} |"
            )
    lines.append("")

    lines.append("## Regression models")
    lines.append("")
    lines.append("| model | terms | adj R2 | DW | n |")
    lines.append("|---|---|---|---|---|")
    for model in report.models:
        terms = ", ".join(term.label for term in model.spec.terms)
        if model.result is None:
            lines.append(f"| {model.spec.name} | {terms} | err: {model.error} | | |")
        else:
            res = model.result
            lines.append(
                f"| {model.spec.name} | {terms} | {_md_num(res.adj_r2, 3)}"
                f" | {_md_num(res.durbin_watson, 2)} | {res.nobs} |"
            )
    lines.append("")

    if report.incremental_adj_r2 is not None:
        lines.append(
            "Combined model improves adjusted R2 over the baseline by "
            f"{_md_num(report.incremental_adj_r2, 4)}."
        )
        lines.append("")

    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines))
