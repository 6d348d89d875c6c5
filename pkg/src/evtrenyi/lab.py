"""Config-driven convergence runs: ``H_beta(g_n)`` against the limit law.

A run sweeps ``beta`` (outer) and ``n`` (inner).  Cells may be computed by
a thread pool but are always assembled in that order, so the CSV output
is byte-identical regardless of the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import distributions
from .classify import Verdict, classify_domain, eventually_decreasing
from .entropy import renyi_entropy_numeric
from .errors import ConfigError, DivergenceError, EvtError, NoConvergenceError
from .limits import MaxStableLaw, limit_renyi_entropy
from .maxima import NormalizedMaximaDensity
from .norming import Domain, norming_constants

__all__ = [
    "ExperimentConfig",
    "ConvergenceRecord",
    "CSV_HEADER",
    "load_config",
    "resolve_domain",
    "run_convergence",
    "emit_csv",
    "render_csv",
    "read_csv",
    "emit_plot_data",
]

CSV_HEADER = ("family", "alpha", "beta", "n", "h_gn", "h_limit", "abs_error", "quad_error")
PLOT_HEADER = ("beta", "n", "abs_error")

_CONFIG_KEYS = {"family", "params", "domain", "betas", "ns", "quad_rel_tol", "output_path", "theorem_mode"}


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    betas: tuple
    ns: tuple
    params: tuple = ()
    domain: str = "auto"
    quad_rel_tol: float = 1e-10
    output_path: str | None = None
    theorem_mode: bool = True

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        ns = []
        for n in self.ns:
            if isinstance(n, bool) or int(n) != n or n < 1:
                raise ConfigError(f"ns must be positive integers, got {n!r}")
            ns.append(int(n))
        object.__setattr__(self, "ns", tuple(ns))
        if not self.betas:
            raise ConfigError("betas must not be empty")
        if not self.ns:
            raise ConfigError("ns must not be empty")
        if any(b >= c for b, c in zip(ns, ns[1:])):
            raise ConfigError("ns must be strictly increasing")
        for b in self.betas:
            if not (b > 0.0 and math.isfinite(b)) or b == 1.0:
                raise ConfigError(f"betas must be positive, finite and != 1, got {b!r}")
            if self.theorem_mode and b <= 1.0:
                raise ConfigError(f"theorem mode requires beta > 1, got {b!r}")
        if self.domain != "auto":
            try:
                Domain(self.domain)
            except ValueError:
                raise ConfigError(f"unknown domain {self.domain!r}") from None
        if not self.quad_rel_tol > 0.0:
            raise ConfigError("quad_rel_tol must be positive")
        if self.family not in distributions.FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = sorted(set(data) - _CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        missing = sorted({"family", "betas", "ns"} - set(data))
        if missing:
            raise ConfigError(f"missing config keys: {', '.join(missing)}")
        if not isinstance(data.get("theorem_mode", True), bool):
            raise ConfigError("theorem_mode must be a boolean")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(f"malformed config: {exc}") from exc

    def build_family(self):
        return distributions.from_spec(self.family, self.params)


def load_config(path) -> ExperimentConfig:
    """Read a strict JSON config; ``OSError`` propagates for unreadable paths."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return ExperimentConfig.from_dict(data)


@dataclass(frozen=True)
class ConvergenceRecord:
    """One ``(beta, n)`` cell.  ``error`` is set (and numbers are NaN) on failed cells."""

    family: str
    alpha: float | None
    beta: float
    n: int
    h_gn: float
    h_limit: float
    abs_error: float
    quad_error: float
    error: str | None = field(default=None, compare=False)

    def row(self):
        return [
            self.family,
            "" if self.alpha is None else _fmt(self.alpha),
            _fmt(self.beta),
            str(self.n),
            _fmt(self.h_gn),
            _fmt(self.h_limit),
            _fmt(self.abs_error),
            _fmt(self.quad_error),
        ]


def _fmt(x: float) -> str:
    return "%.17g" % x


def resolve_domain(cfg: ExperimentConfig, F=None):
    """Return ``(Domain, alpha or None, MaxStableLaw)`` for the config's family.

    The tail index always comes from the deep-tail von Mises ratio.  Raises
    :class:`ConfigError` when the family cannot be placed in the requested
    (or any) domain.
    """
    F = cfg.build_family() if F is None else F
    verdict = classify_domain(F)
    if verdict.domain is Verdict.UNDETERMINED:
        raise ConfigError(f"hypothesis failed: {F.label} is not in any max domain of attraction (von Mises check)")
    found = Domain(verdict.domain.value)
    if cfg.domain != "auto" and Domain(cfg.domain) is not found:
        raise ConfigError(f"hypothesis failed: {F.label} classifies as {found.value}, not {cfg.domain}")
    alpha = verdict.alpha_estimate
    if found is Domain.FRECHET:
        law = MaxStableLaw.frechet(alpha)
    elif found is Domain.WEIBULL:
        law = MaxStableLaw.weibull(alpha)
    else:
        law = MaxStableLaw.gumbel()
    return found, alpha, law


def _check_hypotheses(cfg, F):
    if cfg.theorem_mode and not eventually_decreasing(F):
        raise ConfigError(f"hypothesis failed: the density of {F.label} is not eventually decreasing near r(F)")
    for beta in cfg.betas:
        try:
            renyi_entropy_numeric(F.log_pdf, (F.l, F.r), beta, cfg.quad_rel_tol)
        except (DivergenceError, NoConvergenceError) as exc:
            raise ConfigError(f"hypothesis failed: integral of f**{beta:g} is not finite for {F.label} ({exc})") from exc


def _cell(F, label, domain, alpha, law, beta, n, tol):
    try:
        h_limit = limit_renyi_entropy(law, beta)
        D = NormalizedMaximaDensity(F, norming_constants(F, domain, n))
        res = D.renyi_entropy(beta, tol)
    except (DivergenceError, NoConvergenceError) as exc:
        nan = math.nan
        return ConvergenceRecord(label, alpha, beta, n, nan, nan, nan, nan, error=str(exc))
    err = abs(res.entropy - h_limit)
    return ConvergenceRecord(label, alpha, beta, n, res.entropy, h_limit, err, res.quad_error)


def run_convergence(cfg: ExperimentConfig, workers: int = 1, quad_rel_tol: float | None = None):
    """All ``(beta, n)`` records, ordered beta-major.  ``workers > 1`` uses threads."""
    F = cfg.build_family()
    tol = cfg.quad_rel_tol if quad_rel_tol is None else float(quad_rel_tol)
    domain, alpha, law = resolve_domain(cfg, F)
    _check_hypotheses(cfg, F)
    cells = [(beta, n) for beta in cfg.betas for n in cfg.ns]

    def job(cell):
        return _cell(F, F.label, domain, alpha, law, cell[0], cell[1], tol)

    if workers <= 1:
        return [job(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, cells))


def render_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow(rec.row())
    return buf.getvalue()


def emit_csv(records, path) -> None:
    """Write the records as UTF-8 CSV with ``\\n`` line endings."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_csv(records))


def read_csv(path):
    """Parse a file written by :func:`emit_csv` back into records."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise EvtError(f"{path}: unexpected CSV header")
    out = []
    for r in rows[1:]:
        fam, alpha, beta, n, h_gn, h_lim, err, qerr = r
        out.append(ConvergenceRecord(
            fam, None if alpha == "" else float(alpha), float(beta), int(n),
            float(h_gn), float(h_lim), float(err), float(qerr),
        ))
    return out


def emit_plot_data(records, path) -> None:
    """``(beta, n, abs_error)`` series for external plotting."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PLOT_HEADER)
        for rec in records:
            w.writerow([_fmt(rec.beta), str(rec.n), _fmt(rec.abs_error)])
