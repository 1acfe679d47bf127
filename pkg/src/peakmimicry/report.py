"""Tabular reports for the command line, rendered as plain text, CSV or JSON.

Every cell is a string.  Integers are printed in full, fractions as
``num/den`` and mpmath reals with a digit count derived from the working
precision, so all three formats carry byte-identical values.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from . import asymptotics as asy
from . import peaks

FORMATS = ("plain", "json", "csv")


@dataclass
class RunConfig:
    order: int = 100
    precision: int = asy.DEFAULT_PRECISION
    pole_pairs: int = 1
    enumeration_bound: int = peaks.DEFAULT_ENUM_BOUND
    output_format: str = "plain"
    t: Optional[Fraction] = None

    def echo(self) -> dict[str, str]:
        out = {
            "order": str(self.order),
            "precision": str(self.precision),
            "pole_pairs": str(self.pole_pairs),
            "enumeration_bound": str(self.enumeration_bound),
        }
        if self.t is not None:
            out["t"] = fmt(self.t)
        return out


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list[str]]


@dataclass
class Report:
    command: str
    meta: dict[str, str]
    summary: dict[str, str] = field(default_factory=dict)
    tables: list[Table] = field(default_factory=list)


def digits_for(precision: int) -> int:
    return max(int(precision * math.log10(2)), 1)


def fmt(x, precision: int = asy.DEFAULT_PRECISION) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, digits_for(precision))
    if x is None:
        return "none"
    return str(x)


# -- report builders ---------------------------------------------------------

def coeffs_report(cfg: RunConfig) -> Report:
    t = Fraction(-1) if cfg.t is None else cfg.t
    if t == -1:
        values = list(peaks.f_sequence(cfg.order).values)
        col = "f_n"
    else:
        values = peaks.evaluate_gf_at_t(t, cfg.order)
        col = "P_n(t)"
    rows = [[str(n), fmt(v)] for n, v in enumerate(values)]
    return Report("coeffs", cfg.echo(), {"t": fmt(t)}, [Table("rows", ["n", col], rows)])


def peaks_report(cfg: RunConfig) -> Report:
    t = Fraction(-1) if cfg.t is None else cfg.t
    rows = []
    for n in range(1, cfg.order + 1):
        p = peaks.peak_polynomial_rec(n)
        value = fmt(peaks.evaluate_polynomial(p, t))
        for k, c in enumerate(p.counts):
            rows.append([str(n), str(k), str(c), value])
    checked = min(cfg.order, cfg.enumeration_bound)
    agree = all(
        peaks.peak_polynomial_enum(n, cfg.enumeration_bound) == peaks.peak_polynomial_rec(n)
        for n in range(1, checked + 1)
    )
    summary = {"t": fmt(t), "enumeration_checked_up_to": str(checked),
               "enumeration_agrees": fmt(agree)}
    return Report("peaks", cfg.echo(), summary,
                  [Table("rows", ["n", "k", "count", "P_n(t)"], rows)])


def _constants(m: asy.AsymptoticModel) -> dict[str, str]:
    p = m.precision
    with mpmath.workprec(p):
        return {
            "rho": fmt(m.rho, p),
            "theta": fmt(m.theta, p),
            "theta_over_pi_third": fmt(m.theta / (mpmath.pi / 3), p),
            "alpha": fmt(m.alpha, p),
            "decay_ratio": fmt(m.decay_ratio, p),
        }


def _pole_rows(ks, precision: int) -> list[list[str]]:
    rows = []
    for k in ks:
        s = asy.singularity(k, precision)
        with mpmath.workprec(precision):
            res = asy.residue_at(s)
            rows.append([
                str(k),
                fmt(s.location.real, precision),
                fmt(s.location.imag, precision),
                fmt(s.modulus, precision),
                fmt(s.argument, precision),
                fmt(asy.pole_defect(s), precision),
                fmt(res.real, precision),
                fmt(res.imag, precision),
            ])
    return rows


POLE_COLUMNS = ["k", "re", "im", "modulus", "argument", "defect", "residue_re", "residue_im"]


def asymptotics_report(cfg: RunConfig) -> Report:
    m = asy.model(cfg.pole_pairs, cfg.precision)
    f = peaks.f_sequence(cfg.order)
    rows = []
    for n in range(cfg.order + 1):
        rows.append([
            str(n),
            str(f[n]),
            fmt(asy.predict(m, n), cfg.precision),
            fmt(asy.normalized_residual(m, f, n), cfg.precision),
        ])
    poles = _pole_rows(range(cfg.pole_pairs), cfg.precision)
    return Report("asymptotics", cfg.echo(), _constants(m), [
        Table("rows", ["n", "f_n", "predicted", "residual"], rows),
        Table("poles", POLE_COLUMNS, poles),
    ])


def singularities_report(cfg: RunConfig) -> Report:
    ks = range(-cfg.pole_pairs, cfg.pole_pairs)
    return Report("singularities", cfg.echo(), {},
                  [Table("rows", POLE_COLUMNS, _pole_rows(ks, cfg.precision))])


def residuals_report(cfg: RunConfig) -> Report:
    m = asy.model(cfg.pole_pairs, cfg.precision)
    f = peaks.f_sequence(cfg.order)
    rows = [[str(n), fmt(asy.normalized_residual(m, f, n), cfg.precision)]
            for n in range(cfg.order + 1)]
    summary = {"decay_ratio": _constants(m)["decay_ratio"]}
    lo = 20
    if cfg.order - lo >= 2:
        rate = asy.residual_decay_rate(m, f, lo, cfg.order)
        summary["fitted_decay_ratio"] = f"{rate:.6f}"
        summary["fit_range"] = f"{lo}..{cfg.order}"
    return Report("residuals", cfg.echo(), summary,
                  [Table("rows", ["n", "residual"], rows)])


def signs_report(cfg: RunConfig) -> Report:
    if cfg.order < 1:
        raise ValueError("signs needs order >= 1")
    m = asy.model(cfg.pole_pairs, cfg.precision)
    f = peaks.f_sequence(cfg.order)
    reports = asy.sign_report(f, m)
    rows = [[
        str(r.n), r.f_sign, r.naive_sign, r.cos_sign or "?",
        fmt(r.matches_naive), fmt(r.matches_cos),
    ] for r in reports]
    exceptions = asy.cos_sign_exceptions(reports)
    summary = {
        "first_break": fmt(asy.first_sign_break(f)),
        "cos_sign_exceptions": str(len(exceptions)),
        "cos_sign_exception_list": " ".join(map(str, exceptions)) or "none",
        "indeterminate": str(sum(r.indeterminate for r in reports)),
    }
    return Report("signs", cfg.echo(), summary, [Table("rows", [
        "n", "f_sign", "naive_sign", "cos_sign", "matches_naive", "matches_cos",
    ], rows)])


BUILDERS = {
    "coeffs": coeffs_report,
    "peaks": peaks_report,
    "asymptotics": asymptotics_report,
    "signs": signs_report,
    "singularities": singularities_report,
    "residuals": residuals_report,
}


# -- rendering ---------------------------------------------------------------

def render(report: Report, output_format: str) -> str:
    if output_format == "plain":
        return render_plain(report)
    if output_format == "csv":
        return render_csv(report)
    if output_format == "json":
        return render_json(report)
    raise ValueError(f"unknown format {output_format!r}")


def render_plain(report: Report) -> str:
    lines = [f"# {report.command}"]
    lines += [f"# {k}: {v}" for k, v in report.meta.items()]
    for k, v in report.summary.items():
        lines.append(f"{k}: {v}")
    for table in report.tables:
        lines.append("")
        if table.name != "rows":
            lines.append(f"[{table.name}]")
        widths = [len(c) for c in table.columns]
        for row in table.rows:
            widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
        lines.append("  ".join(c.rjust(w) for c, w in zip(table.columns, widths)))
        for row in table.rows:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    first = True
    for table in report.tables:
        if not first:
            buf.write("\n")
        first = False
        writer.writerow(table.columns)
        writer.writerows(table.rows)
    if report.summary:
        buf.write("\n")
        writer.writerow(["key", "value"])
        writer.writerows(report.summary.items())
    return buf.getvalue()


def render_json(report: Report) -> str:
    doc: dict = {"command": report.command, "meta": report.meta}
    if report.summary:
        doc["summary"] = report.summary
    for table in report.tables:
        doc[table.name] = [dict(zip(table.columns, row)) for row in table.rows]
    return json.dumps(doc, indent=2) + "\n"
