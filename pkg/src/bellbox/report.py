"""Analysis reports with deterministic text and machine renderings.

Every number in a report is reproducible from the analyzed experiment
alone.  Machine output is JSON with a fixed field order and all reals
formatted to six decimal places, so equal analyses produce byte-equal
documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .bell import (
    AmbiguousClassError,
    BOUNDS,
    CHSH_TERM_ORDER,
    ChshResult,
    ZooClass,
    chsh,
    classify,
)
from .hilbert import Isomorphism, ModelVerdict
from .tables import (
    Experiment,
    FactorizationVerdict,
    MarginalLawReport,
    PAIR_ORDER,
    SettingPair,
    expectation_value,
    factorization_test,
    marginal_law_report,
)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


@dataclass(frozen=True)
class ModelReport:
    """Verification block attached to a report when a named construction
    was checked against the analyzed data."""

    name: str
    alpha: float
    beta: float
    iso: Isomorphism
    verdict: ModelVerdict


@dataclass(frozen=True)
class Report:
    expectations: dict[SettingPair, float]
    chsh: ChshResult
    marginal_law: MarginalLawReport
    factorization: dict[SettingPair, FactorizationVerdict]
    zoo_class: ZooClass | None
    zoo_error: str | None
    model: ModelReport | None


def build_report(
    experiment: Experiment,
    class_tol: float = 1e-6,
    factorization_tol: float = 1e-9,
    model: ModelReport | None = None,
) -> Report:
    expectations = {
        pair: expectation_value(experiment.table(pair)) for pair in PAIR_ORDER
    }
    zoo_class: ZooClass | None
    zoo_error: str | None
    try:
        zoo_class, zoo_error = classify(experiment, class_tol), None
    except AmbiguousClassError as exc:
        zoo_class, zoo_error = None, str(exc)
    return Report(
        expectations=expectations,
        chsh=chsh(experiment),
        marginal_law=marginal_law_report(experiment, class_tol),
        factorization={
            pair: factorization_test(experiment.table(pair), factorization_tol)
            for pair in PAIR_ORDER
        },
        zoo_class=zoo_class,
        zoo_error=zoo_error,
        model=model,
    )


def _model_payload(block: ModelReport) -> dict[str, Any]:
    v = block.verdict
    return {
        "name": block.name,
        "alpha": _fmt(block.alpha),
        "beta": _fmt(block.beta),
        "iso": block.iso.name,
        "residual_kind": v.residual_kind,
        "tolerance": _fmt(v.tolerance),
        "residuals": {p.label: _fmt(v.residuals[p]) for p in PAIR_ORDER},
        "hermiticity_residuals": {
            p.label: _fmt(v.hermiticity_residuals[p]) for p in PAIR_ORDER
        },
        "measurement_entangled": {
            p.label: v.measurement_entangled[p] for p in PAIR_ORDER
        },
        "state_entangled": v.state_entangled,
        "chsh_from_model": _fmt(v.chsh_from_model),
        "chsh_imag_residual": _fmt(v.chsh_imag_residual),
        "passed": v.passed,
    }


def render_machine(report: Report) -> str:
    payload: dict[str, Any] = {
        "expectations": {p.label: _fmt(report.expectations[p]) for p in PAIR_ORDER},
        "chsh": {
            "reference_combination": _fmt(report.chsh.reference_combination),
            "max_abs_over_variants": _fmt(report.chsh.max_abs_over_variants),
            "variant_signs": {
                p.label: report.chsh.variant_signs[p] for p in CHSH_TERM_ORDER
            },
        },
        "bounds": {
            "classical": _fmt(BOUNDS.classical),
            "tsirelson": _fmt(BOUNDS.tsirelson),
            "algebraic": _fmt(BOUNDS.algebraic),
        },
        "marginal_law": {
            "holds": report.marginal_law.holds,
            "tol": _fmt(report.marginal_law.tol),
            "comparisons": [
                {
                    "side": c.side,
                    "setting": c.setting,
                    "tables": [p.label for p in c.pairs],
                    "difference": _fmt(max(c.differences)),
                    "holds": c.holds,
                }
                for c in report.marginal_law.comparisons
            ],
        },
        "factorization": {
            p.label: {
                "factorizable": report.factorization[p].factorizable,
                "residual": _fmt(report.factorization[p].residual),
                "factors": (
                    None
                    if report.factorization[p].factors is None
                    else {
                        "a": _fmt(report.factorization[p].factors.a),
                        "b": _fmt(report.factorization[p].factors.b),
                        "a_prime": _fmt(report.factorization[p].factors.a_prime),
                        "b_prime": _fmt(report.factorization[p].factors.b_prime),
                    }
                ),
            }
            for p in PAIR_ORDER
        },
        "zoo_class": report.zoo_class.value if report.zoo_class else None,
        "zoo_error": report.zoo_error,
        "model": _model_payload(report.model) if report.model else None,
    }
    return json.dumps(payload, indent=2) + "\n"


def render_text(report: Report) -> str:
    lines = []
    lines.append("expectation values")
    for p in PAIR_ORDER:
        lines.append(f"  E({p.first},{p.second}) = {_fmt(report.expectations[p])}")
    lines.append("chsh")
    lines.append(f"  combination  = {_fmt(report.chsh.reference_combination)}")
    lines.append(f"  max |variant| = {_fmt(report.chsh.max_abs_over_variants)}")
    signs = " ".join(
        f"{'+' if report.chsh.variant_signs[p] > 0 else '-'}E({p.first},{p.second})"
        for p in CHSH_TERM_ORDER
    )
    lines.append(f"  achieved by  {signs}")
    lines.append(
        f"  bounds: classical {_fmt(BOUNDS.classical)}, "
        f"tsirelson {_fmt(BOUNDS.tsirelson)}, algebraic {_fmt(BOUNDS.algebraic)}"
    )
    ml = report.marginal_law
    lines.append(f"marginal law: {'holds' if ml.holds else 'violated'} (tol {ml.tol:g})")
    for c in ml.comparisons:
        lines.append(
            f"  setting {c.setting:3s} ({c.pairs[0].label} vs {c.pairs[1].label}): "
            f"marginals ({_fmt(c.marginal_a[0])}, {_fmt(c.marginal_a[1])}) vs "
            f"({_fmt(c.marginal_b[0])}, {_fmt(c.marginal_b[1])}), "
            f"|diff| {_fmt(max(c.differences))} -> "
            f"{'ok' if c.holds else 'violated'}"
        )
    lines.append("factorization per table")
    for p in PAIR_ORDER:
        verdict = report.factorization[p]
        if verdict.factorizable and verdict.factors:
            f = verdict.factors
            lines.append(
                f"  {p.label:4s}: factorizable, a={_fmt(f.a)} b={_fmt(f.b)} "
                f"a'={_fmt(f.a_prime)} b'={_fmt(f.b_prime)} "
                f"(residual {_fmt(verdict.residual)})"
            )
        else:
            lines.append(
                f"  {p.label:4s}: not factorizable (residual {_fmt(verdict.residual)})"
            )
    if report.zoo_class is not None:
        lines.append(f"class: {report.zoo_class.value}")
    else:
        lines.append(f"class: unresolved ({report.zoo_error})")
    if report.model is not None:
        block = report.model
        v = block.verdict
        lines.append(
            f"model {block.name} (alpha={block.alpha:g}, beta={block.beta:g}, "
            f"iso={block.iso.name})"
        )
        lines.append(
            f"  verification ({v.residual_kind}, tol {v.tolerance:g}): "
            f"{'pass' if v.passed else 'FAIL'}"
        )
        for p in PAIR_ORDER:
            lines.append(
                f"  {p.label:4s}: residual {_fmt(v.residuals[p])}, "
                f"hermiticity {_fmt(v.hermiticity_residuals[p])}, "
                f"{'entangled' if v.measurement_entangled[p] else 'product'}"
            )
        lines.append(
            f"  state: {'entangled' if v.state_entangled else 'product'}; "
            f"model chsh {_fmt(v.chsh_from_model)} "
            f"(imag residual {_fmt(v.chsh_imag_residual)})"
        )
    return "\n".join(lines) + "\n"
