"""Command-line front end: ``ontobuild {check,srs,align,emit-owl,report}``.

Exit codes: 0 success, 1 analysis failure, 2 bad input content, 3 I/O error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from ontobuild.consistency import DiagnosticReport, check
from ontobuild.dolce import (
    AlignmentMap,
    MalformedTaxonomy,
    UnknownCategory,
    load_dolce,
    validate_alignment,
)
from ontobuild.dsl import ParseErrors, parse_ontology
from ontobuild.model import ConceptGraph, NormalizationConfig, OntologyDoc, normalize
from ontobuild.owl import DEFAULT_BASE, emit
from ontobuild.srs import (
    CycleDetected,
    DuplicateQuestionId,
    Expectation,
    QuestionMapping,
    compare_expectations,
    srs_report,
)

EXIT_OK, EXIT_ANALYSIS, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


@dataclass
class RunConfig:
    ontology_path: Path
    questions_path: Optional[Path] = None
    mapping_path: Optional[Path] = None
    dolce_path: Optional[Path] = None
    expectations_path: Optional[Path] = None
    composition_roles: list = field(default_factory=lambda: ["hasDivision"])
    output_format: str = "text"
    out_path: Optional[Path] = None
    force: bool = False
    timestamps: bool = False
    base_iri: str = DEFAULT_BASE


class CommandFailed(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def render_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise CommandFailed(EXIT_IO, f"cannot read {path}: {err}") from err


def _read_json(path: Path):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise CommandFailed(EXIT_INPUT, f"{path}: invalid JSON: {err}") from err


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out_path is None:
        sys.stdout.write(text)
        return
    try:
        Path(cfg.out_path).write_text(text, encoding="utf-8")
    except OSError as err:
        raise CommandFailed(EXIT_IO, f"cannot write {cfg.out_path}: {err}") from err


def _norm_cfg(cfg: RunConfig) -> NormalizationConfig:
    return NormalizationConfig(composition_roles=frozenset(cfg.composition_roles))


def load_pipeline(cfg: RunConfig):
    """Parse, normalize and check the ontology; returns ``(doc, graph, report)``."""
    source = _read_text(cfg.ontology_path)
    try:
        doc = parse_ontology(source, Path(cfg.ontology_path).stem)
    except ParseErrors as err:
        raise CommandFailed(EXIT_INPUT, f"{cfg.ontology_path}:\n{err}") from err
    try:
        ncfg = _norm_cfg(cfg)
    except ValueError as err:
        raise CommandFailed(EXIT_INPUT, str(err)) from err
    graph = normalize(doc, ncfg, strict=False)
    return doc, graph, check(doc, graph, ncfg)


def _gate(cfg: RunConfig, report: DiagnosticReport) -> None:
    if report.clean or cfg.force:
        return
    lines = [f"{report.error_count} consistency errors; use --force to continue anyway"]
    lines += [f"  {d.code}: {d.message}" for d in report.errors()]
    raise CommandFailed(EXIT_ANALYSIS, "\n".join(lines))


def _stamp(cfg: RunConfig, data: dict) -> dict:
    if cfg.timestamps:
        data["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return data


# --------------------------------------------------------------------------
# text rendering


def text_check(doc: OntologyDoc, report: DiagnosticReport) -> str:
    out = [
        f"ontology: {doc.name} ({len(doc.axioms)} axioms)",
        f"{report.error_count} errors, {report.warning_count} warnings",
    ]
    for d in report.diagnostics:
        lines = ", ".join(map(str, d.source_lines))
        where = f" [lines {lines}]" if lines else ""
        out.append(f"{d.severity:7} {d.code:18} {', '.join(d.subjects)}{where}: {d.message}")
    return "\n".join(out) + "\n"


def text_srs(data: dict) -> str:
    out = [f"{'id':<5} {'srs':>4}  breakdown"]
    flags = {r["id"]: r for r in data.get("expectations", [])}
    for e in data["entries"]:
        parts = []
        for s in e["per_concept"]:
            parts.append(f"{s['concept']}={s['card']}" + ("" if s["present"] else "(absent)"))
        line = f"{e['question']:<5} {e['srs']:>4}  " + " + ".join(parts)
        row = flags.get(e["question"])
        if row is not None:
            if row["paper_discrepancy"]:
                line += f"  [paper_discrepancy: published {row.get('published_srs')}]"
            if not row["match"]:
                line += f"  [MISMATCH: expected {row['expected_srs']}]"
        out.append(line)
    out.append(f"min SRS {data['min_srs']}, max SRS {data['max_srs']}")
    if data["unmapped_concepts"]:
        out.append("absent concepts: " + ", ".join(data["unmapped_concepts"]))
    return "\n".join(out) + "\n"


def text_align(data: dict) -> str:
    out = [
        f"coverage {data['coverage']:.3f} of classes",
        f"{len(data['incompatibilities'])} incompatibilities",
    ]
    if data["coverage"] == 0:
        out.append("warning: no ontology class is aligned")
    for i in data["incompatibilities"]:
        out.append(
            f"  {i['child']} ({i['dolce_child']}) is a subclass of "
            f"{i['parent']} ({i['dolce_parent']})"
        )
    if data["unmapped"]:
        out.append("unmapped: " + ", ".join(data["unmapped"]))
    if data["not_in_ontology"]:
        out.append("aligned but not in ontology: " + ", ".join(data["not_in_ontology"]))
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# commands


def _srs_data(cfg: RunConfig, graph: ConceptGraph) -> dict:
    records = _read_json(cfg.questions_path)
    try:
        qs = [QuestionMapping.from_dict(r) for r in records]
    except (KeyError, TypeError, AttributeError) as err:
        raise CommandFailed(EXIT_INPUT, f"{cfg.questions_path}: bad question record: {err}") from err
    try:
        report = srs_report(graph, _norm_cfg(cfg), qs)
    except DuplicateQuestionId as err:
        raise CommandFailed(EXIT_INPUT, f"DuplicateQuestionId: {err}") from err
    except CycleDetected as err:
        raise CommandFailed(EXIT_ANALYSIS, f"CycleDetected: {err}") from err
    data = report.to_dict()
    if cfg.expectations_path is not None:
        try:
            exps = [Expectation.from_dict(r) for r in _read_json(cfg.expectations_path)]
        except (KeyError, TypeError, ValueError) as err:
            raise CommandFailed(EXIT_INPUT, f"bad expectation record: {err}") from err
        data["expectations"] = compare_expectations(report, exps)
    return data


def _align_data(cfg: RunConfig, graph: ConceptGraph) -> dict:
    try:
        tax = load_dolce(cfg.dolce_path)
    except OSError as err:
        raise CommandFailed(EXIT_IO, f"cannot read {cfg.dolce_path}: {err}") from err
    except (MalformedTaxonomy, json.JSONDecodeError) as err:
        raise CommandFailed(EXIT_INPUT, f"MalformedTaxonomy: {err}") from err
    try:
        amap = AlignmentMap.from_records(_read_json(cfg.mapping_path))
    except (KeyError, TypeError, ValueError) as err:
        raise CommandFailed(EXIT_INPUT, f"{cfg.mapping_path}: bad alignment record: {err}") from err
    try:
        return validate_alignment(graph, amap, tax).to_dict()
    except UnknownCategory as err:
        raise CommandFailed(EXIT_ANALYSIS, f"UnknownCategory: {err}") from err


def cmd_check(cfg: RunConfig) -> int:
    doc, graph, report = load_pipeline(cfg)
    if cfg.output_format == "json":
        _write(cfg, render_json(_stamp(cfg, report.to_dict())))
    else:
        _write(cfg, text_check(doc, report))
    return EXIT_OK if report.clean else EXIT_ANALYSIS


def cmd_srs(cfg: RunConfig) -> int:
    _, graph, report = load_pipeline(cfg)
    _gate(cfg, report)
    data = _srs_data(cfg, graph)
    if cfg.output_format == "json":
        _write(cfg, render_json(_stamp(cfg, data)))
    else:
        _write(cfg, text_srs(data))
    return EXIT_OK


def cmd_align(cfg: RunConfig) -> int:
    _, graph, report = load_pipeline(cfg)
    _gate(cfg, report)
    data = _align_data(cfg, graph)
    if cfg.output_format == "json":
        _write(cfg, render_json(_stamp(cfg, data)))
    else:
        _write(cfg, text_align(data))
    return EXIT_OK if data["valid"] else EXIT_ANALYSIS


def cmd_emit_owl(cfg: RunConfig) -> int:
    _, graph, report = load_pipeline(cfg)
    _gate(cfg, report)
    _write(cfg, emit(graph, cfg.base_iri, force=cfg.force).xml_text)
    return EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    """Run every analysis the given inputs allow and bundle the results."""
    doc, graph, report = load_pipeline(cfg)
    bundle = {"ontology": doc.name, "axioms": len(doc.axioms), "check": report.to_dict()}
    code = EXIT_OK
    if not report.clean and not cfg.force:
        bundle["skipped"] = "consistency errors; rerun with --force"
        code = EXIT_ANALYSIS
    else:
        if cfg.questions_path is not None:
            bundle["srs"] = _srs_data(cfg, graph)
        if cfg.mapping_path is not None:
            bundle["alignment"] = _align_data(cfg, graph)
            if not bundle["alignment"]["valid"]:
                code = EXIT_ANALYSIS
        bundle["owl"] = emit(graph, cfg.base_iri, force=cfg.force).xml_text
    if cfg.output_format == "json":
        _write(cfg, render_json(_stamp(cfg, bundle)))
    else:
        parts = [text_check(doc, report)]
        if "srs" in bundle:
            parts.append(text_srs(bundle["srs"]))
        if "alignment" in bundle:
            parts.append(text_align(bundle["alignment"]))
        if "owl" in bundle:
            parts.append(bundle["owl"])
        if "skipped" in bundle:
            parts.append(bundle["skipped"] + "\n")
        if cfg.timestamps:
            parts.insert(0, f"generated {_stamp(cfg, {})['generated_at']}\n")
        _write(cfg, "\n".join(parts))
    return code


COMMANDS = {
    "check": (cmd_check, "report consistency diagnostics"),
    "srs": (cmd_srs, "score competency questions against the ontology"),
    "align": (cmd_align, "validate a DOLCE alignment"),
    "emit-owl": (cmd_emit_owl, "write the ontology as OWL RDF/XML"),
    "report": (cmd_report, "run all analyses and bundle the outputs"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ontobuild", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--ontology", type=Path, required=True, help=".dlx axiom file")
        p.add_argument("--questions", type=Path, required=name == "srs")
        p.add_argument("--mapping", type=Path, required=name == "align")
        p.add_argument("--dolce", type=Path, help="taxonomy file (default: embedded DOLCE)")
        p.add_argument("--expectations", type=Path, help="expected SRS values to compare against")
        p.add_argument(
            "--composition-roles",
            default="hasDivision",
            help="comma-separated roles whose targets count as children",
        )
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", type=Path)
        p.add_argument("--base-iri", default=DEFAULT_BASE)
        p.add_argument("--force", action="store_true", help="continue past consistency errors")
        p.add_argument("--timestamps", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        ontology_path=args.ontology,
        questions_path=args.questions,
        mapping_path=args.mapping,
        dolce_path=args.dolce,
        expectations_path=args.expectations,
        composition_roles=[r.strip() for r in args.composition_roles.split(",") if r.strip()],
        output_format=args.format,
        out_path=args.out,
        force=args.force,
        timestamps=args.timestamps,
        base_iri=args.base_iri,
    )
    func = COMMANDS[args.command][0]
    try:
        return func(cfg)
    except CommandFailed as err:
        print(f"ontobuild {args.command}: {err}", file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
