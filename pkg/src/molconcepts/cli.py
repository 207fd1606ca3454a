"""Command-line interface.

Commands: run, label, descriptors, intervene, report.
Exit codes: 0 success, 1 runtime error, 2 configuration error.
Errors print one machine-parseable line: ``ERROR <class>: <message>``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .chem import catalog_as_json, compute_all, descriptor_catalog, parse_smiles
from .errors import (
    ConfigError,
    IndexOutOfRange,
    MolConceptsError,
    SchemaError,
    SchemaMismatch,
)
from .labeling import LabelTable, UnitDictionary, build_label_table
from .llm import Transport, TranscriptCache, concept_from_dict
from .models import load_model
from .pipeline import RunConfig, run_pipeline
from .reporting import explain_report, parse_grid_spec, write_intervention_csv

CONFIG_ERRORS = (ConfigError, SchemaError, IndexOutOfRange)


def _fail(exc: Exception) -> int:
    print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
    return 2 if isinstance(exc, CONFIG_ERRORS) else 1


# --- run ---------------------------------------------------------------------

def cmd_run(args) -> int:
    config = RunConfig.from_file(args.config)
    if args.print_effective_config:
        print(json.dumps(config.validate().to_dict(), indent=2, sort_keys=True))
        return 0
    reports = run_pipeline(config)
    for report in reports:
        parts = []
        for predictor in sorted(report.metrics):
            for split in ("train", "valid", "test"):
                metric = report.metrics[predictor][split]
                key = "rmse" if "rmse" in metric else "auc_roc"
                parts.append(f"{predictor}/{split} {key}={metric[key]:.3f}")
        print(f"iteration {report.iteration}: kept={list(report.selection.kept)} "
              f"best={report.best_predictor} | " + " | ".join(parts))
    print(f"run directory: {config.run_dir}")
    return 0


# --- label -------------------------------------------------------------------

def _load_concepts_file(path) -> list:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, list) or not data:
        raise ConfigError("concept list must be a non-empty JSON array")
    return [concept_from_dict(item) for item in data]


def cmd_label(args) -> int:
    config = RunConfig.from_file(args.config).validate()
    concepts = _load_concepts_file(args.concepts)
    from .data_io import load_dataset

    dataset = load_dataset(config.dataset, config.task)
    cache = TranscriptCache(config.transcripts) if config.transcripts else None
    transport = Transport(config.transport, config.model_id,
                          config.temperature, cache)
    unit_dictionary = UnitDictionary(
        {c.name: c.unit or "dimensionless" for c in concepts})
    sandbox = None
    if 2 in config.strategies:
        from .labeling import SandboxRunner

        try:
            sandbox = SandboxRunner(config.sandbox_command or ("molsandbox-shim",))
            sandbox.start()
        except Exception as exc:
            print(f"warning: sandbox unavailable ({exc}); function cells "
                  "will be Missing", file=sys.stderr)
            sandbox = None
    try:
        table = build_label_table(dataset.rows, concepts, set(config.strategies),
                                  transport, unit_dictionary, sandbox=sandbox,
                                  on_unroutable="drop",
                                  max_inflight=config.label_inflight)
    finally:
        if sandbox is not None:
            sandbox.close()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    table.to_csv(out_dir / "label_table.csv")
    table.provenance_json(out_dir / "provenance.json")
    print(f"wrote {out_dir / 'label_table.csv'} "
          f"({len(table.molecule_ids)} rows x {len(table.columns)} columns)")
    return 0


# --- descriptors --------------------------------------------------------------

def cmd_descriptors(args) -> int:
    if args.catalog:
        print(json.dumps(catalog_as_json(), indent=2, ensure_ascii=False))
        return 0
    if args.input is None:
        raise ConfigError("descriptors needs a SMILES string or --file")
    if args.file:
        lines = [line.strip() for line in Path(args.input).read_text().splitlines()
                 if line.strip() and not line.startswith("#")]
    else:
        lines = [args.input]

    ids = [spec.id for spec in descriptor_catalog()]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["smiles", "error", *ids])
    successes = 0
    for smiles in lines:
        try:
            values = compute_all(parse_smiles(smiles))
        except MolConceptsError as exc:
            writer.writerow([smiles, f"{type(exc).__name__}: {exc}"] +
                            [""] * len(ids))
            continue
        successes += 1
        writer.writerow([smiles, ""] + [repr(values[i]) for i in ids])
    if successes == 0:
        raise MolConceptsError("no input row produced descriptors")
    return 0


# --- intervene -----------------------------------------------------------------

def cmd_intervene(args) -> int:
    model = load_model(args.model)
    table = LabelTable.from_csv(args.table)
    if args.row_id not in table.molecule_ids:
        raise SchemaMismatch(f"molecule id {args.row_id!r} not in the table")
    base_row = table.row(args.row_id, list(model.columns))
    grid = parse_grid_spec(args.grid)
    write_intervention_csv(model, base_row, args.concept, grid, args.out)
    print(f"wrote {args.out} ({len(grid)} grid points)")
    return 0


# --- report --------------------------------------------------------------------

def cmd_report(args) -> int:
    model = load_model(args.model)
    selection = None
    if args.selection:
        from .selection import SelectionResult

        with open(args.selection, encoding="utf-8") as handle:
            selection = SelectionResult.from_dict(json.load(handle))
    written = explain_report(model, args.out, selection=selection)
    print(f"wrote {', '.join(written)} to {args.out}")
    return 0


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="molconcepts",
        description="Concept-bottleneck molecular property prediction")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute the full iterative pipeline")
    run.add_argument("config", help="JSON run configuration")
    run.add_argument("--print-effective-config", action="store_true")
    run.set_defaults(func=cmd_run)

    label = sub.add_parser("label", help="build a label table for a concept list")
    label.add_argument("config")
    label.add_argument("concepts", help="JSON array of concept specs")
    label.add_argument("-o", "--out", default="label_out")
    label.set_defaults(func=cmd_label)

    descriptors = sub.add_parser("descriptors",
                                 help="compute all catalog descriptors")
    descriptors.add_argument("input", nargs="?",
                             help="SMILES string, or a file with --file")
    descriptors.add_argument("--file", action="store_true")
    descriptors.add_argument("--catalog", action="store_true",
                             help="print the descriptor catalog as JSON")
    descriptors.set_defaults(func=cmd_descriptors)

    intervene_cmd = sub.add_parser("intervene",
                                   help="what-if sweep over one concept")
    intervene_cmd.add_argument("model", help="fitted model JSON")
    intervene_cmd.add_argument("--table", required=True,
                               help="label_table.csv with the base row")
    intervene_cmd.add_argument("--row-id", required=True)
    intervene_cmd.add_argument("--concept", required=True)
    intervene_cmd.add_argument("--grid", required=True,
                               help="start:stop:count (or one value)")
    intervene_cmd.add_argument("-o", "--out", default="intervention.csv")
    intervene_cmd.set_defaults(func=cmd_intervene)

    report = sub.add_parser("report", help="emit explanation files for a model")
    report.add_argument("model")
    report.add_argument("--selection", help="selection.json to copy alongside")
    report.add_argument("-o", "--out", default="report_out")
    report.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MolConceptsError as exc:
        return _fail(exc)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
