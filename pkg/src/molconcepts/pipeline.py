"""The full iterate-refine pipeline: generate, label, fit, select, feed back."""

from __future__ import annotations

import json
import logging
import shutil
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .data_io import load_dataset, load_split
from .errors import ConfigError, MolConceptsError
from .labeling import SandboxRunner, UnitDictionary, build_label_table
from .llm import (
    Transport,
    TranscriptCache,
    concept_to_dict,
    generate_concepts,
    generate_unit_dictionary,
    refine_concepts,
    with_tool_route,
)
from .llm.transport import HttpChatProvider
from .metrics import accuracy, auc_roc, rmse
from .models import fit_linear, fit_logistic, fit_mlp, fit_tree, save_model
from .selection import SelectionResult, aic_stepwise, rfe

log = logging.getLogger(__name__)

PREDICTOR_NAMES = ("linear", "tree", "mlp")


@dataclass
class RunConfig:
    dataset: str
    split: str
    task: str
    task_description: str
    run_dir: str
    iterations: int = 3
    concepts_per_iteration: int = 8
    strategies: tuple = (1, 2, 3)
    predictors: tuple = PREDICTOR_NAMES
    model_id: str = "gpt-3.5-turbo"
    temperature: float = 0.0
    transport: str = "replay"
    transcripts: str | None = None
    api_base_url: str = "https://api.openai.com/v1"
    api_key_env: str = "OPENAI_API_KEY"
    selector_direction: str = "both"
    rfe_target_count: int | None = None
    imputation_overrides: dict = field(default_factory=dict)
    seed: int = 0
    tree_max_depth: int = 3
    tree_min_samples_leaf: int = 5
    mlp_hidden_width: int = 32
    mlp_epochs: int = 2000
    mlp_learning_rate: float = 1e-2
    label_inflight: int = 1
    sandbox_command: tuple | None = None

    def __post_init__(self):
        self.strategies = tuple(int(s) for s in self.strategies)
        self.predictors = tuple(self.predictors)

    def validate(self) -> "RunConfig":
        if self.task not in ("regression", "classification"):
            raise ConfigError(f"unknown task kind {self.task!r}")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.concepts_per_iteration < 1:
            raise ConfigError("concepts_per_iteration must be >= 1")
        if self.label_inflight < 1:
            raise ConfigError("label_inflight must be >= 1")
        if not set(self.strategies) <= {1, 2, 3} or not self.strategies:
            raise ConfigError("strategies must be a non-empty subset of {1,2,3}")
        if not set(self.predictors) <= set(PREDICTOR_NAMES) or not self.predictors:
            raise ConfigError(
                f"predictors must be a non-empty subset of {PREDICTOR_NAMES}")
        if self.transport not in ("live", "replay", "record"):
            raise ConfigError(f"unknown transport mode {self.transport!r}")
        if not Path(self.dataset).exists():
            raise ConfigError(f"dataset file not found: {self.dataset}")
        if not Path(self.split).exists():
            raise ConfigError(f"split file not found: {self.split}")
        if self.transport == "replay":
            if not self.transcripts:
                raise ConfigError("replay transport needs a transcripts path")
            if not Path(self.transcripts).exists():
                raise ConfigError(
                    f"transcript file not found: {self.transcripts}")
        return self

    def to_dict(self) -> dict:
        data = asdict(self)
        data["strategies"] = list(self.strategies)
        data["predictors"] = list(self.predictors)
        if self.sandbox_command is not None:
            data["sandbox_command"] = list(self.sandbox_command)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"dataset", "split", "task", "task_description", "run_dir"} - set(data)
        if missing:
            raise ConfigError(f"missing config keys: {sorted(missing)}")
        config = cls(**data)
        if config.sandbox_command is not None:
            config.sandbox_command = tuple(config.sandbox_command)
        return config

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        return cls.from_dict(data)


@dataclass
class IterationReport:
    iteration: int
    concepts_in: list
    label_table: str
    selection: SelectionResult
    kept_concepts: list
    metrics: dict
    best_predictor: str

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "concepts_in": self.concepts_in,
            "label_table": self.label_table,
            "selection": self.selection.to_dict(),
            "kept_concepts": self.kept_concepts,
            "metrics": self.metrics,
            "best_predictor": self.best_predictor,
        }


def format_feedback(selection: SelectionResult, metric: tuple[str, float]) -> str:
    """Deterministic feedback block for the refinement prompt."""
    name, value = metric
    lines = ["Kept concepts (selected as useful):"]
    lines += [f"- {kept}" for kept in selection.kept]
    if selection.dropped:
        lines.append("Dropped concepts (replace these with better ones):")
        lines += [f"- {concept}: {reason}"
                  for concept, reason in sorted(selection.dropped.items())]
    else:
        lines.append("All concepts were retained.")
    lines.append(f"Validation {name}: {value:.3f}")
    return "\n".join(lines)


def _json_dump(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True, ensure_ascii=False)
        handle.write("\n")


def _prepare_run_dir(run_dir: Path) -> None:
    if run_dir.exists():
        marker = run_dir / "config.json"
        if any(run_dir.iterdir()) and not marker.exists():
            raise ConfigError(
                f"run_dir {run_dir} exists and does not look like a run directory")
        shutil.rmtree(run_dir)
    run_dir.mkdir(parents=True)


def _make_transport(config: RunConfig, run_dir: Path, provider=None) -> Transport:
    if config.transport == "replay":
        shutil.copyfile(config.transcripts, run_dir / "transcripts.jsonl")
        cache = TranscriptCache(run_dir / "transcripts.jsonl")
        return Transport("replay", config.model_id, config.temperature, cache)
    cache = None
    if config.transport == "record":
        if config.transcripts:
            # seed the run cache with any existing transcripts
            if Path(config.transcripts).exists():
                shutil.copyfile(config.transcripts, run_dir / "transcripts.jsonl")
        cache = TranscriptCache(run_dir / "transcripts.jsonl")
    if provider is None:
        provider = HttpChatProvider(config.api_base_url, config.api_key_env)
    return Transport(config.transport, config.model_id, config.temperature,
                     cache, provider)


def _fit_predictors(config, task, X_train, y_train, kept_names):
    models = {}
    for predictor in config.predictors:
        if predictor == "linear":
            if task == "regression":
                models["linear"] = fit_linear(X_train, y_train, columns=kept_names)
            else:
                models["linear"] = fit_logistic(X_train, y_train,
                                                columns=kept_names)
        elif predictor == "tree":
            criterion = "mse" if task == "regression" else "gini"
            models["tree"] = fit_tree(
                X_train, y_train, columns=kept_names,
                max_depth=config.tree_max_depth, criterion=criterion,
                min_samples_leaf=config.tree_min_samples_leaf)
        elif predictor == "mlp":
            models["mlp"] = fit_mlp(
                X_train, y_train, columns=kept_names,
                hidden_width=config.mlp_hidden_width, epochs=config.mlp_epochs,
                learning_rate=config.mlp_learning_rate, seed=config.seed,
                task=task)
    return models


def _split_metrics(task, model, X, y) -> dict:
    predictions = model.predict(X)
    if task == "regression":
        return {"rmse": rmse(y, predictions)}
    return {"auc_roc": auc_roc(y, predictions),
            "accuracy": accuracy(y, (predictions >= 0.5).astype(float))}


def _validation_score(task, metrics: dict) -> float:
    # lower-is-better for regression, higher-is-better for classification
    if task == "regression":
        return -metrics["rmse"]
    return metrics["auc_roc"]


def run_pipeline(config: RunConfig, provider=None, sandbox=None):
    """Execute the configured number of generate-label-fit-select rounds.

    Returns the list of IterationReports; everything is also persisted
    under ``config.run_dir``.
    """
    config.validate()
    run_dir = Path(config.run_dir)
    _prepare_run_dir(run_dir)
    _json_dump(run_dir / "config.json", config.to_dict())

    dataset = load_dataset(config.dataset, config.task)
    split = load_split(config.split, len(dataset))
    transport = _make_transport(config, run_dir, provider)

    own_sandbox = False
    if sandbox is None and 2 in config.strategies:
        try:
            sandbox = SandboxRunner(config.sandbox_command or ("molsandbox-shim",))
            sandbox.start()
            own_sandbox = True
        except Exception as exc:
            log.warning("sandbox unavailable (%s); function cells will be "
                        "Missing", exc)
            sandbox = None

    policies = {name: ("constant", value)
                for name, value in config.imputation_overrides.items()}

    train_idx = list(split.train.indices)
    valid_idx = list(split.valid.indices)
    test_idx = list(split.test.indices)
    y_train = split.read_targets(dataset, split.train)
    y_valid = split.read_targets(dataset, split.valid)

    reports: list[IterationReport] = []
    previous: list = []
    selected: list = []
    feedback = ""
    metric_name = "RMSE" if config.task == "regression" else "AUC-ROC"

    try:
        for iteration in range(1, config.iterations + 1):
            iter_dir = run_dir / f"iteration_{iteration:02d}"
            iter_dir.mkdir()
            (iter_dir / "models").mkdir()
            try:
                report, concepts = _run_iteration(
                    config, dataset, split, transport, sandbox, policies,
                    iteration, iter_dir, previous, selected, feedback,
                    train_idx, valid_idx, test_idx, y_train, y_valid)
            except MolConceptsError as exc:
                _json_dump(iter_dir / "error.json",
                           {"error_class": type(exc).__name__,
                            "message": str(exc), "iteration": iteration})
                raise
            reports.append(report)
            previous = concepts
            selected = [c for c in concepts
                        if c.name in set(report.kept_concepts)]
            best_metrics = report.metrics[report.best_predictor]["valid"]
            value = (best_metrics["rmse"] if config.task == "regression"
                     else best_metrics["auc_roc"])
            feedback = format_feedback(report.selection, (metric_name, value))
    finally:
        if own_sandbox and sandbox is not None:
            sandbox.close()

    _json_dump(run_dir / "run_report.json",
               {"iterations": [r.to_dict() for r in reports]})
    return reports


def _run_iteration(config, dataset, split, transport, sandbox, policies,
                   iteration, iter_dir, previous_concepts, selected_concepts,
                   feedback, train_idx, valid_idx, test_idx, y_train, y_valid):
    if iteration == 1:
        concepts = generate_concepts(config.task_description,
                                     config.concepts_per_iteration, transport,
                                     iteration=iteration)
    else:
        concepts = refine_concepts(
            previous_concepts, selected_concepts, feedback,
            config.task_description, config.concepts_per_iteration,
            transport, iteration)

    if 1 in config.strategies:
        unit_dictionary = generate_unit_dictionary(concepts, transport)
    else:
        unit_dictionary = UnitDictionary(
            {c.name: c.unit or "dimensionless" for c in concepts})
    unit_dictionary.to_json(iter_dir / "units.json")

    table = build_label_table(dataset.rows, concepts, set(config.strategies),
                              transport, unit_dictionary, sandbox,
                              on_unroutable="drop",
                              max_inflight=config.label_inflight)
    imputed = table.imputed(policies)
    imputed.to_csv(iter_dir / "label_table.csv")
    imputed.provenance_json(iter_dir / "provenance.json")

    names = imputed.column_names()
    X_all = imputed.matrix(names)
    X_train = X_all[train_idx]

    if config.task == "regression":
        selection = aic_stepwise(X_train, y_train, columns=names,
                                 direction=config.selector_direction)
    else:
        selection = rfe(X_train, y_train, columns=names,
                        target_count=config.rfe_target_count)
    _json_dump(iter_dir / "selection.json", selection.to_dict())

    kept_names = list(selection.kept)
    kept_concepts = sorted({imputed.column(name).concept for name in kept_names})
    kept_positions = [names.index(n) for n in kept_names]
    X_kept = X_all[:, kept_positions]

    models = _fit_predictors(config, config.task, X_kept[train_idx], y_train,
                             kept_names)
    y_test = split.read_targets(dataset, split.test)  # exactly once per iteration

    metrics = {}
    for predictor, model in models.items():
        save_model(model, iter_dir / "models" / f"{predictor}.json")
        metrics[predictor] = {
            "train": _split_metrics(config.task, model, X_kept[train_idx], y_train),
            "valid": _split_metrics(config.task, model, X_kept[valid_idx], y_valid),
            "test": _split_metrics(config.task, model, X_kept[test_idx], y_test),
        }
    best_predictor = max(
        metrics, key=lambda p: (_validation_score(config.task, metrics[p]["valid"]),
                                -config.predictors.index(p)))

    # record resolved tool routes on the concept specs
    tool_ids = {c.concept: c.tool_id for c in table.columns if c.route == "tool"}
    concepts = [with_tool_route(c, tool_ids[c.name]) if c.name in tool_ids else c
                for c in concepts]

    report = IterationReport(
        iteration=iteration,
        concepts_in=[concept_to_dict(c) for c in concepts],
        label_table=f"iteration_{iteration:02d}/label_table.csv",
        selection=selection,
        kept_concepts=kept_concepts,
        metrics=metrics,
        best_predictor=best_predictor,
    )
    _json_dump(iter_dir / "report.json", report.to_dict())
    return report, concepts
