"""Command-line surface: run, validate, and list experiment descriptors.

Artifacts are deterministic functions of the descriptor: re-running with
the same master seed reproduces byte-identical files. All outputs are
written to temporary files and renamed only after every artifact of the
run has been produced, so failed runs leave nothing behind.

Exit codes: 0 success, 2 validation failure, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
from pathlib import Path

from .ensembles import write_histogram_csv
from .errors import (GenerationFailureError, InvalidParameterError,
                     NumericalFailureError, SizeCapError)
from .experiments import (BUNDLED_EXPERIMENTS, EXPERIMENT_NOTES, KIND_QLBIT_PRODUCT,
                          KIND_SINGLE, ExperimentDescriptor, ensemble_spectrum,
                          iter_samples)
from .products import write_composed_spectrum_csv
from .projection import project_alphas
from .rng import RngSeed

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _error_report(kind: str, errors: list[str]) -> str:
    return json.dumps({"status": "error", "kind": kind, "errors": errors},
                      indent=2, sort_keys=True)


def _load_descriptor(ref: str) -> ExperimentDescriptor:
    if ref in BUNDLED_EXPERIMENTS:
        return BUNDLED_EXPERIMENTS[ref]
    path = Path(ref)
    if not path.is_file():
        raise InvalidParameterError(
            f"{ref!r} is neither a bundled experiment nor a descriptor file")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"descriptor is not valid JSON: {exc}") from exc
    return ExperimentDescriptor.from_json_dict(data)


def _spectrum_csv_text(sample, kind: str) -> str:
    buf = io.StringIO()
    if kind == KIND_SINGLE:
        buf.write("index,eigenvalue,label\n")
        for i, flat in enumerate(sample.composed.descending_order()):
            lab = sample.labels[int(flat)]
            name = lab.kind if lab.kind != "hybrid" else f"hybrid({lab.k})"
            buf.write(f"{i},{sample.composed.values[flat]!r},{name}\n")
    else:
        write_composed_spectrum_csv(sample.composed, buf, sample.emergent_index_sets)
    return buf.getvalue()


def _projection_json_text(sample) -> str:
    top_labels = (0,) * len(sample.factors)
    vectors = [f.spectrum.eigenvectors[:, 0] for f in sample.factors]
    report = project_alphas(None, [f.qlbit for f in sample.factors],
                            factor_vectors=vectors,
                            eigenvalue=sample.composed.value_of(top_labels),
                            labels=top_labels)
    return json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _metadata_json_text(desc: ExperimentDescriptor, artifacts: list[str]) -> str:
    master = RngSeed(desc.master_seed)
    meta = {
        "descriptor": desc.to_json_dict(),
        "sample_seeds": [master.derive(i).seed for i in range(desc.n_samples)],
        "artifacts": sorted(artifacts),
    }
    return json.dumps(meta, indent=2, sort_keys=True) + "\n"


def _run(desc: ExperimentDescriptor, out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    first = next(iter_samples(desc, n_samples=1))
    histogram = ensemble_spectrum(desc)

    artifacts: dict[str, str] = {}
    artifacts[f"{desc.name}_spectrum.csv"] = _spectrum_csv_text(first, desc.kind)
    buf = io.StringIO()
    write_histogram_csv(histogram, buf)
    artifacts[f"{desc.name}_histogram.csv"] = buf.getvalue()
    if desc.kind == KIND_QLBIT_PRODUCT:
        artifacts[f"{desc.name}_projection.json"] = _projection_json_text(first)
    names = sorted(artifacts) + [f"{desc.name}_metadata.json"]
    artifacts[f"{desc.name}_metadata.json"] = _metadata_json_text(desc, names)

    # Stage everything, then rename: no partial outputs on failure.
    staged = []
    written = []
    try:
        for name, text in sorted(artifacts.items()):
            tmp = out_dir / f".{name}.tmp"
            tmp.write_text(text)
            staged.append((tmp, out_dir / name))
        for tmp, final in staged:
            os.replace(tmp, final)
            written.append(final)
    except BaseException:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise
    return written


def cmd_run(args) -> int:
    try:
        desc = _load_descriptor(args.descriptor)
        if args.seed is not None:
            desc = desc.with_overrides(master_seed=args.seed)
        if args.samples is not None:
            desc = desc.with_overrides(n_samples=args.samples)
        errors = desc.validate()
        if errors:
            print(_error_report("validation", errors))
            return EXIT_VALIDATION
    except InvalidParameterError as exc:
        print(_error_report("validation", [str(exc)]))
        return EXIT_VALIDATION
    try:
        written = _run(desc, Path(args.out))
    except (InvalidParameterError, SizeCapError) as exc:
        print(_error_report("validation", [str(exc)]))
        return EXIT_VALIDATION
    except (NumericalFailureError, GenerationFailureError) as exc:
        print(_error_report("numerical", [str(exc)]))
        return EXIT_NUMERICAL
    print(json.dumps({"status": "ok", "name": desc.name,
                      "artifacts": [str(p) for p in written]},
                     indent=2, sort_keys=True))
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        desc = _load_descriptor(args.descriptor)
        errors = desc.validate()
    except InvalidParameterError as exc:
        print(_error_report("validation", [str(exc)]))
        return EXIT_VALIDATION
    if errors:
        print(_error_report("validation", errors))
        return EXIT_VALIDATION
    print(json.dumps({"status": "ok", "name": desc.name}, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_list(args) -> int:
    for name in sorted(BUNDLED_EXPERIMENTS):
        print(f"{name}\t{EXPERIMENT_NOTES.get(name, '')}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlgraph",
        description="Spectra of coupled-network products and qubit-basis projections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment descriptor")
    p_run.add_argument("descriptor", help="bundled experiment name or descriptor JSON path")
    p_run.add_argument("--seed", type=int, default=None, help="override the master seed")
    p_run.add_argument("--samples", type=int, default=None, help="override the sample count")
    p_run.add_argument("--out", default=".", help="output directory (default: cwd)")
    p_run.set_defaults(func=cmd_run)

    p_val = sub.add_parser("validate", help="validate a descriptor without running")
    p_val.add_argument("descriptor", help="bundled experiment name or descriptor JSON path")
    p_val.set_defaults(func=cmd_validate)

    p_list = sub.add_parser("list-experiments", help="list bundled figure experiments")
    p_list.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
