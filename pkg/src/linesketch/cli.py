"""Batch entry points.

Subcommands: ``gen-stimuli`` (noise-controlled stimulus files), ``analyze``
(one stimulus/sketch pair to a report), ``report`` (corpus reports plus
error-vs-noise regression SVGs), and ``serve`` (the study HTTP service).

Exit codes: 0 ok, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .classify import DatasetProperties, GradeThresholds
from .core import (
    DEFAULT_RESAMPLE_COUNT,
    CanvasSpec,
    load_series_csv,
    load_stroke_json,
    rescale_to_canvas,
    save_series_csv,
)
from .errors import LineSketchError
from .noise import NoiseLevel, measure_snr
from .report import analyze_pair, corpus_report, dump_report_json
from .service import DATA_DIR_ENV, ServiceConfig, StudyService, serve
from .study import make_stimulus
from .svgplot import line_chart_svg, scatter_regression_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linesketch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-stimuli", help="inject noise into a dataset at a target SNR")
    gen.add_argument("--data", required=True, type=Path, help="dataset CSV (x,y)")
    gen.add_argument("--snr", required=True, help="noise level: none|30|20|10|5")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, type=Path, help="output directory")
    gen.add_argument("--no-svg", action="store_true", help="skip the rendered SVG")

    ana = sub.add_parser("analyze", help="score one sketch against one stimulus")
    ana.add_argument("--stimulus", required=True, type=Path, help="stimulus CSV")
    ana.add_argument("--sketch", required=True, type=Path, help="stroke JSON or series CSV")
    ana.add_argument("--out", required=True, type=Path, help="report JSON path")
    ana.add_argument("--props", type=Path, help="dataset properties JSON")
    ana.add_argument("--thresholds", type=Path, help="grade thresholds JSON")
    ana.add_argument("--n-target", type=int, default=DEFAULT_RESAMPLE_COUNT)

    rep = sub.add_parser("report", help="corpus reports + error-vs-noise regressions")
    rep.add_argument("--sessions", required=True, type=Path, help="session store directory")
    rep.add_argument("--data", type=Path, help=f"dataset directory (default ${DATA_DIR_ENV})")
    rep.add_argument("--out", required=True, type=Path, help="report JSON path")
    rep.add_argument("--svg", type=Path, help="directory for per-dataset scatter SVGs")
    rep.add_argument("--seed", type=int, default=7, help="stimulus seed used by the service")
    rep.add_argument("--n-target", type=int, default=DEFAULT_RESAMPLE_COUNT)
    rep.add_argument("--jobs", type=int, default=4, help="parallel analysis workers")

    srv = sub.add_parser("serve", help="run the study HTTP service")
    srv.add_argument("--port", type=int, default=8750)
    srv.add_argument("--data", type=Path, help=f"dataset directory (default ${DATA_DIR_ENV})")
    srv.add_argument("--seed", type=int, default=7)
    srv.add_argument("--n-target", type=int, default=DEFAULT_RESAMPLE_COUNT)
    return parser


def _resolve_data_dir(value: Path | None) -> Path:
    if value is not None:
        return value
    env = os.environ.get(DATA_DIR_ENV)
    if not env:
        raise LineSketchError(f"no data directory: pass --data or set ${DATA_DIR_ENV}")
    return Path(env)


def _cmd_gen_stimuli(args) -> int:
    series = load_series_csv(args.data)
    level = NoiseLevel.from_token(args.snr)
    stimulus = make_stimulus(series, level, args.seed, dataset_index=0)
    args.out.mkdir(parents=True, exist_ok=True)
    stem = args.data.stem
    out_csv = args.out / f"{stem}__{level.value}.csv"
    save_series_csv(stimulus, out_csv)
    if not args.no_svg:
        canvas = CanvasSpec()
        svg = line_chart_svg(rescale_to_canvas(stimulus, canvas), canvas)
        (args.out / f"{stem}__{level.value}.svg").write_text(svg)
    if level is NoiseLevel.NONE:
        print(f"{out_csv}: unchanged control stimulus")
    else:
        print(f"{out_csv}: measured SNR {measure_snr(series, stimulus):.2f} dB (target {level.target_snr_db:g})")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    stimulus = load_series_csv(args.stimulus)
    if args.sketch.suffix.lower() == ".json":
        sketch = load_stroke_json(args.sketch)
    else:
        sketch = load_series_csv(args.sketch)
    props = None
    if args.props:
        import json

        with open(args.props) as fh:
            props = DatasetProperties.from_json(json.load(fh))
    thresholds = GradeThresholds.from_file(args.thresholds) if args.thresholds else GradeThresholds()
    report = analyze_pair(
        stimulus,
        sketch,
        props=props,
        thresholds=thresholds,
        n_target=args.n_target,
        dataset=args.stimulus.stem,
    )
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(dump_report_json(report.to_json()))
    print(f"{args.out}: cluster={report.cluster.value}")
    return EXIT_OK


def _cmd_report(args) -> int:
    data_dir = _resolve_data_dir(args.data)
    config = ServiceConfig(
        data_dir=data_dir,
        seed=args.seed,
        n_target=args.n_target,
        store_dir=args.sessions,
        allow_custom_counts=True,
    )
    service = StudyService(config)
    jobs = []
    for session_id in service.store.list_ids():
        session = service.get_session(session_id)
        for index, stroke in enumerate(session.accepted):
            jobs.append((session_id, session, index, stroke))

    def one(job):
        session_id, session, index, stroke = job
        assignment = session.plan.assignments[index]
        return analyze_pair(
            service.stimulus_series(assignment.dataset, assignment.level),
            stroke,
            canvas=config.canvas,
            props=service.properties.get(assignment.dataset),
            n_target=config.n_target,
            session=session_id,
            participant=session.participant,
            stimulus_index=index,
            dataset=assignment.dataset,
            noise_level=assignment.level,
        )

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        all_reports = list(pool.map(one, jobs))
    payload = corpus_report(all_reports)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(dump_report_json(payload))
    print(f"{args.out}: {len(all_reports)} pair reports, {len(payload['regressions'])} dataset regressions")

    if args.svg:
        from .report import regression_points

        args.svg.mkdir(parents=True, exist_ok=True)
        summary = payload["regressions"]
        count = 0
        for dataset, metrics in summary.items():
            for metric, fit in metrics.items():
                points = regression_points(all_reports, dataset, metric)
                svg = scatter_regression_svg(
                    points,
                    slope=fit["slope"],
                    intercept=fit["intercept"],
                    title=f"{dataset}: {metric} vs noise",
                )
                (args.svg / f"{dataset}__{metric}.svg").write_text(svg)
                count += 1
        print(f"{args.svg}: {count} scatter plots")
    return EXIT_OK


def _cmd_serve(args) -> int:
    data_dir = _resolve_data_dir(args.data)
    config = ServiceConfig(data_dir=data_dir, seed=args.seed, n_target=args.n_target)
    serve(config, args.port)
    return EXIT_OK


_COMMANDS = {
    "gen-stimuli": _cmd_gen_stimuli,
    "analyze": _cmd_analyze,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except LineSketchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
