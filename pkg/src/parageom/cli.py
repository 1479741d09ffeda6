"""Command-line entry point.

Three subcommands:

* ``verify <scene.json>``   — run the engine self-test plus the selected
  theorem suites on a scene file; human summary on stdout, full JSON report
  with ``--json PATH``.  ``--diagnostic`` disables the theorem-hypothesis
  gates, ``--no-timing`` strips timings for byte-reproducible reports.
* ``gen-quadric``           — emit a complete, deterministic quadric scene
  file for (n, seed).
* ``sweep <scene.json>``    — re-verify a perturbed scene over a list of
  epsilon values (gates off) and print a residual table.

Exit codes: 0 all selected suites pass, 1 a suite or the engine self-test
failed, 2 unreadable/invalid input, 3 numeric degeneracy (more than 10% of
samples unusable, or no admissible base point).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .errors import BasePointNotFound, GenerationError, ParageomError, ShapeError
from .hypersurface import (
    DEFAULT_NUM_SAMPLES,
    DEFAULT_SAMPLE_BOX,
    DEFAULT_TOLERANCES,
    ImmersionScene,
    Polynomial,
    find_base_point,
    graph_scene,
    hyperbola_scene,
    perturbed_scene,
    quadric_scene,
    tangent_basis,
)
from .paracomplex import QuadricSpec, random_quadric_spec
from .theorems import SCENE_SUITES, analyze_scene, run_suite

SCENE_VERSION = 1
REPORT_VERSION = 1
# Fraction of samples that may be lost to numeric degeneracy before the whole
# run is declared degenerate (exit 3).
MAX_SKIP_FRACTION = 0.10

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3


class SceneFileError(ValueError):
    """Scene file failed schema validation; message carries the field path."""


# ----------------------------------------------------------------------
# scene file schema


def _need(mapping, key, kind, path):
    if key not in mapping:
        raise SceneFileError(f"{path}: missing required field {key!r}")
    value = mapping[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SceneFileError(f"{path}.{key}: expected a number")
        return float(value)
    if not isinstance(value, kind):
        raise SceneFileError(f"{path}.{key}: expected {kind.__name__}")
    return value


def _matrix(data, path, rows=None, cols=None):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise SceneFileError(f"{path}: expected a numeric nested array") from None
    if arr.ndim != 2:
        raise SceneFileError(f"{path}: expected a matrix, got shape {arr.shape}")
    if rows is not None and arr.shape != (rows, cols):
        raise SceneFileError(f"{path}: expected shape ({rows}, {cols}), got {arr.shape}")
    return arr


def _vector(data, path, length=None):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise SceneFileError(f"{path}: expected a numeric array") from None
    if arr.ndim != 1 or (length is not None and arr.shape != (length,)):
        raise SceneFileError(f"{path}: expected a vector of length {length}")
    return arr


def _polynomial(data, m, path):
    if not isinstance(data, dict) or "terms" not in data:
        raise SceneFileError(f"{path}: expected an object with a 'terms' list")
    terms = []
    for k, term in enumerate(data["terms"]):
        if (
            not isinstance(term, list)
            or len(term) != 2
            or not isinstance(term[0], list)
        ):
            raise SceneFileError(f"{path}.terms[{k}]: expected [[exponents], coeff]")
        terms.append((tuple(int(a) for a in term[0]), float(term[1])))
    try:
        return Polynomial(m, terms)
    except ShapeError as exc:
        raise SceneFileError(f"{path}: {exc}") from None


def load_scene_file(path: str):
    """Parse and validate a scene file; returns (scene, suites, raw dict)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SceneFileError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise SceneFileError(f"{path}: top level must be an object")
    version = _need(raw, "version", int, "$")
    if version != SCENE_VERSION:
        raise SceneFileError(f"$.version: expected {SCENE_VERSION}, got {version}")

    tolerances = dict(DEFAULT_TOLERANCES)
    if "tolerances" in raw:
        tols = _need(raw, "tolerances", dict, "$")
        for key in tols:
            if key not in ("engine", "theorem"):
                raise SceneFileError(f"$.tolerances.{key}: unknown tolerance")
            tolerances[key] = _need(tols, key, float, "$.tolerances")
    if any(t <= 0 for t in tolerances.values()):
        raise SceneFileError("$.tolerances: tolerances must be positive")

    suites = raw.get("suites", "all")
    if suites == "all":
        suites = list(SCENE_SUITES)
    elif isinstance(suites, list):
        for s in suites:
            if s not in SCENE_SUITES:
                raise SceneFileError(
                    f"$.suites: unknown suite {s!r} (choose from {', '.join(SCENE_SUITES)})"
                )
    else:
        raise SceneFileError("$.suites: expected 'all' or a list of suite names")

    sdict = _need(raw, "scene", dict, "$")
    family = _need(sdict, "family", str, "$.scene")
    n = _need(sdict, "n", int, "$.scene")
    if n < 0:
        raise SceneFileError("$.scene.n: must be >= 0")
    seed = int(sdict.get("seed", 0))
    num_samples = int(sdict.get("num_samples", DEFAULT_NUM_SAMPLES))
    if num_samples < 1:
        raise SceneFileError("$.scene.num_samples: must be >= 1")
    box = float(sdict.get("sample_box", DEFAULT_SAMPLE_BOX))
    if box <= 0:
        raise SceneFileError("$.scene.sample_box: must be positive")
    params = sdict.get("params", {})
    if not isinstance(params, dict):
        raise SceneFileError("$.scene.params: expected an object")

    common = dict(
        seed=seed, num_samples=num_samples, sample_box=box, tolerances=tolerances
    )
    try:
        scene = _build_scene(family, n, params, common)
    except (ParageomError, GenerationError) as exc:
        raise SceneFileError(f"$.scene: {exc}") from None
    return scene, suites, raw


def _build_scene(family, n, params, common) -> ImmersionScene:
    m, dim = 2 * n + 1, 2 * n + 2
    if family == "hyperbola":
        if n != 0:
            raise SceneFileError("$.scene.n: hyperbola scenes require n = 0")
        return hyperbola_scene(**common)

    if family in ("quadric_radial", "perturbed_transversal"):
        qd = params.get("quadric")
        if not isinstance(qd, dict):
            raise SceneFileError("$.scene.params.quadric: expected an object")
        spec = QuadricSpec(
            n=n,
            P=_matrix(qd.get("P"), "$.scene.params.quadric.P", n + 1, n + 1),
            R_skew=_matrix(qd.get("R_skew"), "$.scene.params.quadric.R_skew", n + 1, n + 1),
        )
        kw = dict(common)
        if "base_point" in params:
            kw["base_point"] = _vector(params["base_point"], "$.scene.params.base_point", dim)
        if "tangent_basis" in params:
            kw["basis"] = _matrix(params["tangent_basis"], "$.scene.params.tangent_basis", m, dim)
        if family == "quadric_radial":
            return quadric_scene(spec, **kw)
        if "epsilon" not in params:
            raise SceneFileError("$.scene.params.epsilon: required for perturbed scenes")
        if "direction" in params:
            kw["direction"] = _vector(params["direction"], "$.scene.params.direction", dim)
        return perturbed_scene(spec, float(params["epsilon"]), **kw)

    if family == "explicit_graph":
        graph = _polynomial(params.get("graph"), m, "$.scene.params.graph")
        transversal = None
        if "transversal" in params:
            tlist = params["transversal"]
            if not isinstance(tlist, list) or len(tlist) != dim:
                raise SceneFileError(
                    f"$.scene.params.transversal: expected {dim} polynomials"
                )
            transversal = [
                _polynomial(t, m, f"$.scene.params.transversal[{k}]")
                for k, t in enumerate(tlist)
            ]
        return graph_scene(graph, transversal, **common)

    raise SceneFileError(f"$.scene.family: unknown family {family!r}")


# ----------------------------------------------------------------------
# verification runs


def run_verification(scene: ImmersionScene, suites, diagnostic=False, timing=True):
    """Run the engine self-test and the selected suites; returns
    (report dict, exit code)."""
    analyses = analyze_scene(scene)
    total = len(analyses)
    usable = [a for a in analyses if not isinstance(a, str)]
    degenerate = {i for i, a in enumerate(analyses) if isinstance(a, str)}

    engine_tol = float(scene.tolerances["engine"])
    if usable:
        worst = np.max([a.fundamental for a in usable], axis=0)
    else:
        worst = np.full(4, np.inf)
    engine = {
        "gauss": float(worst[0]),
        "codazzi_h": float(worst[1]),
        "codazzi_s": float(worst[2]),
        "ricci": float(worst[3]),
        "tolerance": engine_tol,
        "passed": bool(np.all(worst <= engine_tol)),
    }

    suite_reports = {}
    timings = {}
    for suite in suites:
        t0 = time.perf_counter()
        report = run_suite(scene, suite, diagnostic=diagnostic, analyses=analyses)
        timings[suite] = time.perf_counter() - t0
        suite_reports[suite] = report
        degenerate.update(report.degenerate_indices())

    skip_fraction = len(degenerate) / total if total else 1.0
    # A fully gate-skipped suite was selected but could not be verified, so
    # it cannot contribute a pass.
    failed = (not engine["passed"]) or any(
        r.status in ("failed", "skipped") for r in suite_reports.values()
    )
    overall = "fail" if failed else "pass"
    if skip_fraction > MAX_SKIP_FRACTION:
        overall = "degenerate"

    report = {
        "version": REPORT_VERSION,
        "diagnostic": diagnostic,
        "engine_self_test": engine,
        "suites": {k: v.to_dict() for k, v in suite_reports.items()},
        "samples": {
            "total": total,
            "degenerate": len(degenerate),
            "skip_fraction": skip_fraction,
        },
        "overall": overall,
    }
    if timing:
        report["timing"] = {k: round(v, 6) for k, v in timings.items()}
    code = {
        "pass": EXIT_PASS,
        "fail": EXIT_FAIL,
        "degenerate": EXIT_DEGENERATE,
    }[overall]
    return report, code


def _print_summary(scene, report):
    s = report["samples"]
    print(
        f"scene: {scene.family} n={scene.n} "
        f"({s['total']} samples, {s['degenerate']} degenerate)"
    )
    e = report["engine_self_test"]
    print(
        "engine self-test: "
        f"gauss {e['gauss']:.2e}  codazzi_h {e['codazzi_h']:.2e}  "
        f"codazzi_s {e['codazzi_s']:.2e}  ricci {e['ricci']:.2e}  "
        f"[{'PASS' if e['passed'] else 'FAIL'}]"
    )
    for name, rep in report["suites"].items():
        status = rep["status"].upper()
        print(
            f"{name:<16} max {rep['max_residual']:.2e}  "
            f"skips {rep['num_skipped']:>2}  [{status}]"
        )
    print(f"overall: {report['overall'].upper()}")


def cmd_verify(path, json_path=None, diagnostic=False, no_timing=False) -> int:
    try:
        scene, suites, raw = load_scene_file(path)
    except (OSError, SceneFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report, code = run_verification(
        scene, suites, diagnostic=diagnostic, timing=not no_timing
    )
    report["scene"] = raw["scene"]
    _print_summary(scene, report)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


# ----------------------------------------------------------------------
# scene generation


def quadric_scene_dict(n: int, seed: int, num_samples=DEFAULT_NUM_SAMPLES,
                       sample_box=DEFAULT_SAMPLE_BOX) -> dict:
    """Deterministic scene-file dict for a random quadric with C = x."""
    spec = random_quadric_spec(n, seed)
    x0 = find_base_point(spec, np.random.default_rng([seed, 1]))
    basis = tangent_basis(spec, x0)
    return {
        "version": SCENE_VERSION,
        "scene": {
            "family": "quadric_radial",
            "n": n,
            "seed": seed,
            "num_samples": num_samples,
            "sample_box": sample_box,
            "params": {
                "quadric": spec.to_dict(),
                "base_point": x0.tolist(),
                "tangent_basis": basis.tolist(),
            },
        },
        "tolerances": dict(DEFAULT_TOLERANCES),
        "suites": "all",
    }


def cmd_gen_quadric(n, seed, out, num_samples=DEFAULT_NUM_SAMPLES,
                    sample_box=DEFAULT_SAMPLE_BOX) -> int:
    if n < 0:
        print("error: --n must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        data = quadric_scene_dict(n, seed, num_samples, sample_box)
    except BasePointNotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    try:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {out}")
    return EXIT_PASS


# ----------------------------------------------------------------------
# parameter sweeps


def cmd_sweep(path, param="epsilon", values=()) -> int:
    if param != "epsilon":
        print(f"error: unsupported sweep parameter {param!r}", file=sys.stderr)
        return EXIT_INPUT
    if not values:
        print("error: empty sweep value list", file=sys.stderr)
        return EXIT_INPUT
    try:
        scene, _, _ = load_scene_file(path)
    except (OSError, SceneFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if scene.family != "perturbed_transversal":
        print(
            "error: sweep over epsilon needs a perturbed_transversal scene",
            file=sys.stderr,
        )
        return EXIT_INPUT

    print(f"{'epsilon':>10}  {'metric':>12}  {'s_plus_id':>12}  {'tau':>12}")
    worst_code = EXIT_PASS
    for eps in values:
        swept = perturbed_scene(
            scene.params["quadric"],
            epsilon=float(eps),
            base_point=scene.params["base_point"],
            basis=scene.params["basis"],
            direction=scene.params["direction"],
            tolerances=scene.tolerances,
            samples=scene.samples,
        )
        report, code = run_verification(
            swept, ["METRIC", "THM_STAU"], diagnostic=True, timing=False
        )
        if code == EXIT_DEGENERATE:
            worst_code = EXIT_DEGENERATE
        metric = max(
            (s["identities"].get("metric", 0.0)
             for s in report["suites"]["METRIC"]["per_sample"] if not s["skipped"]),
            default=float("nan"),
        )
        stau = report["suites"]["THM_STAU"]["per_sample"]
        s_plus = max(
            (s["identities"].get("s_plus_id", 0.0) for s in stau if not s["skipped"]),
            default=float("nan"),
        )
        tau = max(
            (s["identities"].get("tau_norm", 0.0) for s in stau if not s["skipped"]),
            default=float("nan"),
        )
        print(f"{eps:>10.4g}  {metric:>12.4e}  {s_plus:>12.4e}  {tau:>12.4e}")
    return worst_code


# ----------------------------------------------------------------------
# argument parsing


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="parageom",
        description="Verify induced almost paracontact structures on affine "
        "hypersurfaces at sampled chart points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run suites from a scene file")
    p_verify.add_argument("scene", help="scene file (JSON, version 1)")
    p_verify.add_argument("--json", metavar="PATH", help="write the full JSON report")
    p_verify.add_argument(
        "--diagnostic", action="store_true",
        help="disable theorem-hypothesis gates (negative testing)",
    )
    p_verify.add_argument(
        "--no-timing", action="store_true", help="omit timings from the JSON report"
    )

    p_gen = sub.add_parser("gen-quadric", help="emit a random quadric scene file")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--num-samples", type=int, default=DEFAULT_NUM_SAMPLES)
    p_gen.add_argument("--sample-box", type=float, default=DEFAULT_SAMPLE_BOX)

    p_sweep = sub.add_parser("sweep", help="sweep a scene parameter, gates off")
    p_sweep.add_argument("scene")
    p_sweep.add_argument("--param", default="epsilon", choices=["epsilon"])
    p_sweep.add_argument(
        "--values", required=True,
        help="comma-separated parameter values, e.g. 0.1,0.01,0.001",
    )
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = _parse_args(argv)
    if args.command == "verify":
        return cmd_verify(
            args.scene,
            json_path=args.json,
            diagnostic=args.diagnostic,
            no_timing=args.no_timing,
        )
    if args.command == "gen-quadric":
        return cmd_gen_quadric(
            args.n, args.seed, args.out, args.num_samples, args.sample_box
        )
    values = [v for v in args.values.split(",") if v.strip()]
    try:
        values = [float(v) for v in values]
    except ValueError:
        print(f"error: bad sweep values {args.values!r}", file=sys.stderr)
        return EXIT_INPUT
    return cmd_sweep(args.scene, args.param, values)


if __name__ == "__main__":
    raise SystemExit(main())
