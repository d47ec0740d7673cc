"""Command-line entry point: ``mubwigner <subcommand> [options]``.

Exit codes: 0 success, 1 verification failed, 2 invalid input,
3 resource limit reached.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import EnumerationCapError, InvalidStateError, ResourceLimitError, UnsupportedDimensionError

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3

log = logging.getLogger("mubwigner")


class UsageError(Exception):
    """Invalid option combination or value; maps to exit code 2."""


@dataclass
class RunConfig:
    subcommand: str
    d: int | None = None
    out: Path | None = None
    json: bool = False
    seed: int = 0
    threads: int = 0
    tol: float | None = None
    backend: str = "dd"
    verbose: int = 0
    options: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.d is not None and self.d < 1:
            raise UsageError(f"--d must be a positive integer, got {self.d}")
        if self.threads < 0:
            raise UsageError("--threads must be >= 0")
        if self.tol is not None and not (self.tol >= 0 and np.isfinite(self.tol)):
            raise UsageError("--tol must be a finite non-negative number")
        if self.seed < 0:
            raise UsageError("--seed must be >= 0")
        for key in ("time_limit", "max_rays", "samples", "max_denominator"):
            v = self.options.get(key)
            if v is not None and v <= 0:
                raise UsageError(f"--{key.replace('_', '-')} must be positive")
        for key in ("state", "pmatrix", "definition", "from_h", "from_v"):
            v = self.options.get(key)
            if v is not None and v not in _NAMED_STATES and not Path(v).is_file():
                raise UsageError(f"input file not found: {v}")
        return self


_NAMED_STATES = ("maximally-mixed",)


def load_schema(command: str) -> dict:
    """JSON schema document for the output of ``command``."""
    from importlib.resources import files

    return json.loads(files("mubwigner").joinpath("schemas", f"{command}.v1.json").read_text())


def _fraction_json(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _emit(cfg: RunConfig, payload: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, "command": cfg.subcommand, **payload}
    text = json.dumps(payload, indent=2)
    if cfg.out is not None:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(text + "\n")
        log.info("wrote %s", cfg.out)
    if cfg.json or cfg.out is None:
        print(text)


def _require_d(cfg: RunConfig) -> int:
    if cfg.d is None:
        raise UsageError("--d is required")
    return cfg.d


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"{path}: malformed JSON ({exc})") from None


# subcommands -------------------------------------------------------------

def cmd_striations(cfg: RunConfig) -> int:
    from .gf import field_spec
    from .phasespace import build_striations, striations_to_json, verify_striation_properties

    sset = build_striations(field_spec(_require_d(cfg)))
    report = verify_striation_properties(sset)
    _emit(cfg, {**striations_to_json(sset), "properties": report.to_json(), "all_hold": report.all_hold})
    return EXIT_OK if report.all_hold else EXIT_FAILED


def _label_str(label) -> str:
    if isinstance(label, str):
        return label
    if isinstance(label[0], tuple):
        return ".".join(f"X{a}Z{b}" for a, b in label)
    return f"X{label[0]}Z{label[1]}"


def cmd_mub(cfg: RunConfig) -> int:
    from .gf import field_spec
    from .mub import STABILIZER_ORDERS, build_mubs, check_complete, check_orthonormal, check_unbiased, mubs_to_json, stabilizer_check

    d = _require_d(cfg)
    m = build_mubs(field_spec(d))
    tol = cfg.tol if cfg.tol is not None else 1e-10
    metrics = {
        "orthonormality_deviation": check_orthonormal(m),
        "unbiasedness_deviation": check_unbiased(m),
        "completeness_deviation": check_complete(m),
    }
    ok = all(v <= tol for v in metrics.values())
    payload = {"d": d, "n_bases": len(m.bases), "metrics": metrics, "tolerance": tol, "passed": ok}
    if not cfg.options.get("check_only"):
        payload["bases"] = mubs_to_json(m)
        if d in STABILIZER_ORDERS:
            stab = stabilizer_check(m)
            payload["stabilizers"] = [[_label_str(lab) for lab in labs] for labs in stab]
            ok &= all(len(labs) == d for labs in stab)
            payload["passed"] = ok
    _emit(cfg, payload)
    return EXIT_OK if ok else EXIT_FAILED


def _load_state(spec: str, d: int):
    from .wigner import DensityMatrix, maximally_mixed

    if spec == "maximally-mixed":
        return maximally_mixed(d)
    obj = _load_json(spec)
    if isinstance(obj, dict):
        obj = obj.get("rho", obj.get("state"))
    return DensityMatrix.from_json(obj, d)


def _load_definition(path: str, d: int):
    from .wigner import WignerDefinition

    obj = _load_json(path)
    try:
        return WignerDefinition(d, obj["striation_perm"], obj["line_perms"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidStateError(f"{path}: malformed definition ({exc})") from None


def cmd_eval(cfg: RunConfig) -> int:
    from .gf import field_spec
    from .mub import build_mubs
    from .phasespace import build_striations
    from .wigner import WignerDefinition, enumerate_definitions, line_sum_check, p_matrix_from_state, wigner_from_p

    d = _require_d(cfg)
    if not cfg.options.get("state"):
        raise UsageError("eval needs --state FILE (or --state maximally-mixed)")
    spec = field_spec(d)
    m, s = build_mubs(spec), build_striations(spec)
    rho = _load_state(cfg.options["state"], d)
    tol = cfg.tol if cfg.tol is not None else 1e-9
    rho.require_psd(tol)
    p = p_matrix_from_state(rho, m)
    if cfg.options.get("definition"):
        defn = _load_definition(cfg.options["definition"], d)
    else:
        defn = WignerDefinition.canonical(d)
    w = wigner_from_p(p, defn, s)
    payload = {
        "d": d,
        "definition": defn.to_json(),
        "p": [[float(x) for x in row] for row in p.p],
        "W": w.to_json(),
        "negativity": w.negativity(),
        "sum": float(w.total),
        "line_sum_deviation": line_sum_check(w, defn, s, p),
    }
    if cfg.options.get("all_definitions"):
        worst = None
        for dfn in enumerate_definitions(d):
            neg = wigner_from_p(p, dfn, s).negativity()
            if worst is None or neg["min_entry"] < worst[0]["min_entry"]:
                worst = (neg, dfn)
        payload["all_definitions"] = {"min_entry": worst[0]["min_entry"], "worst_definition": worst[1].to_json()}
    _emit(cfg, payload)
    return EXIT_OK


def _load_pmatrix(path: str, d: int):
    from .wigner import PMatrix

    obj = _load_json(path)
    if isinstance(obj, dict):
        obj = obj.get("p")
    try:
        p = PMatrix.from_rows(obj)
    except (TypeError, ValueError, IndexError) as exc:
        raise InvalidStateError(f"{path}: malformed probability table ({exc})") from None
    if p.d != d:
        raise InvalidStateError(f"{path}: table is for d={p.d}, expected d={d}")
    return p


def cmd_cd(cfg: RunConfig) -> int:
    from .cd import cd_membership, verify_conjecture
    from .polytope.ops import BACKENDS

    d = _require_d(cfg)
    opts = cfg.options
    if not (opts.get("verify") or opts.get("state") or opts.get("pmatrix")):
        raise UsageError("cd needs --verify and/or --state FILE / --pmatrix FILE")
    if cfg.backend not in BACKENDS:
        raise UsageError(f"--backend must be one of {BACKENDS}")
    payload = {"d": d}
    code = EXIT_OK
    verified = None
    if opts.get("verify"):
        kwargs = {"n_threads": cfg.threads}
        for key in ("time_limit", "max_rays", "checkpoint", "order"):
            if opts.get(key) is not None:
                kwargs[key] = opts[key]
        if cfg.backend == "pivot":
            kwargs = {}
        try:
            report = verify_conjecture(d, backend=cfg.backend, **kwargs)
        except ResourceLimitError as exc:
            payload["error"] = str(exc)
            payload["checkpoint"] = exc.checkpoint
            payload["progress"] = exc.progress
            _emit(cfg, payload)
            print(f"resource limit reached; checkpoint: {exc.checkpoint}", file=sys.stderr)
            return EXIT_LIMIT
        payload["verification"] = report.to_json()
        payload["passed"] = report.equal
        verified = report.equal
        code = EXIT_OK if report.equal else EXIT_FAILED
    if opts.get("state") or opts.get("pmatrix"):
        mode = opts.get("mode") or ("exact" if opts.get("pmatrix") else "float")
        item = _load_pmatrix(opts["pmatrix"], d) if opts.get("pmatrix") else _load_state(opts["state"], d)
        tol = cfg.tol if cfg.tol is not None else 1e-9
        verdict = cd_membership(
            item, mode=mode, tol=tol,
            max_denominator=opts.get("max_denominator") or 10 ** 9,
            conjecture_verified=verified,
        )
        payload["membership"] = verdict.to_json()
    _emit(cfg, payload)
    return code


def cmd_classify(cfg: RunConfig) -> int:
    from .gf import field_spec
    from .phasespace import build_striations
    from .wigner import classify_qubit_definitions

    if _require_d(cfg) != 2:
        raise UsageError("classify is defined for d = 2 only")
    res = classify_qubit_definitions(build_striations(field_spec(2)))
    classes = [
        {
            "label": c.label,
            "vertices": [[_fraction_json(x) for x in v] for v in c.vertices],
            "inequalities": [{"a": [_fraction_json(x) for x in a], "b": _fraction_json(b)} for a, b in c.inequalities.inequalities],
            "definition_count": len(c.definitions),
        }
        for c in res.classes
    ]
    ok = sorted(c["label"] for c in classes) == ["T1", "T2"] and sum(res.counts.values()) == 48
    _emit(cfg, {"d": 2, "n_classes": len(classes), "classes": classes, "counts": res.counts, "total_definitions": sum(res.counts.values()), "passed": ok})
    return EXIT_OK if ok else EXIT_FAILED


def _edges(h, verts) -> list:
    """Vertex pairs whose common tight facets have rank dim - 1."""
    from .polytope.linalg import exact_rank

    tight = [set(np.nonzero(h.slack_signs(v) == 0)[0]) for v in verts]
    out = []
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            common = sorted(tight[a] & tight[b])
            if len(common) >= h.dim - 1 and exact_rank([h.inequalities[k][0] for k in common], h.dim) == h.dim - 1:
                out.append((a, b))
    return out


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def cmd_plotdata(cfg: RunConfig) -> int:
    from .cd import build_cd_inequalities
    from .gf import field_spec
    from .mub import build_mubs
    from .phasespace import build_striations
    from .polytope.ops import vertex_enumeration
    from .wigner import classify_qubit_definitions, p_matrix_from_state, pure_state

    if _require_d(cfg) != 2:
        raise UsageError("plotdata is defined for d = 2 only")
    outdir = cfg.out or Path("plotdata")
    outdir.mkdir(parents=True, exist_ok=True)
    res = classify_qubit_definitions(build_striations(field_spec(2)))
    solids = {c.label.lower(): c.inequalities for c in res.classes}
    solids["octahedron"] = build_cd_inequalities(2).h
    files = []
    header = ["p11", "p21", "p31"]
    for name, h in solids.items():
        verts = vertex_enumeration(h).vertices
        _write_csv(outdir / f"{name}_vertices.csv", header, [[float(x) for x in v] for v in verts])
        _write_csv(outdir / f"{name}_edges.csv", ["from", "to"] + [f"{c}_{e}" for e in ("from", "to") for c in header],
                   [[a, b] + [float(x) for x in verts[a]] + [float(x) for x in verts[b]] for a, b in _edges(h, verts)])
        files += [f"{name}_vertices.csv", f"{name}_edges.csv"]
    # pure states fill the sphere of radius 1/2 about (1/2, 1/2, 1/2)
    rng = np.random.default_rng(cfg.seed)
    m = build_mubs(field_spec(2))
    rows = []
    for _ in range(cfg.options.get("samples") or 500):
        psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        p = p_matrix_from_state(pure_state(psi), m)
        rows.append([p.p[0, 0], p.p[1, 0], p.p[2, 0]])
    _write_csv(outdir / "sphere_samples.csv", header, rows)
    files.append("sphere_samples.csv")
    radius_dev = max(abs(sum((x - 0.5) ** 2 for x in r) - 0.25) for r in rows)
    summary = {"d": 2, "directory": str(outdir), "files": files, "sphere_radius_deviation": radius_dev, "seed": cfg.seed}
    print(json.dumps({"schema_version": SCHEMA_VERSION, "command": "plotdata", **summary}, indent=2))
    return EXIT_OK


def cmd_polytope(cfg: RunConfig) -> int:
    from .polytope.io import h_from_json, h_to_json, v_from_json, v_to_json
    from .polytope.ops import facet_enumeration, vertex_enumeration

    def load(path, parse):
        obj = _load_json(path)
        if isinstance(obj, dict) and "result" in obj:
            obj = obj["result"]
        try:
            return parse(obj)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidStateError(f"{path}: malformed polytope ({exc!r})") from None

    opts = cfg.options
    if opts.get("from_h") and opts.get("vertices"):
        h = load(opts["from_h"], h_from_json)
        v = vertex_enumeration(h, backend=cfg.backend, n_threads=cfg.threads)
        _emit(cfg, {"result": v_to_json(v), "count": len(v.vertices)})
        return EXIT_OK
    if opts.get("from_v") and opts.get("facets"):
        v = load(opts["from_v"], v_from_json)
        h = facet_enumeration(v, n_threads=cfg.threads)
        _emit(cfg, {"result": h_to_json(h), "count": len(h.inequalities)})
        return EXIT_OK
    raise UsageError("polytope needs --from-h FILE --vertices or --from-v FILE --facets")


COMMANDS = {
    "striations": cmd_striations,
    "mub": cmd_mub,
    "eval": cmd_eval,
    "cd": cmd_cd,
    "classify": cmd_classify,
    "plotdata": cmd_plotdata,
    "polytope": cmd_polytope,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="Hilbert-space dimension")
    common.add_argument("--out", type=Path, help="output file (directory for plotdata)")
    common.add_argument("--json", action="store_true", help="also print the JSON result to stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=0, help="worker threads for compiled kernels (0 = default)")
    common.add_argument("--tol", type=float, help="numerical tolerance override")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="mubwigner", description="Discrete Wigner functions, MUBs and the C_d polytope.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("striations", parents=[common], help="build and check the d+1 striations")
    p = sub.add_parser("mub", parents=[common], help="construct MUBs and report quality metrics")
    p.add_argument("--check-only", action="store_true", help="metrics only, no matrices")
    p = sub.add_parser("eval", parents=[common], help="Wigner function of a density matrix")
    p.add_argument("--state", help="JSON d x d array of [re, im], or 'maximally-mixed'")
    p.add_argument("--definition", help="JSON with striation_perm and line_perms (1-based)")
    p.add_argument("--all-definitions", action="store_true", help="also minimize over every definition")
    p = sub.add_parser("cd", parents=[common], help="verify the C_d vertex conjecture and test membership")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--backend", default="dd", choices=["dd", "pivot"])
    p.add_argument("--order", choices=["mincut", "maxcut", "index"], help="DD insertion order")
    p.add_argument("--state", help="density matrix JSON for a membership test")
    p.add_argument("--pmatrix", help="probability table JSON (rationals as 'a/b') for an exact membership test")
    p.add_argument("--mode", choices=["exact", "float"])
    p.add_argument("--max-denominator", type=int)
    p.add_argument("--checkpoint", help="DD checkpoint file (.npz); resumed when present")
    p.add_argument("--time-limit", type=float, help="seconds")
    p.add_argument("--max-rays", type=int)
    sub.add_parser("classify", parents=[common], help="classify the 48 qubit definitions")
    p = sub.add_parser("plotdata", parents=[common], help="CSV data for the qubit polytopes and the state sphere")
    p.add_argument("--samples", type=int, help="number of sampled pure states (default 500)")
    p = sub.add_parser("polytope", parents=[common], help="exact H <-> V conversion")
    p.add_argument("--from-h")
    p.add_argument("--from-v")
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--facets", action="store_true")
    p.add_argument("--backend", default="dd", choices=["dd", "pivot"])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    base = {"subcommand", "d", "out", "json", "seed", "threads", "tol", "backend", "verbose"}
    ns = vars(args)
    return RunConfig(
        subcommand=args.subcommand,
        d=ns.get("d"),
        out=ns.get("out"),
        json=ns.get("json", False),
        seed=ns.get("seed", 0),
        threads=ns.get("threads", 0),
        tol=ns.get("tol"),
        backend=ns.get("backend") or "dd",
        verbose=ns.get("verbose", 0),
        options={k: v for k, v in ns.items() if k not in base},
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    cfg = config_from_args(args)
    logging.basicConfig(level=logging.WARNING - 10 * min(cfg.verbose, 2), format="%(levelname)s: %(message)s")
    if cfg.threads:
        os.environ.setdefault("OMP_NUM_THREADS", str(cfg.threads))
    try:
        cfg.validate()
        return COMMANDS[cfg.subcommand](cfg)
    except UnsupportedDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, InvalidStateError, EnumerationCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimitError as exc:
        print(f"error: {exc} (checkpoint: {exc.checkpoint})", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
