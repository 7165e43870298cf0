"""Command-line front end: seeded experiment runs with CSV/JSON/SVG outputs.

Every output embeds the fully resolved configuration (including the seed);
identical configuration and seed produce byte-identical CSV and JSON on the
same build.  Flags may also be supplied through a JSON config file; explicit
flags override file values, and unknown config keys are usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .continuum import ContinuumParams, Window, mecke_check
from .coupling import edge_agreement
from .errors import DomainError, EstimationError
from .estimators import (
    DEFAULT_REPLICAS,
    LLN_COLUMNS,
    ThetaProxyConfig,
    bracket_lambda_c,
    c_of,
    estimate_theta,
    lln_experiment,
)
from .geometry import KpkvbParams
from .graphs import components
from .kpkvb import build_graph, sample_vertices, sample_vertices_poissonized

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

COMMANDS = ("generate", "components", "theta", "cvalue", "lambdac", "lln",
            "couple-check", "selftest")

# per-command parameter schema: name -> (type, default); None default = required
_SCHEMAS: dict[str, dict] = {
    "generate": {"n": (int, None), "alpha": (float, None), "nu": (float, None)},
    "components": {"n": (int, None), "alpha": (float, None), "nu": (float, None),
                   "poisson": (bool, False)},
    "theta": {"y": (float, 0.0), "alpha": (float, None), "lam": (float, None),
              "h": (float, 5.0), "w": (float, 2.0), "nbound": (float, 50.0),
              "replicas": (int, DEFAULT_REPLICAS)},
    "cvalue": {"alpha": (float, None), "nu": (float, None), "nodes": (int, 16),
               "replicas": (int, DEFAULT_REPLICAS), "error_budget": (float, 0.1),
               "h": (float, 5.0), "w": (float, 2.0), "nbound": (float, 50.0)},
    "lambdac": {"h": (float, 4.0), "w": (float, 2.0),
                "replicas": (int, 200), "tol": (float, 1.0)},
    "lln": {"alpha": (float, None), "nu": (float, None), "nlist": (str, None),
            "replicas": (int, 20)},
    "couple-check": {"n": (int, None), "alpha": (float, None), "nu": (float, None)},
    "selftest": {},
}


@dataclass
class RunConfig:
    """A fully resolved run: command, validated parameters, seed and outputs."""

    command: str
    parameters: dict = field(default_factory=dict)
    seed: int = 0
    output_path: str | None = None
    format: str = "json"
    plot_path: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json", "svg"):
            raise UsageError(f"unknown format {self.format!r}")
        schema = _SCHEMAS[self.command]
        unknown = set(self.parameters) - set(schema)
        if unknown:
            raise UsageError(f"unknown parameter keys for {self.command}: {sorted(unknown)}")
        resolved = {}
        for key, (typ, default) in schema.items():
            if key in self.parameters and self.parameters[key] is not None:
                try:
                    resolved[key] = typ(self.parameters[key])
                except (TypeError, ValueError) as exc:
                    raise UsageError(f"bad value for {key}: {exc}") from exc
            elif default is not None or typ is bool:
                resolved[key] = default if default is not None else False
            else:
                raise UsageError(f"command {self.command} requires --{_flag_name(key)}")
        self.parameters = resolved

    def provenance(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(sorted(self.parameters.items())),
            "seed": self.seed,
            "format": self.format,
        }


class UsageError(ValueError):
    pass


def _flag_name(key: str) -> str:
    return {"lam": "lambda", "nbound": "nbound"}.get(key, key.replace("_", "-"))


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _json_payload(config: RunConfig, body: dict) -> str:
    payload = {"config": config.provenance()}
    payload.update(body)
    return json.dumps(payload, sort_keys=True, indent=2, default=float) + "\n"


def _csv_text(config: RunConfig, header: list[str], rows: list[list]) -> str:
    lines = ["# config: " + json.dumps(config.provenance(), sort_keys=True)]
    lines.append(",".join(header))
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _edge_list_text(config: RunConfig, graph) -> str:
    head = "# config: " + json.dumps(config.provenance(), sort_keys=True) + "\n"
    return head + "# u v\n" + graph.to_edge_list_text()


def _run_generate(config: RunConfig) -> None:
    p = config.parameters
    params = KpkvbParams(n=p["n"], alpha=p["alpha"], nu=p["nu"])
    vertices = sample_vertices(params, config.seed)
    graph = build_graph(vertices)
    if config.format == "svg":
        from . import reports
        if not config.output_path:
            raise UsageError("--format svg requires --out")
        reports.disk_figure(vertices, graph, config.output_path,
                            metadata=config.provenance())
        return
    if config.format == "csv":
        _write_text(config.output_path, _edge_list_text(config, graph))
    else:
        summary = components(graph)
        body = {
            "n": len(vertices),
            "R": params.R,
            "edge_count": graph.edge_count,
            "mean_degree": graph.mean_degree(),
            "component_sizes_top10": summary.sizes[:10],
        }
        _write_text(config.output_path, _json_payload(config, body))
    if config.plot_path:
        from . import reports
        reports.disk_figure(vertices, graph, config.plot_path,
                            metadata=config.provenance())


def _run_components(config: RunConfig) -> None:
    p = config.parameters
    params = KpkvbParams(n=p["n"], alpha=p["alpha"], nu=p["nu"])
    sampler = sample_vertices_poissonized if p["poisson"] else sample_vertices
    summary = components(build_graph(sampler(params, config.seed)))
    body = summary.to_json_dict()
    if config.format == "csv":
        rows = [[i, s] for i, s in enumerate(body["sizes"])]
        text = _csv_text(config, ["rank", "size"], rows)
        head, rest = text.split("\n", 1)
        fractions = f"# c1_frac={_fmt(body['c1_frac'])} c2_frac={_fmt(body['c2_frac'])}"
        _write_text(config.output_path, "\n".join([head, fractions, rest]))
    else:
        _write_text(config.output_path, _json_payload(config, body))


def _run_theta(config: RunConfig) -> None:
    p = config.parameters
    est = estimate_theta(p["y"], ContinuumParams(alpha=p["alpha"], lam=p["lam"]),
                         p["h"], p["w"], p["nbound"], p["replicas"], config.seed)
    _write_text(config.output_path, _json_payload(config, est.to_json_dict()))


def _run_cvalue(config: RunConfig) -> None:
    p = config.parameters
    proxy = ThetaProxyConfig(h=p["h"], w=p["w"], n=p["nbound"])
    est = c_of(p["alpha"], p["nu"], quadrature_nodes=p["nodes"], mc_config=proxy,
               seed=config.seed, replicas=p["replicas"],
               error_budget=p["error_budget"])
    _write_text(config.output_path, _json_payload(config, est.to_json_dict()))
    if config.plot_path and est.grid:
        from . import reports
        reports.theta_grid_figure(est.grid, est.alpha, est.nu, config.plot_path,
                                  metadata=config.provenance())


def _run_lambdac(config: RunConfig) -> None:
    p = config.parameters
    bracket = bracket_lambda_c(p["h"], p["w"], p["replicas"], p["tol"], config.seed)
    _write_text(config.output_path, _json_payload(config, bracket.to_json_dict()))
    if config.plot_path:
        from . import reports
        reports.crossing_figure(bracket.crossing_probs, bracket.lo, bracket.hi,
                                config.plot_path, metadata=config.provenance())


def _run_lln(config: RunConfig) -> None:
    p = config.parameters
    try:
        n_list = [int(tok) for tok in p["nlist"].split(",") if tok]
    except ValueError as exc:
        raise UsageError(f"bad --nlist: {exc}") from exc
    rows = lln_experiment(p["alpha"], p["nu"], n_list, p["replicas"], config.seed)
    if config.format == "json":
        _write_text(config.output_path, _json_payload(config, {"rows": rows}))
    else:
        table = [[row[c] for c in LLN_COLUMNS] for row in rows]
        _write_text(config.output_path, _csv_text(config, LLN_COLUMNS, table))
    if config.plot_path:
        from . import reports
        reports.lln_figure(rows, config.plot_path, metadata=config.provenance())


def _run_couple_check(config: RunConfig) -> None:
    p = config.parameters
    params = KpkvbParams(n=p["n"], alpha=p["alpha"], nu=p["nu"])
    report = edge_agreement(sample_vertices(params, config.seed))
    _write_text(config.output_path, _json_payload(config, report.to_json_dict()))


def _run_selftest(config: RunConfig) -> None:
    failures = run_selftest(seed=config.seed)
    if failures:
        raise DomainError(f"selftest failed: {failures}")


def run(config: RunConfig) -> int:
    """Execute one resolved run; exit code 0 / 1 (domain) / 2 (usage)."""
    handlers = {
        "generate": _run_generate,
        "components": _run_components,
        "theta": _run_theta,
        "cvalue": _run_cvalue,
        "lambdac": _run_lambdac,
        "lln": _run_lln,
        "couple-check": _run_couple_check,
        "selftest": _run_selftest,
    }
    try:
        handlers[config.command](config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, EstimationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def run_selftest(seed: int = 0, verbose: bool = True) -> list[str]:
    """Quick invariant suite; returns the names of failed checks."""
    from . import continuum, geometry

    failures = []

    def check(name: str, ok: bool) -> None:
        if verbose:
            print(f"[{'PASS' if ok else 'FAIL'}] {name}")
        if not ok:
            failures.append(name)

    rng = np.random.default_rng(seed)

    xs = rng.random(2000)
    a_ok, s_ok, c_ok = geometry.appendix_bounds_check(xs)
    check("appendix inequality sweep", bool(np.all(a_ok) and np.all(s_ok) and np.all(c_ok)))

    params = KpkvbParams(n=300, alpha=0.9, nu=1.5)
    vs = sample_vertices(params, seed)
    g = build_graph(vs)
    d = geometry.hyperbolic_distance_arrays(
        vs.r[:, None], vs.theta[:, None], vs.r[None, :], vs.theta[None, :])
    iu, ju = np.triu_indices(len(vs), k=1)
    brute = set(zip(iu[d[iu, ju] <= params.R].tolist(),
                    ju[d[iu, ju] <= params.R].tolist()))
    check("disk adjacency equals quadratic scan", brute == g.edge_set())

    cp = ContinuumParams(alpha=1.0, lam=1.0)
    win = Window(half_width=20.0, height=10.0)
    s = continuum.sample_continuum(cp, win, seed)
    gg = continuum.gamma_graph(s)
    dx = np.abs(s.x[:, None] - s.x[None, :])
    tt = np.exp((s.y[:, None] + s.y[None, :]) / 2.0)
    bi, bj = np.triu_indices(len(s), k=1)
    brute_g = set(zip(bi[(dx < tt)[bi, bj]].tolist(), bj[(dx < tt)[bi, bj]].tolist()))
    check("half-plane adjacency equals quadratic scan", brute_g == gg.edge_set())

    report = mecke_check(cp, win, (0.0, 1.0, 0.0, 1.0), replicas=400, seed=seed)
    check("point/pair counts match Poisson moments", report.passed)

    params2 = KpkvbParams(n=200, alpha=0.8, nu=1.0)
    v1 = sample_vertices(params2, 12345)
    v2 = sample_vertices(params2, 12345)
    check("seeded sampling is deterministic",
          bool(np.array_equal(v1.r, v2.r) and np.array_equal(v1.theta, v2.theta)))
    return failures


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypergiant",
        description="Hyperbolic random graphs and half-plane continuum percolation",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--nu", type=float)
    parser.add_argument("--n", type=int)
    parser.add_argument("--lambda", dest="lam", type=float)
    parser.add_argument("--y", type=float)
    parser.add_argument("--h", type=float)
    parser.add_argument("--w", type=float)
    parser.add_argument("--nbound", type=float)
    parser.add_argument("--nodes", type=int)
    parser.add_argument("--error-budget", dest="error_budget", type=float)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--nlist", type=str)
    parser.add_argument("--replicas", type=int)
    parser.add_argument("--poisson", action="store_true", default=None)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", dest="output_path", type=str)
    parser.add_argument("--format", choices=("csv", "json", "svg"))
    parser.add_argument("--plot", dest="plot_path", type=str)
    parser.add_argument("--config", type=str, help="JSON file with flag defaults")
    return parser


_META_KEYS = ("seed", "output_path", "format", "plot_path")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values: dict = {}
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        file_values = dict(loaded)
    known_flags = set(_SCHEMAS[args.command]) | set(_META_KEYS) | {"command"}
    renames = {"lambda": "lam", "out": "output_path", "plot": "plot_path"}
    file_values = {renames.get(k, k): v for k, v in file_values.items()}
    unknown = set(file_values) - known_flags
    if unknown:
        raise UsageError(f"unknown keys in config file: {sorted(unknown)}")
    if file_values.get("command", args.command) != args.command:
        raise UsageError("config file command disagrees with the command line")

    merged_params = {}
    for key in _SCHEMAS[args.command]:
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            merged_params[key] = cli_val
        elif key in file_values:
            merged_params[key] = file_values[key]

    def meta(key, default):
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            return cli_val
        return file_values.get(key, default)

    fmt = meta("format", "csv" if args.command == "lln" else "json")
    return RunConfig(
        command=args.command,
        parameters=merged_params,
        seed=int(meta("seed", 0)),
        output_path=meta("output_path", None),
        format=fmt,
        plot_path=meta("plot_path", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"usage error: cannot read config file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
