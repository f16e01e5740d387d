import json
from pathlib import Path

from arith.binary_forms import BinaryCubic
from arith.roots import rho_mean
from common.constants import ExitCode, LogLevel, Model
from common.exceptions import ConfigurationError, CorpusError
from config.project_config import config
from config.run_config import RunConfig
from descent.audit import audit_corpus
from descent.exceptional import catalogue_bound
from pell.equations import enumerate_solutions, simultaneous_solve
from surface.counting import brute_count, count_via_lattices, growth_table
from twists.analysis import construction_trend, density_table, fitted_constant, moments
from twists.construct import construct_points
from twists.scan import ScanCorpus, ScanParams, corpus_path, load_corpus, scan_family
from utils.tables import parse_grid, save_table
from verification.suites import run_suites


def _stem(run_config: RunConfig, name: str) -> str:
    return f"{name}_{run_config.model}_A{run_config.A}_B{run_config.B}_N{run_config.N}"


def _write_json(path: Path, payload: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _saved(path: Path):
    config.get_logger().log(LogLevel.NORMAL, f"Wrote {path}")


def _params(run_config: RunConfig) -> ScanParams:
    return ScanParams(run_config.A, run_config.B, run_config.model, run_config.N, run_config.effective_x_max)


def _load_scanned(run_config: RunConfig) -> ScanCorpus:
    """
    Raises:
        CorpusError: if the family has not been scanned into the cache directory
    """
    path = corpus_path(run_config.cache_dir, _params(run_config))
    if not path.is_file():
        raise CorpusError(
            f"no corpus for A={run_config.A} B={run_config.B} {run_config.model} N={run_config.N} "
            f"x_max={run_config.effective_x_max} in {run_config.cache_dir}; run `scan` with the same options first"
        )
    return load_corpus(path)


def cmd_scan(run_config: RunConfig) -> ExitCode:
    logger = config.get_logger()
    corpus = scan_family(
        run_config.A,
        run_config.B,
        run_config.model,
        run_config.N,
        run_config.effective_x_max,
        workers=run_config.workers,
        cache_dir=run_config.cache_dir,
    )
    stats = corpus.statistics()
    summary = {
        "family": corpus.params.header(corpus.twist_count),
        "corpus": str(corpus_path(run_config.cache_dir, corpus.params)),
        "statistics": stats.to_dict(),
    }
    path = run_config.output_dir / f"{_stem(run_config, 'scan')}.json"
    _write_json(path, summary)
    _saved(path)
    if logger.level >= LogLevel.NORMAL:
        stats.print_stats(logger.stderr)
    logger.log(LogLevel.SILENT, json.dumps(summary, sort_keys=True))
    return ExitCode.SUCCESS


def cmd_density(run_config: RunConfig) -> ExitCode:
    corpus = _load_scanned(run_config)
    thresholds = parse_grid(run_config.density_grid, run_config.N)
    # The construction lower bound only exists for the short model
    constructions = None
    if run_config.model == Model.SHORT:
        constructions = construct_points(run_config.A, run_config.B, run_config.N)
    rows = density_table(corpus, thresholds, run_config.density_kappa, constructions)
    path = run_config.output_dir / f"{_stem(run_config, 'density')}.csv"
    save_table(
        path,
        "density",
        ["N", "twists", "with_points", "sqrt_N", "N_over_log_kappa", "constructed"],
        rows,
        [f"x_max = {corpus.params.x_max}", f"kappa = {run_config.density_kappa}"],
    )
    _saved(path)
    return ExitCode.SUCCESS


def cmd_moments(run_config: RunConfig, orders: str) -> ExitCode:
    try:
        ks = [int(k) for k in orders.split(",") if k.strip()]
    except ValueError as e:
        raise ConfigurationError(f"moment orders must be integers, got '{orders}'") from e
    corpus = _load_scanned(run_config)
    rows = []
    for k in ks:
        value = moments(corpus, k)
        rows.append((k, value, float(value)))
    path = run_config.output_dir / f"{_stem(run_config, 'moments')}.csv"
    save_table(path, "moments", ["k", "moment", "moment_float"], rows, [f"x_max = {corpus.params.x_max}"])
    _saved(path)
    return ExitCode.SUCCESS


def cmd_surface(run_config: RunConfig, cubic: str, bound: int, diff: bool) -> ExitCode:
    logger = config.get_logger()
    C = BinaryCubic.parse(cubic)
    grid = parse_grid(run_config.surface_grid, bound)
    rows = growth_table(C, grid, run_config.workers)
    name = "surface_" + "_".join(str(c) for c in C.coefficients)
    path = run_config.output_dir / f"{name}.csv"
    notes = [f"cubic = {C}", f"lambda = {C.factor_count}"]
    save_table(path, "surface", ["B", "count", "count_over_B", "count_over_B_log"], rows, notes)
    _saved(path)
    logger.log(LogLevel.SILENT, f"lambda = {C.factor_count}")
    if not diff:
        return ExitCode.SUCCESS

    diff_rows = []
    for B in grid:
        brute = brute_count(C, B).count
        lattice = count_via_lattices(C, B, run_config.workers)
        diff_rows.append((B, brute, lattice, "EQUAL" if brute == lattice else "DIFFERENT"))
    path = run_config.output_dir / f"{name}_diff.csv"
    save_table(path, "surface-diff", ["B", "brute", "lattice", "status"], diff_rows, notes)
    _saved(path)
    equal = all(row[3] == "EQUAL" for row in diff_rows)
    logger.log(LogLevel.SILENT, "EQUAL" if equal else "DIFFERENT")
    return ExitCode.SUCCESS if equal else ExitCode.VERIFICATION_FAILURE


def cmd_rho(run_config: RunConfig, cubic: str) -> ExitCode:
    C = BinaryCubic.parse(cubic)
    mean = rho_mean(C, run_config.N)
    row = (mean.N, C.factor_count, float(mean.value), mean.reference, mean.deviation, mean.exact)
    name = "rho_" + "_".join(str(c) for c in C.coefficients)
    path = run_config.output_dir / f"{name}_N{run_config.N}.csv"
    save_table(path, "rho", ["N", "lambda", "mean", "reference", "deviation", "exact"], [row], [f"cubic = {C}"])
    _saved(path)
    config.get_logger().log(
        LogLevel.SILENT, f"sum rho(p)/p = {float(mean.value):.6f}, lambda log log N = {mean.reference:.6f}"
    )
    return ExitCode.SUCCESS


def cmd_descent_verify(run_config: RunConfig, dt_max: int) -> ExitCode:
    logger = config.get_logger()
    corpus = _load_scanned(run_config)
    Dt_max = dt_max or catalogue_bound(run_config.N, run_config.kappa)
    audit = audit_corpus(corpus, Dt_max)

    stem = _stem(run_config, "descent")
    exceptional = [(p.kind, p.D, p.x, p.y, " ".join(str(v) for v in p.witness)) for p in audit.exceptional]
    columns = ["kind", "D", "x", "y", "witness"]
    save_table(run_config.output_dir / f"{stem}_exceptional.csv", "exceptional", columns, exceptional)
    save_table(
        run_config.output_dir / f"{stem}_catalogue.csv",
        "compact-catalogue",
        ["D", "x", "y", "Dt", "g"],
        audit.catalogue,
        [f"Dt <= {Dt_max}"],
    )
    path = run_config.output_dir / f"{stem}.json"
    _write_json(path, audit.to_dict() | {"Dt_max": Dt_max})
    _saved(path)

    for message in audit.violations:
        logger.log(LogLevel.SILENT, f"[VIOLATION] {message}")
    logger.log(LogLevel.SILENT, "PASS" if audit.passed else f"FAIL: {len(audit.violations)} violations")
    return ExitCode.SUCCESS if audit.passed else ExitCode.VERIFICATION_FAILURE


def cmd_pell(run_config: RunConfig, args) -> ExitCode:
    second = (args.c, args.d, args.v)
    if any(value is not None for value in second) and None in second:
        raise ConfigurationError("a simultaneous system needs all of --c, --d and --v")
    if args.c is None:
        rows = enumerate_solutions(args.a, args.b, args.u, args.bound)
        columns, name = ["x", "y"], f"pell_{args.a}_{args.b}_{args.u}"
    else:
        rows = simultaneous_solve(args.a, args.b, args.u, args.c, args.d, args.v, args.bound)
        columns, name = ["x", "y", "z"], f"pell_{args.a}_{args.b}_{args.u}_{args.c}_{args.d}_{args.v}"
    path = run_config.output_dir / f"{name}.csv"
    save_table(path, "pell", columns, rows, [f"x <= {args.bound}"])
    _saved(path)
    return ExitCode.SUCCESS


def cmd_construct(run_config: RunConfig) -> ExitCode:
    if run_config.model != Model.SHORT:
        raise ConfigurationError("the construction runs on the short model y^2 = x^3 + A D^2 x + B D^3")
    constructions = construct_points(run_config.A, run_config.B, run_config.N)
    rows = [(D, c.alpha, c.beta, c.witness[0], c.witness[1]) for D, c in constructions.items()]
    trend = construction_trend(constructions, parse_grid(run_config.density_grid, run_config.N))
    path = run_config.output_dir / f"{_stem(run_config, 'construct')}.csv"
    notes = [f"constructed = {len(rows)}", f"fitted constant = {fitted_constant(trend):.6f}"]
    save_table(path, "construct", ["D", "alpha", "beta", "x", "y"], rows, notes)
    _saved(path)
    return ExitCode.SUCCESS


def cmd_verify(run_config: RunConfig, suites: str | None, corrupt: str | None) -> ExitCode:
    logger = config.get_logger()
    names = [name.strip() for name in suites.split(",") if name.strip()] if suites else None
    report = run_suites(run_config.seed, corrupt=corrupt, names=names)
    path = run_config.output_dir / "verify.json"
    _write_json(path, report.to_dict())
    _saved(path)
    for suite in report.suites:
        status = "PASS" if suite.passed else "FAIL"
        logger.log(LogLevel.SILENT, f"{suite.name:<10} {status} {suite.checks} checks {suite.seconds:.2f}s")
        for failure in suite.failures:
            logger.log(LogLevel.NORMAL, f"  {failure}")
    return ExitCode.SUCCESS if report.passed else ExitCode.VERIFICATION_FAILURE


def handle_command(args, run_config: RunConfig) -> ExitCode:
    """
    Run one subcommand.

    Parameters:
        args (argparse.Namespace): Parsed arguments; args.command picks the subcommand
        run_config (RunConfig): Family, bounds and output locations

    Returns:
        ExitCode: SUCCESS, or VERIFICATION_FAILURE when a check of the command failed
    """
    logger = config.get_logger()

    match args.command:
        case "scan":
            return cmd_scan(run_config)

        case "density":
            return cmd_density(run_config)

        case "moments":
            return cmd_moments(run_config, args.k)

        case "surface":
            return cmd_surface(run_config, args.cubic, args.bound, args.diff)

        case "rho":
            return cmd_rho(run_config, args.cubic)

        case "descent-verify":
            return cmd_descent_verify(run_config, args.dt_max)

        case "pell":
            return cmd_pell(run_config, args)

        case "construct":
            return cmd_construct(run_config)

        case "verify":
            return cmd_verify(run_config, args.suites, args.corrupt)

        # argparse rejects unknown subcommands before this point
        case _:
            logger.log(LogLevel.DEBUG, f"Unknown command: {args.command}")
            return ExitCode.USAGE_ERROR
