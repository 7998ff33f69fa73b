"""Deterministic experiment sweeps writing CSV error tables.

Each runner fits interpolants over a parameter grid and returns a list of
``ErrorRecord`` rows in a fixed canonical order, so a given config and seed
always produce byte-identical CSV output.  Singular fits are recorded with
their flag set rather than raised.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .interpolators import (
    HermiteRBFInterpolant,
    ModifiedHermiteRBFInterpolant,
    error_report,
    _hermite_value_rows,
    _hermite_deriv_rows,
    _scaled_value_rows,
    _scaled_deriv_rows,
)
from .kernels import make_kernel
from .linalg import solve_dense
from .nodes import NodeSet, cost_node_set, disk_node_set
from .polynomials import PolyBasis, n_poly_terms
from .testfunctions import get_test_function

EXPERIMENTS = (
    "eps_n_sweep",
    "poly_compare",
    "method_compare",
    "radius_scaling",
    "cost_study",
    "gen_nodes",
)

# 41 points with a log10 step of 0.1 so the grid lands exactly on the three
# shape parameters the analyses single out (1e-3, 1 and 10).
EPS_GRID = tuple(float(e) for e in np.logspace(-3.0, 1.0, 41))
RADIUS_GRID = tuple(float(r) for r in np.logspace(-4.0, 1.0, 25))

_DEFAULTS = {
    "eps_n_sweep": dict(n_grid=tuple(range(1, 10)), poly_degrees=(None,)),
    "poly_compare": dict(poly_degrees=(1, 9)),
    # poly_degrees None means: pick by test function (1 for trig, 6 for
    # camelback) when the runner resolves the config.
    "method_compare": dict(poly_degrees=None),
    "radius_scaling": dict(
        eps_grid=(1.0,), poly_degrees=(1,), radius_grid=RADIUS_GRID
    ),
    "cost_study": dict(
        eps_grid=(0.01, 0.1, 1.0, 10.0),
        poly_degrees=(None,) + tuple(range(10)),
        radius=1.0,
        radius_grid=(1.0, 0.125),
        node_count=104,
        eval_count=249,
    ),
    "gen_nodes": dict(),
}


@dataclass
class ExperimentConfig:
    """Knobs for one experiment run; ``default_config`` fills in the grids
    each study uses out of the box."""

    experiment: str
    kernel: str = "gaussian"
    eps_grid: tuple = EPS_GRID
    n_grid: tuple = (4,)
    poly_degrees: tuple = (1,)
    radius: float = 0.1
    radius_grid: tuple = ()
    node_count: int = 56
    eval_count: int = 60
    function: str = "trig"
    seed: int = 1
    out_dir: str = "."

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; expected one of "
                f"{list(EXPERIMENTS)}"
            )
        self.eps_grid = tuple(float(e) for e in self.eps_grid)
        if not self.eps_grid:
            raise ValueError("eps_grid must be nonempty")
        if any(e <= 0 for e in self.eps_grid):
            raise ValueError("eps_grid values must be positive")
        self.n_grid = tuple(int(n) for n in self.n_grid)
        if not self.n_grid or any(n < 1 for n in self.n_grid):
            raise ValueError("n_grid must be nonempty with entries >= 1")
        if self.poly_degrees is not None:
            self.poly_degrees = tuple(
                None if l is None else int(l) for l in self.poly_degrees
            )
            if not self.poly_degrees:
                raise ValueError("poly_degrees must be nonempty")
            if any(l is not None and l < 0 for l in self.poly_degrees):
                raise ValueError("poly_degrees entries must be None or >= 0")
        self.radius = float(self.radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        self.radius_grid = tuple(float(r) for r in self.radius_grid)
        if any(r <= 0 for r in self.radius_grid):
            raise ValueError("radius_grid values must be positive")
        self.node_count = int(self.node_count)
        self.eval_count = int(self.eval_count)
        if self.node_count < 1 or self.eval_count < 1:
            raise ValueError("node_count and eval_count must be >= 1")
        self.seed = int(self.seed)


def default_config(experiment, **overrides):
    """Config preloaded with the standard grid for the named experiment."""
    fields = dict(_DEFAULTS.get(experiment, {}))
    fields.update(overrides)
    return ExperimentConfig(experiment=experiment, **fields)


@dataclass(frozen=True)
class ErrorRecord:
    """One CSV row: a single fit and its max-norm errors."""

    experiment: str
    method: str
    epsilon: float
    n: object  # monomial degree, or None for methods without one
    l: object  # augmentation degree, or None for no augmentation
    radius: float
    n_nodes: int
    unknowns: int
    err_f: float
    err_fx: float
    err_fy: float
    cond_estimate: float
    singular: bool


CSV_COLUMNS = tuple(f.name for f in dataclasses.fields(ErrorRecord))


# ---------------------------------------------------------------------------
# CSV serialization

def _fmt(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def write_records(path, records, metadata=None):
    """Write records as CSV: ``# key=value`` comment lines (sorted by key),
    a header row, then one data row per record, floats at 17 significant
    digits."""
    lines = []
    for key in sorted(metadata or {}):
        lines.append(f"# {key}={metadata[key]}")
    lines.append(",".join(CSV_COLUMNS))
    for rec in records:
        lines.append(",".join(_fmt(getattr(rec, name)) for name in CSV_COLUMNS))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_opt_int(text):
    return None if text == "none" else int(text)


def read_records(path):
    """Read a runner CSV back into (metadata dict, list of ErrorRecord).

    Raises ValueError naming the file and line for any malformed content.
    """
    metadata = {}
    records = []
    header = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = tuple(line.split(","))
                if header != CSV_COLUMNS:
                    raise ValueError(
                        f"{path}:{lineno}: unexpected header {line!r}"
                    )
                continue
            parts = line.split(",")
            if len(parts) != len(CSV_COLUMNS):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(CSV_COLUMNS)} fields, "
                    f"got {len(parts)}"
                )
            try:
                records.append(
                    ErrorRecord(
                        experiment=parts[0],
                        method=parts[1],
                        epsilon=float(parts[2]),
                        n=_parse_opt_int(parts[3]),
                        l=_parse_opt_int(parts[4]),
                        radius=float(parts[5]),
                        n_nodes=int(parts[6]),
                        unknowns=int(parts[7]),
                        err_f=float(parts[8]),
                        err_fx=float(parts[9]),
                        err_fy=float(parts[10]),
                        cond_estimate=float(parts[11]),
                        singular={"true": True, "false": False}[parts[12]],
                    )
                )
            except (ValueError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed row: {exc}") from None
    if header is None:
        raise ValueError(f"{path}: no header row found")
    return metadata, records


# ---------------------------------------------------------------------------
# runners

def _base_node_set(config):
    return disk_node_set(
        n_data=config.node_count,
        n_eval=config.eval_count,
        radius=config.radius,
        seed=config.seed,
    )


def _fit_record(experiment, interp, node_set, fn, epsilon, l):
    rep = error_report(interp, node_set.eval_nodes, fn)
    sr = interp.solve_report_
    return ErrorRecord(
        experiment=experiment,
        method=interp.method_,
        epsilon=float(epsilon),
        n=getattr(interp, "monomial_degree", None),
        l=l,
        radius=node_set.radius,
        n_nodes=node_set.n_data,
        unknowns=interp.n_unknowns_,
        err_f=rep.err_f,
        err_fx=rep.err_fx,
        err_fy=rep.err_fy,
        cond_estimate=sr.cond_estimate,
        singular=sr.singular,
    )


def run_eps_n_sweep(config, node_set=None):
    """Unaugmented scaled-Hermite error over the (epsilon, n) grid.

    Row order: epsilon outer (ascending grid order), n inner.
    """
    ns = node_set if node_set is not None else _base_node_set(config)
    fn = get_test_function(config.function)
    f = fn.value(ns.data_nodes)
    g = fn.gradient(ns.data_nodes)
    records = []
    for eps in config.eps_grid:
        for n in config.n_grid:
            interp = ModifiedHermiteRBFInterpolant(
                kernel=config.kernel, epsilon=eps, monomial_degree=n, degree=None
            ).fit(ns.data_nodes, f, g)
            records.append(_fit_record("eps_n_sweep", interp, ns, fn, eps, None))
    return records


def run_poly_compare(config, node_set=None):
    """Scaled-Hermite error curves over epsilon, one per augmentation degree.

    Row order: degree outer (config order), epsilon inner.
    """
    ns = node_set if node_set is not None else _base_node_set(config)
    fn = get_test_function(config.function)
    f = fn.value(ns.data_nodes)
    g = fn.gradient(ns.data_nodes)
    n = config.n_grid[0]
    records = []
    for l in config.poly_degrees:
        for eps in config.eps_grid:
            interp = ModifiedHermiteRBFInterpolant(
                kernel=config.kernel, epsilon=eps, monomial_degree=n, degree=l
            ).fit(ns.data_nodes, f, g)
            records.append(_fit_record("poly_compare", interp, ns, fn, eps, l))
    return records


def _method_compare_degree(config):
    if config.poly_degrees is not None:
        return config.poly_degrees[0]
    return 6 if config.function == "camelback" else 1


def run_method_compare(config, node_set=None):
    """Hermite vs scaled-Hermite error curves over epsilon for one function.

    The augmentation degree defaults per function (trig 1, camelback 6)
    unless the config pins one.  Row order: epsilon outer, plain Hermite
    then scaled Hermite.
    """
    ns = node_set if node_set is not None else _base_node_set(config)
    fn = get_test_function(config.function)
    f = fn.value(ns.data_nodes)
    g = fn.gradient(ns.data_nodes)
    l = _method_compare_degree(config)
    n = config.n_grid[0]
    records = []
    for eps in config.eps_grid:
        hrbf = HermiteRBFInterpolant(
            kernel=config.kernel, epsilon=eps, degree=l
        ).fit(ns.data_nodes, f, g)
        records.append(_fit_record("method_compare", hrbf, ns, fn, eps, l))
        mhrbf = ModifiedHermiteRBFInterpolant(
            kernel=config.kernel, epsilon=eps, monomial_degree=n, degree=l
        ).fit(ns.data_nodes, f, g)
        records.append(_fit_record("method_compare", mhrbf, ns, fn, eps, l))
    return records


def run_radius_scaling(config, node_set=None):
    """Error of both Hermite methods as the node layout is rescaled.

    One base layout is generated at ``config.radius`` and rescaled to each
    grid radius, so only the spacing changes.  Row order: radius outer,
    plain Hermite then scaled Hermite.
    """
    base = node_set if node_set is not None else _base_node_set(config)
    fn = get_test_function(config.function)
    eps = config.eps_grid[0]
    l = config.poly_degrees[0]
    n = config.n_grid[0]
    records = []
    for radius in config.radius_grid:
        ns = base.scaled(radius)
        f = fn.value(ns.data_nodes)
        g = fn.gradient(ns.data_nodes)
        hrbf = HermiteRBFInterpolant(
            kernel=config.kernel, epsilon=eps, degree=l
        ).fit(ns.data_nodes, f, g)
        records.append(_fit_record("radius_scaling", hrbf, ns, fn, eps, l))
        mhrbf = ModifiedHermiteRBFInterpolant(
            kernel=config.kernel, epsilon=eps, monomial_degree=n, degree=l
        ).fit(ns.data_nodes, f, g)
        records.append(_fit_record("radius_scaling", mhrbf, ns, fn, eps, l))
    return records


def _max_abs(x):
    return float(np.max(np.abs(x)))


def run_cost_study(config, node_set=None):
    """Error versus system size for growing nearest-to-origin node subsets.

    For each radius, shape parameter and method, the kernel blocks are
    computed once for the full layout; because the data nodes are stored
    sorted by distance from the origin, the subset of the k nearest nodes
    is a leading slice and every sub-system is cut out of the full blocks.
    The entries, and hence the solves, are identical to assembling each
    subset from scratch.  Row order: radius, epsilon, method (plain Hermite
    then scaled), subset size k, augmentation degree (none first).
    """
    base = node_set if node_set is not None else cost_node_set(
        n_data=config.node_count,
        n_eval=config.eval_count,
        radius=config.radius,
        seed=config.seed,
    )
    fn = get_test_function(config.function)
    n_mono = config.n_grid[0]
    degrees = config.poly_degrees
    plain_degrees = [l for l in degrees if l is not None]
    max_l = max(plain_degrees) if plain_degrees else None
    records = []
    for radius in config.radius_grid:
        ns = base if radius == base.radius else base.scaled(radius)
        X = ns.data_nodes
        E = ns.eval_nodes
        N = len(X)
        f = fn.value(X)
        g = fn.gradient(X)
        truth_f = fn.value(E)
        truth_g = fn.gradient(E)
        if max_l is not None:
            poly = PolyBasis(max_l)
            PX = poly.evaluate(X)
            GX = poly.gradient(X)
            PE = poly.evaluate(E)
            GE = poly.gradient(E)
        for eps in config.eps_grid:
            kernel = make_kernel(config.kernel, epsilon=eps)
            for method in ("hrbf", "mhrbf"):
                if method == "hrbf":
                    colloc_v = _hermite_value_rows(kernel, X, X)
                    colloc_d = _hermite_deriv_rows(kernel, X, X)
                    eval_v = _hermite_value_rows(kernel, E, X)
                    eval_d = _hermite_deriv_rows(kernel, E, X)
                else:
                    colloc_v = _scaled_value_rows(kernel, n_mono, X, X)
                    colloc_d = _scaled_deriv_rows(kernel, n_mono, X, X)
                    eval_v = _scaled_value_rows(kernel, n_mono, E, X)
                    eval_d = _scaled_deriv_rows(kernel, n_mono, E, X)
                for k in range(3, N + 1):
                    sub = np.arange(k)
                    idx = np.concatenate([sub, N + sub, 2 * N + sub])
                    # fancy indexing yields transposed-layout copies; force C
                    # order so the BLAS calls run bitwise identically to a
                    # from-scratch assembly of the subset
                    K = np.ascontiguousarray(
                        np.vstack(
                            [
                                colloc_v[:k][:, idx],
                                colloc_d[:k, :, 0][:, idx],
                                colloc_d[:k, :, 1][:, idx],
                            ]
                        )
                    )
                    rhs = np.concatenate([f[:k], g[:k, 0], g[:k, 1]])
                    Bv = np.ascontiguousarray(eval_v[:, idx])
                    Bx = np.ascontiguousarray(eval_d[:, :, 0][:, idx])
                    By = np.ascontiguousarray(eval_d[:, :, 1][:, idx])
                    for l in degrees:
                        m = 0 if l is None else n_poly_terms(l)
                        if m > k:
                            continue
                        if m == 0:
                            A, b = K, rhs
                            Av, Ax, Ay = Bv, Bx, By
                        else:
                            cols = np.vstack(
                                [PX[:k, :m], GX[:k, :m, 0], GX[:k, :m, 1]]
                            )
                            A = np.block(
                                [[K, cols], [cols.T, np.zeros((m, m))]]
                            )
                            b = np.concatenate([rhs, np.zeros(m)])
                            Av = np.hstack([Bv, PE[:, :m]])
                            Ax = np.hstack([Bx, GE[:, :m, 0]])
                            Ay = np.hstack([By, GE[:, :m, 1]])
                        report = solve_dense(A, b)
                        sol = report.solution
                        records.append(
                            ErrorRecord(
                                experiment="cost_study",
                                method=method,
                                epsilon=float(eps),
                                n=n_mono if method == "mhrbf" else None,
                                l=l,
                                radius=radius,
                                n_nodes=k,
                                unknowns=A.shape[0],
                                err_f=_max_abs(Av @ sol - truth_f),
                                err_fx=_max_abs(Ax @ sol - truth_g[:, 0]),
                                err_fy=_max_abs(Ay @ sol - truth_g[:, 1]),
                                cond_estimate=report.cond_estimate,
                                singular=report.singular,
                            )
                        )
    return records


RUNNERS = {
    "eps_n_sweep": run_eps_n_sweep,
    "poly_compare": run_poly_compare,
    "method_compare": run_method_compare,
    "radius_scaling": run_radius_scaling,
    "cost_study": run_cost_study,
}


def run_experiment(config, node_set=None):
    """Dispatch to the runner named by ``config.experiment``."""
    try:
        runner = RUNNERS[config.experiment]
    except KeyError:
        raise ValueError(f"{config.experiment!r} has no record runner") from None
    return runner(config, node_set=node_set)
