"""Command-line front end.

    energymax maximize --domain rect --nx 63 --ny 63 --lx 1 --ly 1 --seed 7

Exit codes: 0 success, 1 bad arguments, 2 nonconvergence, 3 I/O failure,
4 a ``verify`` check failed.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io
from .errors import InvalidArgumentError, NonConvergenceError, NumericalBreakdownError
from .functional import phi
from .grid import GridDomain, from_function, inner, make_disk, make_rectangle, normalize
from .nonattainment import remark_table
from .operator import assemble
from .optimizer import METHODS, AscentConfig, maximize
from .oracle import MAX_DENSE, brute_max
from .solver import solve
from .spectral import MAX_PAIRS, eigen_smallest, verify_phi_reduction

log = logging.getLogger("energymax")

COMMANDS = ("solve", "maximize", "eigen", "verify", "remark")
EMIT_KINDS = ("csv", "field", "pgm")

EXIT_OK, EXIT_ARGS, EXIT_NONCONV, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3, 4

VERIFY_PHI_RTOL = 1e-9
VERIFY_COS_TOL = 1e-8


@dataclass
class RunConfig:
    command: str
    domain_kind: str = "rect"
    nx: int = 31
    ny: int = 31
    lx: float = 1.0
    ly: float = 1.0
    radius: float = 1.0
    method: str = "fixed-point"
    step: float | None = None
    tol: float = 1e-12
    max_iter: int = 50000
    seed: int = 0
    k: int | None = None
    out_dir: str = "out"
    emit: tuple[str, ...] = ("csv",)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidArgumentError(f"unknown command {self.command!r}")
        if self.domain_kind not in ("rect", "disk"):
            raise InvalidArgumentError("--domain must be rect or disk")
        if self.domain_kind == "rect":
            if self.nx < 1 or self.ny < 1:
                raise InvalidArgumentError("--nx and --ny must be >= 1")
            if not (self.lx > 0 and self.ly > 0):
                raise InvalidArgumentError("--lx and --ly must be positive")
        else:
            if self.nx < 3:
                raise InvalidArgumentError("--nx must be >= 3 for a disk")
            if not self.radius > 0:
                raise InvalidArgumentError("--radius must be positive")
        if self.method not in METHODS:
            raise InvalidArgumentError(f"--method must be one of {METHODS}")
        if self.step is not None and not self.step > 0:
            raise InvalidArgumentError("--step must be positive")
        if not 0 < self.tol < 1:
            raise InvalidArgumentError("--tol must lie in (0, 1)")
        if self.max_iter < 1:
            raise InvalidArgumentError("--max-iter must be >= 1")
        if self.k is not None and self.k < 1:
            raise InvalidArgumentError("--k must be >= 1")
        if self.command == "eigen" and self.k is not None and self.k > MAX_PAIRS:
            raise InvalidArgumentError(f"--k is capped at {MAX_PAIRS} for eigen")
        if self.command == "remark" and self.domain_kind != "rect":
            raise InvalidArgumentError("remark needs a rectangle")
        bad = set(self.emit) - set(EMIT_KINDS)
        if bad:
            raise InvalidArgumentError(f"unknown --emit kinds {sorted(bad)}")

    def domain(self) -> GridDomain:
        if self.domain_kind == "disk":
            return make_disk(self.nx, self.radius)
        return make_rectangle(self.nx, self.ny, self.lx, self.ly)

    def render(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(v)
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="energymax", description="Energy maximization over the L2 unit ball.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "solve": "solve the Poisson problem for a normalized constant load",
        "maximize": "maximize Phi over the unit ball",
        "eigen": "lowest Dirichlet eigenpairs",
        "verify": "cross-check the optimizer against the dense oracle",
        "remark": "decay of Phi along orthonormal oscillatory modes",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--domain", dest="domain_kind", choices=("rect", "disk"), default="rect")
        p.add_argument("--nx", type=int, default=31)
        p.add_argument("--ny", type=int, default=None, help="defaults to --nx")
        p.add_argument("--lx", type=float, default=1.0)
        p.add_argument("--ly", type=float, default=1.0)
        p.add_argument("--radius", type=float, default=1.0)
        p.add_argument("--method", choices=METHODS, default="fixed-point")
        p.add_argument("--step", type=float, default=None, help="fixed step; default is 0.4/Phi(f_k)")
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--max-iter", type=int, default=50000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--out-dir", default="out")
        p.add_argument("--emit", default="csv", help="comma list of csv,field,pgm or 'none'")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    emit = () if ns.emit in ("", "none") else tuple(s.strip() for s in ns.emit.split(","))
    cfg = RunConfig(
        command=ns.command,
        domain_kind=ns.domain_kind,
        nx=ns.nx,
        ny=ns.nx if ns.ny is None else ns.ny,
        lx=ns.lx,
        ly=ns.ly,
        radius=ns.radius,
        method=ns.method,
        step=ns.step,
        tol=ns.tol,
        max_iter=ns.max_iter,
        seed=ns.seed,
        k=ns.k,
        out_dir=ns.out_dir,
        emit=emit,
    )
    if ns.verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    return cfg


def _summary(command, phi_value, lambda_est, iterations) -> str:
    return (
        f"{command}: phi_star={io.fmt(phi_value)} lambda_est={io.fmt(lambda_est)} "
        f"iterations={iterations}"
    )


def _emit_fields(cfg, out, fields):
    for name, f in fields:
        if "field" in cfg.emit:
            io.write_field(out / f"{name}.emaxf", f)
        if "pgm" in cfg.emit:
            io.write_pgm(out / f"{name}.pgm", f)


def _run_solve(cfg, domain, out):
    A = assemble(domain)
    f = normalize(from_function(domain, lambda x, y: 1.0))
    u, report = solve(A, f)
    value = phi(A, f)
    if "csv" in cfg.emit:
        io.write_csv(
            out / "solve.csv",
            ["energy_form", "duality_form", "discrepancy", "cg_iterations", "relative_residual"],
            [[value.energy_form, value.duality_form, value.discrepancy, report.iterations,
              report.relative_residual]],
            [value.value, 1.0 / value.value],
        )
    _emit_fields(cfg, out, [("u", u)])
    return _summary("solve", value.value, 1.0 / value.value, report.iterations), True


def _run_maximize(cfg, domain, out):
    A = assemble(domain)
    config = AscentConfig(cfg.method, cfg.step, cfg.tol, cfg.max_iter, cfg.seed)
    res = maximize(A, config)
    if "csv" in cfg.emit:
        io.write_csv(
            out / "trace.csv",
            ["iter", "phi", "movement"],
            [[r.iteration, r.phi, r.movement] for r in res.trace],
            [res.phi_star, res.lambda_est],
        )
    _emit_fields(cfg, out, [("f_hat", res.f_hat), ("u_hat", res.u_hat)])
    return _summary("maximize", res.phi_star, res.lambda_est, res.iterations), True


def _run_eigen(cfg, domain, out):
    A = assemble(domain)
    k = min(cfg.k or 3, domain.n_interior)
    pairs = eigen_smallest(A, k, seed=cfg.seed)
    gaps = verify_phi_reduction(A, pairs)
    lam1 = pairs[0].eigenvalue
    if "csv" in cfg.emit:
        io.write_csv(
            out / "eigen.csv",
            ["k", "lambda", "residual", "phi_reduction_error"],
            [[j + 1, p.eigenvalue, p.residual, g] for j, (p, g) in enumerate(zip(pairs, gaps))],
            [1.0 / lam1, lam1],
        )
    _emit_fields(cfg, out, [(f"eigvec_{j + 1}", p.vector) for j, p in enumerate(pairs)])
    return _summary("eigen", 1.0 / lam1, lam1, k), True


def _run_verify(cfg, domain, out):
    if domain.n_interior > MAX_DENSE:
        raise InvalidArgumentError(f"verify needs at most {MAX_DENSE} unknowns")
    A = assemble(domain)
    oracle_phi, oracle_vec = brute_max(domain)
    rows = []
    ok = True
    res = None
    for method in METHODS:
        res = maximize(A, AscentConfig(method, cfg.step, cfg.tol, cfg.max_iter, cfg.seed))
        phi_gap = abs(res.phi_star - oracle_phi) / oracle_phi
        cos_gap = 1.0 - abs(inner(res.f_hat, oracle_vec))
        for check, value, limit in (
            (f"{method}:phi_rel_gap", phi_gap, VERIFY_PHI_RTOL),
            (f"{method}:cosine_gap", cos_gap, VERIFY_COS_TOL),
            (f"{method}:extremality", res.extremality_residual, VERIFY_PHI_RTOL),
        ):
            passed = value <= limit
            ok &= passed
            rows.append([check, float(value), limit, "PASS" if passed else "FAIL"])
    if "csv" in cfg.emit:
        io.write_csv(
            out / "verify.csv", ["check", "value", "threshold", "status"], rows,
            [res.phi_star, res.lambda_est],
        )
    _emit_fields(cfg, out, [("f_hat", res.f_hat), ("oracle", oracle_vec)])
    line = _summary("verify", res.phi_star, res.lambda_est, res.iterations)
    return f"{line} {'PASS' if ok else 'FAIL'}", ok


def _run_remark(cfg, domain, out):
    rows = remark_table(domain, cfg.k)
    last = rows[-1]
    if "csv" in cfg.emit:
        io.write_csv(
            out / "remark.csv",
            ["k", "phi_k", "discrete_form", "continuum_form"],
            [[r.k, r.phi_k, r.discrete_form, r.closed_form] for r in rows],
            [last.phi_k, 1.0 / last.phi_k],
        )
    return _summary("remark", last.phi_k, 1.0 / last.phi_k, len(rows)), True


RUNNERS = {
    "solve": _run_solve,
    "maximize": _run_maximize,
    "eigen": _run_eigen,
    "verify": _run_verify,
    "remark": _run_remark,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        domain = cfg.domain()
    except InvalidArgumentError as exc:
        print(f"energymax: {exc}", file=sys.stderr)
        return EXIT_ARGS

    out = Path(cfg.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "run.cfg").write_text(cfg.render())
        line, ok = RUNNERS[cfg.command](cfg, domain, out)
    except InvalidArgumentError as exc:
        print(f"energymax: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (NonConvergenceError, NumericalBreakdownError) as exc:
        print(f"energymax: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except OSError as exc:
        print(f"energymax: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    print(line)
    return EXIT_OK if ok else EXIT_VERIFY


def main(argv=None) -> int:
    return run(parse_config(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    sys.exit(main())
