"""``tpverify`` command line.

Exit status: 0 all checks pass, 1 some check failed, 2 usage error,
3 a cost guard (determinant cap or enumeration budget) refused the run.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import constructions as cons
from .certificate import Certificate
from .errors import GuardError, NetworkError, ParameterError, ShapeError
from .immanant import verify_conjecture
from .polymat import DET_CAP
from .seqmat import check_generalized_params, generalized_data, hankel
from .verifier import (
    default_budget,
    index_pairs,
    sweep_main,
    sweep_thm32,
    verify_lgv,
    verify_main,
    verify_thm32,
    verify_thm43,
    verify_tp,
)

COMMANDS = ("hankel", "thm32", "main", "thm43", "immanant", "dump-network", "lgv-check")
NETWORKS = ("lb", "b", "bt", "t", "h")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    max_order: Optional[int] = None
    det_cap: int = DET_CAP
    rows: Optional[Tuple[int, ...]] = None
    cols: Optional[Tuple[int, ...]] = None
    case: Optional[int] = None
    e: Optional[int] = None
    f: Optional[int] = None
    kmax: Optional[int] = None
    budget: Optional[int] = None
    jobs: int = 1
    out: Optional[str] = None
    which: str = "h"

    def validate(self) -> "RunConfig":
        if self.n is None:
            raise UsageError(f"{self.command} needs --n")
        if self.n < 0:
            raise UsageError("--n must be nonnegative")
        if (self.rows is None) != (self.cols is None):
            raise UsageError("--rows and --cols must be given together")
        if self.rows is not None:
            if len(self.rows) != len(self.cols) or not self.rows:
                raise UsageError("--rows and --cols must be nonempty and of equal length")
            for idx in (self.rows, self.cols):
                if any(a >= b for a, b in zip(idx, idx[1:])) or min(idx) < 0:
                    raise UsageError("--rows/--cols must be strictly ascending nonnegative integers")
        generalized = (self.case, self.e, self.f)
        if any(v is not None for v in generalized):
            if any(v is None for v in generalized):
                raise UsageError("--case, --e and --f must be given together")
            try:
                check_generalized_params(self.case, self.e, self.f)
            except ParameterError as exc:
                raise UsageError(str(exc)) from None
        elif self.command == "thm43":
            raise UsageError("thm43 needs --case, --e and --f")
        if self.command == "immanant" and self.kmax is None:
            raise UsageError("immanant needs --kmax")
        if self.command == "dump-network" and not self.out:
            raise UsageError("dump-network needs --out")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if self.budget is not None and self.budget < 1:
            raise UsageError("--budget must be positive")
        if self.max_order is not None and self.max_order < 1:
            raise UsageError("--max-order must be positive")
        return self

    @property
    def generalized(self) -> Optional[Tuple[int, int, int]]:
        return None if self.case is None else (self.case, self.e, self.f)


def _index_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpverify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int)
        p.add_argument("--max-order", type=int, dest="max_order")
        p.add_argument("--det-cap", type=int, default=DET_CAP, dest="det_cap",
                       help="largest determinant order allowed (default %(default)s)")
        p.add_argument("--rows", type=_index_list)
        p.add_argument("--cols", type=_index_list)
        p.add_argument("--case", type=int, choices=(1, 2))
        p.add_argument("--e", type=int)
        p.add_argument("--f", type=int)
        p.add_argument("--kmax", type=int)
        p.add_argument("--budget", type=int, help="enumeration budget (default: $TPVERIFY_BUDGET or 10^7)")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", help="write the certificate (or network) JSON here")
        if name in ("dump-network", "lgv-check"):
            p.add_argument("--which", choices=NETWORKS, default="h")
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields).validate()


def _network(cfg: RunConfig):
    """The requested network with its default source and sink lists."""
    n = cfg.n
    weights = cons.TYPE_B_WEIGHTS if cfg.case is None else cons.generalized_weights(*cfg.generalized)
    data = None if cfg.case is None else generalized_data(*cfg.generalized, 2 * n + 2)
    if cfg.which == "lb":
        return cons.build_lb(n, weights), cons.lb_sources(n), cons.lb_sinks(n)
    if cfg.which == "b":
        return cons.build_b(n, weights), cons.b_sources(n), cons.b_sinks(n)
    if cfg.which == "bt":
        return cons.build_bt(n, weights), cons.bt_sources(n), cons.bt_sinks(n)
    if cfg.which == "t":
        return cons.build_t(n, data), cons.t_sources(n), cons.t_sinks(n)
    seg = cons.build_h(n, weights, data)
    return seg, list(seg.sources), list(seg.sinks)


def _run_hankel(cfg: RunConfig) -> Certificate:
    data = None if cfg.case is None else generalized_data(*cfg.generalized, 2 * cfg.n + 2)
    max_order = cfg.max_order or cfg.n + 1
    subject = {"matrix": "hankel", "n": cfg.n, "max_order": max_order}
    if cfg.generalized:
        subject.update(case=cfg.case, e=cfg.e, f=cfg.f)
    return verify_tp(hankel(cfg.n, data), max_order, cap=cfg.det_cap, subject=subject)


def _run_thm32(cfg: RunConfig) -> Certificate:
    if cfg.rows is not None:
        return verify_thm32(cfg.n, cfg.rows, cfg.cols, cfg.budget, cap=cfg.det_cap)
    return sweep_thm32(cfg.n, cfg.max_order or 3, cfg.budget)


def _run_main(cfg: RunConfig) -> Certificate:
    if cfg.rows is not None and cfg.generalized is None:
        return verify_main(cfg.n, cfg.rows, cfg.cols, cfg.budget, cap=cfg.det_cap)
    if cfg.rows is not None:
        weights = cons.generalized_weights(*cfg.generalized)
        data = generalized_data(*cfg.generalized, 2 * cfg.n + 2)
        return verify_main(cfg.n, cfg.rows, cfg.cols, cfg.budget, cons.build_h(cfg.n, weights, data),
                           hankel(cfg.n, data), weights, cap=cfg.det_cap)
    return sweep_main(cfg.n, cfg.max_order, cfg.budget, cfg.jobs, cfg.generalized)


def _run_lgv(cfg: RunConfig) -> Certificate:
    net, U, V = _network(cfg)
    if isinstance(net, cons.SegmentedNetwork):
        net = net.net
    subject = {"check": "lgv", "network": cfg.which, "n": cfg.n}
    if cfg.rows is not None:
        pairs = [(cfg.rows, cfg.cols)]
    else:
        pairs = list(index_pairs(len(U), cfg.max_order or 3))
    parts = []
    for I, J in pairs:
        if I[-1] >= len(U) or J[-1] >= len(V):
            raise UsageError(f"indices out of range for {len(U)} sources")
        parts.append(verify_lgv(net, [U[i] for i in I], [V[j] for j in J], cfg.budget, cfg.det_cap))
    return Certificate.merge(subject, parts)


def _dump_network(cfg: RunConfig) -> int:
    net, U, V = _network(cfg)
    data = net.to_json()
    if not isinstance(net, cons.SegmentedNetwork):
        data["sources"] = [str(u) for u in U]
        data["sinks"] = [str(v) for v in V]
    with open(cfg.out, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
    print(f"wrote {cfg.which} network for n={cfg.n} to {cfg.out} "
          f"({len(data['vertices'])} vertices, {len(data['arcs'])} arcs)")
    return 0


def execute(cfg: RunConfig) -> int:
    if cfg.command == "dump-network":
        return _dump_network(cfg)
    if cfg.command == "hankel":
        cert = _run_hankel(cfg)
    elif cfg.command == "thm32":
        cert = _run_thm32(cfg)
    elif cfg.command == "main":
        cert = _run_main(cfg)
    elif cfg.command == "thm43":
        cert = verify_thm43(cfg.case, cfg.e, cfg.f, cfg.n, cfg.budget, cfg.jobs)
    elif cfg.command == "immanant":
        data = None if cfg.case is None else generalized_data(*cfg.generalized, 2 * cfg.n + 2)
        cert = verify_conjecture(cfg.n, cfg.kmax, data, cfg.jobs)
    else:
        cert = _run_lgv(cfg)
    for line in cert.summary_lines():
        print(line)
    if cfg.rows is not None and len(cert.checks):
        det_checks = [c for c in cert.checks if c.name.startswith("det_vs")]
        for c in det_checks[:1]:
            print(f"lhs={c.lhs} rhs={c.rhs}")
    status = "PASS" if cert.passed else "FAIL"
    print(f"{status} {cfg.command}: {len(cert.checks)} checks in {cert.elapsed_ms} ms")
    if cfg.out:
        cert.write(cfg.out)
    return 0 if cert.passed else 1


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"tpverify: error: {exc}", file=sys.stderr)
        return 2
    if cfg.budget is None:
        cfg.budget = default_budget()
    try:
        return execute(cfg)
    except GuardError as exc:
        print(f"tpverify: guard: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ParameterError, ShapeError, NetworkError) as exc:
        print(f"tpverify: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
