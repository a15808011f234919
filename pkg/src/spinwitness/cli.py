"""Command-line front end.

Verbs::

    spinwitness bound    --model heisenberg --d 1 --n 8 --b 0
    spinwitness ground   --model xy --n 8 --jx 1 --jy 0.5 --b 1
    spinwitness sweep    --model heisenberg --n 8 --b 0:5:0.25 --t 0.05:5:0.05 --out grid.csv
    spinwitness tbound   --model ising --n 6,8,10 --b 1
    spinwitness spectrum --model collective --n 6

Model parameters may also come from ``--config FILE`` holding ``key=value``
lines with the flag names as keys (``n=8``, ``model=xy``, ``periodic=false``);
explicit flags override the file.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import numkit
from .classical import (
    bh_bound,
    classical_energy,
    collective_bound,
    gutzwiller_min,
    heisenberg_bound,
    minimize_pair,
    minimize_product,
    antiparallel_pairs,
    separable_bound,
    xy_bound,
)
from .errors import NotBipartiteError, SpinWitnessError, UnsupportedError, UsageError
from .lattice import chain, cubic
from .models import ModelKind, SpinModel, hamiltonian
from .sweep import fmt, parse_range, run_sweep
from .thermal import (
    GrandCanonicalBH,
    LevelSet,
    collective_asymptotics,
    collective_levels,
    temperature_bound,
)

VERBS = ("bound", "ground", "sweep", "tbound", "spectrum")
MODELS = ("heisenberg", "xy", "ising", "collective", "bosehubbard")
DISAGREE_TOL = 1e-6

DEFAULTS = {
    "d": "1",
    "b": "0",
    "t": None,
    "j": "1",
    "seed": "0",
    "restarts": "32",
    "periodic": "true",
    "ensemble": "canonical",
}
CONFIG_KEYS = {
    "model", "d", "n", "side", "jx", "jy", "j", "b", "t", "nb",
    "periodic", "out", "seed", "restarts", "threads", "ensemble",
}


@dataclass
class Plan:
    verb: str
    model: str
    d: int
    n: list[int]
    side: int | None
    jx: float | None
    jy: float | None
    j: float
    b: list[float]
    t: list[float] | None
    nb: int | None
    periodic: bool
    out: str | None
    seed: int
    restarts: int
    threads: int
    ensemble: str = "canonical"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinwitness", description="Energy-based entanglement witnesses for spin models.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument("--model", choices=MODELS)
        p.add_argument("--d")
        p.add_argument("--n", help="site count; a comma list for tbound")
        p.add_argument("--side")
        p.add_argument("--jx")
        p.add_argument("--jy")
        p.add_argument("--j")
        p.add_argument("--b", help="field, or start:stop:step for sweep")
        p.add_argument("--t", help="temperature range start:stop:step (sweep)")
        p.add_argument("--nb")
        p.add_argument("--periodic", action=argparse.BooleanOptionalAction, default=None)
        p.add_argument("--out")
        p.add_argument("--seed")
        p.add_argument("--restarts")
        p.add_argument("--threads")
        p.add_argument("--ensemble", choices=("canonical", "grand"))
        p.add_argument("--config")
    return parser


def _read_config(path: str) -> dict[str, str]:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config {path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-")
        if key not in CONFIG_KEYS:
            raise UsageError(f"--config {path}:{lineno}: unknown key --{key}")
        values[key] = value
    return values


def _as_int(name, value):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"--{name}: expected an integer, got {value!r}") from None


def _as_float(name, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise UsageError(f"--{name}: expected a number, got {value!r}") from None


def _as_bool(name, value):
    if isinstance(value, bool):
        return value
    text = str(value).lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"--{name}: expected true/false, got {value!r}")


def parse_command(argv) -> Plan:
    """Validate ``argv`` into an execution plan; raises :class:`UsageError`."""
    ns = _build_parser().parse_args(list(argv))
    raw = dict(DEFAULTS)
    if ns.config:
        raw.update(_read_config(ns.config))
    for key, value in vars(ns).items():
        if key not in ("verb", "config") and value is not None:
            raw[key] = value

    model = raw.get("model")
    if model not in MODELS:
        raise UsageError("--model is required (heisenberg, xy, ising, collective, bosehubbard)")
    if "n" not in raw and "side" not in raw:
        raise UsageError("--n (or --side) is required")

    d = _as_int("d", raw["d"])
    side = _as_int("side", raw["side"]) if raw.get("side") is not None else None
    if "n" in raw:
        n = [_as_int("n", x) for x in str(raw["n"]).split(",")]
    else:
        n = [side**d]
    if len(n) > 1 and ns.verb != "tbound":
        raise UsageError("--n: a list of sizes is only accepted by tbound")

    b = parse_range(str(raw["b"]))
    if len(b) > 1 and ns.verb not in ("sweep", "bound"):
        raise UsageError("--b: a field range is only accepted by sweep and bound")
    t = parse_range(str(raw["t"])) if raw.get("t") is not None else None
    if ns.verb == "sweep" and t is None:
        raise UsageError("--t: sweep needs a temperature range")
    if t is not None and min(t) < 0:
        raise UsageError("--t: temperatures must be non-negative")

    jx = _as_float("jx", raw["jx"]) if raw.get("jx") is not None else None
    jy = _as_float("jy", raw["jy"]) if raw.get("jy") is not None else None
    if model == "ising":
        if jx not in (None, 1.0) or jy not in (None, 0.0):
            raise UsageError("--model ising fixes jx=1, jy=0; use --model xy instead")
        model, jx, jy = "xy", 1.0, 0.0
    if model == "xy" and (jx is None or jy is None):
        raise UsageError("--model xy needs --jx and --jy")

    threads = _as_int("threads", raw["threads"]) if raw.get("threads") is not None else (os.cpu_count() or 1)
    if threads < 1:
        raise UsageError("--threads must be positive")
    restarts = _as_int("restarts", raw["restarts"])
    if restarts < 1:
        raise UsageError("--restarts must be positive")
    if raw["ensemble"] not in ("canonical", "grand"):
        raise UsageError(f"--ensemble: expected canonical or grand, got {raw['ensemble']!r}")

    return Plan(
        verb=ns.verb,
        model=model,
        d=d,
        n=n,
        side=side,
        jx=jx,
        jy=jy,
        j=_as_float("j", raw["j"]),
        b=b,
        t=t,
        nb=_as_int("nb", raw["nb"]) if raw.get("nb") is not None else None,
        periodic=_as_bool("periodic", raw["periodic"]),
        out=raw.get("out"),
        seed=_as_int("seed", raw["seed"]),
        restarts=restarts,
        threads=threads,
        ensemble=raw["ensemble"],
    )


def _graph(plan: Plan, n: int):
    if plan.side is not None:
        if plan.side**plan.d != n:
            raise UsageError(f"--side {plan.side} with --d {plan.d} gives {plan.side**plan.d} sites, not {n}")
        return cubic(plan.d, plan.side, plan.periodic)
    if plan.d == 1:
        return chain(n, plan.periodic)
    side = round(n ** (1 / plan.d))
    if side**plan.d != n:
        raise UsageError(f"--n {n} is not a perfect {plan.d}-th power; pass --side")
    return cubic(plan.d, side, plan.periodic)


def build_model(plan: Plan, n: int, b: float) -> SpinModel:
    if plan.model == "heisenberg":
        return SpinModel.heisenberg(_graph(plan, n), b)
    if plan.model == "xy":
        return SpinModel.xy(_graph(plan, n), plan.jx, plan.jy, b)
    if plan.model == "collective":
        return SpinModel.collective(n)
    nb = plan.nb if plan.nb is not None else n // 2
    return SpinModel.bose_hubbard(n, nb, plan.j, plan.periodic)


def _describe(model: SpinModel, b: float) -> str:
    parts = [f"model={model.kind.value}", f"n={model.n_sites}"]
    if model.graph is not None:
        parts.append(f"graph={model.graph.name}")
        parts.append(f"B={fmt(b)}")
    if model.kind is ModelKind.XY:
        parts.append(f"jx={fmt(model.couplings['jx'])} jy={fmt(model.couplings['jy'])}")
    if model.kind is ModelKind.BOSE_HUBBARD:
        parts.append(f"nb={model.n_b} J={fmt(model.couplings['j'])}")
    return " ".join(parts)


def _bounds(model: SpinModel, plan: Plan):
    """(analytic value or None, numerical value, numerical method label)."""
    if model.kind is ModelKind.COLLECTIVE:
        n = model.n_sites
        return collective_bound(n), classical_energy(model, antiparallel_pairs(n)), "classical-pairing"
    if model.kind is ModelKind.BOSE_HUBBARD:
        j = model.couplings["j"]
        return bh_bound(model.n_sites, model.n_b, j), gutzwiller_min(model.n_sites, model.n_b, j), "gutzwiller"
    g = model.graph
    analytic = None
    if g.cubic_dim is not None:
        if model.kind is ModelKind.HEISENBERG:
            analytic = heisenberg_bound(g.cubic_dim, g.n, model.b_field)
        else:
            analytic = xy_bound(g.cubic_dim, g.n, *model.axis_couplings[:2], model.b_field)
    try:
        numerical = minimize_pair(model)
    except (NotBipartiteError, UnsupportedError):
        numerical = minimize_product(model, plan.restarts, plan.seed)
    return analytic, numerical.value, numerical.source


def _run_bound(plan: Plan, out) -> int:
    for n in plan.n:
        for b in plan.b:
            model = build_model(plan, n, b)
            analytic, numerical, method = _bounds(model, plan)
            print(_describe(model, b), file=out)
            if analytic is not None:
                print(f"e_sep analytic {fmt(analytic)}", file=out)
            print(f"e_sep {method} {fmt(numerical)}", file=out)
            if analytic is not None and abs(analytic - numerical) > DISAGREE_TOL:
                print(f"WARNING analytic and {method} bounds disagree by {fmt(abs(analytic - numerical))}", file=out)
    return 0


def _run_ground(plan: Plan, out) -> int:
    model = build_model(plan, plan.n[0], plan.b[0])
    ground = float(numkit.eigvalsh(hamiltonian(model))[0])
    e_sep = separable_bound(model, plan.restarts, plan.seed).value
    delta = ground - e_sep
    print(_describe(model, plan.b[0]), file=out)
    print(f"ground {fmt(ground)}", file=out)
    print(f"e_sep {fmt(e_sep)}", file=out)
    print(f"delta_e {fmt(delta)}", file=out)
    print(f"detected {int(delta < 0)}", file=out)
    return 0


def _run_sweep(plan: Plan, out) -> int:
    n = plan.n[0]
    grid = run_sweep(
        lambda b: build_model(plan, n, b),
        plan.b,
        plan.t,
        threads=plan.threads,
        restarts=plan.restarts,
        seed=plan.seed,
    )
    if plan.out:
        grid.write(plan.out)
        print(f"wrote {len(grid.points)} rows to {plan.out}", file=out)
    else:
        out.write(grid.to_csv())
    return 0


def _run_tbound(plan: Plan, out) -> int:
    b = plan.b[0]
    header = "n,T_E"
    if plan.model == "collective":
        header += ",T_E_asymptotic"
    print(header, file=out)
    for n in plan.n:
        model = build_model(plan, n, b)
        e_sep = separable_bound(model, plan.restarts, plan.seed).value
        if model.kind is ModelKind.COLLECTIVE:
            t_e = temperature_bound(collective_levels(n), e_sep)
            print(f"{n},{fmt(t_e)},{fmt(collective_asymptotics(n, 1.0)[1])}", file=out)
            continue
        if model.kind is ModelKind.BOSE_HUBBARD and plan.ensemble == "grand":
            t_e = GrandCanonicalBH(n, model.n_b, model.couplings["j"], model.periodic).temperature_bound(e_sep)
        else:
            t_e = temperature_bound(hamiltonian(model), e_sep)
        print(f"{n},{fmt(t_e)}", file=out)
    return 0


def _run_spectrum(plan: Plan, out) -> int:
    model = build_model(plan, plan.n[0], plan.b[0])
    if model.kind is ModelKind.COLLECTIVE:
        levels = collective_levels(model.n_sites)
    else:
        levels = LevelSet.from_eigenvalues(numkit.eigvalsh(hamiltonian(model)))
    print("energy,degeneracy", file=out)
    for energy, degeneracy in levels:
        print(f"{fmt(energy)},{degeneracy}", file=out)
    return 0


RUNNERS = {
    "bound": _run_bound,
    "ground": _run_ground,
    "sweep": _run_sweep,
    "tbound": _run_tbound,
    "spectrum": _run_spectrum,
}


def run(plan: Plan, out=None) -> int:
    return RUNNERS[plan.verb](plan, out or sys.stdout)


def main(argv=None, out=None, err=None) -> int:
    err = err or sys.stderr
    try:
        plan = parse_command(sys.argv[1:] if argv is None else argv)
        return run(plan, out)
    except UsageError as exc:
        print(f"spinwitness: usage error: {exc}", file=err)
        return 2
    except SpinWitnessError as exc:
        print(f"spinwitness: {type(exc).__name__}: {exc}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
