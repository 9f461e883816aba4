"""Command-line harness: ``setbalance {gen,brute,qaoa,qwoa,compare,entropy}``.

Every command is deterministic given ``--seed``.  JSON goes to stdout (or
``--out``), diagnostics to stderr.  Exit codes: 0 success, 2 invalid input,
3 runtime or optimizer failure, 4 size cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import oracle
from .entropy import SELECTORS, score_candidates
from .exceptions import SetBalanceError, SizeError
from .instances import random_instance
from .mixers import MixerFamily, MixerSpec, mixer_cnot_count, parse_family, parse_realization
from .optimize import OptimizerConfig
from .problem import SetBalancingInstance, bitstring, build_qubo, cost_diagonal
from .qaoa import (QaoaParams, approximation_ratio, best_sampled, optimize_qaoa, results_json,
                   run_qaoa, sample)
from .qwoa import WalkSpace, histogram_json, run_modified_qwoa, sweep_qwoa

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME, EXIT_SIZE = 0, 2, 3, 4
JOBS_ENV = "SETBALANCE_JOBS"
SIZE_CAP = oracle.MAX_ENUMERATION_VARIABLES


def load_schema(name):
    """Shipped JSON schema: ``instance``, ``results``, ``histogram`` or ``spectrum``."""
    text = resources.files("setbalance").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def read_instance(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return SetBalancingInstance.from_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


class InputError(SetBalanceError, ValueError):
    """Unreadable or invalid input file."""


def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise InputError(f"{out}: {exc.strerror or exc}") from exc


def ground_state(instance):
    """Oracle minimum, or None above the enumeration cap."""
    if instance.n > SIZE_CAP:
        return None
    return oracle.enumerate_spectrum(instance).min_value


def mixer_spec(name, impl, instance, seed):
    family = parse_family(name)
    if family is MixerFamily.WARM_START:
        solution = oracle.local_search(instance, seed=seed)
        return MixerSpec(family, impl, warm_start_solution=tuple(solution))
    return MixerSpec(family, impl)


def cost_cnot_count(instance):
    """CNOTs in one cost layer: two per nonzero off-diagonal ``Q_jk``."""
    q = build_qubo(instance)
    return 2 * int(np.count_nonzero(np.triu(q, k=1)))


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args):
    if not 0.0 < args.density < 1.0:
        raise InputError(f"density must lie in (0, 1), got {args.density}")
    instance = random_instance(args.rows, args.cols, args.density, seed=args.seed)
    _emit(instance.to_json(), args.out)
    return EXIT_OK


def cmd_brute(args):
    instance = read_instance(args.instance)
    spectrum = oracle.enumerate_spectrum(instance)
    _emit(spectrum.to_json(args.max_argmins), args.out)
    return EXIT_OK


def run_qaoa_report(instance, mixer="x", impl="gate", depth=3, shots=10000, max_evals=500, seed=0):
    """Optimize, sample and score one QAOA run; returns the results JSON text."""
    diag = cost_diagonal(instance)
    spec = mixer_spec(mixer, impl, instance, seed)
    if depth == 0:
        params, trace = QaoaParams((), ()), []
        dist = run_qaoa(instance, spec, params, diag)
    else:
        config = OptimizerConfig(max_evals=max_evals, seed=seed)
        params, dist, trace = optimize_qaoa(instance, spec, depth, config, seed=seed, diag=diag)
    counts = sample(dist, shots, seed=seed)
    found, index = best_sampled(dist, counts)
    ground = ground_state(instance)
    alpha = None if ground is None else approximation_ratio(ground, found)
    extra = {
        "mixer": spec.family.value, "impl": spec.realization.value, "shots": shots, "seed": seed,
        "best_sampled": {"bitstring": bitstring(index, instance.n), "objective": found},
    }
    if ground is not None:
        extra["ground_state"] = ground
    return results_json(params, dist, trace, alpha=alpha, floor=1e-12, extra=extra)


def cmd_qaoa(args):
    instance = read_instance(args.instance)
    text = run_qaoa_report(instance, args.mixer, args.impl, args.depth, args.shots,
                           args.max_evals, args.seed)
    _emit(text, args.out)
    return EXIT_OK


def cmd_qwoa(args):
    instance = read_instance(args.instance)
    config = OptimizerConfig(max_evals=args.max_evals, seed=args.seed)
    if args.modified:
        depths = [d for d in args.depth if d > 0] or [1]
        series = []
        for r in depths:
            result = run_modified_qwoa(instance, p_seed=1, r=r, optimizer_config=config,
                                       seed=args.seed, shots=args.shots, restarts=args.restarts)
            entry = histogram_json(r, result.distribution)
            entry["threshold"] = result.threshold
            entry["subspace_size"] = result.space.size
            series.append(entry)
    else:
        diag = cost_diagonal(instance)
        space = WalkSpace.full(instance.n)
        sweep = sweep_qwoa(instance, space, args.depth, config, args.restarts, args.seed, diag=diag)
        series = [histogram_json(r, dist) for r, _, dist, _ in sweep]
    _emit(json.dumps(series, indent=2), args.out)
    return EXIT_OK


# -- compare ----------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    """A mixer-comparison sweep: one cell per (size, mixer, mode)."""

    sizes: tuple = ((6, 6), (8, 8), (10, 10))
    trials: int = 20
    depth: int = 3
    mixers: tuple = ("x",)
    modes: tuple = ("gate",)
    shots: int = 10000
    seed: int = 0
    density: float = 0.5
    max_evals: int = 500
    jobs: int = 1
    cells: list = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.trials < 1:
            raise InputError("trials must be >= 1")
        if self.depth < 0:
            raise InputError("depth must be >= 0")
        for m, n in self.sizes:
            if m < 1 or n < 1:
                raise InputError(f"invalid size {m}x{n}")
            if n > SIZE_CAP:
                raise SizeError(f"size {m}x{n} exceeds the {SIZE_CAP}-variable cap")
        object.__setattr__(self, "mixers", tuple(parse_family(m).value for m in self.mixers))
        object.__setattr__(self, "modes", tuple(parse_realization(r).value for r in self.modes))
        cells = [(size, mixer, mode) for size in self.sizes for mixer in self.mixers for mode in self.modes]
        object.__setattr__(self, "cells", cells)


def trial_instance(config, size, trial):
    """Trial instances depend on (seed, size, trial) only, so every mixer sees the same ones."""
    m, n = size
    seq = np.random.SeedSequence([config.seed, m, n, trial])
    return random_instance(m, n, config.density, seed=seq)


def run_cell(config, cell_index):
    """Mean and spread of alpha over the trials of one cell."""
    (m, n), mixer, mode = config.cells[cell_index]
    cell_seed = int(np.random.SeedSequence([config.seed, cell_index]).generate_state(1)[0])
    alphas, cnots, failures = [], [], []
    for t in range(config.trials):
        try:
            instance = trial_instance(config, (m, n), t)
            run_seed = cell_seed + t
            payload = json.loads(run_qaoa_report(instance, mixer, mode, config.depth, config.shots,
                                                 config.max_evals, run_seed))
            alphas.append(payload["alpha"])
            spec = mixer_spec(mixer, mode, instance, run_seed)
            cnots.append(config.depth * (cost_cnot_count(instance) + mixer_cnot_count(spec, n)))
        except (SetBalanceError, ValueError, FloatingPointError) as exc:
            failures.append(f"trial {t}: {exc}")
    return {
        "size": f"{m}x{n}", "mixer": mixer, "mode": mode, "depth": config.depth,
        "mean_alpha": float(np.mean(alphas)) if alphas else float("nan"),
        "std_alpha": float(np.std(alphas)) if alphas else float("nan"),
        "mean_cnots": float(np.mean(cnots)) if cnots else float("nan"),
        "failures": "; ".join(failures),
        "_key": ((m, n), mixer, mode),
    }


def compare_rows(config):
    """Run every cell, in parallel up to ``config.jobs``, sorted by (size, mixer, mode)."""
    indices = range(len(config.cells))
    if config.jobs > 1 and len(config.cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(run_cell, [config] * len(config.cells), indices))
    else:
        rows = [run_cell(config, i) for i in indices]
    for row in rows:
        print(f"cell {row['size']} {row['mixer']} {row['mode']}: mean alpha {row['mean_alpha']:.4f}",
              file=sys.stderr)
    rows.sort(key=lambda r: r.pop("_key"))
    return rows


COMPARE_COLUMNS = ["size", "mixer", "mode", "depth", "mean_alpha", "std_alpha", "mean_cnots", "failures"]


def rows_to_csv(rows, columns):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\r\n", extrasaction="ignore")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_compare(args):
    config = ExperimentConfig(
        sizes=tuple(args.sizes), trials=args.trials, depth=args.depth, mixers=tuple(args.mixers),
        modes=tuple(args.impl), shots=args.shots, seed=args.seed, density=args.density,
        max_evals=args.max_evals, jobs=args.jobs,
    )
    _emit(rows_to_csv(compare_rows(config), COMPARE_COLUMNS), args.out)
    return EXIT_OK


# -- entropy ----------------------------------------------------------------


def entropy_candidates(instance, source, epsilon=None, floor=1e-6, depth=3, max_evals=500, seed=0):
    """Basis indices to score: oracle argmins or the QAOA support above ``floor``."""
    if source == "oracle":
        table = oracle.objective_table(instance)
        lo = table.min()
        tol = 1e-9 if epsilon is None else epsilon
        return [int(i) for i in np.flatnonzero(table <= lo + tol)]
    if source != "qaoa":
        raise InputError(f"unknown candidate source {source!r}; valid options: oracle, qaoa")
    config = OptimizerConfig(max_evals=max_evals, seed=seed)
    _, dist, _ = optimize_qaoa(instance, MixerSpec("x"), depth, config, seed=seed)
    support = np.flatnonzero(dist.probabilities > floor)
    if epsilon is not None and len(support):
        lo = dist.values[support].min()
        support = support[dist.values[support] <= lo + epsilon]
    return [int(i) for i in support]


def cmd_entropy(args):
    instance = read_instance(args.instance)
    candidates = entropy_candidates(instance, args.candidates, args.epsilon, args.floor,
                                    args.depth, args.max_evals, args.seed)
    if not candidates:
        raise InputError("no candidates: lower --floor or use --candidates oracle")
    report = score_candidates(instance, candidates)
    _emit(report.to_csv(args.selector, args.top), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"expected non-negative integers, got {text!r}")
    return values


def _sizes(text):
    sizes = []
    for part in text.split(","):
        part = part.strip().lower()
        try:
            m, n = (int(v) for v in part.split("x")) if "x" in part else (int(part), int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad size {part!r}; use K or MxN") from None
        sizes.append((m, n))
    return sizes


def _names(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def default_jobs():
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def build_parser():
    parser = argparse.ArgumentParser(prog="setbalance", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--out", help="write output here instead of stdout")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="random instance JSON")
    p.add_argument("rows", type=int)
    p.add_argument("cols", type=int)
    p.add_argument("--density", type=float, default=0.5)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("brute", help="exhaustive spectrum JSON")
    p.add_argument("instance")
    p.add_argument("--max-argmins", type=int, default=1024)
    common(p, seed=False)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("qaoa", help="optimize and sample one QAOA run")
    p.add_argument("instance")
    p.add_argument("--mixer", default="x", help=", ".join(m.value for m in MixerFamily))
    p.add_argument("--impl", default="gate", help="gate or pauli")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--max-evals", type=int, default=500)
    common(p)
    p.set_defaults(func=cmd_qaoa)

    p = sub.add_parser("qwoa", help="QWOA depth sweep, one histogram per depth")
    p.add_argument("instance")
    p.add_argument("--depth", type=_int_list, default=[5], help="depth or comma-separated depths")
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--modified", action="store_true", help="threshold-subspace variant")
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--max-evals", type=int, default=2000)
    common(p)
    p.set_defaults(func=cmd_qwoa)

    p = sub.add_parser("compare", help="mean approximation ratio per (size, mixer, mode)")
    p.add_argument("--sizes", type=_sizes, default=[(6, 6), (8, 8), (10, 10)])
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--mixers", type=_names, default=["x"])
    p.add_argument("--impl", type=_names, default=["gate"])
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--max-evals", type=int, default=500)
    p.add_argument("--jobs", type=int, default=None, help=f"parallel cells (default ${JOBS_ENV} or 1)")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("entropy", help="rank candidates by row-wise entropy")
    p.add_argument("instance")
    p.add_argument("--candidates", choices=["oracle", "qaoa"], default="oracle")
    p.add_argument("--top", type=int, default=None)
    p.add_argument("--selector", choices=SELECTORS, default="combined")
    p.add_argument("--epsilon", type=float, default=None, help="keep candidates within epsilon of the best J")
    p.add_argument("--floor", type=float, default=1e-6, help="QAOA probability floor")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--max-evals", type=int, default=500)
    common(p)
    p.set_defaults(func=cmd_entropy)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 0) is None:
        args.jobs = default_jobs()
    try:
        return args.func(args)
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SetBalanceError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
