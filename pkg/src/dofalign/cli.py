"""Command-line harness: deterministic experiments with CSV/JSON output.

Exit codes: 0 success, 1 usage error, 2 verification failure (a theorem
check or zero-error check failed), 3 I/O error.  Identical (config, seed)
runs produce byte-identical output files: every random stream is keyed by
(seed, grid index, trial index) and no wall-clock data is written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from . import bounds as bounds_mod
from . import matrixio, multilevel, sumsets
from .channel import GainMatrix, is_fully_connected, reduce_to_canonical
from .lattice import fano_rate_bound, simulate_symbol_error
from .seeds import derive_key, rng_for

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    pass


@dataclass
class ExperimentConfig:
    command: str
    matrix_path: Optional[str] = None
    seed: int = 0
    power_grid: list[float] = field(default_factory=list)
    epsilon: float = 0.1
    trials: int = 1
    output_path: Optional[str] = None
    format: str = "csv"
    s_range: Optional[int] = None      # None = auto
    noise_variance: float = 1.0
    lemma: Optional[str] = None
    max_card: int = 40
    levels: int = 1
    scheme: str = "default"
    check: Optional[str] = None
    triple: Optional[tuple[int, int, int]] = None

    def validate(self):
        if self.command in ("lattice-sim", "sweep"):
            if not self.power_grid:
                raise UsageError("invalid grid: at least one power required")
            if any(b <= a for a, b in zip(self.power_grid, self.power_grid[1:])):
                raise UsageError("invalid grid: powers must be strictly increasing")
            if not 0 < self.epsilon < 0.25:
                raise UsageError("epsilon must lie in (0, 1/4)")
            if self.matrix_path is None:
                raise UsageError("--matrix is required")
        if self.command == "bounds" and self.matrix_path is None:
            raise UsageError("--matrix is required for bounds")
        if self.trials < 1:
            raise UsageError("trials must be >= 1")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")


_CONFIG_KEYS = {f.name for f in fields(ExperimentConfig)}


def _parse_powers(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError as e:
        raise UsageError(f"bad power list {text!r}: {e}") from None


def _parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--triple expects i,j,k")
    return tuple(int(p) for p in parts)


def merge_config(command: str, args: argparse.Namespace) -> ExperimentConfig:
    """File values first, CLI flags override; unknown file keys rejected."""
    file_values = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            file_values = json.loads(Path(config_path).read_text())
        except OSError as e:
            raise UsageError(f"cannot read config file: {e}") from None
        except json.JSONDecodeError as e:
            raise UsageError(f"config file line {e.lineno}: {e.msg}") from None
        unknown = set(file_values) - _CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")

    cfg = ExperimentConfig(command=command)
    if command == "bounds":
        cfg.format = "json"
    for key, value in file_values.items():
        if key == "power_grid":
            value = [float(v) for v in value]
        if key == "triple" and value is not None:
            value = tuple(value)
        setattr(cfg, key, value)

    overrides = {
        "matrix_path": getattr(args, "matrix", None),
        "seed": getattr(args, "seed", None),
        "epsilon": getattr(args, "epsilon", None),
        "trials": getattr(args, "trials", None),
        "output_path": getattr(args, "out", None),
        "format": getattr(args, "format", None),
        "noise_variance": getattr(args, "noise_variance", None),
        "lemma": getattr(args, "lemma", None),
        "max_card": getattr(args, "max_card", None),
        "levels": getattr(args, "levels", None),
        "scheme": getattr(args, "scheme", None),
        "check": getattr(args, "check", None),
    }
    if getattr(args, "powers", None) is not None:
        overrides["power_grid"] = _parse_powers(args.powers)
    if getattr(args, "s_range", None) is not None:
        overrides["s_range"] = None if args.s_range == "auto" else int(args.s_range)
    if getattr(args, "triple", None) is not None:
        overrides["triple"] = _parse_triple(args.triple)
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    return cfg


def config_echo(cfg: ExperimentConfig) -> str:
    """Canonical JSON echo of a config; re-parses to an equal config."""
    d = {k: v for k, v in cfg.__dict__.items()
         if v is not None and k != "output_path"}
    d["triple"] = list(cfg.triple) if cfg.triple else None
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

LATTICE_COLUMNS = ["P", "epsilon", "user", "cardinality", "min_gap",
                   "p_eps_threshold", "separation_ok", "empirical_error",
                   "analytic_error_bound", "fano_rate", "rate_ratio"]


def lattice_rows(cfg: ExperimentConfig, h: GainMatrix) -> list[dict]:
    rows = []
    for idx, power in enumerate(cfg.power_grid):
        point_seed = derive_key(cfg.seed, idx)
        res = simulate_symbol_error(h, power, cfg.epsilon, cfg.trials,
                                    point_seed,
                                    noise_variance=cfg.noise_variance,
                                    s_range=cfg.s_range)
        half_log = 0.5 * math.log2(power)
        for user in range(h.k):
            rate = fano_rate_bound(res.lattice.cardinality, res.error_rates[user])
            rows.append({
                "P": power, "epsilon": cfg.epsilon, "user": user + 1,
                "cardinality": res.lattice.cardinality,
                "min_gap": res.min_gaps[user],
                "p_eps_threshold": power ** cfg.epsilon,
                "separation_ok": res.separation_ok[user],
                "empirical_error": res.error_rates[user],
                "analytic_error_bound": res.analytic_bound,
                "fano_rate": rate, "rate_ratio": rate / half_log,
            })
    return rows


def run_lattice_sim(cfg: ExperimentConfig) -> tuple[list[dict], list[str], int]:
    h = matrixio.load(cfg.matrix_path)
    return lattice_rows(cfg, h), LATTICE_COLUMNS, EXIT_OK


def run_sweep(cfg: ExperimentConfig) -> tuple[list[dict], list[str], int]:
    """lattice-sim over the power grid plus a fitted DoF slope summary row."""
    h = matrixio.load(cfg.matrix_path)
    rows = lattice_rows(cfg, h)
    columns = ["row_kind"] + LATTICE_COLUMNS + ["dof_slope"]
    out = []
    points = {}
    for r in rows:
        r = {"row_kind": "point", **r, "dof_slope": ""}
        points.setdefault(r["P"], 0.0)
        points[r["P"]] += r["fano_rate"]
        out.append(r)
    fit = bounds_mod.dof_slope_estimate(sorted(points.items()))
    summary = {c: "" for c in columns}
    summary.update({"row_kind": "summary", "epsilon": cfg.epsilon,
                    "dof_slope": fit.slope})
    out.append(summary)
    return out, columns, EXIT_OK


SUMSET_COLUMNS = ["trial", "lemma", "size_a", "size_b", "p", "q",
                  "constant", "lhs", "rhs", "ok"]


def _random_set(g, max_card: int) -> sumsets.IntVectorSet:
    size = int(g.integers(1, max_card + 1))
    coords = g.choice(range(-50, 51), size=size, replace=False)
    return sumsets.IntVectorSet.of(int(c) for c in coords)


def run_sumset_verify(cfg: ExperimentConfig) -> tuple[list[dict], list[str], int]:
    lemma = cfg.lemma
    if lemma not in ("cover", "plunnecke", "setsum", "exg", "bsg"):
        raise UsageError(f"unknown lemma {lemma!r}")
    rows = []
    failures = 0
    for trial in range(cfg.trials):
        g = rng_for(cfg.seed, trial)
        a = _random_set(g, cfg.max_card)
        b = _random_set(g, cfg.max_card)
        p = int(g.choice([-3, -2, -1, 1, 2, 3]))
        q = int(g.choice([-3, -2, -1, 1, 2, 3]))
        row = {"trial": trial, "lemma": lemma, "size_a": len(a), "size_b": len(b),
               "p": p, "q": q, "constant": "", "lhs": "", "rhs": "", "ok": True}
        try:
            _sumset_trial(lemma, a, b, p, q, row)
        except (RuntimeError, sumsets.BsgSearchError):
            row["ok"] = False
        if not row["ok"]:
            failures += 1
        rows.append(row)
    return rows, SUMSET_COLUMNS, EXIT_VERIFICATION if failures else EXIT_OK


def _sumset_trial(lemma, a, b, p, q, row):
    if lemma == "cover":
        x = sumsets.ruzsa_cover(a, b)  # raises on verification failure
        row.update(lhs=len(x), rhs=len(sumsets.sumset(a, b)) / len(a))
    elif lemma == "plunnecke":
        rep = sumsets.plunnecke_check(a, b, abs(p), abs(q))
        row.update(constant=float(rep.ratio), lhs=rep.lhs,
                   rhs=float(rep.rhs), ok=rep.ok)
    elif lemma == "setsum":
        rep = sumsets.setsum_bound_check(a, b, p, q)
        row.update(constant=rep.k_value, lhs=rep.lhs, rhs=rep.rhs, ok=rep.ok)
    elif lemma == "exg":
        big, small = (a, b) if len(a) >= len(b) else (b, a)
        _, rep = sumsets.exg_construct(big, small, c=2.0)
        row.update(constant=rep.epsilon, lhs=rep.f_size,
                   rhs=rep.f_lower, ok=rep.ok)
    elif lemma == "bsg":
        kp = len(sumsets.sumset(a, b)) / math.sqrt(len(a) * len(b))
        _, _, rep = sumsets.bsg_construct(a, b, sumsets.all_pairs(a, b),
                                          kk=1.0, kp=kp)
        row.update(constant=kp, lhs=rep.sum_card, rhs=rep.sum_upper)


MULTILEVEL_COLUMNS = ["levels", "base", "p", "q", "alphabet_sizes", "dof",
                      "rate_user1", "rate_user2", "rate_user3",
                      "zero_error_ok", "tuples_checked"]


def load_scheme(spec: str, levels: int) -> multilevel.LevelScheme:
    if spec == "default":
        return multilevel.default_scheme(levels)
    try:
        data = json.loads(Path(spec).read_text())
    except OSError as e:
        raise UsageError(f"cannot read scheme file: {e}") from None
    return multilevel.LevelScheme(
        alphabets=tuple(tuple(a) for a in data["alphabets"]),
        base=data["Q"], levels=levels, p=data["p"], q=data["q"])


def run_multilevel(cfg: ExperimentConfig) -> tuple[list[dict], list[str], int]:
    scheme = load_scheme(cfg.scheme, cfg.levels)
    rates = multilevel.user_rates(scheme)
    row = {"levels": scheme.levels, "base": scheme.base, "p": scheme.p,
           "q": scheme.q,
           "alphabet_sizes": "x".join(str(len(a)) for a in scheme.alphabets),
           "dof": multilevel.scheme_dof(scheme),
           "rate_user1": rates[0], "rate_user2": rates[1], "rate_user3": rates[2],
           "zero_error_ok": "", "tuples_checked": ""}
    code = EXIT_OK
    if cfg.check == "exhaustive":
        res = multilevel.exhaustive_zero_error(scheme)
        row["zero_error_ok"] = res.ok
        row["tuples_checked"] = res.tuples_checked
        if not res.ok:
            code = EXIT_VERIFICATION
    return [row], MULTILEVEL_COLUMNS, code


def _fraction_json(x: Fraction) -> dict:
    return {"fraction": f"{x.numerator}/{x.denominator}",
            "decimal": round(float(x), 6)}


def run_bounds(cfg: ExperimentConfig) -> tuple[dict, None, int]:
    h = matrixio.load(cfg.matrix_path)
    if cfg.triple is not None or not is_fully_connected(h):
        users = cfg.triple if cfg.triple is not None else (0, 1, 2)
        if max(users) >= h.k:
            raise UsageError("--triple indices out of range")
        t = reduce_to_canonical(h, users)
        p, q = bounds_mod.canonical_pair(t.p, t.q)
        rep = bounds_mod.rational_3user_bound(p, q)
        doc = {
            "k": h.k,
            "triples": [{"users": list(users), "p": rep.p, "q": rep.q,
                         "d": rep.d_exponent, "rule": rep.rule,
                         "epsilon": _fraction_json(rep.epsilon)}],
            "delta": _fraction_json(rep.epsilon),
            "dof_upper": _fraction_json(rep.dof_upper),
            "halfK_upper": _fraction_json(bounds_mod.halfK_upper(3)),
        }
    else:
        rep = bounds_mod.rational_Kuser_bound(h)
        doc = {
            "k": rep.k,
            "triples": [{"users": list(t.users), "p": t.p, "q": t.q,
                         "d": t.d_exponent, "rule": t.rule,
                         "epsilon": _fraction_json(t.epsilon)}
                        for t in rep.triples],
            "delta": _fraction_json(rep.delta),
            "dof_upper": _fraction_json(rep.dof_upper),
            "halfK_upper": _fraction_json(bounds_mod.halfK_upper(rep.k)),
        }
    return doc, None, EXIT_OK


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        if not math.isfinite(v):
            raise VerificationFailure(f"non-finite value in output: {v}")
        return repr(v)
    return str(v)


def render_csv(rows: list[dict], columns: list[str], cfg: ExperimentConfig) -> str:
    buf = io.StringIO()
    buf.write(f"# dofalign {__version__} seed={cfg.seed} config={config_echo(cfg)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def render_json(doc, cfg: ExperimentConfig) -> str:
    payload = {"tool": "dofalign", "version": __version__, "seed": cfg.seed,
               "config": json.loads(config_echo(cfg)), "result": doc}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_output(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dofalign",
                description="interference-channel DoF experiments")
    p.add_argument("--version", action="version",
                   version=f"dofalign {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON config file; flags override")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out", help="output path (default: stdout)")

    sp = sub.add_parser("lattice-sim", help="Monte Carlo lattice alignment")
    common(sp)
    sp.add_argument("--matrix")
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--powers", help="comma-separated power grid")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--s-range", dest="s_range", help="auto or an integer")
    sp.add_argument("--noise-variance", dest="noise_variance", type=float)

    sp = sub.add_parser("sumset", help="additive-combinatorics verification")
    ssub = sp.add_subparsers(dest="sumset_action", required=True)
    sv = ssub.add_parser("verify")
    common(sv)
    sv.add_argument("--lemma", choices=["cover", "plunnecke", "setsum", "exg", "bsg"])
    sv.add_argument("--trials", type=int)
    sv.add_argument("--max-card", dest="max_card", type=int)

    sp = sub.add_parser("multilevel", help="deterministic multi-level code")
    common(sp)
    sp.add_argument("--levels", type=int)
    sp.add_argument("--scheme", help="'default' or a JSON scheme file")
    sp.add_argument("--check", choices=["exhaustive"])

    sp = sub.add_parser("bounds", help="closed-form DoF upper bounds")
    common(sp)
    sp.add_argument("--matrix")
    sp.add_argument("--triple", help="i,j,k (0-based) to bound a single triple")

    sp = sub.add_parser("sweep", help="lattice-sim over a grid + DoF slope fit")
    common(sp)
    sp.add_argument("--matrix")
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--powers")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--s-range", dest="s_range")
    sp.add_argument("--noise-variance", dest="noise_variance", type=float)
    return p


_RUNNERS = {
    "lattice-sim": run_lattice_sim,
    "sumset": run_sumset_verify,
    "multilevel": run_multilevel,
    "bounds": run_bounds,
    "sweep": run_sweep,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = merge_config(args.command, args)
        result, columns, code = _RUNNERS[args.command](cfg)
        if args.command == "bounds":
            text = render_json(result, cfg)
        else:
            text = render_csv(result, columns, cfg)
        write_output(text, cfg.output_path)
        return code
    except (UsageError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
