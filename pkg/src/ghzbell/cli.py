"""Command-line frontend emitting machine-readable reports.

Subcommands: eval, reduce, degeneracy, game, scan, example-n4. Every report
carries a manifest with the command name, a sha256 digest of the
canonicalized input, the seed (when one applies), the tool version and the
wall time. Reports are deterministic for a fixed (input, seed, version)
apart from the wall-time field.

Exit codes: 0 success, 2 parse/usage error, 3 capacity error, 4 degenerate
direction, 5 parity or phase-sum error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .bell import (
    BellConfig,
    DegenerateDirectionError,
    MeasurementDirection,
    bell_operator,
    chsh_value,
    ghz_state,
    reduce_to_two_qubit,
    reduction_dominance_scan,
)
from .degeneracy import (
    TSIRELSON,
    DegeneracyMismatchError,
    ParityError,
    PhaseSumError,
    degenerate_basis_axis,
    degenerate_basis_planar,
    four_qubit_example,
)
from .games import (
    ChshStrategy,
    chsh_game_value,
    chsh_star_value,
    identity_strategy,
    optimal_strategy,
    play_monte_carlo,
)
from .qops import CapacityError, Unitary2, expectation

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAPACITY = 3
EXIT_DEGENERATE = 4
EXIT_PARITY_PHASE = 5


class ConfigError(ValueError):
    """Malformed configuration or strategy input."""


def _sig12(x: float) -> float:
    """Round to 12 significant digits for echoed angles."""
    return float(f"{float(x):.12g}")


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _direction_from_obj(obj, where: str) -> MeasurementDirection:
    if not isinstance(obj, dict) or set(obj) != {"alpha", "phi"}:
        raise ConfigError(f"{where} must be an object with exactly 'alpha' and 'phi'")
    try:
        return MeasurementDirection(float(obj["alpha"]), float(obj["phi"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def load_config(path: str) -> tuple[BellConfig, dict]:
    """Parse a JSON measurement configuration; returns (config, canonical dict)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    expected = {"n", "a0", "a1", "b0", "b1"}
    if set(raw) != expected:
        unknown = sorted(set(raw) - expected)
        missing = sorted(expected - set(raw))
        raise ConfigError(f"config keys mismatch (unknown {unknown}, missing {missing})")
    if not isinstance(raw["n"], int):
        raise ConfigError("'n' must be an integer")
    n = raw["n"]
    for side in ("a0", "a1"):
        if not isinstance(raw[side], list) or len(raw[side]) != n - 1:
            raise ConfigError(f"'{side}' must be an array of {n - 1} direction objects")
    try:
        cfg = BellConfig(
            a0_dirs=tuple(
                _direction_from_obj(d, f"a0[{i}]") for i, d in enumerate(raw["a0"])
            ),
            a1_dirs=tuple(
                _direction_from_obj(d, f"a1[{i}]") for i, d in enumerate(raw["a1"])
            ),
            b0_dir=_direction_from_obj(raw["b0"], "b0"),
            b1_dir=_direction_from_obj(raw["b1"], "b1"),
        )
    except CapacityError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.n != n:
        raise ConfigError(f"'n'={n} does not match the {cfg.n}-qubit direction lists")
    canonical = {
        "n": n,
        "a0": [{"alpha": d.alpha, "phi": d.phi} for d in cfg.a0_dirs],
        "a1": [{"alpha": d.alpha, "phi": d.phi} for d in cfg.a1_dirs],
        "b0": {"alpha": cfg.b0_dir.alpha, "phi": cfg.b0_dir.phi},
        "b1": {"alpha": cfg.b1_dir.alpha, "phi": cfg.b1_dir.phi},
    }
    return cfg, canonical


def _unitary_from_json(rows, where: str) -> Unitary2:
    try:
        arr = np.array(
            [[complex(cell[0], cell[1]) for cell in row] for row in rows], dtype=complex
        )
    except (TypeError, IndexError, ValueError) as exc:
        raise ConfigError(f"{where} must be a 2x2 matrix of [re, im] pairs") from exc
    if arr.shape != (2, 2):
        raise ConfigError(f"{where} must be 2x2, got shape {arr.shape}")
    try:
        return Unitary2(arr)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def load_strategy(spec: str) -> tuple[ChshStrategy, object]:
    """Resolve a strategy spec: 'identity', 'optimal' or 'file:<path>'."""
    if spec == "identity":
        return identity_strategy(), "identity"
    if spec == "optimal":
        return optimal_strategy(), "optimal"
    if spec.startswith("file:"):
        path = spec[len("file:") :]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read strategy file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"strategy file is not valid JSON: {exc}") from exc
        expected = {"a0", "a1", "b0", "b1"}
        if not isinstance(raw, dict) or set(raw) != expected:
            raise ConfigError(f"strategy file must have exactly the keys {sorted(expected)}")
        mats = {k: _unitary_from_json(raw[k], k) for k in ("a0", "a1", "b0", "b1")}
        canonical = {
            k: [[[c.real, c.imag] for c in row] for row in mats[k].entries.tolist()]
            for k in ("a0", "a1", "b0", "b1")
        }
        return ChshStrategy(mats["a0"], mats["a1"], mats["b0"], mats["b1"]), canonical
    raise ConfigError(f"unknown strategy {spec!r}; use identity, optimal or file:<path>")


def _echo_config(canonical: dict) -> dict:
    out = {"n": canonical["n"]}
    for side in ("a0", "a1"):
        out[side] = [
            {"alpha": _sig12(d["alpha"]), "phi": _sig12(d["phi"])} for d in canonical[side]
        ]
    for side in ("b0", "b1"):
        out[side] = {
            "alpha": _sig12(canonical[side]["alpha"]),
            "phi": _sig12(canonical[side]["phi"]),
        }
    return out


def _state_amplitudes(state) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def _flatten(prefix: str, value, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            rows.append((prefix, ";".join(_scalar(v) for v in value)))
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}.{i}", v, rows)
    else:
        rows.append((prefix, _scalar(value)))


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def render_report(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows: list[tuple[str, str]] = []
    _flatten("", payload, rows)
    lines = ["key,value"]
    for key, val in rows:
        if "," in val or '"' in val:
            val = '"' + val.replace('"', '""') + '"'
        lines.append(f"{key},{val}")
    return "\n".join(lines) + "\n"


def _manifest(command: str, digest: str, seed, started: float) -> dict:
    return {
        "command": command,
        "config_digest": digest,
        "seed": seed,
        "tool_version": __version__,
        "wall_time_ms": int((time.perf_counter() - started) * 1000),
    }


def cmd_eval(args):
    cfg, canonical = load_config(args.config)
    closed = chsh_value(cfg)
    matrix = expectation(ghz_state(cfg.n), bell_operator(cfg))
    return {
        "config": _echo_config(canonical),
        "i_n_closed_form": closed,
        "i_n_matrix": matrix,
        "difference": closed - matrix,
        "saturates_quantum_bound": bool(abs(abs(matrix) - TSIRELSON) <= 1e-9),
    }, canonical


def cmd_reduce(args):
    cfg, canonical = load_config(args.config)
    rep = reduce_to_two_qubit(cfg)
    if rep.i_n > 2.0:
        verdict = "holds" if rep.i_2 >= rep.i_n - 1e-9 else "violated"
    elif rep.i_n < -2.0:
        verdict = "holds" if rep.i_2 <= rep.i_n + 1e-9 else "violated"
    else:
        verdict = "not_applicable"
    return {
        "config": _echo_config(canonical),
        "two_qubit": {
            "a0": list(rep.two_qubit.a0),
            "a1": list(rep.two_qubit.a1),
            "b0": list(rep.two_qubit.b0),
            "b1": list(rep.two_qubit.b1),
        },
        "eps": rep.eps,
        "eps_prime": rep.eps_prime,
        "i_n": rep.i_n,
        "i_2": rep.i_2,
        "dominance": verdict,
    }, canonical


def cmd_degeneracy(args):
    phi_primes = None
    if args.phi_primes is not None:
        try:
            phi_primes = [float(x) for x in args.phi_primes.split(",") if x.strip() != ""]
        except ValueError as exc:
            raise ConfigError(f"bad --phi-primes list: {exc}") from exc
    if args.case == 1:
        if phi_primes is not None:
            raise ConfigError("--phi-primes applies to case 5 only")
        report = degenerate_basis_axis(args.n)
    else:
        report = degenerate_basis_planar(args.n, phi_primes)
    canonical = {"case": args.case, "n": args.n, "phi_primes": phi_primes}
    return {
        "case": args.case,
        "n": args.n,
        "phi_primes": None if phi_primes is None else [_sig12(p) for p in phi_primes],
        "max_eigenvalue": report.max_eigenvalue,
        "multiplicity": report.multiplicity,
        "expected_upper_bound": 2 ** (args.n - 2),
        "subsets": [list(k) for k in report.subsets],
        "basis": [_state_amplitudes(s) for s in report.basis],
        "spectral_vs_combinatorial": "agree",
        "construction": report.construction.value,
    }, canonical


def cmd_game(args):
    strategy, canonical_strategy = load_strategy(args.strategy)
    exact = chsh_game_value(strategy) if args.game == "chsh" else chsh_star_value(strategy)
    other = chsh_star_value(strategy) if args.game == "chsh" else chsh_game_value(strategy)
    payload = {
        "strategy": args.strategy,
        "game": args.game,
        "i_value": exact.i_value,
        "success_probability": exact.success_probability,
        "per_input_win_prob": [list(row) for row in exact.per_input_win_prob],
        "i_value_other_game": other.i_value,
    }
    if args.shots is not None:
        if args.shots < 1:
            raise ConfigError("--shots must be >= 1")
        mc = play_monte_carlo(strategy, args.game, args.shots, args.seed)
        payload["monte_carlo"] = {
            "shots": mc.shots,
            "seed": mc.seed,
            "wins": mc.wins,
            "estimate": mc.estimate,
            "std_error": mc.std_error,
        }
    canonical = {
        "strategy": canonical_strategy,
        "game": args.game,
        "shots": args.shots,
        "seed": args.seed,
    }
    return payload, canonical


def cmd_scan(args):
    try:
        n_values = [int(x) for x in args.n_list.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad --n-list: {exc}") from exc
    if not n_values:
        raise ConfigError("--n-list must name at least one qubit count")
    summary = reduction_dominance_scan(
        n_values, args.samples, args.seed, threads=args.threads
    )
    canonical = {"n_list": n_values, "samples": args.samples, "seed": args.seed}
    return {
        "samples_per_n": summary.samples_per_n,
        "seed": summary.seed,
        "results": [
            {
                "n": r.n,
                "samples": r.samples,
                "positive_violations": r.positive_violations,
                "negative_violations": r.negative_violations,
                "violation_rate": r.violations / r.samples,
                "skipped_degenerate": r.skipped_degenerate,
                "counterexamples": r.counterexamples,
                "max_gap_violation": r.max_gap_violation,
            }
            for r in summary.results
        ],
        "total_counterexamples": summary.total_counterexamples,
        "max_gap_violation": summary.max_gap_violation,
    }, canonical


def cmd_example_n4(args):
    example = four_qubit_example()
    return {
        "i_value": example.i_value,
        "multiplicity": example.report.multiplicity,
        "max_eigenvalue": example.report.max_eigenvalue,
        "subsets": [list(k) for k in example.report.subsets],
        "states": [_state_amplitudes(s) for s in example.report.basis],
        "fidelities": list(example.fidelities),
        "spectral_vs_combinatorial": "agree",
    }, {}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzbell",
        description="Generalized CHSH functions on GHZ states: evaluation, "
        "game reductions and degeneracy certification.",
    )
    parser.add_argument("--version", action="version", version=f"ghzbell {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument(
            "--threads",
            type=int,
            default=int(os.environ.get("BELL_THREADS", "1")),
            help="worker threads for scans (default 1, or BELL_THREADS)",
        )

    p = sub.add_parser("eval", help="evaluate a configuration on the GHZ state")
    p.add_argument("--config", required=True)
    add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reduce", help="collapse a configuration to two qubits")
    p.add_argument("--config", required=True)
    add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("degeneracy", help="degenerate basis of a canonical operator")
    p.add_argument("--case", type=int, choices=(1, 5), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--phi-primes", default=None, help="comma list, case 5 only")
    add_common(p)
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("game", help="exact and simulated game statistics")
    p.add_argument("--strategy", default="optimal", help="identity, optimal or file:<path>")
    p.add_argument("--game", choices=("chsh", "chsh_star"), default="chsh")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("scan", help="random-configuration dominance scan")
    p.add_argument("--n-list", required=True, help="comma list of qubit counts")
    p.add_argument("--samples", type=_positive_int, required=True)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("example-n4", help="four-qubit reference degeneracy example")
    add_common(p)
    p.set_defaults(func=cmd_example_n4)

    return parser


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        body, canonical = args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DegenerateDirectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ParityError, PhaseSumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARITY_PHASE
    except DegeneracyMismatchError as exc:
        # an internal cross-check failed: never exit 0 with a bad report
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    seed = getattr(args, "seed", None)
    payload = {
        "manifest": _manifest(args.command, _digest(canonical), seed, started),
        "report": body,
    }
    sys.stdout.write(render_report(payload, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
