"""Command-line front end.

Subcommands:
  run     classify one permutation (quantum one-query or classical two-query)
  verify  sweep dimensions and check every promise the simulator makes
  nmr     synthesize and run the spin-3/2 pulse protocol, exporting artifacts

Exit codes: 0 success, 1 verification failure, 2 malformed permutation,
3 non-cyclic input to the quantum runner, 4 unconverged pulse synthesis.
The default output directory for nmr artifacts is $QUDITCYCLE_OUTDIR,
falling back to the current directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys
import time

import numpy as np

from .algorithm import (
    FourierKind,
    NotCyclicError,
    one_query_insufficient,
    phase_table,
    run_classical,
    run_quantum,
)
from .nmr import SpinSystem, inject_readout_noise
from .permutations import Chirality, Permutation, classify_cyclic, enumerate_cyclic, parity
from .protocol import run_protocol
from .smp import OptimizerConfig, segments_to_json

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_PERMUTATION = 2
EXIT_NOT_CYCLIC = 3
EXIT_UNCONVERGED = 4

# --gate value -> (oracle representative, circuit prefix)
GATE_MAP = {
    "qft": ("positive", "after_qft"),
    "pos": ("positive", "after_oracle"),
    "neg": ("negative", "after_oracle"),
    "fullpos": ("positive", "full"),
    "fullneg": ("negative", "full"),
}


def _dump(obj, path: str | None, as_json: bool) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    if as_json or not path:
        print(text)


def cmd_run(args) -> int:
    try:
        p = Permutation.from_string(args.perm)
        if args.dim is not None and args.dim != p.dim:
            raise ValueError(f"--dim {args.dim} does not match permutation of size {p.dim}")
        sigma = Permutation.from_string(args.relabel) if args.relabel else None
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_BAD_PERMUTATION

    if args.mode == "classical":
        try:
            report = run_classical(p)
        except ValueError as exc:
            print(f"error: {exc}", file=_sys.stderr)
            return EXIT_BAD_PERMUTATION
    else:
        kind = (
            FourierKind.qutrit_spin(sigma)
            if args.fourier == "qutrit"
            else FourierKind.standard(sigma)
        )
        try:
            report = run_quantum(p, kind)
        except NotCyclicError as exc:
            print(f"error: {exc}", file=_sys.stderr)
            return EXIT_NOT_CYCLIC
        except ValueError as exc:
            print(f"error: {exc}", file=_sys.stderr)
            return EXIT_BAD_PERMUTATION

    if not args.json:
        line = f"{','.join(map(str, p.image))} -> {report.classification.value}"
        line += f" ({report.oracle_queries} oracle quer{'y' if report.oracle_queries == 1 else 'ies'}"
        if report.measured_index is not None:
            line += f", measured |{report.measured_index}>"
        line += ")"
        print(line)
    _dump(report.to_json(), args.out, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    rows = []
    t0 = time.perf_counter()
    for d in range(3, args.dmax + 1):
        table = phase_table(d)
        class_ok = True
        phase_ok = True
        for p in enumerate_cyclic(d):
            truth = classify_cyclic(p)
            report = run_quantum(p)
            if report.classification is not truth.chirality:
                class_ok = False
            expected = table[(truth.chirality, truth.shift)]
            if abs(report.phase - expected) > 1e-10:
                phase_ok = False
        query_ok = one_query_insufficient(d) if d <= 8 else None
        two_ok = all(
            run_classical(p).classification is classify_cyclic(p).chirality
            and run_classical(p).oracle_queries == 2
            for p in enumerate_cyclic(d)
        )
        rows.append(
            {
                "dim": d,
                "classifications": class_ok,
                "phases": phase_ok,
                "one_query_insufficient": query_ok,
                "classical_two_queries": two_ok,
            }
        )
        ok = ok and class_ok and phase_ok and two_ok and (query_ok is not False)

    parity_matches = all(
        (classify_cyclic(p).chirality is Chirality.POSITIVE) == (parity(p).value == "even")
        for p in enumerate_cyclic(3)
    )
    ok = ok and parity_matches
    elapsed = time.perf_counter() - t0

    if args.json:
        print(
            json.dumps(
                {"rows": rows, "parity_is_chirality_at_dim3": parity_matches, "ok": ok},
                indent=2,
                sort_keys=True,
            )
        )
    else:
        for row in rows:
            marks = []
            for key in ("classifications", "phases", "one_query_insufficient", "classical_two_queries"):
                val = row[key]
                marks.append(f"{key}={'-' if val is None else ('ok' if val else 'FAIL')}")
            print(f"d={row['dim']:2d}  " + "  ".join(marks))
        print(
            f"d= 3  chirality coincides with even/odd parity: "
            f"{'ok' if parity_matches else 'FAIL'}"
        )
        print(f"{'all checks passed' if ok else 'FAILURES detected'} in {elapsed:.2f}s")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _write_csv(path: str, matrix: np.ndarray, part: str) -> None:
    data = matrix.real if part == "re" else matrix.imag
    with open(path, "w") as fh:
        fh.write("i,j,value\n")
        for i in range(data.shape[0]):
            for j in range(data.shape[1]):
                fh.write(f"{i + 1},{j + 1},{float(data[i, j])!r}\n")


def cmd_nmr(args) -> int:
    oracle, stage = GATE_MAP[args.gate]
    if args.stage != "auto":
        want = "full" if stage == "full" else "after"
        if args.stage != want:
            print(
                f"error: --stage {args.stage} contradicts --gate {args.gate} (expects {want})",
                file=_sys.stderr,
            )
            return EXIT_BAD_PERMUTATION

    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
            allowed = {"segments", "restarts", "seed", "min_fidelity", "max_iter"}
            bad = set(loaded) - allowed
            if bad:
                raise ValueError(f"unknown config keys {sorted(bad)}")
            cfg = OptimizerConfig(**{**{"seed": args.seed}, **loaded})
        except (OSError, ValueError, TypeError) as exc:
            print(f"error: bad optimizer config: {exc}", file=_sys.stderr)
            return EXIT_BAD_PERMUTATION
    else:
        cfg = OptimizerConfig(seed=args.seed)
    if args.segments is not None:
        from dataclasses import replace

        cfg = replace(cfg, segments=args.segments)
    if args.restarts is not None:
        from dataclasses import replace

        cfg = replace(cfg, restarts=args.restarts)
    if args.min_fidelity is not None:
        from dataclasses import replace

        cfg = replace(cfg, min_fidelity=args.min_fidelity)

    sys_ = SpinSystem()
    source = "ideal" if args.ideal else "smp"
    result = run_protocol(
        sys_, oracle, stage, gate_source=source, epsilon=args.epsilon, config=cfg
    )

    rho = result.rho
    pure = result.pure_part
    if args.noise_sigma is not None:
        pure = inject_readout_noise(pure, sigma=args.noise_sigma, seed=args.noise_seed)
        rho = (1.0 - args.epsilon) / 4 * np.eye(4) + args.epsilon * pure

    outdir = args.out or os.environ.get("QUDITCYCLE_OUTDIR") or "."
    os.makedirs(outdir, exist_ok=True)
    prefix = os.path.join(outdir, args.gate)

    _write_csv(f"{prefix}_rho_re.csv", rho, "re")
    _write_csv(f"{prefix}_rho_im.csv", rho, "im")
    # Pure part = deviation from the maximally mixed background, in units of
    # epsilon: rho = (1 - eps)/4 * 1 + eps * (this matrix).
    _write_csv(f"{prefix}_dev_re.csv", pure, "re")
    _write_csv(f"{prefix}_dev_im.csv", pure, "im")

    report = {
        "gate": args.gate,
        "oracle": oracle,
        "stage": stage,
        "gate_source": source,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "fidelity": result.fidelity,
        "unconverged": not result.converged,
        "dominant_index": result.dominant_index,
        "noise_sigma": args.noise_sigma,
        "config": {
            "segments": cfg.segments,
            "restarts": cfg.restarts,
            "seed": cfg.seed,
            "min_fidelity": cfg.min_fidelity,
            "max_iter": cfg.max_iter,
        },
        "pulses": None if result.smp is None else segments_to_json(result.smp.segments),
    }
    with open(f"{prefix}_report.json", "w") as fh:
        fh.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if result.smp is not None:
        with open(f"{prefix}_pulses.json", "w") as fh:
            fh.write(json.dumps(segments_to_json(result.smp.segments), indent=2, sort_keys=True) + "\n")

    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        flag = "" if result.converged else "  [UNCONVERGED]"
        print(
            f"{args.gate}: fidelity {result.fidelity:.6f} to theory, "
            f"dominant level |{result.dominant_index}>{flag}"
        )
        print(f"artifacts written under {outdir}/")
    return EXIT_OK if result.converged else EXIT_UNCONVERGED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quditcycle",
        description="Classify cyclic permutations with one quantum query on a single qudit.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="classify one permutation")
    run_p.add_argument("--perm", required=True, help='image list, e.g. "2,3,4,1"')
    run_p.add_argument("--dim", type=int, default=None, help="optional size cross-check")
    run_p.add_argument("--mode", choices=("quantum", "classical"), default="quantum")
    run_p.add_argument(
        "--fourier",
        choices=("general", "qutrit"),
        default="general",
        help="Fourier convention: general labels 1..d, or the 3-level spin basis",
    )
    run_p.add_argument("--relabel", default=None, help="relabeling permutation, e.g. \"1,3,2,4\"")
    run_p.add_argument("--json", action="store_true", help="machine-readable output only")
    run_p.add_argument("--out", default=None, help="write the report JSON to this file")
    run_p.set_defaults(func=cmd_run)

    ver_p = sub.add_parser("verify", help="check the simulator's promises over a range of dims")
    ver_p.add_argument("--dmax", type=int, default=8, choices=range(3, 13), metavar="3..12")
    ver_p.add_argument("--json", action="store_true")
    ver_p.set_defaults(func=cmd_verify)

    nmr_p = sub.add_parser("nmr", help="run the spin-3/2 pulse protocol")
    nmr_p.add_argument("--gate", required=True, choices=sorted(GATE_MAP))
    nmr_p.add_argument(
        "--stage",
        choices=("auto", "after", "full"),
        default="auto",
        help="cross-check against the prefix implied by --gate",
    )
    nmr_p.add_argument("--seed", type=int, default=0)
    nmr_p.add_argument("--ideal", action="store_true", help="use exact gates instead of pulses")
    nmr_p.add_argument("--epsilon", type=float, default=1e-5)
    nmr_p.add_argument("--config", default=None, help="JSON file with optimizer settings")
    nmr_p.add_argument("--segments", type=int, default=None)
    nmr_p.add_argument("--restarts", type=int, default=None)
    nmr_p.add_argument("--min-fidelity", type=float, default=None)
    nmr_p.add_argument("--noise-sigma", type=float, default=None, help="simulated readout noise")
    nmr_p.add_argument("--noise-seed", type=int, default=0)
    nmr_p.add_argument("--out", default=None, help="output directory (default $QUDITCYCLE_OUTDIR)")
    nmr_p.add_argument("--json", action="store_true")
    nmr_p.set_defaults(func=cmd_nmr)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
