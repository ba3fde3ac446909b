"""Command-line front end.

Exit codes: 0 every checked property holds, 1 a property failed (the report
carries a witness), 2 the input was invalid.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

from .corpus import ade_matrix
from .errors import ExdivError, InvalidInput, LemmaViolation
from .linalg import QMatrix, format_rat, is_negative_definite
from .systems import CurveSystem, exceptional_completion, residuals, vector_from_json, vector_to_json
from .sweep import SweepConfig, run_sweep
from .toric import (
    ToricDivisor,
    build_fan,
    completion_divisor,
    curve_matrix,
    pairing,
    verify_nakayama,
    verify_reflexive,
)

log = logging.getLogger("exdiv")


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_input(path: str | None):
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read input: {exc}") from None
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"input is not valid JSON: {exc}") from None
    return data


def _reject_float(s):
    raise InvalidInput(f"floating-point literal {s} in input; write exact 'p/q' strings")


def _write(obj, path: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _report(name: str, options: dict, data, verdict: bool, certificate: dict) -> dict:
    return {
        "command": {"name": name, "options": options},
        "input_digest": None if data is None else "sha256:" + hashlib.sha256(_canonical(data).encode()).hexdigest(),
        "verdict": "pass" if verdict else "fail",
        "certificate": certificate,
    }


def _fan_instance(data):
    if not isinstance(data, dict) or "n" not in data or "q" not in data:
        raise InvalidInput('toric instance needs "n" and "q"')
    fan = build_fan(data["n"], data["q"])
    div = data.get("divisor", {})
    if not isinstance(div, dict):
        raise InvalidInput('"divisor" must map ray labels to "p/q" strings')
    return fan, ToricDivisor.from_mapping(fan, div)


# --- subcommands --------------------------------------------------------------


def cmd_gen(args):
    if args.kind == "hj":
        fan = build_fan(args.n, args.q)
        sys_ = curve_matrix(fan)
        inst = {
            "kind": "hj",
            "n": fan.n,
            "q": fan.q,
            "b": list(fan.b),
            "rays": [list(v) for v in fan.rays],
            "divisor": {},
            **sys_.to_json(),
        }
    else:
        sys_ = ade_matrix(args.family, args.rank)
        inst = {"kind": "ade", "family": args.family.upper(), "rank": args.rank, **sys_.to_json()}
    return None, inst


def cmd_check_negdef(args):
    data = _read_input(args.input)
    if not isinstance(data, dict) or "matrix" not in data:
        raise InvalidInput('expected an object with a "matrix" key')
    cert = is_negative_definite(QMatrix.from_json(data["matrix"]))
    return data, _report("check-negdef", {}, data, bool(cert), cert.to_json())


def cmd_complete(args):
    data = _read_input(args.input)
    if isinstance(data, dict) and "n" in data and "q" in data and "matrix" not in data:
        fan, D = _fan_instance(data)
        system = curve_matrix(fan)
        d = pairing(fan, D)
    else:
        system = CurveSystem.from_json(data)
        if "d" not in data:
            raise InvalidInput('expected pairing data under "d": {"values": [...]}')
        d = vector_from_json(data["d"])
    e = exceptional_completion(system, d, args.mode)
    res = residuals(system, e, d)
    ok = all(x >= 0 for x in e) and all(r <= 0 for r in res)
    cert = {
        "mode": args.mode,
        "labels": list(system.labels),
        "d": vector_to_json(d),
        "e": vector_to_json(e),
        "residuals": vector_to_json(res),
    }
    return data, _report("complete", {"mode": args.mode}, data, ok, cert)


def _parse_e(text: str, fan) -> ToricDivisor:
    if text.strip() == "0":
        return ToricDivisor.zero(fan)
    try:
        mapping = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError:
        raise InvalidInput('--e takes "0" or a JSON object such as \'{"v1": "1"}\'') from None
    if not isinstance(mapping, dict):
        raise InvalidInput("--e must be a JSON object")
    return ToricDivisor.from_mapping(fan, mapping)


def cmd_verify(args):
    data = _read_input(args.input)
    fan, D = _fan_instance(data)
    options = {"kind": args.kind, "tmax": args.tmax, "window": args.window}
    cert = {"n": fan.n, "q": fan.q, "b": list(fan.b), "pairing": [format_rat(x) for x in pairing(fan, D)]}
    if args.kind == "reflexive":
        verdict = verify_reflexive(fan, D, window=args.window)
    else:
        if args.e is not None:
            E = _parse_e(args.e, fan)
            source = "forced"
            options["e"] = args.e
        elif "E" in data:
            E = ToricDivisor.from_mapping(fan, data["E"])
            source = "input"
        else:
            E = completion_divisor(fan, D, args.mode)
            source = f"completion:{args.mode}"
            options["mode"] = args.mode
        cert["E"] = E.to_json()
        cert["E_source"] = source
        verdict = verify_nakayama(fan, D, E, window=args.window, tmax=args.tmax)
    cert.update(verdict.to_json())
    return data, _report(f"verify {args.kind}", options, data, verdict.passed, cert)


def cmd_sweep(args):
    cfg = SweepConfig(n_max=args.n_max, per_fan=args.per_fan, seed=args.seed, tmax=args.tmax, mode=args.mode, jobs=args.jobs)
    result = run_sweep(cfg)
    return None, _report("sweep", dict(result["config"]), None, result["summary"]["pass"], result)


# --- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exdiv", description=__doc__.splitlines()[0])
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write an instance file")
    gsub = g.add_subparsers(dest="kind", required=True)
    hj = gsub.add_parser("hj", help="minimal resolution of a cyclic quotient singularity")
    hj.add_argument("--n", type=int, required=True)
    hj.add_argument("--q", type=int, required=True)
    ade = gsub.add_parser("ade", help="Dynkin graph of -2 curves")
    ade.add_argument("--family", choices=["A", "D", "E", "a", "d", "e"], required=True)
    ade.add_argument("--rank", type=int, required=True)
    for q in (hj, ade):
        q.add_argument("-o", "--output")
        q.set_defaults(func=cmd_gen)

    c = sub.add_parser("check-negdef", help="Sylvester certificate for a matrix")
    c.set_defaults(func=cmd_check_negdef)

    comp = sub.add_parser("complete", help="exceptional completion E with (D+E).C <= 0")
    comp.add_argument("--mode", choices=["scaled", "minimal"], default="scaled")
    comp.set_defaults(func=cmd_complete)

    v = sub.add_parser("verify", help="lattice-point check of the pushforward equalities")
    v.add_argument("kind", choices=["nakayama", "reflexive"])
    v.add_argument("--tmax", type=int, default=5)
    v.add_argument("--window", type=int, default=None)
    v.add_argument("--e", default=None, help='force E: "0" or a JSON object of ray coefficients')
    v.add_argument("--mode", choices=["scaled", "minimal"], default="scaled")
    v.set_defaults(func=cmd_verify)

    for q in (c, comp, v):
        q.add_argument("-i", "--input", default="-")
        q.add_argument("-o", "--output")

    s = sub.add_parser("sweep", help="end-to-end check over all (n, q) with n <= n-max")
    s.add_argument("--n-max", type=int, default=30)
    s.add_argument("--per-fan", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tmax", type=int, default=5)
    s.add_argument("--mode", choices=["scaled", "minimal"], default="scaled")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    start = time.perf_counter()
    try:
        _, out = args.func(args)
    except LemmaViolation:
        raise
    except ExdivError as exc:
        print(f"exdiv: error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start
    log.info("%s finished in %.3fs", args.command, elapsed)
    if args.timing and "verdict" in out:
        out["timing"] = {"seconds": round(elapsed, 6)}
    _write(out, args.output)
    if "verdict" in out and out["verdict"] != "pass":
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
