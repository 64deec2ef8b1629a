"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .classexpr import ClassExprError, parse_class
from .divisor_model import (
    PicClass,
    minus_one_pullback,
    phi,
    split_antisym,
    sym_antisym_projectors,
)
from .fourier import check_inversion, dual_fourier, fourier, poincare_class
from .orbit import certify, is_invariant, orbit_span, step3_pipeline
from .scenario import (
    PRESETS,
    Scenario,
    ScenarioError,
    build_preset,
    check_word,
    dump_matrix,
    dump_pic,
    parse_scenario,
    serialize_scenario,
)
from .semigroup import affine_pullback, normalize, word_pullback

log = logging.getLogger("abelorbit")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    code = "E009"


def load_scenario(args) -> Scenario:
    if getattr(args, "preset", None):
        return build_preset(args.preset, args.g, args.d, args.rho, args.seed or 0)
    if not getattr(args, "scenario", None):
        raise InputError("give a scenario file or --preset NAME")
    try:
        data = Path(args.scenario).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {args.scenario}: {exc.strerror}") from None
    sc = parse_scenario(data)
    if args.seed is not None:
        sc.options = type(sc.options)(sc.options.degree, sc.options.max_rounds, args.seed)
    return sc


# -- commands ----------------------------------------------------------------

def cmd_verify_fm(args):
    rep = check_inversion(args.g)
    d = rep.as_dict()
    lines = [f"F^ o F = (-1)^g [-1]^* on {d['basis_size']} basis classes, g = {args.g}: {d['verdict']}"]
    lines += [f"  failed: {b}" for b in d["failed"]]
    return {"g": args.g}, d, rep.passed, lines


def cmd_fourier(args):
    ctx = poincare_class(args.g)
    ground = ctx.dual_ground if args.dual else ctx.a_ground
    x = parse_class(args.expr, ground)
    y = dual_fourier(ctx, x) if args.dual else fourier(ctx, x)
    back = fourier(ctx, y) if args.dual else dual_fourier(ctx, y)
    name = "F^" if args.dual else "F"
    result = {"input": str(x), "output": str(y), "inverse_applied": str(back)}
    return ({"g": args.g, "expr": args.expr, "dual": args.dual}, result, True,
            [f"{name}({x}) = {y}"])


def _pic_cycle(sc: Scenario) -> PicClass:
    if not isinstance(sc.cycle, PicClass):
        raise InputError("this command needs a Pic-class cycle ({'ns', 'pic0'})")
    return sc.cycle


def cmd_split(args):
    sc = load_scenario(args)
    D = _pic_cycle(sc)
    plus, minus = sym_antisym_projectors(D)
    checks = {
        "sum_is_identity": plus + minus == D,
        "phi_formula_matches": phi(D).alg0 == split_antisym(D) and phi(D).ns.entries.is_zero(),
        "symmetric_fixed_by_minus_one": minus_one_pullback(plus) == plus,
        "antisymmetric_negated_by_minus_one": minus_one_pullback(minus) == -minus,
    }
    result = {"symmetric": dump_pic(plus), "antisymmetric": dump_pic(minus), "checks": checks}
    lines = [f"symmetric part:     NS {plus.ns.entries}",
             f"antisymmetric part: Pic0 {minus.alg0.coords}"]
    lines += [f"  {k}: {'ok' if v else 'FAILED'}" for k, v in checks.items()]
    return serialize_scenario(sc), result, all(checks.values()), lines


def cmd_normalize(args):
    sc = load_scenario(args)
    text = args.word if args.word is not None else sc.word
    if text is None:
        raise InputError("give a word with --word or a 'word' key in the scenario")
    w = check_word(text, sc.generators)
    h = normalize(w, sc.generators, sc.model)
    result = {"word": str(w), "F": dump_matrix(h.F.matrix), "c": dump_matrix(h.c.coords)}
    ok = True
    if isinstance(sc.cycle, PicClass):
        ok = word_pullback(w, sc.generators, sc.cycle) == affine_pullback(h, sc.cycle)
        result["oracle_agrees"] = ok
    inputs = serialize_scenario(sc)
    inputs["word"] = text
    lines = [f"{w}  ->  t_c o F with F = {h.F.matrix}, c = {h.c.coords}"]
    if "oracle_agrees" in result:
        lines.append(f"  letter-by-letter pullback agrees: {'ok' if ok else 'FAILED'}")
    return inputs, result, ok, lines


def cmd_orbit_span(args):
    sc = load_scenario(args)
    x = sc.sym_cycle()
    if args.power > 1:
        x = x.power(args.power)
    if not x:
        raise InputError("the cycle is zero (possibly truncated by the degree cap)")
    rep = orbit_span(sc.generators, x, sc.options.max_rounds)
    invariant = is_invariant(rep, sc.generators, sc.model)
    hits, n = certify(rep, sc.generators, x, args.samples, sc.options.seed)
    result = rep.as_dict()
    result.update({"invariant": invariant, "certificate": {"samples": n, "in_span": hits,
                                                            "seed": sc.options.seed}})
    ok = rep.converged and invariant and hits == n
    lines = [f"orbit span dimension {rep.dimension} "
             f"(ambient {rep.ambient_dimension}, {rep.rounds} rounds, converged: {rep.converged})",
             f"  closed under generators: {'ok' if invariant else 'FAILED'}",
             f"  random words landing in span: {hits}/{n}"]
    inputs = serialize_scenario(sc)
    inputs["power"] = args.power
    return inputs, result, ok, lines


def cmd_demo_step3(args):
    sc = load_scenario(args)
    rep = step3_pipeline(sc.model, sc.generators, args.max_power, sc.options.max_rounds)
    d = rep.as_dict()
    lines = [f"orbit of the Poincare class on A x A^: dimension {rep.poincare.dimension}"]
    lines += [f"  l^{p.n}: span {p.dimension} <= C({rep.poincare.dimension}+{p.n}-1, {p.n}) = {p.bound}"
              for p in rep.powers]
    return serialize_scenario(sc), d, rep.ok, lines


COMMANDS = {
    "verify-fm": cmd_verify_fm,
    "fourier": cmd_fourier,
    "split": cmd_split,
    "normalize": cmd_normalize,
    "orbit-span": cmd_orbit_span,
    "demo-step3": cmd_demo_step3,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelorbit", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")

    def scenario_args(sp):
        sp.add_argument("scenario", nargs="?", help="scenario JSON file")
        sp.add_argument("--preset", choices=sorted(PRESETS))
        sp.add_argument("--g", type=int, default=2, help="preset: dimension of A (default 2)")
        sp.add_argument("--d", type=int, default=0, help="preset: discriminant of End0(E)")
        sp.add_argument("--rho", type=int, default=1, help="preset: Mordell-Weil rank")
        sp.add_argument("--seed", type=int, default=None)

    sp = sub.add_parser("verify-fm", help="check F^ o F = (-1)^g [-1]^* on the full basis")
    sp.add_argument("--g", type=int, required=True)
    common(sp)

    sp = sub.add_parser("fourier", help="apply the Fourier-Mukai transform to a class")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--expr", required=True, help="class such as '1/2 e1^e2 + 1'")
    sp.add_argument("--dual", action="store_true", help="apply F^ to a class in f1..f2g")
    common(sp)

    sp = sub.add_parser("split", help="symmetric/antisymmetric splitting of a Pic class")
    scenario_args(sp)
    common(sp)

    sp = sub.add_parser("normalize", help="affine normal form of a word")
    scenario_args(sp)
    sp.add_argument("--word", help="e.g. 'e1 t1^2 t2^-1'")
    common(sp)

    sp = sub.add_parser("orbit-span", help="dimension of the orbit span of the scenario cycle")
    scenario_args(sp)
    sp.add_argument("--power", type=int, default=1, help="use the cycle raised to this power")
    sp.add_argument("--samples", type=int, default=50, help="random words for the certificate")
    common(sp)

    sp = sub.add_parser("demo-step3", help="orbit of the Poincare class and its powers")
    scenario_args(sp)
    sp.add_argument("--max-power", type=int, default=None)
    common(sp)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        inputs, result, ok, lines = COMMANDS[args.command](args)
    except (InputError, ScenarioError, ClassExprError, ValueError) as exc:
        code = getattr(exc, "code", "E000")
        if args.json:
            out.write(json.dumps({"command": args.command, "status": "input-error",
                                  "error": {"code": code, "message": str(exc)}},
                                 indent=2, sort_keys=True) + "\n")
        else:
            print(f"error [{code}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    status = "ok" if ok else "failed"
    if args.json:
        report = {"command": args.command, "inputs": inputs, "result": result, "status": status}
        if args.timing:
            report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
        if args.timing:
            out.write(f"({time.perf_counter() - start:.3f} s)\n")
    return EXIT_OK if ok else EXIT_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
