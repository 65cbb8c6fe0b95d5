"""reglab command-line interface.

Exit codes: 0 success, 1 assertion failure (a replication check did not
match), 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cache as gbcache
from .betti import cm_regularity, reg_bracket_splitting, regularity_or_bracket
from .errors import Budget, BudgetError, ReglabError, ThresholdError
from .families import (
    asymptotic_report,
    check_graded,
    delta_family_sample,
    family_from_json,
    noetherian_stabilization_test,
    preset_family,
)
from .groebner import (
    buchberger,
    colon_element,
    ideal,
    intersect,
    normal_form,
    socle_degree_max,
    socle_witness_check,
)
from .monomial import MonomialIdeal, monomial_ideal_from_strings
from .poly import parse_polynomial, render
from .polyhedra import newton_polyhedron
from .rings import RingSpec, ring
from .theorems import (
    conjecture_char0_harness,
    nolimit_evidence,
    symbolic_reg_bracket,
    verify_theorem,
)

PRESETS = ("diverge", "distinct-lims", "mprimary-counter")


def _ring_from_args(args) -> RingSpec:
    spec = args.ring
    if spec and spec.strip().startswith("{"):
        data = json.loads(spec)
        if args.char is not None:
            data["char"] = args.char
        return RingSpec.from_json(data)
    variables = spec or "x,y,a,b"
    return ring(variables, char=args.char if args.char is not None else 2)


def _budget_from_args(args) -> Budget:
    return Budget(max_steps=args.budget_steps, max_degree=args.budget_degree)


def _parse_gens(R: RingSpec, text: str):
    return [parse_polynomial(R, s) for s in text.split(",") if s.strip()]


def _family_from_args(args):
    spec = args.family
    if spec.strip().startswith("{"):
        return family_from_json(json.loads(spec))
    if spec in PRESETS:
        return preset_family(spec, getattr(args, "growth", None))
    raise ReglabError(
        f"unknown family {spec!r}: use a preset {PRESETS} or a JSON spec"
    )


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _frac(x) -> str:
    return str(Fraction(x))


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--ring", help="variables 'x,y,a,b' or ring JSON",
                   default=argparse.SUPPRESS)
    g.add_argument("--char", type=int, help="coefficient characteristic",
                   default=argparse.SUPPRESS)
    g.add_argument("--json", action="store_true", help="emit JSON on stdout",
                   default=argparse.SUPPRESS)
    g.add_argument("--budget-steps", type=int, default=argparse.SUPPRESS)
    g.add_argument("--budget-degree", type=int, default=argparse.SUPPRESS)
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    g.add_argument("--cache-dir", default=argparse.SUPPRESS)
    g.add_argument("--out", help="directory for report files",
                   default=argparse.SUPPRESS)
    g.add_argument("--plots", action=argparse.BooleanOptionalAction,
                   default=argparse.SUPPRESS,
                   help="render figures next to written reports")

    parser = argparse.ArgumentParser(
        prog="reglab",
        parents=[common],
        description="Exact workbench for Groebner bases, monomial regularity "
        "and asymptotic regularity of graded families.",
    )
    parser.set_defaults(
        ring=None, char=None, json=False, budget_steps=10**7, budget_degree=None,
        threads=1, cache_dir=None, out=None, plots=True,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    p.add_argument("--gens", required=True, help="comma-separated polynomials")

    p = sub.add_parser("nf", parents=[common], help="normal form of a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--gens", required=True)

    p = sub.add_parser("initial", parents=[common], help="initial ideal of an ideal")
    p.add_argument("--gens", required=True)

    p = sub.add_parser("reg", parents=[common],
                       help="exact regularity of a monomial ideal")
    p.add_argument("--mono", required=True, help="comma-separated monomials")
    p.add_argument("--threshold", type=int, default=22)

    p = sub.add_parser("reg-bracket", parents=[common],
                       help="regularity bracket of a monomial ideal")
    p.add_argument("--mono", required=True)
    p.add_argument("--split-hint", default=None, help="variable:power, e.g. b:8")
    p.add_argument("--threshold", type=int, default=22)

    p = sub.add_parser("socle", parents=[common],
                       help="socle witness check or socle degree search")
    p.add_argument("--gens", required=True)
    p.add_argument("--witness", default=None)
    p.add_argument("--degree-budget", type=int, default=None)

    p = sub.add_parser("intersect", parents=[common], help="intersection of two ideals")
    p.add_argument("--gens-a", required=True)
    p.add_argument("--gens-b", required=True)

    p = sub.add_parser("colon", parents=[common], help="colon ideal I : g")
    p.add_argument("--gens", required=True)
    p.add_argument("--by", required=True)

    p = sub.add_parser("np", parents=[common],
                       help="Newton polyhedron of a monomial ideal")
    p.add_argument("--mono", required=True)
    p.add_argument("--hrep", action="store_true")

    p = sub.add_parser("delta", parents=[common], help="delta sample of a graded family")
    p.add_argument("--family", required=True)
    p.add_argument("--growth", default=None)
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("family", help="graded family drivers")
    fam_sub = p.add_subparsers(dest="family_command", required=True)
    fp = fam_sub.add_parser("report", parents=[common])
    fp.add_argument("--family", required=True)
    fp.add_argument("--growth", default=None)
    fp.add_argument("--N", type=int, required=True)
    fp.add_argument("--reg-mode", choices=("exact", "bracket"), default="exact")
    fp.add_argument("--stabilize", action="store_true")
    fp = fam_sub.add_parser("check-graded", parents=[common])
    fp.add_argument("--family", required=True)
    fp.add_argument("--growth", default=None)
    fp.add_argument("--N", type=int, required=True)
    fp = fam_sub.add_parser("stabilize", parents=[common])
    fp.add_argument("--family", required=True)
    fp.add_argument("--growth", default=None)
    fp.add_argument("--N", type=int, required=True)

    p = sub.add_parser("paper", help="replication drivers")
    paper_sub = p.add_subparsers(dest="paper_command", required=True)
    pp = paper_sub.add_parser("verify", parents=[common])
    pp.add_argument("--thm", required=True,
                    choices=("gb2powers", "gb3times2power", "double2powers"))
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--k", type=int, default=None)
    pp = paper_sub.add_parser("nolimit", parents=[common])
    pp.add_argument("--max-s", type=int, default=3)
    pp = paper_sub.add_parser("symbolic", parents=[common])
    pp.add_argument("--n", type=int, required=True)
    pp = paper_sub.add_parser("conj-char0", parents=[common])
    pp.add_argument("--max-n", type=int, default=3)

    p = sub.add_parser("cache", help="GB cache maintenance")
    cache_sub = p.add_subparsers(dest="cache_command", required=True)
    cache_sub.add_parser("ls", parents=[common])
    cache_sub.add_parser("clear", parents=[common])

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except BudgetError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except (ReglabError, ThresholdError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    budget = _budget_from_args(args)
    cmd = args.command

    if cmd == "gb":
        R = _ring_from_args(args)
        gb = buchberger(_parse_gens(R, args.gens), budget=budget)
        _emit(args, {"basis": [render(g) for g in gb]},
              "\n".join(render(g) for g in gb))
        return 0

    if cmd == "nf":
        R = _ring_from_args(args)
        r = normal_form(
            parse_polynomial(R, args.poly), _parse_gens(R, args.gens), budget
        )
        _emit(args, {"remainder": render(r)}, render(r))
        return 0

    if cmd == "initial":
        R = _ring_from_args(args)
        gb = buchberger(_parse_gens(R, args.gens), budget=budget)
        M = MonomialIdeal(R, [g.leading_monomial() for g in gb])
        _emit(args, M.to_json(), ", ".join(R.render_monomial(g) for g in M.gens))
        return 0

    if cmd == "reg":
        R = _ring_from_args(args)
        M = monomial_ideal_from_strings(R, args.mono.split(","))
        try:
            r = cm_regularity(M, threshold=args.threshold)
        except ThresholdError as e:
            print(f"error: {e}", file=sys.stderr)
            return 1
        _emit(args, {"reg": r}, str(r))
        return 0

    if cmd == "reg-bracket":
        R = _ring_from_args(args)
        M = monomial_ideal_from_strings(R, args.mono.split(","))
        hint = None
        if args.split_hint:
            v, q = args.split_hint.split(":")
            hint = (v, int(q))
        br = reg_bracket_splitting(M, hint, threshold=args.threshold)
        _emit(args, br.to_json(), str(br))
        return 0

    if cmd == "socle":
        R = _ring_from_args(args)
        I = ideal(R, _parse_gens(R, args.gens))
        if args.witness:
            h = parse_polynomial(R, args.witness)
            ok = socle_witness_check(h, I, budget)
            _emit(
                args,
                {"witness": args.witness, "passes": ok,
                 "reg_lower_bound": h.degree() + 1 if ok else None},
                f"{'pass' if ok else 'fail'}"
                + (f" (reg >= {h.degree() + 1})" if ok else ""),
            )
            return 0 if ok else 1
        sd = socle_degree_max(I, args.degree_budget, budget)
        _emit(args, {"socle_degree_max": sd}, str(sd))
        return 0

    if cmd == "intersect":
        R = _ring_from_args(args)
        K = intersect(
            ideal(R, _parse_gens(R, args.gens_a)),
            ideal(R, _parse_gens(R, args.gens_b)),
            budget,
        )
        _emit(args, {"generators": [render(g) for g in K.generators]},
              "\n".join(render(g) for g in K.generators))
        return 0

    if cmd == "colon":
        R = _ring_from_args(args)
        K = colon_element(
            ideal(R, _parse_gens(R, args.gens)),
            parse_polynomial(R, args.by),
            budget,
        )
        _emit(args, {"generators": [render(g) for g in K.generators]},
              "\n".join(render(g) for g in K.generators))
        return 0

    if cmd == "np":
        R = _ring_from_args(args)
        M = monomial_ideal_from_strings(R, args.mono.split(","))
        P = newton_polyhedron(M)
        payload = {
            "vertices": [[_frac(c) for c in v] for v in P.vertices()],
            "delta": _frac(P.delta()),
        }
        text = (
            "vertices: "
            + " ".join("(" + ",".join(_frac(c) for c in v) + ")" for v in P.vertices())
            + f"\ndelta: {_frac(P.delta())}"
        )
        if args.hrep:
            hs = P.to_halfspaces()
            payload["halfspaces"] = [
                {"normal": [_frac(a) for a in normal], "rhs": _frac(c)}
                for normal, c in hs
            ]
            text += "\n" + "\n".join(
                " + ".join(f"{_frac(a)}*{v}" for a, v in zip(normal, R.variables) if a)
                + f" >= {_frac(c)}"
                for normal, c in hs
            )
        _emit(args, payload, text)
        return 0

    if cmd == "delta":
        F = _family_from_args(args)
        ds = delta_family_sample(F, args.N)
        payload = {
            "delta_per_n": [_frac(d) for d in ds["delta_per_n"]],
            "running_inf": [_frac(d) for d in ds["running_inf"]],
            "sample_region_delta": _frac(ds["sample_region_delta"]),
            "limit_region_delta": _frac(ds["limit_region_delta"])
            if ds["limit_region_delta"] is not None
            else None,
        }
        text = (
            "delta per n: " + " ".join(payload["delta_per_n"])
            + f"\nrunning inf: {payload['running_inf'][-1]}"
            + f"\nsampled-region delta: {payload['sample_region_delta']}"
            + f"\nlimit-region estimate: {payload['limit_region_delta']}"
        )
        _emit(args, payload, text)
        return 0

    if cmd == "family":
        F = _family_from_args(args)
        if args.family_command == "check-graded":
            verdict, pair = check_graded(F, args.N)
            _emit(args, {"verdict": verdict, "counterexample": pair},
                  verdict if pair is None else f"{verdict} at (p,q)={pair}")
            return 0 if verdict == "pass" else 1
        if args.family_command == "stabilize":
            st = noetherian_stabilization_test(F, args.N)
            text = (
                f"stabilized at c={st['stabilized']} "
                f"(multiples tested: {st['tested_multiples']})"
                if st["stabilized"]
                else f"no stabilization <= {st['bound']}"
            )
            _emit(args, st, text)
            return 0
        rep = asymptotic_report(
            F, args.N, reg_mode=args.reg_mode, with_stabilization=args.stabilize
        )
        if args.out:
            from .report import write_family_report

            written = write_family_report(rep, args.out, figures=args.plots)
            print("\n".join(str(p) for p in written), file=sys.stderr)
        _emit(args, rep.to_json(), rep.text_table())
        return 0

    if cmd == "paper":
        if args.paper_command == "verify":
            rep = verify_theorem(
                args.thm, args.n, args.k, budget=budget, threads=args.threads,
                cache_directory=args.cache_dir,
            )
        elif args.paper_command == "nolimit":
            rep = nolimit_evidence(
                args.max_s, budget=budget, threads=args.threads,
                cache_directory=args.cache_dir,
            )
        elif args.paper_command == "symbolic":
            rep = symbolic_reg_bracket(
                args.n, budget=budget, cache_directory=args.cache_dir
            )
        else:
            rep = conjecture_char0_harness(args.max_n, budget=budget)
        if args.out:
            from .report import write_experiment_report

            written = write_experiment_report(rep, args.out, figures=args.plots)
            print("\n".join(str(p) for p in written), file=sys.stderr)
        _emit(args, rep.to_json(), rep.summary())
        return 0 if rep.passed else 1

    if cmd == "cache":
        if args.cache_command == "ls":
            rows = gbcache.entries(args.cache_dir)
            _emit(args, {"entries": rows},
                  "\n".join(f"{r['key'][:16]}  size={r['size']}  {r['bytes']}B" for r in rows)
                  or "(empty)")
            return 0
        n = gbcache.clear(args.cache_dir)
        _emit(args, {"cleared": n}, f"cleared {n} entries")
        return 0

    raise ReglabError(f"unhandled command {cmd}")


if __name__ == "__main__":
    sys.exit(main())
