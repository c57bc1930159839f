"""Command-line interface: ``lefarr <command> INPUT [options]``.

Reports are sorted JSON (or a flat key/value table with ``--format table``).
Exit codes: 0 computed, 1 input error, 2 hypothesis violation,
3 internal inconsistency (an equivalence check disagreed).
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from . import __version__
from .apolarity import cor_unexp_sides, ei_duality_sides, unexpected_curve_check
from .arrangements import (LineArrangement, aligned_criterion_sides, character_gap_subscheme,
                           collinear_groups, derivation_report, dual_points, intersection_lattice, max_aligned,
                           numerical_character, prop_bundle_sides, splitting_type, terao_compare)
from .documents import InputDocument, builtin_fixtures, dump_report, load_document, render_table
from .errors import HypothesisError, InconsistencyError, InputError, LefarrError
from .exactmath import PrimeField, cross_check, prime_mode, rational_mode
from .generic import DEFAULT_SAMPLES, DEFAULT_SEED, GenericSampler
from .ideals import hilbert
from .laplace import thgen_routes
from .lefschetz import p1bis_sides, slp_check

HILBERT_SEARCH_CAP = 60
VERIFY_CHOICES = ("ei", "p1bis", "thgen", "th_aligned", "cor_unexp", "prop_bundle")


def _hilbert(doc: InputDocument, sampler, args) -> dict:
    I = doc.ideal()
    t_min = args.t_min if args.t_min is not None else doc.option("hilbert", "t_min", 0)
    t_max = args.t_max if args.t_max is not None else doc.option("hilbert", "t_max")
    values = {}
    if t_max is None:
        t = t_min
        while t <= HILBERT_SEARCH_CAP:
            values[t] = hilbert(I, t)
            if values[t] == 0:
                break
            t += 1
    else:
        if t_max < t_min:
            raise InputError(f"empty degree range [{t_min}, {t_max}]")
        values = {t: hilbert(I, t) for t in range(t_min, t_max + 1)}
    zero = [t for t, v in values.items() if v == 0]
    return {
        "params": {"t_min": t_min, "t_max": t_max},
        "generators": I.r,
        "values": values,
        "vanishes_from": min(zero) if zero else None,
    }


def _slp(doc: InputDocument, sampler, args, k_default: int = 1) -> dict:
    I = doc.equigenerated_ideal()
    i = args.i if args.i is not None else doc.option("slp", "i", 0)
    k = args.k if getattr(args, "k", None) is not None else doc.option("slp", "k", k_default)
    rep = slp_check(I, i, k, sampler)
    return {
        "params": {"i": i, "k": k},
        "d": I.d,
        "generators": I.r,
        "hilbert": {I.d + i - k: rep.dim_source, I.d + i: rep.dim_target},
        "lefschetz": rep.as_dict(),
        "fails": rep.fails,
        "delta": rep.delta,
    }


def _wlp(doc, sampler, args) -> dict:
    args.k = 1
    return _slp(doc, sampler, args)


def _unexpected(doc: InputDocument, sampler, args) -> dict:
    j = args.j if args.j is not None else doc.option("unexpected", "j")
    if j is None:
        raise InputError("unexpected needs a degree j (--j or options.unexpected.j)")
    points = doc.point_set()
    rep = unexpected_curve_check(points, j, sampler)
    return {"params": {"j": j}, "points": points, "unexpected": rep.as_dict(), "has_unexpected": rep.has_unexpected}


def _scatter(points, groups) -> dict:
    described = []
    for idx, p in enumerate(points):
        entry = {"index": idx, "homogeneous": list(p)}
        if p[2] != 0:
            entry["xy"] = [float(p[0] / p[2]), float(p[1] / p[2])]
        else:
            entry["xy"] = None
            entry["direction"] = [float(p[0]), float(p[1])]
        described.append(entry)
    return {
        "kind": "scatter",
        "chart": "z = 1; points with z = 0 lie at infinity and carry a direction",
        "points": described,
        "groups": [{"line": list(line), "members": list(members)} for line, members in groups],
    }


def _arrangement(doc: InputDocument, sampler, args) -> dict:
    if not doc.arrangement:
        raise InputError("arrangement needs an 'arrangement' field")
    A = LineArrangement(tuple(doc.arrangement))
    Z = dual_points(A)
    t_max = args.t_max if args.t_max is not None else doc.option("arrangement", "t_max")
    groups = collinear_groups(Z)
    out = {
        "params": {"t_max": t_max},
        "lines": len(A),
        "dual_points": list(Z.points),
        "max_aligned": max_aligned(Z),
        "collinear_groups": [{"line": list(line), "members": list(m)} for line, m in groups],
        "lattice": intersection_lattice(A),
    }
    character = numerical_character(Z)
    out["numerical_character"] = {"s": character.s, "entries": list(character.entries), "degree": character.degree}
    try:
        gap = character_gap_subscheme(Z)
        out["character_gap_points"] = list(gap.points)
    except HypothesisError as exc:
        out["character_gap_points"] = None
        out["character_gap_reason"] = str(exc)
    try:
        out["splitting_type"] = splitting_type(Z, sampler).as_dict()
    except HypothesisError as exc:
        out["splitting_type"] = None
        out["splitting_type_reason"] = str(exc)
    derivations = derivation_report(A, t_max)
    out["freeness"] = derivations
    out["free"] = derivations["free"]
    out["exponents"] = derivations["exponents"]
    if out["splitting_type"] and derivations["free"]:
        st = out["splitting_type"]
        if [st["a"], st["b"]] != derivations["exponents"]:
            raise InconsistencyError("free arrangement whose exponents differ from its splitting type")
    if args.plot:
        out["plot"] = _scatter(Z.points, groups)
    return out


def _verify(doc: InputDocument, sampler, args) -> dict:
    which = args.which
    opt = doc.options.get("verify", {})

    def param(name, default=None):
        value = getattr(args, name, None)
        return value if value is not None else opt.get(name, default)

    if which == "ei":
        I = doc.power_ideal()
        j = param("j", max(I.exponents))
        left, right = ei_duality_sides(I, j)
        return {"params": {"j": j}, "sides": {"hilbert": left, "fat_points": right}, "pass": left == right}
    if which == "p1bis":
        I = doc.equigenerated_ideal()
        i, k = param("i", 0), param("k", 2)
        checks = []
        for L in sampler.linear_forms(I.ctx.num_vars, label=f"p1bis/{i}/{k}"):
            sides = p1bis_sides(I, L, i, k)
            T, M = sides["thickened"], sides["times_L"]
            ok = T["dim_coker"] == M["dim_coker"] and T["dim_ker"] == M["dim_ker"] + sides["s"]
            checks.append({"L": list(L.coeffs), "sides": sides, "pass": ok})
        return {"params": {"i": i, "k": k}, "checks": checks, "pass": all(c["pass"] for c in checks)}
    if which == "thgen":
        I = doc.equigenerated_ideal()
        i, k = param("i", 0), param("k", 1)
        routes = thgen_routes(I, i, k, sampler)
        keys = ("rank_defect", "kernel", "cokernel", "laplace", "laplace_via_lefschetz", "hypersurface")
        return {"params": {"i": i, "k": k}, "routes": routes, "pass": len({routes[key] for key in keys}) == 1}
    forms = doc.linear_forms() if which != "cor_unexp" else None
    points = doc.point_set()
    d = param("d", (len(points) - 1) // 2)
    if which == "th_aligned":
        dim, aligned = aligned_criterion_sides(forms, d)
        left, right = dim < 2 * d + 1, aligned >= d + 2
        return {"params": {"d": d}, "sides": {"powers_dim": dim, "max_aligned": aligned,
                                              "powers_dependent": left, "d_plus_2_aligned": right},
                "pass": left == right}
    if which == "cor_unexp":
        sides = cor_unexp_sides(points, d, sampler)
        return {"params": {"d": d}, "sides": sides, "pass": len(set(sides["verdicts"])) == 1}
    sides = prop_bundle_sides(forms, d, sampler)
    return {"params": {"d": d}, "sides": sides, "pass": sides["consistent"]}


COMMANDS = {
    "hilbert": _hilbert,
    "slp": _slp,
    "wlp": _wlp,
    "unexpected": _unexpected,
    "arrangement": _arrangement,
    "verify": _verify,
}


def _field(args, doc: InputDocument | None) -> PrimeField | None:
    if args.prime is not None:
        return PrimeField(args.prime)
    return doc.field if doc is not None else None


@contextlib.contextmanager
def _field_context(field: PrimeField | None):
    if field is None:
        with rational_mode():
            yield
    else:
        with prime_mode(field.p):
            yield


def _params_echo(args) -> dict:
    skip = {"command", "input", "inputs", "prime", "confirm_rational", "format", "output", "seed", "samples", "func"}
    return {key: value for key, value in sorted(vars(args).items()) if key not in skip and value is not None}


def run_command(args) -> dict:
    """Build the report for parsed arguments; raises LefarrError subclasses."""
    if args.command == "terao-compare":
        docs = [load_document(src) for src in args.inputs]
        doc = docs[0]
    else:
        doc = load_document(args.input)
        docs = [doc]
    seed = args.seed if args.seed is not None else (doc.seed if doc.seed is not None else DEFAULT_SEED)
    sampler = GenericSampler(seed=seed, count=args.samples)
    field = _field(args, doc)
    report = {
        "command": {"name": args.command, "params": _params_echo(args)},
        "inputs": [{"name": d.name, "sha256": d.digest} for d in docs],
        "seed": seed,
        "samples": args.samples,
        "field": str(field) if field else "rational",
    }

    def compute():
        if args.command == "terao-compare":
            for d in docs:
                if not d.arrangement:
                    raise InputError(f"{d.name}: terao-compare needs arrangements")
            return terao_compare(LineArrangement(tuple(docs[0].arrangement)), LineArrangement(tuple(docs[1].arrangement)),
                                 args.b, sampler)
        return COMMANDS[args.command](doc, sampler, args)

    if field is not None and args.confirm_rational:
        result, modular, agrees = cross_check(compute, field.p)
        report["prime_result"] = modular
        report["rational_confirmation"] = {"agrees": agrees}
        report["verdict_grade"] = True
    else:
        with _field_context(field):
            result = compute()
        report["verdict_grade"] = field is None
    report["result"] = result
    return report


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


class _ArgumentParser(argparse.ArgumentParser):
    # usage errors are input errors, not hypothesis violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(InputError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help=f"seed for general forms and points (default {DEFAULT_SEED})")
    common.add_argument("--samples", type=_positive, default=DEFAULT_SAMPLES,
                        help="number of sampled general forms/points (default %(default)s)")
    common.add_argument("--prime", type=int, help="compute modulo a prime p > 2^30 instead of over Q")
    common.add_argument("--confirm-rational", action="store_true",
                        help="with --prime, recompute over Q and report the rational result")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", "-o", help="write the report to a file instead of stdout")

    parser = _ArgumentParser(prog="lefarr", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    src_help = f"input document (a path, or builtin:NAME with NAME in {', '.join(builtin_fixtures())})"

    p = sub.add_parser("hilbert", parents=[common], help="tabulate the Hilbert function of R/I")
    p.add_argument("input", help=src_help)
    p.add_argument("--t-min", type=int)
    p.add_argument("--t-max", type=int)

    p = sub.add_parser("slp", parents=[common], help="rank of x L^k : A_{d+i-k} -> A_{d+i}")
    p.add_argument("input", help=src_help)
    p.add_argument("--i", type=int)
    p.add_argument("--k", type=_positive)

    p = sub.add_parser("wlp", parents=[common], help="slp with k = 1")
    p.add_argument("input", help=src_help)
    p.add_argument("--i", type=int)

    p = sub.add_parser("unexpected", parents=[common], help="curves of degree j+1 with a general j-fold point")
    p.add_argument("input", help=src_help)
    p.add_argument("--j", type=_positive)

    p = sub.add_parser("arrangement", parents=[common], help="alignment, character, splitting type, freeness")
    p.add_argument("input", help=src_help)
    p.add_argument("--t-max", type=int, help="top degree for the derivation kernel (default: the exponent b)")
    p.add_argument("--plot", action="store_true", help="add a scatter description of the dual points")

    p = sub.add_parser("verify", parents=[common], help="run one equivalence oracle and report both sides")
    p.add_argument("input", help=src_help)
    p.add_argument("--which", choices=VERIFY_CHOICES, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=_positive)
    p.add_argument("--d", type=_positive)

    p = sub.add_parser("terao-compare", parents=[common],
                       help="compare SLP verdicts of two arrangements with the same combinatorics")
    p.add_argument("inputs", nargs=2, metavar="INPUT", help=src_help)
    p.add_argument("--b", type=_positive, required=True, help="power b, with 2b+1 lines per arrangement")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run_command(args)
    except LefarrError as exc:
        print(f"lefarr: error: {exc}", file=sys.stderr)
        return exc.exit_code
    text = dump_report(report) if args.format == "json" else render_table(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not report["result"]["pass"]:
        print(f"lefarr: equivalence check {args.which} disagreed", file=sys.stderr)
        return InconsistencyError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
