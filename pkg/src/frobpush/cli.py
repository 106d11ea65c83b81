"""Command-line surface: decompose, kernel, local, and verify subcommands.

Exit codes are a stable contract: 0 success, 1 computation-domain error,
2 usage error, 3 out-of-regime input.  All numeric JSON output uses decimal
strings (multiplicities, ranks) or num/den string pairs (rationals) so that
arbitrary precision survives any consumer.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import catalog, localalg, positivity, verify
from .combinat import PrimePower
from .errors import FrobpushError, OutOfRegimeError
from .picard import (
    ConeP,
    Decomposition,
    Hirzebruch,
    Line,
    LinearBlowup,
    PicClass,
    Product,
    ProjSpace,
    Quadric,
    RationalNormalCone,
    SegreCone,
    SegreConeBlowup,
    Spinor,
    VarietyDescriptor,
    VeroneseCone,
    VeroneseConeBlowup,
)
from .positivity import Verdict

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_REGIME = 3


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def descriptor_to_json(variety: VarietyDescriptor) -> dict:
    if isinstance(variety, ProjSpace):
        params = {"d": variety.d}
    elif isinstance(variety, Product):
        params = {"r": variety.r, "s": variety.s}
    elif isinstance(variety, Hirzebruch):
        params = {"eps": variety.eps}
    elif isinstance(variety, LinearBlowup):
        params = {"d": variety.d, "r": variety.r}
    elif isinstance(variety, VeroneseConeBlowup):
        params = {"d": variety.d, "eps": variety.eps}
    elif isinstance(variety, SegreConeBlowup):
        params = {"r": variety.r, "s": variety.s}
    elif isinstance(variety, Quadric):
        params = {"d": variety.d}
    elif isinstance(variety, ConeP):
        kind = variety.kind
        if isinstance(kind, RationalNormalCone):
            params = {"kind": "rnc", "eps": kind.eps}
        elif isinstance(kind, VeroneseCone):
            params = {"kind": "veronese", "d": kind.d, "eps": kind.eps}
        else:
            params = {"kind": "segre", "r": kind.r, "s": kind.s}
    else:
        raise FrobpushError(f"cannot serialize {variety!r}")
    return {"tag": variety.tag, "params": params}


def descriptor_from_json(data: dict) -> VarietyDescriptor:
    tag, params = data["tag"], data["params"]
    if tag == "projspace":
        return ProjSpace(params["d"])
    if tag == "product":
        return Product(params["r"], params["s"])
    if tag == "hirzebruch":
        return Hirzebruch(params["eps"])
    if tag == "blowup-linear":
        return LinearBlowup(params["d"], params["r"])
    if tag == "veronese-cone":
        return VeroneseConeBlowup(params["d"], params["eps"])
    if tag == "segre-cone":
        return SegreConeBlowup(params["r"], params["s"])
    if tag == "quadric":
        return Quadric(params["d"])
    if tag == "cone-p":
        kind = params["kind"]
        if kind == "rnc":
            return ConeP(RationalNormalCone(params["eps"]))
        if kind == "veronese":
            return ConeP(VeroneseCone(params["d"], params["eps"]))
        if kind == "segre":
            return ConeP(SegreCone(params["r"], params["s"]))
    raise FrobpushError(f"unknown variety tag {tag!r}")


def decomposition_to_json(decomp: Decomposition) -> dict:
    summands = []
    for summand, mult in decomp.sorted_items():
        mult_str = "unknown" if mult is None else str(mult)
        if isinstance(summand, Line):
            summands.append(
                {"kind": "line", "class": list(summand.cls.coords), "mult": mult_str}
            )
        else:
            summands.append({"kind": "spinor", "class": {"j": summand.j}, "mult": mult_str})
    rank = None if decomp.support_only else str(decomp.rank())
    return {
        "variety": descriptor_to_json(decomp.variety),
        "basis": list(decomp.basis),
        "summands": summands,
        "rank": rank,
    }


def decomposition_from_json(data: dict) -> Decomposition:
    variety = descriptor_from_json(data["variety"])
    basis = tuple(data["basis"])
    support_only = data.get("rank") is None
    items = []
    for entry in data["summands"]:
        mult = None if entry["mult"] == "unknown" else int(entry["mult"])
        if entry["kind"] == "line":
            summand: object = Line(PicClass(tuple(entry["class"]), basis))
        else:
            summand = Spinor(entry["class"]["j"])
        items.append((summand, mult))
    return Decomposition(variety, items, basis=basis, support_only=support_only)


def _fraction_json(value: Fraction) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator)}


def verdict_to_json(verdict: Verdict) -> dict:
    witness: Optional[dict] = None
    if verdict.witness is not None:
        w = verdict.witness
        if isinstance(w.summand, Line):
            summand = {"kind": "line", "class": list(w.summand.cls.coords)}
        else:
            summand = {"kind": "spinor", "class": {"j": w.summand.j}}
        witness = {
            "summand": summand,
            "divisor": w.divisor,
            "multiplicity": None if w.multiplicity is None else str(w.multiplicity),
        }
    return {"status": verdict.status.value, "witness": witness, "notes": list(verdict.notes)}


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------


def class_label(summand) -> str:
    if isinstance(summand, Spinor):
        return f"S({summand.j})"
    coords = summand.cls.coords
    if all(c == 0 for c in coords):
        return "O"
    return "O(" + ",".join(str(c) for c in coords) + ")"


def render_decomposition(decomp: Decomposition) -> str:
    lines = [
        f"variety: {decomp.variety.tag}"
        + json.dumps(descriptor_to_json(decomp.variety)["params"], sort_keys=True),
        "basis: " + ", ".join(decomp.basis),
    ]
    for summand, mult in decomp.sorted_items():
        lines.append(f"  {class_label(summand)}: {'unknown' if mult is None else mult}")
    rank = "unknown" if decomp.support_only else str(decomp.rank())
    lines.append(f"rank: {rank}")
    return "\n".join(lines)


def render_verdict(verdict: Verdict) -> str:
    parts = [f"verdict: {verdict.status.value}"]
    if verdict.witness is not None:
        w = verdict.witness
        where = f" on {w.divisor}" if w.divisor else ""
        mult = f" x{w.multiplicity}" if w.multiplicity is not None else ""
        parts.append(f"  witness{where}: {class_label(w.summand)}{mult}")
    for note in verdict.notes:
        parts.append(f"  note: {note}")
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------

VARIETIES = (
    "projspace",
    "product",
    "hirzebruch",
    "blowup-linear",
    "veronese-cone",
    "segre-cone",
    "quadric",
    "cone-p",
)


def _parse_bundle(parser: argparse.ArgumentParser, raw: Optional[str], arity: int) -> list[int]:
    if raw is None:
        return [0] * arity
    try:
        values = [int(part) for part in raw.split(",")]
    except ValueError:
        parser.error(f"--bundle must be a comma-separated integer list; got {raw!r}")
    if len(values) != arity:
        parser.error(f"--bundle needs {arity} coordinate(s); got {len(values)}")
    return values


def _need(parser: argparse.ArgumentParser, args: argparse.Namespace, *names: str) -> list[int]:
    values = []
    for name in names:
        value = getattr(args, name)
        if value is None:
            parser.error(f"--{name} is required for --variety {args.variety}")
        values.append(value)
    return values


def _build_decomposition(
    parser: argparse.ArgumentParser, args: argparse.Namespace, fp: PrimePower
) -> Decomposition:
    variety = args.variety
    if variety == "projspace":
        (d,) = _need(parser, args, "d")
        (n,) = _parse_bundle(parser, args.bundle, 1)
        return catalog.pushforward_projective_space(d, n, fp)
    if variety == "product":
        r, s = _need(parser, args, "r", "s")
        u, v = _parse_bundle(parser, args.bundle, 2)
        return catalog.pushforward_product(r, s, u, v, fp)
    if variety == "hirzebruch":
        (eps,) = _need(parser, args, "eps")
        u, v = _parse_bundle(parser, args.bundle, 2)
        return catalog.pushforward_hirzebruch(eps, u, v, fp)
    if variety == "blowup-linear":
        d, r = _need(parser, args, "d", "r")
        if any(_parse_bundle(parser, args.bundle, 2)):
            parser.error("blowup-linear only supports the structure sheaf (--bundle 0,0)")
        return catalog.pushforward_linear_blowup(d, r, fp)
    if variety == "veronese-cone":
        d, eps = _need(parser, args, "d", "eps")
        n, nprime = _parse_bundle(parser, args.bundle, 2)
        return catalog.pushforward_veronese_cone(d, eps, n, nprime, fp)
    if variety == "segre-cone":
        r, s = _need(parser, args, "r", "s")
        n, n1, n2 = _parse_bundle(parser, args.bundle, 3)
        return catalog.pushforward_segre_cone(r, s, n, n1, n2, fp)
    if variety == "quadric":
        (d,) = _need(parser, args, "d")
        if any(_parse_bundle(parser, args.bundle, 1)):
            parser.error("quadric support is computed for the canonical twist only")
        return catalog.quadric_pushforward_support(d, fp)
    if variety == "cone-p":
        if args.bundle is not None and any(int(x) for x in args.bundle.split(",")):
            parser.error("cone-p decompositions are computed for the structure sheaf only")
        kind = _cone_kind(parser, args)
        return localalg.cone_pushforward(kind, fp)
    parser.error(f"unknown variety {variety!r}")
    raise AssertionError


def _cone_kind(parser: argparse.ArgumentParser, args: argparse.Namespace):
    if args.kind is None:
        parser.error("--kind is required (rnc | veronese | segre)")
    if args.kind == "rnc":
        (eps,) = _need(parser, args, "eps")
        return RationalNormalCone(eps)
    if args.kind == "veronese":
        d, eps = _need(parser, args, "d", "eps")
        return VeroneseCone(d, eps)
    if args.kind == "segre":
        r, s = _need(parser, args, "r", "s")
        return SegreCone(r, s)
    parser.error(f"unknown cone kind {args.kind!r}")
    raise AssertionError


def _catalog_descriptor(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> VarietyDescriptor:
    variety = args.variety
    if variety == "projspace":
        (d,) = _need(parser, args, "d")
        return ProjSpace(d)
    if variety == "product":
        r, s = _need(parser, args, "r", "s")
        return Product(r, s)
    if variety == "hirzebruch":
        (eps,) = _need(parser, args, "eps")
        return Hirzebruch(eps)
    if variety == "blowup-linear":
        d, r = _need(parser, args, "d", "r")
        return LinearBlowup(d, r)
    if variety == "veronese-cone":
        d, eps = _need(parser, args, "d", "eps")
        return VeroneseConeBlowup(d, eps)
    if variety == "segre-cone":
        r, s = _need(parser, args, "r", "s")
        return SegreConeBlowup(r, s)
    parser.error(f"--variety {variety} has no kernel verdict")
    raise AssertionError


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_decompose(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    fp = PrimePower(args.p, args.e)
    decomp = _build_decomposition(parser, args, fp)
    if args.format == "json":
        print(json.dumps(decomposition_to_json(decomp), indent=2))
    else:
        print(render_decomposition(decomp))
    return EXIT_OK


def cmd_kernel(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    fp = PrimePower(args.p, args.e)
    if args.variety == "quadric":
        (d,) = _need(parser, args, "d")
        report = positivity.quadric_kernel_verdict(d, fp)
        kernel = report.support.remove_trivial()
        if args.format == "json":
            payload = {
                "kernel": decomposition_to_json(kernel),
                "support_verdict": verdict_to_json(report.support_verdict),
                "stated_verdict": verdict_to_json(report.stated_verdict),
                "disagreement": report.disagreement,
                "notes": list(report.notes),
            }
            print(json.dumps(payload, indent=2))
        else:
            print(render_decomposition(kernel))
            print("support " + render_verdict(report.support_verdict))
            print("stated " + render_verdict(report.stated_verdict))
            for note in report.notes:
                print(f"note: {note}")
            if report.disagreement:
                print("WARNING: the two verdicts disagree")
        return EXIT_OK
    variety = _catalog_descriptor(parser, args)
    kernel = positivity.trace_kernel(variety, fp)
    if isinstance(variety, (ProjSpace, Product)):
        verdict = positivity.ample_verdict(kernel)
    else:
        verdict = positivity.kernel_restriction_verdict(variety, fp)
    if args.format == "json":
        payload = {
            "kernel": decomposition_to_json(kernel),
            "verdict": verdict_to_json(verdict),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(render_decomposition(kernel))
        print(render_verdict(verdict))
    return EXIT_OK


def cmd_local(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    fp = PrimePower(args.p, args.e)
    kind = _cone_kind(parser, args)
    number = localalg.splitting_number(kind, fp)
    convergent = localalg.f_signature_convergent(kind, fp)
    signature = localalg.f_signature(kind)
    if args.format == "json":
        payload = {
            "splitting_number": str(number),
            "convergent": _fraction_json(convergent),
            "f_signature": _fraction_json(signature),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"splitting number: {number}")
        print(f"convergent: {convergent}")
        print(f"f-signature: {signature}")
    return EXIT_OK


def cmd_verify(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    suites = list(verify.SUITES) if args.suite == "all" else [args.suite]
    try:
        primes = tuple(int(p) for p in args.primes.split(","))
    except ValueError:
        parser.error(f"--primes must be a comma-separated integer list; got {args.primes!r}")
    report = verify.run_suites(
        suites, max_d=args.max_d, max_e=args.max_e, primes=primes, jobs=args.jobs
    )
    failed = 0
    for suite, results in report:
        counts = {"PASS": 0, "FAIL": 0, "WARN": 0}
        for res in results:
            counts[res.status] += 1
            if res.status != "PASS" or args.verbose:
                print(f"{res.status:4} {suite}:{res.key}  {res.detail}")
        failed += counts["FAIL"]
        print(
            f"suite {suite}: {counts['PASS']} passed, {counts['WARN']} warnings, "
            f"{counts['FAIL']} failed ({len(results)} cases)"
        )
    return EXIT_OK if failed == 0 else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobpush",
        description="Exact Frobenius pushforward decompositions, trace-kernel "
        "positivity verdicts, and F-signature arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_variety: bool = True) -> None:
        if with_variety:
            p.add_argument("--variety", choices=VARIETIES, required=True)
            p.add_argument("--kind", choices=("rnc", "veronese", "segre"))
            p.add_argument("--bundle", help="bundle coordinates, e.g. '0' or '0,1'")
        p.add_argument("--d", type=int)
        p.add_argument("--r", type=int)
        p.add_argument("--s", type=int)
        p.add_argument("--eps", type=int)
        p.add_argument("--p", type=int, required=True, help="characteristic (prime)")
        p.add_argument("--e", type=int, required=True, help="Frobenius exponent")
        p.add_argument("--format", choices=("text", "json"), default="text")

    decompose = sub.add_parser("decompose", help="print a pushforward decomposition")
    add_common(decompose)

    kernel = sub.add_parser("kernel", help="print the trace kernel and its verdict")
    add_common(kernel)

    local = sub.add_parser("local", help="splitting number, convergent, F-signature")
    local.add_argument("--kind", choices=("rnc", "veronese", "segre"), required=True)
    add_common(local, with_variety=False)

    ver = sub.add_parser("verify", help="run the batch verification suites")
    ver.add_argument("--suite", choices=("identities", "oracles", "fixtures", "all"),
                     required=True)
    ver.add_argument("--max-d", type=int, default=3, dest="max_d")
    ver.add_argument("--max-e", type=int, default=2, dest="max_e")
    ver.add_argument("--primes", default="2,3,5")
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--verbose", action="store_true", help="print passing cases too")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "decompose": cmd_decompose,
        "kernel": cmd_kernel,
        "local": cmd_local,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](parser, args)
    except OutOfRegimeError as exc:
        print(f"out of regime: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except FrobpushError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
