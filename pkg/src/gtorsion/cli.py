"""Command-line front end.

Every subcommand prints one JSON document on standard output.  Exit codes:
0 accepted or success, 1 mathematically rejected (including constructions
whose hypotheses fail), 2 malformed input, 3 resource overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from .certificate import CertificateError, certificate_from_json, verify
from .constructors import (FAMILIES, FamilySpec, PreconditionError, alexander_genus1, classify,
                           genus1_cert, positive_diagram_cert, singular_disk_cert,
                           torus_commutator_cert)
from .derivation import DEFAULT_MAX_LENGTH
from .oracle.coset import DEFAULT_CAP, todd_coxeter
from .oracle.smith import element_order_in_h1, h1_invariants
from .presentation import (Diagram, Presentation, PresentationError, Slope, dehn_fill,
                           figure_eight_diagram, lin_presentation, torus_presentation,
                           trefoil_diagram, wirtinger)
from .word import AlphabetMismatch

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_OVERFLOW = 0, 1, 2, 3
VERDICT_EXIT = {"accepted": EXIT_OK, "rejected": EXIT_REJECTED, "overflow": EXIT_OVERFLOW}
KNOTS = {"trefoil": lambda: trefoil_diagram(1), "trefoil-negative": lambda: trefoil_diagram(-1),
         "figure-eight": figure_eight_diagram}


class InputError(ValueError):
    pass


def parse_slope(text: str) -> Slope:
    return Slope.parse(text)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2)


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _diagram(args) -> Diagram:
    d = getattr(args, "diagram", None)
    if isinstance(d, dict):
        return Diagram.from_json(d)
    if d:
        return Diagram.from_json(_load_json(d))
    knot = getattr(args, "knot", None) or "trefoil"
    return KNOTS[knot]()


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise InputError("missing option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _knot_group(args) -> Presentation:
    if getattr(args, "presentation", None):
        return Presentation.from_json(_load_json(args.presentation))
    fam = args.family
    if fam is None and (getattr(args, "knot", None) or getattr(args, "diagram", None)):
        fam = "diagram"
    if fam == "torus":
        _need(args, "p", "q")
        return torus_presentation(args.p, args.q)
    if fam in ("genus1", "lin"):
        _need(args, "p", "q")
        return lin_presentation(args.p, args.q)
    if fam == "diagram":
        return wirtinger(_diagram(args))[0]
    if fam in KNOTS:
        return wirtinger(KNOTS[fam]())[0]
    raise InputError(f"no presentation for family {fam!r}")


def _group(args) -> Presentation:
    P = _knot_group(args)
    if getattr(args, "slope", None):
        P = dehn_fill(P, parse_slope(args.slope))
    return P


def _emit(doc: Any, args) -> None:
    text = _dump(doc)
    out = getattr(args, "output", None)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    print(text)


# --------------------------------------------------------------------------
# subcommands


def build_certificate(spec: dict):
    """Build from a manifest-style dict: ``{"family": ..., "slope": ..., ...}``."""
    fam = spec.get("family")
    slope = spec.get("slope")
    if fam == "torus":
        return torus_commutator_cert(int(spec["p"]), int(spec["q"]), slope)
    if slope is None:
        raise InputError("slope is required")
    s = parse_slope(str(slope))
    if fam == "genus1":
        return genus1_cert(int(spec["p"]), int(spec["q"]), s, spec.get("case", "auto"))
    if fam == "diagram":
        if "diagram" in spec:
            d = spec["diagram"]
            d = Diagram.from_json(d) if isinstance(d, dict) else Diagram.from_json(_load_json(d))
        else:
            d = KNOTS[spec.get("knot", "trefoil")]()
        return positive_diagram_cert(d, s)
    if fam == "disk":
        base = spec.get("base", {"family": "torus", "p": 2, "q": 3})
        ns = argparse.Namespace(presentation=base.get("presentation"), family=base.get("family"),
                                p=base.get("p"), q=base.get("q"), diagram=base.get("diagram"),
                                knot=base.get("knot"))
        P = _knot_group(ns)
        return singular_disk_cert(P, int(spec.get("p_count", 0)), int(spec.get("q_count", 0)), s,
                                  spec.get("conjugators"))
    raise InputError(f"unknown build family {fam!r}")


def cmd_build(args) -> int:
    spec: dict[str, Any] = {"family": args.kind, "slope": args.slope}
    if args.kind in ("torus", "genus1"):
        _need(args, "p", "q")
        spec.update(p=args.p, q=args.q)
    if args.kind == "genus1":
        spec["case"] = args.case
    if args.kind == "diagram":
        spec["diagram" if args.diagram else "knot"] = args.diagram or args.knot or "trefoil"
    if args.kind == "disk":
        base = {"family": args.family, "p": args.p, "q": args.q, "knot": args.knot,
                "diagram": args.diagram, "presentation": args.presentation}
        spec.update(base=base, p_count=args.p_count or 0, q_count=args.q_count or 0,
                    conjugators=args.conjugator)
    cert = build_certificate(spec)
    _emit(cert.to_json(), args)
    return EXIT_OK


def verify_document(doc: dict, max_length: int, oracles: bool, cap: int, degree: int,
                    figure: str | None = None):
    cert = certificate_from_json(doc)
    rep = verify(cert, max_length=max_length, oracles=oracles, trace=figure is not None,
                 coset_cap=cap, quotient_degree=degree)
    out = rep.to_json()
    if figure:
        from .plotting import plot_replay_trace

        plot_replay_trace(rep.lengths or [len(cert.proof.start)], figure,
                          f"replay trace ({rep.verdict}, k = {rep.k})")
        out["figure"] = str(figure)
    return rep, out


def cmd_verify(args) -> int:
    rep, out = verify_document(_load_json(args.certificate), args.max_length, args.oracles,
                               args.cap, args.degree, args.figure)
    _emit(out, args)
    return VERDICT_EXIT[rep.verdict]


def _family_spec(args) -> FamilySpec:
    fam = args.family
    params: dict[str, Any] = {}
    if fam in ("torus", "cable", "genus1"):
        _need(args, "p", "q")
        params.update(p=args.p, q=args.q)
    elif fam == "diagram":
        params["diagram"] = _diagram(args)
    elif fam == "axiomatic_disk":
        if not args.presentation:
            raise InputError("axiomatic_disk needs --presentation")
        params.update(presentation=_knot_group(args), p_count=args.p_count or 0,
                      q_count=args.q_count or 0)
    elif fam == "whitehead":
        _need(args, "omega")
        params.update(omega=args.omega, tau=args.tau or 0)
    elif fam == "montesinos":
        _need(args, "tangles")
        try:
            params["tangles"] = json.loads(args.tangles)
        except json.JSONDecodeError as exc:
            raise InputError(f"--tangles must be a JSON list of integer lists: {exc}") from exc
    return FamilySpec(fam, params)


def cmd_classify(args) -> int:
    rep = classify(_family_spec(args), parse_slope(args.slope))
    _emit(rep.to_json(), args)
    return EXIT_OK if rep.applies else EXIT_REJECTED


def cmd_abelianize(args) -> int:
    P = _group(args)
    out: dict[str, Any] = {"h1": {"factors": h1_invariants(P)}}
    if P.has_peripheral:
        out["meridian_order"] = element_order_in_h1(P, P.meridian)
        out["longitude_order"] = element_order_in_h1(P, P.longitude)
    _emit(out, args)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    P = _group(args)
    table = todd_coxeter(P, cap=args.cap)
    out = {"coset": table.to_json(), "generators": list(P.generators),
           "relators": len(P.relators)}
    _emit(out, args)
    return EXIT_OK if table.complete else EXIT_OVERFLOW


def cmd_alexander(args) -> int:
    from .oracle.fox import alexander_polynomial

    diagram_source = args.family is None and (args.knot or args.diagram)
    if args.presentation or diagram_source or args.family not in (None, "genus1", "lin"):
        out = {"coefficients": list(alexander_polynomial(_knot_group(args)))}
    else:
        _need(args, "p", "q")
        out = alexander_genus1(args.p, args.q).to_json()
    _emit(out, args)
    return EXIT_OK


def _batch_item(job: tuple[int, dict, int, bool, int]) -> dict:
    index, spec, max_length, oracles, cap = job
    try:
        cert = build_certificate(spec)
        _, rep = verify_document(cert.to_json(), max_length, oracles, cap, 4)
        return {"index": index, "spec": spec, "report": rep, "exit": VERDICT_EXIT[rep["verdict"]]}
    except PreconditionError as exc:
        return {"index": index, "spec": spec, "error": str(exc), "exit": EXIT_REJECTED}
    except (InputError, PresentationError, CertificateError, KeyError, TypeError, ValueError) as exc:
        return {"index": index, "spec": spec, "error": f"input error: {exc}", "exit": EXIT_INPUT}


def _worst(codes) -> int:
    for c in (EXIT_INPUT, EXIT_OVERFLOW, EXIT_REJECTED):
        if c in codes:
            return c
    return EXIT_OK


def cmd_batch(args) -> int:
    manifest = _load_json(args.manifest)
    if isinstance(manifest, dict):
        manifest = manifest.get("items", [])
    if not isinstance(manifest, list):
        raise InputError("manifest must be a JSON list of build specs")
    jobs = [(i, spec, args.max_length, args.oracles, args.cap) for i, spec in enumerate(manifest)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_item, jobs))  # map preserves manifest order
    else:
        results = [_batch_item(j) for j in jobs]
    _emit({"results": results}, args)
    return _worst({r["exit"] for r in results})


# --------------------------------------------------------------------------
# argument parsing


def _source_options(p: argparse.ArgumentParser, families=("torus", "genus1", "lin", "diagram",
                                                          "trefoil", "figure-eight")):
    p.add_argument("--family", choices=families, default=None)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--knot", choices=sorted(KNOTS))
    p.add_argument("--diagram", help="diagram JSON file")
    p.add_argument("--presentation", help="presentation JSON file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gtorsion", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a torsion certificate")
    b.add_argument("kind", choices=("torus", "genus1", "diagram", "disk"))
    _source_options(b)
    b.add_argument("--slope")
    b.add_argument("--case", default="auto", choices=("auto", "1", "2", "3"))
    b.add_argument("--p-count", type=int)
    b.add_argument("--q-count", type=int)
    b.add_argument("--conjugator", action="append", help="disk conjugator word, repeatable")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="verify a certificate JSON file")
    v.add_argument("certificate")
    v.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)
    v.add_argument("--oracles", action="store_true", help="add coset and quotient cross-checks")
    v.add_argument("--cap", type=int, default=10_000, help="coset cap for --oracles")
    v.add_argument("--degree", type=int, default=4, help="permutation degree for --oracles")
    v.add_argument("--figure", help="write the replay word-length trace to this image file")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="list constructions applying at a slope")
    _source_options(c, FAMILIES)
    c.add_argument("--slope", required=True)
    c.add_argument("--p-count", type=int)
    c.add_argument("--q-count", type=int)
    c.add_argument("--omega", type=int)
    c.add_argument("--tau", type=int)
    c.add_argument("--tangles", help='JSON list of tangles, e.g. "[[2,-2,2],[2,1]]"')
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_classify)

    a = sub.add_parser("abelianize", help="H_1 of a (filled) presentation")
    _source_options(a)
    a.add_argument("--slope")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_abelianize)

    e = sub.add_parser("enumerate", help="bounded coset enumeration")
    _source_options(e)
    e.add_argument("--slope")
    e.add_argument("--cap", type=int, default=DEFAULT_CAP)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_enumerate)

    x = sub.add_parser("alexander", help="Alexander polynomial")
    _source_options(x)
    x.add_argument("-o", "--output")
    x.set_defaults(func=cmd_alexander)

    bt = sub.add_parser("batch", help="build and verify every entry of a manifest")
    bt.add_argument("manifest")
    bt.add_argument("--jobs", type=int, default=1)
    bt.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)
    bt.add_argument("--oracles", action="store_true")
    bt.add_argument("--cap", type=int, default=10_000)
    bt.add_argument("-o", "--output")
    bt.set_defaults(func=cmd_batch)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(_dump({"verdict": "rejected", "error": str(exc)}))
        return EXIT_REJECTED
    except (InputError, PresentationError, CertificateError, AlphabetMismatch, KeyError,
            ValueError) as exc:
        print(_dump({"error": f"input error: {exc}"}))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
