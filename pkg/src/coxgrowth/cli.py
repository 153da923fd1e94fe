"""``coxgrowth`` command line: classify, growth, embed, verify.

Exit codes: 0 success, 1 usage or parse error, 2 table truncated by the
cap, 3 a certified check failed, 4 inconclusive, 5 the input is a trivial
case for the requested construction (finite ``W_J``, non-indefinite ``W``).
"""
import argparse
import json
import logging
import sys

from coxgrowth import __version__
from coxgrowth.diagram import DiagramError, classify, connected_components, load_diagram
from coxgrowth.embed import (
    EmbeddingError, NotIndefiniteError, TrivialCaseError, certificate, verify_mainprop,
    verify_quotient_exponential,
)
from coxgrowth.growth import (
    DEFAULT_CAP, GrowthError, enumerate_ball, growth_rate_lower_bound,
    quotient_growth_parabolic,
)
from coxgrowth.reflquot import (
    SubgroupError, make_subgroup, minimal_coset_reps_refl, parabolic_subgroup,
    quotient_refl_exponential_report,
)
from coxgrowth.rootspace import RootError

EXIT_OK, EXIT_USAGE, EXIT_TRUNCATED, EXIT_FALSIFIED, EXIT_INCONCLUSIVE, EXIT_TRIVIAL = range(6)

log = logging.getLogger("coxgrowth")


class UsageError(Exception):
    pass


def _parse_J(d, text):
    if text is None or text.strip() == "":
        return ()
    names = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return d.indices(names)
    except DiagramError as exc:
        raise UsageError(str(exc)) from None


def _load_roots(path, d):
    with open(path, encoding="utf-8") as fh:
        text = fh.read().strip()
    if text.startswith("["):
        rows = json.loads(text)
    else:
        rows = [line.split() for line in text.splitlines()
                if line.strip() and not line.lstrip().startswith("#")]
    roots = [tuple(int(x) for x in r) for r in rows]
    for r in roots:
        if len(r) != d.rank:
            raise UsageError(f"root {list(r)} does not have {d.rank} coordinates")
    return roots


def _emit(args, payload, text=None, csv_text=None):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for growth tables")
        out = csv_text
    else:
        out = (text if text is not None else json.dumps(payload, indent=2, sort_keys=True)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_classify(args):
    d = load_diagram(args.diagram)
    rows = []
    for comp in connected_components(d):
        rows.append({"nodes": d.names(comp), "class": str(classify(d, comp))})
    text = "\n".join(f"{' '.join(r['nodes'])}: {r['class']}" for r in rows)
    _emit(args, {"components": rows}, text=text)
    return EXIT_OK


def cmd_growth(args):
    d = load_diagram(args.diagram)
    if args.roots:
        R = make_subgroup(d, _load_roots(args.roots, d))
        table = minimal_coset_reps_refl(d, R, args.max_len, args.cap)
        kind = "reflection-quotient"
    elif args.J is not None:
        J = _parse_J(d, args.J)
        if len(J) >= d.rank:
            raise UsageError("J must be a proper subset of the nodes")
        table = quotient_growth_parabolic(d, J, args.max_len, args.cap)
        kind = "parabolic-quotient"
    else:
        table = enumerate_ball(d, max_len=args.max_len, cap=args.cap)
        kind = "group"
    payload = table.to_json()
    payload["kind"] = kind
    if table.k_max >= 1:
        rate, k = growth_rate_lower_bound(table, max(1, table.k_max // 2))
        payload["rate_estimate"] = str(rate)
        payload["rate_estimate_k"] = k
    _emit(args, payload, text=table.to_text(), csv_text=table.to_csv())
    if table.truncated:
        log.warning("cap of %d elements reached; table valid through length %d",
                    args.cap, table.k_max)
        return EXIT_TRUNCATED
    return EXIT_OK


def cmd_embed(args):
    d = load_diagram(args.diagram)
    J = _parse_J(d, args.J)
    cert = certificate(d, J, args.k_max)
    mp = verify_mainprop(d, J, args.k_max)
    cert["mainprop"] = mp.to_json()["rows"]
    cert["mainprop_ok"] = mp.ok
    lines = [
        f"Y = {cert['Y']}, p = {cert['p']}, path = {cert['path']}",
        f"delta = {cert['delta']}",
        *[f"beta_{i + 1} = {b}" for i, b in enumerate(cert["beta"])],
        f"M = {cert['M']}  (reflection lengths {cert['reflection_lengths']})",
        f"free product verified to depth {cert['free_product_depth']}: {cert['free_product_ok']}",
        *[f"k={r['k']}: {r['count']} distinct cosets (need {r['required']}), "
          f"length <= {r['length_bound']}" for r in cert["per_k"]],
        f"rate bound 2^(1/3M) = {cert['rate_bound']}",
    ]
    _emit(args, cert, text="\n".join(lines))
    return EXIT_OK if cert["ok"] and mp.ok else EXIT_FALSIFIED


def cmd_verify(args):
    d = load_diagram(args.diagram)
    J = _parse_J(d, args.J)
    payload = {}
    code = EXIT_OK
    if args.roots:
        R = make_subgroup(d, _load_roots(args.roots, d))
    else:
        R = parabolic_subgroup(d, J) if J else None
    if J:
        try:
            qr = verify_quotient_exponential(d, J, args.k_max, bfs_max_len=args.max_len, cap=args.cap)
        except TrivialCaseError as exc:
            payload["quotient"] = {"skipped": str(exc)}
        else:
            payload["quotient"] = qr.to_json()
            if not qr.ok:
                code = EXIT_FALSIFIED
    if R is not None:
        rr = quotient_refl_exponential_report(d, R, args.max_len, args.k_max, args.depth_bound,
                                              args.cap)
        payload["reflection_quotient"] = rr.to_json()
        if not rr.ok:
            code = EXIT_FALSIFIED
        elif rr.status == "unknown" and code == EXIT_OK:
            code = EXIT_INCONCLUSIVE
    payload["ok"] = code == EXIT_OK
    lines = []
    if "quotient" in payload:
        q = payload["quotient"]
        lines.append(f"W^J certificate: {'skipped' if 'skipped' in q else ('ok' if q['ok'] else 'FAILED')}")
    if "reflection_quotient" in payload:
        r = payload["reflection_quotient"]
        lines.append(f"W/W' report: {r['status']} via {r['route']} (rate bound {r['rate_bound']})")
        lines.extend(f"  {c}" for c in r["chain"])
    _emit(args, payload, text="\n".join(lines) or "nothing to verify")
    return code


def build_parser():
    p = argparse.ArgumentParser(prog="coxgrowth", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--diagram", required=True, help="diagram file (text or JSON)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("-v", "--verbose", action="store_true")

    sp = sub.add_parser("classify", help="type of each connected component")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("growth", help="growth table of W, W^J or W/W'")
    common(sp)
    sp.add_argument("--J", help="comma-separated node names of a parabolic subgroup")
    sp.add_argument("--roots", help="file of generator roots for a reflection subgroup")
    sp.add_argument("--max-len", type=int, default=10)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.set_defaults(func=cmd_growth)

    sp = sub.add_parser("embed", help="W(3) embedding certificate for W^J")
    common(sp)
    sp.add_argument("--J", help="comma-separated node names (empty: embed in W)")
    sp.add_argument("--k-max", type=int, default=5)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("verify", help="full exponential-growth verification")
    common(sp)
    sp.add_argument("--J", help="comma-separated node names of a parabolic subgroup")
    sp.add_argument("--roots", help="file of generator roots for a reflection subgroup")
    sp.add_argument("--max-len", type=int, default=8)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--k-max", type=int, default=3)
    sp.add_argument("--depth-bound", type=int, default=6)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    for name in ("max_len", "cap", "k_max", "depth_bound"):
        val = getattr(args, name, None)
        if val is not None and (val < 0 or (name == "cap" and val == 0)):
            log.error("--%s must be positive", name.replace("_", "-"))
            return EXIT_USAGE
    try:
        return args.func(args)
    except (NotIndefiniteError, TrivialCaseError) as exc:
        log.error("%s", exc)
        return EXIT_TRIVIAL
    except (DiagramError, UsageError, OSError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (SubgroupError, RootError, GrowthError, EmbeddingError) as exc:
        log.error("%s", exc)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
