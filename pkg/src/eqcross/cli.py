"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (invalid instance or failed check),
2 usage, parse or resource error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from .cohomology import h2 as compute_h2
from .crossed import GammaCrossedModule
from .errors import EqCrossError, PreconditionError, SearchLimitError
from .extensions import (
    RAW_ORDER_CAP,
    classify,
    ext_gamma,
    kernel_module,
    obstruction_vanishes,
    oracle_check,
    torsor_count_check,
)
from .formats import ExtensionQuery, ParseError, SemanticError, load_instance
from .graded import FUNCTOR_LIMIT, build_P, check_psi, enumerate_functors, psi_hom
from .groups import FiniteGroup, GammaGroup, GroupHom
from .naming import label

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(EqCrossError):
    pass


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _load(path: str):
    return load_instance(path)


def _as_gamma_group(obj, gamma: Optional[FiniteGroup], what: str) -> GammaGroup:
    if isinstance(obj, FiniteGroup):
        return GammaGroup.trivial(obj, gamma)
    if isinstance(obj, GammaGroup):
        if gamma is not None and obj.gamma != gamma:
            raise UsageError(f"{what}: Γ differs from the crossed module's Γ")
        return obj
    raise UsageError(f"{what}: expected a group or gamma-group document")


def _problem(args) -> tuple[GammaCrossedModule, GammaGroup, GroupHom]:
    """Crossed module, Q and ψ from the positional file and the --q/--psi flags."""
    obj = _load(args.instance)
    psi_spec = None
    if isinstance(obj, ExtensionQuery):
        m, q, psi_spec = obj.M, obj.Q, obj.psi
    elif isinstance(obj, GammaCrossedModule):
        m, q = obj, None
    else:
        raise UsageError("expected a crossed-module or extension-query document")
    if args.q is not None:
        q = _as_gamma_group(_load(args.q), m.gamma, "--q")
    if q is None:
        q = m.pi0
        psi_spec = psi_spec or "id"
    if args.psi is not None:
        psi_spec = args.psi
    psi_spec = psi_spec or "trivial"
    if isinstance(psi_spec, str) and psi_spec not in ("id", "trivial"):
        try:
            psi_spec = tuple(int(t) for t in psi_spec.split(","))
        except ValueError:
            raise UsageError("--psi expects id, trivial or a comma-separated list") from None
    P = build_P(m)
    try:
        psi = psi_hom(q, P, psi_spec)
    except (ValueError, EqCrossError) as exc:
        raise UsageError(f"psi: {exc}") from None
    check_psi(q, psi, P)
    return m, q, psi


# ---------------------------------------------------------------------------
# subcommands; each returns an exit code and writes its report to ``out``


def cmd_validate(args, out: TextIO) -> int:
    try:
        obj = _load(args.instance)
    except SemanticError as exc:
        r = exc.report
        where = f"{exc.path}: " if exc.path else ""
        if args.witness:
            out.write(f"{where}{r}\n")
        else:
            out.write(f"{where}INVALID: {r.law}\n")
        return EXIT_FAIL
    kind = {FiniteGroup: "group", GammaGroup: "gamma-group", GammaCrossedModule: "crossed-module",
            ExtensionQuery: "extension-query"}[type(obj)]
    out.write(f"{kind}: VALID\n")
    return EXIT_OK


def cmd_pi(args, out: TextIO) -> int:
    m = _load(args.instance)
    if isinstance(m, ExtensionQuery):
        m = m.M
    if not isinstance(m, GammaCrossedModule):
        raise UsageError("pi expects a crossed-module document")
    q = m.coker
    pi1, pi0, mod = m.pi1, m.pi0, m.pi_module
    tag1 = f" ({label(pi1.group)})" if args.labels else ""
    tag0 = f" ({label(pi0.group)})" if args.labels else ""
    out.write(f"pi1 = Ker d: order {pi1.order}{tag1}, elements {_fmt(m.pi1_inclusion.map)}\n")
    out.write(f"pi0 = Coker d: order {pi0.order}{tag0}, coset representatives {_fmt(q.reps)}\n")
    out.write("pi0 multiplication:\n")
    for row in pi0.group.mul:
        out.write(f"  {_fmt(row)}\n")
    out.write("Gamma action on pi0:\n")
    for row in pi0.action.act:
        out.write(f"  {_fmt(row)}\n")
    out.write("Gamma action on pi1:\n")
    for row in pi1.action.act:
        out.write(f"  {_fmt(row)}\n")
    out.write("pi0 action on pi1:\n")
    for row in mod.paction:
        out.write(f"  {_fmt(row)}\n")
    return EXIT_OK


def cmd_h2(args, out: TextIO) -> int:
    m, q, psi = _problem(args)
    res = compute_h2(kernel_module(q, psi, m), method=args.method)
    out.write(f"psi={_fmt(psi.map)}\n")
    out.write(f"z2={len(res.z2)} b2={len(res.b2)} h2={res.order}\n")
    return EXIT_OK


def cmd_functors(args, out: TextIO) -> int:
    m, q, psi = _problem(args)
    en = enumerate_functors(q, psi, build_P(m), args.max_search)
    out.write(f"psi={_fmt(psi.map)}\n")
    out.write(f"functors={len(en.functors)} classes={len(en.classes)}\n")
    for i, c in enumerate(en.classes):
        F = en.functors[c[0]]
        out.write(f"class {i}: size={len(c)} F0={_fmt(F.F0)} fQQ={_fmt(F.fQQ)} fQG={_fmt(F.fQG)}\n")
    return EXIT_OK


def cmd_classify(args, out: TextIO) -> int:
    m, q, psi = _problem(args)
    c = classify(q, psi, m, args.max_search)
    out.write(f"psi={_fmt(psi.map)}\n")
    out.write(f"classes={c.count}\n")
    for i, e in enumerate(c.extensions):
        line = f"class {i}: order={e.E.order}"
        if args.labels:
            line += f" label={e.label}"
        out.write(line + "\n")
    return EXIT_OK


def cmd_obstruction(args, out: TextIO) -> int:
    m, q, psi = _problem(args)
    ok = obstruction_vanishes(q, psi, m, args.max_search)
    out.write(f"psi={_fmt(psi.map)}\n")
    out.write(f"obstruction {'vanishes' if ok else 'does not vanish'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_torsor(args, out: TextIO) -> int:
    m, q, psi = _problem(args)
    try:
        rep = torsor_count_check(q, psi, m, args.max_search)
    except PreconditionError:
        out.write(f"psi={_fmt(psi.map)}\nobstruction does not vanish\n")
        return EXIT_FAIL
    out.write(f"psi={_fmt(psi.map)}\n{rep}\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_ext_gamma(args, out: TextIO) -> int:
    obj = _load(args.instance)
    if args.q is None:
        raise UsageError("ext-gamma needs --q")
    b = _as_gamma_group(obj, None, "B")
    q = _as_gamma_group(_load(args.q), b.gamma, "--q")
    res = ext_gamma(q, b, args.max_search)
    m = res.M
    out.write(f"Out B: order {m.pi0.order}; Z(B): order {m.pi1.order}\n")
    for en in res.entries:
        if not en.realizable:
            out.write(f"psi={_fmt(en.psi.map)} obstruction does not vanish\n")
            continue
        line = f"psi={_fmt(en.psi.map)} classes={en.classification.count} h2={en.h2}"
        if args.labels:
            line += " labels=" + ",".join(e.label for e in en.classification.extensions)
        out.write(line + "\n")
    line = f"total={res.total}"
    if args.labels:
        line += " labels=" + ",".join(sorted(res.labels))
    out.write(line + "\n")
    ok = all(en.h2 == en.classification.count for en in res.entries if en.realizable)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args, out: TextIO) -> int:
    m, q, psi = _problem(args)
    rep = oracle_check(q, psi, m, args.max_order, args.max_search)
    out.write(f"psi={_fmt(psi.map)}\n{rep}\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqcross", description="Equivariant crossed modules and extensions")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str, problem: bool = True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("instance", help="instance document (JSON)")
        sp.add_argument("--witness", action="store_true", help="print witnesses on failure")
        sp.add_argument("--labels", action="store_true", help="print isomorphism-type names")
        sp.add_argument("--max-search", type=int, default=FUNCTOR_LIMIT, metavar="N",
                        help="enumeration budget")
        if problem:
            sp.add_argument("--q", help="Q as a group or gamma-group document")
            sp.add_argument("--psi", help="id, trivial, or comma-separated images in Coker d")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check every law of an instance", problem=False)
    add("pi", cmd_pi, "print pi0, pi1 and the module structure", problem=False)
    add("h2", cmd_h2, "second equivariant cohomology of Q in Ker d").add_argument(
        "--method", choices=("auto", "brute", "linear"), default="auto")
    add("functors", cmd_functors, "functors from the discrete graded group of Q, up to homotopy")
    add("classify", cmd_classify, "equivalence classes of extensions inducing psi")
    add("obstruction", cmd_obstruction, "whether some extension induces psi")
    add("torsor-check", cmd_torsor, "compare the class count with the order of H2")
    sp = add("ext-gamma", cmd_ext_gamma, "all equivariant extensions of B by Q", problem=False)
    sp.add_argument("--q", help="Q as a group or gamma-group document")
    add("oracle-check", cmd_oracle, "compare classify with a raw table search").add_argument(
        "--max-order", type=int, default=RAW_ORDER_CAP, help="largest |E| for the raw search")
    return p


def run_command(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except SemanticError as exc:
        r = exc.report
        where = f"{exc.path}: " if exc.path else ""
        err.write(f"{where}{r if args.witness else 'INVALID: ' + str(r.law)}\n")
        return EXIT_FAIL
    except SearchLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_USAGE
    except (UsageError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
