"""Command-line front end.

Exit codes: 0 on success, 1 when a checked property fails, 2 on bad input.
Paths that do not exist relative to the working directory are looked up in
the bundled corpus, so ``corpus/ntr3.monoid`` works from anywhere.
"""

import argparse
import os
import sys
from pathlib import Path

from . import formats
from .aset import is_pc_aset
from .axioms import DEFAULT_SEED, check_acgw, check_all, check_cgw, check_quasi_exact
from .corpus import CORPUS_DIR
from .enumerate import enumerate_asets
from .errors import KPrimeError, ParseError
from .ktheory import (
    burnside_report,
    cardinality_scale,
    compute,
    devissage_check,
    localization_check,
    report,
    stabilization_scan,
)
from .monoid import finite_length, group_plus, is_pc_monoid, validate_monoid
from .nset import classify_nset, to_truncated_aset

OK, PROPERTY_FAILED, INPUT_ERROR = 0, 1, 2

SUITES = {
    "quasi-exact": check_quasi_exact,
    "cgw": check_cgw,
    "acgw": check_acgw,
}


class Outcome:
    """Text for humans, a JSON-ready object and an exit code."""

    def __init__(self, text, data, code=OK):
        self.text = text
        self.data = data
        self.code = code


def default_seed():
    env = os.environ.get("KPRIME_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"KPRIME_SEED must be an integer, got {env!r}") from None


def resolve(path):
    p = Path(path)
    for cand in (p, CORPUS_DIR.parent / p, CORPUS_DIR / p.name):
        if cand.is_file():
            return cand
    raise ParseError(f"no such file: {path}")


def read(path):
    p = resolve(path)
    text = p.read_text()
    return text, formats.kind_of(text)


def load_monoid(path):
    """A monoid file, or a group file read as ``G_+``."""
    text, kind = read(path)
    if kind == "monoid":
        return formats.parse_monoid(text)
    if kind == "group":
        G = formats.parse_group(text)
        return group_plus(G.table, name=f"{G.name}+")
    raise ParseError(f"{path}: expected a monoid or group file, found {kind}")


def load_group(path):
    text, kind = read(path)
    if kind != "group":
        raise ParseError(f"{path}: expected a group file, found {kind}")
    return formats.parse_group(text)


def element(A, token):
    """A monoid element by label or by index."""
    for a in A.elements:
        if A.label(a) == token:
            return a
    try:
        a = int(token)
    except ValueError:
        raise ParseError(f"{A.name} has no element {token!r}") from None
    if not 0 <= a < A.n:
        raise ParseError(f"element index {a} out of range for {A.name}")
    return a


def _lines(*rows):
    return "\n".join(rows)


# -- commands -------------------------------------------------------------


def cmd_validate(args):
    text, kind = read(args.path)
    data = {"kind": kind, "valid": True, "error": None, "witness": None}
    try:
        if kind == "monoid":
            A = formats.parse_monoid(text, check=False)
            data["name"] = A.name
            validate_monoid(A.mul, A.name, A.names)
            data["elements"] = A.n
        elif kind == "aset":
            if not args.monoid:
                raise ParseError("validating an A-set needs --monoid")
            A = load_monoid(args.monoid)
            X = formats.parse_aset(text, A, check=False)
            data["name"] = X.name
            formats.FiniteASet(A, X.act, name=X.name)
            data["points"] = X.npoints
        elif kind == "group":
            G = formats.parse_group(text)
            data["name"] = G.name
            data["elements"] = G.order
        else:
            X = formats.parse_nset(text)
            data["name"] = X.name
            data["points"] = len(X.succ)
    except ParseError:
        raise
    except KPrimeError as exc:
        data.update(valid=False, error=f"{type(exc).__name__}: {exc}", witness=exc.witness)
    if data["valid"]:
        out = f"{kind} {data['name']}: valid"
    else:
        out = _lines(f"{kind} {data['name']}: invalid", f"  {data['error']}", f"  witness: {data['witness']}")
    return Outcome(out, data, OK if data["valid"] else PROPERTY_FAILED)


def cmd_pc(args):
    text, kind = read(args.path)
    if kind == "monoid":
        A = formats.parse_monoid(text)
        d = is_pc_monoid(A)
        data = {"kind": kind, "name": A.name, "pc": d.holds}
        if not d.holds:
            b, a, c = d.witness
            data["witness"] = [A.label(b), A.label(a), A.label(c)]
            data["note"] = d.note
            ab = (A.label(b), A.label(a))
            lc = A.label(c)
            if d.note.startswith("right"):
                why = f"{ab[0]} {lc} = {ab[1]} {lc} = {A.label(A(b, c))} != *"
            else:
                why = f"{lc} {ab[0]} = {lc} {ab[1]} = {A.label(A(c, b))} != *"
            data["reason"] = why
    elif kind == "aset":
        if not args.monoid:
            raise ParseError("an A-set file needs --monoid")
        A = load_monoid(args.monoid)
        X = formats.parse_aset(text, A)
        d = is_pc_aset(X, strict=False)
        data = {"kind": kind, "name": X.name, "pc": d.holds, "ambient_pc": bool(is_pc_monoid(A))}
        if not d.holds:
            b, a, x = d.witness
            data["witness"] = [A.label(b), A.label(a), x]
            data["reason"] = f"{A.label(b)} . {x} = {A.label(a)} . {x} = {X(a, x)} != *"
    elif kind == "nset":
        X = formats.parse_nset(text)
        if X.tails:
            raise ParseError("pc test is for finite N-sets; this one has tails")
        cls = classify_nset(X)
        T = to_truncated_aset(X)
        d = is_pc_aset(T, strict=False)
        data = {"kind": kind, "name": X.name, "pc": d.holds, "rooted_tree": cls.rooted_tree, "loops": list(cls.loops)}
        if not d.holds:
            data["witness"] = list(d.witness)
    else:
        G = formats.parse_group(text)
        data = {"kind": kind, "name": G.name, "pc": True}
    out = f"{data['name']}: pc {'true' if data['pc'] else 'false'}"
    if "reason" in data:
        out += f"\n  witness: {data['reason']}"
    elif "witness" in data:
        out += f"\n  witness: {data['witness']}"
    return Outcome(out, data)


def cmd_enumerate(args):
    A = load_monoid(args.monoid)
    Xs = enumerate_asets(A, args.bound, args.flavor)
    data = {
        "monoid": A.name,
        "flavor": args.flavor,
        "bound": args.bound,
        "count": len(Xs),
        "asets": [formats.aset_to_json(X) for X in Xs],
    }
    sizes = {}
    for X in Xs:
        sizes[X.size] = sizes.get(X.size, 0) + 1
    rows = [f"{A.name}, flavor {args.flavor}, bound {args.bound}: {len(Xs)} classes"]
    rows += [f"  size {k}: {v}" for k, v in sorted(sizes.items())]
    if args.verbose:
        rows += [formats.serialize_aset(X).rstrip() for X in Xs]
    return Outcome(_lines(*rows), data)


def _k_report(P, group, cmap, checks):
    data = report(P, group, cmap, checks)
    data["group"] = group.describe()
    rows = [
        f"{P.monoid}, flavor {P.flavor}, bound {P.bound}",
        f"  generators {P.ngens}, relations {len(P.relations)}",
        f"  group {group.describe()}",
        f"  rank {group.free_rank}, torsion {list(group.torsion) or 'none'}",
    ]
    rows += [f"  check {k}: {v}" for k, v in checks.items()]
    failed = any(v is False for v in checks.values())
    return Outcome(_lines(*rows), data, PROPERTY_FAILED if failed else OK)


def cmd_k0(args):
    A = load_monoid(args.monoid)
    flavor = args.flavor or "pc"
    P, group, cmap = compute(A, flavor, args.bound)
    checks = {"additivity": True, "smith_form": group.check(), "exactness": None, "devissage": None}
    if flavor == "pc" and is_pc_monoid(A) and finite_length(A) is not None:
        checks["devissage"] = devissage_check(A, args.bound)["holds"]
    checks["cardinality_scale"] = cardinality_scale(P, cmap)
    return _k_report(P, group, cmap, checks)


def cmd_g0(args):
    flavor = args.flavor or ("all" if args.monoid else "nset")
    if flavor in ("nset", "fgnset"):
        A = None
    elif args.monoid:
        A = load_monoid(args.monoid)
    else:
        raise ParseError(f"flavor {flavor!r} needs a monoid file")
    P, group, cmap = compute(A, flavor, args.bound)
    checks = {"additivity": True, "smith_form": group.check(), "exactness": None, "devissage": None}
    return _k_report(P, group, cmap, checks)


def cmd_scan(args):
    A = load_monoid(args.monoid)
    rows = stabilization_scan(A, args.flavor or "pc", args.start, args.bound)
    text = [f"{A.name}, flavor {args.flavor or 'pc'}"]
    for r in rows:
        iso = r.get("iso_from_previous")
        tag = "" if iso is None else f"  iso from previous: {iso}"
        text.append(f"  bound {r['bound']}: {r['group']} ({r['generators']} gens){tag}")
    return Outcome(_lines(*text), {"monoid": A.name, "flavor": args.flavor or "pc", "bounds": rows})


def cmd_burnside(args):
    G = load_group(args.group)
    rep = burnside_report(G.table, G.name)
    rows = [
        f"Burnside ring of {G.name} (order {G.order})",
        f"  rank {rep['rank']}, torsion {rep['torsion'] or 'none'}",
        f"  subgroup orders {rep['subgroup_orders']}",
        "  marks:",
    ]
    rows += ["    " + " ".join(f"{v:>3}" for v in row) for row in rep["marks"]]
    rows += [f"  check {k}: {v}" for k, v in rep["checks"].items()]
    code = OK if all(rep["checks"].values()) else PROPERTY_FAILED
    return Outcome(_lines(*rows), rep, code)


def cmd_devissage(args):
    A = load_monoid(args.monoid)
    rep = devissage_check(A, args.bound)
    rows = [
        f"{A.name}: length {rep['length']}, K'_0 at bound {args.bound} = {rep['group']}",
        f"  {len(rep['classes'])} classes, identity holds: {rep['holds']}",
    ]
    for c in rep["classes"]:
        if not c["identity"]:
            rows.append(f"  failed on {c['generator']} (pieces {c['pieces']})")
    return Outcome(_lines(*rows), rep, OK if rep["holds"] else PROPERTY_FAILED)


def cmd_localize(args):
    A = load_monoid(args.monoid)
    s = element(A, args.element)
    rep = localization_check(A, s, args.bound, flavor=args.flavor or "pc")
    last = rep["bounds"][-1]
    rows = [
        f"{A.name}, s = {rep['s']}: quotient {rep['quotient']}, localization of size {rep['localization_size']}",
        f"  bounds {[b['bound'] for b in rep['bounds']]}, stabilized {rep['stabilized']}",
        f"  {last['source']} -> {last['middle']} -> {last['target']} -> 0",
    ]
    rows += [f"  {k}: {last[k]}" for k in ("well_defined", "composite_zero", "surjective", "kernel_is_image")]
    rows.append(f"  exact: {rep['holds']}")
    return Outcome(_lines(*rows), rep, OK if rep["holds"] else PROPERTY_FAILED)


def cmd_acgw(args):
    A = load_monoid(args.monoid)
    seed = default_seed() if args.seed is None else args.seed
    if args.suite == "all":
        reports = check_all(A, args.samples, seed)
    else:
        reports = SUITES[args.suite](A, args.samples, seed)
    rows = [f"{A.name}: {args.samples} samples per axiom, seed {seed}"]
    rows += [f"  {r.axiom:<12} tested {r.tested:>6}  failures {len(r.failures)}" for r in reports]
    code = OK if all(r.ok for r in reports) else PROPERTY_FAILED
    return Outcome(_lines(*rows), [r.to_dict() for r in reports], code)


def cmd_verify_all(args):
    from .verify import run_all

    seed = default_seed() if args.seed is None else args.seed
    only = None
    if args.only:
        try:
            only = {int(v) for v in args.only.split(",")}
        except ValueError:
            raise ParseError(f"--only takes comma separated integers, got {args.only!r}") from None
    results = run_all(seed=seed, only=only)
    passed = sum(r.passed for r in results)
    rows = [r.line() for r in results]
    rows.append(f"{passed}/{len(results)} criteria passed")
    data = [
        {"id": r.id, "title": r.title, "passed": r.passed, "seconds": round(r.seconds, 3), "details": r.details}
        for r in results
    ]
    return Outcome(_lines(*rows), data, OK if passed == len(results) else PROPERTY_FAILED)


# -- parser ---------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="kprime", description="Pointed monoids, A-sets and truncated K-groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--out", help="write the output to this file")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, "check that a file holds a valid table")
    sp.add_argument("path")
    sp.add_argument("--monoid", help="monoid file for A-set input")

    sp = add("pc", cmd_pc, "decide partial cancellation")
    sp.add_argument("path")
    sp.add_argument("--monoid", help="monoid file for A-set input")

    sp = add("enumerate", cmd_enumerate, "list A-sets up to isomorphism")
    sp.add_argument("monoid")
    sp.add_argument("--flavor", default="all", choices=["all", "pc", "free"])
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--verbose", "-v", action="store_true", help="print every A-set")

    sp = add("k0", cmd_k0, "truncated K_0 or K'_0 of a monoid")
    sp.add_argument("monoid")
    sp.add_argument("--flavor", choices=["all", "pc", "free"])
    sp.add_argument("--bound", type=int, default=4)

    sp = add("g0", cmd_g0, "truncated G_0 of a monoid or of N-sets")
    sp.add_argument("monoid", nargs="?")
    sp.add_argument("--flavor", choices=["all", "pc", "free", "nset", "fgnset"])
    sp.add_argument("--bound", type=int, default=4)

    sp = add("scan", cmd_scan, "groups across increasing bounds")
    sp.add_argument("monoid")
    sp.add_argument("--flavor", choices=["all", "pc", "free"])
    sp.add_argument("--start", type=int, default=1)
    sp.add_argument("--bound", type=int, default=4)

    sp = add("burnside", cmd_burnside, "Burnside ring and table of marks")
    sp.add_argument("group")

    sp = add("devissage", cmd_devissage, "check the devissage identity")
    sp.add_argument("monoid")
    sp.add_argument("--bound", type=int, default=4)

    sp = add("localize", cmd_localize, "exactness of the localization sequence")
    sp.add_argument("monoid")
    sp.add_argument("--element", "-s", required=True, help="label or index of s")
    sp.add_argument("--flavor", choices=["all", "pc", "free"])
    sp.add_argument("--bound", type=int, default=3)

    sp = add("acgw", cmd_acgw, "randomized axiom checks")
    sp.add_argument("monoid")
    sp.add_argument("--suite", default="all", choices=["all", *SUITES])
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int)

    sp = add("verify-paper", cmd_verify_all, "run every acceptance criterion")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--only", help="comma separated criterion numbers")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    for opt in ("bound", "samples", "start"):
        v = getattr(args, opt, None)
        if v is not None and v < 0:
            print(f"kprime: error: --{opt} must be non-negative", file=sys.stderr)
            return INPUT_ERROR
    try:
        res = args.func(args)
    except (KPrimeError, ValueError, OSError) as exc:
        print(f"kprime: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    text = formats.dumps(res.data) if args.json else res.text + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
