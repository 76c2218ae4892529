"""Command-line front door: queries, exports, verification suites and the
rank experiment sweeps.

Every subcommand writes its payload to standard output and keeps it
deterministic for a fixed argv and seed; progress and per-suite timing go
to standard error so reruns stay byte-identical.  Exit codes: 0 on success
and on fully passing verification, 1 when some check failed (the JSON
report still lands on standard output), 2 on usage errors.
"""

import argparse
import hashlib
import json
import sys
import time
from importlib import resources

from . import config
from .cartan import level, root_system
from .charpoly import InexpressibleMonomial, p_poly, q_poly, substitution
from .fusion import (
    WZWFusion,
    fuse_kw,
    fusion_graph_dot,
    fusion_matrix_kw,
    fusion_matrix_verlinde,
    matrix_csv,
    smatrix,
)
from .ideals import (
    buchberger,
    fusion_ideal,
    fusion_variety_check,
    ik_ideal,
    normal_form,
    standard_monomials,
    verify_gepner_fuchs,
    verify_lemma_generation,
)
from .ktheory import (
    bratteli,
    experiments_csv,
    invertibility_checks,
    nullity_experiments,
    riesz_counterexample_search,
    s3_example_check,
    ses_rank_checks,
    verify_psi,
    verify_quotient_theorem,
    verlinde_identities_check,
    worked_identity_polys,
)
from .poly import parse_poly


class UsageError(Exception):
    pass


def _parse_weight(text: str, rs, flag: str = "--weight"):
    try:
        lam = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}")
    if len(lam) != rs.rank:
        raise UsageError(
            f"{flag}: weight {text!r} has {len(lam)} labels, rank of {rs.name} is {rs.rank}"
        )
    if any(v < 0 for v in lam):
        raise UsageError(f"{flag}: labels must be nonnegative, got {text!r}")
    return lam


def _check_level(rs, k: int, lam, flag: str) -> None:
    if level(rs.name, lam) > k:
        raise UsageError(f"{flag}: weight {lam} sits above level {k}")


def _wname(lam) -> str:
    return ",".join(str(v) for v in lam)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _print_json(obj) -> None:
    print(_dumps(obj))


def _fmt_complex(z) -> str:
    return f"{z.real:.10f}{z.imag:+.10f}j"


def _element_text(elem: dict) -> str:
    if not elem:
        return "0"
    parts = []
    for lam, m in sorted(elem.items()):
        parts.append(("" if m == 1 else f"{m}*") + f"({_wname(lam)})")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# query subcommands

def cmd_simples(args, cfg) -> int:
    rs = root_system(args.group)
    cat = WZWFusion(rs.name, args.k)
    rows = [
        {
            "weight": list(lam),
            "level": level(rs.name, lam),
            "dim": cat.quantum_dim(lam),
        }
        for lam in cat.labels
    ]
    if args.format == "json":
        _print_json({"group": rs.name, "k": args.k, "simples": rows})
    elif args.format == "csv":
        print("weight,level,dim")
        for r in rows:
            print(f"\"{_wname(r['weight'])}\",{r['level']},{r['dim']:.12g}")
    else:
        for r in rows:
            print(f"({_wname(r['weight'])})  level {r['level']}  dim {r['dim']:.12g}")
    return 0


def cmd_fuse(args, cfg) -> int:
    rs = root_system(args.group)
    lam = _parse_weight(args.weight, rs)
    _check_level(rs, args.k, lam, "--weight")
    if args.format == "dot":
        if args.with_weight is not None:
            raise UsageError("--with: not meaningful with --format dot (the graph covers all simples)")
        sys.stdout.write(fusion_graph_dot(rs.name, args.k, lam))
        return 0
    if args.with_weight is None:
        raise UsageError("--with: required unless --format dot")
    mu = _parse_weight(args.with_weight, rs, "--with")
    _check_level(rs, args.k, mu, "--with")
    prod = fuse_kw(rs.name, args.k, lam, mu)
    if args.format == "json":
        _print_json(
            {
                "group": rs.name,
                "k": args.k,
                "left": list(lam),
                "right": list(mu),
                "product": [
                    {"weight": list(nu), "mult": m} for nu, m in sorted(prod.items())
                ],
            }
        )
    elif args.format == "csv":
        print("weight,mult")
        for nu, m in sorted(prod.items()):
            print(f'"{_wname(nu)}",{m}')
    else:
        print(_element_text(prod))
    return 0


def cmd_smatrix(args, cfg) -> int:
    rs = root_system(args.group)
    sm = smatrix(rs.name, args.k)
    n = len(sm.labels)
    entries = [[complex(sm.entries[i, j]) for j in range(n)] for i in range(n)]
    if args.format == "json":
        _print_json(
            {
                "group": rs.name,
                "k": args.k,
                "labels": [list(lam) for lam in sm.labels],
                "entries": [[[z.real, z.imag] for z in row] for row in entries],
            }
        )
    elif args.format == "csv":
        sys.stdout.write(
            matrix_csv([[_fmt_complex(z) for z in row] for row in entries], sm.labels)
        )
    else:
        for row in entries:
            print("  ".join(_fmt_complex(z) for z in row))
    return 0


def _poly_payload(args, cfg, which: str) -> int:
    rs = root_system(args.group)
    lam = _parse_weight(args.weight, rs)
    if which == "q":
        poly = q_poly(rs.name, lam)
        names = substitution(rs.name).xy_names
        ascending = False
    else:
        try:
            poly = p_poly(rs.name, lam)
        except InexpressibleMonomial:
            raise UsageError(
                f"--weight: {lam} has no substituted form for {rs.name} "
                "(its class is not expressible in the invariant variables)"
            )
        names = substitution(rs.name).st_names
        ascending = True
    if args.format == "json":
        _print_json(
            {
                "group": rs.name,
                "weight": list(lam),
                "variables": list(names),
                "terms": [
                    {"exponents": list(e), "coeff": int(c)}
                    for e, c in sorted(poly.terms.items())
                ],
            }
        )
    else:
        print(poly.render(names, ascending=ascending))
    return 0


def cmd_qpoly(args, cfg) -> int:
    return _poly_payload(args, cfg, "q")


def cmd_ppoly(args, cfg) -> int:
    return _poly_payload(args, cfg, "p")


def cmd_ideal(args, cfg) -> int:
    rs = root_system(args.group)
    if args.which == "fusion":
        gens = fusion_ideal(rs.name, args.k)
        names = substitution(rs.name).xy_names
        ascending = False
    else:
        gens = ik_ideal(rs.name, args.k)
        names = substitution(rs.name).st_names
        ascending = True
    if args.action == "gens":
        polys = gens
    else:
        polys = buchberger(gens, args.order)
    if args.action == "std":
        std = standard_monomials(polys, args.order)
        if args.format == "json":
            _print_json(
                {
                    "group": rs.name,
                    "k": args.k,
                    "which": args.which,
                    "order": args.order,
                    "count": None if std is None else len(std),
                    "monomials": None if std is None else [list(e) for e in std],
                }
            )
        elif std is None:
            print("not zero-dimensional")
        else:
            for e in std:
                mono = "".join(
                    f"{n}^{p}" if p > 1 else (n if p == 1 else "")
                    for n, p in zip(names, e)
                )
                print(mono or "1")
        return 0
    if args.format == "json":
        _print_json(
            {
                "group": rs.name,
                "k": args.k,
                "which": args.which,
                "order": args.order,
                "action": args.action,
                "polynomials": [
                    {
                        "terms": [
                            {"exponents": list(e), "coeff": str(c)}
                            for e, c in sorted(p.terms.items())
                        ]
                    }
                    for p in polys
                ],
            }
        )
    else:
        for p in polys:
            print(p.render(names, ascending=ascending))
    return 0


def cmd_k0(args, cfg) -> int:
    rs = root_system(args.group)
    report = verify_quotient_theorem(
        rs.name,
        args.k,
        cone_samples=args.cone_samples,
        seed=cfg.seed,
        tol=cfg.residual_tol,
    )
    if args.format == "text":
        print(f"group {report['group']}  level {report['level']}")
        print(f"quotient dimension {report['quotient_dimension']}")
        print(f"K0 rank {report['k0_rank']}")
        print(f"rank matches: {report['rank_matches']}")
        print(f"evaluation residual {report['evaluation_residual']:.3e}")
        print(f"cone checked {report['cone_checked']}  ok {report['cone_ok']}")
        print("PASS" if report["passed"] else "FAIL")
    else:
        _print_json(report)
    return 0 if report["passed"] else 1


def cmd_bratteli(args, cfg) -> int:
    rs = root_system(args.group)
    pi = _parse_weight(args.weight, rs)
    _check_level(rs, args.k, pi, "--weight")
    cat = WZWFusion(rs.name, args.k)
    diagram = bratteli(cat, pi, args.depth, rule=args.rule)
    if args.format == "json":
        _print_json(
            {
                "group": rs.name,
                "k": args.k,
                "rule": diagram.rule,
                "levels": [[list(v) for v in lv] for lv in diagram.levels],
                "matrices": diagram.matrices,
            }
        )
    elif args.format == "text":
        for m, lv in enumerate(diagram.levels):
            print(f"level {m}: " + " ".join(f"({_wname(v)})" for v in lv))
            if m < len(diagram.matrices):
                for row in diagram.matrices[m]:
                    print("  " + " ".join(str(x) for x in row))
    else:
        sys.stdout.write(diagram.to_dot())
    return 0


# ---------------------------------------------------------------------------
# verification suites

TABLE_SHA = {
    "su3-characters.txt": "f3f6516bb95bf04031338557471608556c6a08a22447990c51e859e52c0bbb46",
    "su3-substituted.txt": "7946fb05b1d0c23c91cb71feeb0ee0377732645937293a222fae369e0db1847d",
}


def _load_reference(fname: str, names) -> tuple[bool, dict]:
    data = resources.files("verlinde").joinpath("data", fname).read_text()
    checksum_ok = hashlib.sha256(data.encode()).hexdigest() == TABLE_SHA[fname]
    rows = {}
    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        w, expr = line.split("|")
        rows[tuple(int(v) for v in w.strip().split(","))] = parse_poly(expr.strip(), names)
    return checksum_ok, rows


def suite_tables(cfg, k=None) -> dict:
    checks = []
    for anchor, fname, names, compute in (
        ("table-1", "su3-characters.txt", ("x", "y"), q_poly),
        ("table-2", "su3-substituted.txt", ("s", "t"), p_poly),
    ):
        checksum_ok, rows = _load_reference(fname, names)
        mismatches = [
            list(lam) for lam, want in sorted(rows.items()) if compute("a2", lam) != want
        ]
        checks.append(
            {
                "name": anchor,
                "rows": len(rows),
                "checksum_ok": checksum_ok,
                "mismatches": mismatches,
                "passed": checksum_ok and len(rows) == 16 and not mismatches,
            }
        )
    return {
        "suite": "tables",
        "anchor": "tables-1-2",
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def suite_fusion(cfg, k=None) -> dict:
    checks = []
    for group in ("a1", "a2", "c2", "g2"):
        rs = root_system(group)
        funds = [(1,)] if rs.rank == 1 else [(1, 0), (0, 1)]
        for lev in range(1, (k or 4) + 1):
            ok = True
            for pi in funds:
                if level(group, pi) > lev:
                    continue
                if fusion_matrix_kw(group, lev, pi) != fusion_matrix_verlinde(group, lev, pi):
                    ok = False
            defect = smatrix(group, lev).unitarity_defect()
            checks.append(
                {
                    "name": f"dual-oracle-{group}-k{lev}",
                    "unitarity_defect": defect,
                    "passed": ok and defect < cfg.eigen_tol,
                }
            )
    return {
        "suite": "fusion",
        "anchor": "verlinde-kac-walton",
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def suite_ideals(cfg, k=None) -> dict:
    checks = []
    for group, levels in (("a1", (1, 4)), ("a2", (1, 3)), ("c2", (1, 2)), ("g2", (1,))):
        for lev in levels:
            rep = verify_gepner_fuchs(group, lev)
            checks.append(
                {
                    "name": f"quotient-ring-{group}-k{lev}",
                    "passed": rep["dimension_matches"]
                    and rep["residues_independent"]
                    and rep["structure_constants_match"],
                }
            )
    for lev in (1, 2, 3):
        rep = verify_lemma_generation(lev)
        checks.append(
            {
                "name": f"two-generator-presentation-k{lev}",
                "passed": rep["shell_in_two"]
                and rep["two_in_shell"]
                and rep["identities_hold"],
            }
        )
    for group in ("a1", "a2", "c2", "g2"):
        checks.append(
            {
                "name": f"variety-vanishing-{group}",
                "passed": all(
                    fusion_variety_check(group, lev, tol=cfg.residual_tol)
                    for lev in (1, 2)
                ),
            }
        )
    return {
        "suite": "ideals",
        "anchor": "gepner-fuchs",
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def suite_psi(cfg, k=None) -> dict:
    levels = [k] if k else [1, 2, 3]
    checks = []
    for lev in levels:
        rep = verify_psi(lev, n_max=6 if lev >= 5 else 4)
        checks.append(
            {
                "name": f"psi-square-k{lev}",
                "quotient_dimension": rep["quotient_dimension"],
                "surjective_at": rep["surjective_at"],
                "passed": rep["passed"],
            }
        )
        if lev == 5:
            wanted = worked_identity_polys()
            gb = buchberger(ik_ideal("a2", 5))
            exact = all(p_poly("a2", lam) == p for lam, p in wanted.items())
            reduced = all(normal_form(p, gb).is_zero() for p in wanted.values())
            checks.append(
                {
                    "name": "worked-identities-k5",
                    "passed": exact and reduced,
                }
            )
    return {
        "suite": "psi",
        "anchor": "psi-commuting-squares",
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def suite_identities(cfg, k=None) -> dict:
    s3 = s3_example_check(margin=cfg.cone_margin)
    even = verlinde_identities_check(10)
    inv = invertibility_checks(24, seed=cfg.seed)
    checks = [
        {"name": "warmup-s3", "passed": s3["passed"]},
        {"name": "even-level-identities", "passed": even["passed"]},
        {"name": "det-recursion", "passed": inv["passed"]},
    ]
    for n in (2, 3):
        rep = riesz_counterexample_search(n)
        checks.append(
            {
                "name": f"riesz-failure-n{n}",
                "interpolants": len(rep["interpolants"]),
                "passed": rep["passed"],
            }
        )
    return {
        "suite": "identities",
        "anchor": "ordered-ring-identities",
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def suite_experiments_small(cfg, k=None) -> dict:
    kmax = k or 12
    checks = []
    for group in ("c2", "g2"):
        rows = nullity_experiments(group, k_max=kmax, seed=cfg.seed)
        checks.append(
            {
                "name": f"nullity-patterns-{group}",
                "rows": len(rows),
                "passed": all(r["match"] and r["primes_agree"] for r in rows),
            }
        )
    for group, km in (("a1", 10), ("a2", 9)):
        rep = ses_rank_checks(group, km, seed=cfg.seed)
        checks.append(
            {
                "name": f"ses-ranks-{group}",
                "rows": len(rep["rows"]),
                "passed": rep["all_match"],
            }
        )
    return {
        "suite": "experiments-small",
        "anchor": "fundamental-nullity",
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


SUITES = {
    "tables": suite_tables,
    "fusion": suite_fusion,
    "ideals": suite_ideals,
    "psi": suite_psi,
    "identities": suite_identities,
    "experiments-small": suite_experiments_small,
}


def verify_all(cfg, names=None, k=None) -> dict:
    reports = []
    for name in names or SUITES:
        t0 = time.perf_counter()
        rep = SUITES[name](cfg, k)
        dt = time.perf_counter() - t0
        print(f"[{name}] {dt:.2f}s", file=sys.stderr)
        reports.append(rep)
    return {
        "seed": cfg.seed,
        "suites": reports,
        "passed": all(r["passed"] for r in reports),
    }


def cmd_verify(args, cfg) -> int:
    if args.suite and args.suite_flag and args.suite != args.suite_flag:
        raise UsageError("--suite: conflicts with the positional suite name")
    name = args.suite or args.suite_flag
    if name is not None and name not in SUITES:
        raise UsageError(f"--suite: unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = verify_all(cfg, [name] if name else None, k=args.k)
    if args.format == "text":
        for rep in report["suites"]:
            status = "PASS" if rep["passed"] else "FAIL"
            print(f"{rep['suite']:<20} {status}  ({len(rep['checks'])} checks)")
        if not report["passed"]:
            _print_json(report)
    else:
        _print_json(report)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# experiment sweeps

def cmd_experiment(args, cfg) -> int:
    rs = root_system(args.group)
    if args.action == "ses":
        rep = ses_rank_checks(rs.name, args.kmax, seed=cfg.seed)
        if args.format == "json":
            _print_json(rep)
        elif args.format == "text":
            for r in rep["rows"]:
                mark = "ok" if r["match"] else "MISMATCH"
                print(f"k={r['k']:<3} size={r['size']:<4} nullity={r['nullity']} {mark}")
        else:
            print("k,size,rank,nullity,expected,det,match")
            for r in rep["rows"]:
                det = "" if r["det"] is None else r["det"]
                print(
                    f"{r['k']},{r['size']},{r['rank']},{r['nullity']},{r['expected']},{det},{r['match']}"
                )
        return 0 if rep["all_match"] else 1
    if rs.name not in ("c2", "g2"):
        raise UsageError("--group: nullity experiments are defined for c2 (sp4) and g2")
    rows = nullity_experiments(
        rs.name, k_max=args.kmax, k_min=args.kmin, seed=cfg.seed, jobs=cfg.effective_jobs()
    )
    if args.pi is not None:
        pi = _parse_weight(args.pi, rs, "--pi")
        rows = [r for r in rows if r["pi"] == pi]
    if args.format == "json":
        _print_json(rows)
    elif args.format == "text":
        for r in rows:
            mark = "ok" if r["match"] else "MISMATCH"
            print(
                f"k={r['k']:<4} pi=({_wname(r['pi'])}) size={r['size']:<5} "
                f"rank={r['rank']:<5} nullity={r['nullity']} {mark}"
            )
    else:
        sys.stdout.write(experiments_csv(rows))
    return 0 if all(r["match"] and r["primes_agree"] for r in rows) else 1


# ---------------------------------------------------------------------------
# parser

def _add_format(sub, choices, default):
    sub.add_argument("--format", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="modular-prime seed")
    common.add_argument(
        "--precision", type=int, default=None, help="character-sum precision in bits"
    )
    common.add_argument(
        "--jobs", type=int, default=None, help="worker processes for sweeps (0 = all cores)"
    )

    parser = argparse.ArgumentParser(
        prog="verlinde",
        description="Exact fusion rings, their polynomial presentations and tower K-theory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simples", parents=[common], help="list the level-k simple objects")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    _add_format(p, ("text", "json", "csv"), "text")
    p.set_defaults(func=cmd_simples)

    p = sub.add_parser("fuse", parents=[common], help="fuse two simples, or draw the fusion graph")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--with", dest="with_weight", default=None)
    _add_format(p, ("text", "json", "csv", "dot"), "text")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("smatrix", parents=[common], help="numeric modular S-matrix")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    _add_format(p, ("text", "json", "csv"), "text")
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("qpoly", parents=[common], help="character polynomial of a weight")
    p.add_argument("--group", required=True)
    p.add_argument("--weight", required=True)
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_qpoly)

    p = sub.add_parser("ppoly", parents=[common], help="substituted character polynomial")
    p.add_argument("--group", required=True)
    p.add_argument("--weight", required=True)
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_ppoly)

    p = sub.add_parser("ideal", parents=[common], help="ideal generators, bases and quotients")
    p.add_argument("action", choices=("gens", "gb", "std"))
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument(
        "--which",
        choices=("fusion", "substituted"),
        default="fusion",
        help="character-variable ideal or its substituted image",
    )
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("k0", parents=[common], help="tower K-theory vs the polynomial quotient")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cone-samples", type=int, default=100)
    _add_format(p, ("json", "text"), "json")
    p.set_defaults(func=cmd_k0)

    p = sub.add_parser("bratteli", parents=[common], help="tower diagram for a step object")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--rule", choices=("alternating", "uniform", "constant"), default="alternating")
    _add_format(p, ("dot", "json", "text"), "dot")
    p.set_defaults(func=cmd_bratteli)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("suite", nargs="?", default=None)
    p.add_argument("--suite", dest="suite_flag", default=None)
    p.add_argument("--k", type=int, default=None, help="restrict a suite to one level")
    _add_format(p, ("json", "text"), "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", parents=[common], help="rank sweeps over the fundamentals")
    p.add_argument("action", choices=("nullity", "ses"))
    p.add_argument("--group", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--pi", default=None, help="restrict to one fundamental, e.g. 1,0")
    _add_format(p, ("csv", "json", "text"), "csv")
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = config.load(precision=args.precision, seed=args.seed, jobs=args.jobs)
    except ValueError as exc:
        print(f"error: --precision/--jobs: {exc}", file=sys.stderr)
        return 2
    config.apply(cfg)
    try:
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
