"""Command line front end: ``partialskew verify|suite|oracle|ideals|pgr|lpa``."""

import argparse
import json
import os
import random
import sys

from . import instances as inst
from .errors import (
    IllFormed, InstanceMismatch, NeedsField, NonAbelian, NotInvariant, OracleBudget,
    StarInjectivityFails,
)
from .exel import compare_with_oracle, oracle_enumerate
from .graphs import (
    DEFAULT_PATH_CAP, boolean_algebra_check, check_star_injective, induce_theta_via_psi, psi_hom, theta_action,
)
from .groupoids import DEFAULT_BISECTION_CAP, build_transformation_groupoid, units_of_points
from .groups import group_from_name
from .ideals import correspondence_check, maximality_check, random_generators
from .lpa import graded_uniqueness_check, verify_cor43, verify_cor45
from .partial_actions import induce_via_hom, invariant_subsets
from .pgr import build_PG
from .report import Report, jsonable
from .scalars import field_from_name
from .skew_rings import BisectionContext, graded_regularity, prop36_isos, skew_ring_of_action, thm26_isos

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3

PARSE_ERRORS = (OSError, ValueError, KeyError, TypeError, IllFormed, InstanceMismatch, NeedsField)

ACTION_CLAIMS = ("thm26", "prop36", "prop312", "lemma33", "lemma310")
GRAPH_CLAIMS = ("cor43", "cor45", "lemma44", "lemma41", "lemma31", "cylinders")
GROUP_CLAIMS = ("pgr", "exel")
CLAIMS = ACTION_CLAIMS + GRAPH_CLAIMS + GROUP_CLAIMS


class Job:
    """A single claim on a single instance."""

    def __init__(self, claim, field="q", seed=0, instance=None, graph=None, group=None,
                 cap_paths=DEFAULT_PATH_CAP, cap_bisections=DEFAULT_BISECTION_CAP, samples=8):
        if claim not in CLAIMS:
            raise IllFormed(f"unknown claim {claim!r}")
        self.claim = claim
        self.field_name = field
        self.seed = seed
        self.instance = instance
        self.graph = graph
        self.group = group
        self.cap_paths = cap_paths
        self.cap_bisections = cap_bisections
        self.samples = samples

    def load(self):
        """(object, canonical instance JSON)."""
        if self.claim in GRAPH_CLAIMS:
            if self.graph is None:
                raise IllFormed(f"{self.claim} needs --graph")
            g = inst.load_graph(self.graph)
            return g, g.to_json()
        if self.claim in GROUP_CLAIMS:
            name = self.group or "zmod:2"
            return group_from_name(name), {"group": name}
        if self.instance is None:
            a = inst.random_action(self.seed)
        else:
            a = inst.load_action(self.instance)
        return a, a.to_json()


def _run_action_claim(claim, a, field, job, rng):
    if claim == "thm26":
        gpd = build_transformation_groupoid(a)
        ctx = BisectionContext(gpd, job.cap_bisections)
        rep = Report("thm26")
        ranks = {}
        for U in invariant_subsets(a):
            t = thm26_isos(gpd, units_of_points(gpd, U), field, ctx=ctx, representation=True)
            rep.extend(t.report, f"U={sorted(U)}: ")
            ranks[",".join(sorted(U))] = t.f.source.dim
        rep.data["rank"] = ranks
        return rep
    if claim == "prop36":
        gpd = build_transformation_groupoid(a)
        ctx = BisectionContext(gpd, job.cap_bisections)
        rep = Report("prop36")
        dims = {}
        for U in invariant_subsets(a):
            p = prop36_isos(a, U, field, ctx=ctx)
            rep.extend(p.report, f"U={sorted(U)}: ")
            dims[",".join(sorted(U))] = p.report.data["dims"]
        rep.data["dims"] = dims
        return rep
    if claim == "prop312":
        R = skew_ring_of_action(a, field)
        samples = [random_generators(R, rng) for _ in range(job.samples)]
        return correspondence_check(a, field, samples)
    if claim == "lemma310":
        rep = Report("lemma310")
        R = skew_ring_of_action(a, field)
        for n in range(job.samples):
            rep.extend(maximality_check(a, field, random_generators(R, rng)), f"sample {n}: ")
        return rep
    if claim == "lemma33":
        return graded_regularity(skew_ring_of_action(a, field))
    raise IllFormed(claim)


def _run_graph_claim(claim, g, field, job):
    if claim == "cor43":
        return verify_cor43(g, field)
    if claim == "cor45":
        try:
            return verify_cor45(g, field, job.cap_paths)
        except StarInjectivityFails as exc:
            rep = Report("cor45")
            rep.add("star-injective (needed for the ℤ-action)", False, {"vertex": exc.witness})
            return rep
    if claim == "lemma44":
        ok, v, rep = check_star_injective(g)
        return rep
    if claim == "lemma41":
        return graded_uniqueness_check(g, field)
    if claim == "cylinders":
        return boolean_algebra_check(g, job.samples, job.seed, job.cap_paths)
    if claim == "lemma31":
        ok, v, _ = check_star_injective(g)
        if g.acyclic:
            res = induce_via_hom(theta_action(g), psi_hom(g))
        else:
            res = induce_theta_via_psi(g, job.cap_paths)
        obstructed = hasattr(res, "witnesses")
        rep = Report("lemma31")
        rep.add("obstructed exactly when not star-injective", obstructed == (not ok),
                {"obstructed": obstructed, "star_injective": ok,
                 "witnesses": [str(c) for c in res.witnesses] if obstructed else []})
        rep.data["obstruction"] = [str(c) for c in res.witnesses] if obstructed else None
        return rep
    raise IllFormed(claim)


def exel_report(G):
    res = compare_with_oracle(G)
    rep = Report("exel")
    rep.add("canonical forms match the rewriting oracle", res["mismatch"] is None, res["mismatch"])
    rep.data.update({"canonical": res["canonical"], "oracle": res["oracle"]})
    return rep


def run_job(job):
    """(exit code, certificate dict)."""
    cert = {"claim": job.claim, "field": job.field_name, "seed": job.seed}
    try:
        field = field_from_name(job.field_name)
        obj, blob = job.load()
        cert["instance_hash"] = inst.instance_hash(blob)
    except PARSE_ERRORS as exc:
        cert.update({"pass": False, "error": f"parse error: {exc}"})
        return EXIT_PARSE, cert
    rng = random.Random(job.seed)
    try:
        if job.claim in GRAPH_CLAIMS:
            rep = _run_graph_claim(job.claim, obj, field, job)
        elif job.claim == "pgr":
            rep = build_PG(obj, field).report
        elif job.claim == "exel":
            rep = exel_report(obj)
        else:
            rep = _run_action_claim(job.claim, obj, field, job, rng)
    except OracleBudget as exc:
        cert.update({"pass": False, "error": f"budget exceeded: {exc}"})
        return EXIT_BUDGET, cert
    except (NonAbelian, NotInvariant) as exc:
        cert.update({"pass": False, "error": str(exc), "checks": []})
        return EXIT_FAIL, cert
    except PARSE_ERRORS as exc:
        cert.update({"pass": False, "error": f"invalid input: {exc}"})
        return EXIT_PARSE, cert
    body = rep.to_json()
    cert["checks"] = body["checks"]
    cert["pass"] = body["pass"]
    if rep.data:
        cert["data"] = jsonable(rep.data)
    return (EXIT_PASS if rep.passed else EXIT_FAIL), cert


def format_cert(cert):
    lines = [f"{cert['claim']}: {'PASS' if cert.get('pass') else 'FAIL'}"
             f"  field={cert['field']} seed={cert['seed']}"]
    if "instance_hash" in cert:
        lines.append(f"  instance {cert['instance_hash'][:16]}")
    if "error" in cert:
        lines.append(f"  error: {cert['error']}")
    for c in cert.get("checks", []):
        mark = "ok " if c["pass"] else "BAD"
        tail = f"  {json.dumps(c['detail'], ensure_ascii=False)}" if "detail" in c and not c["pass"] else ""
        lines.append(f"  [{mark}] {c['name']}{tail}")
    for k, v in cert.get("data", {}).items():
        lines.append(f"  {k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines)


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(inst.canonical_json(obj) if path.endswith(".min.json")
                 else json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))
        fh.write("\n")


def _read_file(path):
    if path is None:
        return None
    return inst.read_json(path)


# -- commands --------------------------------------------------------------


def cmd_verify(args):
    try:
        instance = _read_file(args.instance)
        graph = _read_file(args.graph)
    except PARSE_ERRORS as exc:
        print(f"{args.claim}: FAIL\n  error: parse error: {exc}")
        return EXIT_PARSE
    job = Job(args.claim, args.field, args.seed, instance, graph, args.group,
              args.cap_paths, args.cap_bisections, args.samples)
    code, cert = run_job(job)
    print(format_cert(cert))
    if args.dump_groupoid and code != EXIT_PARSE and job.claim in ACTION_CLAIMS:
        a, _ = job.load()
        print(json.dumps(build_transformation_groupoid(a).to_json(), indent=2, ensure_ascii=False))
    if args.json:
        _write_json(args.json, cert)
    return code


def _resolve(path, base):
    """A manifest path: relative to the manifest, else a bundled data file."""
    cand = os.path.join(base, path)
    if os.path.exists(cand):
        return inst.read_json(cand)
    return inst.bundled(path)


def load_manifest(path=None):
    if path is None:
        return inst.bundled("paper-suite.json"), None
    return inst.read_json(path), os.path.dirname(os.path.abspath(path))


def expand_manifest(manifest, base):
    """Yield (label, Job or exception) in manifest order."""
    for n, entry in enumerate(manifest.get("entries", [])):
        seeds = entry.get("seeds", [entry.get("seed", 0)])
        for seed in seeds:
            label = entry.get("label", f"#{n}") + (f"/seed {seed}" if len(seeds) > 1 else "")
            try:
                instance = _resolve(entry["instance"], base) if "instance" in entry else None
                graph = _resolve(entry["graph"], base) if "graph" in entry else None
                job = Job(entry["claim"], entry.get("field", "q"), seed, instance, graph,
                          entry.get("group"), entry.get("cap_paths", DEFAULT_PATH_CAP),
                          entry.get("cap_bisections", DEFAULT_BISECTION_CAP),
                          entry.get("samples", 8))
                yield label, job
            except PARSE_ERRORS as exc:
                yield label, exc


def run_suite(manifest, base=None):
    """Run every entry sequentially; returns (exit code, rows)."""
    rows = []
    codes = []
    for label, job in expand_manifest(manifest, base or "."):
        if isinstance(job, Exception):
            rows.append({"label": label, "claim": "?", "code": EXIT_PARSE, "pass": False,
                         "error": f"parse error: {job}"})
            codes.append(EXIT_PARSE)
            continue
        code, cert = run_job(job)
        rows.append({"label": label, "claim": job.claim, "code": code, "pass": cert["pass"],
                     "certificate": cert})
        codes.append(code)
    if EXIT_PARSE in codes:
        return EXIT_PARSE, rows
    if EXIT_BUDGET in codes:
        return EXIT_BUDGET, rows
    if EXIT_FAIL in codes:
        return EXIT_FAIL, rows
    return EXIT_PASS, rows


def cmd_suite(args):
    try:
        manifest, base = load_manifest(args.manifest)
    except PARSE_ERRORS as exc:
        print(f"suite: parse error: {exc}")
        return EXIT_PARSE
    code, rows = run_suite(manifest, base)
    width = max([len(r["label"]) for r in rows] + [5])
    print(f"{'entry':<{width}}  {'claim':<8}  result")
    for r in rows:
        status = "PASS" if r["pass"] else {1: "FAIL", 2: "PARSE ERROR", 3: "BUDGET"}[r["code"]]
        extra = f"  {r['error']}" if "error" in r else ""
        cert = r.get("certificate", {})
        if not r["pass"] and "error" in cert:
            extra = f"  {cert['error']}"
        print(f"{r['label']:<{width}}  {r['claim']:<8}  {status}{extra}")
    print(f"{sum(r['pass'] for r in rows)}/{len(rows)} passed")
    if args.json:
        _write_json(args.json, {"rows": rows, "exit": code})
    return code


def cmd_oracle(args):
    try:
        G = group_from_name(args.group)
    except PARSE_ERRORS as exc:
        print(f"oracle: parse error: {exc}")
        return EXIT_PARSE
    try:
        table = oracle_enumerate(G, args.max_len)
        res = compare_with_oracle(G, table)
    except OracleBudget as exc:
        print(f"oracle: budget exceeded: {exc}")
        return EXIT_BUDGET
    ok = res["mismatch"] is None
    print(f"S({args.group}): canonical forms {res['canonical']}, oracle classes {res['oracle']}"
          f"  {'PASS' if ok else 'FAIL'}")
    if not ok:
        print(f"  mismatch: {jsonable(res['mismatch'])}")
    if args.json:
        _write_json(args.json, {"group": args.group, **jsonable(res), "table": table.to_json()})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_ideals(args):
    try:
        a = inst.load_action(_read_file(args.instance)) if args.instance else inst.random_action(args.seed)
        field = field_from_name(args.field)
    except PARSE_ERRORS as exc:
        print(f"ideals: parse error: {exc}")
        return EXIT_PARSE
    try:
        rep = correspondence_check(a, field)
    except OracleBudget as exc:
        print(f"ideals: budget exceeded: {exc}")
        return EXIT_BUDGET
    print(rep.summary())
    for k, v in rep.data.items():
        print(f"  {k}: {json.dumps(jsonable(v), ensure_ascii=False)}")
    if args.json:
        _write_json(args.json, rep.to_json())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_pgr(args):
    job = Job("pgr", args.field, 0, group=args.group)
    code, cert = run_job(job)
    print(format_cert(cert))
    if args.json:
        _write_json(args.json, cert)
    return code


def cmd_lpa(args):
    try:
        graph = _read_file(args.graph)
    except PARSE_ERRORS as exc:
        print(f"lpa: parse error: {exc}")
        return EXIT_PARSE
    job = Job(args.verify, args.field, args.seed, graph=graph, cap_paths=args.cap_paths)
    code, cert = run_job(job)
    print(format_cert(cert))
    if args.json:
        _write_json(args.json, cert)
    return code


def build_parser():
    p = argparse.ArgumentParser(prog="partialskew", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify one claim on one instance")
    v.add_argument("claim", choices=CLAIMS)
    v.add_argument("--instance", help="partial action JSON (default: random from --seed)")
    v.add_argument("--graph", help="graph JSON")
    v.add_argument("--group", help="group name for pgr, e.g. zmod:2, z2xz2")
    v.add_argument("--field", default="q", help="q, f2, f5, ...")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", help="write the certificate here")
    v.add_argument("--cap-paths", type=int, default=DEFAULT_PATH_CAP)
    v.add_argument("--cap-bisections", type=int, default=DEFAULT_BISECTION_CAP)
    v.add_argument("--samples", type=int, default=8,
                   help="sampled ideals (prop312, lemma310) or random triples (cylinders)")
    v.add_argument("--dump-groupoid", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("suite", help="run a manifest of claims")
    s.add_argument("manifest", nargs="?", help="manifest JSON (default: bundled acceptance suite)")
    s.add_argument("--json")
    s.set_defaults(func=cmd_suite)

    o = sub.add_parser("oracle", help="compare S(G) canonical forms with the rewriting oracle")
    o.add_argument("--group", required=True)
    o.add_argument("--max-len", type=int, default=8)
    o.add_argument("--json")
    o.set_defaults(func=cmd_oracle)

    i = sub.add_parser("ideals", help="invariant subsets and graded ideals")
    i.add_argument("--instance")
    i.add_argument("--field", default="f2")
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--json")
    i.set_defaults(func=cmd_ideals)

    g = sub.add_parser("pgr", help="partial group ring of a finite abelian group")
    g.add_argument("--group", default="zmod:2")
    g.add_argument("--field", default="q")
    g.add_argument("--json")
    g.set_defaults(func=cmd_pgr)

    la = sub.add_parser("lpa", help="Leavitt path algebra claims")
    la.add_argument("--graph", required=True)
    la.add_argument("--verify", choices=GRAPH_CLAIMS, default="cor43")
    la.add_argument("--field", default="q")
    la.add_argument("--seed", type=int, default=0)
    la.add_argument("--cap-paths", type=int, default=DEFAULT_PATH_CAP)
    la.add_argument("--json")
    la.set_defaults(func=cmd_lpa)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
