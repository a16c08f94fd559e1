"""Command-line front end: ``rack-lab <verb> [rack input] [flags]``.

Exit status is 0 on success, 1 when an input fails validation and 2 on
usage errors.  Reports go to stdout as JSON (or text with ``--pretty``);
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from racklab import core, knots, lattice, quandles, strack

VERBS = ("validate", "atoms", "orbits", "lattice", "quandle", "iota", "st-analyze", "color", "distinguish")


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    def __init__(self, report: dict):
        self.report = report
        super().__init__(report.get("error", "validation failed"))


def _load_json(path: str):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationFailure({"valid": False, "violation": "malformed input", "error": f"{path}: {exc}"})


def _family_spec(args) -> dict:
    spec = {"family": args.family}
    for name in ("n", "s", "t"):
        value = getattr(args, name)
        if value is not None:
            spec[name] = value
    if args.perm is not None:
        spec["perm"] = [int(x) for x in args.perm.split(",")]
    return spec


def _violation(exc: core.RackError) -> dict:
    if isinstance(exc, core.NotSelfDistributive):
        return {"violation": "self-distributivity", "witness": list(exc.witness)}
    if isinstance(exc, core.RowNotBijective):
        return {"violation": "bijectivity", "witness": [exc.a]}
    if isinstance(exc, core.ParameterViolation):
        return {"violation": "parameter"}
    return {"violation": "malformed input"}


def _load_rack(args, path: str | None) -> tuple[core.Rack, dict]:
    if path is not None and args.family is not None:
        raise UsageError("give either a rack file or --family, not both")
    if path is not None:
        spec = _load_json(path)
    elif args.family is not None:
        spec = _family_spec(args)
    else:
        raise UsageError("a rack is required: pass a JSON file or --family")
    try:
        rack = core.rack_from_json(spec)
    except core.RackError as exc:
        raise ValidationFailure({"valid": False, **_violation(exc), "error": str(exc)})
    except TypeError as exc:
        raise ValidationFailure({"valid": False, "violation": "malformed input", "error": str(exc)})
    echo = dict(spec) if isinstance(spec, dict) else {}
    echo.update(rack.to_json())
    return rack, echo


def _load_diagram(path: str) -> knots.KnotDiagram:
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        if name not in knots.FIXTURES:
            raise UsageError(f"unknown fixture {name!r}; known: {', '.join(knots.FIXTURES)}")
        return knots.FIXTURES[name]
    obj = _load_json(path)
    try:
        return knots.parse_diagram(obj)
    except knots.DiagramError as exc:
        raise ValidationFailure({"valid": False, "violation": "diagram", "error": f"{path}: {exc}"})


def _coloring_quandle(args) -> tuple[core.Rack, dict]:
    rack, echo = _load_rack(args, args.quandle)
    if args.corresponding:
        cq = quandles.corresponding_quandle(rack)
        echo = {"corresponding_of": echo, **cq.to_json()}
        return cq.quandle, echo
    if not rack.is_quandle:
        raise ValidationFailure({"valid": False, "violation": "quandle condition",
                                 "error": "colorings need a quandle (a|>a = a fails); try --corresponding"})
    return rack, echo


def cmd_validate(args):
    rack, echo = _load_rack(args, args.rack)
    check = core.conjugation_identity_check(rack)
    return {"rack": echo, "valid": True, "is_quandle": rack.is_quandle,
            "conjugation_identity": check.holds,
            "witness": list(check.witness) if check.witness else None}


def cmd_atoms(args):
    rack, echo = _load_rack(args, args.rack)
    return {"rack": echo, "atoms": [list(a.members) for a in lattice.atoms(rack)]}


def cmd_orbits(args):
    rack, echo = _load_rack(args, args.rack)
    return {"rack": echo, "orbits": [list(o.members) for o in lattice.orbits(rack)]}


def cmd_lattice(args):
    rack, echo = _load_rack(args, args.rack)
    try:
        lat = lattice.enumerate_subracks(rack, args.cap)
    except lattice.CapExceeded as exc:
        raise ValidationFailure({"valid": True, "violation": "cap", "error": str(exc)})
    atomic = lattice.is_atomic(lat)
    dist = lattice.is_distributive(lat)
    via_quandle = quandles.distributive_via_quandle(rack)
    report = {
        "rack": echo,
        **lat.to_json(),
        "atomic": atomic.atomic,
        "distributive": dist.distributive,
        "witness": [list(x) for x in dist.witness] if dist.witness else None,
    }
    if via_quandle != dist.distributive:
        report["error"] = (f"lattice check says distributive={dist.distributive} but the "
                           f"corresponding quandle says {via_quandle}")
        raise ValidationFailure(report)
    if args.oracle:
        brute = [list(q.members) for q in lattice.brute_force_subracks(rack)]
        report["oracle"] = "agree" if brute == report["subracks"] else "disagree"
        if report["oracle"] != "agree":
            report["error"] = "enumeration disagrees with brute-force subset filtering"
            raise ValidationFailure(report)
    return report


def cmd_quandle(args):
    rack, echo = _load_rack(args, args.rack)
    cq = quandles.corresponding_quandle(rack)
    return {"rack": echo, **cq.to_json()}


def cmd_iota(args):
    rack, echo = _load_rack(args, args.rack)
    q = quandles.iota_quandle(rack)
    report = {"rack": echo, "iota": list(quandles.iota(rack)), "iota_table": [list(r) for r in q.table]}
    try:
        report["inclusion"] = quandles.subrack_inclusion_report(rack, args.cap).to_json()
    except lattice.CapExceeded as exc:
        report["inclusion"] = None
        print(f"rack-lab: inclusion report skipped: {exc}", file=sys.stderr)
    return report


def cmd_st_analyze(args):
    if args.rack is not None:
        spec = _load_json(args.rack)
        if spec.get("family") != "st_rack":
            raise UsageError("st-analyze needs an st_rack family spec")
        n, s, t = spec.get("n"), spec.get("s"), spec.get("t")
    else:
        n, s, t = args.n, args.s, args.t
    if None in (n, s, t):
        raise UsageError("st-analyze needs --n, --s and --t")
    report = {"params": {"family": "st_rack", "n": n, "s": s, "t": t}, **strack.analyze(n, s, t)}
    if not report["valid"]:
        report["violation"] = "parameter"
        raise ValidationFailure(report)
    if args.seed is not None:
        p = strack.STParams(n, s, t)
        rng = random.Random(args.seed)
        failures = 0
        for _ in range(args.trials):
            h = [rng.randint(-50, 50) for _ in range(rng.randint(1, 17))]
            g = [rng.randint(-50, 50) for _ in range(rng.randint(1, 17))]
            failures += not strack.laurent_identity_check(p, h, g)
        report["property_trials"] = {"seed": args.seed, "trials": args.trials, "failures": failures}
    return report


def cmd_color(args):
    q, echo = _coloring_quandle(args)
    d = _load_diagram(args.diagram)
    report = {"quandle": echo, **knots.coloring_report(d, q)}
    if args.oracle:
        brute = knots.brute_force_count(d, q)
        report["oracle_count"] = brute
        if brute != report["count"]:
            report["error"] = "backtracking count disagrees with brute force"
            raise ValidationFailure(report)
    return report


def cmd_distinguish(args):
    q, echo = _coloring_quandle(args)
    d1, d2 = _load_diagram(args.d1), _load_diagram(args.d2)
    return {"quandle": echo, **knots.distinguish(d1, d2, q).to_json()}


COMMANDS = {
    "validate": cmd_validate,
    "atoms": cmd_atoms,
    "orbits": cmd_orbits,
    "lattice": cmd_lattice,
    "quandle": cmd_quandle,
    "iota": cmd_iota,
    "st-analyze": cmd_st_analyze,
    "color": cmd_color,
    "distinguish": cmd_distinguish,
}


def _add_rack_flags(p: argparse.ArgumentParser, positional: bool = True):
    if positional:
        p.add_argument("rack", nargs="?", help="rack JSON file (table or family spec)")
    p.add_argument("--family", choices=sorted(core.FAMILIES), help="build the rack from a family")
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--perm", help="comma-separated permutation for --family permutation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rack-lab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--cap", type=int, default=lattice.DEFAULT_CAP, help="subrack lattice size cap")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for verb in ("validate", "atoms", "orbits", "lattice", "quandle", "iota"):
        _add_rack_flags(sub.add_parser(verb, parents=[common]))
    st = sub.add_parser("st-analyze", parents=[common])
    _add_rack_flags(st)
    st.add_argument("--seed", type=int, help="also run randomized polynomial-identity trials")
    st.add_argument("--trials", type=int, default=1000)
    for verb in ("color", "distinguish"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--quandle", help="quandle JSON file")
        p.add_argument("--corresponding", action="store_true",
                       help="color with the corresponding quandle of the given rack")
        _add_rack_flags(p, positional=False)
        if verb == "color":
            p.add_argument("--diagram", required=True, help="diagram JSON file or fixture:<name>")
        else:
            p.add_argument("--d1", required=True)
            p.add_argument("--d2", required=True)
    return parser


def _pretty(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if key in ("rack", "quandle") and isinstance(value, dict):
            value = ", ".join(f"{k}={v}" for k, v in value.items() if k != "table")
        elif isinstance(value, list) and value and isinstance(value[0], list):
            value = " ".join("{" + ",".join(map(str, x)) + "}" for x in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(report: dict, pretty: bool):
    print(_pretty(report) if pretty else json.dumps(report))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"rack-lab: {exc}", file=sys.stderr)
        return 2
    except ValidationFailure as exc:
        _emit(exc.report, args.pretty)
        print(f"rack-lab: {exc}", file=sys.stderr)
        return 1
    _emit(report, args.pretty)
    return 0


if __name__ == "__main__":
    sys.exit(main())
