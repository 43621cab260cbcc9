"""Command-line interface: ``lateq <command> [flags]``.

Exit status is 0 when the checked statement holds, 1 when it fails (a witness
is printed) and 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .crossing import CrossingProp, TwoVarFunction, check_crossing, crossing_fails_at
from .errors import LateqError, NotALattice, NotAPoset
from .functions import (LatticeFunction, Prop, as_prop, check_unary_property,
                        default_budget, implication_atlas, verify_implication, violates_at)
from .games import (NormalFormGame, analyze_equilibria, as_theorem, check_hypotheses,
                    solve_fixed_point, zhou_applicability)
from .instances import (BUILTIN_GAMES, DISCRETIZATION_NOTES, EXAMPLE_FUNCTIONS,
                        builtin_game, example_function, indicator_example,
                        modular_not_single, upper_not_modular)
from .interchange import (InputError, Workspace, _resolver, encode_id, named_lattice,
                          read_workspace, workspace_doc)
from .lattice import (FiniteLattice, Verdict, is_quasisublattice, is_sublattice,
                      validate_lattice)
from .optima import is_weakly_ascending
from .search import SearchSpec, run_search

BUILTIN_LATTICES = ("diamond", "n5", "m3", "chain<n>", "grid<k>", "boolean<n>")


class Failure(Exception):
    """Input problem reported with exit status 2."""


# -- output helpers -----------------------------------------------------------------

def _show(e) -> str:
    if isinstance(e, tuple):
        return "(" + ", ".join(_show(c) for c in e) + ")"
    return encode_id(e)


def _js(x):
    if isinstance(x, tuple) or isinstance(x, list):
        return [_js(c) for c in x]
    if isinstance(x, dict):
        return {str(k): _js(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return encode_id(x)


def _emit(args, text_lines, structured):
    if args.format == "text":
        out = "\n".join(text_lines)
    else:
        out = json.dumps(_js(structured), indent=2)
    sys.stdout.write(out + "\n")


def _write_json(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


# -- object resolution ----------------------------------------------------------------

def builtin_objects(grid_k=None) -> dict:
    objs = {f"diamond_{n}": example_function(n) for n in EXAMPLE_FUNCTIONS}
    objs["indicator"] = indicator_example()
    objs["modular_not_single"] = modular_not_single()
    objs["upper_not_modular"] = upper_not_modular()
    for name in BUILTIN_GAMES:
        objs[name] = builtin_game(name, grid_k)
    return objs


def _builtin_workspace(grid_k) -> Workspace:
    ws = Workspace()
    for name, obj in builtin_objects(grid_k).items():
        section = {LatticeFunction: "functions", TwoVarFunction: "twovar",
                   NormalFormGame: "games"}[type(obj)]
        getattr(ws, section)[name] = obj
    return ws


def _workspace(args) -> Workspace:
    if args.input:
        return read_workspace(args.input)
    return _builtin_workspace(args.grid)


def _find(ws: Workspace, name):
    if not name:
        raise Failure("--object is required")
    try:
        return ws.find(name)
    except KeyError:
        pass
    try:
        return "lattices", named_lattice(name)
    except KeyError:
        raise Failure(f"no object named {name!r}") from None


# -- check ------------------------------------------------------------------------------

def _check(kind, obj, prop) -> tuple[str, Verdict]:
    """``(canonical property id, verdict)`` for any checkable object."""
    if kind == "functions":
        p = as_prop(prop)
        return p.value, check_unary_property(obj, p)
    if kind == "twovar":
        try:
            p = CrossingProp(str(prop).upper())
        except ValueError:
            raise Failure(f"unknown crossing property {prop!r}; choose from "
                          f"{[c.value for c in CrossingProp]}") from None
        return p.value, check_crossing(obj, p)
    key = str(prop).upper()
    if kind == "correspondences" and key == "WEAKLY_ASCENDING":
        return key, is_weakly_ascending(obj)
    if kind == "subsets" and key in ("QUASISUBLATTICE", "SUBLATTICE"):
        test = is_quasisublattice if key == "QUASISUBLATTICE" else is_sublattice
        return key, test(obj.carrier, obj)
    if kind in ("lattices", "posets") and key == "LATTICE":
        if isinstance(obj, FiniteLattice):
            return key, Verdict(True)
        try:
            validate_lattice(obj)
        except NotALattice as exc:
            return key, Verdict(False, exc.pair, exc.missing)
        return key, Verdict(True)
    raise Failure(f"property {prop!r} does not apply to {kind}")


def _witness_reproduces(kind, obj, prop, witness) -> bool:
    if kind == "functions":
        return len(witness) == 2 and violates_at(obj, prop, *witness)
    if kind == "twovar":
        return len(witness) == 4 and crossing_fails_at(obj, prop, *witness)
    return _check(kind, obj, prop)[1].witness == tuple(witness)


def _carriers(kind, obj):
    """Posets in which each witness coordinate lives."""
    if kind == "functions":
        return [obj.domain] * 2
    if kind == "twovar":
        return [obj.xdomain] * 2 + [obj.tdomain] * 2
    if kind == "correspondences":
        return [obj.source] * 2 + [obj.target] * 2
    if kind == "subsets":
        return [obj.carrier] * 2
    return [obj] * 2


def certificate_doc(name, kind, obj, prop, verdict) -> dict:
    doc = workspace_doc(**{name: obj})
    doc["certificate"] = {"object": name, "kind": kind, "property": prop,
                          "holds": False,
                          "witness": [encode_id(w) for w in verdict.witness]}
    return doc


def cmd_check(args) -> int:
    ws = _workspace(args)
    cert = ws.certificate
    name = args.object or (cert or {}).get("object")
    prop = args.property or (cert or {}).get("property")
    if not prop:
        raise Failure("--property is required")
    kind, obj = _find(ws, name)
    pid, verdict = _check(kind, obj, prop)
    rechecked = None
    if cert and name == cert.get("object") and pid == str(cert.get("property")).upper():
        carriers = _carriers(kind, obj)
        raw = cert.get("witness") or []
        if len(raw) != len(carriers):
            raise Failure("certificate witness has the wrong arity")
        witness = tuple(_resolver(c).get(str(w), None) for c, w in zip(carriers, raw))
        if None in witness:
            raise Failure("certificate witness names unknown elements")
        rechecked = _witness_reproduces(kind, obj, pid, witness)
        if verdict.holds or not rechecked:
            raise Failure(f"certificate does not re-check: {pid} "
                          f"{'holds' if verdict.holds else 'fails elsewhere'} for {name}")
    lines = [f"{name} {pid}: {'holds' if verdict else 'fails'}"]
    if not verdict:
        lines.append(f"  witness: {_show(verdict.witness)}")
        if verdict.clause:
            lines.append(f"  clause: {verdict.clause}")
        for k, v in verdict.detail.items():
            lines.append(f"  {k}: {_show(v) if isinstance(v, tuple) else v}")
    if rechecked:
        lines.append("  certificate: witness re-checked")
    _emit(args, lines, {"object": name, "kind": kind, "property": pid,
                        "holds": verdict.holds, "witness": verdict.witness,
                        "clause": verdict.clause, "detail": verdict.detail,
                        "certificate_rechecked": rechecked})
    if not verdict and args.certificate:
        _write_json(args.certificate, certificate_doc(name, kind, obj, pid, verdict))
    return 0 if verdict else 1


# -- solve ------------------------------------------------------------------------------

def _game(ws, name) -> NormalFormGame:
    kind, obj = _find(ws, name)
    if kind != "games":
        raise Failure(f"{name!r} is not a game")
    return obj


def cmd_solve(args) -> int:
    ws = _workspace(args)
    game = _game(ws, args.object)
    solution, error = None, None
    try:
        solution = solve_fixed_point(game, args.direction, args.policy)
    except LateqError as exc:
        error = f"{type(exc).__name__}: {exc}"
    rep = analyze_equilibria(game, budget=args.budget)
    note = DISCRETIZATION_NOTES.get(args.object) if not args.input else None
    zhou = zhou_applicability(game, note)
    eq = rep.equilibria.sorted()
    lines = [f"game {args.object}: {len(game.players)} players, {len(game.joint)} profiles",
             f"fixed point ({args.direction}, {args.policy}): "
             + (_show(solution) if error is None else f"none ({error})"),
             f"equilibria ({len(eq)}): " + ", ".join(_show(e) for e in eq),
             f"largest: {_show(rep.largest) if rep.has_largest else 'none'}",
             f"least: {_show(rep.least) if rep.has_least else 'none'}",
             "minimal: " + ", ".join(_show(e) for e in rep.minimal_elements),
             "maximal: " + ", ".join(_show(e) for e in rep.maximal_elements),
             f"lattice in induced order: {rep.is_lattice_induced}",
             f"complete lattice in induced order: {rep.is_complete_lattice_induced}",
             f"best responses all sublattices: {zhou.all_sublattice}"]
    if rep.structure.witness:
        lines.append(f"  first pair without bound: {_show(rep.structure.witness)}")
    if note:
        lines.append(f"note: {note}")
    _emit(args, lines, {
        "game": args.object, "direction": args.direction, "policy": args.policy,
        "fixed_point": solution, "error": error, "equilibria": eq,
        "has_largest": rep.has_largest, "largest": rep.largest,
        "has_least": rep.has_least, "least": rep.least,
        "minimal": list(rep.minimal_elements), "maximal": list(rep.maximal_elements),
        "is_lattice_induced": rep.is_lattice_induced,
        "is_complete_lattice_induced": rep.is_complete_lattice_induced,
        "unbounded_pair": rep.structure.witness,
        "best_responses_sublattices": zhou.all_sublattice, "annotation": note})
    return 0 if error is None else 1


# -- hypotheses -------------------------------------------------------------------------

def _hypothesis_certificate(game, theorem, polarity, player, cond, verdict):
    """A checkable certificate for a failed condition 2 or 3."""
    from .games import _THEOREM_CONDITIONS
    prop, cross, _, _ = _THEOREM_CONDITIONS[theorem, polarity]
    i = game.player_index(player)
    if cond == 2:
        t = verdict.witness[0]
        obj = game.section(i, t)
        name = f"{game.name or 'game'}_u{player}_at_{encode_id(t)}"
        v = Verdict(False, verdict.witness[1:], verdict.clause)
        return certificate_doc(name, "functions", obj, prop.value, v)
    if cond == 3:
        name = f"{game.name or 'game'}_u{player}"
        return certificate_doc(name, "twovar", game.payoff_twovar(i), cross.value, verdict)
    return None


def cmd_hypotheses(args) -> int:
    ws = _workspace(args)
    game = _game(ws, args.object)
    if not args.theorem:
        raise Failure("--theorem is required")
    theorem = as_theorem(args.theorem)
    rep = check_hypotheses(game, theorem, args.polarity)
    lines = [f"{args.object} {theorem.value} ({args.polarity}): "
             f"{'hypotheses hold' if rep.overall else 'hypotheses fail'}"]
    rows = []
    for (player, cond), v in rep.conditions.items():
        line = f"  player {player} condition {cond}: {'holds' if v else 'fails'}"
        if not v:
            line += f"  witness {_show(v.witness)}"
            if v.clause:
                line += f"  clause {v.clause}"
        elif "note" in v.detail:
            line += f"  ({v.detail['note']})"
        lines.append(line)
        rows.append({"player": player, "condition": cond, "holds": v.holds,
                     "witness": v.witness, "clause": v.clause, "detail": v.detail})
    _emit(args, lines, {"game": args.object, "theorem": theorem.value,
                        "polarity": args.polarity, "overall": rep.overall,
                        "conditions": rows})
    if not rep.overall and args.certificate:
        for (player, cond), v in rep.failures():
            doc = _hypothesis_certificate(game, theorem, args.polarity, player, cond, v)
            if doc is not None:
                _write_json(args.certificate, doc)
                break
    return 0 if rep.overall else 1


# -- atlas ------------------------------------------------------------------------------

def cmd_atlas(args) -> int:
    ws = _workspace(args)
    kind, lat = _find(ws, args.object)
    if not isinstance(lat, FiniteLattice):
        raise Failure(f"{args.object!r} is not a lattice")
    props = [as_prop(p) for p in args.property.split(",")] if args.property else list(Prop)
    budget = args.budget if args.budget is not None else default_budget()
    if args.jobs > 1:
        table = {(p, q): verify_implication(p, q, lat, args.codomain, budget=budget,
                                            jobs=args.jobs)
                 for p in props for q in props if p != q}
    else:
        table = implication_atlas(lat, args.codomain, budget=budget, props=props)
    width = max(len(p.value) for p in props)
    lines = [f"implications on {args.object} into {{0..{args.codomain - 1}}} "
             "(row => column; '+' confirmed, '-' refuted)"]
    lines.append(" " * (width + 1) + " ".join(f"{k:>2}" for k in range(len(props))))
    for a, p in enumerate(props):
        cells = ["  ." if p == q else ("  +" if table[p, q].confirmed else "  -")
                 for q in props]
        lines.append(f"{p.value:<{width}} " + "".join(c[1:] if k == 0 else c
                                                       for k, c in enumerate(cells))
                     + f"   [{a}]")
    lines.append("counterexamples:")
    entries = []
    for p in props:
        for q in props:
            if p == q:
                continue
            r = table[p, q]
            ce = None
            if not r.confirmed:
                ce = {encode_id(x): v for x, v in zip(lat.elements, r.counterexample.values)}
                lines.append(f"  {p.value} =/=> {q.value}: "
                             + " ".join(f"{k}={v}" for k, v in ce.items()))
            entries.append({"premise": p.value, "conclusion": q.value,
                            "confirmed": r.confirmed, "counterexample": ce})
    _emit(args, lines, {"lattice": args.object, "codomain": args.codomain,
                        "implications": entries})
    return 0


# -- search ------------------------------------------------------------------------------

def cmd_search(args) -> int:
    if not args.input:
        raise Failure("--input with a 'search' section is required")
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise Failure(f"{args.input}: {exc}") from None
    sdoc = doc.get("search") if isinstance(doc, dict) else None
    if not isinstance(sdoc, dict):
        raise Failure(f"{args.input}: missing 'search' section")
    ws = read_workspace(args.input)
    try:
        lattices = [ws.lattice(n, "search.lattices") for n in sdoc.get("lattices", [])]
        spec = SearchSpec(kind=sdoc.get("kind", "function"), lattices=lattices,
                          satisfy=list(sdoc.get("satisfy", [])),
                          violate=list(sdoc.get("violate", [])),
                          codomain=int(sdoc.get("codomain", 3)),
                          payoff_levels=sdoc.get("payoff_levels"),
                          budget=args.budget if args.budget is not None else sdoc.get("budget"),
                          seed=args.seed if args.seed is not None else int(sdoc.get("seed", 0)))
    except (ValueError, TypeError) as exc:
        raise Failure(f"search: {exc}") from None
    if not spec.lattices:
        raise Failure("search: no lattices given")
    res = run_search(spec)
    summary = {"found": res.found is not None, "exhausted": res.exhausted,
               "mode": res.mode, "examined": res.examined}
    out = workspace_doc(found=res.found) if res.found is not None else {}
    out["search_result"] = summary
    if args.format == "text":
        status = ("found" if res.found is not None
                  else "none exists" if res.exhausted else "not found")
        sys.stdout.write(f"search ({res.mode}, {res.examined} examined): {status}\n")
        if res.found is not None:
            sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0 if res.found is not None else 1


# -- builtin ------------------------------------------------------------------------------

def cmd_builtin(args) -> int:
    objs = builtin_objects(args.grid)
    if not args.object:
        lines = ["lattices: " + ", ".join(BUILTIN_LATTICES)]
        for name, obj in objs.items():
            kind = type(obj).__name__
            note = DISCRETIZATION_NOTES.get(name)
            lines.append(f"{name}: {kind}" + (f"  [{note}]" if note else ""))
        _emit(args, lines, {"lattices": list(BUILTIN_LATTICES),
                            "objects": {n: type(o).__name__ for n, o in objs.items()},
                            "notes": DISCRETIZATION_NOTES})
        return 0
    if args.object in objs:
        doc = workspace_doc(**{args.object: objs[args.object]})
    else:
        try:
            doc = workspace_doc(**{args.object: named_lattice(args.object)})
        except KeyError:
            raise Failure(f"no built-in named {args.object!r}") from None
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


# -- entry point ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="workspace JSON file (default: built-ins)")
    common.add_argument("--object", help="name of the object to act on")
    common.add_argument("--format", choices=("text", "structured", "json"), default="text")
    common.add_argument("--grid", type=int, default=None,
                        help="grid subdivisions for built-in continuum games")
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (default: $LATEQ_BUDGET or 10^7)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--certificate", help="write a witness certificate here on failure")

    parser = argparse.ArgumentParser(prog="lateq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="check a property of one object")
    p.add_argument("--property")
    p.set_defaults(run=cmd_check)
    p = sub.add_parser("solve", parents=[common], help="solve a game by fixed point iteration")
    p.add_argument("--direction", choices=("least", "greatest"), default="least")
    p.add_argument("--policy", choices=("extremal", "backtracking"), default="extremal")
    p.set_defaults(run=cmd_solve)
    p = sub.add_parser("hypotheses", parents=[common], help="check a theorem's hypotheses")
    p.add_argument("--theorem")
    p.add_argument("--polarity", choices=("plain", "parenthesized"), default="plain")
    p.set_defaults(run=cmd_hypotheses)
    p = sub.add_parser("atlas", parents=[common], help="implication matrix on a lattice")
    p.add_argument("--property", help="comma-separated subset of property ids")
    p.add_argument("--codomain", type=int, default=3)
    p.set_defaults(run=cmd_atlas)
    p = sub.add_parser("search", parents=[common], help="search for a separating example")
    p.set_defaults(run=cmd_search)
    p = sub.add_parser("builtin", parents=[common], help="list or emit built-in instances")
    p.set_defaults(run=cmd_builtin)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.format == "json":
        args.format = "structured"
    try:
        return args.run(args)
    except (Failure, InputError, NotAPoset, NotALattice) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (LateqError, KeyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
