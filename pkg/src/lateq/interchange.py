"""JSON workspace documents.

A workspace is one JSON object with optional sections, each a name -> object
map::

    {"lattices":        {"L": {"elements": [...], "relation": [[a, b], ...]}},
     "posets":          {"P": {"elements": [...], "covers": [[a, b], ...]}},
     "subsets":         {"S": {"lattice": "L", "members": [...]}},
     "functions":       {"f": {"lattice": "L", "codomain": 4, "values": {"a": 2}}},
     "twovar":          {"t": {"xlattice": "X", "tposet": "T", "codomain": 2,
                               "values": {"x|t": 0}}},
     "correspondences": {"F": {"source": "P", "target": "L", "values": {"p": ["a"]}}},
     "games":           {"G": {"players": ["1", "2"], "strategies": {"1": "L"},
                               "payoffs": {"1": {"s1|s2": 0}}}}}

Lattices referenced by name but not defined resolve to the built-ins
(``diamond``, ``n5``, ``m3``, ``chain<n>``, ``grid<k>``, ``boolean<n>``).
Element ids are written as strings; tuple ids join their parts with commas.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .crossing import TwoVarFunction
from .errors import LateqError
from .functions import LatticeFunction
from .games import NormalFormGame
from .lattice import (FiniteLattice, FinitePoset, Subset, boolean_lattice, chain,
                      diamond, grid, m3, pentagon, validate_lattice)
from .optima import Correspondence


class InputError(LateqError):
    """Malformed or inconsistent workspace document; ``where`` locates it."""

    def __init__(self, where, message):
        self.where = where
        super().__init__(f"{where}: {message}")


def encode_id(e) -> str:
    if isinstance(e, tuple):
        return ",".join(encode_id(c) for c in e)
    return str(e)


def _resolver(poset: FinitePoset) -> dict:
    table = {}
    for e in poset.elements:
        key = encode_id(e)
        if key in table:
            raise ValueError(f"element ids {table[key]!r} and {e!r} encode identically")
        table[key] = e
    return table


def named_lattice(name: str) -> FiniteLattice:
    fixed = {"diamond": diamond, "n5": pentagon, "pentagon": pentagon, "m3": m3}
    if name in fixed:
        return fixed[name]()
    m = re.fullmatch(r"(chain|grid|boolean)(\d+)", name)
    if not m:
        raise KeyError(name)
    kind, n = m.group(1), int(m.group(2))
    return {"chain": chain, "grid": grid, "boolean": boolean_lattice}[kind](n)


def covers(poset: FinitePoset) -> list[tuple]:
    el = poset.elements
    strict = set(poset.strict_pairs)
    out = []
    for i, j in poset.strict_pairs:
        if not any((i, k) in strict and (k, j) in strict for k in range(len(el))):
            out.append((el[i], el[j]))
    return out


@dataclass
class Workspace:
    lattices: dict = field(default_factory=dict)
    posets: dict = field(default_factory=dict)
    subsets: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    twovar: dict = field(default_factory=dict)
    correspondences: dict = field(default_factory=dict)
    games: dict = field(default_factory=dict)
    certificate: dict | None = None

    KINDS = ("subsets", "functions", "twovar", "correspondences", "games",
             "lattices", "posets")

    def find(self, name: str):
        """``(kind, object)`` for a name, searching every section."""
        hits = [(k, getattr(self, k)[name]) for k in self.KINDS if name in getattr(self, k)]
        if not hits:
            raise KeyError(name)
        if len(hits) > 1:
            raise InputError(name, f"name is ambiguous across {[k for k, _ in hits]}")
        return hits[0]

    def lattice(self, name: str, where: str) -> FiniteLattice:
        if name in self.lattices:
            return self.lattices[name]
        try:
            lat = named_lattice(name)
        except KeyError:
            raise InputError(where, f"unknown lattice {name!r}") from None
        self.lattices[name] = lat
        return lat

    def poset(self, name: str, where: str) -> FinitePoset:
        if name in self.posets:
            return self.posets[name]
        return self.lattice(name, where)


# -- loading ----------------------------------------------------------------------

def _poset_from_doc(doc, where):
    if "elements" not in doc:
        raise InputError(where, "missing 'elements'")
    elements = doc["elements"]
    if "relation" in doc:
        return FinitePoset.from_relation(elements, [tuple(p) for p in doc["relation"]])
    if "covers" in doc:
        return FinitePoset.from_covers(elements, [tuple(p) for p in doc["covers"]])
    raise InputError(where, "needs 'relation' or 'covers'")


def _decode(res, key, where):
    try:
        return res[str(key)]
    except KeyError:
        raise InputError(where, f"unknown element {key!r}") from None


def load_workspace(doc: dict) -> Workspace:
    if not isinstance(doc, dict):
        raise InputError("document", "top level must be an object")
    ws = Workspace()
    for name, d in doc.get("posets", {}).items():
        where = f"posets.{name}"
        try:
            ws.posets[name] = _poset_from_doc(d, where)
        except (LateqError, ValueError, TypeError) as exc:
            raise InputError(where, str(exc)) from None
    for name, d in doc.get("lattices", {}).items():
        where = f"lattices.{name}"
        try:
            ws.lattices[name] = validate_lattice(_poset_from_doc(d, where))
        except InputError:
            raise
        except (LateqError, ValueError, TypeError) as exc:
            raise InputError(where, str(exc)) from None
    for name, d in doc.get("subsets", {}).items():
        where = f"subsets.{name}"
        lat = ws.lattice(d.get("lattice", ""), where)
        res = _resolver(lat)
        ws.subsets[name] = Subset(lat, frozenset(_decode(res, m, where)
                                                 for m in d.get("members", [])))
    for name, d in doc.get("functions", {}).items():
        where = f"functions.{name}"
        lat = ws.lattice(d.get("lattice", ""), where)
        res = _resolver(lat)
        try:
            vals = {_decode(res, k, where): int(v) for k, v in d["values"].items()}
            ws.functions[name] = LatticeFunction(lat, d["codomain"], vals)
        except KeyError as exc:
            raise InputError(where, f"missing {exc}") from None
        except (ValueError, TypeError) as exc:
            raise InputError(where, str(exc)) from None
    for name, d in doc.get("twovar", {}).items():
        where = f"twovar.{name}"
        X = ws.lattice(d.get("xlattice", ""), where)
        T = ws.poset(d.get("tposet", ""), where)
        rx, rt = _resolver(X), _resolver(T)
        vals = {}
        for key, v in d.get("values", {}).items():
            xs, sep, ts = key.partition("|")
            if not sep:
                raise InputError(where, f"value key {key!r} is not 'x|t'")
            vals[_decode(rx, xs, where), _decode(rt, ts, where)] = int(v)
        try:
            ws.twovar[name] = TwoVarFunction(X, T, d["codomain"], vals)
        except (KeyError, ValueError) as exc:
            raise InputError(where, str(exc)) from None
    for name, d in doc.get("correspondences", {}).items():
        where = f"correspondences.{name}"
        S = ws.poset(d.get("source", ""), where)
        L = ws.lattice(d.get("target", ""), where)
        rs, rl = _resolver(S), _resolver(L)
        vals = {_decode(rs, k, where): [_decode(rl, y, where) for y in ys]
                for k, ys in d.get("values", {}).items()}
        try:
            ws.correspondences[name] = Correspondence(S, L, vals)
        except ValueError as exc:
            raise InputError(where, str(exc)) from None
    for name, d in doc.get("games", {}).items():
        ws.games[name] = _load_game(ws, name, d)
    ws.certificate = doc.get("certificate")
    return ws


def _load_game(ws, name, d):
    where = f"games.{name}"
    players = [str(p) for p in d.get("players", [])]
    if not players:
        raise InputError(where, "no players")
    try:
        strategies = [ws.lattice(d["strategies"][p], f"{where}.strategies.{p}")
                      for p in players]
    except KeyError as exc:
        raise InputError(where, f"no strategy lattice for player {exc}") from None
    resolvers = [_resolver(s) for s in strategies]
    payoffs = []
    for p in players:
        table = {}
        for key, v in d.get("payoffs", {}).get(p, {}).items():
            parts = key.split("|")
            if len(parts) != len(players):
                raise InputError(f"{where}.payoffs.{p}", f"profile key {key!r} has "
                                 f"{len(parts)} parts for {len(players)} players")
            table[tuple(_decode(r, s, f"{where}.payoffs.{p}")
                        for r, s in zip(resolvers, parts))] = int(v)
        payoffs.append(table)
    codomains = None
    if "codomains" in d:
        codomains = [d["codomains"][p] for p in players]
    try:
        return NormalFormGame(players, strategies, payoffs, codomains, name=name)
    except ValueError as exc:
        raise InputError(where, str(exc)) from None


def read_workspace(path) -> Workspace:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    except OSError as exc:
        raise InputError(str(path), exc.strerror or str(exc)) from None
    return load_workspace(doc)


# -- dumping ----------------------------------------------------------------------

def dump_poset(p: FinitePoset) -> dict:
    return {"elements": [encode_id(e) for e in p.elements],
            "covers": [[encode_id(a), encode_id(b)] for a, b in covers(p)]}


def dump_function(f: LatticeFunction, lattice_name: str) -> dict:
    return {"lattice": lattice_name, "codomain": list(f.codomain),
            "values": {encode_id(x): v for x, v in zip(f.domain.elements, f.values)}}


def dump_twovar(f: TwoVarFunction, xname: str, tname: str) -> dict:
    return {"xlattice": xname, "tposet": tname, "codomain": list(f.codomain),
            "values": {f"{encode_id(x)}|{encode_id(t)}": f.table[a][b]
                       for a, x in enumerate(f.xdomain.elements)
                       for b, t in enumerate(f.tdomain.elements)}}


def dump_correspondence(F: Correspondence, sname: str, tname: str) -> dict:
    idx = F.target.index
    return {"source": sname, "target": tname,
            "values": {encode_id(s): [encode_id(y) for y in sorted(F(s), key=idx.__getitem__)]
                       for s in F.source.elements}}


def dump_game(g: NormalFormGame, lattice_names: list[str]) -> dict:
    return {
        "players": list(g.players),
        "strategies": dict(zip(g.players, lattice_names)),
        "codomains": {p: list(c) for p, c in zip(g.players, g.codomains)},
        "payoffs": {p: {"|".join(encode_id(e) for e in s): tab[k]
                        for k, s in enumerate(g.joint.elements)}
                    for p, tab in zip(g.players, g.payoff_tables)},
    }


def workspace_doc(**objects) -> dict:
    """Serialise named objects together with every lattice they depend on."""
    doc: dict = {}
    lat_names: dict[int, str] = {}

    def lname(lat, hint):
        key = id(lat)
        if key not in lat_names:
            name = hint
            while name in doc.get("lattices", {}):
                name += "_"
            lat_names[key] = name
            section = "lattices" if isinstance(lat, FiniteLattice) else "posets"
            doc.setdefault(section, {})[name] = dump_poset(lat)
        return lat_names[key]

    for name, obj in objects.items():
        if isinstance(obj, LatticeFunction):
            doc.setdefault("functions", {})[name] = dump_function(
                obj, lname(obj.domain, f"{name}_domain"))
        elif isinstance(obj, TwoVarFunction):
            doc.setdefault("twovar", {})[name] = dump_twovar(
                obj, lname(obj.xdomain, f"{name}_x"), lname(obj.tdomain, f"{name}_t"))
        elif isinstance(obj, Correspondence):
            doc.setdefault("correspondences", {})[name] = dump_correspondence(
                obj, lname(obj.source, f"{name}_source"), lname(obj.target, f"{name}_target"))
        elif isinstance(obj, NormalFormGame):
            names = [lname(s, f"{name}_S{p}") for p, s in zip(obj.players, obj.strategies)]
            doc.setdefault("games", {})[name] = dump_game(obj, names)
        elif isinstance(obj, Subset):
            doc.setdefault("subsets", {})[name] = {
                "lattice": lname(obj.carrier, f"{name}_lattice"),
                "members": [encode_id(m) for m in obj.sorted()]}
        elif isinstance(obj, FinitePoset):
            lname(obj, name)
        else:
            raise TypeError(f"cannot serialise {type(obj).__name__}")
    return doc


def jsonable(x):
    """Element ids and report values rendered for JSON output."""
    if isinstance(x, tuple):
        return [jsonable(c) for c in x]
    if isinstance(x, (list, frozenset, set)):
        return [jsonable(c) for c in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x
