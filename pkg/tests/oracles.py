"""Brute-force reference implementations, written independently of lateq.

Everything here works from an order predicate ``leq(a, b)`` over plain element
lists; no tables, no bitsets, no shared helpers with the library.
"""

from __future__ import annotations

import itertools


def glb(elements, leq, x, y):
    lows = [z for z in elements if leq(z, x) and leq(z, y)]
    best = [z for z in lows if all(leq(w, z) for w in lows)]
    return best[0] if best else None


def lub(elements, leq, x, y):
    ups = [z for z in elements if leq(x, z) and leq(y, z)]
    best = [z for z in ups if all(leq(z, w) for w in ups)]
    return best[0] if best else None


def is_lattice_order(elements, leq):
    return all(glb(elements, leq, x, y) is not None and lub(elements, leq, x, y) is not None
               for x in elements for y in elements)


# -- unary properties, read literally off their definitions ------------------------

def _implies(a, b):
    return (not a) or b


def property_holds(name, f, elements, leq, codomain):
    """``f`` is a dict; ``codomain`` a list of ints ordered as usual."""
    for x in elements:
        for y in elements:
            m, j = glb(elements, leq, x, y), lub(elements, leq, x, y)
            fx, fy, fm, fj = f[x], f[y], f[m], f[j]
            if not _pair_ok(name, fx, fy, fm, fj, codomain):
                return False
    return True


def _pair_ok(name, fx, fy, fm, fj, C):
    if name == "QSM":
        return _implies(fx >= fm, fj >= fy) and _implies(fx > fm, fj > fy)
    if name == "QSBM":
        return _implies(fx <= fm, fj <= fy) and _implies(fx < fm, fj < fy)
    if name == "WQSM":
        return (_implies(fm < fx, min(fx, fy) < fj)
                and _implies(fj < fx, min(fx, fy) < fm))
    if name == "PSM":
        return (_implies(max(fx, fy) >= fm, fj >= min(fx, fy))
                and _implies(max(fx, fy) > fm, fj > min(fx, fy)))
    if name == "WPSM":
        return _implies(fj < min(fx, fy), fm > fx)
    if name == "SUBEXT":
        return max(fm, fj) <= max(fx, fy) or min(fm, fj) <= min(fx, fy)
    if name == "SUPEREXT":
        return max(fm, fj) >= max(fx, fy) or min(fm, fj) >= min(fx, fy)
    if name == "LAT_SUBEXT":
        return any(max(fm, fj) <= max(fx, t) or min(fm, fj) <= min(fx, t)
                   for t in C if t < fy)
    if name == "LAT_SUPEREXT":
        return any(max(fm, fj) >= max(fx, t) or min(fm, fj) >= min(fx, t)
                   for t in C if t > fy)
    if name == "MEET_SUBEXT":
        return fm <= fx or fj <= max(fx, fy)
    if name == "MEET_SUPEREXT":
        return fm >= fx or fj >= min(fx, fy)
    if name == "JOIN_SUBEXT":
        return fm <= max(fx, fy) or fj <= fx
    if name == "JOIN_SUPEREXT":
        return fm >= min(fx, fy) or fj >= fx
    raise KeyError(name)


ALL_PROPS = ("QSM", "QSBM", "WQSM", "PSM", "WPSM", "SUBEXT", "SUPEREXT", "LAT_SUBEXT",
             "LAT_SUPEREXT", "MEET_SUBEXT", "JOIN_SUBEXT", "MEET_SUPEREXT", "JOIN_SUPEREXT")


# -- crossing conditions --------------------------------------------------------------

def crossing_holds(name, f, X, xleq, T, tleq):
    """``f`` is a dict keyed ``(x, t)``."""
    for x, x2 in itertools.product(X, X):
        if x == x2 or not xleq(x, x2):
            continue
        for t, t2 in itertools.product(T, T):
            if t == t2 or not tleq(t, t2):
                continue
            d_lo = f[x2, t] - f[x, t]
            d_hi = f[x2, t2] - f[x, t2]
            if name == "MODULAR_CROSSING":
                if d_lo >= 0 and not d_hi >= 0:
                    return False
            elif name == "SINGLE_CROSSING":
                if (d_lo >= 0 and not d_hi >= 0) or (d_lo > 0 and not d_hi > 0):
                    return False
            elif name == "UPPER_CROSSING":
                if d_lo >= 0 and not any(xleq(x2, u) and f[u, t2] >= f[x, t2] for u in X):
                    return False
            else:
                raise KeyError(name)
    return True


# -- games ----------------------------------------------------------------------------

def brute_nash(strategy_sets, payoff):
    """Profiles where no player gains by a unilateral deviation.

    ``payoff(i, profile)`` returns player ``i``'s payoff.
    """
    out = []
    for prof in itertools.product(*strategy_sets):
        stable = True
        for i, S in enumerate(strategy_sets):
            here = payoff(i, prof)
            for s in S:
                dev = prof[:i] + (s,) + prof[i + 1:]
                if payoff(i, dev) > here:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            out.append(prof)
    return out


def product_leq(leqs):
    return lambda a, b: all(l(x, y) for l, x, y in zip(leqs, a, b))


def subset_structure(members, leq):
    """Largest, least, and lattice-ness of ``members`` in the inherited order."""
    members = list(members)
    largest = [m for m in members if all(leq(z, m) for z in members)]
    least = [m for m in members if all(leq(m, z) for z in members)]
    lattice = is_lattice_order(members, leq)
    return {
        "largest": largest[0] if largest else None,
        "least": least[0] if least else None,
        "lattice": lattice,
        "complete": bool(members) and lattice,
        "minimal": sorted(m for m in members if not any(z != m and leq(z, m) for z in members)),
        "maximal": sorted(m for m in members if not any(z != m and leq(m, z) for z in members)),
    }


def is_increasing_map(source, sleq, tleq, mapping):
    return all(tleq(mapping[a], mapping[b]) for a in source for b in source if sleq(a, b))


def weakly_ascending(source, sleq, target, tleq, F):
    for a in source:
        for b in source:
            if a == b or not sleq(a, b):
                continue
            for y in F[a]:
                for y2 in F[b]:
                    if (lub(target, tleq, y, y2) not in F[b]
                            and glb(target, tleq, y, y2) not in F[a]):
                        return False
    return True
