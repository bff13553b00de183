"""JSON encoding of maps, spaces, cocycles, cochains, certificates and instances.

Rationals travel as strings (``"3/8"``) so that no consumer loses
precision.  Every ``*_from_json`` reports problems as
:class:`MalformedInput` with a JSON-path location.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .circle_maps import CircleMap, Lift, MonotoneDegreeOneMap, PLLift
from .cochains import Cochain, Ring
from .cocycles import (EquivariantFamily, LiftedCocycle, MeasurableCocycle,
                       SemicohomologyWitness, build_cocycle, from_representation,
                       from_table, trivial_cocycle)
from .errors import (EulerLabError, InconsistentCocycle, MalformedInput,
                     NotAHomomorphism)
from .euler_analysis import (FiniteSetFamily, MeasureFamily, Obstruction,
                             PrimitiveCertificate)
from .group_space import FiniteGroup, GammaSpace


def q(x) -> str:
    return str(Fraction(x))


def _rat(value, path) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise MalformedInput(path, f"expected an integer or a 'p/q' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(path, f"not a rational: {value!r}") from None


def _int(value, path) -> int:
    x = _rat(value, path)
    if x.denominator != 1:
        raise MalformedInput(path, f"expected an integer, got {value!r}")
    return int(x)


def _get(obj, key, path, kind=None, default=...):
    if not isinstance(obj, dict):
        raise MalformedInput(path, "expected an object")
    if key not in obj:
        if default is not ...:
            return default
        raise MalformedInput(f"{path}.{key}", "missing field")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise MalformedInput(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


# ---------------------------------------------------------------------------
# maps


def lift_to_json(F: PLLift) -> dict:
    bps = [[q(x), q(a)] if a == b else [q(x), q(a), q(b)] for x, a, b in F.breakpoints]
    return {"breakpoints": bps, "strict": F.strict}


def lift_from_json(doc, path="$") -> PLLift:
    bps = _get(doc, "breakpoints", path, list)
    out = []
    for i, bp in enumerate(bps):
        p = f"{path}.breakpoints[{i}]"
        if not isinstance(bp, list) or len(bp) not in (2, 3):
            raise MalformedInput(p, "breakpoint must be [x, y] or [x, yL, yR]")
        out.append(tuple(_rat(v, f"{p}[{j}]") for j, v in enumerate(bp)))
    strict = _get(doc, "strict", path, bool, True)
    try:
        return PLLift(out, strict=strict)
    except (ValueError, EulerLabError) as exc:
        raise MalformedInput(path, str(exc)) from None


def map_to_json(f: CircleMap) -> dict:
    if f.is_rotation():
        return {"rotation": q(f.rotation_angle())}
    return {"breakpoints": lift_to_json(f.canonical_lift)["breakpoints"]}


def map_from_json(doc, path="$") -> CircleMap:
    if isinstance(doc, dict) and "rotation" in doc:
        return CircleMap.rotation(_rat(doc["rotation"], f"{path}.rotation"))
    F = lift_from_json(doc, path)
    if not F.strict:
        raise MalformedInput(path, "a circle homeomorphism must be strict")
    return CircleMap.from_lift(F)


def monotone_to_json(m: MonotoneDegreeOneMap) -> dict:
    return {"breakpoints": lift_to_json(m.lift)["breakpoints"]}


def monotone_from_json(doc, path="$") -> MonotoneDegreeOneMap:
    F = lift_from_json(dict(doc, strict=False) if isinstance(doc, dict) else doc, path)
    try:
        return MonotoneDegreeOneMap.from_lift(F)
    except ValueError as exc:
        raise MalformedInput(path, str(exc)) from None


# ---------------------------------------------------------------------------
# groups and spaces


def group_to_json(G: FiniteGroup) -> dict:
    return {"kind": "table", "table": [list(r) for r in G.table],
            "generators": [G.names[g] for g in G.generators],
            "generator_names": list(G.generator_names),
            "names": list(G.names), "identity": G.names[G.identity]}


def _kind(doc, path):
    if isinstance(doc, dict) and "kind" in doc:
        return _get(doc, "kind", path, str)
    return _get(doc, "type", path, str)


def group_from_json(doc, path="$") -> FiniteGroup:
    """``kind`` (or ``type``) is cyclic, symmetric, dihedral, permutation or table."""
    kind = _kind(doc, path)
    try:
        if kind == "cyclic":
            key = "n" if "n" in doc else "order"
            return FiniteGroup.cyclic(_int(_get(doc, key, path), f"{path}.{key}"),
                                      _get(doc, "generator", path, str, "g"))
        if kind == "symmetric":
            return FiniteGroup.symmetric(_int(_get(doc, "degree", path), f"{path}.degree"))
        if kind == "dihedral":
            return FiniteGroup.dihedral(_int(_get(doc, "n", path), f"{path}.n"))
        if kind == "permutation":
            deg = _int(_get(doc, "degree", path), f"{path}.degree")
            gens = _get(doc, "generators", path)
            if isinstance(gens, list):
                names = _get(doc, "names", path, list, None)
                return FiniteGroup.from_permutations(deg, gens, names)
            if not isinstance(gens, dict):
                raise MalformedInput(f"{path}.generators", "expected a list or an object")
            return FiniteGroup.from_permutations(deg, list(gens.values()), list(gens))
        if kind == "table":
            names = _get(doc, "names", path, list)
            index = {n: i for i, n in enumerate(names)}
            gens = []
            for i, n in enumerate(_get(doc, "generators", path, list)):
                if n not in index:
                    raise MalformedInput(f"{path}.generators[{i}]", f"unknown element {n!r}")
                gens.append(index[n])
            ident = _get(doc, "identity", path, str, names[0] if names else "e")
            if ident not in index:
                raise MalformedInput(f"{path}.identity", f"unknown element {ident!r}")
            return FiniteGroup(_get(doc, "table", path, list), gens, index[ident], names,
                               _get(doc, "generator_names", path, list, None))
    except MalformedInput:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise MalformedInput(path, str(exc)) from None
    raise MalformedInput(f"{path}.kind", f"unknown group kind {kind!r}")


def space_to_json(S: GammaSpace) -> dict:
    G = S.group
    return {"points": list(S.points),
            "weights": [q(w) for w in S.weights],
            "action": {G.generator_names[i]: list(S.action[g])
                       for i, g in enumerate(G.generators)}}


def space_from_json(doc, group: FiniteGroup, path="$") -> GammaSpace:
    if doc is None:
        return GammaSpace.point(group)
    points = _get(doc, "points", path, list)
    action = _get(doc, "action", path, dict, {})
    gen_action = {}
    for name, perm in action.items():
        p = f"{path}.action.{name}"
        if name not in group.generator_names:
            raise MalformedInput(p, f"unknown generator {name!r}")
        if not isinstance(perm, list):
            raise MalformedInput(p, "expected a list of point indices or names")
        gen_action[name] = [points.index(x) if isinstance(x, str) and x in points
                            else _int(x, f"{p}[{i}]") for i, x in enumerate(perm)]
    weights = _get(doc, "weights", path, list, None)
    if weights is not None:
        weights = [_rat(w, f"{path}.weights[{i}]") for i, w in enumerate(weights)]
    try:
        return GammaSpace.from_generators(group, points, gen_action, weights)
    except (NotAHomomorphism, ValueError) as exc:
        raise MalformedInput(path, str(exc)) from None


# ---------------------------------------------------------------------------
# cocycles


def cocycle_to_json(sigma: MeasurableCocycle) -> dict:
    S = sigma.space
    G = S.group
    return {"type": "table", "entries": [
        {"element": G.names[g], "point": S.points[w], "map": map_to_json(sigma(g, w))}
        for g in G for w in range(S.size)]}


def _element(G, name, path):
    if not isinstance(name, str) or name not in G.names:
        raise MalformedInput(path, f"unknown group element {name!r}")
    return G.names.index(name)


def _point(S, name, path):
    if not isinstance(name, str) or name not in S.points:
        raise MalformedInput(path, f"unknown point {name!r}")
    return S.points.index(name)


def _cocycle_kind(doc, path):
    if isinstance(doc, dict) and "type" not in doc and "kind" not in doc:
        if "images" in doc:
            return "representation"
        entries = doc.get("entries")
        if isinstance(entries, list) and entries and isinstance(entries[0], dict):
            return "table" if "element" in entries[0] else "generators"
    return _kind(doc, path)


def cocycle_from_json(doc, space: GammaSpace, path="$") -> MeasurableCocycle:
    """Parse a cocycle description.  A relation failure raises InconsistentCocycle."""
    G = space.group
    kind = _cocycle_kind(doc, path)
    if kind == "trivial":
        return trivial_cocycle(space)
    if kind == "representation":
        images = _get(doc, "images", path, dict)
        out = {}
        for name, m in images.items():
            if name not in G.generator_names:
                raise MalformedInput(f"{path}.images.{name}", f"unknown generator {name!r}")
            out[name] = map_from_json(m, f"{path}.images.{name}")
        return from_representation(space, out)
    entries = _get(doc, "entries", path, list)
    if kind == "generators":
        table = {}
        for i, e in enumerate(entries):
            p = f"{path}.entries[{i}]"
            key = "gen" if isinstance(e, dict) and "gen" in e else "generator"
            gen = _get(e, key, p, str)
            if gen not in G.generator_names:
                raise MalformedInput(f"{p}.{key}", f"unknown generator {gen!r}")
            w = _point(space, _get(e, "point", p), f"{p}.point")
            table[G.generator_names.index(gen), w] = map_from_json(_get(e, "map", p), f"{p}.map")
        return build_cocycle(space, table)
    if kind == "table":
        ident = CircleMap.identity()
        rows = [[ident] * space.size for _ in G]
        for i, e in enumerate(entries):
            p = f"{path}.entries[{i}]"
            g = _element(G, _get(e, "element", p), f"{p}.element")
            w = _point(space, _get(e, "point", p), f"{p}.point")
            rows[g][w] = map_from_json(_get(e, "map", p), f"{p}.map")
        return from_table(space, rows)
    raise MalformedInput(f"{path}.type", f"unknown cocycle type {kind!r}")


def lifted_to_json(lifted: LiftedCocycle) -> dict:
    S = lifted.space
    G = S.group
    return {"entries": [
        {"element": G.names[g], "point": S.points[w],
         "map": map_to_json(lifted(g, w).base), "offset": lifted(g, w).offset}
        for g in G for w in range(S.size)]}


def lifted_from_json(doc, space: GammaSpace, path="$") -> LiftedCocycle:
    G = space.group
    rows = [[Lift.identity()] * space.size for _ in G]
    for i, e in enumerate(_get(doc, "entries", path, list)):
        p = f"{path}.entries[{i}]"
        g = _element(G, _get(e, "element", p), f"{p}.element")
        w = _point(space, _get(e, "point", p), f"{p}.point")
        rows[g][w] = Lift(map_from_json(_get(e, "map", p), f"{p}.map"),
                          _int(_get(e, "offset", p, default=0), f"{p}.offset"))
    return LiftedCocycle(space, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# cochains and certificates


def cochain_to_json(c: Cochain) -> dict:
    G = c.space.group
    return {"degree": c.degree, "ring": c.ring.value, "entries": [
        {"gamma": [G.names[g] for g in key],
         "values": {c.space.points[w]: q(x) for w, x in enumerate(vals)}}
        for key, vals in sorted(c.values.items())]}


def cochain_from_json(doc, space: GammaSpace, path="$") -> Cochain:
    G = space.group
    degree = _int(_get(doc, "degree", path), f"{path}.degree")
    try:
        ring = Ring.parse(_get(doc, "ring", path, str))
    except ValueError as exc:
        raise MalformedInput(f"{path}.ring", str(exc)) from None
    base = Cochain.zero(space, degree, ring)
    vals = dict(base.values)
    for i, e in enumerate(_get(doc, "entries", path, list)):
        p = f"{path}.entries[{i}]"
        gamma = _get(e, "gamma", p, list)
        if len(gamma) != degree:
            raise MalformedInput(f"{p}.gamma", f"expected {degree} elements")
        key = tuple(_element(G, n, f"{p}.gamma[{j}]") for j, n in enumerate(gamma))
        values = _get(e, "values", p)
        if isinstance(values, dict):
            xs = list(vals[key])
            for name, v in values.items():
                xs[_point(space, name, f"{p}.values.{name}")] = _rat(v, f"{p}.values.{name}")
        elif isinstance(values, list):
            if len(values) != space.size:
                raise MalformedInput(f"{p}.values", f"expected {space.size} values")
            xs = [_rat(v, f"{p}.values[{j}]") for j, v in enumerate(values)]
        else:
            raise MalformedInput(f"{p}.values", "expected an object keyed by point or a list")
        if ring is Ring.INT and any(x.denominator != 1 for x in xs):
            raise MalformedInput(f"{p}.values", "integer ring needs integer values")
        vals[key] = tuple(ring.coerce(x) for x in xs)
    return Cochain(space, degree, ring, vals)


def primitive_to_json(cert: PrimitiveCertificate) -> dict:
    return {"ring": cert.ring.value, "u": cochain_to_json(cert.u)}


def primitive_from_json(doc, space, path="$") -> PrimitiveCertificate:
    u = cochain_from_json(_get(doc, "u", path, dict), space, f"{path}.u")
    return PrimitiveCertificate(u.ring, u)


def obstruction_to_json(obs: Obstruction, space: Optional[GammaSpace] = None) -> dict:
    if space is not None:
        G = space.group
        eqs = [{"gamma": G.names[g], "lambda": G.names[lam], "point": space.points[w]}
               for g, lam, w in obs.equations]
    else:
        eqs = [{"gamma": g, "lambda": lam, "point": w} for g, lam, w in obs.equations]
    return {"ring": obs.ring.value, "functional": list(obs.functional),
            "modulus": obs.modulus, "residue": q(obs.residue), "equations": eqs}


def obstruction_from_json(doc, space: Optional[GammaSpace] = None, path="$") -> Obstruction:
    ring = Ring.parse(_get(doc, "ring", path, str))
    functional = tuple(_int(v, f"{path}.functional[{i}]")
                       for i, v in enumerate(_get(doc, "functional", path, list)))
    eqs = []
    for i, e in enumerate(_get(doc, "equations", path, list)):
        p = f"{path}.equations[{i}]"
        if space is not None:
            G = space.group
            eqs.append((_element(G, _get(e, "gamma", p), f"{p}.gamma"),
                        _element(G, _get(e, "lambda", p), f"{p}.lambda"),
                        _point(space, _get(e, "point", p), f"{p}.point")))
        else:
            eqs.append((e["gamma"], e["lambda"], e["point"]))
    residue = _rat(_get(doc, "residue", path), f"{path}.residue")
    if residue.denominator == 1:
        residue = int(residue)
    return Obstruction(ring, functional, _int(_get(doc, "modulus", path), f"{path}.modulus"),
                       residue, tuple(eqs))


# ---------------------------------------------------------------------------
# families and witnesses


def family_to_json(r: EquivariantFamily) -> dict:
    return {"real": r.real, "values": [q(x) for x in r.values]}


def family_from_json(doc, space: GammaSpace, path="$") -> EquivariantFamily:
    if isinstance(doc, list):
        doc = {"values": doc}
    values = _get(doc, "values", path)
    if isinstance(values, dict):
        vals = [Fraction(0)] * space.size
        for name, v in values.items():
            vals[_point(space, name, f"{path}.values.{name}")] = _rat(v, f"{path}.values.{name}")
    elif isinstance(values, list):
        vals = [_rat(v, f"{path}.values[{i}]") for i, v in enumerate(values)]
    else:
        raise MalformedInput(f"{path}.values", "expected a list or an object")
    if len(vals) != space.size:
        raise MalformedInput(f"{path}.values", f"expected {space.size} values")
    return EquivariantFamily(tuple(vals), real=bool(_get(doc, "real", path, bool, False)))


def witness_to_json(w: SemicohomologyWitness) -> dict:
    return {"side": w.side, "slices": [monotone_to_json(m) for m in w.maps]}


def witness_from_json(doc, space: GammaSpace, path="$") -> SemicohomologyWitness:
    slices = _get(doc, "slices", path, list)
    if len(slices) != space.size:
        raise MalformedInput(f"{path}.slices", f"expected {space.size} slices")
    side = _get(doc, "side", path, str, "left")
    if side not in ("left", "right"):
        raise MalformedInput(f"{path}.side", "side must be 'left' or 'right'")
    return SemicohomologyWitness(
        tuple(monotone_from_json(s, f"{path}.slices[{i}]") for i, s in enumerate(slices)), side)


def measure_to_json(mu: MeasureFamily) -> dict:
    return {"cdfs": [{"breakpoints": lift_to_json(F)["breakpoints"]} for F in mu.cdfs]}


def measure_from_json(doc, space: GammaSpace, path="$") -> MeasureFamily:
    cdfs = _get(doc, "cdfs", path, list)
    if len(cdfs) != space.size:
        raise MalformedInput(f"{path}.cdfs", f"expected {space.size} slices")
    out = []
    for i, d in enumerate(cdfs):
        p = f"{path}.cdfs[{i}]"
        if isinstance(d, dict) and d.get("uniform"):
            out.append(PLLift.identity())
            continue
        out.append(lift_from_json(dict(d, strict=False) if isinstance(d, dict) else d, p))
    try:
        return MeasureFamily(tuple(out))
    except ValueError as exc:
        raise MalformedInput(path, str(exc)) from None


def set_family_to_json(fam: FiniteSetFamily) -> dict:
    return {"k": fam.k, "sets": [[q(x) for x in s] for s in fam.sets]}


def set_family_from_json(doc, path="$") -> FiniteSetFamily:
    sets = tuple(tuple(_rat(x, f"{path}.sets[{i}][{j}]") for j, x in enumerate(s))
                 for i, s in enumerate(_get(doc, "sets", path, list)))
    return FiniteSetFamily(sets, _int(_get(doc, "k", path), f"{path}.k"))


# ---------------------------------------------------------------------------
# instances


TASKS = ("check-cocycle", "euler-pullback", "solve-primitive", "lift", "equivariant-family",
         "witness", "decide-equality", "rotation-reduce", "elementary-reduce")


@dataclass(eq=False)
class Instance:
    group: FiniteGroup
    space: GammaSpace
    cocycles: list = field(default_factory=list)
    family: Optional[EquivariantFamily] = None
    witness: Optional[SemicohomologyWitness] = None
    measure: Optional[MeasureFamily] = None
    primitive: Optional[PrimitiveCertificate] = None
    task: Optional[str] = None
    ring: Ring = Ring.INT
    # malformed cocycle tables are deferred so check-cocycle can report them
    cocycle_errors: list = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return instance_to_json(self) == instance_to_json(other)


def parse_instance(doc) -> Instance:
    """Validate a decoded JSON document.  Raises :class:`MalformedInput`."""
    if not isinstance(doc, dict):
        raise MalformedInput("$", "instance must be a JSON object")
    group = group_from_json(_get(doc, "group", "$", dict), "$.group")
    space = space_from_json(_get(doc, "space", "$", dict, None), group, "$.space")
    cocycle_docs = []
    if "cocycles" in doc:
        lst = _get(doc, "cocycles", "$", list)
        cocycle_docs = [(f"$.cocycles[{i}]", s) for i, s in enumerate(lst)]
    else:
        for key in ("cocycle", "cocycle2"):
            if key in doc:
                cocycle_docs.append((f"$.{key}", doc[key]))
    cocycles, errors = [], []
    for path, raw in cocycle_docs:
        try:
            cocycles.append(cocycle_from_json(raw, space, path))
        except (InconsistentCocycle, NotAHomomorphism) as exc:
            cocycles.append(None)
            errors.append((path, str(exc)))
    task = _get(doc, "task", "$", str, None)
    if task is not None and task not in TASKS:
        raise MalformedInput("$.task", f"unknown task {task!r}")
    try:
        ring = Ring.parse(_get(doc, "ring", "$", str, "Z"))
    except ValueError as exc:
        raise MalformedInput("$.ring", str(exc)) from None
    inst = Instance(group, space, cocycles, task=task, ring=ring, cocycle_errors=errors)
    if "family" in doc:
        inst.family = family_from_json(doc["family"], space, "$.family")
    if "witness" in doc:
        inst.witness = witness_from_json(doc["witness"], space, "$.witness")
    if "measure" in doc:
        inst.measure = measure_from_json(doc["measure"], space, "$.measure")
    if "primitive" in doc:
        inst.primitive = primitive_from_json(doc["primitive"], space, "$.primitive")
    return inst


def instance_to_json(inst: Instance) -> dict:
    doc = {"group": group_to_json(inst.group), "space": space_to_json(inst.space),
           "ring": "Z" if inst.ring is Ring.INT else "Q",
           "cocycles": [cocycle_to_json(s) for s in inst.cocycles if s is not None]}
    if inst.task is not None:
        doc["task"] = inst.task
    if inst.family is not None:
        doc["family"] = family_to_json(inst.family)
    if inst.witness is not None:
        doc["witness"] = witness_to_json(inst.witness)
    if inst.measure is not None:
        doc["measure"] = measure_to_json(inst.measure)
    if inst.primitive is not None:
        doc["primitive"] = primitive_to_json(inst.primitive)
    return doc
