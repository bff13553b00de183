"""Command-line front end: read an instance, run a task, emit a certificate.

Exit codes: 0 success / equal / valid, 1 not equal or invalid (the
certificate says why), 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional

from . import corpus
from .cochains import Ring, coboundary, euler_pullback
from .cocycles import (check_equivariant_family, check_lifted_family,
                       classify_witness, trivial_cocycle, verify_cocycle,
                       verify_lifted, verify_semicohomology)
from .errors import EulerLabError, MalformedInput, MixedAtomicity, NotEquivariant
from .euler_analysis import (Equal, FiniteSetFamily, Obstruction, PrimitiveCertificate,
                             check_set_family, decide_class_equality, elementary_reduction,
                             family_from_lift, lift_from_family, lift_from_primitive,
                             primitive_from_lift,
                             rotation_reduction, semicohomology_witness, solve_primitive,
                             verify_obstruction, verify_primitive)
from .group_space import verify_space
from .serialization import (TASKS, Instance, cochain_from_json, cochain_to_json,
                            cocycle_from_json, cocycle_to_json, family_from_json,
                            family_to_json, instance_to_json, lifted_from_json,
                            lifted_to_json, obstruction_from_json, obstruction_to_json,
                            parse_instance, primitive_from_json, primitive_to_json,
                            set_family_from_json, set_family_to_json,
                            witness_from_json, witness_to_json)

EXIT_OK, EXIT_NO, EXIT_MALFORMED = 0, 1, 2


def _sigma(inst: Instance, i: int = 0, default_trivial: bool = False):
    if i < len(inst.cocycles):
        return inst.cocycles[i]
    if default_trivial:
        return trivial_cocycle(inst.space)
    names = ("$.cocycle", "$.cocycle2")
    raise MalformedInput(names[i] if i < 2 else f"$.cocycles[{i}]", "missing cocycle")


def _integer_primitive(inst, sigma):
    if inst.primitive is not None:
        return inst.primitive
    return solve_primitive(euler_pullback(sigma, Ring.INT), Ring.INT)


def _obstructed(doc, obs: Obstruction, space):
    doc.update(status="not-equal", obstruction=obstruction_to_json(obs, space))
    return doc, EXIT_NO


def run(task: str, inst: Instance):
    """Dispatch ``task``; returns ``(certificate document, exit code)``."""
    S = inst.space
    doc = {"task": task, "ring": "Z" if inst.ring is Ring.INT else "Q"}
    if inst.cocycle_errors:
        doc.update(status="invalid", violations=[f"{p}: {m}" for p, m in inst.cocycle_errors])
        return doc, EXIT_NO

    if task == "check-cocycle":
        report = verify_cocycle(_sigma(inst))
        doc.update(status="valid" if report.valid else "invalid",
                   violations=list(report.violations),
                   warnings=list(verify_space(S).warnings))
        return doc, EXIT_OK if report.valid else EXIT_NO

    if task == "euler-pullback":
        doc.update(status="ok", cochain=cochain_to_json(euler_pullback(_sigma(inst), inst.ring)))
        return doc, EXIT_OK

    if task in ("solve-primitive", "decide-equality"):
        s1 = _sigma(inst)
        if task == "solve-primitive":
            res = solve_primitive(euler_pullback(s1, inst.ring), inst.ring)
        else:
            s2 = _sigma(inst, 1, default_trivial=True)
            res = decide_class_equality(s1, s2, inst.ring)
            res = res.certificate if isinstance(res, Equal) else res.obstruction
        if isinstance(res, Obstruction):
            return _obstructed(doc, res, S)
        doc.update(status="equal", primitive=primitive_to_json(res))
        return doc, EXIT_OK

    if task == "lift":
        sigma = _sigma(inst)
        cert = _integer_primitive(inst, sigma)
        if isinstance(cert, Obstruction):
            return _obstructed(doc, cert, S)
        doc.update(status="ok", primitive=primitive_to_json(cert),
                   lift=lifted_to_json(lift_from_primitive(sigma, cert)))
        return doc, EXIT_OK

    if task == "equivariant-family":
        sigma = _sigma(inst)
        if inst.family is not None:
            try:
                lifted, real = lift_from_family(sigma, inst.family)
            except NotEquivariant as exc:
                doc.update(status="invalid", violations=[str(exc)])
                return doc, EXIT_NO
        else:
            cert = _integer_primitive(inst, sigma)
            if isinstance(cert, Obstruction):
                return _obstructed(doc, cert, S)
            lifted = lift_from_primitive(sigma, cert)
            real = family_from_lift(lifted)
        doc.update(status="ok", lift=lifted_to_json(lifted),
                   primitive=primitive_to_json(primitive_from_lift(sigma, lifted)),
                   family=family_to_json(real), circle_family=family_to_json(real.to_circle()))
        return doc, EXIT_OK

    if task == "witness":
        s1, s2 = _sigma(inst), _sigma(inst, 1, default_trivial=True)
        if inst.witness is not None:
            ok = verify_semicohomology(s1, s2, inst.witness)
            doc.update(status="valid" if ok else "invalid", witness=witness_to_json(inst.witness),
                       classification=list(classify_witness(inst.witness)))
            return doc, EXIT_OK if ok else EXIT_NO
        res = decide_class_equality(s1, s2, Ring.INT)
        if not isinstance(res, Equal):
            return _obstructed(doc, res.obstruction, S)
        w = semicohomology_witness(s1, s2, res.certificate)
        doc.update(status="ok", primitive=primitive_to_json(res.certificate),
                   witness=witness_to_json(w), classification=list(classify_witness(w)))
        return doc, EXIT_OK

    if task == "rotation-reduce":
        sigma = _sigma(inst)
        cert = inst.primitive or solve_primitive(euler_pullback(sigma, Ring.RAT), Ring.RAT)
        if isinstance(cert, Obstruction):
            return _obstructed(doc, cert, S)
        sigma0, fl = rotation_reduction(sigma, cert)
        doc.update(status="ok", primitive=primitive_to_json(cert),
                   rotation_cocycle=cocycle_to_json(sigma0), floor_primitive=primitive_to_json(fl))
        return doc, EXIT_OK

    if task == "elementary-reduce":
        sigma = _sigma(inst)
        if inst.measure is None:
            raise MalformedInput("$.measure", "elementary-reduce needs a measure family")
        try:
            res = elementary_reduction(sigma, inst.measure)
        except (NotEquivariant, MixedAtomicity) as exc:
            doc.update(status="invalid", error=type(exc).__name__, violations=[str(exc)])
            return doc, EXIT_NO
        if isinstance(res, FiniteSetFamily):
            doc.update(status="ok", branch="finite-set", set_family=set_family_to_json(res))
        else:
            sigma0, w = res
            doc.update(status="ok", branch="rotation", rotation_cocycle=cocycle_to_json(sigma0),
                       witness=witness_to_json(w))
        return doc, EXIT_OK

    raise MalformedInput("$.task", f"unknown task {task!r}")


def verify_certificate(inst: Instance, doc: dict) -> bool:
    """Re-check an emitted certificate from its JSON form alone."""
    S = inst.space
    task = doc["task"]
    ring = Ring.parse(doc["ring"])
    if doc.get("status") in ("invalid",):
        return True
    sigma = inst.cocycles[0] if inst.cocycles else None
    if "obstruction" in doc:
        obs = obstruction_from_json(doc["obstruction"], S)
        if task == "decide-equality":
            s2 = inst.cocycles[1] if len(inst.cocycles) > 1 else trivial_cocycle(S)
            c = euler_pullback(sigma, obs.ring) - euler_pullback(s2, obs.ring)
        else:
            c = euler_pullback(sigma, obs.ring)
        return verify_obstruction(c, obs)
    if task == "check-cocycle":
        return verify_cocycle(sigma).valid == (doc["status"] == "valid")
    if task == "euler-pullback":
        c = cochain_from_json(doc["cochain"], S)
        return c == euler_pullback(sigma, ring) and coboundary(c).is_zero()
    ok = True
    if "primitive" in doc and task != "rotation-reduce":
        cert = primitive_from_json(doc["primitive"], S)
        if task in ("decide-equality", "witness"):
            s2 = inst.cocycles[1] if len(inst.cocycles) > 1 else trivial_cocycle(S)
            c = euler_pullback(sigma, cert.ring) - euler_pullback(s2, cert.ring)
        else:
            c = euler_pullback(sigma, cert.ring)
        ok &= verify_primitive(c, cert)
    if "lift" in doc:
        lifted = lifted_from_json(doc["lift"], S)
        ok &= verify_lifted(lifted).valid and lifted.project().table == sigma.table
        if "family" in doc:
            ok &= check_lifted_family(lifted, family_from_json(doc["family"], S))
    if "circle_family" in doc:
        ok &= check_equivariant_family(sigma, family_from_json(doc["circle_family"], S))
    if task == "witness":
        s2 = inst.cocycles[1] if len(inst.cocycles) > 1 else trivial_cocycle(S)
        ok &= verify_semicohomology(sigma, s2, witness_from_json(doc["witness"], S))
    if task == "rotation-reduce":
        sigma0 = cocycle_from_json(doc["rotation_cocycle"], S)
        fl = primitive_from_json(doc["floor_primitive"], S)
        cert = primitive_from_json(doc["primitive"], S)
        ok &= sigma0.is_rotation_valued()
        rat = PrimitiveCertificate(Ring.RAT, cert.u.with_ring(Ring.RAT))
        ok &= verify_primitive(euler_pullback(sigma, Ring.RAT), rat)
        ok &= coboundary(fl.u) == euler_pullback(sigma, Ring.INT) - euler_pullback(sigma0, Ring.INT)
    if task == "elementary-reduce":
        if doc["branch"] == "finite-set":
            ok &= check_set_family(sigma, set_family_from_json(doc["set_family"]))
        else:
            sigma0 = cocycle_from_json(doc["rotation_cocycle"], S)
            w = witness_from_json(doc["witness"], S)
            ok &= sigma0.is_rotation_valued() and verify_semicohomology(sigma0, sigma, w)
    return bool(ok)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(doc, out: Optional[str]):
    text = dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser():
    p = argparse.ArgumentParser(prog="eulerlab", description=__doc__.splitlines()[0])
    p.add_argument("--task", choices=TASKS)
    p.add_argument("--ring", choices=("Z", "Q"))
    p.add_argument("--in", dest="infile", metavar="FILE", help="instance JSON (default stdin)")
    p.add_argument("--out", metavar="FILE", help="certificate JSON (default stdout)")
    p.add_argument("--verify", action="store_true",
                   help="re-verify the emitted certificate from its JSON form")
    return p


def _corpus_parser():
    p = argparse.ArgumentParser(prog="eulerlab gen-corpus",
                                description="Write random instances; seeded by EULERLAB_SEED.")
    p.add_argument("--kind", choices=("planted-family", "conjugate-pair", "collapsing-pair"),
                   default="planted-family")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--out", metavar="FILE")
    return p


def gen_corpus(kind: str, count: int, seed: int) -> list:
    rng = random.Random(seed)
    docs = []
    for _ in range(count):
        space = corpus.random_space(rng)
        if kind == "planted-family":
            sigma, r = corpus.planted_family(rng, space)
            inst = Instance(space.group, space, [sigma], family=r, task="equivariant-family")
        elif kind == "conjugate-pair":
            s1 = corpus.random_base_cocycle(rng, space)
            s1, s2, w = corpus.planted_conjugate_pair(rng, s1)
            inst = Instance(space.group, space, [s1, s2], witness=w, task="witness")
        else:
            s1, s2, w = corpus.planted_collapsing_pair(rng, space)
            inst = Instance(space.group, space, [s1, s2], witness=w, task="witness")
        docs.append(instance_to_json(inst))
    return docs


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "gen-corpus":
        args = _corpus_parser().parse_args(argv[1:])
        seed = int(os.environ.get("EULERLAB_SEED", "0"))
        _emit({"seed": seed, "kind": args.kind, "instances": gen_corpus(args.kind, args.count, seed)},
              args.out)
        return EXIT_OK
    args = _build_parser().parse_args(argv)
    try:
        if args.infile:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput("$", f"invalid JSON: {exc}") from None
        inst = parse_instance(raw)
        if args.ring:
            inst.ring = Ring.parse(args.ring)
        task = args.task or inst.task
        if task is None:
            raise MalformedInput("$.task", "no task given (use --task or a 'task' field)")
        doc, code = run(task, inst)
        if args.verify:
            ok = verify_certificate(inst, json.loads(dumps(doc)))
            doc["verified"] = ok
            if not ok:
                code = EXIT_NO
    except MalformedInput as exc:
        _emit({"status": "malformed", "path": exc.path, "message": exc.message}, args.out)
        return EXIT_MALFORMED
    except OSError as exc:
        _emit({"status": "malformed", "path": "$", "message": str(exc)}, args.out)
        return EXIT_MALFORMED
    except EulerLabError as exc:
        _emit({"status": "invalid", "error": type(exc).__name__, "message": str(exc)}, args.out)
        return EXIT_NO
    _emit(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
