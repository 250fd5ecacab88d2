"""Command-line front end.

    cyclicalg quat --spec q.json
    cyclicalg biquat --spec bq.json --json
    cyclicalg cyclic --spec hamilton.json --height 6
    cyclicalg sn --spec hamilton.json
    cyclicalg probe --spec hamilton.json
    cyclicalg demo-theorem2 --spec hamilton.json [--allow-split]
    cyclicalg selftest [--seed N]

Exit status: 0 success, 2 precondition/parse error, 3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import sys

from . import brauer, cycalg, selftest, subfields
from .errors import AlgebraError, ConsistencyError, ProofStepError
from .report import (
    SpecError,
    build_cyclic,
    build_quaternion,
    dump_report,
    load_spec,
    parse_element,
    render_text,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_INTERNAL = 3


def _algebra_from_spec(spec: dict):
    """(algebra, quaternion model or None) for cyclic and quaternion specs."""
    if spec["kind"] == "cyclic":
        return build_cyclic(spec), None
    if spec["kind"] == "quaternion":
        model = brauer.quat_to_cyclic(build_quaternion(spec))
        return model.algebra, model
    raise SpecError(f"this command needs a cyclic or quaternion spec, got {spec['kind']!r}")


def _require(spec: dict, *names: str) -> None:
    missing = [n for n in names if n not in spec]
    if missing:
        raise SpecError(f"spec is missing field(s) {missing} required by this command")


def _algebra_summary(D: cycalg.CyclicAlgebra) -> dict:
    return {
        "minpoly": list(D.L.minpoly),
        "sigma_gen_image": D.ext.sigma_gen_image,
        "a": D.a,
        "degree": D.n,
        "division_status": D.division_status,
        "split": D.is_split,
    }


def cmd_quat(spec: dict, args) -> dict:
    if spec["kind"] != "quaternion":
        raise SpecError("quat needs a quaternion spec")
    Q = build_quaternion(spec)
    symbols = Q.symbols(args.trial_division_bound)
    ram = brauer.ramification_set(Q, args.trial_division_bound)
    return {
        "command": "quat",
        "algebra": {"a": Q.a, "b": Q.b},
        "hilbert_symbols": {str(v.to_json()): s for v, s in sorted(symbols.items())},
        "oracle_symbols": {str(v.to_json()): brauer.hilbert_oracle(Q.a, Q.b, v) for v in sorted(symbols)},
        "ramification": ram,
        "division": not ram.is_zero(),
    }


def cmd_biquat(spec: dict, args) -> dict:
    if spec["kind"] != "biquaternion":
        raise SpecError("biquat needs a biquaternion spec")
    Q1 = brauer.QuaternionAlgebra(spec["a"], spec["b"])
    Q2 = brauer.QuaternionAlgebra(spec["c"], spec["d"])
    verdict = brauer.biquaternion_verdict(Q1, Q2, args.trial_division_bound)
    return {"command": "biquat", **verdict.to_json()}


def cmd_cyclic(spec: dict, args) -> dict:
    D, _ = _algebra_from_spec(spec)
    relations = cycalg.verify_defining_relations(D)
    theta, x = D.theta, D.x
    spot = {
        "1": D.one,
        "theta": theta,
        "x": x,
        "1 + theta + x": D.one + theta + x,
    }
    nrd = {name: cycalg.reduced_norm(u) for name, u in spot.items()}
    u, v = D.one + theta + x, theta + x * 2
    report = {
        "command": "cyclic",
        "algebra": _algebra_summary(D),
        "sigma_certificate": {
            "root_to_root": D.ext.certificate.root_to_root,
            "order": D.ext.certificate.order,
            "fixed_field_dimension": D.ext.certificate.fixed_dimension,
        },
        "relations": {name: ok for name, ok in relations.checks},
        "centre_dimension": cycalg.centre_dimension(D),
        "reduced_norms": nrd,
        "reduced_traces": {name: cycalg.reduced_trace(u_) for name, u_ in spot.items()},
        "nrd_multiplicative_spot_check": cycalg.reduced_norm(u * v) == cycalg.reduced_norm(u) * cycalg.reduced_norm(v),
    }
    evidence = dict(D.status_evidence)
    if D.n >= 3:
        witness = cycalg.norm_representation_search(D.ext, D.a, args.height)
        evidence = {"norm_search_height": args.height, "norm_witness": witness}
        status = cycalg.PROVEN_SPLIT if witness is not None else D.division_status
        report["algebra"]["division_status"] = status
        report["algebra"]["split"] = status == cycalg.PROVEN_SPLIT
    if "quaternion" in evidence:
        qa, qb = evidence["quaternion"]
        evidence["quaternion"] = {"a": qa, "b": qb}
        evidence["hilbert_symbols"] = {
            str(v.to_json()): s for v, s in sorted(brauer.QuaternionAlgebra(qa, qb).symbols().items())}
    report["division_evidence"] = evidence
    if D.split_note:
        report["split_note"] = D.split_note
        report["zero_divisor"] = D.split_witness
    return report


def cmd_sn(spec: dict, args) -> dict:
    D, model = _algebra_from_spec(spec)
    _require(spec, "u", "v")
    u = parse_element(spec["u"], D, "u", model)
    v = parse_element(spec["v"], D, "v", model)
    g = subfields.sn_conjugator(D, u, v)
    report = {"command": "sn", "algebra": _algebra_summary(D), "u": u, "v": v,
              "minimal_polynomial": list(cycalg.minimal_polynomial(u)), "g": g}
    if g is not None:
        report["verified"] = cycalg.invert_elem(g) * u * g == v
    return report


def cmd_probe(spec: dict, args) -> dict:
    D, model = _algebra_from_spec(spec)
    _require(spec, "k_generators", "y")
    if not isinstance(spec["k_generators"], list) or not spec["k_generators"]:
        raise SpecError("k_generators: expected a nonempty list of elements")
    gens = [parse_element(r, D, f"k_generators[{k}]", model) for k, r in enumerate(spec["k_generators"])]
    y = parse_element(spec["y"], D, "y", model)
    K = subfields.span_and_certify(D, gens)
    inter = subfields.malnormality_probe(K, y)
    return {
        "command": "probe",
        "algebra": _algebra_summary(D),
        "K_basis": list(K.basis),
        "K_dimension": K.dim,
        "K_is_maximal_subfield": K.certs.is_maximal_subfield,
        "y": y,
        "intersection_basis": list(inter.basis),
        "intersection_dimension": inter.dim,
        "outcome": "malnormal at y (intersection is Q·1)" if inter.dim == 1
        else "malnormality violated at y",
    }


def cmd_demo(spec: dict, args) -> dict:
    D, model = _algebra_from_spec(spec)
    k_gen = parse_element(spec["k_gen"], D, "k_gen", model) if "k_gen" in spec else D.theta
    l_gen = parse_element(spec["l_gen"], D, "l_gen", model) if "l_gen" in spec else D.theta
    K = subfields.span_and_certify(D, [k_gen])
    w = subfields.theorem2_demo(D, K, k_gen, l_gen, allow_split=args.allow_split)
    return {
        "command": "demo-theorem2",
        "algebra": _algebra_summary(D),
        "K_basis": list(K.basis),
        "k_gen": k_gen,
        "l_gen": l_gen,
        "g": w.g,
        "y": w.y,
        "steps": [{"step": s.name, "passed": s.passed, "detail": s.detail} for s in w.steps],
        "intersection_basis": list(w.intersection.basis),
        "intersection_dimension": w.intersection.dim,
        "all_steps_passed": w.passed,
    }


COMMANDS = {
    "quat": cmd_quat,
    "biquat": cmd_biquat,
    "cyclic": cmd_cyclic,
    "sn": cmd_sn,
    "probe": cmd_probe,
    "demo-theorem2": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclicalg", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS) + ["selftest"])
    parser.add_argument("--spec", help="path to the JSON algebra specification")
    parser.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    parser.add_argument("--seed", type=int, default=selftest.DEFAULT_SEED)
    parser.add_argument("--height", type=int, default=10, help="norm search bound")
    parser.add_argument("--allow-split", action="store_true", help="run demos on split algebras")
    parser.add_argument("--trial-division-bound", type=int, default=brauer.DEFAULT_TRIAL_DIVISION_BOUND)
    return parser


def run_selftest(seed: int, out=sys.stdout) -> int:
    print(f"selftest seed {seed}", file=out)
    status = EXIT_OK
    for result in selftest.run_all(seed):
        if result.ok:
            print(f"  PASS {result.name}: {result.count} cases", file=out)
        else:
            print(f"  FAIL {result.name} after {result.count} cases: {result.failure}", file=out)
            status = EXIT_INTERNAL
    return status


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        return run_selftest(args.seed, out)
    try:
        if not args.spec:
            raise SpecError(f"{args.command} needs --spec")
        if args.height < 1 or args.trial_division_bound < 2:
            raise SpecError("--height must be ≥ 1 and --trial-division-bound ≥ 2")
        spec = load_spec(args.spec)
        report = COMMANDS[args.command](spec, args)
    except ProofStepError as exc:
        print(f"error: {exc}", file=err)
        if exc.witness is not None:
            for s in exc.witness.steps:
                print(f"  [{'ok' if s.passed else 'FAILED'}] {s.name}: {s.detail}", file=err)
        return EXIT_INTERNAL
    except ConsistencyError as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL
    except AlgebraError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    print(dump_report(report) if args.json else render_text(report), file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
