"""Batch command-line front end.

Reads problem files describing an algebra (explicit blocks or generator
matrices) plus a state (ambient density matrix, canonical form, or values on
a declared basis), dispatches to the library, and prints reports either as
text or as one JSON document.  Complex matrices are serialized as nested
arrays of [re, im] pairs.

Exit codes: 0 ok, 2 parse or input validation error, 3 numerical failure,
4 invalid state.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import decomp, entropy, gns, states, thermo
from .errors import DecompositionError, InternalError, NotAStateError, ValidationError

_LN2 = float(np.log(2.0))


class _ParseError(Exception):
    pass


def _matrix_from_json(obj, what: str = "matrix") -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise _ParseError(f"{what}: not a numeric nested array: {exc}") from None
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise _ParseError(f"{what}: expected rows of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(mat, complex)]


def _vector_from_json(obj, what: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise _ParseError(f"{what}: not numeric: {exc}") from None
    if arr.ndim != 2 or arr.shape[-1] != 2:
        raise _ParseError(f"{what}: expected a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


@dataclass
class _Problem:
    structure: alg.BlockStructure
    state: states.StateFunctional | None
    transform: np.ndarray | None       # ambient change of basis from generator coordinates
    discovery_residual: float | None
    unitary: np.ndarray | None
    tol: float
    seed: int
    samples: int


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _ParseError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise _ParseError(f"{path}: top level must be an object")
    return doc


def _resolve_options(doc: dict, args) -> tuple[float, int, int]:
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise _ParseError("options must be an object")
    tol = args.tol if args.tol is not None else float(options.get("tol", 1e-9))
    seed = args.seed if args.seed is not None else int(options.get("seed", 0))
    samples = getattr(args, "samples", None)
    if samples is None:
        samples = int(options.get("samples", 1000))
    return tol, seed, samples


def _parse_problem(args, need_state: bool = True, need_generators: bool = False) -> _Problem:
    doc = _load_json(args.file)
    tol, seed, samples = _resolve_options(doc, args)

    algebra_form = doc.get("algebra")
    if not isinstance(algebra_form, dict) or len(algebra_form.keys() & {"blocks", "generators"}) != 1:
        raise _ParseError("algebra must contain exactly one of 'blocks' or 'generators'")
    transform = None
    residual = None
    if "blocks" in algebra_form:
        if need_generators:
            raise _ParseError("this command requires the algebra as generators")
        try:
            structure = alg.make_algebra([tuple(b) for b in algebra_form["blocks"]])
        except (TypeError, ValidationError) as exc:
            raise _ParseError(f"algebra blocks: {exc}") from None
    else:
        gens = [_matrix_from_json(g, f"generator {k}") for k, g in enumerate(algebra_form["generators"])]
        sub = alg.generate_subalgebra(gens, tol=tol)
        structure, transform = alg.block_decompose(sub, tol=tol, seed=seed)
        residual = max(
            alg.structure_projection(transform.conj().T @ b @ transform, structure)[1]
            for b in sub.basis)

    state = None
    state_form = doc.get("state")
    if need_state:
        if not isinstance(state_form, dict) or \
                len(state_form.keys() & {"density", "canonical", "values"}) != 1:
            raise _ParseError(
                "state must contain exactly one of 'density', 'canonical' or 'values'")
        if "density" in state_form:
            rho = _matrix_from_json(state_form["density"], "state density")
            if transform is not None:
                rho = transform.conj().T @ rho @ transform
            state = states.state_from_density(rho, structure, tol)
        elif "canonical" in state_form:
            canon = state_form["canonical"]
            if not isinstance(canon, dict) or "p" not in canon or "rhos" not in canon:
                raise _ParseError("canonical state needs 'p' and 'rhos'")
            rhos = [None if r is None else _matrix_from_json(r, "block state")
                    for r in canon["rhos"]]
            state = states.StateFunctional.from_canonical(structure, canon["p"], rhos)
        else:
            vals = _vector_from_json(state_form["values"], "state values")
            basis = [_matrix_from_json(b, f"basis element {k}")
                     for k, b in enumerate(state_form.get("basis", []))]
            if not basis:
                raise _ParseError("state values need a declared 'basis'")
            if transform is not None:
                basis = [transform.conj().T @ b @ transform for b in basis]
            state = states.state_from_values(structure, basis, vals, tol)

    unitary = None
    if "unitary" in doc:
        unitary = _matrix_from_json(doc["unitary"], "unitary")
    return _Problem(structure=structure, state=state, transform=transform,
                    discovery_residual=residual, unitary=unitary,
                    tol=tol, seed=seed, samples=samples)


def _format_blocks(structure: alg.BlockStructure) -> str:
    parts = []
    run = None
    count = 0
    for block in structure.blocks + ((None, None),):
        if block == run:
            count += 1
            continue
        if run is not None and run[0] is not None:
            parts.append(f"({run[0]},{run[1]})" + (f"x{count}" if count > 1 else ""))
        run, count = block, 1
    return "[" + ", ".join(parts) + "]"


def _unit(args) -> tuple[float, str]:
    return (_LN2, "bits") if args.bits else (1.0, "nats")


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _cmd_structure(args) -> None:
    problem = _parse_problem(args, need_state=False, need_generators=True)
    payload = {
        "blocks": [list(b) for b in problem.structure.blocks],
        "ambient_dim": problem.structure.ambient_dim,
        "algebra_dim": problem.structure.algebra_dim,
        "residual": problem.discovery_residual,
    }
    lines = [
        f"blocks: {_format_blocks(problem.structure)}",
        f"ambient dimension: {problem.structure.ambient_dim}",
        f"algebra dimension: {problem.structure.algebra_dim}",
        f"residual: {problem.discovery_residual:.3e}",
    ]
    if args.show_unitary:
        payload["unitary"] = _matrix_to_json(problem.transform)
        lines.append(f"unitary: {payload['unitary']}")
    _emit(args, payload, lines)


def _cmd_entropy(args) -> None:
    problem = _parse_problem(args)
    report = entropy.state_entropy(problem.state, problem.structure, problem.tol)
    scale, unit = _unit(args)
    payload = {
        "state_entropy": report.state_entropy / scale,
        "sector_entropy": report.sector_entropy / scale,
        "mean_block_entropy": report.mean_block_entropy / scale,
        "vn_of_representative": report.vn_of_representative / scale,
        "multiplicity_term": report.multiplicity_term / scale,
        "unit": unit,
    }
    lines = [
        f"state entropy:          {payload['state_entropy']:.9g} {unit}",
        f"sector mixing entropy:  {payload['sector_entropy']:.9g} {unit}",
        f"mean block entropy:     {payload['mean_block_entropy']:.9g} {unit}",
        f"S_VN of representative: {payload['vn_of_representative']:.9g} {unit}",
        f"multiplicity term:      {payload['multiplicity_term']:.9g} {unit}",
    ]
    _emit(args, payload, lines)


def _cmd_oracle(args) -> None:
    problem = _parse_problem(args)
    found, _ = decomp.infimum_oracle(problem.state, problem.structure,
                                     samples=problem.samples, seed=problem.seed,
                                     tol=problem.tol)
    closed = entropy.state_entropy(problem.state, problem.structure, problem.tol).state_entropy
    scale, unit = _unit(args)
    payload = {
        "min_entropy_found": found / scale,
        "state_entropy": closed / scale,
        "gap": (found - closed) / scale,
        "samples": problem.samples,
        "unit": unit,
    }
    lines = [
        f"minimum found: {payload['min_entropy_found']:.9g} {unit} ({problem.samples} samples)",
        f"state entropy: {payload['state_entropy']:.9g} {unit}",
        f"gap:           {payload['gap']:.3e} {unit}",
    ]
    _emit(args, payload, lines)


def _cmd_schrodinger(args) -> None:
    problem = _parse_problem(args)
    if problem.unitary is None:
        raise _ParseError("this command needs a 'unitary' entry in the problem file")
    rho = states.representative_density(problem.state, problem.structure, problem.tol)
    dec = decomp.schrodinger_decomposition(rho, problem.unitary)
    weights = dec.weights()
    mixed = decomp.decomposition_entropy(dec)
    vn = entropy.von_neumann(rho, problem.tol)
    scale, unit = _unit(args)
    payload = {
        "weights": [float(w) for w in weights],
        "decomposition_entropy": mixed / scale,
        "vn_entropy": vn / scale,
        "excess": (mixed - vn) / scale,
        "unit": unit,
    }
    lines = [
        f"weights: {np.array2string(weights, precision=9)}",
        f"decomposition entropy: {payload['decomposition_entropy']:.9g} {unit}",
        f"S_VN of the state:     {payload['vn_entropy']:.9g} {unit}",
        f"excess over S_VN:      {payload['excess']:.9g} {unit}",
    ]
    _emit(args, payload, lines)


def _cmd_gns(args) -> None:
    problem = _parse_problem(args)
    g = gns.gns_construct(problem.state, problem.structure, problem.tol)
    irreducible = gns.is_irreducible(g, problem.tol)
    via_gns = gns.gns_state_entropy(problem.state, problem.structure,
                                    problem.tol, seed=problem.seed).state_entropy
    closed = entropy.state_entropy(problem.state, problem.structure, problem.tol).state_entropy
    scale, unit = _unit(args)
    payload = {
        "gns_dimension": g.dim,
        "irreducible": bool(irreducible),
        "gns_entropy": via_gns / scale,
        "state_entropy": closed / scale,
        "gap": (via_gns - closed) / scale,
        "unit": unit,
    }
    lines = [
        f"GNS dimension: {g.dim}",
        f"irreducible:   {'yes' if irreducible else 'no'}",
        f"GNS entropy:   {payload['gns_entropy']:.9g} {unit}",
        f"state entropy: {payload['state_entropy']:.9g} {unit}",
        f"gap:           {payload['gap']:.3e} {unit}",
    ]
    _emit(args, payload, lines)


def _cmd_zeno(args) -> None:
    prob = thermo.zeno_success_probability(args.k)
    payload = {"k": args.k, "success_probability": prob}
    _emit(args, payload, [f"success probability after {args.k} steps: {prob:.9g}"])


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstar-entropy",
        description="entropy of states over finite-dimensional operator algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_samples: bool = False) -> None:
        p.add_argument("--tol", type=float, default=None, help="numerical tolerance (default 1e-9)")
        p.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
        if with_samples:
            p.add_argument("--samples", type=int, default=None,
                           help="number of random samples (default 1000)")
        p.add_argument("--bits", action="store_true", help="report entropies in bits")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("structure", help="discover the block structure of a generated algebra")
    p.add_argument("file")
    p.add_argument("--show-unitary", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("entropy", help="entropy report for a state")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("oracle", help="sampled decomposition-entropy minimum vs the closed form")
    p.add_argument("file")
    common(p, with_samples=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("schrodinger", help="decomposition induced by a unitary")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_schrodinger)

    p = sub.add_parser("gns", help="GNS representation and the entropy through it")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_gns)

    p = sub.add_parser("zeno", help="success probability of the k-step rotation")
    p.add_argument("k", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_zeno, bits=False)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        args.func(args)
    except _ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotAStateError as exc:
        print(f"not a state: {exc}", file=sys.stderr)
        return 4
    except (DecompositionError, InternalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
