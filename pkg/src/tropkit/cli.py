"""Command-line front end.

Exit codes: 0 success or accept, 1 well-formed negative answer (unbalanced
cycle, rejected realization, monomial input, violated conditions), 2 malformed
input or internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction

from . import serialize as S
from .chow import chow_complex_of_hypersurface, chow_skeleton_from_cycle, check_realization
from .cycles import (NonGenericError, degree_of_subtorus, is_balanced, stable_minkowski_sum,
                     tropical_degree)
from .hypersurface import coefficient_configuration, initial_form, tropicalize
from .weights import admissible_conditions, check_conditions, weight_complex

SEED_ENV = "TROPKIT_SEED"


class Failure(Exception):
    """Well-formed negative result; carries the JSON payload."""

    def __init__(self, payload):
        super().__init__("negative result")
        self.payload = payload


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise S.SchemaError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise S.SchemaError(f"{path} is not valid JSON: {e.msg}") from e


def _point(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as e:
        raise S.SchemaError(f"bad point {text!r}") from e


def cmd_tropicalize(a):
    f = S.polynomial_from_json(_load(a.poly))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        t = tropicalize(f)
    out = {"schema": S.SCHEMA, "cycle": S.cycle_to_json(t), "warnings": [str(w.message) for w in caught]}
    if caught:
        raise Failure(out)
    return out


def cmd_initial_form(a):
    f = S.polynomial_from_json(_load(a.poly))
    w = _point(a.w)
    if len(w) != f.num_vars:
        raise S.SchemaError("weight vector has the wrong length")
    return S.initial_form_to_json(initial_form(f, w), w)


def _config(a):
    if a.config:
        return S.config_from_json(_load(a.config))
    if a.poly:
        return coefficient_configuration(S.polynomial_from_json(_load(a.poly)))
    raise S.SchemaError("need --config or --poly")


def cmd_weight_complex(a):
    return S.weight_complex_to_json(weight_complex(_config(a)))


def cmd_admissible(a):
    cfg = _config(a)
    target = S.config_from_json(_load(a.target)) if a.target else cfg
    system = admissible_conditions(weight_complex(target), cfg)
    out = {"schema": S.SCHEMA, "system": S.conditions_to_json(system)}
    if a.vals:
        chk = check_conditions(S.valuations_from_json(_load(a.vals)), system)
        out["check"] = S.condition_check_to_json(chk)
        if not chk:
            raise Failure(out)
    return out


def cmd_balance(a):
    c = S.cycle_from_json(_load(a.cycle))
    r = is_balanced(c)
    out = S.balance_to_json(r, c)
    if not r:
        raise Failure(out)
    return out


def cmd_stable_sum(a):
    c = S.cycle_from_json(_load(a.cycle))
    d = S.cycle_from_json(_load(a.other))
    if c.ambient_dim != d.ambient_dim:
        raise S.SchemaError("cycles live in different ambient spaces")
    return {"schema": S.SCHEMA, "cycle": S.cycle_to_json(stable_minkowski_sum(c, d, a.seed))}


def cmd_chow_skeleton(a):
    if a.poly:
        cc = chow_complex_of_hypersurface(S.polynomial_from_json(_load(a.poly)))
    elif a.cycle:
        c = S.cycle_from_json(_load(a.cycle))
        r = is_balanced(c)
        if not r:
            raise Failure(S.balance_to_json(r, c))
        cc = chow_skeleton_from_cycle(c, a.seed)
    else:
        raise S.SchemaError("need --cycle or --poly")
    return S.chow_to_json(cc)


def cmd_check_realization(a):
    f = S.polynomial_from_json(_load(a.poly))
    target = S.cycle_from_json(_load(a.target))
    if target.ambient_dim != f.num_vars or target.dim != f.num_vars - 1:
        raise S.SchemaError("target must be a codimension-1 cycle in the polynomial's ambient space")
    cert = check_realization(f, target, a.mode, a.seed)
    out = S.certificate_to_json(cert)
    if not cert:
        raise Failure(out)
    return out


def cmd_degree(a):
    if a.cycle:
        c = S.cycle_from_json(_load(a.cycle))
        return {"schema": S.SCHEMA, "degree": tropical_degree(c, a.seed)}
    if a.sublattice and a.polytope:
        lat = _load(a.sublattice)
        pol = _load(a.polytope)
        basis = [S.ints(v) for v in S._need(lat, "basis", list)]
        verts = [S.ints(v) for v in S._need(pol, "vertices", list)]
        return {"schema": S.SCHEMA, "degree": degree_of_subtorus(basis, verts)}
    raise S.SchemaError("need --cycle, or --sublattice with --polytope")


COMMANDS = {
    "tropicalize": cmd_tropicalize,
    "initial-form": cmd_initial_form,
    "weight-complex": cmd_weight_complex,
    "admissible": cmd_admissible,
    "balance": cmd_balance,
    "stable-sum": cmd_stable_sum,
    "chow-skeleton": cmd_chow_skeleton,
    "check-realization": cmd_check_realization,
    "degree": cmd_degree,
}


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise S.SchemaError(f"{SEED_ENV} must be an integer") from None
    return seed


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropkit", description="Exact tropical geometry toolkit.")
    p.add_argument("--seed", type=_seed, default=None, help=f"genericity seed (default ${SEED_ENV} or 0)")
    p.add_argument("--output", "-o", help="write JSON here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--seed", type=_seed, default=argparse.SUPPRESS)
        s.add_argument("--output", "-o", default=argparse.SUPPRESS)
        return s

    s = add("tropicalize", "tropical hypersurface of a polynomial")
    s.add_argument("--poly", required=True)
    s = add("initial-form", "initial form at a weight vector")
    s.add_argument("--poly", required=True)
    s.add_argument("--w", required=True, help="comma-separated rationals")
    s = add("weight-complex", "weight complex of a configuration")
    s.add_argument("--config")
    s.add_argument("--poly")
    s = add("admissible", "condition system fixing a weight complex")
    s.add_argument("--config")
    s.add_argument("--poly")
    s.add_argument("--target", help="configuration whose weight complex is to be fixed")
    s.add_argument("--vals", help="valuation assignment to check")
    s = add("balance", "check the balancing condition")
    s.add_argument("--cycle", required=True)
    s = add("stable-sum", "stable Minkowski sum of two cycles")
    s.add_argument("--cycle", required=True)
    s.add_argument("--other", required=True)
    s = add("chow-skeleton", "Chow complex of a cycle or of a hypersurface")
    s.add_argument("--cycle")
    s.add_argument("--poly")
    s = add("check-realization", "decide whether a polynomial realizes a cycle")
    s.add_argument("--poly", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--mode", choices=("direct", "sampled", "both"), default="both")
    s = add("degree", "tropical degree of a cycle or degree of a subtorus orbit")
    s.add_argument("--cycle")
    s.add_argument("--sublattice")
    s.add_argument("--polytope")
    return p


def _emit(payload, path):
    text = S.dumps(payload)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    output = getattr(args, "output", None)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        payload = COMMANDS[args.command](args)
        code = 0
    except Failure as f:
        payload, code = f.payload, 1
    except (S.SchemaError, NonGenericError, ValueError, KeyError, TypeError) as e:
        payload, code = {"schema": S.SCHEMA, "error": {"type": type(e).__name__, "message": str(e)}}, 2
    except Exception as e:  # internal error, still machine readable
        payload, code = {"schema": S.SCHEMA, "error": {"type": "InternalError", "message": repr(e)}}, 2
    _emit(payload, output)
    return code


if __name__ == "__main__":
    sys.exit(main())
