"""Command-line front end: ``ellcode <command> [options]``.

Inputs are JSON files or inline JSON strings.  Every run that writes to
``--out`` also writes ``<out>.provenance.json`` with input hashes, the seed
and the library version.  Errors are reported as one JSON object on stderr
with a nonzero exit status.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from typing import Any, Sequence

from . import __version__, codes
from .automorphism import CurveAutomorphism, automorphism_group_report, automorphisms_of_order
from .curve import EllipticCurve
from .distinguisher import (
    BoundParams,
    empirical_square_report,
    largest_distinguishable_s,
    sweep,
)
from .divisor import Divisor
from .errors import EllcodeError, IoError, ParseError, ValidationError
from .families import (
    EvaluationSpec,
    GoppaLikeSpec,
    QCSpec,
    basis_for,
    evaluation_code,
    goppa_like,
    qc_goppa_like,
    qc_ssde,
)
from .function import CurveFunction
from .rr_basis import verify_basis

FAMILIES = ("onepoint", "multipoint", "qc-ssde", "goppa-like", "qc-goppa-like")
COMMANDS = ("curve-info", "rr-basis", "code-build", "code-verify", "ssde-build",
            "distinguish-bound", "distinguish-square")
EXIT_PARSE, EXIT_VALIDATION, EXIT_IO = 2, 1, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


# -- input handling ----------------------------------------------------------------------

class Inputs:
    """Loads JSON inputs and remembers a hash of each raw text."""

    def __init__(self):
        self.hashes: dict[str, str] = {}

    def load(self, name: str, arg: str | None, required: bool = True) -> Any:
        if arg is None:
            if required:
                raise ParseError(f"--{name} is required for this command")
            return None
        text = arg
        if not arg.lstrip().startswith(("{", "[", '"')):
            try:
                with open(arg, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise IoError(f"cannot read --{name} {arg}: {exc.strerror}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--{name}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
        self.hashes[name] = hashlib.sha256(text.encode("utf-8")).hexdigest()
        return data


def _curve(inputs: Inputs, args) -> EllipticCurve:
    data = inputs.load("curve", args.curve)
    try:
        return EllipticCurve.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"--curve: expected {{'field': {{'p', 'm'}}, 'a': [a1, a2, a3, a4, a6]}} ({exc})") from exc


def _divisor(E: EllipticCurve, data) -> Divisor:
    try:
        return Divisor.from_json(E, data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"--divisor: expected a list of {{'point', 'mult'}} entries ({exc})") from exc


def _points(E: EllipticCurve, data) -> list:
    try:
        return [E.point_from_json(p) for p in data]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"--points: expected a list of {{'x', 'y'}} points ({exc})") from exc


def _sigma(E: EllipticCurve, inputs: Inputs, args) -> CurveAutomorphism:
    data = inputs.load("sigma", args.sigma, required=False)
    if data is not None:
        return CurveAutomorphism.from_json(E, data)
    if args.ell is None:
        raise ParseError("quasi-cyclic families need --sigma or --ell")
    found = automorphisms_of_order(E, args.ell)
    if not found:
        raise ValidationError(f"the curve has no rational automorphism of order {args.ell}")
    return found[0]


def _default_support(E: EllipticCurve, avoid) -> list:
    bad = set(avoid)
    return [P for P in E.affine_points() if P not in bad]


# -- commands -------------------------------------------------------------------------------

def cmd_curve_info(args, inputs: Inputs) -> tuple[dict, str | None]:
    E = _curve(inputs, args)
    F = E.field
    lo, hi = E.hasse_window()
    n = len(E.points)
    out = {"curve": E.to_json(), "discriminant": F.element_to_json(E.discriminant),
           "j_invariant": F.element_to_json(E.j_invariant), "points": n,
           "hasse_window": [lo, hi], "hasse_ok": lo <= n <= hi,
           "automorphisms": automorphism_group_report(E)}
    return out, None


def cmd_rr_basis(args, inputs: Inputs) -> tuple[dict, str | None]:
    E = _curve(inputs, args)
    G = _divisor(E, inputs.load("divisor", args.divisor))
    if G.degree <= 0:
        raise ValidationError(f"deg(G) = {G.degree}: a basis is only produced for deg(G) >= 1")
    basis = basis_for(G, args.method)
    report = verify_basis(basis)
    return {"basis": basis.to_json(), "report": report.to_json()}, None


def _code_payload(C: codes.LinearCode, family: str, points, E: EllipticCurve, H=None) -> dict:
    out = {"family": family, "n": C.n, "k": C.k, "code": C.to_json(),
           "support": [E.point_to_json(P) for P in points]}
    if H is not None:
        out["parity_check"] = [[C.field.element_to_json(c) for c in row] for row in H]
    return out


def _qc_spec(E: EllipticCurve, inputs: Inputs, args, sigma) -> tuple[QCSpec, dict]:
    data = inputs.load("divisor", args.divisor)
    if not isinstance(data, dict):
        raise ParseError("--divisor for quasi-cyclic families: {'infinity': k} or "
                         "{'orbits': [{'rep': point, 'mult': t}], 'c': c}")
    d_reps = None
    if args.points is not None:
        d_reps = _points(E, inputs.load("points", args.points))
    if "infinity" in data:
        k_inf, reps, mults = int(data["infinity"]), [], []
    else:
        k_inf = None
        try:
            reps = [E.point_from_json(o["rep"]) for o in data["orbits"]]
            mults = [int(o.get("mult", 1)) for o in data["orbits"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"--divisor: malformed orbit entry ({exc})") from exc
    n_orbits = args.orbits if args.orbits is not None else (len(d_reps) if d_reps else None)
    if n_orbits is None:
        raise ParseError("quasi-cyclic families need --orbits or --points")
    spec = QCSpec(sigma, n_orbits, reps, mults, int(data.get("c", 0)), k_inf, d_reps,
                  args.seed, args.subfield_degree)
    return spec, data


def _build(args, inputs: Inputs, family: str) -> tuple[dict, str | None]:
    E = _curve(inputs, args)
    if family in ("qc-ssde", "qc-goppa-like"):
        sigma = _sigma(E, inputs, args)
        spec, data = _qc_spec(E, inputs, args, sigma)
        if family == "qc-ssde":
            res = qc_ssde(spec)
            out = _code_payload(res.code, family, res.points, E, res.parity_check)
            csv_rows = res.parity_check
        else:
            g_reps = [E.point_from_json(p) for p in data["g_orbits"]] if "g_orbits" in data else None
            res = qc_goppa_like(spec, g_reps, data.get("t_star"))
            out = _code_payload(res.code, family, res.points, E)
            csv_rows = res.code.generator
        out["ell"] = res.ell
        out["subfield_bound"] = res.subfield_bound()
        out["quasi_cyclic"] = codes.is_quasi_cyclic(res.code, res.ell)
        return out, codes.matrix_to_csv(res.code.field, csv_rows)
    G = _divisor(E, inputs.load("divisor", args.divisor))
    if G.degree <= 0:
        raise ValidationError(f"deg(G) = {G.degree} must be positive")
    if args.points is not None:
        pts = _points(E, inputs.load("points", args.points))
    else:
        pts = None
    if family in ("onepoint", "multipoint"):
        if pts is None:
            pts = _default_support(E, G.support)
        C = evaluation_code(EvaluationSpec(E, pts, G, basis_for(G, args.method)))
        return _code_payload(C, family, pts, E), codes.matrix_to_csv(C.field, C.generator)
    g = CurveFunction.from_json(E, inputs.load("function", args.function))
    if pts is None:
        pts = [P for P in _default_support(E, G.support) if g.valuation(P) == 0]
    res = goppa_like(GoppaLikeSpec(E, pts, G, g, args.subfield_degree))
    return _code_payload(res.code, family, pts, E), codes.matrix_to_csv(res.code.field, res.code.generator)


def cmd_code_build(args, inputs: Inputs) -> tuple[dict, str | None]:
    if args.family is None:
        raise ParseError(f"--family is required, one of {', '.join(FAMILIES)}")
    return _build(args, inputs, args.family)


def cmd_ssde_build(args, inputs: Inputs) -> tuple[dict, str | None]:
    return _build(args, inputs, "qc-ssde")


def _load_code(inputs: Inputs, args) -> codes.LinearCode:
    data = inputs.load("code", args.code)
    if isinstance(data, dict) and "code" in data:
        data = data["code"]
    try:
        return codes.LinearCode.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"--code: expected a code JSON with 'field' and 'generator' ({exc})") from exc


def cmd_code_verify(args, inputs: Inputs) -> tuple[dict, str | None]:
    C = _load_code(inputs, args)
    out: dict[str, Any] = {"n": C.n, "k": C.k, "dual_k": C.n - C.k}
    if args.ell is not None:
        form = codes.block_circulant_form(C, args.ell)
        out["quasi_cyclic"] = form.violation is None
        out["block_circulant"] = form.ok
    if C.field.order ** C.k <= codes.MIN_DISTANCE_CAP:
        out["min_distance"] = codes.min_distance_exhaustive(C)
    return out, None


def cmd_distinguish_bound(args, inputs: Inputs) -> tuple[dict, str | None]:
    if None in (args.q, args.m, args.n):
        raise ParseError("distinguish-bound needs --q, --m and --n")
    rows = sweep(args.q, args.m, args.n, args.k_offset)
    best = largest_distinguishable_s(args.q, args.m, args.n, args.k_offset)
    out = {"q": args.q, "m": args.m, "n": args.n, "k_offset": args.k_offset, "largest_distinguishable": best,
           "rows": [{"s_inf": r.s_inf, "k": r.k, "bound": r.bound, "n": r.n, "verdict": r.verdict} for r in rows]}
    lines = ["s_inf,bound,n,verdict"] + [f"{r.s_inf},{r.bound},{r.n},{r.verdict}" for r in rows]
    return out, "\n".join(lines) + "\n"


def cmd_distinguish_square(args, inputs: Inputs) -> tuple[dict, str | None]:
    C = _load_code(inputs, args)
    params = None
    if args.q is not None and args.m is not None and args.k is not None:
        params = BoundParams(args.q, args.m, C.n, args.k, s=args.s, s_star=args.s_star, s_inf=args.s_inf)
    report = empirical_square_report(C, params, args.kind)
    return report.to_json(), None


HANDLERS = {
    "curve-info": cmd_curve_info,
    "rr-basis": cmd_rr_basis,
    "code-build": cmd_code_build,
    "code-verify": cmd_code_verify,
    "ssde-build": cmd_ssde_build,
    "distinguish-bound": cmd_distinguish_bound,
    "distinguish-square": cmd_distinguish_square,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellcode", description="Elliptic-curve AG codes: bases, families, distinguishers.")
    parser.add_argument("--version", action="version", version=f"ellcode {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--curve", help="curve JSON (file path or inline)")
    parser.add_argument("--divisor", help="divisor JSON (file path or inline)")
    parser.add_argument("--points", help="evaluation points or D orbit representatives (JSON list)")
    parser.add_argument("--function", help="function g for goppa-like (JSON)")
    parser.add_argument("--code", help="code JSON produced by code-build")
    parser.add_argument("--family", choices=FAMILIES)
    parser.add_argument("--method", default="auto", choices=("auto", "taylor", "solve", "ramified"))
    parser.add_argument("--sigma", help="automorphism JSON with u, r, s, t")
    parser.add_argument("--ell", type=int, help="automorphism order for quasi-cyclic families")
    parser.add_argument("--orbits", type=int, help="number of D orbits for quasi-cyclic families")
    parser.add_argument("--subfield-degree", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--q", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--s", type=int)
    parser.add_argument("--s-star", type=int)
    parser.add_argument("--s-inf", type=int)
    parser.add_argument("--kind", default="general", choices=("general", "one_point"))
    parser.add_argument("--k-offset", type=int, default=0)
    parser.add_argument("--out", help="output path (stdout when omitted)")
    parser.add_argument("--format", default="json", choices=("json", "csv"))
    return parser


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ellcode-", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror}") from exc


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        inputs = Inputs()
        payload, csv_text = HANDLERS[args.command](args, inputs)
        if args.format == "csv":
            if csv_text is None:
                raise ParseError(f"{args.command} has no CSV output; use --format json")
            text = csv_text
        else:
            text = _dumps(payload)
        if args.out:
            _atomic_write(args.out, text)
            prov = {"command": args.command, "inputs": dict(sorted(inputs.hashes.items())),
                    "seed": args.seed, "version": __version__, "format": args.format}
            _atomic_write(args.out + ".provenance.json", _dumps(prov))
        else:
            stdout.write(text)
        return 0
    except EllcodeError as exc:
        report = exc.to_dict()
        if not isinstance(exc, (ParseError, IoError, ValidationError)):
            report = {"error": "ValidationError", "module": exc.module, "cause": type(exc).__name__,
                      "message": str(exc)}
        stderr.write(json.dumps(report, sort_keys=True) + "\n")
        if isinstance(exc, ParseError):
            return EXIT_PARSE
        if isinstance(exc, IoError):
            return EXIT_IO
        return EXIT_VALIDATION


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
