"""Command-line front end.

Every command writes one JSON report to stdout (or ``--out``) and a short
human-readable summary to stderr.  Exit status: 0 on success, 1 on a
negative result (e.g. a sequence that is not regular), 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .clements import CapError, CapVector, LppInfeasible
from .egh import (
    CertificateNotFound,
    DegreeSequenceRejected,
    Trust,
    choose_degree_sequence,
    egh_witness,
    verify_witness,
)
from .hilbert import default_verification_bound, hilbert_function, hilbert_series, q_polynomial
from .ideals import IdealError, MonomialIdeal, minimal_vertex_cover, parse_ideal_text
from .linforms import (
    LinearFormError,
    contained_in,
    monomial_text,
    parse_product,
    search_regular_sequence,
    verify_regular_sequence,
)
from .monomials import MonomialError
from .simplicial import (
    ComplexError,
    SimplicialComplex,
    TransferError,
    VertexPartition,
    balanced_transfer,
    complex_of,
    f_vector,
    h_vector,
    is_balanced,
    is_cohen_macaulay,
    is_prime,
    polarize,
    reduced_homology_ranks,
    same_h,
    stanley_reisner,
)

ENV_MAX_DEGREE = "EGHFORGE_MAX_DEGREE"

COMMANDS = {
    # command: (input file names, allowed option flags)
    "hilbert": (["ideal"], ["max_degree"]),
    "series": (["ideal"], ["max_degree"]),
    "height": (["ideal"], []),
    "regseq-verify": (["products", "ideal?"], []),
    "regseq-search": (["ideal"], ["caps", "seed"]),
    "egh": (["ideal"], ["caps", "trust", "seed", "max_degree"]),
    "egh-verify": (["ideal", "witness"], ["caps"]),
    "sr": (["complex"], []),
    "complex": (["ideal"], []),
    "fvec": (["complex"], []),
    "hvec": (["complex"], []),
    "polarize": (["ideal"], []),
    "cm-check": (["complex"], ["char"]),
    "balanced-check": (["complex", "partition"], []),
    "transfer": (["complex"], ["caps", "trust", "char", "seed"]),
}


class InputError(Exception):
    pass


@dataclass
class CommandRequest:
    command: str
    inputs: list[Path]
    max_degree: Optional[int] = None
    caps: Optional[tuple[int, ...]] = None
    seed: int = 0
    char: int = 2
    trust: Trust = Trust.LINEAR
    out: Optional[Path] = None


def _caps_arg(text: str) -> tuple[int, ...]:
    try:
        caps = tuple(int(a) for a in text.split(",") if a.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"caps must be comma-separated integers: {text!r}")
    if not caps:
        raise argparse.ArgumentTypeError("caps must not be empty")
    if any(a < 1 for a in caps):
        raise argparse.ArgumentTypeError("caps must be positive")
    if any(a > b for a, b in zip(caps, caps[1:])):
        raise argparse.ArgumentTypeError("caps must be non-decreasing")
    return caps


def _char_arg(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"characteristic must be an integer: {text!r}")
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} not prime")
    return p


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eghforge",
        description="EGH witnesses for monomial ideals and balanced h-vector transfer.",
    )
    parser.add_argument("--version", action="version", version=f"eghforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (inputs, options) in COMMANDS.items():
        p = sub.add_parser(name)
        for inp in inputs:
            if inp.endswith("?"):
                p.add_argument(inp[:-1], nargs="?", type=Path)
            else:
                p.add_argument(inp, type=Path)
        if "max_degree" in options:
            p.add_argument("--max-degree", type=_nonneg_int, dest="max_degree")
        if "caps" in options:
            p.add_argument("--caps", type=_caps_arg)
        if "seed" in options:
            p.add_argument("--seed", type=int, default=0)
        if "char" in options:
            p.add_argument("--char", type=_char_arg, default=2)
        if "trust" in options:
            p.add_argument("--trust", choices=[t.value for t in Trust], default="linear")
        p.add_argument("--out", type=Path)
    return parser


def parse_request(argv: Sequence[str]) -> CommandRequest:
    """Validated request; argparse exits with status 2 on usage errors."""
    ns = build_parser().parse_args(list(argv))
    inputs = [getattr(ns, inp.rstrip("?")) for inp in COMMANDS[ns.command][0]]
    req = CommandRequest(command=ns.command, inputs=[p for p in inputs if p is not None])
    for opt in COMMANDS[ns.command][1]:
        val = getattr(ns, opt, None)
        if opt == "trust":
            val = Trust(val)
        if val is not None:
            setattr(req, opt, val)
    req.out = ns.out
    if req.max_degree is None and "max_degree" in COMMANDS[ns.command][1]:
        env = os.environ.get(ENV_MAX_DEGREE)
        if env:
            try:
                req.max_degree = _nonneg_int(env)
            except argparse.ArgumentTypeError as exc:
                raise InputError(f"{ENV_MAX_DEGREE}: {exc}") from None
    return req


# -- input loading -----------------------------------------------------------


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _json(path: Path):
    try:
        obj = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    # a full report from this tool carries its payload under "result"
    if isinstance(obj, dict) and obj.get("tool") == "eghforge" and "result" in obj:
        obj = obj["result"]
    return obj


def load_ideal(path: Path) -> MonomialIdeal:
    text = _read(path)
    try:
        if text.lstrip().startswith("{"):
            obj = _json(path)
            if "gens" not in obj:
                obj = obj.get("witness", obj.get("ideal", obj))
            return MonomialIdeal.from_json(obj)
        return parse_ideal_text(text)
    except (IdealError, MonomialError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_complex(path: Path) -> SimplicialComplex:
    obj = _json(path)
    if isinstance(obj, dict) and "facets" not in obj and "complex" in obj:
        obj = obj["complex"]
    try:
        return SimplicialComplex.from_json(obj)
    except ComplexError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_partition(path: Path) -> VertexPartition:
    obj = _json(path)
    if isinstance(obj, dict) and "blocks" not in obj and "partition" in obj:
        obj = obj["partition"]
    try:
        return VertexPartition.from_json(obj)
    except (KeyError, TypeError, ComplexError) as exc:
        raise InputError(f"{path}: bad partition: {exc}") from None


def load_products(path: Path):
    obj = _json(path)
    if isinstance(obj, list):
        texts = obj
        n = max((int(tok) for s in texts for tok in _var_indices(s)), default=1)
    elif isinstance(obj, dict) and "products" in obj:
        texts, n = obj["products"], obj.get("vars")
        if n is None:
            n = max((int(tok) for s in texts for tok in _var_indices(s)), default=1)
    else:
        raise InputError(f"{path}: expected a list of products or {{'vars', 'products'}}")
    try:
        return int(n), [parse_product(s, int(n)) for s in texts]
    except (LinearFormError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _var_indices(s: str) -> list[str]:
    return re.findall(r"x(\d+)", s)


# -- commands ----------------------------------------------------------------


def _ints(xs) -> list[str]:
    return [str(x) for x in xs]


def _cmd_hilbert(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    D = default_verification_bound(I) if req.max_degree is None else req.max_degree
    values = [hilbert_function(I, d) for d in range(D + 1)]
    return 0, {"ideal": I.to_json(), "max_degree": D, "values": _ints(values)}, {}


def _cmd_series(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    hs = hilbert_series(I)
    D = default_verification_bound(I) if req.max_degree is None else req.max_degree
    agrees = hs.expand(D) == [hilbert_function(I, d) for d in range(D + 1)]
    out = {"ideal": I.to_json(), "series": hs.to_json(), "text": str(hs)}
    if not I.is_unit():
        Q, dim = q_polynomial(I)
        out["reduced"] = {"numerator": _ints(Q), "denom_power": dim}
    return 0, out, {"expansion_matches_hilbert_function": agrees}


def _cmd_height(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    cover = sorted(minimal_vertex_cover(I))
    return 0, {"ideal": I.to_json(), "height": len(cover), "cover": [f"x{v}" for v in cover]}, {}


def _cmd_regseq_verify(req: CommandRequest):
    n, fs = load_products(req.inputs[0])
    cert = verify_regular_sequence(fs)
    out = {"vars": n, "products": [str(f) for f in fs], "certificate": cert.to_json(fs)}
    checks = {"regular": cert.regular}
    if len(req.inputs) > 1:
        I = load_ideal(req.inputs[1])
        if I.n != n:
            raise InputError("products and ideal live in different rings")
        checks["contained_in_ideal"] = all(contained_in(f, I) for f in fs)
    return (0 if all(checks.values()) else 1), out, checks


def _cmd_regseq_search(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    if req.caps is None:
        raise InputError("regseq-search needs --caps")
    found = search_regular_sequence(I, req.caps, seed=req.seed)
    out = {"ideal": I.to_json(), "caps": list(req.caps), "found": found is not None}
    checks = {}
    if found is not None:
        out["products"] = [str(f) for f in found]
        out["readable"] = [monomial_text(f) for f in found]
        checks["contained_in_ideal"] = all(contained_in(f, I) for f in found)
        checks["regular"] = verify_regular_sequence(found).regular
    return (0 if found is not None else 1), out, checks


def _cmd_egh(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    choice = choose_degree_sequence(I, req.caps, req.trust, seed=req.seed)
    out: dict = {"ideal": I.to_json(), "trust": choice.trust.value}
    if choice.certificate is not None:
        out["certificate"] = [str(f) for f in choice.certificate]
        out["certificate_readable"] = [monomial_text(f) for f in choice.certificate]
    try:
        res = egh_witness(I, choice.ring, req.max_degree)
    except LppInfeasible as exc:
        out["caps"] = list(choice.ring.caps)
        out["infeasible"] = exc.to_json()
        return 1, out, {"feasible": False}
    out.update(res.to_json())
    report = verify_witness(I, res.witness, choice.ring)
    checks = {"certified": res.certified, **{k: v for k, v in report.to_json().items() if k != "passed"}}
    if choice.certificate is not None:
        checks["certificate_regular"] = verify_regular_sequence(choice.certificate).regular
        checks["certificate_in_ideal"] = all(contained_in(f, I) for f in choice.certificate)
    return (0 if all(checks.values()) else 1), out, checks


def _cmd_egh_verify(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    W = load_ideal(req.inputs[1])
    caps = req.caps
    if caps is None:
        obj = _json(req.inputs[1])
        if isinstance(obj, dict) and "caps" in obj:
            caps = tuple(obj["caps"])
    if caps is None:
        raise InputError("egh-verify needs --caps or a witness report carrying 'caps'")
    ring = CapVector(I.n, caps)
    report = verify_witness(I, W, ring)
    out = {"ideal": I.to_json(), "witness": W.to_json(), "caps": list(caps),
           "certified": report.passed}
    checks = {k: v for k, v in report.to_json().items() if k != "passed"}
    return (0 if report.passed else 1), out, checks


def _cmd_sr(req: CommandRequest):
    cx = load_complex(req.inputs[0])
    I = stanley_reisner(cx)
    return 0, {"ideal": I.to_json(), "labels": list(cx.vertices)}, {}


def _cmd_complex(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    try:
        cx = complex_of(I)
    except ComplexError as exc:
        raise InputError(str(exc)) from None
    roundtrip = stanley_reisner(cx) == I if all(g.degree > 1 for g in I.gens) else None
    checks = {} if roundtrip is None else {"stanley_reisner_roundtrip": roundtrip}
    return 0, {"complex": cx.to_json()}, checks


def _cmd_fvec(req: CommandRequest):
    cx = load_complex(req.inputs[0])
    return 0, {"f_vector": _ints(f_vector(cx)), "dim": cx.dim}, {}


def _cmd_hvec(req: CommandRequest):
    cx = load_complex(req.inputs[0])
    h = h_vector(cx)
    Q, _ = q_polynomial(stanley_reisner(cx))
    return 0, {"h_vector": _ints(h), "dim": cx.dim}, {"matches_hilbert_series": same_h(Q, h)}


def _cmd_polarize(req: CommandRequest):
    I = load_ideal(req.inputs[0])
    pol = polarize(I)
    same = q_polynomial(I)[0] == q_polynomial(pol.ideal)[0]
    return 0, {
        "ideal": pol.ideal.to_json(),
        "names": list(pol.names),
        "blocks": [list(b) for b in pol.blocks],
    }, {"q_polynomial_preserved": same}


def _cmd_cm_check(req: CommandRequest):
    cx = load_complex(req.inputs[0])
    cm = is_cohen_macaulay(cx, req.char)
    out = {
        "field": f"GF({req.char})",
        "cohen_macaulay": cm,
        "reduced_homology": _ints(reduced_homology_ranks(cx, req.char)),
    }
    return (0 if cm else 1), out, {"cohen_macaulay": cm}


def _cmd_balanced_check(req: CommandRequest):
    cx = load_complex(req.inputs[0])
    P = load_partition(req.inputs[1])
    try:
        ok = is_balanced(cx, P)
    except ComplexError as exc:
        raise InputError(str(exc)) from None
    return (0 if ok else 1), {"balanced": ok, "bounds": list(P.bounds)}, {"balanced": ok}


def _cmd_transfer(req: CommandRequest):
    cx = load_complex(req.inputs[0])
    res = balanced_transfer(cx, req.caps, req.trust, p=req.char, seed=req.seed)
    out = {
        "caps": list(res.caps),
        "field": f"GF({res.characteristic})",
        "h_input": _ints(res.h_input),
        "h_output": _ints(res.h_output),
        "witness": res.witness.to_json(),
        "complex": res.complex.to_json(),
        "partition": res.partition.to_json(res.complex.vertices),
        "notes": res.notes,
    }
    if res.certificate is not None:
        out["certificate"] = [str(f) for f in res.certificate]
    return (0 if res.passed else 1), out, dict(res.checks)


HANDLERS = {
    "hilbert": _cmd_hilbert,
    "series": _cmd_series,
    "height": _cmd_height,
    "regseq-verify": _cmd_regseq_verify,
    "regseq-search": _cmd_regseq_search,
    "egh": _cmd_egh,
    "egh-verify": _cmd_egh_verify,
    "sr": _cmd_sr,
    "complex": _cmd_complex,
    "fvec": _cmd_fvec,
    "hvec": _cmd_hvec,
    "polarize": _cmd_polarize,
    "cm-check": _cmd_cm_check,
    "balanced-check": _cmd_balanced_check,
    "transfer": _cmd_transfer,
}


def execute(req: CommandRequest) -> tuple[int, dict]:
    """Run a request; returns the exit status and the full report."""
    report: dict = {"tool": "eghforge", "version": __version__, "command": req.command,
                    "seed": req.seed}
    try:
        status, result, checks = HANDLERS[req.command](req)
    except InputError as exc:
        status, result, checks = 2, {"error": str(exc)}, {}
    except CertificateNotFound as exc:
        status, result, checks = 1, {"error": str(exc), "kind": "certificate-not-found"}, {}
    except TransferError as exc:
        status, result, checks = 1, {"error": str(exc), "kind": "transfer", "step": exc.step}, {}
    except (DegreeSequenceRejected, CapError, IdealError, MonomialError, LinearFormError,
            ComplexError, ValueError) as exc:
        status, result, checks = 2, {"error": str(exc), "kind": type(exc).__name__}, {}
    report["result"] = result
    report["assertions"] = {k: ("pass" if v else "fail") for k, v in checks.items()}
    report["status"] = status
    return status, report


def _summary(report: dict) -> str:
    lines = [f"eghforge {report['command']}: exit {report['status']}"]
    if "error" in report["result"]:
        lines.append(f"  error: {report['result']['error']}")
    for name, verdict in report["assertions"].items():
        lines.append(f"  {verdict:4}  {name}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        req = parse_request(argv)
    except InputError as exc:
        print(f"eghforge: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    status, report = execute(req)
    text = json.dumps(report, indent=2) + "\n"
    if req.out is not None:
        try:
            req.out.write_text(text)
        except OSError as exc:
            print(f"eghforge: error: {req.out}: {exc.strerror or exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    print(_summary(report), file=sys.stderr)
    return status
