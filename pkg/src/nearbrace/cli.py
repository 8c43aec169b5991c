"""Command-line front end.

Every subcommand writes one report document. The structured form is
``{"command", "inputs", "verdicts", "witnesses", "info", "artifacts"}`` and is
byte-identical across identical invocations; the text form adds wall time.
Artifacts are interchange documents, so subcommands compose through pipes.

Exit codes: 0 all verdicts true, 1 some verdict false, 2 malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import codec
from .braces import (
    ConstructionError,
    NearBrace,
    addition_from_sigma,
    shift_by,
    shift_to_skew,
    structural_report,
    trivial_near_brace,
    validate_near_brace,
)
from .enumeration import EXHAUSTIVE_MAX_ORDER, enumerate_near_braces
from .gaussian import QParams, format_qgauss, qoi_braid_check, qoi_membership, qoi_sample
from .groups import GroupTable, InvalidStructureError, as_table, build_standard, validate_group
from .params import NonConstantError, admissible_params, make_triple, right_distributive_set
from .pbraiding import p_braiding_report
from .solutions import (
    BraidMap,
    analyze_solution,
    build_inverse,
    build_solution,
    gv_solution,
    inverse_pair_witness,
    rump_check,
    twist_solutions,
)


class UsageError(Exception):
    """Malformed input; exit code 2."""

    def __init__(self, message: str, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    artifacts: list = field(default_factory=list)

    def witness(self, check: str, value) -> None:
        self.witnesses.append({"check": check, "witness": _plain(value)})

    def to_json(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "verdicts": self.verdicts,
                "witnesses": self.witnesses, "info": self.info, "artifacts": self.artifacts}

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


# -- input handling -------------------------------------------------------------------


class _Inputs:
    def __init__(self, args):
        self.args = args
        self._doc = None

    def raw(self) -> dict:
        if self._doc is not None:
            return self._doc
        path = self.args.input
        if path is None or path == "-":
            text, name = sys.stdin.read(), "<stdin>"
        else:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
            name = path
        self.digest = {name: hashlib.sha256(text.encode()).hexdigest()}
        try:
            self._doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"input is not valid JSON: {exc}") from None
        if not isinstance(self._doc, dict):
            raise UsageError("input must be a JSON object")
        return self._doc

    def document(self, *kinds: str) -> dict:
        """A bare document of one of ``kinds``, or the first such artifact of a report."""
        doc = self.raw()
        if "artifacts" in doc and "kind" not in doc:
            for art in doc["artifacts"]:
                if isinstance(art, dict) and art.get("kind") in kinds:
                    return art
            raise UsageError(f"report carries no {' or '.join(kinds)} artifact")
        if doc.get("kind") not in kinds:
            raise UsageError(f"expected a {' or '.join(kinds)} document, got kind {doc.get('kind')!r}")
        return doc

    def load(self, *kinds: str):
        try:
            return codec.from_doc(self.document(*kinds))
        except codec.CodecError as exc:
            raise UsageError(str(exc), exc.diagnostics) from None


def _group(spec: str) -> GroupTable:
    try:
        return build_standard(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _element(n: int, v: int, name: str) -> int:
    if not 0 <= v < n:
        raise UsageError(f"--{name} {v} is outside 0..{n - 1}")
    return v


def _brace(inp: _Inputs) -> NearBrace:
    obj = inp.load("nearbrace", "solution")
    if isinstance(obj, BraidMap):
        if obj.brace is None:
            raise UsageError("solution document carries no near brace")
        return obj.brace
    return obj


def _triple_args(nb: NearBrace, args) -> tuple[int, int, int]:
    for name in ("z1", "z2", "xi"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")
    return tuple(_element(nb.n, getattr(args, k), k) for k in ("z1", "z2", "xi"))


def _structure_witness(rep: Report, diag) -> None:
    for name, wit in diag.failures:
        rep.witness(name, wit)


# -- group ------------------------------------------------------------------------------


def cmd_group_build(args, inp, rep: Report) -> None:
    g = _group(args.group)
    rep.info["order"] = g.order
    if args.print_labels:
        rep.info["labels"] = {str(i): lab for i, lab in enumerate(g.labels)}
    rep.artifacts.append(codec.to_doc(g))


def _raw_table(doc: dict, key: str) -> np.ndarray:
    try:
        return as_table(doc[key])
    except KeyError:
        raise UsageError(f"missing field {key!r}") from None
    except (TypeError, ValueError) as exc:
        raise UsageError(f"field {key!r}: {exc}") from None


def cmd_group_validate(args, inp, rep: Report) -> None:
    doc = inp.document("group")
    table = _raw_table(doc, "table")
    diag = validate_group(table.shape[0], table)
    rep.verdicts["group"] = diag.ok
    _structure_witness(rep, diag)


# -- brace ------------------------------------------------------------------------------


def cmd_brace_validate(args, inp, rep: Report) -> None:
    doc = inp.document("nearbrace")
    add, mul = _raw_table(doc, "add"), _raw_table(doc, "mul")
    if add.shape != mul.shape:
        raise UsageError("add and mul tables differ in shape")
    n = add.shape[0]
    da, dm = validate_group(n, add), validate_group(n, mul)
    rep.verdicts["add_group"], rep.verdicts["mul_group"] = da.ok, dm.ok
    for prefix, d in (("add.", da), ("mul.", dm)):
        for name, wit in d.failures:
            rep.witness(prefix + name, wit)
    if da.ok and dm.ok:
        dn = validate_near_brace(GroupTable(add), GroupTable(mul))
        rep.verdicts["distributivity"] = dn.ok
        _structure_witness(rep, dn)


def cmd_brace_trivial(args, inp, rep: Report) -> None:
    g = _group(args.group)
    kappa = _element(g.order, args.kappa, "kappa")
    try:
        nb = trivial_near_brace(g, kappa)
    except ConstructionError as exc:
        rep.verdicts["central"] = False
        rep.witness(exc.axiom, exc.witness)
        return
    rep.artifacts.append(codec.to_doc(nb))


def cmd_brace_from_sigma(args, inp, rep: Report) -> None:
    g = _group(args.group)
    fam = inp.load("sigma")
    if fam.n != g.order:
        raise UsageError("sigma family and group differ in order")
    try:
        nb = addition_from_sigma(g, fam)
    except ConstructionError as exc:
        rep.verdicts[exc.axiom] = False
        rep.witness(exc.axiom, exc.witness)
        rep.info["error"] = str(exc)
        return
    rep.verdicts["near_brace"] = True
    rep.artifacts.append(codec.to_doc(nb))


def cmd_brace_shift(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    if args.by is None:
        rep.artifacts.append(codec.to_doc(shift_to_skew(nb)))
        return
    t = _element(nb.n, args.by, "by")
    if not nb.is_skew:
        raise UsageError("--by needs a skew brace input (zero equal to one)")
    rep.artifacts.append(codec.to_doc(shift_by(nb, t)))


def cmd_brace_enumerate(args, inp, rep: Report) -> None:
    g = _group(args.group)
    if g.order > args.max_order:
        raise UsageError(f"order {g.order} exceeds --max-order {args.max_order}")
    found = enumerate_near_braces(g, args.limit, skew_only=args.skew_only, max_order=args.max_order)
    rep.info["count"] = len(found)
    rep.info["skew"] = sum(nb.is_skew for nb in found)
    rep.artifacts.extend(codec.to_doc(nb) for nb in found)


def cmd_brace_report(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    sr = structural_report(nb)
    for name, chk in sr.as_dict().items():
        rep.info[name] = chk.ok
        if not chk.ok and chk.witness and name not in ("is_skew", "is_singular"):
            rep.witness(name, chk.witness)
    # required identities; the singular ones only when the brace is singular
    rep.verdicts["distributivity"] = sr.distributivity.ok
    rep.verdicts["negation_identity"] = sr.negation_identity.ok
    rep.verdicts["ternary_distributivity"] = sr.ternary_distributivity.ok
    rep.verdicts["singular_identities"] = (not sr.is_singular.ok) or sr.singular_identities_hold


# -- params -----------------------------------------------------------------------------


def cmd_params_list(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    rep.info["right_distributive"] = right_distributive_set(nb)
    rep.info["triples"] = [p.to_json() for p in admissible_params(nb)]


def cmd_params_check(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    z1, z2, xi = _triple_args(nb, args)
    try:
        p = make_triple(nb, z1, z2, xi)
    except NonConstantError as exc:
        rep.verdicts["admissible"] = False
        rep.witness(exc.which, [exc.a1, exc.a2, *exc.values])
        return
    except ValueError as exc:
        rep.verdicts["admissible"] = False
        rep.witness("right_distributive", [z1, z2, xi])
        rep.info["error"] = str(exc)
        return
    rep.verdicts["admissible"] = True
    rep.info["params"] = p.to_json()


# -- solve -----------------------------------------------------------------------------


def _params_or_fail(nb: NearBrace, args, rep: Report):
    z1, z2, xi = _triple_args(nb, args)
    try:
        return make_triple(nb, z1, z2, xi)
    except NonConstantError as exc:
        rep.verdicts["admissible"] = False
        rep.witness(exc.which, [exc.a1, exc.a2, *exc.values])
    except ValueError as exc:
        rep.verdicts["admissible"] = False
        rep.info["error"] = str(exc)
    return None


def _analysis(m: BraidMap, rep: Report, group=None) -> None:
    sr = analyze_solution(m, group)
    rep.verdicts["braid_ok"] = sr.braid_ok
    rep.verdicts["nondegenerate"] = sr.nondegenerate
    for k in ("c1_ok", "c2_ok", "c3_ok", "involutive"):
        rep.info[k] = getattr(sr, k)
    if sr.multiplicative is not None:
        rep.info["multiplicative"] = sr.multiplicative
    for name in sorted(sr.witnesses):
        rep.witness(name, sr.witnesses[name])


def cmd_solve_build(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    p = _params_or_fail(nb, args, rep)
    if p is None:
        return
    rep.verdicts["admissible"] = True
    rep.artifacts.append(codec.solution_to_doc(build_solution(nb, p)))


def cmd_solve_analyze(args, inp, rep: Report) -> None:
    m = inp.load("solution")
    _analysis(m, rep, m.brace)
    rep.artifacts.append(codec.solution_to_doc(m, with_report=False))


def cmd_solve_invert(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    p = _params_or_fail(nb, args, rep)
    if p is None:
        return
    m, w = build_solution(nb, p), build_inverse(nb, p)
    wit = inverse_pair_witness(m, w)
    rep.verdicts["inverse_pair"] = wit is None
    if wit is not None:
        rep.witness(wit[0], wit[1])
    rep.artifacts.append(codec.solution_to_doc(w))


def cmd_solve_gv(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    if not nb.is_skew:
        raise UsageError("gv needs a skew brace input (zero equal to one)")
    m = gv_solution(nb)
    _analysis(m, rep, nb)
    rep.artifacts.append(codec.solution_to_doc(m))


def cmd_solve_rump(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    if not nb.is_brace:
        raise UsageError("rump needs a brace input (zero equal to one, abelian addition)")
    rr = rump_check(nb)
    rep.verdicts.update(sigma_matches=rr.sigma_matches, braid_ok=rr.braid_ok,
                        nondegenerate=rr.nondegenerate, involutive=rr.involutive)


def cmd_solve_twist(args, inp, rep: Report) -> None:
    nb = _brace(inp)
    z = _element(nb.n, args.z, "z")
    if nb.n > args.max_order:
        raise UsageError(f"order {nb.n} exceeds --max-order {args.max_order}")
    try:
        found = twist_solutions(nb, z, args.max_order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.info["count"] = len(found)
    rep.info["first"] = list(found[0]) if found else None
    rep.info["identity_found"] = tuple(range(nb.n)) in found
    # a twist map can only exist when zero equals one
    rep.verdicts["twist_lemma"] = nb.is_skew or not found
    if found and not nb.is_skew:
        rep.witness("twist_lemma", found[0])


# -- pbraid ----------------------------------------------------------------------------


def cmd_pbraid_check(args, inp, rep: Report) -> None:
    m = inp.load("solution")
    if m.brace is None:
        if args.group is None:
            raise UsageError("solution has no embedded near brace; pass --group")
        from .pbraiding import check_p_braiding

        g = _group(args.group)
        if g.order != m.n:
            raise UsageError("group and solution differ in order")
        pr = check_p_braiding(m, g)
    else:
        pr = p_braiding_report(m.brace, m)
    rep.verdicts.update(multiplicative=pr.multiplicative_ok, f_factors=pr.f_factors,
                        g_factors=pr.g_factors, f_bijective=pr.f_bijective,
                        g_bijective=pr.g_bijective, nondegenerate=pr.nondegenerate)
    if pr.closed_form_match_f is not None:
        rep.verdicts["closed_form_f"] = pr.closed_form_match_f
        rep.verdicts["closed_form_g"] = pr.closed_form_match_g
    for name in sorted(pr.witnesses):
        rep.witness(name, pr.witnesses[name])
    if pr.f_factors and pr.g_factors:
        rep.artifacts.append({"kind": "p_braiding", "order": m.n, **pr.to_json()})


# -- qoi -------------------------------------------------------------------------------


def cmd_qoi_check(args, inp, rep: Report) -> None:
    try:
        p = QParams.parse(args.z1, args.z2, args.xi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    qr = qoi_braid_check(p, seed=args.seed, count=args.samples)
    js = qr.to_json()
    rep.verdicts.update(constants=qr.constants_ok, braid=qr.braid_ok,
                        multiplicative=qr.multiplicative_ok, nondegenerate=qr.nondegenerate_ok,
                        closure=qr.closure_ok, inverse=qr.inverse_ok)
    rep.info.update(params=js["params"], c1=js["c1"], c2=js["c2"], triples=js["triples"],
                    displayed_braid=js["displayed_braid_ok"])
    for name in sorted(js["witnesses"]):
        rep.witness(name, js["witnesses"][name])


def cmd_qoi_sample(args, inp, rep: Report) -> None:
    vals = qoi_sample(args.seed, args.bound, args.samples)
    rep.verdicts["members"] = all(qoi_membership(v) for v in vals)
    rep.info["samples"] = [format_qgauss(v) for v in vals]


# -- parser -----------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="input document (default: stdin)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "structured"), default="structured")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-order", type=int, default=EXHAUSTIVE_MAX_ORDER)


def _triple(p: argparse.ArgumentParser, kind=int) -> None:
    p.add_argument("--z1", type=kind)
    p.add_argument("--z2", type=kind)
    p.add_argument("--xi", type=kind)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nearbrace", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="area", required=True)

    def leaf(area, name, fn, help_):
        sp = area.add_parser(name, help=help_)
        _common(sp)
        sp.set_defaults(func=fn)
        return sp

    g = top.add_parser("group", help="finite groups").add_subparsers(dest="action", required=True)
    sp = leaf(g, "build", cmd_group_build, "build a standard group")
    sp.add_argument("--group", required=True, help="e.g. cyclic:4, dihedral:8, cyclic:2*symmetric:3")
    sp.add_argument("--print-labels", action="store_true")
    leaf(g, "validate", cmd_group_validate, "check the group axioms of a table")

    b = top.add_parser("brace", help="near braces").add_subparsers(dest="action", required=True)
    leaf(b, "validate", cmd_brace_validate, "check a near brace document")
    sp = leaf(b, "trivial", cmd_brace_trivial, "trivial near brace a+b = a*k^-1*b")
    sp.add_argument("--group", required=True)
    sp.add_argument("--kappa", type=int, required=True)
    sp = leaf(b, "from-sigma", cmd_brace_from_sigma, "addition from a sigma family document")
    sp.add_argument("--group", required=True)
    sp = leaf(b, "shift", cmd_brace_shift, "shift to the skew brace, or back with --by")
    sp.add_argument("--by", type=int)
    sp = leaf(b, "enumerate", cmd_brace_enumerate, "all near braces on a group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--skew-only", action="store_true")
    leaf(b, "report", cmd_brace_report, "structural identities")

    pa = top.add_parser("params", help="parameter triples").add_subparsers(dest="action", required=True)
    leaf(pa, "list", cmd_params_list, "right-distributive set and admissible triples")
    _triple(leaf(pa, "check", cmd_params_check, "check one triple"))

    s = top.add_parser("solve", help="braid solutions").add_subparsers(dest="action", required=True)
    _triple(leaf(s, "build", cmd_solve_build, "build the solution of a triple"))
    leaf(s, "analyze", cmd_solve_analyze, "verify a solution document")
    _triple(leaf(s, "invert", cmd_solve_invert, "build and verify the inverse solution"))
    leaf(s, "gv", cmd_solve_gv, "the skew brace solution")
    leaf(s, "rump", cmd_solve_rump, "the (1,1,1) solution on a brace")
    sp = leaf(s, "twist", cmd_solve_twist, "exhaustive twist map search")
    sp.add_argument("--z", type=int, required=True)

    pb = top.add_parser("pbraid", help="p-braiding").add_subparsers(dest="action", required=True)
    sp = leaf(pb, "check", cmd_pbraid_check, "p-braiding conditions of a solution")
    sp.add_argument("--group")

    q = top.add_parser("qoi", help="the Gaussian rational example").add_subparsers(dest="action", required=True)
    sp = leaf(q, "check", cmd_qoi_check, "sampled exact verification")
    _triple(sp, str)
    sp.add_argument("--samples", type=int, default=200)
    sp = leaf(q, "sample", cmd_qoi_sample, "draw members")
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--bound", type=int, default=6)
    return parser


def _render_text(rep: Report, elapsed: float) -> str:
    lines = [f"command: {rep.command}"]
    for k, v in rep.verdicts.items():
        lines.append(f"  {'PASS' if v else 'FAIL'}  {k}")
    for w in rep.witnesses:
        lines.append(f"  witness {w['check']}: {w['witness']}")
    for k, v in rep.info.items():
        lines.append(f"  {k}: {v}")
    if rep.artifacts:
        lines.append(f"  artifacts: {len(rep.artifacts)}")
    lines.append(f"  wall time: {elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(command=" ".join(argv))
    inp = _Inputs(args)
    start = time.perf_counter()
    try:
        args.func(args, inp, rep)
    except UsageError as exc:
        err = {"command": rep.command, "error": str(exc)}
        if exc.diagnostics is not None:
            err["diagnostics"] = exc.diagnostics.to_json()
        print(json.dumps(err), file=sys.stderr)
        return 2
    except InvalidStructureError as exc:
        print(json.dumps({"command": rep.command, "error": str(exc),
                          "diagnostics": exc.diagnostics.to_json()}), file=sys.stderr)
        return 2
    rep.inputs = getattr(inp, "digest", {})
    elapsed = time.perf_counter() - start
    if args.format == "structured":
        _emit(args, json.dumps(rep.to_json()) + "\n")
    else:
        _emit(args, _render_text(rep, elapsed))
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
