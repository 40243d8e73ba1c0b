"""Command-line entry point.

Every command prints a JSON envelope ``{command, inputs, result, exact}``
with sorted keys.  Exit status: 0 success, 1 domain error (error class name
on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import acceptance, catmap, kzero, penrose, symbolic, tilegeom
from .errors import DomainError
from .qfield import CatLatticeElem, DyadicRat, GoldenInt, QuadExt, approx, encode_lattice, encode_quad, quad_to_lattice


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 2 with usage, like argparse
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _enc(x: Any, with_approx: bool) -> Any:
    if isinstance(x, QuadExt):
        d = encode_quad(x)
        if with_approx:
            d["approx"] = approx(x)
        return d
    if isinstance(x, (GoldenInt, CatLatticeElem, DyadicRat)):
        d = encode_lattice(x)
        if with_approx:
            d["approx"] = approx(x.to_quad())
        return d
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _enc(v, with_approx) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_enc(v, with_approx) for v in x]
    return x


def _emit(command: str, inputs: dict, result: Any, exact: bool, with_approx: bool) -> None:
    env = {"command": command, "inputs": inputs, "result": _enc(result, with_approx), "exact": exact}
    sys.stdout.write(json.dumps(env, sort_keys=True, ensure_ascii=False, indent=2) + "\n")


def _ints(text: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} integers, got {len(vals)}")
    return vals


# penrose ---------------------------------------------------------------------

def _freq_result(t: penrose.FrequencyTable) -> dict:
    return {
        "kind": t.kind,
        "labels": list(t.labels),
        "eigenvalue": t.eigenvalue,
        "ratios": {l: t.hat(l) for l in t.labels},
        "frequencies": {l: {"value": t[l], "lattice": quad_to_lattice(t[l], "golden")} for l in t.labels},
    }


def _freq_table_text(t: penrose.FrequencyTable) -> str:
    rows = [f"{'label':<6} {'frequency':<12} {'ratio':<18} {'approx':<22}"]
    for l in t.labels:
        gi = quad_to_lattice(t[l], "golden")
        rows.append(f"{l:<6} {f'{gi.m}{gi.n:+d}τ':<12} {str(t.hat(l)):<18} {approx(t[l])}")
    return "\n".join(rows) + "\n"


def cmd_penrose(args) -> None:
    if args.action == "freqs":
        t = penrose.frequency_table(args.kind)
        if args.format == "table":
            sys.stdout.write(_freq_table_text(t))
            return
        _emit("penrose freqs", {"kind": args.kind}, _freq_result(t), True, args.approx)
    elif args.action == "motif":
        edges = _ints(args.edges, 7)
        verts = _ints(args.vertices, 7)
        if args.k < 0 or args.n_L < 0 or args.n_S < 0 or min(edges + verts) < 0:
            raise UsageError("counts must be nonnegative")
        val, lat = penrose.motif_frequency(args.k, args.n_L, args.n_S, edges, verts)
        inputs = {"k": args.k, "n_L": args.n_L, "n_S": args.n_S, "edges": edges, "vertices": verts}
        _emit("penrose motif", inputs, {"value": val, "lattice": lat}, True, args.approx)
    elif args.action == "code":
        word = [t.strip() for t in args.word.split(",") if t.strip()]
        patch = penrose.sequence_to_patch(word)
        code = tilegeom.code_of_marked(patch, len(word))
        result = {
            "word": word,
            "patch_tiles": len(patch),
            "tile_counts": dict(zip(("L", "S"), tilegeom.count_tiles(patch))),
            "recovered_code": code,
        }
        try:
            result["recoded"] = penrose.recode(word)
        except DomainError as exc:
            result["recoded"] = None
            result["recode_error"] = type(exc).__name__
        _emit("penrose code", {"word": args.word}, result, True, args.approx)


# tiling ----------------------------------------------------------------------

def _patch(args) -> tilegeom.TrianglePatch:
    if args.inflations < 0:
        raise UsageError("--inflations must be nonnegative")
    return tilegeom.inflate(tilegeom.prototile(args.seed), args.inflations)


def cmd_tiling(args) -> None:
    p = _patch(args)
    nl, ns = tilegeom.count_tiles(p)
    inputs = {"seed": args.seed, "inflations": args.inflations}
    if args.action == "render":
        svg = tilegeom.render_svg(p)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        inputs["out"] = args.out
        _emit("tiling render", inputs, {"polygons": len(p), "tiles": {"L": nl, "S": ns}}, True, args.approx)
        return
    eh, vh = tilegeom.edge_histogram(p), tilegeom.vertex_histogram(p)
    et, vt = penrose.edge_frequencies(), penrose.vertex_frequencies()
    ne, nv = sum(eh.values()) or 1, sum(vh.values()) or 1
    result = {
        "tiles": {"L": nl, "S": ns},
        "L_fraction": f"{nl / (nl + ns):.6f}",
        "edges": {k: {"count": c, "fraction": f"{c / ne:.6f}", "predicted": et.hat(k)} for k, c in eh.items()},
        "vertices": {k: {"count": c, "fraction": f"{c / nv:.6f}", "predicted": vt.hat(k)} for k, c in vh.items()},
        "edge_to_edge": tilegeom.is_edge_to_edge(p),
    }
    _emit("tiling histogram", inputs, result, False, args.approx)


# sft -------------------------------------------------------------------------

def _sft(name: str) -> symbolic.Sft:
    if name == "penrose":
        return penrose.penrose_sft()
    if name == "cat":
        return catmap.cat_sft()
    if name == "cat-doubled":
        return catmap.doubled_model()[0]
    raise UsageError(f"unknown sft {name!r}")


def cmd_sft(args) -> None:
    s = _sft(args.model)
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    count = symbolic.count_words(s, args.n)
    result: dict = {"count": count, "alphabet": list(s.alphabet)}
    if not args.count_only:
        result["words"] = [symbolic.format_word(s, w) for w in symbolic.enumerate_words(s, args.n)]
    _emit("sft words", {"model": args.model, "n": args.n}, result, True, args.approx)


# cat -------------------------------------------------------------------------

def cmd_cat(args) -> None:
    if args.action == "areas":
        m = catmap.cat_model()
        result = {
            "areas": {l: {"value": v, "lattice": quad_to_lattice(v, "cat")} for l, v in zip(m.labels, m.mu)},
            "conditional": [list(r) for r in m.a],
            "lambda_u": m.lambda_u,
            "lambda_s": m.lambda_s,
        }
        _emit("cat areas", {}, result, True, args.approx)
    elif args.action == "grammar":
        s = catmap.cat_sft()
        result = {
            "labels": list(s.alphabet),
            "transition": s.transition.to_int_lists(),
            "allowed": sum(map(sum, s.transition.to_int_lists())),
            "primitive": symbolic.is_primitive(s),
        }
        _emit("cat grammar", {}, result, True, args.approx)
    elif args.action == "cylinder":
        val, lat = catmap.cylinder_measure(args.word)
        _emit("cat cylinder", {"word": args.word}, {"value": val, "lattice": lat}, True, args.approx)
    elif args.action == "stage-dims":
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        _emit("cat stage-dims", {"n": args.n}, {"a": catmap.stage_dims_cat(args.n)}, True, args.approx)


# k0 --------------------------------------------------------------------------

def cmd_k0(args) -> None:
    model = args.model.replace("-", "_")
    grp = kzero.k0_closed_form(model)
    d = grp.diagram
    inputs: dict = {"model": args.model}
    result: dict = {
        "rank": grp.rank,
        "reference_stage": grp.reference_stage,
        "unit_class": list(grp.unit_class) if isinstance(grp.unit_class, tuple) else grp.unit_class,
        "order_functional": list(grp.order_functional) if grp.order_functional else None,
        "scale_bound": grp.scale_bound,
        "cone": grp.cone,
        "scale": grp.scale,
        "embedding": grp.embedding,
    }
    if args.dims is not None:
        if args.dims < 0:
            raise UsageError("--dims must be nonnegative")
        inputs["dims"] = args.dims
        result["stage_dims"] = [list(kzero.stage_dims(d, n)) for n in range(args.dims + 1)]
    if args.member is not None:
        stage = 1 if args.stage is None else args.stage
        if model == "baker" and args.stage is None:
            stage = 0
        vec = _ints(args.member)
        if len(vec) != d.rank(stage):
            raise UsageError(f"stage {stage} of {args.model} has rank {d.rank(stage)}, got {len(vec)} entries")
        x = kzero.DimGroupElement(stage, vec)
        inputs.update({"member": vec, "stage": stage, "check": args.check})
        member: dict = {"coordinates": kzero.coordinates(model, x)}
        if args.check == "positive":
            member["positive"] = kzero.dl_positive(model, x)
        else:
            member["in_scale"] = kzero.dl_in_scale(model, x)
        if grp.order_functional is not None:
            member["functional_value"] = kzero.functional_value(model, x)
        if model in ("penrose", "cat", "baker"):
            member["pi"] = kzero.pi_embed(model, x)
        result["member"] = member
    _emit("k0", inputs, result, True, args.approx)


def cmd_selftest(args) -> int:
    ok = acceptance.run_all(out=lambda line: sys.stdout.write(line + "\n"))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--approx", action="store_true", help="add 20-digit decimal approximations")
    p = _Parser(prog="afsym", description="Exact invariants of Penrose tilings, the cat map and their AF algebras.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    pen = sub.add_parser("penrose", help="frequencies, motifs and codes")
    psub = pen.add_subparsers(dest="action", required=True, parser_class=_Parser)
    f = psub.add_parser("freqs", parents=[common])
    f.add_argument("--kind", choices=["prototile", "edge", "vertex"], default="prototile")
    f.add_argument("--format", choices=["json", "table"], default="json")
    m = psub.add_parser("motif", parents=[common])
    m.add_argument("--k", type=int, default=0, help="number of inflations")
    m.add_argument("--n-L", dest="n_L", type=int, default=0)
    m.add_argument("--n-S", dest="n_S", type=int, default=0)
    m.add_argument("--edges", default="0,0,0,0,0,0,0", help="seven counts in order k,k',d,t,l',r,r'")
    m.add_argument("--vertices", default="0,0,0,0,0,0,0", help="seven counts in order sun,star,A,D,J,Q,K")
    c = psub.add_parser("code", parents=[common])
    c.add_argument("--word", required=True, help="comma-separated L/S word x_0,...,x_n")

    til = sub.add_parser("tiling", help="geometric patches")
    tsub = til.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("render", "histogram"):
        t = tsub.add_parser(name, parents=[common])
        t.add_argument("--seed", choices=["L", "S"], default="L")
        t.add_argument("--inflations", type=int, default=5)
        if name == "render":
            t.add_argument("--out", required=True)

    sft = sub.add_parser("sft", help="subshift word enumeration")
    ssub = sft.add_subparsers(dest="action", required=True, parser_class=_Parser)
    w = ssub.add_parser("words", parents=[common])
    w.add_argument("--model", choices=["penrose", "cat", "cat-doubled"], default="penrose")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--count-only", action="store_true")

    cat = sub.add_parser("cat", help="cat map symbolic model")
    csub = cat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    csub.add_parser("areas", parents=[common])
    csub.add_parser("grammar", parents=[common])
    cy = csub.add_parser("cylinder", parents=[common])
    cy.add_argument("--word", required=True, help="comma-separated symbols, e.g. A,B01,B11")
    sd = csub.add_parser("stage-dims", parents=[common])
    sd.add_argument("--n", type=int, required=True)

    k0 = sub.add_parser("k0", parents=[common], help="scaled dimension groups")
    k0.add_argument("--model", choices=["penrose", "cat", "baker", "compact-unit"], required=True)
    k0.add_argument("--member", help="comma-separated stage vector")
    k0.add_argument("--stage", type=int, help="stage of --member (default: reference stage)")
    k0.add_argument("--check", choices=["positive", "scale"], default="scale")
    k0.add_argument("--dims", type=int, help="print stage dimensions up to this stage")

    sub.add_parser("selftest", help="run the acceptance checks")
    return p


_HANDLERS = {
    "penrose": cmd_penrose,
    "tiling": cmd_tiling,
    "sft": cmd_sft,
    "cat": cmd_cat,
    "k0": cmd_k0,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "approx"):
        args.approx = False
    try:
        if args.cmd == "selftest":
            return cmd_selftest(args)
        _HANDLERS[args.cmd](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"afsym: error: {exc}\n")
        return 2
    except DomainError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
