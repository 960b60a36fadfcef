"""Command-line interface: ``agchar <command> [options]``.

Exit codes: 0 success, 1 a reproduction line failed, 2 validation failure,
3 resource, genericity or catalog failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass

from . import biliaison, charcalc, geometry, pfaffianlab, resolution
from .charcalc import Character, CharacterError
from .geometry import CatalogError, DivisorClass, GeometryError
from .kernels import BACKEND
from .pfaffianlab import GenericityError, ResourceError

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3, 64
SEED_ENV = "AGCHAR_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class RunConfig:
    command: str
    character: Character | None
    bound: int | None
    seed: int
    fmt: str
    catalog_path: str | None


# ------------------------------------------------------------------ input


def _read_character(args, required=True) -> Character | None:
    """Inline ``-c`` wins over ``--file``."""
    n = args.ambient
    if args.character is not None:
        text = args.character.strip()
        if text.startswith(("{", "[")):
            return Character.from_json(json.loads(text), n)
        return Character.parse(text, n)
    if args.file is not None:
        with open(args.file) as fh:
            return Character.from_json(json.load(fh), n)
    if required:
        raise UsageError("a character is required (-c/--character or --file)")
    return None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in re.split(r"[,\s]+", text.strip()) if t]
    except ValueError as exc:
        raise UsageError(f"cannot parse integer list {text!r}") from exc


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from exc
    return 0


def _bound(args, default: int) -> int:
    b = default if args.bound is None else args.bound
    if b < 1:
        raise UsageError("--bound must be positive")
    return b


def _surfaces(args):
    return geometry.catalog(args.catalog) if args.catalog else geometry.catalog()


def _config(args) -> RunConfig:
    return RunConfig(args.command, None, args.bound, _seed(args), args.format, args.catalog)


# --------------------------------------------------------------- commands
# Each handler returns (payload, exit_code).  Payloads are dicts; a "rows"
# list is what table and tsv output print.


def cmd_validate(args, cfg):
    g = _read_character(args)
    adm = charcalc.validate_admissible(g)
    out = {"gamma": list(g.values), "N": g.ambient_dim, "admissible": adm.ok, "s": adm.s,
           "failures": [f.to_dict() for f in adm.failures]}
    if adm.ok:
        out["positive"] = charcalc.is_positive(g)
        out["connected"] = charcalc.is_connected(g) if out["positive"] else False
    ok = adm.ok
    if args.ag:
        if g.ambient_dim != 4:
            raise UsageError("--ag needs N = 4")
        rep = charcalc.validate_ag(g) if adm.ok else None
        out["ag"] = rep.to_dict() if rep else None
        ok = ok and rep is not None and rep.ok
    out["ok"] = ok
    return out, EXIT_OK if ok else EXIT_INVALID


def cmd_postulation(args, cfg):
    g = _read_character(args)
    return charcalc.postulation_from_gamma(g, args.n_max).to_dict(), EXIT_OK


def cmd_hvector(args, cfg):
    g = _read_character(args)
    h = charcalc.hvector_from_gamma(g, args.codim)
    return {"gamma": list(g.values), "codim": args.codim, "h": h, "degree": sum(h)}, EXIT_OK


def cmd_invariants(args, cfg):
    g = _read_character(args)
    if g.ambient_dim == 3:
        d, genus = charcalc.degree_genus_p3(g)
        return {"gamma": list(g.values), "N": 3, "degree": d, "genus": genus}, EXIT_OK
    return charcalc.curve_invariants(g).to_dict(), EXIT_OK


def cmd_split(args, cfg):
    g = _read_character(args)
    d = charcalc.delta_split(g, args.q)
    return {"gamma": list(g.values), "q": args.q if args.q is not None else g.q, "delta": list(d.values)}, EXIT_OK


def cmd_merge(args, cfg):
    d = _read_character(args)
    g = charcalc.gamma_from_delta(d, args.q)
    return {"delta": list(d.values), "q": args.q, "gamma": list(g.values)}, EXIT_OK


def cmd_classify(args, cfg):
    return geometry.classify_mhk(_read_character(args)).to_dict(), EXIT_OK


def cmd_descend(args, cfg):
    g = _read_character(args)
    if biliaison.plane_curve_degree(g) is not None:
        _, step = biliaison.plane_descend(g)
    else:
        _, step = biliaison.descend(g)
    return step.to_dict(), EXIT_OK


def cmd_chain(args, cfg):
    chain = biliaison.descent_chain(_read_character(args))
    out = chain.to_dict()
    out["rows"] = [st.to_dict() for st in chain.steps]
    return out, EXIT_OK


def cmd_ascend(args, cfg):
    g = _read_character(args)
    up = biliaison.ascend(g, args.s)
    return {"gamma_prime": list(g.values), "s": args.s, "gamma": list(up.values)}, EXIT_OK


def cmd_enumerate(args, cfg):
    if args.kind == "ag":
        q_max = _bound(args, 8)
        rows = [{"gamma": list(g.values), "q": g.q} for g in charcalc.enumerate_ag(q_max)]
        return {"kind": "ag", "bound": q_max, "count": len(rows), "rows": rows}, EXIT_OK
    d_max = _bound(args, 6)
    rows = [{"gamma": list(g.values), "degree": d, "genus": genus}
            for g, d, genus in charcalc.enumerate_acm_p3(d_max, args.connected)]
    return {"kind": "acm-p3", "bound": d_max, "connected_only": args.connected,
            "count": len(rows), "rows": rows}, EXIT_OK


def cmd_surfaces(args, cfg):
    surfs = _surfaces(args)
    if args.name:
        surfs = [geometry.get_surface(args.name, surfs)]
    return {"count": len(surfs), "rows": [s.to_dict() for s in surfs]}, EXIT_OK


def cmd_mhk(args, cfg):
    surf = geometry.get_surface(args.surface, _surfaces(args))
    return geometry.mhk_curve(surf, args.m).to_dict(), EXIT_OK


def cmd_candidates(args, cfg):
    g = _read_character(args)
    d_max = _bound(args, 30)
    rows = [c.to_dict() for c in geometry.mhk_surface_candidates(g, d_max)]
    return {"gamma": list(g.values), "bound": d_max, "count": len(rows), "rows": rows}, EXIT_OK


def cmd_search(args, cfg):
    d_max = _bound(args, 30)
    best, where = geometry.max_mhk_degree(args.m, d_max)
    return {"m": args.m, "bound": d_max, "max_degree": best, "attained_at": [list(p) for p in where]}, EXIT_OK


def cmd_dimension(args, cfg):
    g = _read_character(args)
    surf = geometry.get_surface(args.surface, _surfaces(args))
    return geometry.dimension_count(g, surf).to_dict(), EXIT_OK


def cmd_link(args, cfg):
    surf = geometry.get_surface(args.surface, _surfaces(args)) if args.surface else None
    return geometry.ci_linkage(args.alpha, args.beta, surf).to_dict(), EXIT_OK


def cmd_intersect(args, cfg):
    d1, d2 = DivisorClass.parse(args.first), DivisorClass.parse(args.second)
    out = {"D1": str(d1), "D2": str(d2), "D1.D2": d1.dot(d2), "D1+D2": str(d1 + d2)}
    if args.canonical:
        k = DivisorClass.parse(args.canonical)
        out["K"] = str(k)
        out["genus_D1"] = geometry.adjunction_genus(d1, k)
    return out, EXIT_OK


def cmd_betti(args, cfg):
    g = _read_character(args)
    if args.codim2:
        if args.a is None or args.b is None:
            raise UsageError("--codim2 needs --a and --b")
        B = resolution.BettiDataCodim2(_int_list(args.a), _int_list(args.b))
        rep = resolution.validate_betti_codim2(g, B)
        out = {"gamma": list(g.values), "betti": B.to_json(), **rep.to_dict()}
        return out, EXIT_OK if rep.ok else EXIT_INVALID
    if args.a is not None:
        rep0 = charcalc.require_ag(g.with_ambient(4))
        c = args.c if args.c is not None else rep0.q + 1
        B = resolution.BettiDataAG(c, _int_list(args.a))
        rep = resolution.validate_betti_ag(g, B)
        out = {"gamma": list(g.values), "betti": B.to_json(), **rep.to_dict()}
        return out, EXIT_OK if rep.ok else EXIT_INVALID
    s = charcalc.require_ag(g.with_ambient(4)).s
    max_gens = _bound(args, 2 * s + 1)
    rows = [B.to_json() for B in resolution.enumerate_betti_ag(g, max_gens)]
    return {"gamma": list(g.values), "max_generators": max_gens, "count": len(rows), "rows": rows}, EXIT_OK


def cmd_pfaffian(args, cfg):
    if args.matrix:
        with open(args.matrix) as fh:
            M = pfaffianlab.SkewMatrix.from_json(json.load(fh))
        g = _read_character(args)
        rep = pfaffianlab.verify_character(M, g, args.n_max, args.max_cells)
        return rep.to_dict(), EXIT_OK if rep.ok else EXIT_INVALID
    if args.a is None:
        raise UsageError("pfaffian needs --a (or --matrix)")
    a = _int_list(args.a)
    c = args.c
    if c is None:
        g = _read_character(args, required=False)
        if g is None:
            raise UsageError("pfaffian needs --c or a character")
        c = charcalc.require_ag(g).q + 1
    betti = resolution.BettiDataAG(c, a)
    real = pfaffianlab.realize_betti(betti, seed=cfg.seed, attempts=args.attempts,
                                     n_max=args.n_max, max_cells=args.max_cells)
    out = {"betti": betti.to_json(), "seed": cfg.seed, "attempts": real.attempts,
           "expected": list(real.expected.values), "report": real.report.to_dict()}
    if args.show_matrix:
        out["matrix"] = real.matrix.to_json()
    return out, EXIT_OK


def cmd_reproduce(args, cfg):
    from .reproduce import run_all

    surfaces = geometry.load_catalog(args.catalog) if args.catalog else None
    t0 = time.perf_counter()
    results = run_all(seed=cfg.seed, surfaces=surfaces)
    rows = []
    for r in results:
        d = r.to_dict()
        if not args.timing:
            d.pop("seconds")
        rows.append(d)
    ok = all(r.passed for r in results)
    out = {"passed": sum(r.passed for r in results), "total": len(results), "rows": rows}
    if args.timing:
        out["seconds"] = round(time.perf_counter() - t0, 3)
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_info(args, cfg):
    from . import __version__

    return {"version": __version__, "backend": BACKEND}, EXIT_OK


# ----------------------------------------------------------------- output


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _records(payload: dict) -> list[dict]:
    if "rows" in payload:
        return payload["rows"]
    return [{k: v for k, v in payload.items() if k != "schema"}]


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, **payload}, indent=2)
    recs = _records(payload)
    if fmt == "tsv":
        keys = list(dict.fromkeys(k for r in recs for k in r))
        lines = ["\t".join(keys)]
        lines += ["\t".join(_cell(r.get(k)) for k in keys) for r in recs]
        return "\n".join(lines)
    if "rows" not in payload:
        rec = recs[0]
        width = max((len(k) for k in rec), default=0)
        return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in rec.items())
    keys = list(dict.fromkeys(k for r in recs for k in r))
    cells = [[_cell(r.get(k)) for k in keys] for r in recs]
    widths = [max([len(k)] + [len(row[i]) for row in cells]) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def render_reproduce(payload: dict, fmt: str) -> str:
    if fmt != "table":
        return render(payload, fmt)
    lines = [f"{r['status']}  [{r['key']:>2}] {r['title']}: {r['detail']}" for r in payload["rows"]]
    lines.append(f"{payload['passed']}/{payload['total']} passed")
    return "\n".join(lines)


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "table", "tsv"], default="json")
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV} or 0)")
    common.add_argument("--bound", type=int, default=None, help="enumeration or search bound")
    common.add_argument("--catalog", default=None, help="surface catalog JSON path")

    chararg = _Parser(add_help=False)
    chararg.add_argument("-c", "--character", default=None, help='inline character, e.g. "-1,2,-1"')
    chararg.add_argument("--file", default=None, help="JSON file holding {\"gamma\": [...]}")
    chararg.add_argument("-N", "--ambient", type=int, choices=[3, 4], default=4)

    p = _Parser(prog="agchar", description="Postulation-character calculus for ACM and AG subschemes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, char=True):
        sp = sub.add_parser(name, help=help_, parents=[common, chararg] if char else [common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, "admissibility, positivity, connectedness, AG checks")
    sp.add_argument("--ag", action="store_true", help="also require an AG curve character")
    sp = add("postulation", cmd_postulation, "postulation function and Hilbert polynomial")
    sp.add_argument("--n-max", type=int, default=None)
    sp = add("hvector", cmd_hvector, "h-vector by partial summation")
    sp.add_argument("--codim", type=int, choices=[2, 3], default=3)
    add("invariants", cmd_invariants, "s, q, m, r, degree, genus, delta (N=3: degree and genus)")
    sp = add("split", cmd_split, "first-half character delta")
    sp.add_argument("--q", type=int, default=None)
    sp = add("merge", cmd_merge, "gamma from delta and q")
    sp.add_argument("--q", type=int, required=True)
    add("classify", cmd_classify, "mH-K regime flags")
    add("descend", cmd_descend, "one descending biliaison step")
    add("chain", cmd_chain, "full descent chain to the line")
    sp = add("ascend", cmd_ascend, "inverse of one descent step")
    sp.add_argument("--s", type=int, required=True, help="least degree of the result")
    sp = add("enumerate", cmd_enumerate, "enumerate AG or ACM-P3 characters", char=False)
    sp.add_argument("--kind", choices=["ag", "acm-p3"], default="ag")
    sp.add_argument("--connected", action="store_true", help="acm-p3: connected characters only")
    sp = add("surfaces", cmd_surfaces, "list the surface catalog", char=False)
    sp.add_argument("--name", default=None)
    sp = add("mhk", cmd_mhk, "the mH-K curve on a catalog surface", char=False)
    sp.add_argument("--surface", required=True)
    sp.add_argument("--m", type=int, required=True)
    add("candidates", cmd_candidates, "ACM surfaces whose mH-K curves match a character")
    sp = add("search", cmd_search, "maximise (m+1)*delta - 2*pi + 2 over nondegenerate pairs", char=False)
    sp.add_argument("--m", type=int, default=2)
    sp = add("dimension", cmd_dimension, "dimension count against the Hilbert scheme bound")
    sp.add_argument("--surface", default="bordiga")
    sp = add("link", cmd_link, "CI linkage of mH-K curves", char=False)
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("--beta", type=int, required=True)
    sp.add_argument("--surface", default=None)
    sp = add("intersect", cmd_intersect, "divisor class arithmetic, e.g. '(4;1^10)'", char=False)
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--canonical", default=None, help="canonical class for the adjunction genus of the first class")
    sp = add("betti", cmd_betti, "validate or enumerate resolution degree data")
    sp.add_argument("--a", default=None, help="generator degrees")
    sp.add_argument("--b", default=None, help="relation degrees (codim 2)")
    sp.add_argument("--c", type=int, default=None, help="socle degree (default q + 1)")
    sp.add_argument("--codim2", action="store_true", help="Hilbert-Burch data for a P3-type character")
    sp = add("pfaffian", cmd_pfaffian, "realize Betti data by a seeded skew matrix")
    sp.add_argument("--a", default=None)
    sp.add_argument("--c", type=int, default=None)
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--attempts", type=int, default=5)
    sp.add_argument("--max-cells", type=int, default=pfaffianlab.DEFAULT_MAX_CELLS)
    sp.add_argument("--matrix", default=None, help="verify a stored skew matrix against -c")
    sp.add_argument("--show-matrix", action="store_true")
    sp = add("reproduce", cmd_reproduce, "run every golden check", char=False)
    sp.add_argument("--timing", action="store_true", help="include wall times (not byte-stable)")
    add("info", cmd_info, "version and kernel backend", char=False)
    return p


_VALUE_OPTS = {"-c", "--character", "--a", "--b"}
_NEG = re.compile(r"^-\d")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Keep ``-c -1,2,-1`` from being read as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and _NEG.match(argv[i + 1]):
            out.append(f"{'--character' if tok == '-c' else tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
        cfg = _config(args)
        payload, code = args.func(args, cfg)
    except UsageError as exc:
        if not str(exc).startswith(parser.prog):
            parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (CatalogError, ResourceError, GenericityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (CharacterError, GeometryError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = render_reproduce(payload, args.format) if args.command == "reproduce" else render(payload, args.format)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
