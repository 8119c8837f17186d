"""Command-line front end; a thin client over the service operation layer.

Exit codes: 0 on success, 1 when a verification run reports failures,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import service
from .errors import ScabError


def _cmd_catalog(args) -> int:
    if args.action == "list":
        for name in service.op_catalog_list():
            print(name)
        return 0
    data = service.op_catalog_show(args.name)
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(f"{data['name']}: {data['description']}")
        if "ext" in data:
            for row in data["ext"]:
                print("  " + " ".join(f"{v:3d}" for v in row))
    return 0


def _cmd_mutate(args) -> int:
    with open(args.matrix, encoding="utf-8") as fh:
        payload = json.load(fh)
    matrix = payload["matrix"] if isinstance(payload, dict) else payload
    n = payload.get("n") if isinstance(payload, dict) else None
    seq = [int(v) for v in args.seq.split(",")] if args.seq else []
    resp = service.op_mutate(service.MutateRequest(matrix=matrix, seq=seq, n=n))
    print(json.dumps(resp.matrix))
    return 0


def _cmd_enumerate(args) -> int:
    resp = service.op_enumerate(service.EnumerateRequest(
        example=args.example, max_seeds=args.max))
    print(f"{resp.seeds} seeds, {resp.edges} edges, "
          f"{len(resp.variables)} cluster variables"
          + (" (truncated)" if resp.truncated else ""))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(resp.model_dump(), fh, indent=2, sort_keys=True)
        print(f"wrote {args.out}")
    return 0


def _cmd_shear(args) -> int:
    path = [p for p in args.path.split(",") if p] if args.path else []
    resp = service.op_shear(service.ShearRequest(
        example=args.example, lamination=args.lamination, path=path))
    print(json.dumps(resp.shear))
    return 0


def _cmd_realize(args) -> int:
    with open(args.assign, encoding="utf-8") as fh:
        payload = json.load(fh)
    resp = service.op_realize(service.RealizeRequest(
        example=args.example,
        assignment=payload.get("assignment", payload),
        queries=payload.get("queries", [])))
    print(json.dumps({"values": resp.values, "residuals": resp.residuals},
                     sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    resp = service.op_verify(service.VerifyRequest(suite=args.suite,
                                                   example=args.example))
    for line in resp.lines:
        print(line)
    print(f"{resp.checks - resp.failures}/{resp.checks} checks passed")
    return 0 if resp.ok else 1


def _cmd_export(args) -> int:
    resp = service.op_export(service.ExportRequest(
        example=args.example, format=args.format, max_seeds=args.max))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(resp.content)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(resp.content)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("scab.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scab",
        description="exact workbench for cluster algebras from surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or show built-in examples")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("mutate", help="mutate an (extended) exchange matrix")
    p.add_argument("--matrix", required=True,
                   help="JSON file: [[..]] or {matrix: [[..]], n: rank}")
    p.add_argument("--seq", default="",
                   help="comma-separated 0-based mutation directions")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("enumerate", help="enumerate an exchange graph")
    p.add_argument("--example", required=True)
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--out", help="write the graph as JSON")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("shear", help="transport lamination shear coordinates")
    p.add_argument("--example", required=True)
    p.add_argument("--lamination", type=int, default=0)
    p.add_argument("--path", default="",
                   help="comma-separated flips (positions) and tags:<puncture>")
    p.set_defaults(func=_cmd_shear)

    p = sub.add_parser("realize", help="propagate a positive realization")
    p.add_argument("--example", required=True)
    p.add_argument("--assign", required=True,
                   help='JSON file {"assignment":{"x":[..],"q":[..]},'
                        '"queries":[{"path":[..]}]}')
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("verify", help="run the anchored regression suite")
    p.add_argument("--suite", default="paper")
    p.add_argument("--example", default=None,
                   help="restrict to one catalog example")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("export", help="emit the exchange graph for visualization")
    p.add_argument("--example", required=True)
    p.add_argument("--format", default="dot", choices=["dot"])
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
