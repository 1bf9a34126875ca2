"""Command-line driver for the verification suite.

Runs named checks per genus, prints one line per check, and optionally
writes a JSON certificate.  Exit codes: 0 all selected checks passed (or
were observed/skipped), 1 at least one failure, 2 usage error.

The JSON certificate is deterministic for fixed flags: keys are sorted,
coordinate data is emitted as decimal strings, and wall times are kept out
of the file (they go to stderr instead).
"""

import argparse
import json
import os
import sys
import tempfile
import time

from . import checks


def _witness_jsonable(obj):
    """Coerce witness data to JSON-stable types (ints, strings, lists)."""
    if isinstance(obj, dict):
        return {str(k): _witness_jsonable(v) for k, v in sorted(
            obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_witness_jsonable(x) for x in obj]
    if isinstance(obj, bool):
        return obj
    if hasattr(obj, "item") and not isinstance(obj, str):  # numpy scalar
        obj = obj.item()
    if isinstance(obj, int):
        return obj
    return str(obj)


def _write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".certificate-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser():
    p = argparse.ArgumentParser(
        prog="verify",
        description="Exact verification of the degree-2 derivation-lattice "
                    "statements at desk scale.")
    p.add_argument("--genus", type=int, default=2,
                   help="genus to verify (2..4, default 2)")
    p.add_argument("--all", action="store_true",
                   help="run every check applicable at this genus")
    p.add_argument("--check", action="append", default=[],
                   metavar="ID", help="run one named check (repeatable)")
    p.add_argument("--json", metavar="PATH",
                   help="write a JSON certificate to PATH")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized property checks (default 0)")
    p.add_argument("--max-minutes", type=float, default=None,
                   help="soft wall-time budget; checks expected to exceed "
                        "the remainder are reported as skipped")
    p.add_argument("--list", action="store_true",
                   help="list available check ids and exit")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.list:
        for entry in checks.ALL_CHECKS:
            print("%-24s %s (genus %s)" % (
                entry.id, entry.anchor, ",".join(map(str, entry.genera))))
        return 0

    if not (2 <= args.genus <= 4):
        print("error: genus must be between 2 and 4", file=sys.stderr)
        return 2
    for cid in args.check:
        if cid not in checks.CHECKS:
            print("error: unknown check id %r (use --list)" % cid,
                  file=sys.stderr)
            return 2
    if not args.check and not args.all:
        print("error: nothing selected; use --all or --check ID",
              file=sys.stderr)
        return 2

    selected = [c.id for c in checks.ALL_CHECKS] if args.all else args.check
    budget = None if args.max_minutes is None else args.max_minutes * 60.0
    t_start = time.time()
    reports = []
    for cid in selected:
        left = None if budget is None else budget - (time.time() - t_start)
        rep = checks.run_check(cid, args.genus, seed=args.seed,
                               budget_left=left)
        reports.append(rep)
        print("%-24s genus=%d  %-8s %6.1fs  %s" % (
            rep.id, rep.genus, rep.status, rep.seconds, rep.anchor))
        if rep.status == "fail":
            print("  witness: %s" % _witness_jsonable(rep.witness),
                  file=sys.stderr)

    if args.json:
        doc = {
            "version": checks.VERSION,
            "genus": args.genus,
            "seed": args.seed,
            "checks": [
                {
                    "id": r.id,
                    "anchor": r.anchor,
                    "genus": r.genus,
                    "status": r.status,
                    "witness": _witness_jsonable(r.witness),
                }
                for r in reports
            ],
        }
        _write_atomic(args.json,
                      json.dumps(doc, sort_keys=True, indent=1) + "\n")

    n_fail = sum(1 for r in reports if r.failed)
    n_pass = sum(1 for r in reports if r.status == "pass")
    print("summary: %d pass, %d fail, %d other" % (
        n_pass, n_fail, len(reports) - n_pass - n_fail))
    return 1 if n_fail else 0


if __name__ == "__main__":
    sys.exit(main())
