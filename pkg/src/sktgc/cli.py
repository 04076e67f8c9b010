"""Command-line interface.

Subcommands: generate, verify, encode, decode, search-base,
search-complete, compress, decompress, graph, stats.  Listings use the
canonical text format on stdin/stdout or files; compressed codes use the
SKTG binary container.  Exit codes: 0 success, 1 verification/membership
failure, 2 invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import binary, codec, core, mary, search, verifier
from .compress import CompressedCode, compress as compress_code, decompress as decompress_code
from .errors import NotInCode, SktgcError

FAMILIES = ("3sktgc", "2sktgc-a", "2sktgc-b", "2sktgc-c",
            "1sktgc-odd", "1sktgc-even", "1sktgc-general",
            "mary", "quaternary", "ternary-nc", "ternary-c")

CODEC_FAMILIES = ("2sktgc-b", "2sktgc-c", "1sktgc-odd")


def _build(args) -> core.Code:
    family = args.family
    if family == "3sktgc":
        return binary.build_3sktgc(_need(args, "n"))
    if family.startswith("2sktgc-"):
        return binary.build_2sktgc(_need(args, "n"), family[-1].upper())
    if family == "1sktgc-odd":
        return binary.build_1sktgc_odd(_need(args, "n"), args.variant.upper())
    if family == "1sktgc-even":
        return binary.build_1sktgc_even(_need(args, "n"), args.variant.upper())
    if family == "1sktgc-general":
        base = _load_base(args)
        return binary.build_1sktgc(base, _need(args, "steps"), args.variant.upper())
    if family == "mary":
        return mary.build_mary_large(_need(args, "m"), _need(args, "n"))
    if family == "quaternary":
        return mary.build_quaternary(_need(args, "n"))
    if family == "ternary-nc":
        return mary.build_ternary(_need(args, "n"), cyclic=False)
    if family == "ternary-c":
        return mary.build_ternary(_need(args, "n"), cyclic=True)
    raise SktgcError(f"unknown family {family!r}")


def _need(args, name):
    value = getattr(args, name, None)
    if value is None:
        raise SktgcError(f"family {args.family!r} needs --{name}")
    return value


def _load_base(args) -> binary.BaseCase:
    if getattr(args, "base", None):
        code = core.parse_listing(_read_text(args.base))
        if not code.indexing.is_signed:
            raise SktgcError("base listing must use signed indexing")
        left = -code.indexing.left_label
        return binary.make_base(code, left, code.n - 1 - left)
    if getattr(args, "n0", None) in (6, 7):
        return binary.bundled_base(args.n0)
    raise SktgcError("1sktgc-general needs --base FILE or --n0 {6,7}")


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _predicted(args) -> int | None:
    family = args.family
    try:
        if family in ("3sktgc", "2sktgc-a", "2sktgc-b", "2sktgc-c",
                      "quaternary", "ternary-nc", "ternary-c"):
            return binary.predicted_size(family, n=args.n)
        if family in ("1sktgc-odd", "1sktgc-even"):
            return binary.predicted_size(family, n=args.n, variant=args.variant.upper())
        if family == "1sktgc-general":
            base = _load_base(args)
            return binary.predicted_size(family, a0=base.size, n0=base.n0,
                                         left=base.left, right=base.right,
                                         steps=args.steps, variant=args.variant.upper())
        if family == "mary":
            return binary.predicted_size(family, m=args.m, n=args.n)
    except SktgcError:
        return None
    return None


def _cmd_generate(args) -> int:
    code = _build(args)
    _write_text(args.output, core.format_listing(code))
    return 0


def _cmd_verify(args) -> int:
    code = core.parse_listing(_read_text(args.input))
    report = verifier.verify(code, expected_k=args.expected_k)
    if args.json:
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        for line in report.lines():
            print(line)
    return 0 if report.passed else 1


def _cmd_encode(args) -> int:
    if args.family == "2sktgc-b":
        word = codec.encode_2(args.rank, args.n)
    elif args.family == "2sktgc-c":
        word = codec.encode_2c(args.rank, args.n)
    else:
        word = codec.encode_1(args.rank, args.n)
    print(str(word))
    return 0


def _cmd_decode(args) -> int:
    word = [int(ch) for ch in args.word]
    try:
        if args.family == "2sktgc-b":
            rank = codec.decode_2(word, args.n)
        elif args.family == "2sktgc-c":
            rank = codec.decode_2c(word, args.n)
        else:
            rank = codec.decode_1(word, args.n)
    except NotInCode as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(rank)
    return 0


def _cmd_search_base(args) -> int:
    result = search.search_base(args.n0, args.l, args.r, args.budget,
                                target=args.target, jobs=args.jobs)
    if result.best is not None and args.output:
        _write_text(args.output, core.format_listing(result.best))
    elif result.best is not None:
        sys.stdout.write(core.format_listing(result.best))
    constant = float(result.constant) if result.constant is not None else 0.0
    print(f"a0={result.a0} c={constant:.6f} exhausted={str(result.exhausted).lower()}"
          f" nodes={result.nodes}")
    return 0


def _cmd_search_complete(args) -> int:
    result = search.search_complete_1sktgc(args.n, args.cyclic, args.budget,
                                           jobs=args.jobs)
    if result.best is not None and args.output:
        _write_text(args.output, core.format_listing(result.best))
    elif result.best is not None:
        sys.stdout.write(core.format_listing(result.best))
    print(f"found={1 if result.best is not None else 0} size={result.a0}"
          f" exhausted={str(result.exhausted).lower()} nodes={result.nodes}")
    return 0


def _cmd_compress(args) -> int:
    code = core.parse_listing(_read_text(args.input))
    data = compress_code(code).to_bytes()
    if args.output is None or args.output == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(args.output, "wb") as fh:
            fh.write(data)
    return 0


def _cmd_decompress(args) -> int:
    if args.input is None or args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
    code = decompress_code(CompressedCode.from_bytes(data))
    _write_text(args.output, core.format_listing(code))
    return 0


def _cmd_graph(args) -> int:
    code = core.parse_listing(_read_text(args.input)).standardized()
    ts = core.transitions(code)
    graph = verifier.induced_graph(ts, code.n)
    sys.stdout.write(graph.to_dot())
    return 0


def _cmd_stats(args) -> int:
    if args.family:
        code = _build(args)
        predicted = _predicted(args)
    else:
        code = core.parse_listing(_read_text(args.input))
        predicted = None
    report = verifier.verify(code)
    print(f"size={report.size}")
    if predicted is not None:
        verdict = "MATCH" if predicted == report.size else "MISMATCH"
        print(f"predicted={predicted}")
        print(f"verdict={verdict}")
    print(f"density={float(report.density):.10g}")
    print(f"rate={report.rate:.10g}")
    print(f"k_min={report.k_min if report.k_min is not None else 'n/a'}")
    hist = " ".join(f"{k}:{v}" for k, v in sorted(report.jump_histogram.items()))
    print(f"jumps={hist}")
    if predicted is not None and predicted != report.size:
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sktgc",
        description="Generate, verify, rank/unrank, search and compress "
                    "skew-tolerant Gray codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_params(p, required=True):
        p.add_argument("--family", required=required, choices=FAMILIES)
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--steps", type=int)
        p.add_argument("--variant", default="b", choices=["a", "b", "A", "B"])
        p.add_argument("--base", help="base-case listing file (1sktgc-general)")
        p.add_argument("--n0", type=int, help="bundled base length (6 or 7)")

    p = sub.add_parser("generate", help="emit a code listing")
    add_family_params(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="check a listing; exit 0 iff all properties pass")
    p.add_argument("input", nargs="?", help="listing file (default stdin)")
    p.add_argument("--expected-k", type=int, dest="expected_k")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("encode", help="rank -> codeword")
    p.add_argument("--family", required=True, choices=CODEC_FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="codeword -> rank")
    p.add_argument("--family", required=True, choices=CODEC_FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True, help="symbol digits, leftmost first")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("search-base", help="search for a doubling-engine seed")
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--target", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_search_base)

    p = sub.add_parser("search-complete", help="search for a complete code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_search_complete)

    p = sub.add_parser("compress", help="listing -> SKTG binary")
    p.add_argument("input", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", help="SKTG binary -> listing")
    p.add_argument("input", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("graph", help="induced transition graph as DOT")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("stats", help="size, predicted size, density, rate, jumps")
    add_family_params(p, required=False)
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SktgcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
