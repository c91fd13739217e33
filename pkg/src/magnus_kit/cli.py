"""Batch command-line front end.

Every subcommand is a thin adapter over the library: parse, dispatch,
format.  Output is stable machine-readable ``key=value`` lines (the
``--porcelain`` flag is accepted and keeps that guarantee explicit).

Exit codes: 0 computed, 1 usage or parse error, 2 invalid presentation,
3 iteration cap exceeded, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Iterator, Optional

from . import amalgam, decide, kernel, special
from .errors import MagnusKitError, WordParseError
from .presentation import (
    FamilyPresentation,
    from_surface_genus,
    load_presentation,
    psi_apply,
)
from .words import Word, format_word, is_conjugate_free, parse_word


class _UsageError(MagnusKitError):
    exit_code = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="magnus-kit", description=__doc__)
    parser.add_argument("--presentation", metavar="PATH", help="presentation config file")
    parser.add_argument("--genus", type=int, help="nonorientable surface genus (>= 4)")
    parser.add_argument("--porcelain", action="store_true", help="stable key=value output")
    parser.add_argument("--psi-cap", type=int, default=64, dest="psi_cap")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, *words, **kwargs):
        p = sub.add_parser(name, **kwargs)
        for w in words:
            p.add_argument(w)
        return p

    cmd("reduce", "word")
    cmd("conj-free", "word1", "word2")
    cmd("wp", "word")
    cmd("rs", "word")
    cmd("canon", "word")
    cmd("width", "word")
    cmd("pieces", "word")
    p = cmd("psi", "word")
    p.add_argument("-n", type=int, required=True, dest="power")
    cmd("specialize", "word")
    p = cmd("sets", "word")
    p.add_argument("--shift", type=int, default=0)
    p = sub.add_parser("split")
    p.add_argument("variant", choices=["41", "42"])
    p.add_argument("word")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    cmd("magnus", "word1", "word2")
    cmd("free-magnus", "word1", "word2")
    p = cmd("oracle", "word1", "word2")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--conj-len", type=int, default=2, dest="conj_len")
    cmd("verify", "word1", "word2")
    return parser


def _load(args) -> FamilyPresentation:
    if (args.presentation is None) == (args.genus is None):
        raise _UsageError("exactly one of --presentation PATH or --genus N is required")
    if args.genus is not None:
        return from_surface_genus(args.genus)
    try:
        with open(args.presentation, "r", encoding="utf-8") as fh:
            return load_presentation(fh.read())
    except OSError as exc:
        raise _UsageError("cannot read presentation file: %s" % exc)


def _stdin_lines() -> Iterator[str]:
    for line in sys.stdin:
        yield line.rstrip("\n")


def _word(value: str, stdin: Iterator[str], allow_internal: bool = False) -> Word:
    if value == "-":
        value = next(stdin, "")
    return parse_word(value, allow_internal=allow_internal)


def _emit(key, value) -> None:
    print("%s=%s" % (key, value))


def _emit_word(key: str, w: Word) -> None:
    _emit(key, format_word(w))


def _emit_verdict(v: decide.Verdict) -> None:
    _emit("verdict", v.kind)
    if v.same:
        _emit("sign", "%+d" % v.sign)
        _emit_word("conjugator", v.conjugator)
        if v.conjugator_g is not None:
            _emit_word("conjugator_g", v.conjugator_g)
    else:
        _emit("reason", v.reason)


def _emit_pieces(dec: special.PieceDecomposition) -> None:
    _emit("pieces", len(dec))
    for piece, res in zip(dec.pieces, dec.residues):
        _emit_word("piece", piece.word)
        _emit("residue", res)


def _factor_str(f: amalgam.Factor) -> str:
    window = "G[%d,%d]" % (f.window.lo, f.window.hi)
    shifts = f.relator_shifts
    if not shifts:
        rels = "{}"
    elif len(shifts) == 1:
        rels = "{r_%d}" % shifts[0]
    else:
        rels = "{r_%d..r_%d}" % (shifts[0], shifts[-1])
    return "%s/%s" % (window, rels)


def _run(argv) -> int:
    args = _build_parser().parse_args(argv)
    stdin = _stdin_lines()
    cmd = args.command

    if cmd == "free-magnus":
        if args.presentation is not None or args.genus is not None:
            raise _UsageError("free-magnus works in a free group and takes no presentation")
        v = decide.free_magnus(_word(args.word1, stdin), _word(args.word2, stdin))
        _emit_verdict(v)
        return 0

    pres = _load(args)

    if cmd == "reduce":
        _emit_word("word", _word(args.word, stdin))
    elif cmd == "conj-free":
        h = is_conjugate_free(_word(args.word1, stdin), _word(args.word2, stdin))
        _emit("conjugate", "true" if h is not None else "false")
        if h is not None:
            _emit_word("conjugator", h)
    elif cmd == "wp":
        _emit("trivial", "true" if kernel.is_trivial_in_H(pres, _word(args.word, stdin)) else "false")
    elif cmd == "rs":
        _emit_word("word", kernel.rs_rewrite(pres, _word(args.word, stdin)).word)
    elif cmd == "canon":
        kw = kernel.rs_rewrite(pres, _word(args.word, stdin))
        _emit_word("word", kernel.canonicalize(kw).word)
    elif cmd == "width":
        kw = kernel.rs_rewrite(pres, _word(args.word, stdin))
        alpha, omega, width = kernel.alpha_omega(kw)
        _emit("alpha", alpha)
        _emit("omega", omega)
        _emit("width", width)
    elif cmd == "pieces":
        kw = kernel.rs_rewrite(pres, _word(args.word, stdin))
        _emit_pieces(special.pieces(kw))
    elif cmd == "psi":
        _emit_word("word", psi_apply(pres, _word(args.word, stdin), args.power))
    elif cmd == "specialize":
        kw = kernel.rs_rewrite(pres, _word(args.word, stdin))
        se = special.specialize(kw, psi_cap=args.psi_cap)
        _emit_pieces(se.pieces)
        _emit("alpha", se.alpha)
        _emit("omega", se.omega)
        _emit("width", se.width)
        _emit("psi_power", se.psi_power)
        _emit_word("conjugator", se.conjugator)
    elif cmd == "sets":
        kw = kernel.rs_rewrite(pres, _word(args.word, stdin))
        se = special.specialize(kw, psi_cap=args.psi_cap)
        sets = amalgam.left_right_sets(se, args.shift)
        _emit("left", " ".join("w[%d]" % l for l in sets.left_indices))
        _emit("right", " ".join("b[%d]" % l for l in sets.right_indices))
    elif cmd == "split":
        kw = kernel.rs_rewrite(pres, _word(args.word, stdin))
        se = special.specialize(kw, psi_cap=args.psi_cap)
        op = amalgam.split_41 if args.variant == "41" else amalgam.split_42
        sp = op(se, args.j, args.i, args.m, args.n)
        if sp.edge_window is None:
            _emit("edge", "1")
        else:
            _emit("edge", "G[%d,%d]" % (sp.edge_window.lo, sp.edge_window.hi))
        _emit("left", _factor_str(sp.left_factor))
        _emit("right", _factor_str(sp.right_factor))
        for wl, bl in sp.identifications:
            l = wl.word.letters[0].sym.index
            print("ident: w[%d] = b[%d]" % (l, l + pres.k))
    elif cmd == "magnus":
        v = decide.magnus_same_closure(
            pres, _word(args.word1, stdin), _word(args.word2, stdin), psi_cap=args.psi_cap
        )
        _emit_verdict(v)
    elif cmd == "oracle":
        member = decide.nc_member_bounded(
            _word(args.word2, stdin),
            _word(args.word1, stdin),
            pres,
            depth=args.depth,
            conj_len=args.conj_len,
        )
        _emit("member", "true" if member else "false")
    elif cmd == "verify":
        r = parse_word(args.word1)
        s = parse_word(args.word2)
        cert = _read_certificate(stdin)
        _emit("valid", "true" if decide.verify_certificate(pres, r, s, cert) else "false")
    else:  # pragma: no cover - argparse enforces the choices
        raise _UsageError("unknown command %r" % cmd)
    return 0


def _read_certificate(stdin: Iterator[str]) -> decide.Verdict:
    data = {}
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise _UsageError("bad certificate line %r" % line)
        data[key.strip()] = value.strip()
    if data.get("verdict") != "same":
        raise _UsageError("certificate must carry verdict=same")
    if "sign" not in data or "conjugator" not in data:
        raise _UsageError("certificate needs sign= and conjugator= lines")
    try:
        sign = int(data["sign"])
    except ValueError:
        raise _UsageError("bad sign %r" % data["sign"])
    conj = parse_word(data["conjugator"], allow_internal=True)
    return decide.Verdict(decide.SAME, sign=sign, conjugator=conj)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        return _run(argv)
    except WordParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except MagnusKitError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
