"""Command-line front end: ingest windows, run tests, emit reports.

Inputs are inline comma-separated values (``--seq``), OEIS-style b-files
(``--bfile``, ``-`` for stdin), named generators (``failure --gen``), or a
matrix file (``trace --matrix``).  Reports come in text or JSON; JSON
carries every number as a decimal string because values routinely exceed
64-bit range.  Exit codes: 0 on Holds/success, 1 on Fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import dynsys, lefschetz, repair, seqkit, series
from .errors import (
    DoldkitError,
    MalformedLineError,
    NonMonotoneIndexError,
    RealizabilityError,
)
from .seqkit import IntPoly, Verdict

REPORT_FIELDS = ("command", "input_sha", "verdict", "witness_index", "witness_value", "outputs")


@dataclass(frozen=True)
class BFile:
    """Parsed b-file: raw (index, value) pairs plus the working window.

    The window is the contiguous run of indices 1, 2, 3, ...; entries with
    index <= 0 are dropped with a notice, entries after a gap are ignored.
    """

    entries: tuple[tuple[int, int], ...]
    window: tuple[int, ...]
    notices: tuple[str, ...]


def parse_bfile(text: str) -> BFile:
    entries: list[tuple[int, int]] = []
    last_index = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLineError(lineno, f"expected '<index> <value>', got {raw!r}")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(lineno, f"non-integer field in {raw!r}") from None
        if last_index is not None and index <= last_index:
            raise NonMonotoneIndexError(lineno, f"index {index} after {last_index}")
        last_index = index
        entries.append((index, value))
    notices = []
    dropped = [i for i, _ in entries if i < 1]
    if dropped:
        notices.append(f"dropped {len(dropped)} leading entries with index < 1")
    by_index = dict(entries)
    window: list[int] = []
    n = 1
    while n in by_index:
        window.append(by_index[n])
        n += 1
    if not window:
        raise MalformedLineError(0, "no contiguous run starting at index 1")
    if entries and entries[-1][0] >= n:
        notices.append(f"ignored entries after a gap at index {n}")
    return BFile(tuple(entries), tuple(window), tuple(notices))


def _enc(value):
    """Render exact values as decimal strings for reports."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_enc(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _enc(v) for k, v in value.items()}
    return str(value)


def _sha(kind: str, payload: str) -> str:
    return hashlib.sha256(f"{kind}:{payload}".encode()).hexdigest()


def _report(command, sha, verdict, outputs, witness_index=None, witness_value=None):
    return {
        "command": command,
        "input_sha": sha,
        "verdict": verdict,
        "witness_index": None if witness_index is None else str(witness_index),
        "witness_value": None if witness_value is None else str(witness_value),
        "outputs": outputs,
    }


def _verdict_report(command, sha, verdict: Verdict, outputs):
    if verdict.ok:
        return _report(command, sha, "holds", outputs), 0
    return (
        _report(command, sha, "fails", outputs, verdict.index, verdict.witness),
        1,
    )


class CliInputError(DoldkitError):
    """Bad command-line data: reported to stderr with exit code 2."""


def _parse_values(raw: str, rational: bool):
    tokens = [t for chunk in raw.split(",") for t in chunk.split()]
    if not tokens:
        raise CliInputError("empty value list")
    out = []
    for t in tokens:
        try:
            out.append(Fraction(t) if rational else int(t))
        except ValueError:
            kind = "rational" if rational else "integer"
            raise CliInputError(f"{t!r} is not a valid {kind}") from None
    return out


def _load_window(args, rational=False, truncate=True):
    """Resolve --seq / --bfile into (values, sha, notices)."""
    if getattr(args, "seq", None) is not None:
        values = _parse_values(args.seq, rational)
        sha = _sha("seq", ",".join(str(v) for v in values))
        notices: tuple[str, ...] = ()
    else:
        text = sys.stdin.read() if args.bfile == "-" else _read_file(args.bfile)
        bf = parse_bfile(text)
        values = [Fraction(v) for v in bf.window] if rational else list(bf.window)
        sha = _sha("bfile", ",".join(str(v) for v in bf.window))
        notices = bf.notices
    if truncate and getattr(args, "N", None) is not None:
        if args.N < 1 or args.N > len(values):
            raise CliInputError(f"--N must be in [1, {len(values)}]")
        values = values[: args.N]
    return values, sha, notices


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from None


_CRITERIA = {
    "dold": seqkit.MOBIUS,
    "phi": seqkit.PHI,
    "prime-power": seqkit.PRIME_POWER,
    "psi": seqkit.PSI,
}


def _cmd_check(args):
    window, sha, notices = _load_window(args)
    outputs = {"criterion": args.criterion, "window": str(len(window)), "notices": list(notices)}
    if args.criterion == "realizable":
        verdict = seqkit.is_realizable(window)
    elif args.criterion == "qdold":
        # integers are the constant-polynomial case of the q-analogue
        verdict = seqkit.q_dold_check([IntPoly.constant(v) for v in window])
    elif args.criterion == "psi":
        psi = _parse_values(args.psi, rational=False) if args.psi else None
        if psi is None:
            from .arith import mobius_window

            psi = mobius_window(len(window))
            outputs["psi"] = "mobius (default)"
        verdict = seqkit.congruence_test(window, seqkit.PSI, psi=psi)
    else:
        verdict = seqkit.congruence_test(window, _CRITERIA[args.criterion])
    return _verdict_report(f"check --criterion {args.criterion}", sha, verdict, outputs)


_TRANSFORMS = {
    "B": seqkit.transform_B,
    "C": seqkit.transform_C,
    "invB": seqkit.inverse_B,
    "invC": seqkit.inverse_C,
}


def _cmd_transform(args):
    window, sha, notices = _load_window(args, rational=True)
    result = _TRANSFORMS[args.op](window)
    outputs = {"values": _enc(result), "notices": list(notices)}
    return _report(f"transform --op {args.op}", sha, "ok", outputs), 0


def _cmd_realize(args):
    window, sha, notices = _load_window(args)
    try:
        fmap = dynsys.realize_sequence(window)
    except RealizabilityError as exc:
        outputs = {"notices": list(notices)}
        return (
            _report("realize", sha, "fails", outputs, exc.index, exc.witness),
            1,
        )
    outputs = {
        "size": str(fmap.size),
        "table": _enc(list(fmap.table)),
        "orbits": _enc(dynsys.orbit_spec(fmap)),
        "notices": list(notices),
    }
    return _report("realize", sha, "holds", outputs), 0


def _cmd_zeta(args):
    window, sha, notices = _load_window(args)
    if args.source == "fix":
        zeta = series.zeta_from_fix(window)
    else:
        spec = {n: c for n, c in enumerate(window, start=1) if c}
        for n, c in spec.items():
            if c < 0:
                raise CliInputError(f"orbit count at {n} is negative")
        zeta = series.zeta_product_from_orbits(spec, len(window))
    outputs = {"coefficients": _enc(list(zeta.coeffs)), "notices": list(notices)}
    if args.fit is not None:
        fit = series.rational_fit(zeta, args.fit)
        if fit is None:
            outputs["fit"] = "none"
        else:
            outputs["fit"] = {
                "numerator": _enc(list(fit.numerator)),
                "denominator": _enc(list(fit.denominator)),
                "degree": str(fit.degree),
            }
    return _report(f"zeta --from {args.source}", sha, "ok", outputs), 0


def _cmd_hankel(args):
    window, sha, notices = _load_window(args, rational=True)
    top = args.bound + args.width
    if len(window) < 2 * top + 1:
        raise CliInputError(f"window of length {len(window)} cannot reach m={top}")
    dets = lefschetz.hankel_dets(window, top)
    outputs = {
        "determinants": {str(m): _enc(dets[m]) for m in range(args.bound, top + 1)},
        "notices": list(notices),
    }
    verdict = Verdict.holds(top)
    for m in range(args.bound, top + 1):
        if dets[m] != 0:
            verdict = Verdict.fails(m, dets[m])
            break
    return _verdict_report(f"hankel --bound {args.bound} --width {args.width}", sha, verdict, outputs)


_GENERATORS = {
    "fibonacci": lambda horizon: repair.SequenceSource.fibonacci(horizon),
    "lucas": lambda horizon: repair.SequenceSource.lucas(horizon),
    "bernoulli-tau": lambda horizon: repair.SequenceSource.bernoulli_tau(horizon),
    "bernoulli-beta": lambda horizon: repair.SequenceSource.bernoulli_beta(horizon),
    "euler-abs": lambda horizon: repair.SequenceSource.euler_abs(horizon),
}


def _make_source(name: str, horizon: int) -> repair.SequenceSource:
    if name in _GENERATORS:
        return _GENERATORS[name](horizon)
    for prefix, ctor in (
        ("fib-power-", repair.SequenceSource.fibonacci_power),
        ("stirling1-", repair.SequenceSource.stirling1_row),
        ("stirling2-", repair.SequenceSource.stirling2_row),
    ):
        if name.startswith(prefix):
            try:
                arg = int(name[len(prefix) :])
            except ValueError:
                break
            return ctor(arg, horizon)
    raise CliInputError(
        f"unknown generator {name!r}; use fibonacci, lucas, fib-power-<j>, "
        "stirling1-<k>, stirling2-<k>, bernoulli-tau, bernoulli-beta, euler-abs"
    )


def _cmd_failure(args):
    if args.N is None:
        raise CliInputError("failure requires --N")
    src = _make_source(args.gen, args.N)
    result = repair.failure_window(src, args.N)
    sha = _sha("gen", f"{args.gen}:N={args.N}")
    outputs = {
        "generator": args.gen,
        "window": str(result.window),
        "lcm": str(result.lcm_value),
        "last_new_prime_at": str(result.last_new_prime_at),
    }
    return _report(f"failure --gen {args.gen}", sha, "ok", outputs), 0


def _cmd_trace(args):
    if args.N is None:
        raise CliInputError("trace requires --N")
    try:
        matrix = dynsys.parse_matrix_text(_read_file(args.matrix))
    except ValueError as exc:
        raise CliInputError(f"bad matrix file: {exc}") from None
    window = dynsys.trace_sequence(matrix, args.N)
    sha = _sha("matrix", ";".join(",".join(map(str, row)) for row in matrix))
    outputs = {"dimension": str(len(matrix)), "values": _enc(window)}
    return _report("trace", sha, "ok", outputs), 0


def _parse_time_change(spec: str):
    steps = []
    for part in spec.split(","):
        part = part.strip()
        fields = part.split(":")
        try:
            if fields[0] == "monomial" and len(fields) in (2, 3):
                k = int(fields[1])
                scale = int(fields[2]) if len(fields) == 3 else 1
                steps.append(repair.Monomial(k, scale))
                continue
            if fields[0] == "gp" and len(fields) == 2:
                steps.append(repair.PrimeStretch(int(fields[1])))
                continue
        except ValueError as exc:
            raise CliInputError(f"bad time change {part!r}: {exc}") from None
        raise CliInputError(f"bad time change {part!r}; use monomial:k[:l] or gp:p")
    return steps[0] if len(steps) == 1 else repair.Composition(tuple(steps))


def _cmd_timechange(args):
    # here --N sizes the output window; the input is never truncated
    window, sha, notices = _load_window(args, truncate=False)
    change = _parse_time_change(args.h)
    src = repair.SequenceSource.from_prefix(window)
    if args.N is not None:
        length = args.N
    else:
        length = 0
        while length < len(window) and change.apply(length + 1) <= len(window):
            length += 1
        if length == 0:
            raise CliInputError("time change exceeds the data horizon at n=1")
    values = repair.apply_time_change(src, change, length)
    outputs = {"values": _enc(values), "length": str(length), "notices": list(notices)}
    return _report(f"timechange --h {args.h}", sha, "ok", outputs), 0


def _cmd_classify(args):
    text = sys.stdin.read() if args.bfile == "-" else _read_file(args.bfile)
    bf = parse_bfile(text)
    window = list(bf.window)
    if args.N is not None:
        if args.N < 1 or args.N > len(window):
            raise CliInputError(f"--N must be in [1, {len(window)}]")
        window = window[: args.N]
    n = len(window)
    sha = _sha("bfile", ",".join(map(str, window)))
    outputs: dict = {"window": str(n), "notices": list(bf.notices)}

    def verdict_section(v: Verdict):
        if v.ok:
            return {"verdict": "holds", "through": str(v.index)}
        return {"verdict": "fails", "at": str(v.index), "witness": str(v.witness)}

    outputs["dold"] = verdict_section(seqkit.congruence_test(window, seqkit.MOBIUS))
    outputs["realizable"] = verdict_section(seqkit.is_realizable(window))

    bound = n // 2
    try:
        comb = seqkit.periodic_expansion(window, bound)
        outputs["periodic"] = {
            "verdict": "periodic",
            "support_bound": str(bound),
            "coefficients": _enc(comb.coeffs),
        }
    except DoldkitError as exc:
        outputs["periodic"] = {
            "verdict": "not periodic within bound",
            "support_bound": str(bound),
            "detail": str(exc),
        }

    hankel_bound = 4
    if n >= 2 * hankel_bound + 1:
        width = (n - 1) // 2 - hankel_bound
        outputs["hankel"] = verdict_section(
            lefschetz.generating_hankel_test(window, hankel_bound, width)
        )
        outputs["hankel"]["bound"] = str(hankel_bound)
        outputs["hankel"]["width"] = str(width)
    else:
        outputs["hankel"] = {"verdict": "skipped", "detail": "window too short"}

    if all(v >= 0 for v in window):
        result = repair.failure_window(repair.SequenceSource.from_prefix(window), n)
        outputs["failure"] = {
            "lcm": str(result.lcm_value),
            "last_new_prime_at": str(result.last_new_prime_at),
        }
    else:
        outputs["failure"] = {"verdict": "skipped", "detail": "negative entries"}

    dmax = min(6, (n - 2) // 2)
    if dmax >= 0:
        fit = series.rational_fit(series.zeta_from_fix(window), dmax)
        if fit is None:
            outputs["zeta_fit"] = {"verdict": f"no fit of degree <= {dmax}"}
        else:
            outputs["zeta_fit"] = {
                "degree": str(fit.degree),
                "numerator": _enc(list(fit.numerator)),
                "denominator": _enc(list(fit.denominator)),
            }
    else:
        outputs["zeta_fit"] = {"verdict": "skipped", "detail": "window too short"}

    return _report("classify", sha, "ok", outputs), 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doldkit",
        description="Exact tests and transforms for periodic-point counting sequences.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=None, help="echoed into reports")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_window_options(p, rational_hint=False):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--seq", help="inline comma- or space-separated values")
        group.add_argument("--bfile", help="b-file path, or '-' for stdin")
        p.add_argument("--N", type=int, default=None, help="truncate the window to N")

    p = sub.add_parser("check", help="run a congruence or realizability test")
    p.add_argument(
        "--criterion",
        required=True,
        choices=("dold", "phi", "prime-power", "psi", "realizable", "qdold"),
    )
    p.add_argument("--psi", default=None, help="weight window for --criterion psi")
    add_window_options(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("transform", help="apply a window transform")
    p.add_argument("--op", required=True, choices=tuple(_TRANSFORMS))
    add_window_options(p, rational_hint=True)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("realize", help="build a finite map realizing the window")
    add_window_options(p)
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("zeta", help="counting zeta function of a window")
    p.add_argument("--from", dest="source", required=True, choices=("fix", "orbits"))
    p.add_argument("--fit", type=int, default=None, metavar="DMAX")
    add_window_options(p)
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("hankel", help="Hankel determinants of a raw window")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--width", type=int, default=0)
    add_window_options(p, rational_hint=True)
    p.set_defaults(func=_cmd_hankel)

    p = sub.add_parser("failure", help="windowed repair factor of a named generator")
    p.add_argument("--gen", required=True)
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=_cmd_failure)

    p = sub.add_parser("trace", help="trace window of a matrix from a file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("timechange", help="re-index a window along a time change")
    p.add_argument("--h", required=True, help="e.g. monomial:2:1 or gp:2, comma-composed")
    add_window_options(p)
    p.set_defaults(func=_cmd_timechange)

    p = sub.add_parser("classify", help="composite report for a b-file")
    p.add_argument("bfile", help="b-file path, or '-' for stdin")
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=_cmd_classify)

    return parser


def run(argv) -> tuple[dict, int]:
    """Execute one CLI invocation, returning (report, exit_code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except (DoldkitError, ValueError, TypeError) as exc:
        report = _report(args.subcommand, _sha("error", ""), "error", {"detail": str(exc)})
        return report, 2
    if args.seed is not None:
        report["outputs"]["seed"] = str(args.seed)
    report["command"] = " ".join([report["command"]] + _echo_flags(args))
    return report, code


def _echo_flags(args) -> list[str]:
    extra = []
    if getattr(args, "N", None) is not None:
        extra.append(f"--N {args.N}")
    return extra


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    lines.append(f"input:   sha256:{report['input_sha'][:16]}")
    verdict = report["verdict"]
    if verdict == "fails":
        lines.append(
            f"verdict: FAILS at n={report['witness_index']} (witness {report['witness_value']})"
        )
    else:
        lines.append(f"verdict: {verdict.upper()}")
    lines.extend(_text_outputs(report["outputs"], indent="  "))
    return "\n".join(lines) + "\n"


def _text_outputs(value, indent="") -> list[str]:
    lines = []
    for key, val in value.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_outputs(val, indent + "  "))
        elif isinstance(val, list):
            if not val:
                continue
            lines.append(f"{indent}{key}: {', '.join(map(str, val))}")
        else:
            lines.append(f"{indent}{key}: {val}")
    return lines


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    report, code = run(argv)
    if code == 2 and report["verdict"] == "error":
        print(report["outputs"].get("detail", "input error"), file=sys.stderr)
        return code
    text = render_json(report) if args.format == "json" else render_text(report)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
