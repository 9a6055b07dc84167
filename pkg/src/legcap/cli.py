"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 a structural check failed,
3 a needed ingredient is unavailable, 4 an oracle disagreed.
Documents go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from .bounds import (
    Level,
    length_lower_bound,
    length_to_doc,
    parse_level,
    width_at_level,
    width_report,
    width_to_doc,
)
from .capacity import (
    Spectrum,
    capacity_oracle,
    capacity_spectrum,
    capacity_to_doc,
    fundamental_cocycle,
    marked_point,
)
from .dga.algebra import Dga, build_dga, dga_to_doc
from .dga.oracle import MAX_CROSSINGS, brute_force_disk_oracle
from .dga.sweep import enumerate_disks
from .errors import (
    CheckError,
    InputError,
    LegcapError,
    NoAugmentation,
    NullClass,
    OracleMismatch,
    SchemaError,
    Unavailable,
)
from .front_model import PlatFront, fmt_fraction, parse_front
from .linearize import (
    MAX_DEG0,
    degree0_ids,
    enumerate_augmentations,
    homology,
    is_coboundary,
    linearized_complex,
    lch_to_doc,
)

AUG_SCHEMA = "legcap-augmentations/1"
VERIFY_SCHEMA = "legcap-corpus-verify/1"
MANIFEST = "manifest.json"

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_UNAVAILABLE, EXIT_ORACLE = 0, 1, 2, 3, 4


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, OracleMismatch):
        return EXIT_ORACLE
    if isinstance(exc, Unavailable):
        return EXIT_UNAVAILABLE
    if isinstance(exc, CheckError):
        return EXIT_CHECK
    return EXIT_INPUT


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: Tuple[str, ...]
    fmt: str = "table"
    augmentation: Optional[int] = None      # None means all
    marked_arc: Optional[int] = 0           # None means all
    oracle: bool = False
    level: Level = Level()
    max_deg0: int = MAX_DEG0
    max_crossings: int = MAX_CROSSINGS


# -- input ----------------------------------------------------------------------

def corpus_dir() -> Path:
    env = os.environ.get("LEGCAP_CORPUS")
    if env:
        return Path(env)
    return Path(str(resources.files("legcap") / "corpus"))


def resolve_path(name: str) -> Path:
    """Use ``name`` as given; fall back to the corpus for ``corpus/x.json`` or bare names."""
    p = Path(name)
    if p.exists():
        return p
    parts = p.parts
    if len(parts) == 2 and parts[0] == "corpus":
        return corpus_dir() / parts[1]
    if len(parts) == 1:
        q = corpus_dir() / name
        if q.exists():
            return q
    return p


def load_front(name: str) -> PlatFront:
    path = resolve_path(name)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{name}: {exc.strerror or exc}") from None
    try:
        return parse_front(text)
    except InputError as exc:
        raise type(exc)(f"{name}: {exc}") from None


# -- shared pipeline pieces -------------------------------------------------------

def check_disks_against_oracle(dga: Dga, max_crossings: int) -> None:
    diag = dga.diagram
    fast = enumerate_disks(diag)
    slow = brute_force_disk_oracle(diag, max_crossings)
    for c in diag.chord_ids:
        a = sorted(fast.get(c, ()), key=lambda d: d.sort_key())
        b = sorted(slow.get(c, ()), key=lambda d: d.sort_key())
        if a != b:
            raise OracleMismatch(
                f"disks of {c}: sweep found {len(a)}, brute force found {len(b)}")


def check_capacity_against_oracle(dga: Dga, spec: Spectrum) -> None:
    for e in spec.entries:
        o = capacity_oracle(dga, e.augmentation, e.cocycle)
        if o.value != e.result.value:
            raise OracleMismatch(
                f"augmentation {e.index}: capacity {fmt_fraction(e.result.value)} but oracle "
                f"gives {fmt_fraction(o.value)}")


def check_all_marked_arcs(dga: Dga, spec: Spectrum) -> List[int]:
    """Every marked arc must give a cocycle cohomologous to the first one."""
    arcs = list(range(dga.diagram.n_arcs))
    for e in spec.entries:
        ref = e.cocycle
        for arc in arcs:
            x = fundamental_cocycle(dga, e.augmentation, marked_point(dga, arc), ref.complex)
            diff = x.coefficients ^ ref.coefficients
            if diff and not is_coboundary(ref.complex, 1, diff):
                raise NullClass(
                    f"augmentation {e.index}: marked arcs {ref.marked_point.arc_id} and {arc} "
                    "give different classes")
    return arcs


def select(entries: Sequence, index: Optional[int]) -> list:
    if index is None:
        return list(entries)
    if not 0 <= index < len(entries):
        raise SchemaError(f"augmentation {index} does not exist ({len(entries)} found)")
    return [entries[index]]


# -- table rendering ------------------------------------------------------------

def _word(w) -> str:
    return " ".join(w) if w else "1"


def table_dga(doc: dict) -> str:
    lines = [f"{doc['name']}", f"{'chord':<8}{'kind':<12}{'degree':>7}  height"]
    for c in doc["chords"]:
        lines.append(f"{c['id']:<8}{c['kind']:<12}{c['grading']:>7}  {c['height']}")
    lines.append("")
    for a in (c["id"] for c in doc["chords"]):
        ws = doc["differential"][a]
        lines.append(f"d{a} = " + (" + ".join(_word(w) for w in ws) if ws else "0"))
    return "\n".join(lines) + "\n"


def table_augmentations(doc: dict) -> str:
    ids = doc["degree0_chords"]
    lines = [f"{doc['name']}: {len(doc['augmentations'])} augmentation(s)",
             "index  " + " ".join(f"{c:>4}" for c in ids)]
    for r in doc["augmentations"]:
        lines.append(f"{r['index']:<7}" + " ".join(f"{v:>4}" for v in r["augmentation"]))
    return "\n".join(lines) + "\n"


def table_lch(doc: dict) -> str:
    lines = [doc["name"]]
    for r in doc["augmentations"]:
        b = ", ".join(f"{d}: {n}" for d, n in r["betti"])
        cb = ", ".join(f"{d}: {n}" for d, n in r["cobetti"])
        lines.append(f"augmentation {r['index']} {r['augmentation']}: "
                     f"LCH_* {{{b}}}  LCH^* {{{cb}}}")
    return "\n".join(lines) + "\n"


def table_capacity(doc: dict) -> str:
    lines = [f"{doc['name']} (marked arc {doc['marked_arc']})",
             f"{'index':<7}{'augmentation':<20}{'capacity':<12}witness"]
    for r in doc["augmentations"]:
        lines.append(f"{r['index']:<7}{str(r['augmentation']):<20}{r['capacity']:<12}"
                     f"{r['witness_chord']}")
    lines.append(f"c_min = {doc['c_min']}  c_max = {doc['c_max']}")
    for note in doc.get("checks", []):
        lines.append(f"check: {note}")
    return "\n".join(lines) + "\n"


def table_width(doc: dict) -> str:
    w = doc["width"]
    lines = [doc["name"], f"level b = {doc['level']['b']}"]
    for k in ("lower", "upper_min_aug", "upper_max_aug", "exact", "top_half"):
        if k in w:
            sym = doc.get("symbolic", {}).get(k)
            lines.append(f"  {k:<14}{w[k]}" + (f"  ({sym})" if sym else ""))
    lines.append("provenance:")
    lines.extend(f"  - {p}" for p in doc["provenance"])
    return "\n".join(lines) + "\n"


def table_length(doc: dict) -> str:
    lb = doc["length_bounds"][0]
    lines = [doc["name"],
             f"  length >= {lb['value']}  ({lb['symbolic']})",
             f"  ratio = {lb['w_minus_lower']} / (2 * {lb['c_max_plus']}) = {lb['ratio']}",
             "provenance:"]
    lines.extend(f"  - {p}" for p in doc["provenance"])
    return "\n".join(lines) + "\n"


def table_verify(doc: dict) -> str:
    lines = []
    for e in doc["entries"]:
        lines.append(f"{e['status'].upper():<5} {e['file']}" +
                     (f": {e['detail']}" if e.get("detail") else ""))
    lines.append(f"{doc['failures']} failure(s) in {len(doc['entries'])} file(s)")
    return "\n".join(lines) + "\n"


def dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- commands --------------------------------------------------------------------

# exit code, document, diagnostics for stderr
Result = Tuple[int, dict, List[str]]


def cmd_dga(cfg: RunConfig) -> Result:
    front = load_front(cfg.inputs[0])
    dga = build_dga(front)
    if cfg.oracle:
        check_disks_against_oracle(dga, cfg.max_crossings)
    return EXIT_OK, dga_to_doc(dga), []


def cmd_augmentations(cfg: RunConfig) -> Result:
    dga = build_dga(load_front(cfg.inputs[0]))
    augs = enumerate_augmentations(dga, cfg.max_deg0)
    ids0 = degree0_ids(dga)
    rows = [{"index": n, "augmentation": list(a.vector(ids0))} for n, a in enumerate(augs)]
    doc = {"schema": AUG_SCHEMA, "name": dga.name, "degree0_chords": list(ids0),
           "augmentations": rows}
    if not augs:
        return EXIT_UNAVAILABLE, doc, [f"{dga.name} admits no augmentation"]
    return EXIT_OK, doc, []


def cmd_lch(cfg: RunConfig) -> Result:
    dga = build_dga(load_front(cfg.inputs[0]))
    augs = enumerate_augmentations(dga, cfg.max_deg0)
    if not augs:
        raise NoAugmentation(f"{dga.name} admits no augmentation")
    idx = select(range(len(augs)), cfg.augmentation)
    sums = [homology(linearized_complex(dga, augs[n])) for n in range(len(augs))]
    doc = lch_to_doc(dga, augs, sums)
    doc["augmentations"] = [doc["augmentations"][n] for n in idx]
    return EXIT_OK, doc, []


def cmd_capacity(cfg: RunConfig) -> Result:
    dga = build_dga(load_front(cfg.inputs[0]))
    arc = 0 if cfg.marked_arc is None else cfg.marked_arc
    spec = capacity_spectrum(dga, arc_id=arc, max_deg0=cfg.max_deg0)
    checks = []
    if cfg.marked_arc is None:
        arcs = check_all_marked_arcs(dga, spec)
        checks.append(f"all {len(arcs)} marked arcs give cohomologous cocycles")
    if cfg.oracle:
        check_capacity_against_oracle(dga, spec)
        checks.append("capacity agrees with the exhaustive oracle")
    doc = capacity_to_doc(dga, spec)
    doc["augmentations"] = select(doc["augmentations"], cfg.augmentation)
    if checks:
        doc["checks"] = checks
    return EXIT_OK, doc, []


def cmd_width(cfg: RunConfig) -> Result:
    front = load_front(cfg.inputs[0])
    rep = width_report(front, max_deg0=cfg.max_deg0)
    if not cfg.level.is_zero:
        rep = width_at_level(rep, cfg.level)
    if rep.unavailable:
        return EXIT_UNAVAILABLE, width_to_doc(rep), [rep.unavailable]
    return EXIT_OK, width_to_doc(rep), []


def cmd_length(cfg: RunConfig) -> Result:
    if len(cfg.inputs) != 2:
        raise SchemaError("length needs two fronts: negative end, then positive end")
    fm, fp = load_front(cfg.inputs[0]), load_front(cfg.inputs[1])
    lb = length_lower_bound(fm, fp, max_deg0=cfg.max_deg0)
    return EXIT_OK, length_to_doc(fm.name, fp.name, lb), []


def _verify_entry(entry: dict, cfg: RunConfig) -> Tuple[str, str]:
    """Run the whole pipeline on one corpus file; ("ok"|"fail", detail)."""
    name = entry["file"]
    want_err = entry.get("error")
    try:
        front = load_front(str(corpus_dir() / name))
        dga = build_dga(front)
        check_disks_against_oracle(dga, cfg.max_crossings)
        spec = capacity_spectrum(dga, max_deg0=cfg.max_deg0)
        check_all_marked_arcs(dga, spec)
        check_capacity_against_oracle(dga, spec)
        for e in spec.entries:
            homology(e.cocycle.complex)
        rep = width_report(front, dga, spec, cfg.max_deg0)
    except LegcapError as exc:
        if want_err == type(exc).__name__:
            return "ok", f"{want_err} as expected"
        return "fail", f"{type(exc).__name__}: {exc}"
    if want_err:
        return "fail", f"expected {want_err}, pipeline succeeded"
    got = {
        "augmentations": len(spec.entries),
        "c_min": fmt_fraction(spec.c_min),
        "c_max": fmt_fraction(spec.c_max),
        "width": {
            "lower": None if rep.lower is None else fmt_fraction(rep.lower),
            "upper_min_aug": fmt_fraction(rep.upper_min_aug),
            "exact": None if rep.exact is None else fmt_fraction(rep.exact),
        },
    }
    bad = []
    for k, v in got.items():
        if k in entry and entry[k] != v:
            bad.append(f"{k}: expected {json.dumps(entry[k], sort_keys=True)}, "
                       f"got {json.dumps(v, sort_keys=True)}")
    if bad:
        return "fail", "; ".join(bad)
    return "ok", (f"{got['augmentations']} augmentation(s), capacity {got['c_min']}"
                  + (f"..{got['c_max']}" if got["c_min"] != got["c_max"] else "")
                  + (f", width exact {got['width']['exact']}" if got["width"]["exact"]
                     else f", width in [{got['width']['lower']}, "
                          f"{got['width']['upper_min_aug']}]"))


def cmd_corpus_verify(cfg: RunConfig) -> Result:
    root = Path(cfg.inputs[0]) if cfg.inputs else corpus_dir()
    try:
        manifest = json.loads((root / MANIFEST).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"{root / MANIFEST}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{root / MANIFEST}: invalid JSON: {exc}") from None
    sub = RunConfig("corpus-verify", (), max_deg0=cfg.max_deg0, max_crossings=cfg.max_crossings)
    prev = os.environ.get("LEGCAP_CORPUS")
    os.environ["LEGCAP_CORPUS"] = str(root)
    try:
        rows = []
        for entry in sorted(manifest["entries"], key=lambda e: e["file"]):
            status, detail = _verify_entry(entry, sub)
            rows.append({"file": entry["file"], "status": status, "detail": detail})
    finally:
        if prev is None:
            del os.environ["LEGCAP_CORPUS"]
        else:
            os.environ["LEGCAP_CORPUS"] = prev
    fails = sum(r["status"] != "ok" for r in rows)
    doc = {"schema": VERIFY_SCHEMA, "entries": rows, "failures": fails}
    notes = [f"{r['file']}: {r['detail']}" for r in rows if r["status"] != "ok"]
    return (EXIT_CHECK if fails else EXIT_OK), doc, notes


COMMANDS: Dict[str, Tuple[Callable[[RunConfig], Result], Callable[[dict], str]]] = {
    "dga": (cmd_dga, table_dga),
    "augmentations": (cmd_augmentations, table_augmentations),
    "lch": (cmd_lch, table_lch),
    "capacity": (cmd_capacity, table_capacity),
    "width": (cmd_width, table_width),
    "length": (cmd_length, table_length),
    "corpus-verify": (cmd_corpus_verify, table_verify),
}


# -- argument parsing ----------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _arc(text: str) -> Optional[int]:
    if text == "all":
        return None
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"marked arc must be an id or 'all': {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("arc ids are nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="legcap",
                                description="Fundamental capacity and width bounds for "
                                            "Legendrian knots given by plat fronts.")
    sub = p.add_subparsers(dest="command", required=True)
    nargs = {"length": 2, "corpus-verify": "?"}
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("inputs", nargs=nargs.get(name, 1),
                       metavar="DIR" if name == "corpus-verify" else "FRONT")
        s.add_argument("--format", choices=("table", "json"), default="table")
        s.add_argument("--all-augmentations", action="store_true")
        s.add_argument("--augmentation", type=int, metavar="N")
        s.add_argument("--marked-arc", type=_arc, default=0, metavar="ID|all")
        s.add_argument("--oracle", action="store_true")
        s.add_argument("--level", default="0", metavar="B")
        s.add_argument("--max-deg0", type=_positive, default=MAX_DEG0, metavar="N")
        s.add_argument("--max-crossings", type=_positive, default=MAX_CROSSINGS, metavar="N")
    return p


def make_config(ns: argparse.Namespace) -> RunConfig:
    inputs = ns.inputs if isinstance(ns.inputs, list) else ([] if ns.inputs is None else [ns.inputs])
    if ns.all_augmentations and ns.augmentation is not None:
        raise SchemaError("--all-augmentations and --augmentation are exclusive")
    if ns.augmentation is not None and ns.augmentation < 0:
        raise SchemaError("--augmentation must be nonnegative")
    aug = ns.augmentation
    return RunConfig(command=ns.command, inputs=tuple(inputs), fmt=ns.format,
                     augmentation=aug, marked_arc=ns.marked_arc, oracle=ns.oracle,
                     level=parse_level(ns.level), max_deg0=ns.max_deg0,
                     max_crossings=ns.max_crossings)


def run(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = make_config(ns)
        fn, table = COMMANDS[cfg.command]
        code, doc, notes = fn(cfg)
    except LegcapError as exc:
        print(f"legcap: {type(exc).__name__}: {exc}", file=err)
        return exit_code(exc)
    for note in notes:
        print(f"legcap: {note}", file=err)
    out.write(dump(doc) if cfg.fmt == "json" else table(doc))
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
