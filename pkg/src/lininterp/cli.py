"""``lininterp`` command line.

Exit codes: 0 success, 1 logical failure (rejected proof, mismatch, false
verification), 2 inconclusive, 3 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import serialize
from .calculus import SystemId, check_derivation
from .corpus import il_corpus, principle_instances
from .embeddings import EMBEDDINGS, principle_formula, translate_proof
from .errors import (
    CheckError, Inconclusive, LinInterpError, ModalityRequired, ParseError, UnsupportedInstance,
)
from .extraction import (
    check_extraction_wellformed, extract, principle_realizer, verify_principle_realizer,
)
from .interpretation import MODALITIES, interpret
from .models import semantic_equiv, verify_extraction
from .sexpr import derivation_to_str, formula_to_str, parse_derivation, parse_formula, show
from .standard import Verdict, correspondence_check

OK, FAILED, INCONCLUSIVE, USAGE = 0, 1, 2, 3
SIZE_ENV = "LININTERP_MAX_DOMAIN_SIZE"
DEFAULT_MAX_SIZE = 3


class UsageError(Exception):
    pass


@dataclass
class CommandConfig:
    command: str
    inputs: list = field(default_factory=list)
    modality: str | None = None
    system: str | None = None
    size: int = 2
    depth: int = 3
    output: str | None = None
    seed: int = 0
    format: str = "human"


def max_domain_size():
    return int(os.environ.get(SIZE_ENV, DEFAULT_MAX_SIZE))


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="lininterp",
                                description="Functional interpretations of linear logic.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled model enumeration")
    common.add_argument("-o", "--output", "--out", dest="output",
                        help="write the structured document to this file")
    sub = p.add_subparsers(dest="command", required=True)
    modalities = sorted(MODALITIES)

    c = sub.add_parser("check", parents=[common], help="check a derivation file")
    c.add_argument("--system", default="ill", choices=[s.value for s in SystemId])
    c.add_argument("file")

    c = sub.add_parser("embed", parents=[common],
                       help="translate an IL formula, or an IL proof file with --proof")
    c.add_argument("--which", choices=sorted(EMBEDDINGS), default="star")
    c.add_argument("--proof", action="store_true", help="treat the input as an IL proof file")
    c.add_argument("input")

    c = sub.add_parser("interpret", parents=[common], help="interpret a linear formula")
    c.add_argument("--modality", choices=modalities)
    c.add_argument("--simplified", "--simplified-with", dest="simplified", action="store_true",
                   help="simplified & clause")
    c.add_argument("formula")

    c = sub.add_parser("extract", parents=[common], help="extract terms from a derivation")
    c.add_argument("--modality", choices=modalities)
    c.add_argument("--simplified", "--simplified-with", dest="simplified", action="store_true",
                   help="check in ILL_r and use the simplified & clause")
    c.add_argument("file")

    c = sub.add_parser("verify", parents=[common],
                       help="validate an extraction document in finite models")
    c.add_argument("--domain-size", dest="size", type=_positive, default=2)
    c.add_argument("file")

    c = sub.add_parser("equiv", parents=[common], help="classical equivalence up to a size")
    c.add_argument("--size", type=_positive, default=2)
    c.add_argument("left")
    c.add_argument("right")

    c = sub.add_parser("correspond", parents=[common],
                       help="compare a standard interpretation with the linear one")
    c.add_argument("--which", choices=("mr", "dia", "dn"), required=True)
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--size", type=_positive, default=2)
    c.add_argument("--count", type=_positive, default=120)

    c = sub.add_parser("principles", parents=[common],
                       help="realize the built-in principle instances")
    c.add_argument("--modality", choices=modalities)
    c.add_argument("--kind")
    c.add_argument("--size", type=_positive, default=2)

    c = sub.add_parser("pipeline", parents=[common],
                       help="IL proof -> translation -> extraction -> verification")
    c.add_argument("--modality", choices=modalities, required=True)
    c.add_argument("--domain-size", dest="size", type=_positive, default=2)
    c.add_argument("file")
    return p


def config_from(args):
    cfg = CommandConfig(command=args.command, format=args.format, seed=args.seed,
                        output=args.output)
    for key in ("modality", "system", "size", "depth"):
        if getattr(args, key, None) is not None:
            setattr(cfg, key, getattr(args, key))
    for key in ("file", "input", "formula", "left", "right"):
        if getattr(args, key, None) is not None:
            cfg.inputs.append(getattr(args, key))
    if cfg.size > max_domain_size():
        raise UsageError(f"domain size {cfg.size} exceeds the cap {max_domain_size()} "
                         f"(set {SIZE_ENV} to raise it)")
    if cfg.depth < 0:
        raise UsageError("depth must be non-negative")
    return cfg


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


def _parse(parser, text, where):
    try:
        return parser(text)
    except ParseError as e:
        raise UsageError(f"{where}:{e}") from None


class Output:
    def __init__(self, cfg):
        self.cfg = cfg
        self.lines = []
        self.doc = {"command": cfg.command, "seed": cfg.seed}

    def say(self, text):
        self.lines.append(text)

    def render(self):
        if self.cfg.format == "structured":
            return serialize.dumps(self.doc)
        return "".join(line + "\n" for line in self.lines)


# ---------------------------------------------------------------------------
# Commands

def cmd_check(cfg, out, args):
    (path,) = cfg.inputs
    d = _parse(parse_derivation, _read(path), path)
    out.doc["system"] = cfg.system
    try:
        seq = check_derivation(d, cfg.system)
    except CheckError as e:
        out.doc.update(ok=False, path=list(e.path), reason=e.reason)
        out.say(f"rejected: {e}")
        return FAILED
    out.doc.update(ok=True, sequent=serialize.sequent_doc(seq))
    out.say(f"ok: {show(seq)}")
    return OK


def cmd_embed(cfg, out, args):
    (src,) = cfg.inputs
    if args.proof:
        d = _parse(parse_derivation, _read(src), src)
        try:
            t = translate_proof(d)
        except CheckError as e:
            out.doc.update(ok=False, reason=str(e))
            out.say(f"rejected: {e}")
            return FAILED
        out.doc.update(ok=True, derivation=derivation_to_str(t),
                       sequent=serialize.sequent_doc(check_derivation(t, "illr")))
        out.say(derivation_to_str(t))
        return OK
    a = _parse(parse_formula, src, "formula")
    f = EMBEDDINGS[args.which](a)
    out.doc.update(which=args.which, formula=formula_to_str(f))
    out.say(formula_to_str(f))
    return OK


def cmd_interpret(cfg, out, args):
    (src,) = cfg.inputs
    a = _parse(parse_formula, src, "formula")
    i = interpret(a, cfg.modality, simplified_with=args.simplified)
    out.doc.update(modality=cfg.modality, simplified_with=args.simplified,
                   interpretation=serialize.interpreted_doc(i))
    out.say("witnesses:  (" + " ".join(serialize.var_list(i.witnesses)) + ")")
    out.say("challenges: (" + " ".join(serialize.var_list(i.challenges)) + ")")
    out.say("matrix:     " + formula_to_str(i.matrix))
    return OK


def _extract(d, cfg, simplified, out):
    r = extract(d, cfg.modality, simplified_with=simplified)
    report = check_extraction_wellformed(r)
    out.doc["extraction"] = serialize.extraction_doc(r)
    out.doc["wellformed"] = {"ok": report.ok, "path": report.path, "reason": report.reason}
    return r, report


def cmd_extract(cfg, out, args):
    (path,) = cfg.inputs
    d = _parse(parse_derivation, _read(path), path)
    r, report = _extract(d, cfg, args.simplified, out)
    for h, a in zip(r.hypotheses, r.hyp_challenge_terms):
        out.say(f"hypothesis {formula_to_str(h.source)}: challenges "
                + " ".join(serialize.term_list(a)))
    out.say(f"conclusion {formula_to_str(r.conclusion.source)}: witnesses "
            + " ".join(serialize.term_list(r.conclusion_witness_terms)))
    out.say("verifying sequent: " + show(r.verifying_sequent))
    if not report.ok:
        out.say(f"ill-formed at {report.path}: {report.reason}")
        return FAILED
    return OK


def _verify(r, cfg, out):
    try:
        ok = verify_extraction(r, cfg.size, seed=cfg.seed)
    except Inconclusive as e:
        out.doc["verified"] = None
        out.say(f"inconclusive: {e}")
        return INCONCLUSIVE
    out.doc["verified"] = ok
    out.say(f"{'valid' if ok else 'INVALID'} in all models of size <= {cfg.size}")
    return OK if ok else FAILED


def cmd_verify(cfg, out, args):
    (path,) = cfg.inputs
    try:
        doc = json.loads(_read(path))
        if "extraction" in doc and doc.get("kind") != "extraction":
            doc = doc["extraction"]
        r = serialize.read_extraction(doc)
    except (ValueError, KeyError, TypeError, ParseError) as e:
        raise UsageError(f"{path}: not an extraction document ({e})") from None
    out.doc["domain_size"] = cfg.size
    return _verify(r, cfg, out)


def cmd_equiv(cfg, out, args):
    a = _parse(parse_formula, cfg.inputs[0], "left formula")
    b = _parse(parse_formula, cfg.inputs[1], "right formula")
    try:
        same = semantic_equiv(a, b, cfg.size, seed=cfg.seed)
    except Inconclusive as e:
        out.doc["equivalent"] = None
        out.say(f"inconclusive: {e}")
        return INCONCLUSIVE
    out.doc.update(size=cfg.size, equivalent=same)
    out.say("equivalent" if same else "not equivalent")
    return OK if same else FAILED


def cmd_correspond(cfg, out, args):
    formulas = il_corpus(args.count, cfg.depth, cfg.seed)
    rows, counts = [], {}
    for a in formulas:
        try:
            v = str(correspondence_check(args.which, a, cfg.size))
        except Inconclusive:
            v = "Inconclusive"
        counts[v] = counts.get(v, 0) + 1
        rows.append({"formula": formula_to_str(a), "verdict": v})
        out.say(f"{v:16} {formula_to_str(a)}")
    summary = ", ".join(f"{k}: {counts[k]}" for k in sorted(counts))
    out.say(f"{args.which}: {len(formulas)} formulas; {summary}")
    out.doc.update(which=args.which, depth=cfg.depth, size=cfg.size, results=rows,
                   summary=counts)
    if str(Verdict.MISMATCH) in counts:
        return FAILED
    return INCONCLUSIVE if "Inconclusive" in counts else OK


def cmd_principles(cfg, out, args):
    mods = [cfg.modality] if cfg.modality else sorted(MODALITIES)
    rows, code = [], OK
    for p in principle_instances():
        if args.kind and p.kind != args.kind:
            continue
        for m in mods:
            row = {"kind": p.kind, "modality": m, "formula": formula_to_str(principle_formula(p))}
            try:
                terms = principle_realizer(p, m, cfg.size)
                row["realizer"] = serialize.term_list(terms)
                row["valid"] = verify_principle_realizer(p, terms, m, cfg.size)
            except UnsupportedInstance as e:
                row["realizer"], row["valid"], row["reason"] = None, False, str(e)
            if not row["valid"]:
                code = FAILED
            rows.append(row)
            shown = " ".join(row["realizer"]) if row["realizer"] is not None else row["reason"]
            out.say(f"{p.kind:8} {m:3} {'ok ' if row['valid'] else 'BAD'} {shown}")
    out.doc.update(results=rows)
    return code


def cmd_pipeline(cfg, out, args):
    (path,) = cfg.inputs
    d = _parse(parse_derivation, _read(path), path)
    try:
        il_seq = check_derivation(d, "il")
        t = translate_proof(d)
    except CheckError as e:
        out.doc.update(ok=False, reason=str(e))
        out.say(f"rejected: {e}")
        return FAILED
    out.doc.update(il_sequent=serialize.sequent_doc(il_seq), translated=derivation_to_str(t),
                   domain_size=cfg.size)
    out.say("IL sequent: " + show(il_seq))
    out.say("translated: " + show(check_derivation(t, "illr")))
    r, report = _extract(t, cfg, True, out)
    out.say("verifying sequent: " + show(r.verifying_sequent))
    if not report.ok:
        out.say(f"ill-formed at {report.path}: {report.reason}")
        return FAILED
    return _verify(r, cfg, out)


COMMANDS = {
    "check": cmd_check, "embed": cmd_embed, "interpret": cmd_interpret, "extract": cmd_extract,
    "verify": cmd_verify, "equiv": cmd_equiv, "correspond": cmd_correspond,
    "principles": cmd_principles, "pipeline": cmd_pipeline,
}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else USAGE
    try:
        cfg = config_from(args)
        out = Output(cfg)
        code = COMMANDS[cfg.command](cfg, out, args)
    except (UsageError, ModalityRequired) as e:
        print(f"lininterp: {e}", file=stderr)
        return USAGE
    except LinInterpError as e:
        print(f"lininterp: {e}", file=stderr)
        return FAILED
    out.doc["exit"] = code
    # the file always gets the structured document so verify can read it back
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(serialize.dumps(out.doc))
        if cfg.format == "human":
            stdout.write(out.render())
    else:
        stdout.write(out.render())
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
