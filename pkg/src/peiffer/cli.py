"""Command-line front end.

Exit codes: 0 success or property pass, 1 property failure, 2 usage or
input error.  ``--json`` output carries ``"schema": 1`` and is written with
sorted keys, so equal inputs give byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import _kernels
from .errors import BudgetExceeded, PeifferError
from .functors import DEFAULT_RANK_BOUND, verify_sequences
from .fuzz import case_seeds, random_identity_sequence, random_moves
from .lambda_map import cross_effect3, lambda2, lambda3
from .oracle import DEFAULT_BUDGET, is_prime, lcs_degree, magnus_expand, shadow
from .sequences import (
    ColoredPresentation,
    IdentitySequence,
    block_decompose,
    format_presentation,
    format_sequence,
    fundamental_sequence,
    parse_presentation,
    parse_sequence,
    realized_words,
    sequence_product,
    validate,
)
from .words import Alphabet, Word, format_word, names_in, parse_word
from .wu import sphere_generator_word, wu_bracket_generators, wu_presentation


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    paths: list = field(default_factory=list)
    p: int = 2
    d: int = 3
    seed: int = 0
    move_count: int = 10
    sample_count: int = 100
    json: bool = False
    budget: int = DEFAULT_BUDGET
    extra: dict = field(default_factory=dict)


def parse_presentation_file(path) -> ColoredPresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def parse_sequence_file(path, pres: ColoredPresentation) -> IdentitySequence:
    return parse_sequence(Path(path).read_text(encoding="utf-8"), pres)


def _alphabet_for(text: str, gens: str | None) -> Alphabet:
    if gens:
        return Alphabet(tuple(g for g in gens.replace(",", " ").split() if g))
    names = names_in(text)
    if not names:
        names = ["x1"]
    return Alphabet(tuple(names))


def _word(cfg: RunConfig, text: str) -> Word:
    return parse_word(text, _alphabet_for(text, cfg.extra.get("gens")))


def _need_prime(cfg: RunConfig) -> None:
    if not is_prime(cfg.p):
        raise UsageError(f"--p must be prime, got {cfg.p}")
    if cfg.d < 1:
        raise UsageError("--deg must be >= 1")


def _pres_and_seq(cfg: RunConfig, n_seq: int = 1):
    if len(cfg.paths) != 1 + n_seq:
        raise UsageError(f"expected a presentation file and {n_seq} sequence file(s)")
    pres = parse_presentation_file(cfg.paths[0])
    seqs = [parse_sequence_file(p, pres) for p in cfg.paths[1:]]
    return pres, seqs


# Each handler returns (exit code, payload dict, text).

def cmd_reduce(cfg):
    w = _word(cfg, cfg.paths[0])
    return 0, {"word": format_word(w), "length": len(w)}, format_word(w)


def cmd_check_seq(cfg):
    pres, (seq,) = _pres_and_seq(cfg)
    ok = validate(seq)
    try:
        realized = [format_word(w) for w in realized_words(seq)]
        prod = format_word(sequence_product(seq))
    except IndexError:
        realized, prod = None, None
    payload = {"valid": ok, "length": len(seq), "product": prod, "realized": realized}
    return (0 if ok else 1), payload, "valid" if ok else "invalid"


def cmd_blocks(cfg):
    pres, (seq,) = _pres_and_seq(cfg)
    bd = block_decompose(seq)
    names = ["r_c", "s_c", "t_c"][: pres.n_classes]
    prods = {n: format_word(w) for n, w in zip(names, bd.products)}
    lines = [format_sequence(bd.reordered)] + [f"{n} = {w}" for n, w in prods.items()]
    return 0, {"reordered": format_sequence(bd.reordered), "products": prods}, "\n".join(lines)


def _lambda_payload(val):
    return {
        "spelling": val.bracket_spelling(),
        "representative": format_word(val.representative),
        "blocks": [format_word(b) for b in val.blocks],
    }


def cmd_lambda3(cfg):
    _, (seq,) = _pres_and_seq(cfg)
    val = lambda3(seq)
    return 0, _lambda_payload(val), val.bracket_spelling()


def cmd_lambda2(cfg):
    _, (seq,) = _pres_and_seq(cfg)
    val = lambda2(seq)
    return 0, _lambda_payload(val), format_word(val.representative)


def cmd_cross_effect(cfg):
    _, (a, b) = _pres_and_seq(cfg, 2)
    w = cross_effect3(a, b)
    return 0, {"representative": format_word(w)}, format_word(w)


def _lambda_for(pres: ColoredPresentation) -> Callable:
    if pres.n_classes == 3:
        return lambda3
    if pres.n_classes == 2:
        return lambda2
    raise UsageError("fuzz-peiffer needs a presentation with 2 or 3 classes")


def cmd_fuzz_peiffer(cfg):
    _need_prime(cfg)
    if not cfg.paths:
        raise UsageError("fuzz-peiffer needs a presentation file")
    pres = parse_presentation_file(cfg.paths[0])
    lam = _lambda_for(pres)
    bases = [parse_sequence_file(p, pres) for p in cfg.paths[1:]]
    if not bases:
        fs = fundamental_sequence(pres)
        bases = [fs] if fs is not None else []
    sh = shadow(pres, cfg.p, cfg.d, cfg.budget)
    start = time.perf_counter()
    failures = []
    for idx, s in enumerate(case_seeds(cfg.seed, cfg.sample_count)):
        rng = random.Random(s)
        c = random_identity_sequence(pres, rng, bases)
        c2, _ = random_moves(c, rng, rng.randint(0, cfg.move_count))
        if not (validate(c) and validate(c2)) or not sh.congruent(lam(c).representative, lam(c2).representative):
            failures.append({"case": idx, "seed": s})
    elapsed = time.perf_counter() - start
    payload = {
        "p": cfg.p, "d": cfg.d, "seed": cfg.seed, "count": cfg.sample_count,
        "moves": cfg.move_count, "passed": cfg.sample_count - len(failures), "failures": failures,
    }
    text = f"{payload['passed']}/{cfg.sample_count} passed (p={cfg.p}, d={cfg.d}, seed={cfg.seed}, {elapsed:.2f}s)"
    for f in failures:
        text += f"\n  FAIL case {f['case']} seed {f['seed']}"
    return (1 if failures else 0), payload, text


def cmd_magnus(cfg):
    if cfg.d < 1:
        raise UsageError("--deg must be >= 1")
    w = _word(cfg, cfg.paths[0])
    p = cfg.extra.get("mod")
    if p is not None and not is_prime(p):
        raise UsageError(f"--p must be prime, got {p}")
    s = magnus_expand(w, cfg.d, p)
    names = w.alphabet.names
    terms = {" ".join(names[i] for i in m) or "1": c for m, c in sorted(s.terms().items(), key=lambda t: (len(t[0]), t[0]))}
    return 0, {"word": format_word(w), "d": cfg.d, "p": p, "terms": terms}, s.format(names)


def cmd_gamma_degree(cfg):
    if cfg.d < 1:
        raise UsageError("--deg must be >= 1")
    w = _word(cfg, cfg.paths[0])
    k = lcs_degree(w, cfg.d)
    return 0, {"word": format_word(w), "d": cfg.d, "degree": k}, "exceeds d" if k is None else str(k)


def _named_words(cfg, pres: ColoredPresentation) -> dict:
    out = {}
    for entry in cfg.extra.get("words") or []:
        name, _, text = entry.partition("=")
        if not text:
            name, text = entry, entry
        out[name] = parse_word(text, pres.alphabet)
    return out


def cmd_shadow(cfg):
    _need_prime(cfg)
    pres = parse_presentation_file(cfg.paths[0])
    rep = shadow(pres, cfg.p, cfg.d, cfg.budget).report(_named_words(cfg, pres))
    data = rep.to_dict()
    lines = [
        f"shadow p={rep.p} d={rep.d} classes={rep.n_classes} image order {rep.image_order}",
        "R orders: " + ", ".join(f"{k}={v}" for k, v in rep.R_orders.items()),
        "meet orders: " + ", ".join(f"{k}={v}" for k, v in rep.meet_orders.items()),
        "factor orders: " + ", ".join(f"{k}={v}" for k, v in rep.factor_orders.items()),
        f"|D| = {rep.D_order}  |N| = {rep.N_order}  |N/D| = {rep.quotient_order}  invariants {rep.quotient_invariants}",
    ]
    for k, v in rep.labels.items():
        lines.append(f"{k}: coset {v['coset']} in_N={v['in_N']} in_D={v['in_D']} order mod D={v['order_mod_D']}")
    return 0, data, "\n".join(lines)


def cmd_congruent(cfg):
    _need_prime(cfg)
    if len(cfg.paths) != 3:
        raise UsageError("congruent needs a presentation file and two words")
    pres = parse_presentation_file(cfg.paths[0])
    u, v = (parse_word(t, pres.alphabet) for t in cfg.paths[1:])
    ok = shadow(pres, cfg.p, cfg.d, cfg.budget).congruent(u, v)
    return (0 if ok else 1), {"congruent": ok, "p": cfg.p, "d": cfg.d}, "congruent" if ok else "not congruent"


def _names_opt(cfg):
    g = cfg.extra.get("gens")
    return tuple(x for x in g.replace(",", " ").split() if x) if g else None


def cmd_wu_gens(cfg):
    n, max_len = cfg.extra["n"], cfg.extra["max_len"]
    words = [format_word(w) for w in wu_bracket_generators(n, max_len, _names_opt(cfg))]
    return 0, {"n": n, "max_len": max_len, "count": len(words), "words": words}, "\n".join(words)


def cmd_wu_presentation(cfg):
    inst = wu_presentation(cfg.extra["n"], _names_opt(cfg))
    text = format_presentation(inst.presentation)
    return 0, {"n": inst.n, "presentation": text}, text.rstrip("\n")


def cmd_sphere_gen(cfg):
    w = sphere_generator_word(cfg.extra["k"])
    return 0, {"k": cfg.extra["k"], "word": format_word(w), "generators": list(w.alphabet.names)}, format_word(w)


def cmd_functors(cfg):
    rep = verify_sequences(cfg.extra["rank"], DEFAULT_RANK_BOUND)
    d = rep.to_dict()
    text = (
        f"rank {rep.rank}: SP2={rep.ranks['SP2']} Gamma={rep.ranks['GammaW']} P2={rep.ranks['P2']}"
        f" |A/2|={rep.ranks['TensorZ2_order']}\n"
        f"(o1) 0->SP2->P2->A->0 exact: {rep.o1['exact']}\n"
        f"(o2) 0->SP2->Gamma->A/2->0 exact: {rep.o2['exact']}\n"
        f"coker(SP2->Gamma) invariants {rep.cokernel_invariants} order {rep.cokernel_order}\n"
        f"naturality: {rep.naturality}"
    )
    return (0 if rep.exact and rep.naturality is not False else 1), d, text


COMMANDS = {
    "reduce": (cmd_reduce, "reduce a word", ["word"]),
    "check-seq": (cmd_check_seq, "validate an identity sequence", ["pres", "seq"]),
    "blocks": (cmd_blocks, "block decomposition of a sequence", ["pres", "seq"]),
    "lambda2": (cmd_lambda2, "two-class Lambda value", ["pres", "seq"]),
    "lambda3": (cmd_lambda3, "three-class Lambda value", ["pres", "seq"]),
    "cross-effect": (cmd_cross_effect, "cross-effect of two sequences", ["pres", "seq_a", "seq_b"]),
    "fuzz-peiffer": (cmd_fuzz_peiffer, "Peiffer-invariance fuzz campaign in the shadow", ["pres", "seq*"]),
    "magnus": (cmd_magnus, "truncated Magnus expansion", ["word"]),
    "gamma-degree": (cmd_gamma_degree, "lower central series degree", ["word"]),
    "shadow": (cmd_shadow, "finite shadow report", ["pres"]),
    "congruent": (cmd_congruent, "shadow congruence of two words", ["pres", "u", "v"]),
    "wu-gens": (cmd_wu_gens, "Wu bracket generators", []),
    "wu-presentation": (cmd_wu_presentation, "Wu presentation file", []),
    "sphere-gen": (cmd_sphere_gen, "sphere generator words", []),
    "functors": (cmd_functors, "verify the quadratic functor sequences", []),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="peiffer", description="Identity sequences, Lambda maps and finite shadows.")
    ap.add_argument("--backend", action="store_true", help="print the kernel backend and exit")
    sub = ap.add_subparsers(dest="command")
    for name, (_, help_text, positionals) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        for pos in positionals:
            if pos.endswith("*"):
                sp.add_argument(pos[:-1], nargs="*")
            else:
                sp.add_argument(pos)
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--deg", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--count", type=int, default=100)
        sp.add_argument("--moves", type=int, default=10)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--gens", default=None, help="generator names, comma or space separated")
        if name in ("wu-gens", "wu-presentation"):
            sp.add_argument("--n", type=int, default=2)
        if name == "wu-gens":
            sp.add_argument("--max-len", type=int, default=3)
        if name == "sphere-gen":
            sp.add_argument("--k", type=int, default=3)
        if name == "functors":
            sp.add_argument("--rank", type=int, default=2)
        if name == "shadow":
            sp.add_argument("--word", action="append", default=[], help="NAME=WORD to label (repeatable)")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    positional = COMMANDS[ns.command][2]
    paths = []
    for pos in positional:
        val = getattr(ns, pos.rstrip("*"))
        paths.extend(val if isinstance(val, list) else [val])
    extra = {"gens": ns.gens, "mod": ns.p}
    for key in ("n", "max_len", "k", "rank"):
        if hasattr(ns, key):
            extra[key] = getattr(ns, key)
    if hasattr(ns, "word"):
        extra["words"] = ns.word
    return RunConfig(
        command=ns.command, paths=paths, p=2 if ns.p is None else ns.p, d=ns.deg,
        seed=ns.seed, move_count=ns.moves, sample_count=ns.count, json=ns.json,
        budget=ns.budget, extra=extra,
    )


def run_command(cfg: RunConfig) -> tuple[int, str]:
    """Run one command; return the exit code and the text to print."""
    handler = COMMANDS[cfg.command][0]
    try:
        code, payload, text = handler(cfg)
    except (UsageError, PeifferError, BudgetExceeded, OSError, ValueError, IndexError) as exc:
        return 2, f"error: {exc}"
    if cfg.json:
        payload = {"schema": 1, "command": cfg.command, **payload}
        text = json.dumps(payload, sort_keys=True, indent=2)
    return code, text


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    if ns.backend:
        print(_kernels.BACKEND)
        return 0
    if not ns.command:
        ap.print_help(sys.stderr)
        return 2
    code, text = run_command(config_from_args(ns))
    stream = sys.stderr if code == 2 else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
