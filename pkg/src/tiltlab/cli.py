"""``tiltlab`` command line.

Every subcommand prints one JSON report (``"schema": 1``, sorted keys) and
exits with 0 on success, 1 when the mathematical verdict is false and 2 on
any error.  With ``--session FILE`` objects can be stored (``--as NAME``) and
referenced later as ``@NAME``; each successful command is appended to the
session log with file arguments inlined, so the log alone rebuilds the
session.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Callable

from .config import Config, load_config
from .errors import ParseError, RingMismatch, SemanticError, TiltlabError
from .factorization import using_trial_bound
from .fpmod import FpModule, canonical_invariants, hom_module, is_isomorphic, is_zero_module
from .fuchs_salce import (
    build_truncation,
    delta_truncation,
    ext_vanishing_probe,
    filtration_quotient,
    quotient_by_root,
    relations_full_rank,
    tree_sizes,
    verify_depth_divisibility,
)
from .ideals import Ideal, hom_to_ring_vanishes, ideals_equal
from .localization import (
    TRUE,
    compare_with_fuchs_salce,
    divisible_in_limit,
    theta_cross_check,
)
from .parsing import (
    format_canonical,
    ideal_to_json,
    module_to_json,
    parse_basis,
    parse_element,
    parse_ideal,
    parse_matrix,
    parse_module,
    parse_ring,
    parse_tree_ideals,
)
from .rings import RingSpec
from .session import Session, dump_json
from .spectrum import (
    GabrielTopologyFG,
    PrimeIdeal,
    ThomasonSet,
    admissible,
    checked_gabriel_contains,
    enumerate_tilting_classes,
    gabriel_contains_oracle,
    minimal_primes,
    spectrum,
    theta_contains,
    thomason_contains,
    vass,
)
from .tilting import (
    ctr,
    dagger,
    in_cotilting_class,
    in_tilting_class,
    is_divisible,
    lemma_transpose_check,
    pd_at_most_1,
    stably_equivalent,
    transpose,
)

SCHEMA = 1


class _Run:
    """State of one command: parsed args, session, config, argv rewrites."""

    def __init__(self, args: argparse.Namespace, session: Session, config: Config):
        self.args = args
        self.session = session
        self.config = config
        self.rewrites: dict[str, str] = {}

    # -- inputs ------------------------------------------------------------

    def ring(self, fallback: RingSpec | None = None) -> RingSpec:
        text = getattr(self.args, "ring", None)
        if text:
            return parse_ring(text)
        if fallback is not None:
            return fallback
        if self.session.ring is not None:
            return self.session.ring
        raise SemanticError("no ring given (use --ring)")

    def module(self, flag: str, value: str, ring: RingSpec | None = None) -> FpModule:
        """``@name``, inline JSON, a JSON file, or a relation matrix over ``ring``."""
        if value.startswith("@"):
            obj = self.session.get(value[1:])
            if not isinstance(obj, FpModule):
                raise SemanticError(f"{value} is not a module")
            if ring is not None and obj.ring != ring:
                raise RingMismatch(f"{value} lives over {obj.ring}, not {ring}")
            return obj
        if value.lstrip().startswith("{"):
            return parse_module(value, ring)
        path = Path(value)
        if path.is_file():
            M = parse_module(path.read_text(), ring)
            self.rewrites[flag] = json.dumps(module_to_json(M), sort_keys=True, separators=(",", ":"))
            return M
        if ring is None:
            raise SemanticError(f"{value!r} is neither a module file nor a session object")
        return parse_module(value, ring)

    def input_module(self) -> FpModule:
        a = self.args
        if a.module:
            return self.module("--module", a.module, parse_ring(a.ring) if a.ring else None)
        if a.matrix is not None:
            ring = self.ring()
            A = parse_matrix(a.matrix, ring)
            if A.rows == 0 and a.ngens:
                return FpModule.free(ring, a.ngens)
            return FpModule(ring, A.rows, A)
        raise SemanticError("give --module or --matrix")

    def ideal(self, value: str, ring: RingSpec) -> Ideal:
        if value.startswith("@"):
            obj = self.session.get(value[1:])
            if not isinstance(obj, Ideal):
                raise SemanticError(f"{value} is not an ideal")
            return obj
        return parse_ideal(value, ring)

    def basis(self, value: str, ring: RingSpec | None = None) -> tuple[RingSpec, tuple[Ideal, ...]]:
        if value.startswith("@"):
            obj = self.session.get(value[1:])
            if isinstance(obj, (GabrielTopologyFG, ThomasonSet)):
                return obj.ring, obj.basis
            if isinstance(obj, Ideal):
                return obj.ring, (obj,)
            raise SemanticError(f"{value} is not a basis")
        ring = ring or self.ring()
        ideals = tuple(parse_basis(value, ring))
        if not ideals:
            raise SemanticError("the basis needs at least one ideal")
        return ring, ideals

    def store(self, obj) -> None:
        name = getattr(self.args, "as_name", None)
        if name:
            self.session.store(name, obj)


def _inv(M: FpModule) -> dict:
    inv = canonical_invariants(M)
    return {**inv.to_json(), "string": str(inv)}


def _basis_json(basis) -> list[list[str]]:
    return [ideal_to_json(I) for I in basis]


def _parse_prime(text: str, ring: RingSpec) -> PrimeIdeal:
    I = parse_ideal(text, ring)
    primes = minimal_primes(I)
    if len(primes) != 1 or not ideals_equal(primes[0].ideal(), I):
        raise SemanticError(f"{I} is not a prime ideal of {ring}")
    return primes[0]


# -- subcommands --------------------------------------------------------------


def cmd_classify(run: _Run) -> tuple[dict, bool]:
    ring = run.ring()
    classes = enumerate_tilting_classes(ring)
    spec = spectrum(ring)
    assoc = vass(FpModule.free(ring, 1))
    rows = []
    for G in classes:
        rows.append(
            {
                "basis": _basis_json(G.basis),
                "thomason": [str(p) for p in spec if thomason_contains(ThomasonSet(ring, G.basis), p)],
                "admissible": admissible(ThomasonSet(ring, G.basis)),
                "faithful": G.faithful,
            }
        )
    report = {
        "ring": str(ring),
        "spectrum": [str(p) for p in spec],
        "vass": [str(p) for p in assoc],
        "classes": rows,
        "count": len(rows),
    }
    return report, True


def cmd_transpose(run: _Run) -> tuple[dict, bool]:
    M = run.input_module()
    T = transpose(M)
    run.store(T)
    return {
        "ring": str(M.ring),
        "input": _inv(M),
        "transpose": _inv(T),
        "module": module_to_json(T),
    }, True


def cmd_dagger(run: _Run) -> tuple[dict, bool]:
    M = run.input_module()
    D = dagger(M)
    run.store(D)
    pd = pd_at_most_1(M)
    return {
        "ring": str(M.ring),
        "input": _inv(M),
        "dagger": _inv(D),
        "module": module_to_json(D),
        "pd_at_most_1": pd,
        "dual_of_dagger_vanishes": is_zero_module(hom_module(D, FpModule.free(M.ring, 1))),
        "stably_equivalent_to_transpose": stably_equivalent(D, transpose(M)),
    }, True


def cmd_ctr(run: _Run) -> tuple[dict, bool]:
    ring = run.ring()
    I = run.ideal(run.args.ideal, ring)
    C = ctr(I)
    run.store(C)
    D = dagger(C)
    return {
        "ring": str(ring),
        "ideal": ideal_to_json(I),
        "canonical": format_canonical(I),
        "ctr": _inv(C),
        "module": module_to_json(C),
        "dagger": _inv(D),
        "dagger_is_quotient": is_isomorphic(D, I.quotient_module()),
    }, True


def cmd_member(run: _Run) -> tuple[dict, bool]:
    a = run.args
    ring_hint = parse_ring(a.ring) if a.ring else None
    M = run.module("--module", a.module, ring_hint)
    ring, basis = run.basis(a.basis, M.ring)
    G = GabrielTopologyFG(ring, basis)
    if a.cls == "tilting":
        verdict = in_tilting_class(M, G)
        per = [{"ideal": ideal_to_json(I), "divisible": is_divisible(M, I)} for I in basis]
    else:
        verdict = in_cotilting_class(M, G)
        per = [
            {"ideal": ideal_to_json(I), "hom_vanishes": is_zero_module(hom_module(I.quotient_module(), M))}
            for I in basis
        ]
    return {
        "ring": str(ring),
        "class": a.cls,
        "module": _inv(M),
        "basis": _basis_json(basis),
        "faithful": G.faithful,
        "per_ideal": per,
        "verdict": verdict,
    }, verdict


def cmd_check_lemma(run: _Run) -> tuple[dict, bool]:
    a = run.args
    ring_hint = parse_ring(a.ring) if a.ring else None
    M = run.module("--m", a.m, ring_hint)
    N = run.module("--n", a.n, ring_hint or M.ring)
    rep = lemma_transpose_check(M, N)
    return {
        "ring": str(M.ring),
        "m": _inv(M),
        "n": _inv(N),
        "transpose_m": _inv(transpose(M)),
        **rep.to_json(),
        "verdict": rep.passed,
    }, rep.passed


def cmd_fuchs_salce(run: _Run) -> tuple[dict, bool]:
    a = run.args
    ring = run.ring()
    ideals = parse_tree_ideals(a.ideals, ring)
    T = build_truncation(ideals, a.depth, run.config.tree_size_limit)
    run.store(T)
    gens, rels = tree_sizes(T.branching, len(ideals), a.depth)
    checks = {"filtration", "divisibility", "rank", "probe"} if a.verify == "all" else {a.verify}
    report = {
        "ring": str(ring),
        "ideals": [{"canonical": format_canonical(I), "generators": ideal_to_json(I)} for I in ideals],
        "depth": a.depth,
        "sizes": {
            "generators": T.presentation.ngens,
            "relations": T.presentation.relations.cols,
            "expected_generators": gens,
            "expected_relations": rels,
        },
        "module": _inv(T.presentation),
        "quotient_by_root": _inv(quotient_by_root(T)),
        "delta": _inv(delta_truncation(T)),
    }
    verdict = T.presentation.ngens == gens and T.presentation.relations.cols == rels
    if "filtration" in checks:
        steps = [filtration_quotient(T, k) for k in range(a.depth)]
        report["filtration"] = [s.to_json() for s in steps]
        verdict = verdict and all(s.verdict for s in steps)
    if "divisibility" in checks:
        div = verify_depth_divisibility(T)
        report["divisibility"] = div.to_json()
        verdict = verdict and div.passed
    if "rank" in checks:
        full = relations_full_rank(T)
        report["relations_full_rank"] = full
        verdict = verdict and full
    if "probe" in checks:
        probe = ext_vanishing_probe(T, GabrielTopologyFG(ring, T.ideals))
        report["probe"] = probe.to_json()
        verdict = verdict and probe.probes_consistent
    report["verdict"] = verdict
    return report, verdict


def cmd_localize(run: _Run) -> tuple[dict, bool]:
    a = run.args
    ring = run.ring()
    s = parse_element(a.s, ring)
    _, basis = run.basis(a.gabriel, ring)
    G = GabrielTopologyFG(ring, basis)
    bound = a.bound if a.bound is not None else run.config.localization_stage_bound
    rep = divisible_in_limit(G, s, bound)
    report = {
        "ring": str(ring),
        "s": str(s),
        "basis": _basis_json(basis),
        **rep.to_json(),
        "theta_cross_check": theta_cross_check(G, s, bound),
    }
    if a.compare_depth is not None:
        report["fuchs_salce_comparison"] = compare_with_fuchs_salce(s, a.compare_depth).to_json()
    ok = rep.verdict == TRUE
    if a.compare_depth is not None:
        ok = ok and report["fuchs_salce_comparison"]["passed"]
    return report, ok


def cmd_gabriel_member(run: _Run) -> tuple[dict, bool]:
    a = run.args
    ring, basis = run.basis(a.basis)
    G = GabrielTopologyFG(ring, basis)
    run.store(G)
    J = run.ideal(a.ideal, ring)
    bound = a.oracle_bound if a.oracle_bound is not None else run.config.product_search_bound
    verdict = checked_gabriel_contains(G, J, bound)
    return {
        "ring": str(ring),
        "basis": _basis_json(basis),
        "ideal": ideal_to_json(J),
        "minimal_primes": [str(p) for p in minimal_primes(J)],
        "oracle_bound": bound,
        "oracle": gabriel_contains_oracle(G, J, bound),
        "faithful": G.faithful,
        "verdict": verdict,
    }, verdict


def cmd_thomason(run: _Run) -> tuple[dict, bool]:
    a = run.args
    ring, basis = run.basis(a.basis)
    X = ThomasonSet(ring, basis)
    run.store(X)
    primes = sorted({p for I in basis for p in minimal_primes(I)}, key=PrimeIdeal.sort_key)
    report = {
        "ring": str(ring),
        "basis": _basis_json(basis),
        "minimal_primes": [str(p) for p in primes],
        "admissible": admissible(X),
        "hom_to_ring_vanishes": [hom_to_ring_vanishes(I) for I in basis],
    }
    verdict = True
    if a.prime:
        hit = thomason_contains(X, _parse_prime(a.prime, ring))
        report["contains_prime"] = hit
        verdict = verdict and hit
    if a.ideal:
        hit = theta_contains(X, run.ideal(a.ideal, ring))
        report["contains_closed_set"] = hit
        verdict = verdict and hit
    if a.prime or a.ideal:
        report["verdict"] = verdict
    return report, verdict


def cmd_save(run: _Run) -> tuple[dict, bool]:
    run.session.save(run.args.file)
    return {
        "file": run.args.file,
        "ring": None if run.session.ring is None else str(run.session.ring),
        "objects": {k: type(v).__name__ for k, v in sorted(run.session.objects.items())},
        "log_length": len(run.session.log),
    }, True


def cmd_load(run: _Run) -> tuple[dict, bool]:
    text = Path(run.args.file).read_text()
    loaded = Session.from_json(json.loads(text))
    replayed = replay(loaded.log, run.config)
    identical = replayed.dumps() == loaded.dumps() == text
    run.session.ring, run.session.objects, run.session.log = loaded.ring, loaded.objects, loaded.log
    return {
        "file": run.args.file,
        "ring": None if loaded.ring is None else str(loaded.ring),
        "objects": {k: type(v).__name__ for k, v in sorted(loaded.objects.items())},
        "log_length": len(loaded.log),
        "replay_identical": identical,
        "verdict": identical,
    }, identical


COMMANDS: dict[str, Callable[[_Run], tuple[dict, bool]]] = {
    "classify": cmd_classify,
    "transpose": cmd_transpose,
    "dagger": cmd_dagger,
    "ctr": cmd_ctr,
    "member": cmd_member,
    "check-lemma": cmd_check_lemma,
    "fuchs-salce": cmd_fuchs_salce,
    "localize": cmd_localize,
    "gabriel-member": cmd_gabriel_member,
    "thomason": cmd_thomason,
    "save": cmd_save,
    "load": cmd_load,
}

UNLOGGED = {"save", "load"}


class UsageError(Exception):
    """Bad command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tiltlab", description="1-tilting classes over computable commutative rings")
    p.add_argument("--session", help="session file read before and written after the command")
    p.add_argument("--config", help="key = value file (default: $TILTLAB_CONFIG)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_module_input(q):
        q.add_argument("--module", help="module JSON file, inline JSON, or @name")
        q.add_argument("--matrix", help="relation matrix, one row per generator: '4,6;0,2'")
        q.add_argument("--ngens", type=int, default=0, help="generator count when --matrix is empty")
        q.add_argument("--ring")

    def storable(q):
        q.add_argument("--as", dest="as_name", metavar="NAME", help="store the result in the session")

    q = sub.add_parser("classify", help="tilting classes of a ring with finite spectrum")
    q.add_argument("--ring")

    q = sub.add_parser("transpose", help="transpose of a presentation")
    with_module_input(q)
    storable(q)

    q = sub.add_parser("dagger", help="Ext^1(S, R)")
    with_module_input(q)
    storable(q)

    q = sub.add_parser("ctr", help="R^n modulo the generator column of an ideal")
    q.add_argument("--ring")
    q.add_argument("--ideal", required=True)
    storable(q)

    q = sub.add_parser("member", help="membership in a tilting or cotilting class")
    q.add_argument("--class", dest="cls", choices=("tilting", "cotilting"), required=True)
    q.add_argument("--module", required=True)
    q.add_argument("--basis", required=True)
    q.add_argument("--ring")

    q = sub.add_parser("check-lemma", help="Hom/Tor and tensor/Ext identities for a transpose")
    q.add_argument("--m", required=True)
    q.add_argument("--n", required=True)
    q.add_argument("--ring")

    q = sub.add_parser("fuchs-salce", help="finite-depth tree truncation")
    q.add_argument("--ring")
    q.add_argument("--ideals", required=True, help="'(2:4,6);(3:3)'")
    q.add_argument("--depth", type=int, required=True)
    q.add_argument(
        "--verify",
        choices=("all", "filtration", "divisibility", "rank", "probe", "none"),
        default="all",
    )
    storable(q)

    q = sub.add_parser("localize", help="divisibility of the localization tower")
    q.add_argument("--ring")
    q.add_argument("--s", required=True)
    q.add_argument("--gabriel", required=True)
    q.add_argument("--bound", type=int)
    q.add_argument("--compare-depth", type=int)

    q = sub.add_parser("gabriel-member", help="ideal membership in a Gabriel topology")
    q.add_argument("--ring")
    q.add_argument("--basis", required=True)
    q.add_argument("--ideal", required=True)
    q.add_argument("--oracle-bound", type=int)
    storable(q)

    q = sub.add_parser("thomason", help="Thomason set of a basis")
    q.add_argument("--ring")
    q.add_argument("--basis", required=True)
    q.add_argument("--prime")
    q.add_argument("--ideal")
    storable(q)

    q = sub.add_parser("save", help="write the session to a file")
    q.add_argument("file")

    q = sub.add_parser("load", help="read a session file and check its log replays identically")
    q.add_argument("file")
    return p


def _rewrite(argv: list[str], rewrites: dict[str, str]) -> list[str]:
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        flag = tok.split("=", 1)[0]
        if flag in rewrites:
            out += [flag, rewrites[flag]]
            skip = "=" not in tok
            continue
        out.append(tok)
    return out


def _error_report(command: str | None, exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        err["line"], err["column"] = exc.line, exc.column
    return {"schema": SCHEMA, "command": command, "error": err}


def run_command(session: Session, argv: list[str], config: Config | None = None) -> tuple[dict, int]:
    """Run one subcommand against ``session`` (mutated in place)."""
    config = config or Config()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error_report(None, exc), 2
    run = _Run(args, session, config)
    caught: list[warnings.WarningMessage] = []
    try:
        with warnings.catch_warnings(record=True) as caught, using_trial_bound(config.trial_bound):
            warnings.simplefilter("always")
            body, ok = COMMANDS[args.command](run)
    except (TiltlabError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        return _error_report(args.command, exc), 2
    report = {"schema": SCHEMA, "command": args.command, **body}
    messages = sorted({str(w.message) for w in caught})
    if messages:
        report["warnings"] = messages
    if args.command not in UNLOGGED:
        session.log.append(_rewrite(list(argv), run.rewrites))
    return report, 0 if ok else 1


def replay(log: list[list[str]], config: Config | None = None) -> Session:
    session = Session()
    for cmd in log:
        report, code = run_command(session, cmd, config)
        if code == 2:
            raise SemanticError(f"replay of {cmd} failed: {report['error']['message']}")
    return session


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    top = _Parser(prog="tiltlab", add_help=False)
    top.add_argument("--session")
    top.add_argument("--config")
    if any(tok in ("-h", "--help") for tok in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    try:
        opts, rest = top.parse_known_args(argv)
        config = load_config(opts.config)
        session = Session.load(opts.session) if opts.session and Path(opts.session).exists() else Session()
    except (TiltlabError, OSError, UsageError) as exc:
        sys.stdout.write(dump_json(_error_report(None, exc)))
        return 2
    report, code = run_command(session, rest, config)
    sys.stdout.write(dump_json(report))
    if code == 2:
        sys.stderr.write(f"tiltlab: {report['error']['type']}: {report['error']['message']}\n")
    elif opts.session:
        session.save(opts.session)
    return code


if __name__ == "__main__":
    sys.exit(main())
