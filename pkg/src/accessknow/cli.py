"""Command-line front end.

Exit codes: 0 success, 1 logical failure (invalid proof or model, a
countermodel against the formula, a failed regression), 2 usage or I/O error.
Every verb accepts ``--format records`` for line-oriented key=value output.
"""

from __future__ import annotations

import argparse
import shlex
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .commonkg import check_lemma1090, check_lemma1100, is_intended
from .heyting import AlgebraError, AlgebraFormatError, algebra_corpus, check_lemma700, parse_algebra
from .ipc import is_ipc_tautology, kripke_countermodel
from .kernel import (DerivationError, LogicId, ProofFileError, check_derivation, parse_proof,
                     run_regression_scripts)
from .models import (FIXTURES, ModelExpansion, certified_theorems, check_lemma815,
                     corpus_models, countermodel_search, evaluate, fixture, format_model,
                     group_name, parse_model, soundness_sweep, theorem_truth,
                     validate_def810, validate_thm870, validator_agreement)
from .syntax import FormulaSyntaxError, is_propositional, parse, render, size, variables

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Output:
    """Collects a text report and the equivalent key=value records."""

    def __init__(self) -> None:
        self.text: list[str] = []
        self.records: list[tuple[str, dict]] = []

    def line(self, s: str = "") -> None:
        self.text.append(s)

    def record(self, kind: str, **fields) -> None:
        self.records.append((kind, fields))

    def render(self, fmt: str) -> str:
        if fmt == "records":
            rows = []
            for kind, fields in self.records:
                parts = [f"record={kind}"]
                parts += [f"{k}={shlex.quote(_scalar(v))}" for k, v in fields.items()]
                rows.append(" ".join(parts))
            return "\n".join(rows)
        return "\n".join(self.text)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# ------------------------------------------------------------- loading

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _logic(args, model: ModelExpansion | None = None) -> LogicId:
    agents = getattr(args, "agents", None)
    try:
        lid = LogicId.named(args.logic, agents)
        if agents is None and model is not None and lid.has_common and model.n_agents:
            lid = LogicId(lid.logic, model.n_agents)
        return lid
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _model(path: str) -> ModelExpansion:
    text = _read(path)
    try:
        return parse_model(text, label=Path(path).stem if path != "-" else "stdin")
    except AlgebraFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except AlgebraError:
        raise
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _formula(text: str, agents: int) -> object:
    return parse(text, n_agents=max(agents, 1))


# ------------------------------------------------------------- verbs

def cmd_parse(args, out: Output) -> int:
    f = _formula(args.formula, args.agents)
    out.line(render(f))
    out.line(f"size: {size(f)}")
    out.line(f"variables: {' '.join(variables(f)) or '-'}")
    out.line(f"propositional: {'yes' if is_propositional(f) else 'no'}")
    out.record("formula", text=render(f), size=size(f), variables=",".join(variables(f)),
               propositional=is_propositional(f))
    return OK


def _formula_lines(path: str) -> list[tuple[int, str]]:
    rows = []
    for lineno, raw in enumerate(_read(path).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    return rows


def _parse_at(text: str, lineno: int, path: str):
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise UsageError(f"{path}:{lineno}: {exc}") from None


def cmd_ipc(args, out: Output) -> int:
    rows = [(n, _parse_at(t, n, args.file)) for n, t in _formula_lines(args.file)]
    for n, f in rows:
        if not is_propositional(f):
            raise UsageError(f"{args.file}:{n}: formula is not propositional")
    code = OK
    for n, f in rows:
        taut = is_ipc_tautology(f)
        verdict = "TAUT" if taut else "NON-TAUT"
        if not taut:
            code = FAIL
        if args.action == "check":
            out.line(f"{verdict:8} {render(f)}")
            out.record("ipc", line=n, formula=render(f), verdict=verdict)
            continue
        km = kripke_countermodel(f, args.max_worlds)
        out.line(f"{verdict:8} {render(f)}")
        if km is None:
            out.line(f"  no Kripke countermodel with <= {args.max_worlds} worlds")
            out.record("ipc", line=n, formula=render(f), verdict=verdict, countermodel="none")
        else:
            out.text += ["  " + s for s in km.describe().splitlines()]
            out.record("ipc", line=n, formula=render(f), verdict=verdict,
                       worlds=len(km.worlds),
                       order=" ".join(f"{w}<{v}" for w, v in km.order),
                       valuation=";".join(f"{w}:{','.join(sorted(km.valuation[w]))}"
                                          for w in km.worlds))
    return code


def cmd_check_proof(args, out: Output) -> int:
    try:
        logic, d = parse_proof(_read(args.file))
    except ProofFileError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    try:
        thm = check_derivation(logic, d)
    except DerivationError as exc:
        out.line(f"INVALID derivation under {logic}")
        for diag in exc.diagnostics:
            out.line(f"  {diag}")
            out.record("diagnostic", logic=logic, step=diag.step, message=diag.message)
        out.record("proof", logic=logic, valid=False, steps=len(d))
        return FAIL
    out.line(f"valid derivation under {logic} ({len(d)} steps)")
    out.line(f"  {thm}")
    out.record("proof", logic=logic, valid=True, steps=len(d), theorem=render(thm.formula),
               hypotheses=len(thm.hypotheses))
    return OK


def cmd_lemmas(args, out: Output) -> int:
    logic = _logic(args)
    rep = run_regression_scripts(logic)
    out.text += rep.lines()
    for r in rep.results:
        out.record("script", name=r.name, logic=r.logic, status=r.status, steps=r.steps)
    out.line(f"{sum(r.ok for r in rep.results)}/{len(rep.results)} ok")
    return OK if rep.ok else FAIL


def cmd_algebra(args, out: Output) -> int:
    try:
        H = parse_algebra(_read(args.file))
    except AlgebraFormatError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    except AlgebraError as exc:
        out.line(f"not a Heyting algebra: {exc}")
        out.record("algebra", heyting=False, reason=str(exc))
        return FAIL
    if args.action == "check":
        out.text += H.describe().splitlines()
        dp = H.has_disjunction_property
        out.line(f"disjunction property: {'yes' if dp else 'no'}")
        rep = check_lemma700(H)
        out.text += ["prime filters " + s for s in rep.lines()]
        out.record("algebra", heyting=True, size=H.size, disjunction_property=dp,
                   filters=len(H.filters), prime=len(H.prime_filters),
                   ultra=len(H.ultrafilters))
        for clause, ok in rep.results.items():
            out.record("lemma700", clause=clause, passed=ok)
        return OK if rep.ok else FAIL
    for F in H.filters:
        body = "{" + ",".join(H.names[m] for m in sorted(F.elements)) + "}"
        out.line(f"{body} {F.kinds()}")
        out.record("filter", elements=body, kinds=F.kinds())
    return OK


def cmd_check_model(args, out: Output) -> int:
    M = _model(args.file)
    logic = _logic(args, M)
    try:
        reps = [validate_def810(logic, M), validate_thm870(logic, M)]
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    for rep in reps:
        out.text += rep.lines()
        for r in rep.results:
            out.record("condition", route=rep.route, logic=logic, condition=r.condition,
                       passed=r.passed, witness=r.witness)
        out.record("verdict", route=rep.route, logic=logic, valid=rep.valid)
    if reps[0].valid != reps[1].valid:
        out.line("ROUTES DISAGREE")
        out.record("agreement", agree=False)
        return FAIL
    return OK if reps[0].valid else FAIL


def _assignment(text: str, M: ModelExpansion) -> dict[str, int]:
    env = {}
    if text.strip() in ("", "-"):
        return env
    for part in text.replace(";", ",").split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"bad assignment entry {part!r}; expected var=element")
        k, v = (s.strip() for s in part.split("=", 1))
        try:
            env[k] = M.algebra.index(v)
        except (AlgebraError, ValueError, KeyError):
            raise UsageError(f"unknown element {v!r} in assignment") from None
    return env


def cmd_eval(args, out: Output) -> int:
    M = _model(args.model)
    logic = _logic(args, M)
    f = _formula(args.formula, logic.agents)
    if not logic.admits(f):
        raise UsageError(f"formula outside the language of {logic}")
    env = _assignment(args.assignment, M)
    missing = [v for v in variables(f) if v not in env]
    if missing:
        raise UsageError(f"unassigned variables: {', '.join(missing)}")
    try:
        v = evaluate(M, env, f)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    from .models.semantics import satisfies
    sat = satisfies(logic, M, env, f)
    out.line(f"value: {M.name_of(v)}")
    out.line(f"designated: {'yes' if sat else 'no'}")
    out.record("eval", formula=render(f), value=M.name_of(v), designated=sat)
    return OK


def cmd_countermodel(args, out: Output) -> int:
    logic = _logic(args)
    f = _formula(args.formula, logic.agents)
    if not logic.admits(f):
        raise UsageError(f"formula outside the language of {logic}")
    res = countermodel_search(logic, f, max_size=args.max_size,
                              max_candidates=args.max_candidates)
    if res.found is None:
        why = "search exhausted" if res.exhausted else "candidate budget reached"
        out.line(f"no countermodel for {render(f)} under {logic} "
                 f"({why}; {res.candidates} candidates, {res.models} models); inconclusive")
        out.record("countermodel", formula=render(f), logic=logic, found=False,
                   exhausted=res.exhausted, candidates=res.candidates, models=res.models)
        return OK
    cm = res.found
    out.line(f"countermodel for {render(f)} under {logic}")
    out.line(f"  {cm.describe()}")
    out.text += format_model(cm.model).rstrip("\n").splitlines()
    out.record("countermodel", formula=render(f), logic=logic, found=True,
               model=cm.model.label, value=cm.model.name_of(cm.value),
               assignment=",".join(f"{k}={cm.model.name_of(v)}" for k, v in cm.assignment.items()),
               candidates=res.candidates)
    return FAIL


def cmd_gen_model(args, out: Output) -> int:
    try:
        M = fixture(args.fixture)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    body = format_model(M).rstrip("\n")
    out.text += body.splitlines()
    out.record("model", fixture=args.fixture.upper(), size=M.algebra.size, agents=M.n_agents)
    return OK


def cmd_intended(args, out: Output) -> int:
    M = _model(args.file)
    logic = _logic(args, M)
    if not logic.has_common:
        raise UsageError(f"{logic} has no common-knowledge operators")
    rep = validate_thm870(logic, M)
    if not rep.valid:
        out.line(f"not a {logic} model; failed: {', '.join(rep.failed())}")
        out.record("intended", logic=logic, valid_model=False, failed=",".join(rep.failed()))
        return FAIL
    res = is_intended(M)
    out.text += res.lines(M)
    for v in res.verdicts:
        out.record("group", group=group_name(v.group), intended=v.by_sets,
                   common=v.common.render(M), greatest=v.greatest.render(M),
                   closure_test=v.by_closures,
                   witnesses=",".join(M.name_of(m) for m in v.witnesses))
    out.record("intended", logic=logic, valid_model=True, intended=res.intended,
               consistent=res.consistent)
    if not res.consistent:
        return FAIL
    return OK if res.intended else FAIL


# ------------------------------------------------------------- sweep

def cmd_sweep(args, out: Output) -> int:
    logics = [LogicId.named(n) for n in (args.logic or ["IEL", "L5", "EL5", "L5ACminus",
                                                       "L5AC"])]
    t0 = time.perf_counter()
    failures = 0

    def suite(name: str, logic, checks: int, violations: int, note: str = "") -> None:
        nonlocal failures
        failures += violations > 0
        out.line(f"{name:16} {str(logic):16} checks={checks} violations={violations}"
                 + (f"  {note}" if note else ""))
        out.record("suite", name=name, logic=logic, checks=checks, violations=violations)

    if not args.skip_algebras:
        bad = [H.label for H in algebra_corpus() if not check_lemma700(H).ok]
        suite("lemma700", "-", len(algebra_corpus()), len(bad), " ".join(bad))

    for logic in logics:
        rep = run_regression_scripts(logic)
        suite("scripts", logic, len(rep.results), sum(not r.ok for r in rep.results))
        models = corpus_models(logic, per_algebra=args.per_algebra, seed=args.seed)
        for extra in args.model or []:
            M = _model(extra)
            vr = validate_thm870(logic, M)
            if not vr.valid:
                for r in vr.results:
                    if not r.passed:
                        out.line(f"  {extra}: {r}")
                suite("extra-model", logic, 1, 1, f"{extra} invalid")
                continue
            models.append(M)
        sr = soundness_sweep(logic, models)
        suite("soundness", logic, sr.checks, len(sr.violations))
        tr = theorem_truth(logic, models, certified_theorems(logic))
        suite("theorem-truth", logic, tr.checks, len(tr.violations))
        for v in (sr.violations + tr.violations)[:5]:
            out.line(f"  {v}")
        total, valid, dis = validator_agreement(logic, args.candidates, args.seed)
        suite("validators", logic, total, len(dis), f"valid={valid}")
        l815 = sum(bool(check_lemma815(M)) for M in models)
        suite("lemma815", logic, len(models), l815)
        if logic.has_common:
            n1090 = n1100 = n1200 = 0
            for M in models:
                n1090 += bool(check_lemma1090(M))
                n1100 += bool(check_lemma1100(M))
                n1200 += not is_intended(M).consistent
            suite("lemma1090", logic, len(models), n1090)
            suite("lemma1100", logic, len(models), n1100)
            suite("closure-test", logic, len(models), n1200)
    out.line(f"sweep {'green' if not failures else 'RED'} in {time.perf_counter() - t0:.1f}s")
    out.record("sweep", failing_suites=failures, ok=not failures)
    return OK if not failures else FAIL


# ------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS,
                        help="text report (default) or key=value records")

    p = argparse.ArgumentParser(prog="accessknow", parents=[common],
                                description="Proof kernel and algebraic model checker for "
                                            "access-based intuitionistic epistemic logics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    def logic_opts(sp, required=True):
        sp.add_argument("--logic", required=required,
                        help="IEL, L5, EL5, L5ACminus or L5AC")
        sp.add_argument("--agents", type=int, default=None, help="agent count for the AC logics")

    sp = verb("parse", cmd_parse, "parse and pretty-print a formula")
    sp.add_argument("formula")
    sp.add_argument("--agents", type=int, default=9)

    sp = verb("ipc", cmd_ipc, "decide IPC validity of each formula in a file")
    sp.add_argument("action", choices=("check", "countermodel"))
    sp.add_argument("file")
    sp.add_argument("--max-worlds", type=int, default=5)

    sp = verb("check-proof", cmd_check_proof, "check a derivation file")
    sp.add_argument("file")

    sp = verb("lemmas", cmd_lemmas, "run the bundled derivation scripts")
    logic_opts(sp)

    sp = verb("algebra", cmd_algebra, "check an algebra file or list its filters")
    sp.add_argument("action", choices=("check", "filters"))
    sp.add_argument("file")

    sp = verb("check-model", cmd_check_model, "validate a model with both validators")
    logic_opts(sp)
    sp.add_argument("file")

    sp = verb("eval", cmd_eval, "evaluate a formula in a model under an assignment")
    logic_opts(sp)
    sp.add_argument("model")
    sp.add_argument("assignment", help="e.g. x=1/2,y=0 ('-' for none)")
    sp.add_argument("formula")

    sp = verb("countermodel", cmd_countermodel, "bounded search for a refuting model")
    logic_opts(sp)
    sp.add_argument("--max-size", type=int, default=6)
    sp.add_argument("--max-candidates", type=int, default=200_000)
    sp.add_argument("formula")

    sp = verb("gen-model", cmd_gen_model, "print a bundled fixture model")
    sp.add_argument("--fixture", required=True, choices=sorted(FIXTURES) + [k.lower()
                                                                          for k in FIXTURES])

    sp = verb("intended", cmd_intended, "common-knowledge intended-model analysis")
    logic_opts(sp)
    sp.add_argument("file")

    sp = verb("sweep", cmd_sweep, "run the regression suites over the corpus")
    sp.add_argument("--logic", action="append", help="restrict to a logic (repeatable)")
    sp.add_argument("--candidates", type=int, default=2_000,
                    help="generated candidates per logic for validator agreement")
    sp.add_argument("--per-algebra", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--model", action="append", help="extra model file to include")
    sp.add_argument("--skip-algebras", action="store_true")
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "text")
    out = Output()
    try:
        code = args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE
    except FormulaSyntaxError as exc:
        print(f"error: {exc}", file=stderr)
        if exc.text:
            print(f"  {exc.text}", file=stderr)
            print("  " + " " * (exc.column - 1) + "^", file=stderr)
        return USAGE
    except AlgebraError as exc:
        print(f"not a Heyting algebra: {exc}", file=stderr)
        return FAIL
    body = out.render(fmt)
    if body:
        print(body, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
