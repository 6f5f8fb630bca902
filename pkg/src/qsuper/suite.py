"""Verification-suite orchestration and machine-readable reports."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from importlib import resources

from .presentation import (
    DEFAULT_MAX_STEPS,
    BudgetExceeded,
    Presentation,
    QMode,
    TermBudget,
    build_presentation,
    random_word,
)

ALL_SUITES = ("presentation", "determinants", "localization", "hopf", "qspaces", "points")
WITNESS_LIMIT = 2000


class ConfigError(ValueError):
    pass


@dataclass
class VerificationConfig:
    m: int = 1
    n: int = 1
    mode: str = "quantum"
    q: str = "symbolic"
    suites: tuple = ALL_SUITES
    max_terms: int | None = None
    max_steps: int = DEFAULT_MAX_STEPS
    seed: int = 0
    words: int = 200
    trials: int = 100
    triples: int = 50
    grassmann: int = 4
    allow_slow: bool = False

    def validate(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ConfigError("need m, n >= 0 and m + n >= 1")
        if self.mode not in ("classical", "quantum"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        unknown = set(self.suites) - set(ALL_SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(sorted(unknown))}")
        if self.max_terms is not None and self.max_terms <= 0:
            raise ConfigError("max_terms must be positive")
        if self.max_steps <= 0:
            raise ConfigError("max_steps must be positive")
        for name in ("words", "trials", "triples"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if not 0 <= self.grassmann <= 10:
            raise ConfigError("grassmann must be in 0..10")
        try:
            qm = self.qmode()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if (self.large and qm.is_symbolic and "hopf" in self.suites and not self.allow_slow):
            raise ConfigError("symbolic hopf suite at this size needs --allow-slow "
                              "(use a rational --q for a feasible run)")
        return self

    @property
    def large(self) -> bool:
        return self.m >= 2 and self.n >= 2

    def qmode(self) -> QMode:
        if self.mode == "classical":
            return QMode.classical()
        return QMode.parse(self.q)

    def presentation(self) -> Presentation:
        return build_presentation(self.m, self.n, self.qmode())

    def to_json(self) -> dict:
        d = asdict(self)
        d["suites"] = list(self.suites)
        d["q"] = self.qmode().label()
        return d


@dataclass
class Report:
    config: VerificationConfig
    rows: list = field(default_factory=list)

    def add(self, suite: str, axiom: str, status: str, witness, seconds: float, high: int):
        row = {
            "suite": suite,
            "axiom": axiom,
            "size": [self.config.m, self.config.n],
            "mode": self.config.mode,
            "q": self.config.qmode().label(),
            "status": status,
            "pass": status == "pass",
            "seconds": round(seconds, 6),
            "term_high_water": high,
        }
        if witness is not None and status != "pass":
            text = str(witness)
            row["witness"] = text if len(text) <= WITNESS_LIMIT else text[:WITNESS_LIMIT] + "..."
        self.rows.append(row)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "budget": 0, "skipped": 0}
        for r in self.rows:
            out[r["status"]] += 1
        return out

    @property
    def status(self) -> str:
        c = self.counts()
        if c["fail"]:
            return "fail"
        if c["budget"]:
            return "budget"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "budget": 3}[self.status]

    def to_json(self) -> dict:
        rows = sorted(self.rows, key=lambda r: (r["suite"], r["axiom"]))
        return {"config": self.config.to_json(), "status": self.status,
                "summary": self.counts(), "rows": rows}

    def text(self) -> str:
        lines = []
        for r in self.rows:
            line = f"[{r['status'].upper():7}] {r['suite']}:{r['axiom']}  ({r['seconds']:.3f}s, {r['term_high_water']} terms)"
            if "witness" in r:
                line += f"\n          witness: {r['witness']}"
            lines.append(line)
        c = self.counts()
        lines.append(f"{self.status.upper()}: {c['pass']} passed, {c['fail']} failed, "
                     f"{c['budget']} over budget, {c['skipped']} skipped")
        return "\n".join(lines)


def load_schema() -> dict:
    return json.loads(resources.files("qsuper").joinpath("report_schema.json").read_text())


def validate_report(doc: dict):
    import jsonschema

    jsonschema.validate(doc, load_schema())


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


class _Runner:
    def __init__(self, cfg: VerificationConfig):
        self.cfg = cfg
        self.report = Report(cfg)

    def unit(self, suite: str, fn, label: str):
        """Run ``fn`` (returning [(axiom, ok, witness), ...]) under the term budget."""
        TermBudget.reset(self.cfg.max_terms)
        t0 = time.perf_counter()
        try:
            rows = list(fn())
        except BudgetExceeded as exc:
            self.report.add(suite, label, "budget", str(exc), time.perf_counter() - t0, TermBudget.high)
            return
        finally:
            high = TermBudget.high
            TermBudget.reset(None)
        dt = time.perf_counter() - t0
        for axiom, ok, witness in rows:
            status = "skipped" if ok is None else ("pass" if ok else "fail")
            self.report.add(suite, axiom, status, witness, dt, high)

    def skip(self, suite: str, axiom: str, reason: str):
        self.report.add(suite, axiom, "skipped", reason, 0.0, 0)


# -- suites ----------------------------------------------------------------------

def _presentation_suite(run: _Runner, p: Presentation):
    cfg = run.cfg

    def confluence():
        bad = p.check_confluence()
        return [("confluence", not bad, ", ".join(p.format_word(w) for w in bad[:5]))]

    def strategies():
        rng = random.Random(cfg.seed)
        for _ in range(cfg.words):
            w = random_word(p, rng)
            fast = p.reduce_terms({w: 1})
            for strat in ("left", "right", "random"):
                if p.rewrite_terms({w: 1}, strat) != fast:
                    return [("pbw:strategy_independence", False, f"{p.format_word(w)} ({strat})")]
        return [("pbw:strategy_independence", True, None)]

    def associativity():
        rng = random.Random(cfg.seed + 1)
        for _ in range(cfg.words):
            u, v, w = (p.element({random_word(p, rng, 4): 1}) for _ in range(3))
            if (u * v) * w != u * (v * w):
                return [("pbw:associativity", False, f"{u} | {v} | {w}")]
        return [("pbw:associativity", True, None)]

    def normal_words_fixed():
        rng = random.Random(cfg.seed + 2)
        for _ in range(cfg.words):
            w = tuple(sorted(random_word(p, rng)))
            if not p.is_normal(w):
                continue
            if p.reduce_terms({w: 1}) != {w: p.one}:
                return [("pbw:normal_words_fixed", False, p.format_word(w))]
        return [("pbw:normal_words_fixed", True, None)]

    for fn, label in ((confluence, "confluence"), (strategies, "pbw:strategy_independence"),
                      (associativity, "pbw:associativity"), (normal_words_fixed, "pbw:normal_words_fixed")):
        run.unit("presentation", fn, label)


def _blocks_present(p: Presentation):
    return [b for b, size in (("11", p.m), ("22", p.n)) if size]


def _determinants_suite(run: _Runner, p: Presentation):
    from .determinants import (
        ScalingFailure,
        block_view,
        det_commutation_check,
        det_scaling_check,
        det_scaling_sample,
        laplace_check,
        one_per_row_words,
    )

    for block in _blocks_present(p):
        v = block_view(p, block)
        for r in range(1, len(v.rows) + 1):
            run.unit("determinants", lambda v=v, r=r: [(f"laplace:{v.block}:row{r}", *laplace_check(p, v, r))],
                     f"laplace:{block}:row{r}")

    def commutation(which):
        rows = []
        lo, hi = (1, p.m) if which == "Dm" else (p.m + 1, p.N)
        for i in range(1, p.N + 1):
            for j in range(1, p.N + 1):
                kind, data = det_commutation_check(p, which, i, j)
                odd = p.p(i) != p.p(j)
                name = f"commutation:{which}:{p.letter_name(p.letter(i, j))}"
                if odd:
                    rows.append((name, kind == "q_scalar" and data == -1, f"{kind} {data}"))
                elif lo <= i <= hi and lo <= j <= hi:
                    rows.append((name, kind == "central", f"{kind} {data}"))
        return rows

    def scaling(which):
        try:
            if p.N <= 3:
                count = 0
                for idx in one_per_row_words(p, which):
                    t_row = det_scaling_check(p, which, idx, "row")
                    t_col = det_scaling_check(p, which, idx, "col")
                    if t_row != t_col:
                        return [(f"scaling:{which}", False, f"row/col exponents differ at {idx}")]
                    count += 1
                return [(f"scaling:{which}:exhaustive", True, None)]
            n = det_scaling_sample(p, which, random.Random(run.cfg.seed), max(run.cfg.words, 200))
            return [(f"scaling:{which}:sampled", n >= 200, f"{n} words")]
        except ScalingFailure as exc:
            return [(f"scaling:{which}", False, str(exc))]

    for which, size in (("Dm", p.m), ("Dn", p.n)):
        if size:
            run.unit("determinants", lambda w=which: commutation(w), f"commutation:{which}")
            run.unit("determinants", lambda w=which: scaling(w), f"scaling:{which}")


def _localization_suite(run: _Runner, p: Presentation):
    from .localization import berezinian_inverse_check

    loc = p.loc
    qm = p.qmode

    def inverse_commutation(which):
        rows = []
        dinv = loc.inverse_symbol(which)
        for g in p.odd_generators:
            x = loc.gen(*p.indices(g))
            r = dinv * x - qm.qpow(1) * (x * dinv)
            rows.append((f"inverse_commutation:D{which}^-1:{p.letter_name(g)}", r.is_zero(), str(r)))
        d = loc.det(which)
        r1, r2 = d * dinv - 1, dinv * d - 1
        rows.append((f"inverse:D{which}", r1.is_zero() and r2.is_zero(), f"{r1} ; {r2}"))
        return rows

    for which, size in (("m", p.m), ("n", p.n)):
        if size:
            run.unit("localization", lambda w=which: inverse_commutation(w), f"inverse_commutation:D{which}")
    if run.cfg.large and not run.cfg.allow_slow:
        run.skip("localization", "berezinian_inverse", "needs --allow-slow at this size")
        return
    mode = "classical" if qm.kind == "classical" else "quantum"
    run.unit("localization", lambda: [(f"berezinian_inverse:{mode}", berezinian_inverse_check(p, mode), None)],
             "berezinian_inverse")


def _hopf_suite(run: _Runner, p: Presentation):
    from .hopf import (
        HopfReport,
        check_antipode_axiom,
        check_berezinian_grouplike,
        check_coassociativity,
        check_counit,
        check_delta_det_inverse,
        check_partition,
        check_relations,
        lemma_nilpotent_sum,
        lemma_r0_commutation,
        lemma_weighted_sums,
    )

    mode = "classical" if p.qmode.kind == "classical" else "quantum"
    slow_ok = not run.cfg.large or run.cfg.allow_slow

    def via_report(check):
        def fn():
            rep = HopfReport((p.m, p.n), mode, p.qmode.label())
            check(p, rep)
            return [(r.axiom, r.passed, r.witness) for r in rep.results]
        return fn

    if slow_ok:
        run.unit("hopf", via_report(check_relations), "relations")
        run.unit("hopf", via_report(check_counit), "counit")
        run.unit("hopf", via_report(check_coassociativity), "coassociativity")
    else:
        for name in ("relations", "counit", "coassociativity"):
            run.skip("hopf", name, "needs --allow-slow at this size")
    for which, size in (("Dm", p.m), ("Dn", p.n)):
        if not size:
            continue
        run.unit("hopf", lambda w=which: [(f"telescoping:{w}", check_delta_det_inverse(p, w, mode), None)],
                 f"telescoping:{which}")
        run.unit("hopf", lambda w=which: [(f"partition:{w}", check_partition(p, w), None)], f"partition:{which}")

        def lemmas(w=which):
            rows = []
            for i, (a, b) in enumerate(lemma_r0_commutation(p, w), 1):
                rows.append((f"r0_commutation:{w}:R{i}", a and b, f"R0: {a}, R0^-1: {b}"))
            a, b = lemma_weighted_sums(p, w)
            rows.append((f"weighted_sums:{w}", a and b, f"left: {a}, right: {b}"))
            rows.append((f"nilpotent_sum:{w}", lemma_nilpotent_sum(p, w), None))
            return rows

        run.unit("hopf", lemmas, f"lemmas:{which}")
    if slow_ok:
        run.unit("hopf", via_report(check_antipode_axiom), "antipode")
        run.unit("hopf", lambda: [("berezinian_grouplike", check_berezinian_grouplike(p, mode), None)],
                 "berezinian_grouplike")
    else:
        run.skip("hopf", "antipode", "needs --allow-slow at this size")
        run.skip("hopf", "berezinian_grouplike", "needs --allow-slow at this size")


def _qspaces_suite(run: _Runner, p: Presentation):
    from .qspaces import build_qspace, check_comodule

    for dual in (False, True):
        label = "dual" if dual else "primal"

        def fn(dual=dual, label=label):
            rep = check_comodule(p, build_qspace(p.m, p.n, dual, p.qmode))
            return [(f"{label}:{axiom}", ok, witness) for axiom, ok, witness in rep.results]

        run.unit("qspaces", fn, label)


def _points_suite(run: _Runner, p: Presentation):
    from .points import run_point_properties

    cfg = run.cfg

    def fn():
        rep = run_point_properties(p.m, p.n, cfg.grassmann, cfg.trials, cfg.triples, cfg.seed)
        return [(name, passed == total, f"{passed}/{total}") for name, (passed, total) in sorted(rep.counts.items())]

    run.unit("points", fn, "properties")


_SUITES = {
    "presentation": _presentation_suite,
    "determinants": _determinants_suite,
    "localization": _localization_suite,
    "hopf": _hopf_suite,
    "qspaces": _qspaces_suite,
    "points": _points_suite,
}


def clear_caches():
    """Drop every memo table (presentations, spaces, coproducts, antipodes)."""
    from . import hopf, localization, presentation, qspaces

    presentation._cached_presentation.cache_clear()
    qspaces._cached_space.cache_clear()
    hopf._HOPF_CACHE.clear()
    hopf._S_CACHE.clear()
    localization._BLOCK_CACHE.clear()


def run_suite(cfg: VerificationConfig) -> Report:
    """Run the selected suites in a fixed order; rows are deterministic given the seed."""
    cfg.validate()
    # start cold so term high-water marks do not depend on earlier runs
    clear_caches()
    p = cfg.presentation()
    saved = p.max_steps
    p.max_steps = cfg.max_steps
    run = _Runner(cfg)
    try:
        for name in ALL_SUITES:
            if name in cfg.suites:
                _SUITES[name](run, p)
    finally:
        p.max_steps = saved
    return run.report
