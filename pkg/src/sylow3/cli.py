"""Command line driver: classify specs, run the brute-force pipeline, cross-check corpora.

Exit codes: 0 success, 1 malformed input or unreadable corpus, 2 group not
covered by the classification, 3 a size bound was exceeded, 4 the
cross-check found inconsistent entries.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from . import grpzoo
from .blocks import block_partition, sigma_report
from .chartab import an_table, dixon_table, partitions, sn_table
from .classify import NotCovered, theorem_a_predict
from .grpzoo import GroupSpec, SylowSearchFailed, three_part
from .permgrp import BoundExceeded, conjugacy_classes, frattini_rank_3group

DEFAULT_MAX_ORDER = 10 ** 6
DEFAULT_MAX_CLASSES = 200
CSV_COLUMNS = ["group", "family", "n", "q", "eps", "tower", "ext", "order", "rank_formula",
               "rank_bruteforce", "k0", "k0_sigma", "k0_formula", "k0_sigma_formula",
               "two_generated_formula", "theorem_a_consistent", "seed", "note"]


@dataclass
class CorpusEntry:
    spec: GroupSpec
    order: int | None = None
    rank_formula: object = None
    rank_bruteforce: int | None = None
    k0: int | None = None
    k0_sigma: int | None = None
    k0_formula: object = None
    k0_sigma_formula: object = None
    two_generated_formula: bool | None = None
    theorem_a_consistent: bool | None = None
    seed: int = 0
    note: str = ""
    timings: dict = field(default_factory=dict)

    def checks(self) -> dict:
        """Every cross-check whose legs are all present, keyed by name."""
        out = {}
        rf, rb = self.rank_formula, self.rank_bruteforce
        if isinstance(rf, int) and rb is not None:
            out["rank"] = rf == rb
        if self.two_generated_formula is not None and rb is not None:
            out["two_generated"] = self.two_generated_formula == (rb == 2)
        two = rb == 2 if rb is not None else self.two_generated_formula
        k0s = self.k0_sigma if self.k0_sigma is not None else (
            self.k0_sigma_formula if isinstance(self.k0_sigma_formula, int) else None)
        if two is not None and k0s is not None and (self.order is None or self.order % 3 == 0):
            out["theorem_a"] = two == (k0s in (6, 9))
        if isinstance(self.k0_formula, int) and self.k0 is not None:
            out["k0"] = self.k0_formula == self.k0
        if isinstance(self.k0_sigma_formula, int) and self.k0_sigma is not None:
            out["k0_sigma"] = self.k0_sigma_formula == self.k0_sigma
        return out

    def consistency(self):
        c = self.checks()
        return all(c.values()) if c else None

    def to_json(self, timings: bool = False) -> dict:
        d = {"group": _display_name(self.spec), "spec": self.spec.to_dict(), "order": self.order,
             "rank_formula": self.rank_formula, "rank_bruteforce": self.rank_bruteforce,
             "k0": self.k0, "k0_sigma": self.k0_sigma, "k0_formula": self.k0_formula,
             "k0_sigma_formula": self.k0_sigma_formula,
             "two_generated_formula": self.two_generated_formula,
             "theorem_a_consistent": self.theorem_a_consistent, "seed": self.seed,
             "note": self.note}
        if timings:
            d["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return d

    @classmethod
    def from_json(cls, d: dict) -> CorpusEntry:
        return cls(GroupSpec.from_dict(d["spec"]), order=d.get("order"),
                   rank_formula=d.get("rank_formula"), rank_bruteforce=d.get("rank_bruteforce"),
                   k0=d.get("k0"), k0_sigma=d.get("k0_sigma"), k0_formula=d.get("k0_formula"),
                   k0_sigma_formula=d.get("k0_sigma_formula"),
                   two_generated_formula=d.get("two_generated_formula"),
                   theorem_a_consistent=d.get("theorem_a_consistent"), seed=d.get("seed", 0),
                   note=d.get("note", ""), timings=d.get("timings", {}))


def _display_name(spec: GroupSpec) -> str:
    return spec.name() + (f":{spec.ext}" if spec.ext != "none" else "")


# --- pipeline ---------------------------------------------------------------------

def formula_leg(entry: CorpusEntry):
    try:
        rec = theorem_a_predict(entry.spec)
    except NotCovered as exc:
        entry.note = _join(entry.note, f"formula: {exc}")
        return
    entry.rank_formula = rec.rank
    entry.k0_formula = rec.k0_formula
    entry.k0_sigma_formula = rec.k0_sigma_formula
    entry.two_generated_formula = rec.two_generated


def _join(a, b):
    return f"{a}; {b}" if a else b


def character_table(spec: GroupSpec, G, max_order: int, max_classes: int):
    """Exact table: combinatorial for S_n and A_n (n >= 5), Dixon otherwise."""
    f = spec.base_family
    if f == "sym" and spec.n >= 2:
        k = len(partitions(spec.n))
        if k > max_classes:
            raise BoundExceeded("classes", k, max_classes)
        return sn_table(spec.n)
    if f == "alt" and 5 <= spec.n <= 15:
        t = an_table(spec.n)
        if len(t) > max_classes:
            raise BoundExceeded("classes", len(t), max_classes)
        return t
    order = G.order()
    if order > max_order:
        raise BoundExceeded("order", order, max_order)
    cc = conjugacy_classes(G, max_order)
    if len(cc) > max_classes:
        raise BoundExceeded("classes", len(cc), max_classes)
    return dixon_table(G, max_order, _display_name(spec), cc)


def bruteforce(spec: GroupSpec, seed: int = 0, max_order: int = DEFAULT_MAX_ORDER,
               max_classes: int = DEFAULT_MAX_CLASSES, tables: bool = True,
               strict: bool = True) -> CorpusEntry:
    """Run every computable leg for ``spec``.

    With ``strict`` a violated bound raises :class:`BoundExceeded`;
    otherwise the leg is left empty and the reason recorded in ``note``.
    """
    entry = CorpusEntry(spec, seed=seed)
    t0 = time.perf_counter()
    formula_leg(entry)
    entry.timings["formula"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    G = grpzoo.build(spec)
    entry.order = grpzoo.group_order(spec) or G.order()
    entry.timings["build"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        P = grpzoo.syl3(spec, G, seed=seed)
        entry.rank_bruteforce = frattini_rank_3group(P)
    except (BoundExceeded, SylowSearchFailed) as exc:
        if strict:
            raise
        entry.note = _join(entry.note, f"sylow: {exc}")
    entry.timings["sylow"] = time.perf_counter() - t0

    if tables:
        t0 = time.perf_counter()
        try:
            table = character_table(spec, G, max_order, max_classes)
        except BoundExceeded as exc:
            if strict:
                raise
            entry.note = _join(entry.note, f"table: {exc}")
        else:
            entry.timings["table"] = time.perf_counter() - t0
            t0 = time.perf_counter()
            part = block_partition(table)
            rep = sigma_report(table, part)
            entry.k0, entry.k0_sigma = rep.k0, rep.k0_sigma
            entry.timings["blocks"] = time.perf_counter() - t0
    if entry.order is not None and three_part(entry.order) == 1:
        entry.note = _join(entry.note, "3 does not divide the order")
    entry.theorem_a_consistent = entry.consistency()
    return entry


def formula_only(spec: GroupSpec) -> CorpusEntry:
    entry = CorpusEntry(spec, order=grpzoo.group_order(spec))
    formula_leg(entry)
    entry.note = _join(entry.note, "formula only")
    entry.theorem_a_consistent = entry.consistency()
    return entry


# --- corpus -------------------------------------------------------------------------

def default_corpus_specs() -> list[dict]:
    """Corpus plan: which specs get which legs."""
    plan = []
    for n in range(3, 14):
        plan.append({"spec": GroupSpec("sym", n), "tables": True})
    for n in range(3, 14):
        plan.append({"spec": GroupSpec("alt", n), "tables": True})
    for tower in [(1,), (2,), (1, 1), (2, 1), (1, 2), (1, 1, 1)]:
        plan.append({"spec": GroupSpec("wreath_tower", tower=tower),
                     "tables": math.prod(3 ** a for a in tower) <= 9})
    triples = [(2, 4, 1), (3, 4, 1), (3, 7, 1), (4, 7, 1), (2, 7, 1), (3, 2, -1),
               (2, 5, 1), (2, 8, 1), (4, 2, 1), (4, 2, -1), (2, 9, 1), (3, 3, 1)]
    for n, q, eps in triples:
        for fam in ("gl", "sl", "psl"):
            s = GroupSpec(fam, n, q, eps)
            plan.append({"spec": s, "tables": (grpzoo.group_order(s) or 0) <= 200000})
    for n, q, eps in [(2, 11, 1), (2, 13, 1), (2, 16, 1), (2, 17, 1), (2, 19, 1), (3, 3, -1),
                      (3, 5, 1), (2, 25, 1), (2, 27, 1)]:
        s = GroupSpec("psl", n, q, eps)
        plan.append({"spec": s, "tables": (grpzoo.group_order(s) or 0) <= 200000})
    plan.append({"spec": GroupSpec("pgl", 3, 4), "tables": True})
    plan.append({"spec": GroupSpec("psp", 4, 3), "tables": True})
    plan.append({"spec": GroupSpec("sp", 4, 2), "tables": True})
    plan.append({"spec": GroupSpec("external", label="M11", path="m11.gens"), "tables": True})
    plan.append({"spec": GroupSpec("external", label="M12", path="m12.gens"), "tables": True})
    for spec in formula_only_specs():
        plan.append({"spec": spec, "formula_only": True})
    return plan


def formula_only_specs() -> list[GroupSpec]:
    out = []
    # a = 1, 2, 3 in both signs for the principal-block counts
    for q, eps in [(7, 1), (19, 1), (109, 1), (8, -1), (53, -1)]:
        out.append(GroupSpec("psl", 4, q, eps))
    for n in (6, 7):
        for q, eps in [(2, 1), (17, 1), (53, 1), (7, -1), (19, -1)]:
            out.append(GroupSpec("psl", n, q, eps))
    for q in (2, 7, 5):
        out.append(GroupSpec("psp", 6, q))
        out.append(GroupSpec("pomega-minus", 8, q))
    out += [GroupSpec("psl", 3, 7), GroupSpec("psl", 3, 5, -1), GroupSpec("psl", 5, 7),
            GroupSpec("pomega-plus", 8, 5), GroupSpec("g2", q=5), GroupSpec("3d4", q=2),
            GroupSpec("f4", q=2), GroupSpec("psp", 8, 5)]
    return out


def _run_plan_item(item, seed, max_order, max_classes):
    if item.get("formula_only"):
        return formula_only(item["spec"])
    return bruteforce(item["spec"], seed, max_order, max_classes, item.get("tables", True),
                      strict=False)


def build_corpus(plan=None, seed: int = 0, max_order: int = DEFAULT_MAX_ORDER,
                 max_classes: int = DEFAULT_MAX_CLASSES, jobs: int = 1) -> list[CorpusEntry]:
    plan = plan if plan is not None else default_corpus_specs()
    args = [(item, seed, max_order, max_classes) for item in plan]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_run_plan_item, *zip(*args)))  # map keeps input order
    return [_run_plan_item(*a) for a in args]


def bundled_corpus_path():
    return resources.files("sylow3") / "data" / "corpus.json"


def load_corpus(path=None) -> list[CorpusEntry]:
    text = (bundled_corpus_path().read_text() if path is None
            else open(path, encoding="utf-8").read())
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("entries", [])
    return [CorpusEntry.from_json(d) for d in data]


def crosscheck(entries: list[CorpusEntry]) -> list[tuple[str, list[str]]]:
    """(group, failed check names) for every inconsistent entry."""
    bad = []
    for e in entries:
        failed = [k for k, ok in e.checks().items() if not ok]
        if e.theorem_a_consistent is not None and e.theorem_a_consistent != (not failed):
            failed.append("stored_flag")
        if failed:
            bad.append((_display_name(e.spec), failed))
    return bad


# --- argument handling -----------------------------------------------------------------

def _parse_eps(text: str) -> int:
    t = text.strip()
    if t in ("+", "+1", "1"):
        return 1
    if t in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"eps must be + or -, got {text!r}")


def _parse_tower(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"tower must be comma-separated integers, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _spec_args(p):
    p.add_argument("--family")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--eps", type=_parse_eps, default=1)
    p.add_argument("--tower", type=_parse_tower, default=())
    p.add_argument("--ext", default="none")
    p.add_argument("--external", help="permutation generator file")
    p.add_argument("--out", choices=("json", "csv"), default="json")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sylow3", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = sub.add_parser("classify", help="closed-form classification of a spec")
    _spec_args(c)
    b = sub.add_parser("bruteforce", help="construct the group and compute every leg")
    _spec_args(b)
    for q in (b,):
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
        q.add_argument("--max-classes", type=int, default=DEFAULT_MAX_CLASSES)
        q.add_argument("--timings", action="store_true", help="include wall-clock timings")
    x = sub.add_parser("crosscheck", help="check that rank 2 matches k0_sigma in {6, 9} across a corpus")
    x.add_argument("--corpus", help="corpus JSON (default: the bundled corpus)")
    x.add_argument("--out", choices=("json", "csv"), default="json")
    k = sub.add_parser("corpus", help="recompute the corpus")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    k.add_argument("--max-classes", type=int, default=DEFAULT_MAX_CLASSES)
    k.add_argument("--jobs", type=int, default=1)
    k.add_argument("--timings", action="store_true")
    k.add_argument("--out", choices=("json", "csv"), default="json")
    k.add_argument("--corpus", help="write here instead of stdout")
    return p


def spec_from_args(a) -> GroupSpec:
    if a.external:
        label, _, _ = grpzoo.parse_generators(grpzoo._resolve(a.external).read_text())
        return GroupSpec("external", label=label, path=a.external)
    if not a.family:
        raise ValueError("either --family or --external is required")
    return GroupSpec(a.family, a.n, a.q, a.eps, a.tower, ext=a.ext)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        s = r["spec"]
        flat = dict(r, family=s["family"], n=s.get("n", 0), q=s.get("q", 0), eps=s.get("eps", 1),
                    tower=",".join(map(str, s.get("tower", []))), ext=s.get("ext", "none"))
        w.writerow(flat)
    return buf.getvalue()


def _emit(rows: list[dict], fmt: str, single: bool = False):
    if fmt == "csv":
        sys.stdout.write(_csv(rows))
    else:
        print(_dump(rows[0] if single else rows))


def cmd_classify(a) -> int:
    try:
        spec = spec_from_args(a)
        rec = theorem_a_predict(spec)
    except NotCovered as exc:
        print(f"not covered: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    row = rec.to_json()
    if a.out == "csv":
        entry = CorpusEntry(spec, grpzoo.group_order(spec), rec.rank,
                            k0_formula=rec.k0_formula, k0_sigma_formula=rec.k0_sigma_formula,
                            two_generated_formula=rec.two_generated)
        entry.theorem_a_consistent = entry.consistency()
        sys.stdout.write(_csv([entry.to_json()]))
    else:
        print(_dump(row))
    return 0


def cmd_bruteforce(a) -> int:
    try:
        spec = spec_from_args(a)
        entry = bruteforce(spec, a.seed, a.max_order, a.max_classes)
    except BoundExceeded as exc:
        print(f"bound exceeded ({exc.bound}): {exc}", file=sys.stderr)
        return 3
    except SylowSearchFailed as exc:
        print(f"bound exceeded (sylow search budget): {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit([entry.to_json(a.timings)], a.out, single=True)
    return 0


def cmd_crosscheck(a) -> int:
    try:
        entries = load_corpus(a.corpus)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read corpus: {exc}", file=sys.stderr)
        return 1
    if not entries:
        print("warning: corpus is empty", file=sys.stderr)
    bad = crosscheck(entries)
    legs = sum(1 for e in entries if e.checks())
    summary = {"entries": len(entries), "checked": legs, "mismatches": len(bad),
               "mismatched": [{"group": g, "failed": f} for g, f in bad]}
    print(_dump(summary))
    return 4 if bad else 0


def cmd_corpus(a) -> int:
    entries = build_corpus(seed=a.seed, max_order=a.max_order, max_classes=a.max_classes,
                           jobs=a.jobs)
    rows = [e.to_json(a.timings) for e in entries]
    text = _csv(rows) if a.out == "csv" else _dump(rows) + "\n"
    if a.corpus:
        with open(a.corpus, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    a = make_parser().parse_args(argv)
    return {"classify": cmd_classify, "bruteforce": cmd_bruteforce,
            "crosscheck": cmd_crosscheck, "corpus": cmd_corpus}[a.cmd](a)


if __name__ == "__main__":
    sys.exit(main())
