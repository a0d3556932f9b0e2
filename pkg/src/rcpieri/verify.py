"""
Oracle checks for Schubert polynomials and the Pieri bijection.

Each check returns a :class:`Report`; failures are recorded, never raised,
so a sweep always runs to the end.
"""

from __future__ import annotations

import functools
import json
import time
from collections import Counter
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .permutation import Permutation, all_permutations, format_one_line
from .pieri import admissible_expansion, algorithm2, insert, inverse, is_admissible
from .polynomial import ZERO, MultiPoly, complete_homogeneous, schubert_ddiff
from .rcgraph import compositions, enumerate_rc, enumerate_rc_by_words, monomial_of

__all__ = [
    "Check",
    "Report",
    "schubert_rc",
    "monk_expansion",
    "check_schubert_backends",
    "check_pieri_identity",
    "check_bijection",
    "sweep",
    "summarize",
]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    subject: dict
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0
    command: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    def repro(self) -> str | None:
        return None if self.passed else self.command

    def to_json(self, elapsed: bool = True) -> str:
        data = {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }
        if elapsed:
            data["elapsed"] = round(self.elapsed, 6)
        if not self.passed:
            data["repro"] = self.command
        return json.dumps(data, sort_keys=True)

    def to_text(self) -> str:
        subj = " ".join(f"{k}={v}" for k, v in self.subject.items())
        head = f"{'PASS' if self.passed else 'FAIL'} {subj}"
        lines = [head]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  {mark} {c.name}" + (f": {c.detail}" if c.detail else ""))
        if not self.passed:
            lines.append(f"  reproduce: {self.command}")
        return "\n".join(lines)


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed = time.perf_counter() - start
        return report

    return wrapper


def schubert_rc(w: Permutation) -> MultiPoly:
    """Sum of x^D over RC(w)."""
    return sum((monomial_of(D) for D in enumerate_rc(w)), ZERO)


def monk_expansion(w: Permutation, r: int) -> list[Permutation]:
    """All w t_{ab} with a <= r < b and length one more than w."""
    out = set()
    n = max(w.size, r) + 1
    target = w.length() + 1
    for a in range(1, r + 1):
        for b in range(r + 1, n + 1):
            u = w.right_transpose(a, b)
            if u.length() == target:
                out.add(u)
    return sorted(out)


def _cmd(*parts: str) -> str:
    return "python -m rcpieri " + " ".join(parts)


@_timed
def check_schubert_backends(w: Permutation, n: int | None = None) -> Report:
    """Sum over RC(w) against the divided-difference polynomial, and the
    ladder-move enumeration against the compatible-sequence one."""
    n = w.size if n is None else n
    rep = Report({"w": format_one_line(w)}, command=_cmd("schubert", format_one_line(w), "--check"))
    rc_side = schubert_rc(w)
    dd_side = schubert_ddiff(w, n)
    rep.add("rc-sum == ddiff", rc_side == dd_side, f"{rc_side} vs {dd_side}" if rc_side != dd_side else str(rc_side))
    A = enumerate_rc(w)
    B = enumerate_rc_by_words(w)
    rep.add("ladder closure == compatible sequences", A == B, f"{len(A)} vs {len(B)} graphs")
    return rep


@_timed
def check_pieri_identity(w: Permutation, r: int, m: int) -> Report:
    """P_w h_m(x1..xr) against the sum of P_w' over the admissible w'."""
    wl = format_one_line(w)
    rep = Report(
        {"w": wl, "r": r, "m": m},
        command=_cmd("pieri", "verify", "--w", wl, "--r", str(r), "--m", str(m)),
    )
    try:
        expansion = admissible_expansion(w, r, m)
    except Exception as exc:  # ambiguity and friends become report lines
        rep.add("admissible expansion", False, f"{type(exc).__name__}: {exc}")
        return rep
    rep.add(
        "expansion ledgers admissible",
        all(is_admissible(w, wp, r, led.pairs) for wp, led in expansion),
        f"{len(expansion)} terms",
    )
    h = complete_homogeneous(m, r)
    window = max(w.size, r) + m
    for name, schub in (("rc", lambda u: schubert_rc(u)), ("ddiff", lambda u: schubert_ddiff(u, window))):
        lhs = schub(w) * h
        rhs = sum((schub(wp) for wp, _ in expansion), ZERO)
        rep.add(f"identity ({name})", lhs == rhs, "" if lhs == rhs else f"difference {lhs - rhs}")
    if m == 1:
        monk = monk_expansion(w, r)
        got = [wp for wp, _ in expansion]
        rep.add("Monk enumeration", got == monk, f"{len(monk)} terms" if got == monk else f"{got} vs {monk}")
    return rep


@_timed
def check_bijection(w: Permutation, r: int, m: int, verify: bool = False) -> Report:
    """Run the insertion over RC(w) x compositions and audit the image."""
    wl = format_one_line(w)
    cmd = _cmd("pieri", "verify", "--w", wl, "--r", str(r), "--m", str(m), "--bijection")
    rep = Report({"w": wl, "r": r, "m": m}, command=cmd + (" --debug" if verify else ""))
    expansion = dict(admissible_expansion(w, r, m))
    image: Counter = Counter()
    problems: Counter = Counter()
    first: dict[str, str] = {}
    step_checks: Counter = Counter()
    runs = 0

    def bad(kind: str, msg: str):
        problems[kind] += 1
        first.setdefault(kind, msg)

    for D in enumerate_rc(w):
        for comp in compositions(m, r):
            runs += 1
            where = f"D={D.sorted()} comp={comp}"
            states: list = []
            try:
                res = insert(
                    D, r, comp, verify=verify,
                    on_row_done=(lambda c, l, row: states.append((c, l, row))) if verify else None,
                )
            except Exception as exc:
                bad("insert completes", f"{where}: {type(exc).__name__}: {exc}")
                continue
            step_checks.update(res.checks)
            G, L = res.graph, res.ledger
            wp = G.permutation()
            if not G.is_reduced():
                bad("output reduced", where)
            if expansion.get(wp) != L:
                bad("output admissible", f"{where} -> {wp} ledger {L}")
            if monomial_of(G) != monomial_of(D) * comp.monomial():
                bad("monomial transport", where)
            image[G] += 1
            for cells, ledger, row in states:
                try:
                    g = algorithm2(cells, ledger, row, w=w, r=r, verify=True)
                    if g.permutation() != w or len(g) != w.length():
                        bad("mid-run states open to w", f"{where} row {row}: {g!r}")
                    step_checks["opened-states"] += 1
                except Exception as exc:
                    bad("mid-run states open to w", f"{where} row {row}: {type(exc).__name__}: {exc}")
            try:
                back, bcomp, _ = inverse(G, w, r, L, verify=verify)
                if back != D or bcomp.parts != comp.parts:
                    bad("inverse roundtrip", f"{where} -> {back.sorted()} {bcomp}")
                elif monomial_of(G) != monomial_of(back) * bcomp.monomial():
                    bad("monomial transport", f"inverse {where}")
            except Exception as exc:
                bad("inverse roundtrip", f"{where}: {type(exc).__name__}: {exc}")

    for kind in ("insert completes", "output reduced", "output admissible", "monomial transport",
                 "inverse roundtrip"):
        rep.add(kind, not problems[kind], first.get(kind, f"{runs} runs"))
    if verify:
        rep.add("mid-run states open to w", not problems["mid-run states open to w"], first.get("mid-run states open to w", f"{step_checks['opened-states']} states"))
        rep.add(
            "per-step invariant checks",
            not problems["insert completes"],
            ", ".join(f"{k}={v}" for k, v in sorted(step_checks.items())),
        )
    rep.add("injective", all(c == 1 for c in image.values()), f"{len(image)} distinct outputs")
    target = Counter(G for wp in expansion for G in enumerate_rc(wp))
    rep.add(
        "image == union of RC(w')",
        image == target,
        f"{sum(image.values())} vs {sum(target.values())} graphs",
    )
    return rep


def _sweep_item(args) -> list[Report]:
    w, r, m, verify = args
    return [check_pieri_identity(w, r, m), check_bijection(w, r, m, verify=verify)]


def sweep(
    n: int,
    r_max: int,
    m_max: int,
    *,
    verify: bool = False,
    workers: int | None = None,
    progress: Callable[[Report], None] | None = None,
) -> list[Report]:
    """Both Pieri checks for every w in S_n, 1 <= r <= r_max, 1 <= m <= m_max.

    Reports come back in (w, r, m) order whatever ``workers`` is.
    """
    items = [
        (w, r, m, verify)
        for w in all_permutations(n)
        for r in range(1, r_max + 1)
        for m in range(1, m_max + 1)
    ]
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            batches = list(pool.map(_sweep_item, items, chunksize=4))
    else:
        batches = map(_sweep_item, items)
    out: list[Report] = []
    for batch in batches:
        for rep in batch:
            if progress is not None:
                progress(rep)
            out.append(rep)
    return out


def summarize(reports: Iterable[Report]) -> str:
    reports = list(reports)
    failed = [r for r in reports if not r.passed]
    perms = {r.subject.get("w") for r in reports}
    return (
        f"{len(reports) - len(failed)}/{len(reports)} reports passed "
        f"over {len(perms)} permutations"
    )
