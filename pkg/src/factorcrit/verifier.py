"""Desk-scale verification harness: graph corpora, theorem falsification
search, sharpness checks and lemma inequality grids.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .criticality import is_kfc_matching, is_kfc_tutte
from .extremal import (
    ExtremalParams,
    ParameterError,
    build_H,
    build_Hprime,
    build_Hs,
    hprime_bound,
    join_of_cliques,
    recognize_extremal,
    thresholds,
)
from .graph import Graph, is_connected, min_degree, odd_components, remove_vertices
from .graph6 import Graph6Error, emit_graph6, parse_graph6
from .spectral import ORBIT_TOL, perron_vector, spectral_radius

THRESHOLD_SLACK = 1e-9
STRICT_MARGIN = 1e-9
RANDOM_MARGIN = 1e-10
SHARPNESS_TOL = 1e-7
MAX_EXHAUSTIVE_ORDER = 7

ALPHA = {"rho": 0, "q": 1}
LEMMAS = ("h1", "h2", "h3", "SP", "GE", "inequit")


class CorpusError(ValueError):
    """Invalid corpus specification or unreadable input."""


class HypothesisError(ParameterError):
    """Parameters outside the hypotheses of the theorem being verified."""


# ---------------------------------------------------------------------------
# corpora
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusSpec:
    """Where test graphs come from and which of them to keep.

    ``source`` is ``"exhaustive"`` (all labeled graphs of order ``n <= 7``),
    ``"graph6"`` (lines from ``path`` or ``lines``) or ``"random"``. Random
    corpora draw ``count`` accepted graphs by rejection: ``model="gnp"`` uses a
    fixed edge probability ``p``; ``model="planted"`` draws ``p`` from
    ``p_range`` and then forces a few random vertices down to degree
    ``delta`` (optionally sharing one neighbourhood), which populates the
    dense, low-minimum-degree region where the thresholds bite.
    """

    source: str = "random"
    n: Optional[int] = None
    delta: Optional[int] = None
    connected: bool = False
    p: float = 0.5
    p_range: tuple[float, float] = (0.3, 1.0)
    model: str = "gnp"
    count: int = 1000
    seed: int = 0
    path: Optional[str] = None
    lines: Optional[tuple] = None
    max_attempts_factor: int = 10_000

    def accepts(self, g: Graph) -> bool:
        if self.n is not None and g.order != self.n:
            return False
        if self.delta is not None and (g.order == 0 or min_degree(g) != self.delta):
            return False
        if self.connected and not is_connected(g):
            return False
        return True


def _graph_from_bits(n: int, pairs: Sequence[tuple[int, int]], bits) -> Graph:
    rows = [0] * n
    for (i, j), b in zip(pairs, bits):
        if b:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, rows)


def _exhaustive(spec: CorpusSpec) -> Iterator[Graph]:
    n = spec.n
    if n is None or n < 1:
        raise CorpusError("exhaustive corpus needs n >= 1")
    if n > MAX_EXHAUSTIVE_ORDER:
        raise CorpusError(f"exhaustive corpus limited to n <= {MAX_EXHAUSTIVE_ORDER}, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for b, (i, j) in enumerate(pairs):
            if code >> b & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        g = Graph(n, rows)
        if spec.accepts(g):
            yield g


def _graph6_lines(spec: CorpusSpec) -> Iterator[Graph]:
    if spec.lines is not None:
        source: Iterable = spec.lines
    elif spec.path is not None:
        try:
            source = Path(spec.path).read_bytes().splitlines()
        except OSError as exc:
            raise CorpusError(f"cannot read graph6 stream {spec.path}: {exc}") from exc
    else:
        raise CorpusError("graph6 corpus needs path or lines")
    for lineno, line in enumerate(source, 1):
        if isinstance(line, str):
            line = line.encode("ascii", errors="replace")
        if not line.strip():
            continue
        try:
            g = parse_graph6(line)
        except Graph6Error as exc:
            raise CorpusError(f"line {lineno}: {exc}") from exc
        if spec.accepts(g):
            yield g


def _random_adjacency(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return upper | upper.T


def _plant(rng: np.random.Generator, a: np.ndarray, delta: int) -> None:
    n = a.shape[0]
    m = int(rng.integers(1, delta + 3))
    m = min(m, n - delta)
    if m < 1:
        return
    low = rng.choice(n, size=m, replace=False)
    others = np.setdiff1d(np.arange(n), low)
    shared = rng.random() < 0.5 and len(others) >= delta
    common = rng.choice(others, size=delta, replace=False) if shared else None
    for v in low:
        a[v, :] = False
        a[:, v] = False
        if common is not None:
            nb = common
        else:
            pool = np.delete(np.arange(n), v)
            nb = rng.choice(pool, size=delta, replace=False)
        a[v, nb] = True
        a[nb, v] = True


def _random(spec: CorpusSpec) -> Iterator[Graph]:
    n = spec.n
    if n is None or n < 1:
        raise CorpusError("random corpus needs n >= 1")
    if spec.model not in ("gnp", "planted"):
        raise CorpusError(f"unknown random model {spec.model!r}")
    if spec.model == "planted" and spec.delta is None:
        raise CorpusError("planted model needs a delta filter")
    rng = np.random.default_rng(spec.seed)
    emitted = 0
    attempts = 0
    limit = spec.max_attempts_factor * max(spec.count, 1)
    while emitted < spec.count:
        attempts += 1
        if attempts > limit:
            raise CorpusError(f"rejection sampling gave up after {limit} attempts")
        if spec.model == "gnp":
            a = _random_adjacency(rng, n, spec.p)
        else:
            lo, hi = spec.p_range
            a = _random_adjacency(rng, n, float(rng.uniform(lo, hi)))
            _plant(rng, a, spec.delta)
        rows = [int(sum(1 << int(w) for w in np.flatnonzero(a[v]))) for v in range(n)]
        g = Graph(n, rows)
        if spec.accepts(g):
            emitted += 1
            yield g


def generate_corpus(spec: CorpusSpec) -> Iterator[Graph]:
    """Deterministic stream of graphs satisfying the spec's filter."""
    if spec.source == "exhaustive":
        return _exhaustive(spec)
    if spec.source == "graph6":
        return _graph6_lines(spec)
    if spec.source == "random":
        return _random(spec)
    raise CorpusError(f"unknown corpus source {spec.source!r}")


# ---------------------------------------------------------------------------
# theorems
# ---------------------------------------------------------------------------


def theorem_bound(p: ExtremalParams, which: str, bound: str = "theorem") -> Optional[int]:
    """Smallest n admitted by the chosen bound (None when unconstrained).

    ``"theorem"``: n >= 4delta+3 (rho) or n >= 9delta-2k+12 (q).
    ``"relaxed"``: the weakened n >= 4delta+1 (rho) or n >= 9delta-2k (q),
    stated for k >= 1 only; for k = 0 it falls back to the theorem bound.
    ``"none"``: only the construction constraints of H(n, delta, k).
    """
    d, k = p.delta, p.k
    full = {"rho": 4 * d + 3, "q": 9 * d - 2 * k + 12}
    weak = {"rho": 4 * d + 1, "q": 9 * d - 2 * k}
    if which not in full:
        raise ParameterError(f"which must be 'rho' or 'q', got {which!r}")
    if bound == "theorem":
        return full[which]
    if bound == "relaxed":
        return weak[which] if k >= 1 else full[which]
    if bound == "none":
        return None
    raise ParameterError(f"unknown bound mode {bound!r}")


def check_hypotheses(p: ExtremalParams, which: str, bound: str = "theorem") -> None:
    problems = []
    if not 0 <= p.k < p.delta:
        problems.append(f"need 0 <= k < delta, got k={p.k}, delta={p.delta}")
    if not p.parity_ok:
        problems.append(f"need k = n (mod 2), got n={p.n}, k={p.k}")
    lo = theorem_bound(p, which, bound)
    if lo is not None and p.n < lo:
        problems.append(f"need n >= {lo} for {which} under the {bound} bound, got n={p.n}")
    try:
        p.check_H()
    except ParameterError as exc:
        problems.append(str(exc))
    if problems:
        raise HypothesisError("; ".join(problems))


@dataclass
class VerificationReport:
    which: str
    n: int
    delta: int
    k: int
    bound: str
    threshold_used: float
    graphs_tested: int = 0
    skipped: int = 0
    above_threshold: int = 0
    critical_above: int = 0
    extremal_hits: int = 0
    counterexamples: list = field(default_factory=list)
    records: Optional[list] = None

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    @property
    def consistent(self) -> bool:
        return self.above_threshold == (
            self.critical_above + self.extremal_hits + len(self.counterexamples)
        )

    def to_record(self) -> dict:
        out = asdict(self)
        if self.records is None:
            out.pop("records")
        return out

    def format_record(self) -> str:
        lines = [json.dumps(r, sort_keys=True) for r in (self.records or [])]
        summary = self.to_record()
        summary.pop("records", None)
        lines.append(json.dumps({"summary": summary}, sort_keys=True))
        return "\n".join(lines)

    def format_plain(self) -> str:
        lines = [
            f"theorem {self.which}: (n, delta, k) = ({self.n}, {self.delta}, {self.k}), bound={self.bound}",
            f"  threshold       {self.threshold_used!r}",
            f"  graphs tested   {self.graphs_tested}",
            f"  skipped         {self.skipped}",
            f"  above threshold {self.above_threshold}",
            f"  critical        {self.critical_above}",
            f"  extremal        {self.extremal_hits}",
            f"  counterexamples {len(self.counterexamples)}",
        ]
        lines += [f"  ! {g6}" for g6 in self.counterexamples]
        lines.append("  result          " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def classify(g: Graph, p: ExtremalParams, which: str, threshold: float, slack: float = THRESHOLD_SLACK) -> dict:
    """Per-graph verdict: ``skipped``, ``below``, ``critical``, ``extremal`` or ``counterexample``."""
    rec = {"graph6": emit_graph6(g).decode("ascii")}
    if g.order != p.n or min_degree(g) != p.delta:
        rec["status"] = "skipped"
        return rec
    value = spectral_radius(g, ALPHA[which])
    rec["value"] = value
    if value < threshold - slack:
        rec["status"] = "below"
    elif recognize_extremal(g, p):
        rec["status"] = "extremal"
    elif is_kfc_matching(g, p.k).verdict:
        rec["status"] = "critical"
    else:
        rec["status"] = "counterexample"
    return rec


def _classify_chunk(args) -> list:
    graphs, p, which, threshold, slack = args
    return [classify(g, p, which, threshold, slack) for g in graphs]


def _chunks(it: Iterable, size: int) -> Iterator[list]:
    it = iter(it)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def verify_theorem(
    corpus: Union[CorpusSpec, Iterable[Graph]],
    p: ExtremalParams,
    which: str,
    bound: str = "theorem",
    slack: float = THRESHOLD_SLACK,
    jobs: int = 1,
    keep_records: bool = False,
) -> VerificationReport:
    """Falsification search for the rho or q threshold statement.

    Every corpus graph of order n with minimum degree exactly delta whose
    spectral value reaches ``threshold - slack`` must be k-factor-critical or
    isomorphic to H(n, delta, k); anything else is recorded as a
    counterexample.
    """
    check_hypotheses(p, which, bound)
    th = thresholds(p)
    threshold = th.rho if which == "rho" else th.q
    graphs = generate_corpus(corpus) if isinstance(corpus, CorpusSpec) else iter(corpus)
    report = VerificationReport(which, p.n, p.delta, p.k, bound, threshold)
    if keep_records:
        report.records = []

    if jobs > 1:
        tasks = ((chunk, p, which, threshold, slack) for chunk in _chunks(graphs, 256))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = itertools.chain.from_iterable(pool.map(_classify_chunk, tasks))
            _accumulate(report, results, keep_records)
    else:
        _accumulate(report, (classify(g, p, which, threshold, slack) for g in graphs), keep_records)
    return report


def _accumulate(report: VerificationReport, results: Iterable[dict], keep: bool) -> None:
    for rec in results:
        status = rec["status"]
        if keep:
            report.records.append(rec)
        if status == "skipped":
            report.skipped += 1
            continue
        report.graphs_tested += 1
        if status == "below":
            continue
        report.above_threshold += 1
        if status == "extremal":
            report.extremal_hits += 1
        elif status == "critical":
            report.critical_above += 1
        else:
            report.counterexamples.append(rec["graph6"])


def recheck_counterexample(g6: str, p: ExtremalParams, which: str, slack: float = THRESHOLD_SLACK) -> bool:
    """Re-derive a stored counterexample from its graph6 string alone."""
    g = parse_graph6(g6)
    th = thresholds(p)
    threshold = th.rho if which == "rho" else th.q
    return classify(g, p, which, threshold, slack)["status"] == "counterexample"


@dataclass(frozen=True)
class SharpnessResult:
    n: int
    delta: int
    k: int
    witness: Optional[tuple]
    odd_components: Optional[int]
    rho_gap: float
    q_gap: float
    ok: bool

    def to_record(self) -> dict:
        out = asdict(self)
        out["witness"] = None if self.witness is None else list(self.witness)
        return out

    def format_plain(self) -> str:
        return (
            f"sharpness H({self.n},{self.delta},{self.k}): witness={self.witness} "
            f"o(G-S)={self.odd_components} |rho-threshold|={self.rho_gap:.2e} "
            f"|q-threshold|={self.q_gap:.2e} -> {'PASS' if self.ok else 'FAIL'}"
        )


def sharpness_check(p: ExtremalParams, tol: float = SHARPNESS_TOL) -> SharpnessResult:
    """H(n, delta, k) meets both thresholds yet fails k-factor-criticality.

    The Tutte search is limited to ``|S| <= delta``: the out copy (vertices
    ``0..delta-1``) is the first violating set in search order, because
    smaller deletions leave a universal vertex and hence a connected graph of
    even order.
    """
    p.check_H()
    if not p.parity_ok:
        raise ParameterError(f"need k = n (mod 2), got n={p.n}, k={p.k}")
    g = build_H(p)
    th = thresholds(p)
    rho_gap = abs(spectral_radius(g, 0) - th.rho)
    q_gap = abs(spectral_radius(g, 1) - th.q)
    cert = is_kfc_tutte(g, p.k, max_s=p.delta)
    out_copy = tuple(range(p.delta))
    odd = None
    if cert.witness is not None:
        odd = odd_components(remove_vertices(g, cert.witness))
    ok = (
        not cert.verdict
        and cert.witness == out_copy
        and odd == p.delta - p.k + 2
        and rho_gap <= tol
        and q_gap <= tol
    )
    return SharpnessResult(p.n, p.delta, p.k, cert.witness, odd, rho_gap, q_gap, ok)


def verify_sharpness(p: ExtremalParams, tol: float = SHARPNESS_TOL) -> bool:
    return sharpness_check(p, tol).ok


# ---------------------------------------------------------------------------
# lemma grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridRanges:
    """Parameter ranges for the lemma checks.

    ``n_span`` extends each integer grid past its lower bound on n.
    ``hprime_bound`` selects the H'_s lower bound (``"lemma"`` or ``"proof"``).
    ``relaxed`` starts the h1/h3 grids at the weakened bounds for k >= 1.
    """

    deltas: tuple = (1, 2, 3)
    n_span: int = 8
    trials: int = 500
    max_order: int = 12
    seed: int = 0
    hprime_bound: str = "lemma"
    relaxed: bool = False


@dataclass
class LemmaReport:
    which: str
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_record(self) -> dict:
        return asdict(self)

    def format_plain(self) -> str:
        lines = [
            f"lemma {self.which}: checked={self.checked} skipped={self.skipped} "
            f"violations={len(self.violations)} -> {'PASS' if self.ok else 'FAIL'}"
        ]
        lines += [f"  ! {json.dumps(v, sort_keys=True)}" for v in self.violations]
        return "\n".join(lines)


def _grid_h1(r: GridRanges, rep: LemmaReport) -> None:
    for d in r.deltas:
        for k in range(d):
            lo = 4 * d + 1 if (r.relaxed and k >= 1) else 4 * d + 3
            for n in range(lo, 4 * d + 3 + r.n_span + 1):
                target = spectral_radius(build_H(ExtremalParams(n, d, k)), 0)
                for s in range(max(d + 1, k), (n + k - 2) // 2 + 1):
                    val = spectral_radius(build_Hs(n, s, k), 0)
                    rep.checked += 1
                    if not val < target - STRICT_MARGIN:
                        rep.violations.append({"n": n, "delta": d, "k": k, "s": s, "rho_Hs": val, "rho_H": target})


def _grid_h2(r: GridRanges, rep: LemmaReport) -> None:
    for d in r.deltas:
        for s in range(1, d):
            for k in range(0, s + 1):
                lo = max(hprime_bound(d, s, k, r.hprime_bound), 2 * d - k + 2)
                for n in range(lo, lo + r.n_span + 1):
                    h = build_H(ExtremalParams(n, d, k))
                    hp = build_Hprime(n, d, s, k, bound="lemma")
                    for alpha, name in ((0, "rho"), (1, "q")):
                        val = spectral_radius(hp, alpha)
                        target = spectral_radius(h, alpha)
                        rep.checked += 1
                        if not val < target - STRICT_MARGIN:
                            rep.violations.append(
                                {"n": n, "delta": d, "k": k, "s": s, "which": name, "Hprime": val, "H": target}
                            )


def _grid_h3(r: GridRanges, rep: LemmaReport) -> None:
    for d in r.deltas:
        for k in range(d):
            top = 9 * d - 2 * k + 12 + r.n_span
            lo = 9 * d - 2 * k if (r.relaxed and k >= 1) else 9 * d - 2 * k + 12
            for n in range(lo, top + 1):
                target = spectral_radius(build_H(ExtremalParams(n, d, k)), 1)
                for s in range(d + 1, (n + k - 2) // 2 + 1):
                    val = spectral_radius(build_Hs(n, s, k), 1)
                    rep.checked += 1
                    if not val < target - STRICT_MARGIN:
                        rep.violations.append({"n": n, "delta": d, "k": k, "s": s, "q_Hs": val, "q_H": target})


def random_connected_graph(rng: np.random.Generator, n: int, p: Optional[float] = None) -> Graph:
    """Random labeled spanning tree plus independent extra edges."""
    if p is None:
        p = float(rng.uniform(0.1, 0.7))
    a = _random_adjacency(rng, n, p)
    perm = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(0, i))
        u, v = perm[i], perm[j]
        a[u, v] = a[v, u] = True
    rows = [int(sum(1 << int(w) for w in np.flatnonzero(a[v]))) for v in range(n)]
    return Graph(n, rows)


def _trials_sp(r: GridRanges, rep: LemmaReport) -> None:
    rng = np.random.default_rng(r.seed)
    for _ in range(r.trials):
        s = int(rng.integers(1, 5))
        t = int(rng.integers(2, 5))
        sizes = sorted(int(x) for x in rng.integers(1, 7, size=t))
        g = join_of_cliques(s, sizes)
        bounds = np.cumsum([s] + sizes)
        for alpha in (0, 1):
            x = perron_vector(g, alpha).vector
            rep.checked += 1
            blocks = [x[: bounds[0]]] + [x[bounds[i]: bounds[i + 1]] for i in range(t)]
            spread = max(float(np.ptp(b)) for b in blocks)
            means = [float(b.mean()) for b in blocks[1:]]
            ordered = all(means[i] <= means[i + 1] + RANDOM_MARGIN for i in range(t - 1))
            if spread > ORBIT_TOL or not ordered:
                rep.violations.append(
                    {"s": s, "sizes": sizes, "alpha": alpha, "orbit_spread": spread, "entries": means}
                )


def _rotate(g: Graph, u: int, v: int, nbrs: Sequence[int]) -> Graph:
    rows = list(g.rows)
    for w in nbrs:
        rows[v] &= ~(1 << w)
        rows[w] &= ~(1 << v)
        rows[u] |= 1 << w
        rows[w] |= 1 << u
    return Graph(g.order, rows)


def _trials_ge(r: GridRanges, rep: LemmaReport) -> None:
    rng = np.random.default_rng(r.seed)
    done = 0
    attempts = 0
    while done < r.trials:
        attempts += 1
        if attempts > 100 * r.trials:
            break
        n = int(rng.integers(3, r.max_order + 1))
        g = random_connected_graph(rng, n)
        alpha = int(rng.integers(0, 2))
        x = perron_vector(g, alpha).vector
        u, v = (int(z) for z in rng.choice(n, size=2, replace=False))
        if x[u] < x[v]:
            u, v = v, u
        cand = [w for w in g.neighbors(v) if w != u and not g.has_edge(u, w)]
        if not cand:
            rep.skipped += 1
            continue
        m = int(rng.integers(1, len(cand) + 1))
        nbrs = sorted(int(w) for w in rng.choice(cand, size=m, replace=False))
        h = _rotate(g, u, v, nbrs)
        if not is_connected(h):
            rep.skipped += 1
            continue
        before = spectral_radius(g, alpha)
        after = spectral_radius(h, alpha)
        rep.checked += 1
        done += 1
        if not after > before + RANDOM_MARGIN:
            rep.violations.append(
                {
                    "graph6": emit_graph6(g).decode("ascii"),
                    "alpha": alpha,
                    "u": u,
                    "v": v,
                    "N": nbrs,
                    "before": before,
                    "after": after,
                }
            )


def _trials_inequit(r: GridRanges, rep: LemmaReport) -> None:
    rng = np.random.default_rng(r.seed)
    done = 0
    attempts = 0
    top = min(r.max_order, 10)
    while done < r.trials:
        attempts += 1
        if attempts > 100 * r.trials:
            break
        n = int(rng.integers(3, top + 1))
        g = random_connected_graph(rng, n)
        non_edges = [(a, b) for a in range(n) for b in range(a + 1, n) if not g.has_edge(a, b)]
        if not non_edges:
            rep.skipped += 1
            continue
        u, v = non_edges[int(rng.integers(0, len(non_edges)))]
        h = g.with_edge(u, v)
        done += 1
        for alpha in (0, 1):
            before = spectral_radius(g, alpha)
            after = spectral_radius(h, alpha)
            rep.checked += 1
            if not after > before + RANDOM_MARGIN:
                rep.violations.append(
                    {"graph6": emit_graph6(g).decode("ascii"), "alpha": alpha, "edge": [u, v], "before": before, "after": after}
                )


_GRIDS = {
    "h1": _grid_h1,
    "h2": _grid_h2,
    "h3": _grid_h3,
    "SP": _trials_sp,
    "GE": _trials_ge,
    "inequit": _trials_inequit,
}


def verify_lemma_grid(which: str, ranges: Optional[GridRanges] = None) -> LemmaReport:
    """Run one lemma check; the returned report lists every violation found."""
    if which not in _GRIDS:
        raise ParameterError(f"unknown lemma {which!r}; choose from {', '.join(LEMMAS)}")
    rep = LemmaReport(which)
    _GRIDS[which](ranges or GridRanges(), rep)
    return rep
