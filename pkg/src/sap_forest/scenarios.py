"""Instance files, scenario generators, and the per-turn run log.

Instance text format::

    white <count>
    black: <white-id> <white-id> ...
    black: ...

One ``black:`` line per arrival, in order.  Blank lines and lines
starting with ``#`` are ignored.

The run log is a CSV with one row per turn:
``t,b_id,pi_len,dist,sec_dist,prefix_len,suffix_len,dispatch_id,deaths_count,turn_class``.
Infinite distances are written ``inf``; undefined fields are empty.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass

from .analysis import ScenarioAnalysis
from .forest import OnlineForest
from .levels import classify_turn
from .minimax import INF


class InstanceFormatError(Exception):
    pass


@dataclass
class InstanceFile:
    white_count: int
    arrivals: list[tuple[int, ...]]

    def build(self) -> OnlineForest:
        forest = OnlineForest(self.white_count)
        for nbrs in self.arrivals:
            forest.add_black(nbrs)
        return forest

    def analyze(self, **kwargs) -> ScenarioAnalysis:
        return ScenarioAnalysis(self.white_count, self.arrivals, **kwargs)


def parse_instance(text: str) -> InstanceFile:
    white_count = None
    arrivals: list[tuple[int, ...]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("white"):
            if white_count is not None:
                raise InstanceFormatError(f"line {ln}: duplicate white line")
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise InstanceFormatError(f"line {ln}: expected 'white <count>'")
            white_count = int(parts[1])
        elif line.startswith("black:"):
            if white_count is None:
                raise InstanceFormatError(f"line {ln}: black before white line")
            body = line[len("black:"):].split()
            try:
                nbrs = tuple(int(x) for x in body)
            except ValueError:
                raise InstanceFormatError(f"line {ln}: bad neighbor id") from None
            if not nbrs:
                raise InstanceFormatError(f"line {ln}: black with no neighbors")
            arrivals.append(nbrs)
        else:
            raise InstanceFormatError(f"line {ln}: unrecognized line {line!r}")
    if white_count is None:
        raise InstanceFormatError("missing white line")
    return InstanceFile(white_count, arrivals)


def format_instance(inst: InstanceFile) -> str:
    lines = [f"white {inst.white_count}"]
    for nbrs in inst.arrivals:
        lines.append("black: " + " ".join(str(w) for w in nbrs))
    return "\n".join(lines) + "\n"


def load_instance(path) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(inst: InstanceFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(inst))


# ---------------------------------------------------------------------------
# Generator families


class _Components:
    """Growing white components with random member access."""

    def __init__(self, n: int):
        self.groups: list[list[int]] = [[w] for w in range(1, n + 1)]

    def pick(self, rng: random.Random, count: int) -> list[int]:
        """One random white from each of ``count`` distinct components."""
        idxs = rng.sample(range(len(self.groups)), count)
        whites = [rng.choice(self.groups[i]) for i in idxs]
        idxs.sort(reverse=True)
        merged: list[int] = []
        for i in idxs:
            part = self.groups.pop(i)
            if len(part) > len(merged):
                part, merged = merged, part
            merged.extend(part)
        self.groups.append(merged)
        return whites

    def __len__(self) -> int:
        return len(self.groups)


def pendant_chain(n: int) -> InstanceFile:
    """Degree-two chain closed by a final pendant: the distance of the
    last arrival sweeps the whole chain."""
    arrivals = [(i, i + 1) for i in range(1, n)]
    arrivals.append((n,))
    return InstanceFile(n, arrivals)


def degree_two(n: int, seed: int = 0) -> InstanceFile:
    """Every black joins two random components; nobody ever dies.  Only
    n - 1 such arrivals fit before everything is connected."""
    if n < 2:
        raise ValueError("degree2 family needs at least two white vertices")
    rng = random.Random(seed)
    comps = _Components(n)
    arrivals = []
    while len(comps) >= 2:
        arrivals.append(tuple(sorted(comps.pick(rng, 2))))
    return InstanceFile(n, arrivals)


def star_burst(n: int, seed: int = 0) -> InstanceFile:
    """Three-white hubs joined into a chain, then pendants.

    The hub blacks are portals; the pendants trigger deaths that stop at
    them, producing dispatching vertices away from the newcomer.
    """
    rng = random.Random(seed)
    groups = [list(range(i, min(i + 3, n + 1))) for i in range(1, n + 1, 3)]
    arrivals: list[tuple[int, ...]] = []
    for g in groups:
        if len(g) == 3:
            arrivals.append(tuple(g))
    hubs = [g[0] for g in groups if len(g) == 3]
    for a, b in zip(hubs, hubs[1:]):
        arrivals.append((a, b))
    for g in groups:
        if len(g) < 3 and hubs:
            arrivals.append(tuple(sorted((g[0], rng.choice(hubs)))))
            if len(g) == 2:
                arrivals.append(tuple(sorted((g[0], g[1]))))
    for g in groups:
        if len(g) == 3:
            arrivals.append((rng.choice(g[1:]),))
    return InstanceFile(n, arrivals)


def random_tree(n: int, seed: int = 0) -> InstanceFile:
    """Random arrivals of degree one to three across distinct components."""
    rng = random.Random(seed)
    comps = _Components(n)
    arrivals = []
    for _ in range(n):
        deg = min(rng.choice((1, 1, 2, 2, 3)), len(comps))
        arrivals.append(tuple(sorted(comps.pick(rng, deg))))
    return InstanceFile(n, arrivals)


FAMILIES = {
    "pendant_chain": pendant_chain,
    "degree2": degree_two,
    "star_burst": star_burst,
    "random_tree": random_tree,
}


def generate(family: str, n: int, seed: int = 0) -> InstanceFile:
    try:
        gen = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; "
                         f"choose from {sorted(FAMILIES)}") from None
    if family == "pendant_chain":
        return gen(n)
    return gen(n, seed)


# ---------------------------------------------------------------------------
# Run log


RUN_COLUMNS = ["t", "b_id", "pi_len", "dist", "sec_dist", "prefix_len",
               "suffix_len", "dispatch_id", "deaths_count", "turn_class"]


def _cell(x) -> str:
    if x is None:
        return ""
    if x == INF:
        return "inf"
    return str(x)


def run_rows(analysis: ScenarioAnalysis, beta: float):
    for rec in analysis.records:
        yield {
            "t": rec.t,
            "b_id": rec.b,
            "pi_len": _cell(rec.pi_len),
            "dist": _cell(rec.dist),
            "sec_dist": _cell(rec.sec_dist),
            "prefix_len": _cell(rec.prefix_len),
            "suffix_len": _cell(rec.suffix_len),
            "dispatch_id": _cell(rec.dispatch),
            "deaths_count": len(rec.deaths),
            "turn_class": classify_turn(rec, beta).value,
        }


def write_run_csv(analysis: ScenarioAnalysis, beta: float, fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=RUN_COLUMNS)
    writer.writeheader()
    for row in run_rows(analysis, beta):
        writer.writerow(row)


def run_csv_text(analysis: ScenarioAnalysis, beta: float) -> str:
    buf = io.StringIO()
    write_run_csv(analysis, beta, buf)
    return buf.getvalue()


def read_run_csv(fh) -> list[dict]:
    return list(csv.DictReader(fh))
