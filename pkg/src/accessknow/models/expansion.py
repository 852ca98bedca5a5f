"""Heyting algebra expansions: TRUE, box and the epistemic operator tables."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from ..heyting import AlgebraError, HeytingAlgebra, parse_algebra


def all_groups(n_agents: int) -> tuple[tuple[int, ...], ...]:
    agents = range(1, n_agents + 1)
    return tuple(g for r in agents for g in itertools.combinations(agents, r))


def group_name(g: tuple[int, ...]) -> str:
    return "{" + ",".join(map(str, g)) + "}"


def box_table(H: HeytingAlgebra) -> np.ndarray:
    """The two-valued proof predicate: top at top, bottom elsewhere."""
    out = np.full(H.size, H.bot, dtype=np.int64)
    out[H.top] = H.top
    return out


@dataclass(eq=False)
class ModelExpansion:
    """An algebra with operator tables; the validators decide which logic it models.

    ``know`` has one row per agent (agent i is row i-1); ``common`` maps each
    group to its table.  ``true_filter`` and ``box`` may be None for IEL models.
    """

    algebra: HeytingAlgebra
    true_filter: frozenset[int] | None = None
    box: np.ndarray | None = None
    know: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), dtype=np.int64))
    common: dict[tuple[int, ...], np.ndarray] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        n = self.algebra.size
        if self.box is not None:
            self.box = np.asarray(self.box, dtype=np.int64)
            self._check_table(self.box, "box")
        know = np.asarray(self.know, dtype=np.int64)
        if know.size == 0:
            know = np.zeros((0, n), dtype=np.int64)
        if know.ndim != 2 or know.shape[1] != n:
            raise ValueError(f"knowledge tables must have shape (agents, {n})")
        self.know = know
        for i, row in enumerate(self.know, 1):
            self._check_table(row, f"K{i}")
        common = {}
        for g, t in self.common.items():
            g = tuple(sorted(set(g)))
            if not g or g[0] < 1 or g[-1] > self.n_agents:
                raise ValueError(f"group {group_name(g)} outside agents 1..{self.n_agents}")
            common[g] = np.asarray(t, dtype=np.int64)
            self._check_table(common[g], f"C{group_name(g)}")
        self.common = dict(sorted(common.items(), key=lambda kv: (len(kv[0]), kv[0])))
        if self.true_filter is not None:
            self.true_filter = frozenset(int(m) for m in self.true_filter)
            if not all(0 <= m < n for m in self.true_filter):
                raise ValueError("TRUE mentions elements outside the algebra")

    def _check_table(self, t: np.ndarray, what: str) -> None:
        n = self.algebra.size
        if t.shape != (n,) or t.min(initial=0) < 0 or t.max(initial=0) >= n:
            raise ValueError(f"table {what} must map the {n} elements into the algebra")

    @property
    def n_agents(self) -> int:
        return len(self.know)

    @cached_property
    def true_mask(self) -> np.ndarray:
        out = np.zeros(self.algebra.size, dtype=bool)
        if self.true_filter is not None:
            out[list(self.true_filter)] = True
        return out

    def K(self, i: int) -> np.ndarray:
        if not 1 <= i <= self.n_agents:
            raise KeyError(f"no knowledge operator for agent {i}")
        return self.know[i - 1]

    def C(self, group) -> np.ndarray:
        g = tuple(sorted(set(group)))
        try:
            return self.common[g]
        except KeyError:
            raise KeyError(f"no common-knowledge operator for group {group_name(g)}") from None

    def with_tables(self, **changes) -> "ModelExpansion":
        return replace(self, **changes)

    def name_of(self, m: int) -> str:
        return self.algebra.names[m]


# ------------------------------------------------------------ file format

def format_model(M: ModelExpansion) -> str:
    H = M.algebra
    lines = [H.describe()]
    if M.true_filter is not None:
        lines.append("TRUE: " + ",".join(H.names[m] for m in sorted(M.true_filter)))

    def table(name: str, t: np.ndarray) -> str:
        return f"{name}: " + " ".join(f"{H.names[m]}->{H.names[v]}" for m, v in enumerate(t))

    if M.box is not None:
        lines.append(table("box", M.box))
    for i in range(1, M.n_agents + 1):
        lines.append(table(f"K{i}", M.K(i)))
    for g, t in M.common.items():
        lines.append(table(f"C{group_name(g)}", t))
    return "\n".join(lines) + "\n"


_TABLE_RE = re.compile(r"^(box|K\d+|C\{[\d,\s]*\})\s*:\s*(.*)$")


def parse_model(text: str, label: str = "") -> ModelExpansion:
    """Read an algebra section followed by TRUE/box/K<i>/C{..} lines."""
    alg_lines, rest = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(":", 1)[0].split()[0]
        if head.lower() in ("elements", "names", "order"):
            alg_lines.append(line)
        else:
            rest.append((lineno, line))
    H = parse_algebra("\n".join(alg_lines))

    def elem(tok: str, lineno: int) -> int:
        try:
            return H.index(tok)
        except AlgebraError:
            raise ValueError(f"line {lineno}: unknown element {tok!r}") from None

    true_filter = None
    box = None
    know: dict[int, np.ndarray] = {}
    common: dict[tuple[int, ...], np.ndarray] = {}
    for lineno, line in rest:
        if line.upper().startswith("TRUE"):
            body = line.split(":", 1)[1] if ":" in line else ""
            true_filter = frozenset(elem(t, lineno) for t in re.split(r"[,\s]+", body) if t)
            continue
        m = _TABLE_RE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected TRUE, box, K<i> or C{{..}} entry")
        t = np.full(H.size, -1, dtype=np.int64)
        for pair in m.group(2).split():
            if "->" not in pair:
                raise ValueError(f"line {lineno}: bad table entry {pair!r}")
            a, b = pair.split("->", 1)
            t[elem(a, lineno)] = elem(b, lineno)
        if (t < 0).any():
            missing = [H.names[k] for k in np.flatnonzero(t < 0)]
            raise ValueError(f"line {lineno}: table {m.group(1)} misses {', '.join(missing)}")
        key = m.group(1)
        if key == "box":
            box = t
        elif key.startswith("K"):
            know[int(key[1:])] = t
        else:
            g = tuple(sorted(int(x) for x in key[2:-1].replace(",", " ").split()))
            common[g] = t
    n_agents = max(know, default=0)
    if sorted(know) != list(range(1, n_agents + 1)):
        raise ValueError("knowledge tables must be given for agents 1..N without gaps")
    rows = np.array([know[i] for i in range(1, n_agents + 1)], dtype=np.int64).reshape(
        n_agents, H.size)
    return ModelExpansion(H, true_filter, box, rows, common, label)
