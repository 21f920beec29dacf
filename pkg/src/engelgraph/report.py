"""Analysis records and graph export."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, kernels
from .catalog import build
from .cli.parser import parse_group_expr
from .config import get_config
from .connectivity import (
    NOT_COMPUTED,
    UNREACHABLE,
    directed_diameter,
    engel_digraph,
    is_strongly_connected,
    is_weakly_connected,
    scc,
    seed_condensation,
    undirected_diameter,
)
from .engel import GraphMode
from .group import CapExceeded


@dataclass
class ResultRecord:
    expr: str
    order: int
    mode: str
    n: int | None
    vertex_count: int
    strongly_connected: bool
    weakly_connected: bool
    scc_count: int
    undirected_diameter: object
    directed_diameter: object
    verdict: str
    wall_time: float
    version: str = __version__
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("undirected_diameter", "directed_diameter"):
            if not isinstance(d[k], int):
                d[k] = str(d[k])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ResultRecord":
        return cls(**d)

    def mode_obj(self) -> GraphMode:
        return GraphMode.parse(self.mode.split("_")[0] + ("_n" if self.n is not None else ""), self.n)


def _diam(v):
    return v if isinstance(v, int) else str(v)


def analyze(expr: str, mode: GraphMode, diameter: bool = False, equivariance: bool | None = None) -> ResultRecord:
    """Build the group, its Engel graph in ``mode`` and the connectivity verdicts.

    Raises :class:`CapExceeded` for groups over the stored-table cap.
    """
    t0 = time.perf_counter()
    spec = parse_group_expr(expr)
    g = build(spec)
    cfg = get_config()
    eq = cfg.equivariance if equivariance is None else equivariance
    if g.order_hint is not None and g.order_hint > cfg.max_order_stored:
        raise CapExceeded(f"{spec} has order {g.order_hint} > stored-table cap {cfg.max_order_stored}", g.order_hint)
    d = engel_digraph(g, mode, eq)
    flags = {"equivariance": eq, "condensation": True, "seed": cfg.seed, "kernel": kernels.BACKEND}
    if d.n == 0:
        return ResultRecord(str(spec), g.order, str(mode), mode.n, 0, False, False, 0,
                            str(NOT_COMPUTED), str(NOT_COMPUTED), "empty graph",
                            round(time.perf_counter() - t0, 4), flags=flags)
    strong = is_strongly_connected(g, mode, eq, condense=True)
    comps = scc(d, clusters=seed_condensation(g, mode))
    weak = is_weakly_connected(d)
    if diameter:
        ud = undirected_diameter(d)
        dd = directed_diameter(d) if strong else UNREACHABLE
    else:
        ud = dd = NOT_COMPUTED
    verdict = "strongly connected" if strong else ("weakly connected" if weak else "disconnected")
    return ResultRecord(str(spec), g.order, str(mode), mode.n, d.n, strong, weak, comps.count,
                        _diam(ud), _diam(dd), verdict, round(time.perf_counter() - t0, 4), flags=flags)


# -- export -------------------------------------------------------------------

def export_graph(expr: str, mode: GraphMode, fmt: str = "edgelist") -> str:
    """Deterministic text of the graph (DOT or edge list).

    DOT output covers the full graph up to the dense threshold and only the
    SCC condensation above it.
    """
    spec = parse_group_expr(expr)
    g = build(spec)
    cfg = get_config()
    if g.order_hint is not None and g.order_hint > cfg.max_order_stored:
        raise CapExceeded(f"{spec} has order {g.order_hint} > stored-table cap", g.order_hint)
    d = engel_digraph(g, mode)
    header = f"# {spec} {mode} {d.n}\n"
    if fmt == "edgelist":
        if d.n > cfg.dense_threshold:
            raise CapExceeded(f"{d.n} vertices exceed the full-graph export limit {cfg.dense_threshold}", d.n)
        if d.n == 0:
            return header
        lines = [f"{u} {v}" for u, v in d.edges().tolist()]
        return header + "\n".join(lines) + ("\n" if lines else "")
    if fmt != "dot":
        raise ValueError(f"unknown export format {fmt!r}")
    out = [header, "digraph engel {\n"]
    if d.n == 0:
        out.append("}\n")
        return "".join(out)
    comps = scc(d)
    orders = g.table.element_orders[d.labels]
    if d.n <= cfg.dense_threshold:
        for i in range(d.n):
            out.append(f'  {i} [order={int(orders[i])}, scc={int(comps.comp[i])}, label="{int(orders[i])}"];\n')
        for u, v in d.edges().tolist():
            out.append(f"  {u} -> {v};\n")
    else:
        sizes = np.bincount(comps.comp, minlength=comps.count)
        for c in range(comps.count):
            members = np.nonzero(comps.comp == c)[0]
            ords = sorted(set(orders[members].tolist()))
            out.append(f'  c{c} [size={int(sizes[c])}, orders="{",".join(map(str, ords))}"];\n')
        for a, b in comps.condensation.tolist():
            out.append(f"  c{a} -> c{b};\n")
    out.append("}\n")
    return "".join(out)
