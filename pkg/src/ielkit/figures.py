"""Model diagrams and suite summaries rendered with matplotlib, plus DOT export.

Diagrams follow the paper's drawing convention: solid arrows for the
cognition relation (reflexive loops omitted), dotted arrows for the audit
relation, atoms listed under the worlds that force them.
"""

from __future__ import annotations

import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .semantics import KripkeModel


def _positions(worlds):
    n = len(worlds)
    if n == 1:
        return {worlds[0]: (0.0, 0.0)}
    out = {}
    for i, w in enumerate(worlds):
        angle = math.pi / 2 + 2 * math.pi * i / n
        out[w] = (math.cos(angle), math.sin(angle))
    return out


def _arrow(ax, src, dst, style, color, rad):
    ax.add_patch(FancyArrowPatch(
        src, dst, arrowstyle="-|>", mutation_scale=14, linestyle=style,
        color=color, shrinkA=14, shrinkB=14, connectionstyle=f"arc3,rad={rad}"))


def _loop(ax, pos, style, color):
    x, y = pos
    ax.add_patch(FancyArrowPatch(
        (x - 0.06, y + 0.10), (x + 0.06, y + 0.10), arrowstyle="-|>",
        mutation_scale=10, linestyle=style, color=color,
        connectionstyle="arc3,rad=2.2"))


def draw_model(model, path: str, title: str | None = None) -> None:
    """Render a Kripke model (intuitionistic or classical bimodal) to a file."""
    if isinstance(model, KripkeModel):
        solid = [(u, v) for u, v in model.r_pairs if u != v]
        dotted = model.e_pairs
        legend = "solid: R    dotted: E"
        atoms_at = {w: sorted(a for a, ws in model._val.items() if w in ws)
                    for w in model.worlds}
        tag = model.logic.label
    else:
        solid = [(u, v) for u, v in model.rbox_pairs if u != v]
        dotted = model.rv_pairs
        legend = "solid: Rbox    dotted: Rv"
        atoms_at = {w: sorted(a for a, ws in model._val.items() if w in ws)
                    for w in model.worlds}
        tag = model.variant.label
    worlds = sorted(model.worlds)
    pos = _positions(worlds)
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    for w in worlds:
        x, y = pos[w]
        ax.plot([x], [y], "o", color="black", markersize=8)
        label = str(w)
        if atoms_at[w]:
            label += "  " + " ".join(atoms_at[w])
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(10, -14))
    for u, v in solid:
        _arrow(ax, pos[u], pos[v], "solid", "black", 0.12)
    for u, v in dotted:
        if u == v:
            _loop(ax, pos[u], "dotted", "tab:blue")
        else:
            _arrow(ax, pos[u], pos[v], "dotted", "tab:blue", -0.18)
    ax.set_title(title or f"{tag} model")
    ax.text(0.5, -0.08, legend, transform=ax.transAxes, ha="center", fontsize=8)
    ax.set_xlim(-1.7, 1.7)
    ax.set_ylim(-1.7, 1.7)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight", dpi=140)
    plt.close(fig)


def draw_suite_summary(report, path: str) -> None:
    """Bar chart of pass/fail counts per suite section."""
    sections: dict[str, list[int]] = {}
    for entry in report.entries:
        section = entry.name.split("/", 1)[0]
        box = sections.setdefault(section, [0, 0])
        box[0 if entry.passed else 1] += 1
    names = list(sections)
    passes = [sections[s][0] for s in names]
    fails = [sections[s][1] for s in names]
    fig, ax = plt.subplots(figsize=(7, 0.42 * len(names) + 1.4))
    ypos = range(len(names))
    ax.barh(ypos, passes, color="tab:green", label="pass")
    ax.barh(ypos, fails, left=passes, color="tab:red", label="fail")
    ax.set_yticks(list(ypos), names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("checks")
    ax.set_title(f"reproduction suite: {report.passed_count}/{len(report.entries)} pass")
    ax.legend(loc="lower right", fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=140)
    plt.close(fig)


def model_to_dot(model) -> str:
    """GraphViz source for a model; R/Rbox solid, E/Rv dotted."""
    if isinstance(model, KripkeModel):
        solid = [(u, v) for u, v in model.r_pairs if u != v]
        dotted = model.e_pairs
    else:
        solid = [(u, v) for u, v in model.rbox_pairs if u != v]
        dotted = model.rv_pairs
    atoms_at = {w: sorted(a for a, ws in model._val.items() if w in ws)
                for w in model.worlds}
    lines = ["digraph model {", "  rankdir=BT;"]
    for w in sorted(model.worlds):
        label = str(w)
        if atoms_at[w]:
            label += r"\n" + " ".join(atoms_at[w])
        lines.append(f'  w{w} [label="{label}", shape=circle];')
    for u, v in solid:
        lines.append(f"  w{u} -> w{v};")
    for u, v in dotted:
        lines.append(f"  w{u} -> w{v} [style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"
