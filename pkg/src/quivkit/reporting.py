"""Report assembly: canonical JSON, text rendering, figures and CSV.

Reports are deterministic: identical input bytes and flags produce
byte-identical JSON.  No wall-clock or environment data is recorded;
randomized searches contribute only their seed.
"""

from __future__ import annotations

import hashlib
import json
import os

from .algebra import BoundQuiverAlgebra, corner_dimension, loewy_length, radical_layer_dimensions, strongly_connected
from .groebner import is_monomial_ideal
from .parser import format_element, normalize_relation

SCHEMA_VERSION = 1


def file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def assemble(command: str, input_path: str, caps: dict, payload: dict, certified: bool) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "input": {"path": input_path, "sha256": file_digest(input_path)},
        "caps": caps,
        "certified": certified,
        "result": payload,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def info_payload(algebra: BoundQuiverAlgebra) -> dict:
    qv = algebra.quiver
    corners = {
        v: {w: corner_dimension(algebra, v, w) for w in qv.vertices} for v in qv.vertices
    }
    return {
        "vertices": list(qv.vertices),
        "arrows": [
            {"name": a.name, "source": qv.vertices[a.source], "target": qv.vertices[a.target]}
            for a in qv.arrows
        ],
        "dimension": algebra.dimension,
        "loewyLength": loewy_length(algebra),
        "cornerDimensions": corners,
        "monomial": is_monomial_ideal(algebra.gb),
        "stronglyConnected": strongly_connected(qv),
    }


def gb_payload(algebra: BoundQuiverAlgebra) -> dict:
    gb = algebra.gb
    return {
        "basis": [format_element(normalize_relation(g)) for g in gb.elements],
        "dimension": gb.dimension,
        "maxNontipLength": gb.max_nontip_length,
        "certifiedDegree": gb.certified_degree,
    }


def render_info_text(payload: dict) -> str:
    lines = [
        f"dimension        {payload['dimension']}",
        f"Loewy length     {payload['loewyLength']}",
        f"monomial         {str(payload['monomial']).lower()}",
        f"strongly conn.   {str(payload['stronglyConnected']).lower()}",
        "corner dimensions (rows: source vertex, cols: target vertex)",
    ]
    verts = payload["vertices"]
    width = max(len(v) for v in verts) + 1
    lines.append("  " + " " * width + " " + " ".join(f"{v:>{width}}" for v in verts))
    for v in verts:
        row = " ".join(f"{payload['cornerDimensions'][v][w]:>{width}}" for w in verts)
        lines.append(f"  {v:>{width}} " + row)
    return "\n".join(lines) + "\n"


def write_figures(algebra: BoundQuiverAlgebra, payload: dict, directory: str) -> list[str]:
    """Render the report's figures and the delimited corner table.

    Returns the list of files written.  Uses the Agg backend so it works
    headless; figures accompany, never replace, the JSON report.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(directory, exist_ok=True)
    written = []

    verts = payload["vertices"]
    csv_path = os.path.join(directory, "corner_dims.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("source," + ",".join(verts) + "\n")
        for v in verts:
            fh.write(v + "," + ",".join(str(payload["cornerDimensions"][v][w]) for w in verts) + "\n")
    written.append(csv_path)

    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    data = [[payload["cornerDimensions"][v][w] for w in verts] for v in verts]
    im = ax.imshow(data, cmap="viridis")
    ax.set_xticks(range(len(verts)), verts)
    ax.set_yticks(range(len(verts)), verts)
    ax.set_xlabel("target vertex")
    ax.set_ylabel("source vertex")
    ax.set_title("corner dimensions")
    for r in range(len(verts)):
        for c in range(len(verts)):
            ax.text(c, r, str(data[r][c]), ha="center", va="center", color="w", fontsize=8)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    heat_path = os.path.join(directory, "corner_dims.png")
    fig.savefig(heat_path, dpi=150)
    plt.close(fig)
    written.append(heat_path)

    layers = radical_layer_dimensions(algebra)
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    ax.bar(range(len(layers)), layers, color="#3b6ea5")
    ax.set_xlabel("radical power m")
    ax.set_ylabel("dim J^m")
    ax.set_title("radical filtration")
    fig.tight_layout()
    rad_path = os.path.join(directory, "radical_filtration.png")
    fig.savefig(rad_path, dpi=150)
    plt.close(fig)
    written.append(rad_path)
    return written
