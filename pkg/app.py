"""
app.py
ImsetMind - Dash app main file

"""
import sys
import os
import logging
from pathlib import Path

# make sure project root is importable so `modules` resolves
ROOT = Path(os.path.dirname(os.path.abspath(__file__)))
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from dotenv import load_dotenv
load_dotenv()

# Dash + Flask
from dash import Dash, ctx, dcc, html, dash_table, Input, Output, State
import dash_bootstrap_components as dbc
from flask import send_from_directory, abort

import pandas as pd

from modules.config import RunConfig
from modules.triangulate import STRATEGIES
from modules.standard import VARIANTS
from modules import services

CONFIG = RunConfig.from_env(dotenv=False)
logging.basicConfig(level=CONFIG.log_level, format="%(levelname)s %(name)s: %(message)s")
logger = logging.getLogger("imsetmind.app")

RESULTS_DIR = (ROOT / CONFIG.results_dir) if not Path(CONFIG.results_dir).is_absolute() else Path(CONFIG.results_dir)
RESULTS_DIR.mkdir(exist_ok=True)

EXAMPLE_GRAPH = """# two parents of a line
vertex a
vertex b
vertex c
vertex d
edge a -> c
edge b -> d
edge c -- d
"""

TEXTAREA_STYLE = {"width": "100%", "height": "200px", "fontFamily": "monospace"}
PRE_STYLE = {"whiteSpace": "pre-wrap", "background": "#f8f9fa", "padding": "0.5rem"}

# Initialize Dash app
app = Dash(__name__, suppress_callback_exceptions=True,
           external_stylesheets=[dbc.themes.BOOTSTRAP])
server = app.server
app.title = "ImsetMind - Standard Imsets of Graphical Models"

# Serve downloads from results directory (safe)
@server.route("/download/<path:filename>")
def download_file(filename):
    full = RESULTS_DIR / filename
    try:
        resolved = full.resolve()
    except OSError:
        abort(404)
    if not str(resolved).startswith(str(RESULTS_DIR.resolve())):
        abort(404)
    if not full.exists():
        abort(404)
    return send_from_directory(RESULTS_DIR, filename, as_attachment=True)

# --- Small helpers ---
def graph_input(id_, value=EXAMPLE_GRAPH):
    return dcc.Textarea(id=id_, value=value, style=TEXTAREA_STYLE)

def records_table(rows):
    df = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(rows)
    if df.empty:
        return html.P("(none)")
    return dash_table.DataTable(
        columns=[{"name": c, "id": c} for c in df.columns],
        data=df.astype(str).to_dict("records"),
        page_size=15,
        style_table={"overflowX": "auto"},
    )

def error_alert(result):
    color = "warning" if result.get("guard") else "danger"
    return dbc.Alert(result["error_message"], color=color)

def strategy_dropdown(id_):
    return dcc.Dropdown(id=id_, options=[{"label": s, "value": s} for s in STRATEGIES], value="elimination", clearable=False)

# App layout - tabs for all features
app.layout = dbc.Container([
    html.H1("ImsetMind", className="my-3 text-center"),

    dcc.Tabs(id="tabs", value="tab-graph", children=[
        dcc.Tab(label="Graph", value="tab-graph"),
        dcc.Tab(label="Decomposition", value="tab-decompose"),
        dcc.Tab(label="Triangulations", value="tab-triangulate"),
        dcc.Tab(label="Standard Imset", value="tab-imset"),
        dcc.Tab(label="CI Test", value="tab-ci"),
        dcc.Tab(label="Equivalence", value="tab-equiv"),
        dcc.Tab(label="Merging", value="tab-merge"),
    ]),
    html.Div(id="tab-content", className="mt-4"),

    html.Hr(),
    html.Footer("ImsetMind - standard imsets of undirected, acyclic directed and chain graphs",
                style={"textAlign": "center", "marginTop": "20px", "padding": "10px"})
], fluid=True)

# Render tab contents
@app.callback(Output("tab-content", "children"), Input("tabs", "value"))
def render_tab(tab):
    if tab == "tab-graph":
        return dbc.Row([
            dbc.Col([
                html.H4("Graph and independence model"),
                graph_input("graph-text"),
                html.Br(),
                dbc.Button("Analyse", id="btn-graph", color="primary"),
            ], width=4),
            dbc.Col([
                html.Div(id="graph-output"),
                dcc.Graph(id="model-figure", style={"display": "none"}),
            ], width=8),
        ])

    if tab == "tab-decompose":
        return dbc.Row([
            dbc.Col([
                html.H4("Maximal prime subgraph decomposition"),
                graph_input("decompose-text", "vertex a\nvertex b\nvertex c\nvertex d\nvertex e\n"
                            "edge a -- b\nedge b -- c\nedge a -- c\nedge a -- d\nedge c -- d\nedge c -- e\nedge d -- e\n"),
                html.Br(),
                dbc.Button("Decompose", id="btn-decompose", color="primary"),
            ], width=4),
            dbc.Col(html.Div(id="decompose-output"), width=8),
        ])

    if tab == "tab-triangulate":
        return dbc.Row([
            dbc.Col([
                html.H4("Minimal triangulations"),
                graph_input("triangulate-text", "vertex a\nvertex b\nvertex c\nvertex d\n"
                            "edge a -- b\nedge b -- c\nedge c -- d\nedge d -- a\n"),
                html.Br(),
                dbc.Label("Strategy"),
                strategy_dropdown("triangulate-strategy"),
                html.Br(),
                dbc.Button("Enumerate", id="btn-triangulate", color="primary"),
            ], width=4),
            dbc.Col(html.Div(id="triangulate-output"), width=8),
        ])

    if tab == "tab-imset":
        return dbc.Row([
            dbc.Col([
                html.H4("Standard imset"),
                graph_input("imset-text"),
                html.Br(),
                dbc.Row([
                    dbc.Col(dcc.Dropdown(id="imset-variant", options=[{"label": v, "value": v} for v in VARIANTS],
                                         value="cg", clearable=False), width=6),
                    dbc.Col(strategy_dropdown("imset-strategy"), width=6),
                ]),
                html.Br(),
                dbc.Checklist(options=[{"label": "Decompose into elementary imsets", "value": "decompose"}],
                              value=[], id="imset-options"),
                html.Br(),
                dbc.Button("Compute", id="btn-imset", color="success"),
                html.Div(id="imset-status", className="mt-2"),
            ], width=4),
            dbc.Col([
                html.Div(id="imset-output"),
                dcc.Graph(id="imset-figure", style={"display": "none"}),
            ], width=8),
        ])

    if tab == "tab-ci":
        return dbc.Row([
            dbc.Col([
                html.H4("Conditional independence by imset arithmetic"),
                graph_input("ci-text"),
                html.Br(),
                dcc.Input(id="ci-triplet", placeholder="A|B|C, e.g. a|b or c|b|a,d", style={"width": "100%"}),
                html.Br(), html.Br(),
                dbc.Button("Test", id="btn-ci", color="primary"),
                html.Div(id="ci-output", className="mt-3"),
            ], width=6),
        ])

    if tab == "tab-equiv":
        return dbc.Row([
            dbc.Col([html.H4("First graph"), graph_input("equiv-first")], width=4),
            dbc.Col([html.H4("Second graph"), graph_input("equiv-second", EXAMPLE_GRAPH.replace("a -> c", "c -> a"))], width=4),
            dbc.Col([
                html.Br(),
                dbc.Button("Compare", id="btn-equiv", color="primary"),
                html.Div(id="equiv-output", className="mt-3"),
            ], width=4),
        ])

    if tab == "tab-merge":
        return dbc.Row([
            dbc.Col([
                html.H4("Feasible merging"),
                graph_input("merge-text"),
                html.Br(),
                dcc.Input(id="merge-upper", placeholder="upper component, e.g. a", style={"width": "100%"}),
                dcc.Input(id="merge-lower", placeholder="lower component, e.g. c,d", style={"width": "100%"}),
                html.Br(), html.Br(),
                dbc.Button("Merge", id="btn-merge", color="primary", className="me-2"),
                dbc.Button("Largest equivalent", id="btn-largest", color="secondary"),
            ], width=4),
            dbc.Col(html.Div(id="merge-output"), width=8),
        ])

    return html.Div("Select a tab")

# ---------- Graph tab ----------
@app.callback(
    Output("graph-output", "children"),
    Output("model-figure", "figure"),
    Output("model-figure", "style"),
    Input("btn-graph", "n_clicks"),
    State("graph-text", "value"),
    prevent_initial_call=True
)
def analyse_graph(n_clicks, text):
    summary = services.summarize_graph(text, CONFIG)
    if summary["status"] != "success":
        return error_alert(summary), {}, {"display": "none"}
    stats = summary["stats"]
    parts = [
        html.P(f"Class: {stats['class']} | vertices: {stats['vertices']} | "
               f"lines: {stats['undirected_edges']} | arrows: {stats['directed_edges']}"),
        html.H6("Edges"),
        records_table(summary["edges"]),
    ]
    if "components" in summary:
        parts += [
            html.P("Chain components: " + " ".join(summary["components"])),
            html.P("Complexes: " + ("; ".join(summary["complexes"]) or "(none)")),
            html.H6("Closure graphs"),
            records_table(summary["closures"]),
        ]
    model = services.model_overview(text, CONFIG)
    if model["status"] != "success":
        parts.append(error_alert(model))
        return html.Div(parts), {}, {"display": "none"}
    parts.append(html.P(f"{len(model['statements'])} elementary statements hold."))
    return html.Div(parts), model["figure"], {"display": "block"}

# ---------- Decomposition tab ----------
@app.callback(
    Output("decompose-output", "children"),
    Input("btn-decompose", "n_clicks"),
    State("decompose-text", "value"),
    prevent_initial_call=True
)
def decompose_cb(n_clicks, text):
    result = services.decompose_graph(text, CONFIG)
    if result["status"] != "success":
        return error_alert(result)
    return html.Div([
        html.H6("mp-components (in a D-ordered sequence)"),
        records_table(result["components"]),
        html.Hr(),
        html.H6("Separators"),
        records_table(result["separators"]),
    ])

# ---------- Triangulation tab ----------
@app.callback(
    Output("triangulate-output", "children"),
    Input("btn-triangulate", "n_clicks"),
    State("triangulate-text", "value"),
    State("triangulate-strategy", "value"),
    prevent_initial_call=True
)
def triangulate_cb(n_clicks, text, strategy):
    result = services.triangulate_graph(text, strategy, CONFIG)
    if result["status"] != "success":
        return error_alert(result)
    return html.Div([
        html.P(f"{result['count']} minimal triangulation(s)"),
        records_table(result["triangulations"]),
    ])

# ---------- Standard imset tab ----------
@app.callback(
    Output("imset-status", "children"),
    Output("imset-output", "children"),
    Output("imset-figure", "figure"),
    Output("imset-figure", "style"),
    Input("btn-imset", "n_clicks"),
    State("imset-text", "value"),
    State("imset-variant", "value"),
    State("imset-strategy", "value"),
    State("imset-options", "value"),
    prevent_initial_call=True
)
def imset_cb(n_clicks, text, variant, strategy, options):
    result = services.compute_standard_imset(text, variant, strategy, CONFIG)
    if result["status"] != "success":
        return error_alert(result), None, {}, {"display": "none"}

    saved = services.save_imset_text(result["text"], RESULTS_DIR, stem=f"standard_imset_{variant}")
    if saved["status"] == "success":
        status = html.Div([
            html.P(f"Reduction: {result['reduction']}"),
            html.A("Download imset", href=f"/download/{saved['filename']}", target="_blank"),
        ])
    else:
        status = dbc.Alert(f"Computed, but failed to save file: {saved['error_message']}", color="warning")

    levels = ", ".join(f"{k}: {v}" for k, v in result["levels"].items())
    body = [
        html.P(f"Degree: {result['degree']} | elementary terms per conditioning size: {levels or '-'}"),
        html.Pre(str(result["imset"]), style=PRE_STYLE),
        records_table(result["table"]),
    ]
    if "decompose" in (options or []):
        found = services.decompose_imset(result["imset"])
        if found["status"] != "success":
            body.append(error_alert(found))
        elif not found["combinatorial"]:
            body.append(dbc.Alert("Not combinatorial.", color="danger"))
        else:
            body.append(html.Pre(" +\n".join(f"u<{t}>" for t in found["terms"]) or "0", style=PRE_STYLE))
    return status, html.Div(body), result["figure"], {"display": "block"}

# ---------- CI test tab ----------
@app.callback(
    Output("ci-output", "children"),
    Input("btn-ci", "n_clicks"),
    State("ci-text", "value"),
    State("ci-triplet", "value"),
    prevent_initial_call=True
)
def ci_cb(n_clicks, text, triplet):
    result = services.run_ci_test(text, triplet, CONFIG)
    if result["status"] != "success":
        return error_alert(result)
    verdict = "holds" if result["independent"] else "does not hold"
    color = "success" if result["independent"] == result["separation"] else "danger"
    return dbc.Alert(f"{result['triplet']} {verdict} (separation agrees: {result['independent'] == result['separation']})",
                     color=color)

# ---------- Equivalence tab ----------
@app.callback(
    Output("equiv-output", "children"),
    Input("btn-equiv", "n_clicks"),
    State("equiv-first", "value"),
    State("equiv-second", "value"),
    prevent_initial_call=True
)
def equiv_cb(n_clicks, first, second):
    result = services.compare_graphs(first, second, CONFIG)
    if result["status"] != "success":
        return error_alert(result)
    same = result["imset"]
    return html.Div([
        dbc.Alert("equivalent" if same else "not equivalent", color="success" if same else "secondary"),
        html.P(f"Standard imsets equal: {result['imset']} | same skeleton and complexes: {result['frydenberg']}"),
    ])

# ---------- Merging tab ----------
@app.callback(
    Output("merge-output", "children"),
    Input("btn-merge", "n_clicks"),
    Input("btn-largest", "n_clicks"),
    State("merge-text", "value"),
    State("merge-upper", "value"),
    State("merge-lower", "value"),
    prevent_initial_call=True
)
def merge_cb(merge_clicks, largest_clicks, text, upper, lower):
    if ctx.triggered_id == "btn-largest":
        result = services.largest_chain_graph(text, CONFIG)
        if result["status"] != "success":
            return error_alert(result)
        return html.Div([
            html.P(f"{len(result['merges'])} feasible merge(s): " + ("; ".join(result["merges"]) or "none")),
            html.Pre(result["graph"], style=PRE_STYLE),
        ])

    result = services.merge_components(text, upper, lower, CONFIG)
    if result["status"] != "success":
        return error_alert(result)
    if not result["feasible"]:
        return dbc.Alert(f"Not feasible: {result['message']}", color="secondary")
    return html.Div([dbc.Alert("Feasible", color="success"), html.Pre(result["graph"], style=PRE_STYLE)])

# Run server
if __name__ == "__main__":
    logger.info("Starting ImsetMind app from %s", ROOT)
    app.run(debug=True, port=8050)
